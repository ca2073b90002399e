#include "twsusp/report.hpp"

#include <cmath>
#include <cstdio>

#include "twsusp/error.hpp"

namespace twsusp {

namespace {

void write(const Json& j, std::string& out, int depth) {
  const std::string pad(2 * (depth + 1), ' '), close(2 * depth, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {  // std::map keeps keys sorted
        if (!first) out += ",\n";
        first = false;
        out += pad + Json(it.key()).dump() + ": ";
        write(it.value(), out, depth + 1);
      }
      out += "\n" + close + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += pad;
        write(j[i], out, depth + 1);
      }
      out += "\n" + close + "]";
      return;
    }
    case Json::value_t::number_float: {
      const double v = j.get<double>();
      if (!std::isfinite(v)) {
        out += "null";
        return;
      }
      char buf[40];
      std::snprintf(buf, sizeof buf, "%.17g", v);
      out += buf;
      return;
    }
    default:
      out += j.dump();
  }
}

std::string vector_text(const IntVector& v) { return to_string(std::span<const Integer>(v)); }

}  // namespace

std::string dump_json(const Json& j) {
  std::string out;
  write(j, out, 0);
  out += "\n";
  return out;
}

Json manifold_json(const Manifold& m) {
  Json j;
  j["expression"] = m.to_string();
  j["dimension"] = m.dimension();
  j["orientable"] = m.orientable();
  j["pi1"] = m.pi1().to_string();
  j["simply_connected"] = m.simply_connected();
  j["spin"] = std::string(to_string(m.spin()));
  Json h = Json::array(), c = Json::array();
  for (const FgAbGroup& g : m.homology()) h.push_back(g.to_string());
  for (const FgAbGroup& g : m.cohomology()) c.push_back(g.to_string());
  j["homology"] = h;
  j["cohomology"] = c;
  j["betti"] = m.betti();
  j["euler_characteristic"] = m.euler_characteristic();
  j["rational_homology_sphere"] = m.is_rational_homology_sphere();
  j["decomposed"] = decompose(m).to_string();
  return j;
}

Json gon_json(const GonLabelling& g) {
  Json j;
  j["n"] = g.n;
  j["m"] = g.m();
  Json labels = Json::array();
  for (const IntVector& v : g.labels) labels.push_back(vector_text(v));
  j["labels"] = labels;
  const GonReport rep = validate(g);
  Json checks = Json::array();
  for (const GonCheck& c : rep.checks) checks.push_back({{"condition", c.condition}, {"ok", c.ok}, {"detail", c.detail}});
  j["checks"] = checks;
  j["valid"] = rep.valid();
  if (rep.valid()) {
    j["b2"] = betti2(g);
  } else {
    j["first_failure"] = rep.first_failure();
  }
  return j;
}

Json plumbing_json(const PlumbingGraph& g) {
  Json j;
  j["graph"] = g.to_string();
  j["nodes"] = g.size();
  j["components"] = g.components().size();
  j["canonical_form"] = g.canonical_form();
  j["reduced"] = reduce(g).to_string();
  j["boundary"] = manifold_json(boundary(g));
  return j;
}

Json certification_json(const CertificationResult& r) {
  const WarpParams& p = r.profile.params;
  Json j;
  j["params"] = {{"n", r.n},
                 {"s0", r.s0},
                 {"lambda", p.lambda},
                 {"lambda0", p.lambda0},
                 {"alpha", p.alpha},
                 {"s_lambda", r.profile.s_lambda},
                 {"N", r.profile.cap.N},
                 {"r", r.r},
                 {"phi", r.phi}};
  j["margins"] = {{"ineq1", r.margins.min1},
                  {"ineq2", r.margins.min2},
                  {"ineq3", r.margins.min3},
                  {"ricci", r.ricci.margin}};
  j["gluing"] = {{"resid_fprime", r.gluing.resid_fprime}, {"resid_cap", r.gluing.resid_cap}, {"pass", r.gluing.pass}};
  j["verdict"] = r.pass ? "pass" : "fail";
  j["diagnostics"] = {{"core_residual", r.profile.core.max_residual},
                      {"ricci_tail", r.ricci.tail_margin},
                      {"ineq3_tail_weighted", r.margins.tail_weighted3},
                      {"r_cert", r.r_cert},
                      {"r_glue", r.r_glue},
                      {"phi_max", r.phi_max.phi},
                      {"phi_capped", r.phi_max.capped},
                      {"bundle_horizontal", r.bundle.horizontal},
                      {"resid_N", r.gluing.resid_N},
                      {"h_slope_end", r.gluing.h_slope_end},
                      {"h_curv_end", r.gluing.h_curv_end},
                      {"samples", r.profile.samples.size()},
                      {"notes", r.notes}};
  return j;
}

}  // namespace twsusp
