// Acceptance checks: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <map>
#include <random>
#include <string>

#include "gon_gen.hpp"
#include "oracles.hpp"
#include "twsusp/error.hpp"
#include "twsusp/fgab.hpp"
#include "twsusp/intlat.hpp"
#include "twsusp/orbitgon.hpp"
#include "twsusp/plumbing.hpp"
#include "twsusp/riccicert.hpp"
#include "twsusp/topology.hpp"

using namespace twsusp;

namespace {

struct Outcome {
  bool ok = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (!cond && ok) {
      ok = false;
      detail = what;
    }
  }
};

int failures = 0;

void criterion(int id, const std::string& name, double budget_s, const std::function<Outcome()>& body) {
  const auto start = std::chrono::steady_clock::now();
  Outcome out;
  try {
    out = body();
  } catch (const std::exception& e) {
    out.ok = false;
    out.detail = std::string("exception: ") + e.what();
  }
  const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  if (out.ok && budget_s > 0 && secs >= budget_s) {
    out.ok = false;
    out.detail = "took " + std::to_string(secs) + " s, budget " + std::to_string(budget_s) + " s";
  }
  if (!out.ok) ++failures;
  std::printf("%s [%d] %s (%.3f s)%s%s\n", out.ok ? "PASS" : "FAIL", id, name.c_str(), secs,
              out.detail.empty() ? "" : ": ", out.detail.c_str());
  std::fflush(stdout);
}

FgAbGroup G(const std::string& text) { return FgAbGroup::parse(text); }

const std::vector<std::pair<int, double>> kGolden = {{3, 0.3}, {3, 1.0}, {4, 0.3}, {4, 1.0},
                                                     {5, 0.3}, {5, 1.0}, {6, 0.3}, {6, 1.0}};

std::map<std::pair<int, double>, CertificationResult> certified;

std::string tag(int n, double s0) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "n=%d s0=%.1f", n, s0);
  return buf;
}

}  // namespace

int main() {
  criterion(1, "suspension of N_k has the homology-sphere table", 1.0, [] {
    Outcome o;
    for (long k : {2, 3, 7}) {
      const Manifold s = suspend(Manifold::smale(k), EulerClass::zero());
      const auto& h = s.homology();
      const FgAbGroup kk = FgAbGroup::from_cyclic_orders(0, to_int_vector({k, k}));
      const std::string where = "k=" + std::to_string(k);
      o.require(h.size() == 7, where + ": dimension");
      if (!o.ok) break;
      o.require(h[0] == FgAbGroup::free(1) && h[6] == FgAbGroup::free(1), where + ": H0/H6");
      o.require(h[2] == kk && h[3] == kk, where + ": H2/H3 = " + h[2].to_string() + ", " + h[3].to_string());
      o.require(h[4].is_trivial() && h[1].is_trivial() && h[5].is_trivial(), where + ": H1/H4/H5");
      o.require(s.simply_connected(), where + ": pi1");
    }
    return o;
  });

  criterion(2, "suspension of CP^3 with divisibility 4 has the expected cohomology", 0, [] {
    Outcome o;
    const auto c = suspend(Manifold::cp(3), EulerClass::divisible(4)).cohomology();
    const std::vector<FgAbGroup> expected{G("Z"), G("0"), G("Z"),   G("0"),
                                          G("Z/4"), G("Z"), G("0"), G("Z")};
    o.require(c == expected, "cohomology table differs");
    return o;
  });

  criterion(3, "prescribed H3 for Z/4 + Z/12 + Z^2, m = 4", 0, [] {
    Outcome o;
    const FgAbGroup g = G("Z^2 + Z/4 + Z/12");
    const Manifold m = prescribed_h3(g, 4);
    o.require(m.homology().at(3) == g, "H3 = " + m.homology().at(3).to_string());
    std::vector<Manifold> parts;
    for (int i = 0; i < 4; ++i) parts.push_back(Manifold::sphere_product(2, 7));
    for (int i = 0; i < 2; ++i) parts.push_back(Manifold::sphere_product(3, 6));
    o.require(m.betti() == connected_sum(parts).betti(), "Betti numbers differ");
    o.require(m.simply_connected(), "not simply connected");
    return o;
  });

  criterion(4, "orbit-gon b2 = m - n + 2 with exact unimodular models", 5.0, [] {
    Outcome o;
    std::mt19937 rng(4);
    for (int t = 0; t < 500 && o.ok; ++t) {
      const GonLabelling g = gongen::random_valid(rng, 8, 12);
      const std::string where = "sample " + std::to_string(t);
      o.require(g.n <= 8 && g.m() <= 12, where + ": generator out of range");
      o.require(validate(g).valid(), where + ": " + validate(g).first_failure());
      if (!o.ok) break;
      o.require(betti2(g) == static_cast<long>(g.m()) - g.n + 2, where + ": b2");
      const IntMatrix u = unimodular_model(g);
      const Integer det = oracle::rational_det(u);
      o.require(det == 1 || det == -1, where + ": det = " + det.get_str());
      o.require(u.row_block(0, static_cast<std::size_t>(g.n - 2)) == g.label_matrix(), where + ": top rows");
    }
    for (long l = 0; l <= 10 && o.ok; ++l)
      o.require(betti2(standard_gon(l)) == 2 * l, "standard gon l=" + std::to_string(l));
    return o;
  });

  criterion(5, "Smith normal form on 1000 random matrices", 10.0, [] {
    Outcome o;
    std::mt19937 rng(5);
    for (int t = 0; t < 1000 && o.ok; ++t) {
      const std::size_t r = 1 + rng() % 6, c = 1 + rng() % 6;
      const IntMatrix a = oracle::random_matrix(rng, r, c, 50);
      const SnfDecomposition d = snf(a);
      const std::string where = "sample " + std::to_string(t) + " " + a.to_string();
      o.require(d.left * a * d.right == d.diag, where + ": left*A*right != diag");
      const Integer dl = oracle::cofactor_det(d.left), dr = oracle::cofactor_det(d.right);
      o.require(abs(dl) == 1 && abs(dr) == 1, where + ": not unimodular");
      for (std::size_t i = 0; i < d.diag.rows(); ++i)
        for (std::size_t j = 0; j < d.diag.cols(); ++j)
          if (i != j) o.require(d.diag(i, j) == 0, where + ": off-diagonal entry");
      const IntVector f = d.invariant_factors();
      for (std::size_t i = 0; i + 1 < f.size(); ++i) {
        o.require(f[i] >= 0, where + ": negative factor");
        const bool divides = f[i] == 0 ? f[i + 1] == 0 : f[i + 1] % f[i] == 0;
        o.require(divides, where + ": divisibility chain");
      }
      o.require(f == oracle::invariant_factors_by_minors(a), where + ": differs from gcd-of-minors");
    }
    return o;
  });

  criterion(6, "certify passes on all golden cases", 0, [] {
    Outcome o;
    for (auto [n, s0] : kGolden) {
      const auto start = std::chrono::steady_clock::now();
      CertificationResult r = certify(n, s0, ConnectionModel::trivial(), 1.0);
      const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
      const std::string where = tag(n, s0);
      o.require(r.pass, where + ": verdict fail");
      o.require(r.ricci.margin > 0, where + ": Ricci margin");
      o.require(r.profile.core.max_residual < 1e-9, where + ": first-integral residual");
      o.require(r.gluing.resid_fprime < 1e-8 && r.gluing.resid_cap < 1e-8, where + ": gluing residuals");
      o.require(secs < 10, where + ": slower than 10 s");
      certified.emplace(std::make_pair(n, s0), std::move(r));
    }
    return o;
  });

  criterion(7, "core Ric(T,T) matches the closed form", 0, [] {
    Outcome o;
    o.require(certified.size() == kGolden.size(), "golden certificates missing");
    double worst = 0;
    for (const auto& [key, r] : certified) {
      const WarpParams& p = r.profile.params;
      const double c = 0.5 * p.alpha * p.lambda0 * p.lambda0;
      std::size_t count = 0;
      for (std::size_t i = 0; i < r.profile.samples.size(); ++i) {
        const Sample& x = r.profile.samples[i];
        if (x.segment != Segment::Core) continue;
        ++count;
        const double expected = c * (p.alpha - (p.n - 2)) * std::pow(x.f, -p.alpha - 2);
        worst = std::max(worst, std::abs(r.ricci.tt[i] - expected) / expected);
      }
      o.require(count > 0, tag(key.first, key.second) + ": no core samples");
    }
    o.require(worst < 1e-6, "worst relative error " + std::to_string(worst));
    return o;
  });

  criterion(8, "sphere-direction margin dominates its core lower bound", 0, [] {
    Outcome o;
    o.require(certified.size() == kGolden.size(), "golden certificates missing");
    for (const auto& [key, r] : certified) {
      const WarpParams& p = r.profile.params;
      for (std::size_t i = 0; i < r.profile.samples.size(); ++i) {
        const Sample& x = r.profile.samples[i];
        if (x.segment != Segment::Core) continue;
        const double bound = (-p.alpha * p.lambda0 * p.lambda0 + (p.n - 2)) / (x.f * x.f);
        o.require(r.margins.ineq2[i] >= bound - 1e-12, tag(key.first, key.second) + ": s=" + std::to_string(x.s));
      }
    }
    return o;
  });

  criterion(9, "star plumbing boundaries match the multiple-surgery formula", 0, [] {
    Outcome o;
    for (const Manifold& m : {Manifold::sphere(3), Manifold::smale(2), Manifold::lens(3, 5)}) {
      std::vector<EulerClass> classes{EulerClass::zero()};
      // primitive classes exist only where H^2 has an element of maximal order
      if (!m.cohomology().at(2).is_trivial()) classes.push_back(EulerClass::primitive());
      for (const EulerClass& e : classes)
        for (std::size_t l = 1; l <= 5; ++l) {
          const Manifold b = boundary(star_graph(m, e, l));
          std::vector<Manifold> parts{suspend(m, e)};
          for (std::size_t i = 1; i < l; ++i) parts.push_back(Manifold::sphere_product(2, m.dimension() - 1));
          const Manifold expected = parts.size() == 1 ? parts[0] : connected_sum(parts);
          const std::string where = m.to_string() + " e=" + e.to_string() + " l=" + std::to_string(l);
          o.require(b.homology() == expected.homology(), where + ": homology");
          o.require(b.spin() == expected.spin(), where + ": spin");
        }
    }
    return o;
  });

  criterion(10, "certified margins are stable under grid doubling", 0, [] {
    Outcome o;
    double worst = 0;
    for (auto [n, s0] : kGolden) {
      const auto it = certified.find({n, s0});
      const CertificationResult base =
          it != certified.end() ? it->second : certify(n, s0, ConnectionModel::trivial(), 1.0);
      CertifyOptions fine;
      fine.step = base.profile.params.step / 2;
      const CertificationResult refined = certify(n, s0, ConnectionModel::trivial(), 1.0, fine);
      o.require(refined.pass, tag(n, s0) + ": refined verdict fail");
      const double rel = std::abs(refined.ricci.margin - base.ricci.margin) / base.ricci.margin;
      worst = std::max(worst, rel);
      o.require(rel < 0.01, tag(n, s0) + ": relative change " + std::to_string(rel));
    }
    if (o.ok) o.detail = "worst relative change " + std::to_string(worst);
    return o;
  });

  std::printf("%d of 10 criteria failed\n", failures);
  return failures == 0 ? 0 : 1;
}
