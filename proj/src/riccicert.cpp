#include "twsusp/riccicert.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "twsusp/error.hpp"

namespace twsusp {

ConnectionModel ConnectionModel::bounded(double sup_F, double sup_deltaF, double lo, double hi) {
  ConnectionModel c;
  c.mode = Mode::Bounded;
  c.sup_F = sup_F;
  c.sup_deltaF = sup_deltaF;
  c.support_lo = lo;
  c.support_hi = hi;
  c.validate();
  return c;
}

void ConnectionModel::validate() const {
  if (mode == Mode::Trivial) {
    if (sup_F != 0 || sup_deltaF != 0) throw Error(ErrorKind::Precondition, "trivial connection has F = 0");
    return;
  }
  if (!(sup_F >= 0) || !(sup_deltaF >= 0)) throw Error(ErrorKind::Precondition, "curvature bounds must be >= 0");
  if (!(support_lo > 0)) throw Error(ErrorKind::Precondition, "connection support must avoid s = 0");
  if (!(support_hi >= support_lo)) throw Error(ErrorKind::Precondition, "empty connection support");
}

bool ConnectionModel::active_at(double s) const {
  return mode == Mode::Bounded && s >= support_lo && s <= support_hi;
}

RicciReport ricci_neck(const WarpProfile& w, const ConnectionModel& c, double r) {
  c.validate();
  if (!(r > 0)) throw Error(ErrorKind::Precondition, "r must be positive");
  if (c.mode == ConnectionModel::Mode::Bounded && !(c.support_lo > w.left()))
    throw Error(ErrorKind::Precondition, "connection support must start after the left endpoint");
  const int n = w.params.n;
  const Margins m = inequality_margins(w);
  const std::size_t count = w.samples.size();
  const double scale = r / w.r;
  const double beta2 = c.sup_F * c.sup_F;
  const double dF = c.sup_deltaF;

  RicciReport rep;
  rep.r = r;
  rep.strict_end = m.strict_end;
  for (auto* v : {&rep.s, &rep.tt, &rep.xx, &rep.ss, &rep.tx, &rep.ts, &rep.xs, &rep.xy, &rep.lower}) v->resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    const Sample& x = w.samples[i];
    rep.s[i] = x.s;
    rep.tt[i] = m.ineq3[i];
    rep.xx[i] = m.ineq2[i];
    rep.ss[i] = m.ineq1[i];
    double tx = 0, ts = 0, xs = 0, xy = 0;
    if (c.active_at(x.s)) {
      const double h = scale * x.h, hp = scale * x.hp;
      const double sum = (n - 1) * beta2 * h * h / 2;  // (h^2/2) sum_i F(., e_i)^2
      rep.xx[i] -= sum / std::pow(x.f, 4);
      rep.ss[i] -= sum / (x.f * x.f);
      tx = (h * dF + 3 * std::abs(hp) * c.sup_F) / 2;
      ts = h * dF / 2;
      xs = sum / std::pow(x.f, 3);
      xy = sum / std::pow(x.f, 4);
    }
    rep.tx[i] = tx;
    rep.ts[i] = ts;
    rep.xs[i] = xs;
    rep.xy[i] = xy;
    const double row_t = rep.tt[i] - (n - 1) * tx - ts;
    const double row_x = rep.xx[i] - tx - (n - 2) * xy - xs;
    const double row_s = rep.ss[i] - ts - (n - 1) * xs;
    rep.lower[i] = std::min({row_t, row_x, row_s});
  }
  const auto strict = rep.lower.begin() + static_cast<long>(m.strict_end);
  rep.margin = *std::min_element(rep.lower.begin(), strict);
  rep.tail_margin = std::numeric_limits<double>::infinity();
  for (std::size_t i = m.strict_end; i + 1 < count; ++i) rep.tail_margin = std::min(rep.tail_margin, rep.lower[i]);
  if (m.strict_end + 1 >= count) rep.tail_margin = rep.margin;
  return rep;
}

BundleBound ricci_bundle(double ric_min, const ConnectionModel& c, double phi, int n) {
  return {ric_min - std::exp(2 * phi) / 2 * (n - 1) * c.sup_F * c.sup_F, 0};
}

PhiChoice choose_phi(double ric_min, const ConnectionModel& c, double safety, int n, double fallback, double floor) {
  if (!(ric_min > 0)) throw Error(ErrorKind::Precondition, "ric_min must be positive");
  if (!(safety > 0 && safety <= 1)) throw Error(ErrorKind::Precondition, "safety must lie in (0,1]");
  if (c.sup_F == 0) return {fallback, false};
  const double room = 2 * (1 - safety) * ric_min / ((n - 1) * c.sup_F * c.sup_F);
  if (!(room > 0)) return {floor, true};
  const double phi = 0.5 * std::log(room);
  if (phi < floor) return {floor, true};
  return {phi, false};
}

GluingReport verify_gluing(const WarpProfile& w, double s0, double tol) {
  GluingReport g;
  const Sample& end = w.back();
  const double N = w.cap.N;
  g.resid_fprime = std::abs(end.fp - std::cos(s0));
  g.resid_cap = N > 0 ? std::abs(end.f / N - std::sin(s0)) : std::numeric_limits<double>::infinity();
  g.resid_N = std::abs(N - end.f / std::sin(s0));
  g.h_slope_end = std::abs(end.hp);
  g.h_curv_end = std::abs(end.hpp);
  g.pass = w.cap.applied && g.resid_fprime < tol && g.resid_cap < tol && g.h_slope_end < tol && g.h_curv_end < tol;
  return g;
}

namespace {

struct Attempt {
  bool ok = false;
  RicciReport report;
  WarpProfile profile;
};

Attempt try_r(const std::function<WarpProfile(double)>& build, const ConnectionModel& c, double target, double r) {
  Attempt a;
  try {
    a.profile = build(r);
  } catch (const Error&) {
    return a;
  }
  a.report = ricci_neck(a.profile, c, r);
  a.ok = a.report.positive() && a.report.margin >= target;
  return a;
}

}  // namespace

RSearch search_r(const std::function<WarpProfile(double)>& build, const ConnectionModel& c, double target_margin,
                 double r_floor) {
  double r = 1;
  Attempt pass = try_r(build, c, target_margin, r);
  while (!pass.ok) {
    r /= 2;
    if (r < r_floor) throw Error(ErrorKind::Exhausted, "no r >= " + std::to_string(r_floor) + " certifies the neck");
    pass = try_r(build, c, target_margin, r);
  }
  if (r < 1) {
    double lo = r, hi = 2 * r;
    while ((hi - lo) / lo > 1e-2) {
      const double mid = 0.5 * (lo + hi);
      Attempt a = try_r(build, c, target_margin, mid);
      if (a.ok) {
        lo = mid;
        pass = std::move(a);
      } else {
        hi = mid;
      }
    }
    r = lo;
  }
  return {r, std::move(pass.report), std::move(pass.profile)};
}

WarpParams CertifyOptions::warp_params(int n, double s0) const {
  WarpParams p = WarpParams::defaults(n, std::cos(s0));
  if (lambda0 > 0) {
    p.lambda0 = lambda0;
    p.alpha = 0.5 * ((n - 2) + (n - 2) / (lambda0 * lambda0));
  }
  if (alpha > 0) p.alpha = alpha;
  p.step = step;
  p.cap_width = cap_width;
  p.tail_width = tail_width;
  p.origin_eps = origin_eps;
  p.s_budget = s_budget;
  p.tol_ode = tol_ode;
  return p;
}

CertificationResult certify(int n, double s0, const ConnectionModel& c, double ric_min, const CertifyOptions& opt) {
  if (n < 3) throw Error(ErrorKind::Precondition, "n must be >= 3");
  if (!(s0 > 0 && s0 < M_PI / 2)) throw Error(ErrorKind::Precondition, "s0 must lie in (0, pi/2)");
  if (!(ric_min > 0)) throw Error(ErrorKind::Precondition, "ric_min must be positive");
  c.validate();

  CertificationResult res;
  res.n = n;
  res.s0 = s0;
  const WarpParams p = opt.warp_params(n, s0);
  try {
    p.validate();
  } catch (const Error& e) {
    throw e.in_stage("params");
  }
  auto build = [&](double r) { return build_profile(p, r); };

  // surfaces the stage that fails at the default scale before searching
  try {
    build(0.5);
  } catch (const Error& e) {
    throw e.in_stage("profile");
  }

  RSearch found = [&] {
    try {
      return search_r(build, c, opt.target_margin, opt.r_floor);
    } catch (const Error& e) {
      throw e.in_stage("search_r");
    }
  }();
  res.r_cert = found.r;

  res.phi_max = choose_phi(ric_min, c, opt.safety, n, opt.phi_fallback, opt.phi_floor);
  if (res.phi_max.capped) res.notes.push_back("phi capped at the configured floor");

  const double h_unit = found.profile.back().h / found.profile.r;
  res.r_glue = found.profile.cap.N * std::exp(res.phi_max.phi) / h_unit;
  res.r = std::min(res.r_cert, res.r_glue);
  if (res.r < res.r_cert) {
    try {
      found.profile = build(res.r);
    } catch (const Error& e) {
      throw e.in_stage("glue rescale");
    }
    found.report = ricci_neck(found.profile, c, res.r);
  }
  res.profile = std::move(found.profile);
  res.ricci = std::move(found.report);
  res.phi = std::log(res.profile.back().h / res.profile.cap.N);
  res.margins = inequality_margins(res.profile);
  res.bundle = ricci_bundle(ric_min, c, res.phi, n);
  res.gluing = verify_gluing(res.profile, s0, opt.tol_glue);

  const Margins& m = res.margins;
  const bool warping = m.min1 > 0 && m.min2 > 0 && m.min3 > 0 && m.tail_weighted3 > 0;
  const bool core = res.profile.core.max_residual < p.tol_ode;
  res.pass = warping && core && res.ricci.positive() && res.ricci.margin >= opt.target_margin && res.gluing.pass &&
             res.bundle.horizontal > 0;
  if (!core) res.notes.push_back("core first-integral residual above tolerance");
  if (!res.gluing.pass) res.notes.push_back("gluing residuals above tolerance");
  if (!(res.bundle.horizontal > 0)) res.notes.push_back("bundle horizontal bound not positive");
  res.notes.push_back("ineq3 vanishes at s_lambda; positivity there follows from deforming a nonnegative metric");
  return res;
}

}  // namespace twsusp
