#include "twsusp/warpmetric.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <ostream>

#include "twsusp/error.hpp"

namespace twsusp {

double smoothstep(double x) {
  x = std::clamp(x, 0.0, 1.0);
  return x * x * x * (10 + x * (-15 + 6 * x));
}

double smoothstep_d1(double x) {
  if (x <= 0 || x >= 1) return 0;
  return 30 * x * x * (1 - x) * (1 - x);
}

std::string_view to_string(Segment s) {
  switch (s) {
    case Segment::Splice: return "splice";
    case Segment::Flat: return "flat";
    case Segment::Core: return "core";
    case Segment::Cap: return "cap";
    case Segment::Tail: return "tail";
  }
  return "?";
}

WarpParams WarpParams::defaults(int n, double lambda) {
  WarpParams p;
  p.n = n;
  p.lambda = lambda;
  p.lambda0 = 0.5 * (lambda + 1);
  p.alpha = 0.5 * ((n - 2) + (n - 2) / (p.lambda0 * p.lambda0));
  return p;
}

void WarpParams::validate() const {
  auto fail = [](const std::string& what) { throw Error(ErrorKind::Precondition, what); };
  if (n < 3) fail("n must be >= 3");
  if (!(lambda > 0 && lambda < 1)) fail("lambda must lie in (0,1)");
  if (!(lambda0 > lambda && lambda0 < 1)) fail("lambda0 must lie in (lambda,1)");
  if (!(alpha > n - 2 && alpha < (n - 2) / (lambda0 * lambda0))) fail("alpha must lie in (n-2, (n-2)/lambda0^2)");
  if (!(step > 0)) fail("step must be positive");
  if (!(s_budget > 0)) fail("s_budget must be positive");
}

namespace {

// f'' = c f^{-a-1}, h = f'/c
struct CoreOde {
  double c;
  double alpha;
  double lambda0;

  explicit CoreOde(const WarpParams& p)
      : c(0.5 * p.alpha * p.lambda0 * p.lambda0), alpha(p.alpha), lambda0(p.lambda0) {}

  double fpp(double f) const { return c * std::pow(f, -alpha - 1); }
  double h(double fp) const { return fp / c; }
  double hp(double f) const { return std::pow(f, -alpha - 1); }
  double hpp(double f, double fp) const { return -(alpha + 1) * std::pow(f, -alpha - 2) * fp; }
  double residual(double f, double fp) const {
    return std::abs(fp * fp - lambda0 * lambda0 * (1 - std::pow(f, -alpha)));
  }

  Sample sample(double s, double f, double fp, Segment seg) const {
    return {s, f, fp, fpp(f), h(fp), hp(f), hpp(f, fp), seg};
  }
};

template <std::size_t N, class Rhs>
std::array<double, N> rk4(const Rhs& rhs, double s, const std::array<double, N>& y, double dt) {
  auto axpy = [](const std::array<double, N>& a, const std::array<double, N>& b, double t) {
    std::array<double, N> out;
    for (std::size_t i = 0; i < N; ++i) out[i] = a[i] + t * b[i];
    return out;
  };
  const auto k1 = rhs(s, y);
  const auto k2 = rhs(s + dt / 2, axpy(y, k1, dt / 2));
  const auto k3 = rhs(s + dt / 2, axpy(y, k2, dt / 2));
  const auto k4 = rhs(s + dt, axpy(y, k3, dt));
  std::array<double, N> out;
  for (std::size_t i = 0; i < N; ++i) out[i] = y[i] + dt / 6 * (k1[i] + 2 * k2[i] + 2 * k3[i] + k4[i]);
  return out;
}

using State2 = std::array<double, 2>;

auto core_rhs(const CoreOde& ode) {
  return [&ode](double, const State2& y) { return State2{y[1], ode.fpp(y[0])}; };
}

// Fixed-step RK4 from (s, y); appends a sample per step and stops at the first
// point with f' = target, found by bisection of a partial step.
struct Stop {
  double s;
  State2 y;
};

Stop advance_to_slope(const CoreOde& ode, const WarpParams& p, double s_start, State2 y, double target,
                      std::vector<Sample>* out, double* max_residual) {
  const auto rhs = core_rhs(ode);
  for (long k = 0;; ++k) {
    const double s = s_start + static_cast<double>(k) * p.step;
    if (s > p.s_budget)
      throw Error(ErrorKind::NoStop, "f' did not reach " + std::to_string(target) + " within s <= " +
                                         std::to_string(p.s_budget));
    const State2 next = rk4<2>(rhs, s, y, p.step);
    if (next[1] >= target) {
      double lo = 0, hi = 1;
      for (int it = 0; it < 200 && hi - lo > 1e-17; ++it) {
        const double mid = 0.5 * (lo + hi);
        (rk4<2>(rhs, s, y, mid * p.step)[1] >= target ? hi : lo) = mid;
      }
      const double s_stop = s + hi * p.step;
      const State2 y_stop = rk4<2>(rhs, s, y, hi * p.step);
      if (out && hi * p.step > 1e-14) out->push_back(ode.sample(s_stop, y_stop[0], y_stop[1], Segment::Core));
      if (max_residual) *max_residual = std::max(*max_residual, ode.residual(y_stop[0], y_stop[1]));
      return {s_stop, y_stop};
    }
    y = next;
    if (out) out->push_back(ode.sample(s + p.step, y[0], y[1], Segment::Core));
    if (max_residual) *max_residual = std::max(*max_residual, ode.residual(y[0], y[1]));
  }
}

struct Ratios {
  double hpp_h, fphp_fh;
};

double ineq1(int n, const Sample& x, const Ratios& q) { return -(n - 1) * x.fpp / x.f - q.hpp_h; }
double ineq2(int n, const Sample& x, const Ratios& q) {
  return -x.fpp / x.f + (n - 2) * (1 - x.fp * x.fp) / (x.f * x.f) - q.fphp_fh;
}
double ineq3(int n, const Ratios& q) { return -q.hpp_h - (n - 1) * q.fphp_fh; }

void require_margins(const WarpProfile& w, std::size_t first, std::size_t last, bool check3, const char* stage) {
  const int n = w.params.n;
  for (std::size_t i = first; i < last; ++i) {
    const Quotients q = quotients(w, i);
    const Ratios r{q.hpp_h, q.fphp_fh};
    const Sample& x = w.samples[i];
    const double m1 = ineq1(n, x, r), m2 = ineq2(n, x, r), m3 = ineq3(n, r);
    if (!(m1 > 0) || !(m2 > 0) || (check3 && !(m3 > 0))) {
      char buf[200];
      std::snprintf(buf, sizeof buf, "%s: inequality fails at s = %.10g (margins %.3g, %.3g, %.3g)", stage, x.s, m1,
                    m2, m3);
      throw Error(ErrorKind::MarginLost, buf);
    }
  }
}

}  // namespace

WarpProfile integrate_core(const WarpParams& p) {
  p.validate();
  const CoreOde ode(p);
  WarpProfile w;
  w.params = p;
  w.samples.push_back(ode.sample(0, 1, 0, Segment::Core));
  double residual = 0;
  const Stop stop = advance_to_slope(ode, p, 0, {1, 0}, p.lambda, &w.samples, &residual);
  w.core.s_lambda = stop.s;
  w.core.max_residual = residual;
  w.core.f_at_s_lambda = stop.y[0];
  w.s_lambda = stop.s;
  return w;
}

namespace {

struct BlendResult {
  std::vector<Sample> samples;  // blend samples after the start
  double f_end, fp_end, fc_end, fcp_end;
};

// Integrates (f_c, f_c', f, f') over [a, a + width] with
// f'' = mu c f^{-a-1} - (1 - mu) f / N^2, mu falling from 1 to 0.
BlendResult run_blend(const CoreOde& ode, double a, const State2& core, double width, long steps, double N,
                      bool keep) {
  using State4 = std::array<double, 4>;
  auto rhs = [&](double s, const State4& y) {
    const double mu = 1 - smoothstep((s - a) / width);
    return State4{y[1], ode.fpp(y[0]), y[3], mu * ode.fpp(y[2]) - (1 - mu) * y[2] / (N * N)};
  };
  BlendResult out;
  State4 y{core[0], core[1], core[0], core[1]};
  const double dt = width / static_cast<double>(steps);
  for (long k = 0; k < steps; ++k) {
    const double s = a + static_cast<double>(k) * dt;
    y = rk4<4>(rhs, s, y, dt);
    if (keep) {
      const double s1 = k + 1 == steps ? a + width : s + dt;
      const double mu = 1 - smoothstep((s1 - a) / width);
      out.samples.push_back({s1, y[2], y[3], mu * ode.fpp(y[2]) - (1 - mu) * y[2] / (N * N), ode.h(y[1]),
                             ode.hp(y[0]), ode.hpp(y[0], y[1]), Segment::Cap});
    }
  }
  out.fc_end = y[0];
  out.fcp_end = y[1];
  out.f_end = y[2];
  out.fp_end = y[3];
  return out;
}

}  // namespace

WarpProfile cap_sine(const WarpProfile& w, double lambda, double width) {
  if (w.cap.applied || w.splice.applied) throw Error(ErrorKind::Precondition, "cap_sine expects a bare core profile");
  const WarpParams& p = w.params;
  if (std::abs(w.back().fp - lambda) > 1e-9)
    throw Error(ErrorKind::Precondition, "core does not end with slope lambda");
  const CoreOde ode(p);
  const double f_l = w.core.f_at_s_lambda;
  const double blend = width > 0 ? width : 0.1 * w.core.s_lambda;
  const double one_l2 = 1 - lambda * lambda;
  // slope excess at the blend end that leaves a sine segment about `blend` long
  const double delta = std::min(blend * one_l2 / f_l, 0.25 * (p.lambda0 - lambda));
  const double kappa_max = 0.5 * (p.lambda0 - lambda);
  double kappa = delta - 0.5 * blend * (ode.fpp(f_l) - one_l2 / f_l);

  const long steps = std::max<long>(8, static_cast<long>(std::ceil(blend / p.step)));
  Stop start{};
  BlendResult res;
  double N = f_l / std::sqrt(one_l2);
  bool ok = false;
  for (int outer = 0; outer < 60 && !ok; ++outer) {
    kappa = std::min(kappa, kappa_max);
    if (lambda + kappa <= 0) kappa = -0.5 * lambda;
    start = advance_to_slope(ode, p, 0, {1, 0}, lambda + kappa, nullptr, nullptr);
    for (int it = 0; it < 200; ++it) {
      res = run_blend(ode, start.s, start.y, blend, steps, N, false);
      if (!(res.fp_end < 1) || !(res.f_end > 0)) break;
      const double next = res.f_end / std::sqrt(1 - res.fp_end * res.fp_end);
      const bool converged = std::abs(next - N) <= 1e-15 * N;
      N = next;
      if (converged) break;
    }
    const double excess = res.fp_end - lambda;
    if (excess > 0.5 * delta && excess < 2 * delta) {
      ok = true;
    } else {
      if (kappa >= kappa_max && excess <= 0) break;
      kappa += delta - excess;
    }
  }
  if (!ok || !(res.fp_end > lambda))
    throw Error(ErrorKind::MarginLost, "cap blend cannot end above slope lambda; shrink cap_width");

  WarpProfile out;
  out.params = p;
  out.core = w.core;
  double residual = 0;
  out.samples.push_back(ode.sample(0, 1, 0, Segment::Core));
  advance_to_slope(ode, p, 0, {1, 0}, lambda + kappa, &out.samples, &residual);
  out.core.max_residual = std::max(out.core.max_residual, residual);
  res = run_blend(ode, start.s, start.y, blend, steps, N, true);
  out.samples.insert(out.samples.end(), res.samples.begin(), res.samples.end());

  const double b = start.s + blend;
  const double theta_b = std::atan2(res.f_end / N, res.fp_end);
  const double s_prime = b - N * theta_b;
  const double s_end = s_prime + N * std::acos(lambda);
  const long sine_steps = std::max<long>(4, static_cast<long>(std::ceil((s_end - b) / p.step)));
  State2 fc{res.fc_end, res.fcp_end};
  const auto rhs = core_rhs(ode);
  double s = b;
  for (long k = 1; k <= sine_steps; ++k) {
    const double s1 = k == sine_steps ? s_end : b + (s_end - b) * static_cast<double>(k) / sine_steps;
    fc = rk4<2>(rhs, s, fc, s1 - s);
    s = s1;
    const double theta = (s - s_prime) / N;
    const double f = N * std::sin(theta);
    const double fp = k == sine_steps ? lambda : std::cos(theta);
    out.samples.push_back({s, f, fp, -f / (N * N), ode.h(fc[1]), ode.hp(fc[0]), ode.hpp(fc[0], fc[1]), Segment::Cap});
  }
  out.cap = {true, start.s, blend, N, s_prime, b};
  out.s_lambda = s_end;

  std::size_t first_cap = 0;
  while (out.samples[first_cap].segment != Segment::Cap) ++first_cap;
  require_margins(out, first_cap, out.samples.size(), true, "cap");
  return out;
}

namespace {

// cubic Hermite interpolant of h' on [s0, s1]
double hermite(double t, double dt, double p0, double d0, double p1, double d1) {
  const double t2 = t * t, t3 = t2 * t;
  return (2 * t3 - 3 * t2 + 1) * p0 + (t3 - 2 * t2 + t) * dt * d0 + (-2 * t3 + 3 * t2) * p1 + (t3 - t2) * dt * d1;
}

}  // namespace

WarpProfile flatten_h_tail(const WarpProfile& w, double width) {
  if (!w.cap.applied || w.tail.applied) throw Error(ErrorKind::Precondition, "flatten_h_tail expects a capped profile");
  const double s_end = w.s_lambda;
  const double eps = width > 0 ? width : 0.5 * (s_end - w.cap.sine_start);
  WarpProfile out = w;
  auto& xs = out.samples;
  // the cutoff starts on the last sample at or before s_end - eps
  std::size_t first = xs.size() - 1;
  while (first > 0 && xs[first].s > s_end - eps) --first;
  if (first == 0) throw Error(ErrorKind::Precondition, "tail width exceeds the profile");
  const double t0 = xs[first].s;
  const double span = s_end - t0;
  auto psi = [&](double s) { return 1 - smoothstep((s - t0) / span); };
  auto dpsi = [&](double s) { return -smoothstep_d1((s - t0) / span) / span; };

  static const double gx[3] = {-std::sqrt(0.6), 0.0, std::sqrt(0.6)};
  static const double gw[3] = {5.0 / 9, 8.0 / 9, 5.0 / 9};
  double h_tilde = xs[first].h;
  out.tail = {true, t0, span, xs.back().h};
  for (std::size_t i = first + 1; i < xs.size(); ++i) {
    const Sample& a = w.samples[i - 1];
    const Sample& b = w.samples[i];
    const double dt = b.s - a.s;
    double integral = 0;
    for (int g = 0; g < 3; ++g) {
      const double t = 0.5 * (1 + gx[g]);
      const double s = a.s + t * dt;
      integral += gw[g] * psi(s) * hermite(t, dt, a.hp, a.hpp, b.hp, b.hpp);
    }
    h_tilde += 0.5 * dt * integral;
    const double ps = i + 1 == xs.size() ? 0.0 : psi(b.s);
    xs[i].h = h_tilde;
    xs[i].hp = ps * b.hp;
    xs[i].hpp = ps * b.hpp + dpsi(b.s) * b.hp;
    xs[i].segment = Segment::Tail;
  }
  out.samples.back().hpp = 0;  // psi and psi' both vanish at the end

  const int n = out.params.n;
  require_margins(out, first + 1, xs.size(), false, "tail");
  for (std::size_t i = first + 1; i + 1 < xs.size(); ++i) {
    const Sample& x = xs[i];
    if (!(-x.hpp / x.hp - (n - 1) * x.fp / x.f > 0))
      throw Error(ErrorKind::MarginLost, "tail: weighted ineq3 fails");
  }
  return out;
}


SpliceSolution solve_splice(double value, double slope) {
  if (!(slope < 1)) throw Error(ErrorKind::NoSolution, "splice needs r h'(s0) < 1");
  if (!(value > 0) || !(slope > 0)) throw Error(ErrorKind::NoSolution, "splice needs positive h and h' at s0");
  const double u = std::acos(slope);
  const double R = value / std::sin(u);
  return {u, R, R * u};
}

double default_origin_eps(const WarpProfile& w) {
  const WarpParams& p = w.params;
  const CoreOde ode(p);
  const double delta = 0.5 * (p.alpha + 2 - p.n) / (p.n - 1);
  return std::min(0.05 * w.core.s_lambda, 0.25 * delta * p.lambda / (ode.c * (1 + delta)));
}

namespace {

using State4 = std::array<double, 4>;

// f'' multiplier: 0 up to eps, ramps to 1 + delta, back down to 1 at b
double flattening(double s, double eps, double tau, double delta, double b) {
  if (s <= eps) return 0;
  if (s < eps + tau) return (1 + delta) * smoothstep((s - eps) / tau);
  if (s < b - tau) return 1 + delta;
  if (s < b) return 1 + delta - delta * smoothstep((s - (b - tau)) / tau);
  return 1;
}

}  // namespace

WarpProfile smooth_origin(const WarpProfile& w, double r, double eps) {
  if (w.splice.applied || w.left() != 0) throw Error(ErrorKind::Precondition, "smooth_origin expects an unsmoothed profile");
  if (!(r > 0 && r <= 1)) throw Error(ErrorKind::Precondition, "r must lie in (0,1]");
  const WarpParams& p = w.params;
  const CoreOde ode(p);
  const int n = p.n;
  if (!(eps > 0)) eps = default_origin_eps(w);
  const double delta = 0.5 * (p.alpha + 2 - n) / (n - 1);
  const double tau = eps / 4, s0 = eps / 2;
  const double fine = eps * p.step * 5;        // eps / 200 at the default step
  const double medium = eps * p.step * 20;     // eps / 50
  const double limit = 0.5 * (w.cap.applied ? w.cap.start : w.s_lambda);

  // (f_c, f_c', g, g') with g'' = m f_c'' and g(0) = g'(0) = 0
  auto integrate_flat = [&](double b, std::vector<std::pair<double, State4>>* keep) {
    auto rhs = [&](double s, const State4& y) {
      const double fc2 = ode.fpp(y[0]);
      return State4{y[1], fc2, y[3], flattening(s, eps, tau, delta, b) * fc2};
    };
    const long steps = std::max<long>(200, static_cast<long>(std::ceil(b / medium)));
    const double dt = b / static_cast<double>(steps);
    State4 y{1, 0, 0, 0};
    for (long k = 0; k < steps; ++k) {
      y = rk4<4>(rhs, static_cast<double>(k) * dt, y, dt);
      if (keep) keep->push_back({k + 1 == steps ? b : static_cast<double>(k + 1) * dt, y});
    }
    return y;
  };
  auto mismatch = [&](double b) {
    const State4 y = integrate_flat(b, nullptr);
    return y[3] - y[1];
  };

  double lo = eps + 2 * tau, hi = 2 * lo;
  if (!(mismatch(lo) < 0)) throw Error(ErrorKind::MarginLost, "origin flattening cannot start");
  while (mismatch(hi) <= 0) {
    hi *= 2;
    if (hi > limit) throw Error(ErrorKind::MarginLost, "origin_eps too large: flattening does not close before the cap");
  }
  for (int it = 0; it < 200 && hi - lo > 1e-15 * hi; ++it) {
    const double mid = 0.5 * (lo + hi);
    (mismatch(mid) > 0 ? hi : lo) = mid;
  }
  const double b = hi;
  std::vector<std::pair<double, State4>> flat_states;
  const State4 yb = integrate_flat(b, &flat_states);
  const double C = yb[0] - yb[2];  // f = C + g matches the core at b

  // core state at the splice point and the closed-form guess
  const auto rhs2 = core_rhs(ode);
  auto core_at = [&](double s_end) {
    const long steps = std::max<long>(30, std::lround(s_end / fine));
    State2 y{1, 0};
    for (long k = 0; k < steps; ++k) y = rk4<2>(rhs2, static_cast<double>(k) * s_end / steps, y, s_end / steps);
    return y;
  };
  const State2 at_s0 = core_at(s0);
  SpliceSolution guess = solve_splice(r * ode.h(at_s0[1]), r * ode.hp(at_s0[0]));
  // the smoothing window must stay inside the sine arc
  const double sigma = std::min(eps / 4, 0.5 * guess.length);
  const State2 yc = core_at(s0 - sigma);

  const long window_steps = std::max<long>(20, std::lround(2 * sigma / fine));
  const double wdt = 2 * sigma / static_cast<double>(window_steps);
  // (f_c, f_c', h, h'), h'' = nu (-h / R^2) + (1 - nu) r h_c''
  auto run_window = [&](double R, double ep, std::vector<Sample>* keep) {
    const double theta = (s0 - sigma - ep) / R;
    if (!(theta > 0)) throw Error(ErrorKind::NoSolution, "splice start lies before the sine zero");
    auto rhs = [&](double s, const State4& y) {
      const double nu = 1 - smoothstep((s - (s0 - sigma)) / (2 * sigma));
      return State4{y[1], ode.fpp(y[0]), y[3], -nu * y[2] / (R * R) + (1 - nu) * r * ode.hpp(y[0], y[1])};
    };
    State4 y{yc[0], yc[1], R * std::sin(theta), std::cos(theta)};
    for (long k = 0; k < window_steps; ++k) {
      const double s = s0 - sigma + static_cast<double>(k) * wdt;
      y = rk4<4>(rhs, s, y, wdt);
      if (keep) {
        const double s1 = k + 1 == window_steps ? s0 + sigma : s + wdt;
        const double nu = 1 - smoothstep((s1 - (s0 - sigma)) / (2 * sigma));
        keep->push_back({s1, C, 0, 0, y[2], y[3], -nu * y[2] / (R * R) + (1 - nu) * r * ode.hpp(y[0], y[1]),
                         Segment::Splice});
      }
    }
    return std::array<double, 2>{y[2] - r * ode.h(y[1]), y[3] - r * ode.hp(y[0])};
  };

  double R = guess.R, ep = s0 - guess.length;
  const double scale = r * ode.h(at_s0[1]);
  for (int it = 0; it < 40; ++it) {
    const auto F = run_window(R, ep, nullptr);
    if (std::abs(F[0]) <= 1e-15 * scale && std::abs(F[1]) <= 1e-15) break;
    const double dR = 1e-6 * R, dE = 1e-6 * R;
    const auto FR1 = run_window(R + dR, ep, nullptr), FR0 = run_window(R - dR, ep, nullptr);
    const auto FE1 = run_window(R, ep + dE, nullptr), FE0 = run_window(R, ep - dE, nullptr);
    const double j00 = (FR1[0] - FR0[0]) / (2 * dR), j10 = (FR1[1] - FR0[1]) / (2 * dR);
    const double j01 = (FE1[0] - FE0[0]) / (2 * dE), j11 = (FE1[1] - FE0[1]) / (2 * dE);
    const double det = j00 * j11 - j01 * j10;
    if (det == 0 || !std::isfinite(det)) throw Error(ErrorKind::NoSolution, "splice Newton step is singular");
    const double stepR = (F[0] * j11 - F[1] * j01) / det;
    const double stepE = (j00 * F[1] - j10 * F[0]) / det;
    R -= stepR;
    ep -= stepE;
    if (!(R > 0)) throw Error(ErrorKind::NoSolution, "splice radius became nonpositive");
    if (std::abs(stepR) <= 1e-15 * R && std::abs(stepE) <= 1e-15 * R) break;
  }
  if (!(ep > 0)) throw Error(ErrorKind::NoSolution, "splice start eps' is not positive");

  WarpProfile out;
  out.params = p;
  out.core = w.core;
  out.cap = w.cap;
  out.tail = w.tail;
  out.tail.h_unflattened *= r;
  out.s_lambda = w.s_lambda;
  out.r = r;
  out.splice = {true, r, eps, s0, sigma, R, ep, b};

  const long sine_steps = std::max<long>(20, static_cast<long>(std::ceil((s0 - sigma - ep) / fine)));
  for (long k = 0; k <= sine_steps; ++k) {
    const double s = k == sine_steps ? s0 - sigma : ep + (s0 - sigma - ep) * static_cast<double>(k) / sine_steps;
    const double th = (s - ep) / R;
    out.samples.push_back({s, C, 0, 0, k == 0 ? 0.0 : R * std::sin(th), std::cos(th), -std::sin(th) / R, Segment::Splice});
  }
  run_window(R, ep, &out.samples);
  for (const auto& [s, y] : flat_states) {
    if (s <= s0 + sigma) continue;
    const double m = flattening(s, eps, tau, delta, b);
    out.samples.push_back(
        {s, C + y[2], y[3], m * ode.fpp(y[0]), r * ode.h(y[1]), r * ode.hp(y[0]), r * ode.hpp(y[0], y[1]), Segment::Flat});
  }
  const std::size_t flat_end = out.samples.size();
  for (const Sample& x : w.samples) {
    if (x.s <= b * (1 + 1e-12)) continue;
    Sample y = x;
    y.h *= r;
    y.hp *= r;
    y.hpp *= r;
    out.samples.push_back(y);
  }
  require_margins(out, 0, flat_end, true, "origin");
  return out;
}

Quotients quotients(const WarpProfile& w, std::size_t i) {
  const Sample& x = w.samples[i];
  if (w.splice.applied && x.segment == Segment::Splice && x.s <= w.splice.s0 - w.splice.sigma) {
    return {-1 / (w.splice.R * w.splice.R), 0};  // round sine, f' = 0
  }
  if (x.h == 0) {
    // core origin: limits of h''/h and f'h'/(fh) as s -> 0
    const WarpParams& p = w.params;
    const double c = 0.5 * p.alpha * p.lambda0 * p.lambda0;
    const double q = std::pow(x.f, -p.alpha - 2);
    return {-(p.alpha + 1) * c * q, c * q};
  }
  return {x.hpp / x.h, x.fp * x.hp / (x.f * x.h)};
}

Margins inequality_margins(const WarpProfile& w) {
  Margins m;
  const int n = w.params.n;
  const std::size_t count = w.samples.size();
  m.ineq1.resize(count);
  m.ineq2.resize(count);
  m.ineq3.resize(count);
  m.strict_end = count;
  for (std::size_t i = 0; i < count; ++i) {
    const Quotients q = quotients(w, i);
    const Ratios r{q.hpp_h, q.fphp_fh};
    m.ineq1[i] = ineq1(n, w.samples[i], r);
    m.ineq2[i] = ineq2(n, w.samples[i], r);
    m.ineq3[i] = ineq3(n, r);
    if (w.samples[i].segment == Segment::Tail && m.strict_end == count) m.strict_end = i;
  }
  m.min1 = *std::min_element(m.ineq1.begin(), m.ineq1.end());
  m.min2 = *std::min_element(m.ineq2.begin(), m.ineq2.end());
  m.min3 = *std::min_element(m.ineq3.begin(), m.ineq3.begin() + static_cast<long>(m.strict_end));
  m.tail_weighted3 = m.min3;
  for (std::size_t i = m.strict_end; i + 1 < count; ++i) {
    const Sample& x = w.samples[i];
    m.tail_weighted3 = std::min(m.tail_weighted3, -x.hpp / x.hp - (n - 1) * x.fp / x.f);
  }
  return m;
}

void export_profile(const WarpProfile& w, std::ostream& out) {
  out << "s,f,fp,fpp,h,hp,hpp,segment\n";
  char buf[512];
  for (const Sample& x : w.samples) {
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,%.17g,", x.s, x.f, x.fp, x.fpp, x.h, x.hp,
                  x.hpp);
    out << buf << to_string(x.segment) << "\n";
  }
}

void export_profile(const WarpProfile& w, const std::string& path) {
  std::ofstream file(path);
  if (!file) throw Error(ErrorKind::Io, "cannot open " + path);
  export_profile(w, file);
  if (!file) throw Error(ErrorKind::Io, "write failed for " + path);
}

WarpProfile build_profile(const WarpParams& p, double r) {
  WarpProfile w = integrate_core(p);
  w = cap_sine(w, p.lambda, p.cap_width);
  w = flatten_h_tail(w, p.tail_width);
  return smooth_origin(w, r, p.origin_eps);
}

}  // namespace twsusp
