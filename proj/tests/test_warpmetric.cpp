#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>
#include <string>

#include "twsusp/error.hpp"
#include "twsusp/warpmetric.hpp"

using namespace twsusp;

namespace {

WarpParams golden() {
  WarpParams p = WarpParams::defaults(3, 0.5);
  p.lambda0 = 0.75;
  p.alpha = 0.5 * (1 + 1 / (0.75 * 0.75));
  return p;
}

double core_c(const WarpParams& p) { return 0.5 * p.alpha * p.lambda0 * p.lambda0; }

// Bisection for u in (0, pi/2) with cos u = slope; independent of the closed form.
double bisect_angle(double slope) {
  double lo = 0, hi = M_PI / 2;
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (std::cos(mid) > slope ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<Sample> parse_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::getline(in, line);
  std::vector<Sample> out;
  while (std::getline(in, line)) {
    std::istringstream row(line);
    std::string cell;
    double v[7];
    for (double& x : v) {
      std::getline(row, cell, ',');
      x = std::stod(cell);
    }
    std::getline(row, cell);
    Segment seg = Segment::Core;
    for (Segment s : {Segment::Splice, Segment::Flat, Segment::Core, Segment::Cap, Segment::Tail})
      if (to_string(s) == cell) seg = s;
    out.push_back({v[0], v[1], v[2], v[3], v[4], v[5], v[6], seg});
  }
  return out;
}

// Trapezoid consistency between consecutive samples catches value jumps at seams.
double max_c1_defect(const std::vector<Sample>& xs, bool use_h) {
  double worst = 0;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const Sample &a = xs[i], &b = xs[i + 1];
    const double ds = b.s - a.s;
    const double v0 = use_h ? a.h : a.f, v1 = use_h ? b.h : b.f;
    const double d0 = use_h ? a.hp : a.fp, d1 = use_h ? b.hp : b.fp;
    const double c0 = use_h ? a.hpp : a.fpp, c1 = use_h ? b.hpp : b.fpp;
    const double curv = std::max({std::abs(c0), std::abs(c1), 1.0});
    worst = std::max(worst, std::abs(v1 - v0 - 0.5 * ds * (d0 + d1)) / (ds * ds * curv));
    worst = std::max(worst, std::abs(d1 - d0 - 0.5 * ds * (c0 + c1)) / (ds * curv));
  }
  return worst;
}

}  // namespace

TEST_CASE("smoothstep is C2 with the quintic values") {
  CHECK(smoothstep(0) == 0);
  CHECK(smoothstep(1) == 1);
  CHECK(smoothstep(-1) == 0);
  CHECK(smoothstep(2) == 1);
  CHECK(smoothstep(0.5) == doctest::Approx(0.5));
  CHECK(smoothstep_d1(0) == 0);
  CHECK(smoothstep_d1(1) == 0);
  CHECK(smoothstep_d1(0.5) == doctest::Approx(30.0 / 16));
  const double h = 1e-6;
  for (double x : {0.1, 0.37, 0.8})
    CHECK(smoothstep_d1(x) == doctest::Approx((smoothstep(x + h) - smoothstep(x - h)) / (2 * h)).epsilon(1e-8));
}

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(WarpParams::defaults(3, 0.5).validate());
  WarpParams p = WarpParams::defaults(3, 0.5);
  CHECK(p.lambda0 == doctest::Approx(0.75));
  CHECK(p.alpha == doctest::Approx(0.5 * (1 + 1 / 0.5625)));
  p.alpha = 1.0;  // boundary n - 2 is excluded
  CHECK_THROWS_AS(p.validate(), Error);
  CHECK_THROWS_AS(WarpParams::defaults(2, 0.5).validate(), Error);
  CHECK_THROWS_AS(WarpParams::defaults(3, 1.0).validate(), Error);
  WarpParams q = WarpParams::defaults(4, 0.5);
  q.lambda0 = 0.4;
  CHECK_THROWS_AS(q.validate(), Error);
}

TEST_CASE("core: initial values, stop value and first integral") {
  const WarpParams p = golden();
  const WarpProfile w = integrate_core(p);
  CHECK(w.samples.front().s == 0);
  CHECK(w.samples.front().f == 1);
  CHECK(w.samples.front().fp == 0);
  CHECK(w.back().fp == doctest::Approx(p.lambda).epsilon(1e-12));
  const double expected = std::pow(1 - p.lambda * p.lambda / (p.lambda0 * p.lambda0), -1 / p.alpha);
  CHECK(std::abs(w.core.f_at_s_lambda - expected) < 1e-9);
  CHECK(expected == doctest::Approx(1.527).epsilon(1e-3));
  CHECK(w.core.max_residual < p.tol_ode);
  for (std::size_t i = 1; i < w.samples.size(); ++i) CHECK_MESSAGE(w.samples[i].fp > w.samples[i - 1].fp, i);
}

TEST_CASE("core: h identities") {
  const WarpParams p = golden();
  const WarpProfile w = integrate_core(p);
  const double c = core_c(p);
  double worst = 0;
  for (const Sample& x : w.samples) {
    worst = std::max(worst, std::abs(x.h - x.fp / c));
    worst = std::max(worst, std::abs(x.hp - std::pow(x.f, -p.alpha - 1)));
    const double first_integral = x.fp * x.fp - p.lambda0 * p.lambda0 * (1 - std::pow(x.f, -p.alpha));
    worst = std::max(worst, std::abs(first_integral));
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("core: RK4 residual drops at least 8x when the step halves") {
  WarpParams p = golden();
  p.step = 0.05;
  const double coarse = integrate_core(p).core.max_residual;
  p.step = 0.025;
  const double fine = integrate_core(p).core.max_residual;
  CHECK(coarse > 0);
  CHECK(coarse / fine >= 8);
}

TEST_CASE("core: slope approaches lambda0 for lambda near lambda0") {
  WarpParams p = WarpParams::defaults(3, 0.5);
  p.lambda0 = 0.75;
  p.lambda = 0.7495;
  p.alpha = 1.3;
  const WarpProfile w = integrate_core(p);
  CHECK(std::abs(w.back().fp - p.lambda0) < 1e-3);
}

TEST_CASE("core: budget exhaustion") {
  WarpParams p = golden();
  p.s_budget = 0.5;
  try {
    integrate_core(p);
    FAIL("expected NoStop");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoStop);
  }
}

TEST_CASE("cap: C1 match with the round sine") {
  const WarpParams p = golden();
  const WarpProfile core = integrate_core(p);
  const WarpProfile w = cap_sine(core, p.lambda, 0);
  REQUIRE(w.cap.applied);
  const Sample& end = w.back();
  const double N = w.cap.N;
  CHECK(std::abs(end.f - N * std::sin((end.s - w.cap.s_prime) / N)) < 1e-10);
  CHECK(std::abs(end.fp - std::cos((end.s - w.cap.s_prime) / N)) < 1e-10);
  CHECK(std::abs(end.fp - p.lambda) < 1e-10);
  CHECK(std::abs(N - end.f / std::sqrt(1 - p.lambda * p.lambda)) < 1e-10);
  CHECK(w.s_lambda == end.s);
  // samples before the blend are the core samples
  for (std::size_t i = 0; i + 1 < core.samples.size() && w.samples[i].s < w.cap.start; ++i) {
    CHECK(w.samples[i].f == core.samples[i].f);
    CHECK(w.samples[i].segment == Segment::Core);
  }
  for (const Sample& x : w.samples)
    if (x.s >= w.cap.sine_start) CHECK(std::abs(x.f - N * std::sin((x.s - w.cap.s_prime) / N)) < 1e-9);
  CHECK(max_c1_defect(w.samples, false) < 1);
}

TEST_CASE("cap: narrow blend keeps the core samples outside the cap") {
  const WarpParams p = golden();
  const WarpProfile core = integrate_core(p);
  const WarpProfile narrow = cap_sine(core, p.lambda, 0.02);
  std::size_t i = 0;
  for (; i + 1 < core.samples.size() && narrow.samples[i].s < narrow.cap.start; ++i)
    CHECK(narrow.samples[i].f == core.samples[i].f);
  CHECK(narrow.cap.start > core.s_lambda - 0.2);
}

TEST_CASE("tail: flat end and monotone ineq3") {
  const WarpParams p = golden();
  const WarpProfile capped = cap_sine(integrate_core(p), p.lambda, 0);
  const WarpProfile w = flatten_h_tail(capped, 0);
  REQUIRE(w.tail.applied);
  CHECK(w.back().hp == 0);
  CHECK(std::abs(w.back().hpp) < 1e-6);
  REQUIRE(w.samples.size() == capped.samples.size());
  for (std::size_t i = 0; i < w.samples.size(); ++i) {
    const Sample &t = w.samples[i], &o = capped.samples[i];
    if (t.segment != Segment::Tail || !(t.hp > 0)) continue;
    CHECK(-t.hpp / t.hp >= -o.hpp / o.hp - 1e-12);
  }
  CHECK(max_c1_defect(w.samples, true) < 1);
}

TEST_CASE("tail: narrower cutoff moves h(s_lambda) less") {
  const WarpParams p = golden();
  const WarpProfile capped = cap_sine(integrate_core(p), p.lambda, 0);
  const double span = capped.s_lambda - capped.cap.sine_start;
  double prev = INFINITY;
  for (double width : {0.4 * span, 0.2 * span, 0.1 * span}) {
    const WarpProfile w = flatten_h_tail(capped, width);
    const double gap = std::abs(w.back().h - w.tail.h_unflattened);
    CHECK(gap < prev);
    prev = gap;
  }
}

TEST_CASE("splice: closed form against a root finder") {
  for (double value : {0.05, 0.3, 1.7})
    for (double slope : {0.1, 0.5, 0.93}) {
      const SpliceSolution s = solve_splice(value, slope);
      CHECK(std::abs(s.u - bisect_angle(slope)) < 1e-12);
      CHECK(std::abs(s.R * std::sin(s.length / s.R) - value) < 1e-10);
      CHECK(std::abs(std::cos(s.length / s.R) - slope) < 1e-10);
    }
  CHECK(solve_splice(1.0, 1e-9).u == doctest::Approx(M_PI / 2));
}

TEST_CASE("origin: profile starts at h = 0 with unit slope") {
  const WarpParams p = golden();
  const WarpProfile w = build_profile(p, 0.5);
  REQUIRE(w.splice.applied);
  const Sample& first = w.samples.front();
  CHECK(first.s == doctest::Approx(w.splice.eps_prime).epsilon(1e-12));
  CHECK(std::abs(first.h) < 1e-15);
  CHECK(std::abs(first.hp - 1) < 1e-12);
  CHECK(first.fp == 0);
  CHECK(w.splice.eps_prime > 0);
  CHECK(max_c1_defect(w.samples, false) < 1);
  CHECK(max_c1_defect(w.samples, true) < 1);
  // beyond the flat region h is the scaled core h
  const WarpProfile core = integrate_core(p);
  const double c = core_c(p);
  for (const Sample& x : w.samples)
    if (x.segment == Segment::Core) CHECK(std::abs(x.h - 0.5 * x.fp / c) < 1e-12);
}

TEST_CASE("margins: closed forms on the core and the round splice") {
  const WarpParams p = golden();
  const WarpProfile w = build_profile(p, 0.5);
  const Margins m = inequality_margins(w);
  const double c = core_c(p);
  const int n = p.n;
  std::size_t core_count = 0, sine_count = 0;
  for (std::size_t i = 0; i < w.samples.size(); ++i) {
    const Sample& x = w.samples[i];
    if (x.segment == Segment::Core) {
      ++core_count;
      const double q = std::pow(x.f, -p.alpha - 2);
      const double tt = c * (p.alpha - (n - 2)) * q;
      CHECK(std::abs(m.ineq3[i] - tt) <= 1e-6 * tt);
      const double ss = c * q * (p.alpha + 1) - (n - 1) * c * std::pow(x.f, -p.alpha - 2);
      CHECK(std::abs(m.ineq1[i] - ss) <= 1e-8 * std::abs(ss) + 1e-15);
      CHECK(m.ineq2[i] >= (-p.alpha * p.lambda0 * p.lambda0 + (n - 2)) / (x.f * x.f) - 1e-12);
    }
    if (x.segment == Segment::Splice && x.s <= w.splice.s0 - w.splice.sigma) {
      ++sine_count;
      CHECK(m.ineq3[i] == doctest::Approx(1 / (w.splice.R * w.splice.R)));
    }
  }
  CHECK(core_count > 100);
  CHECK(sine_count > 5);
}

TEST_CASE("margins: positive across dimensions and lambdas") {
  for (int n = 3; n <= 8; ++n)
    for (double lambda : {0.2, 0.5, 0.8}) {
      CAPTURE(n);
      CAPTURE(lambda);
      const WarpProfile w = build_profile(WarpParams::defaults(n, lambda), 0.5);
      const Margins m = inequality_margins(w);
      CHECK(m.min1 > 0);
      CHECK(m.min2 > 0);
      CHECK(m.min3 > 0);
      CHECK(m.tail_weighted3 > 0);
      CHECK(m.ineq3.back() == doctest::Approx(0).epsilon(1e-12));
    }
}

TEST_CASE("margins: independent of the h scale") {
  const WarpParams p = golden();
  const WarpProfile w = build_profile(p, 0.5);
  WarpProfile scaled = w;
  for (Sample& x : scaled.samples) {
    x.h *= 0.25;
    x.hp *= 0.25;
    x.hpp *= 0.25;
  }
  const Margins a = inequality_margins(w), b = inequality_margins(scaled);
  for (std::size_t i = 0; i < a.ineq1.size(); i += 97) {
    CHECK(a.ineq1[i] == doctest::Approx(b.ineq1[i]));
    CHECK(a.ineq3[i] == doctest::Approx(b.ineq3[i]));
  }
}

TEST_CASE("export: header, row count and exact round trip") {
  const WarpProfile w = build_profile(golden(), 0.5);
  std::ostringstream out;
  export_profile(w, out);
  const std::string text = out.str();
  CHECK(text.substr(0, text.find('\n')) == "s,f,fp,fpp,h,hp,hpp,segment");
  const std::vector<Sample> back = parse_csv(text);
  REQUIRE(back.size() == w.samples.size());
  for (std::size_t i = 0; i < back.size(); ++i) {
    CHECK(back[i].s == w.samples[i].s);
    CHECK(back[i].f == w.samples[i].f);
    CHECK(back[i].hpp == w.samples[i].hpp);
    CHECK(back[i].segment == w.samples[i].segment);
  }
  CHECK_THROWS_AS(export_profile(w, std::string("/nonexistent-dir/x.csv")), Error);
}
