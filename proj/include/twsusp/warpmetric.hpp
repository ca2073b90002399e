#pragma once

// Warping functions f, h for the doubly warped neck metric
//   ds^2 + f(s)^2 ds_{n-1}^2 + h(s)^2 dt^2
// built from the ODE f'' = (a l0^2 / 2) f^{-a-1}, capped by a round sine near
// the far end and smoothed at the origin.

#include <iosfwd>
#include <string>
#include <vector>

namespace twsusp {

struct WarpParams {
  int n = 3;
  double lambda = 0.5;
  double lambda0 = 0.75;
  double alpha = 1.2;
  // widths <= 0 are chosen from the core length
  double cap_width = 0;
  double tail_width = 0;
  double origin_eps = 0;
  double step = 1e-3;  // RK4 step and sample spacing
  double s_budget = 1e4;
  double tol_ode = 1e-9;

  /// lambda0 and alpha at the midpoints of their admissible intervals.
  static WarpParams defaults(int n, double lambda);
  /// Throws Precondition unless n >= 3, lambda in (0,1), lambda0 in (lambda,1)
  /// and alpha in (n-2, (n-2)/lambda0^2), all strictly.
  void validate() const;
};

enum class Segment { Splice, Flat, Core, Cap, Tail };
std::string_view to_string(Segment s);

struct Sample {
  double s, f, fp, fpp, h, hp, hpp;
  Segment segment;
};

struct CoreInfo {
  double s_lambda = 0;        // first zero of f' - lambda on the core
  double max_residual = 0;    // max |f'^2 - l0^2 (1 - f^-a)|
  double f_at_s_lambda = 0;
};

struct CapInfo {
  bool applied = false;
  double start = 0;       // blend start, core slope lambda + kappa
  double width = 0;       // blend length
  double N = 0;
  double s_prime = 0;
  double sine_start = 0;  // blend end, f = N sin((s - s')/N) beyond
};

struct TailInfo {
  bool applied = false;
  double start = 0;
  double width = 0;
  double h_unflattened = 0;  // continued core h at the end
};

struct SpliceInfo {
  bool applied = false;
  double r = 1;
  double eps = 0;
  double s0 = 0;       // splice point
  double sigma = 0;    // half width of the kink smoothing window
  double R = 0;
  double eps_prime = 0;
  double flat_end = 0;  // f equals the core beyond this point
};

struct WarpProfile {
  WarpParams params;
  std::vector<Sample> samples;
  CoreInfo core;
  CapInfo cap;
  TailInfo tail;
  SpliceInfo splice;
  double s_lambda = 0;  // right endpoint
  double r = 1;         // h-scale applied

  double left() const { return samples.front().s; }
  const Sample& back() const { return samples.back(); }
};

/// RK4 from f(0) = 1, f'(0) = 0 to the first s with f'(s) = lambda, located
/// by bisection on the dense output. Throws NoStop past the s-budget.
WarpProfile integrate_core(const WarpParams& p);

/// Continues the core past s_lambda, blends f'' into the round sine over
/// `width` (<= 0 for automatic) and ends where f' = lambda again; the new end
/// becomes s_lambda. Throws MarginLost when an inequality fails on the cap.
WarpProfile cap_sine(const WarpProfile& w, double lambda, double width);

/// h' -> psi h' on the last `width` of the profile, psi a quintic cutoff.
/// Throws MarginLost when an inequality fails on the tail.
WarpProfile flatten_h_tail(const WarpProfile& w, double width);

/// Makes f constant near the origin, rescales h by r and splices
/// R sin((s - eps')/R) in front so the profile starts at eps' with h = 0,
/// h' = 1. Throws NoSolution when r h'(s0) >= 1, MarginLost on failure.
WarpProfile smooth_origin(const WarpProfile& w, double r, double eps);

/// Closed-form C^1 splice of R sin((s - eps')/R) onto a curve with the given
/// value and slope at s0: u = arccos(slope), R = value / sin u, s0 - eps' = R u.
struct SpliceSolution {
  double u;
  double R;
  double length;  // s0 - eps'
};
SpliceSolution solve_splice(double value, double slope);

/// Origin smoothing radius used when origin_eps <= 0.
double default_origin_eps(const WarpProfile& w);

/// Full pipeline: core, cap, tail and origin smoothing with scale r.
WarpProfile build_profile(const WarpParams& p, double r);

// ineq1 = -(n-1) f''/f - h''/h                       (d/ds direction)
// ineq2 = -f''/f + (n-2)(1 - f'^2)/f^2 - f'h'/(fh)  (sphere directions)
// ineq3 = -h''/h - (n-1) f'h'/(fh)                   (circle direction)
struct Margins {
  std::vector<double> ineq1, ineq2, ineq3;  // per sample
  double min1 = 0, min2 = 0;  // all samples
  double min3 = 0;            // strict region
  double tail_weighted3 = 0;  // min of -h''/h' - (n-1) f'/f on the open tail
  std::size_t strict_end = 0;  // samples [0, strict_end) form the strict region
};

/// The three warping inequalities at every sample. Singular quotients at
/// h = 0 use analytic limits. ineq3 vanishes at the flat end of h, so its
/// minimum is taken before the tail and the tail is checked in weighted form.
Margins inequality_margins(const WarpProfile& w);

/// Per-sample singular-safe quotients h''/h and f'h'/(fh).
struct Quotients {
  double hpp_h;
  double fphp_fh;
};
Quotients quotients(const WarpProfile& w, std::size_t i);

/// CSV with header s,f,fp,fpp,h,hp,hpp,segment and 17 significant digits.
void export_profile(const WarpProfile& w, std::ostream& out);
void export_profile(const WarpProfile& w, const std::string& path);

/// Quintic smoothstep 10x^3 - 15x^4 + 6x^5 on [0,1], clamped, and derivatives.
double smoothstep(double x);
double smoothstep_d1(double x);

}  // namespace twsusp
