#pragma once

// Ricci curvature of the neck metric g_{f,h_r} and of the constant-phi bundle
// metric, positivity bounds, and the certification pipeline.

#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "twsusp/warpmetric.hpp"

namespace twsusp {

/// Curvature F of the circle-bundle connection on the neck, as worst-case
/// bounds. Trivial mode is the product connection A = dt (F = 0).
struct ConnectionModel {
  enum class Mode { Trivial, Bounded };
  Mode mode = Mode::Trivial;
  double sup_F = 0;       // bound on |F(u, v)| for unit frame vectors
  double sup_deltaF = 0;  // bound on |deltaF(u)|
  double support_lo = 0;  // F vanishes outside [support_lo, support_hi]
  double support_hi = std::numeric_limits<double>::infinity();

  static ConnectionModel trivial() { return {}; }
  static ConnectionModel bounded(double sup_F, double sup_deltaF, double lo, double hi);

  /// Throws Precondition on negative bounds or a support touching s = 0.
  void validate() const;
  bool active_at(double s) const;
};

struct RicciReport {
  // per sample, on the basis T, X/f (n-1 directions), d/ds
  std::vector<double> s;
  std::vector<double> tt, xx, ss;  // diagonal lower bounds
  std::vector<double> tx, ts, xs;  // mixed bounds
  std::vector<double> xy;          // between distinct sphere directions
  std::vector<double> lower;       // Gershgorin eigenvalue lower bound
  double margin = 0;               // min of lower on the strict region
  double tail_margin = 0;          // min of lower on the open tail
  double r = 1;
  std::size_t strict_end = 0;
  bool positive() const { return margin > 0 && tail_margin > 0; }
};

/// Ricci bounds of the neck with h_r = (r / w.r) h. In trivial mode the
/// diagonal entries are the warping inequalities and all mixed bounds are 0.
RicciReport ricci_neck(const WarpProfile& w, const ConnectionModel& c, double r);

struct BundleBound {
  double horizontal;  // ric_min - (e^{2 phi} / 2)(n - 1) sup_F^2
  double vertical;    // >= 0; the F-norm term is only bounded below by 0
};

/// Constant-phi metric on the circle bundle over a base with Ric >= ric_min,
/// harmonic curvature form (deltaF = 0).
BundleBound ricci_bundle(double ric_min, const ConnectionModel& c, double phi, int n);

struct PhiChoice {
  double phi;
  bool capped;  // safety left no admissible phi; phi is the floor
};

/// Largest phi with horizontal bound >= safety * ric_min. With sup_F = 0 every
/// phi works and `fallback` is returned.
PhiChoice choose_phi(double ric_min, const ConnectionModel& c, double safety, int n, double fallback = 0,
                     double floor = -20);

struct GluingReport {
  double resid_fprime = 0;  // |f'(s_l) - cos s0|
  double resid_cap = 0;     // |f(s_l)/N - sin s0|
  double resid_N = 0;       // |N - f(s_l)/sin s0|
  double h_slope_end = 0;   // |h'(s_l)|
  double h_curv_end = 0;    // |h''(s_l)|
  bool pass = false;
};

GluingReport verify_gluing(const WarpProfile& w, double s0, double tol = 1e-8);

struct RSearch {
  double r;
  RicciReport report;
  WarpProfile profile;
};

/// Largest r = 2^-k (k >= 0) whose report is positive with margin >=
/// target_margin, refined by bisection toward the failing neighbour to two more
/// digits. An r the builder rejects counts as failing. Throws Exhausted below
/// r_floor.
RSearch search_r(const std::function<WarpProfile(double)>& build, const ConnectionModel& c, double target_margin,
                 double r_floor = 1e-6);

struct CertifyOptions {
  double lambda0 = 0;  // <= 0 picks the midpoint default
  double alpha = 0;    // <= 0 picks the midpoint default
  double step = 1e-3;
  double cap_width = 0;
  double tail_width = 0;
  double origin_eps = 0;
  double s_budget = 1e4;
  double tol_ode = 1e-9;
  double tol_glue = 1e-8;
  double safety = 0.5;
  double target_margin = 0;
  double phi_fallback = 0;
  double phi_floor = -20;
  double r_floor = 1e-6;

  /// Warping parameters for lambda = cos s0 with these overrides applied.
  WarpParams warp_params(int n, double s0) const;
};

struct CertificationResult {
  int n = 0;
  double s0 = 0;
  WarpProfile profile;
  Margins margins;
  RicciReport ricci;
  BundleBound bundle{};
  PhiChoice phi_max{};
  GluingReport gluing;
  double r_cert = 0;  // from the neck search
  double r_glue = 0;  // largest r compatible with phi_max at the seam
  double r = 0;
  double phi = 0;
  bool pass = false;
  std::vector<std::string> notes;
};

/// lambda = cos s0, default warping parameters, profile construction, neck
/// Ricci search over r, phi choice and gluing check. Errors carry the stage.
CertificationResult certify(int n, double s0, const ConnectionModel& c, double ric_min,
                            const CertifyOptions& options = {});

}  // namespace twsusp
