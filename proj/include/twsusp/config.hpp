#pragma once

// Run configuration: `key = value` lines grouped under `[section]` headers,
// `#` or `;` comments. Unknown sections and keys are rejected.

#include <map>
#include <string>
#include <string_view>

#include "twsusp/riccicert.hpp"

namespace twsusp {

struct ConfigFile {
  std::map<std::string, std::map<std::string, std::string>> sections;
};

/// Throws Parse with the line number.
ConfigFile parse_config(std::string_view text);
/// Throws Io when the file cannot be read.
ConfigFile load_config(const std::string& path);

struct CertifyConfig {
  int n = 0;
  double s0 = 0;
  double ric_min = 1;
  ConnectionModel connection;
  CertifyOptions options;
  std::string out;  // empty: standard output
};

/// Sections: certify (n, s0, ric_min), warp (lambda0, alpha, step, cap_width,
/// tail_width, origin_eps, s_budget, tol_ode), connection (mode, sup_F,
/// sup_deltaF, support_lo, support_hi), tolerances (tol_glue, safety,
/// target_margin, phi_default, phi_floor, r_floor), output (path).
CertifyConfig certify_config(const ConfigFile& file);

}  // namespace twsusp
