#pragma once

// Command-line front end shared by the twsusp tool and the tests.

#include <iosfwd>
#include <string>
#include <vector>

#include "twsusp/error.hpp"
#include "twsusp/orbitgon.hpp"

namespace twsusp {

/// 0 success or pass, 1 computed failure, 2 usage or parse error, 3 unsupported.
int exit_code(ErrorKind kind);

/// Labels as `(1,0) (0,1) (1,1)` or `1,0; 0,1; 1,1`. n defaults to the label
/// length plus 2.
GonLabelling parse_gon(std::string_view text, long n = 0);

/// `args` excludes the program name.
int run_cli(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err);

}  // namespace twsusp
