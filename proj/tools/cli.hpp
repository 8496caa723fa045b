#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "sfock/fock_core.hpp"

namespace sfock::cli {

enum ExitCode : int {
  kSuccess = 0,
  kVerifyFailed = 1,
  kConfigError = 2,
  kTruncation = 3,
};

/// Runs `stretched-fock <command> [flags]`; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// "re,im" -> complex. Throws DomainError on malformed input.
Complex parse_complex(std::string_view text);

/// "r,theta" -> r e^{i theta}.
Complex parse_polar(std::string_view text);

/// Either a comma list "0.5,1" or an inclusive linear range "a:b:n".
std::vector<double> parse_range(std::string_view text);

/// %.17g: 17 significant digits, enough to round-trip any double.
std::string format_number(double x);

/// RFC 4180 quoting: wraps fields holding a comma, quote or line break.
std::string csv_field(std::string_view text);

}  // namespace sfock::cli
