#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include "zetamix/mixture_engine.hpp"

namespace zetamix::cli {

enum ExitCode : int {
  kOk = 0,
  kIdentityFailure = 1,
  kUsage = 2,
  kNonConvergence = 3,
};

/// Runs the command line. Data goes to `out`, diagnostics to `err`.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

/// Locale-independent text with 17 significant digits.
std::string format_number(double v);

struct VerifyConfig {
  VerificationGrid grid;
  QuadratureSpec spec;
  std::size_t threads = 0;
};

/// Parses the flat key = value config. Throws DomainError with the offending
/// line number on malformed input.
VerifyConfig parse_verify_config(std::string_view text);

std::string report_to_json(const VerificationReport& report);
std::string report_to_csv(const VerificationReport& report);

}  // namespace zetamix::cli
