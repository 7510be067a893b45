#pragma once

#include <cstdio>
#include <string>

namespace zetamix::detail {

/// Short %g rendering for diagnostics.
inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.6g", v);
  return buf;
}

/// Round-trip rendering, for values whose last digits matter.
inline std::string fmt_full(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace zetamix::detail
