#pragma once

#include <cstdio>
#include <string>

namespace kshare {

/// Shortest stable text form used by every CSV writer: 17 significant digits.
inline std::string format_real(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

}  // namespace kshare
