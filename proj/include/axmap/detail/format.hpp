#pragma once

#include <cstdio>
#include <string>

namespace axmap::detail {

// %.17g round-trips doubles exactly through text.
inline std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

// Fixed decimals for reports.
inline std::string fmt_fixed(double v, int decimals) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", decimals, v);
  return buf;
}

}  // namespace axmap::detail
