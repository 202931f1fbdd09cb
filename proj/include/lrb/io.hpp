#pragma once

#include <cstdio>
#include <string>

namespace lrb {

// 17 significant digits, '.' decimal, locale-independent.
inline std::string format_sig17(double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace lrb
