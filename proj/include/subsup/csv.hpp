#pragma once

#include <cstdio>
#include <string>

namespace subsup {

// Shortest decimal form that round-trips binary64.
inline std::string fmt_g17(double x) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", x);
  return buf;
}

}  // namespace subsup
