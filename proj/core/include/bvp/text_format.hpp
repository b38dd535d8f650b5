#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace bvp {

// Locale-independent %.12g-style rendering (12 significant digits, dot
// decimal separator). Infinities print as "inf"/"-inf".
inline std::string fmt_g12(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[48];
  auto [p, ec] = std::to_chars(buf, buf + sizeof(buf), v,
                               std::chars_format::general, 12);
  return std::string(buf, p);
}

}  // namespace bvp
