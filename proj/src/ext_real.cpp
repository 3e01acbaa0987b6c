#include "fuzzmet/ext_real.hpp"

#include <charconv>

namespace fuzz {

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "+inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string to_string(ExtReal x) { return format_double(x.value()); }

std::ostream& operator<<(std::ostream& os, ExtReal x) {
  return os << to_string(x);
}

}  // namespace fuzz
