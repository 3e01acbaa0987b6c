#pragma once

#include <cmath>
#include <limits>
#include <ostream>
#include <stdexcept>
#include <string>

namespace fuzz {

// Nonnegative extended real: a finite value >= 0 or +infinity.  Every
// distance-like quantity in the library is one of these, so +infinity
// propagates through sums, minima, maxima and comparisons without special
// cases at call sites.  NaN and negative inputs are rejected at construction;
// the arithmetic below can therefore never produce NaN (the only dangerous
// combination, inf - inf, is unrepresentable).
class ExtReal {
 public:
  ExtReal() = default;
  ExtReal(double v) : v_(v) {
    if (std::isnan(v) || v < 0.0)
      throw std::domain_error("ExtReal: value must be >= 0 (or +inf)");
  }

  static ExtReal infinity() {
    return ExtReal(std::numeric_limits<double>::infinity());
  }

  bool finite() const { return std::isfinite(v_); }
  double value() const { return v_; }

  friend bool operator==(ExtReal a, ExtReal b) { return a.v_ == b.v_; }
  friend bool operator!=(ExtReal a, ExtReal b) { return a.v_ != b.v_; }
  friend bool operator<(ExtReal a, ExtReal b) { return a.v_ < b.v_; }
  friend bool operator<=(ExtReal a, ExtReal b) { return a.v_ <= b.v_; }
  friend bool operator>(ExtReal a, ExtReal b) { return a.v_ > b.v_; }
  friend bool operator>=(ExtReal a, ExtReal b) { return a.v_ >= b.v_; }

  // Saturating add: inf + x = inf.
  friend ExtReal operator+(ExtReal a, ExtReal b) { return ExtReal(a.v_ + b.v_); }

 private:
  double v_ = 0.0;
};

inline ExtReal ext_min(ExtReal a, ExtReal b) { return a < b ? a : b; }
inline ExtReal ext_max(ExtReal a, ExtReal b) { return a < b ? b : a; }

// Shortest round-trip decimal for finite values, "+inf" otherwise.
std::string to_string(ExtReal x);
// Same formatting for plain doubles (used by serializers); accepts any sign.
std::string format_double(double v);

std::ostream& operator<<(std::ostream& os, ExtReal x);

}  // namespace fuzz
