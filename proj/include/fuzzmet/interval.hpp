#pragma once

#include <optional>
#include <string>
#include <vector>

#include "fuzzmet/ext_real.hpp"

namespace fuzz {

// One interval of the extended real line.  Infinite endpoints are always
// open; a degenerate interval (lo == hi) must be closed on both sides.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;
  bool lo_open = false;
  bool hi_open = false;

  // Validating factory; throws std::invalid_argument on an empty or
  // ill-formed description (lo > hi, NaN, closed infinite endpoint, ...).
  static Interval make(double lo, double hi, bool lo_open, bool hi_open);
  static Interval point(double x) { return make(x, x, false, false); }
  static Interval closed(double lo, double hi) {
    return make(lo, hi, false, false);
  }
  static Interval open(double lo, double hi) { return make(lo, hi, true, true); }

  bool contains(double x) const;
  bool bounded() const;
  bool is_closed() const;  // closed as a subset of the line
  bool operator==(const Interval&) const = default;
};

// A finite union of intervals in canonical form: sorted by lo, pairwise
// disjoint, and no two adjacent parts mergeable.  The empty union is a valid
// value; only the metric operations reject it.
class IntervalUnion {
 public:
  IntervalUnion() = default;
  explicit IntervalUnion(std::vector<Interval> parts);  // canonicalizes
  static IntervalUnion whole_line();
  static IntervalUnion points(const std::vector<double>& xs);

  const std::vector<Interval>& parts() const { return parts_; }
  bool empty() const { return parts_.empty(); }
  bool bounded() const;
  bool is_closed() const;
  bool contains(double x) const;

  IntervalUnion closure() const;
  IntervalUnion complement() const;

  bool operator==(const IntervalUnion&) const = default;

  std::string to_text() const;

 private:
  std::vector<Interval> parts_;
};

IntervalUnion union_of(const IntervalUnion& a, const IntervalUnion& b);
IntervalUnion intersection_of(const IntervalUnion& a, const IntervalUnion& b);
IntervalUnion difference_of(const IntervalUnion& a, const IntervalUnion& b);
bool subset_of(const IntervalUnion& a, const IntervalUnion& b);

// inf over y in U of |x - y| (distance to the closure; openness of endpoints
// never affects distances).  x may be +-inf, in which case the value is the
// limit along that direction: 0 if U is unbounded on that side, else +inf.
// Empty U is a domain error.
ExtReal point_to_union_distance(double x, const IntervalUnion& u);

// sup over x in A of point_to_union_distance(x, B), computed exactly by
// candidate enumeration: finite endpoints of A, endpoints and gap midpoints
// of B inside A, and the +-inf limits when A is unbounded (value +inf unless
// B is unbounded on the same side).  Empty input is a domain error.
ExtReal union_directed_hausdorff(const IntervalUnion& a,
                                 const IntervalUnion& b);

// Same value plus a witness location.  When the sup is a finite-valued limit
// toward +-inf (or +inf itself), `at` is empty and the corresponding flag is
// set; otherwise `at` holds a maximizing candidate (a point of closure(A)).
struct DirectedWitness {
  ExtReal value;
  std::optional<double> at;
  bool toward_neg_inf = false;
  bool toward_pos_inf = false;
};
DirectedWitness union_directed_hausdorff_witness(const IntervalUnion& a,
                                                 const IntervalUnion& b);

ExtReal union_hausdorff(const IntervalUnion& a, const IntervalUnion& b);

}  // namespace fuzz
