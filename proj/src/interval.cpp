#include "fuzzmet/interval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace fuzz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

}  // namespace

Interval Interval::make(double lo, double hi, bool lo_open, bool hi_open) {
  if (std::isnan(lo) || std::isnan(hi))
    throw std::invalid_argument("interval: NaN endpoint");
  if (std::isinf(lo) && !lo_open)
    throw std::invalid_argument("interval: infinite endpoints must be open");
  if (std::isinf(hi) && !hi_open)
    throw std::invalid_argument("interval: infinite endpoints must be open");
  if (lo > hi) throw std::invalid_argument("interval: lo > hi");
  if (lo == hi && (lo_open || hi_open))
    throw std::invalid_argument(
        "interval: degenerate interval must be closed on both sides");
  Interval iv;
  iv.lo = lo;
  iv.hi = hi;
  iv.lo_open = lo_open;
  iv.hi_open = hi_open;
  return iv;
}

bool Interval::contains(double x) const {
  if (x < lo || x > hi) return false;
  if (x == lo && lo_open) return false;
  if (x == hi && hi_open) return false;
  return true;
}

bool Interval::bounded() const { return std::isfinite(lo) && std::isfinite(hi); }

bool Interval::is_closed() const {
  bool left_ok = std::isinf(lo) || !lo_open;
  bool right_ok = std::isinf(hi) || !hi_open;
  return left_ok && right_ok;
}

IntervalUnion::IntervalUnion(std::vector<Interval> parts) {
  if (parts.empty()) return;
  // Sort by lo; at equal lo a closed endpoint reaches further left than an
  // open one.  The merge pass below extends right ends, so no further
  // tie-breaking is needed.
  std::sort(parts.begin(), parts.end(),
            [](const Interval& a, const Interval& b) {
              if (a.lo != b.lo) return a.lo < b.lo;
              if (a.lo_open != b.lo_open) return !a.lo_open;
              return a.hi < b.hi;
            });
  parts_.push_back(parts.front());
  for (std::size_t i = 1; i < parts.size(); ++i) {
    Interval& cur = parts_.back();
    const Interval& nxt = parts[i];
    bool mergeable =
        nxt.lo < cur.hi || (nxt.lo == cur.hi && (!nxt.lo_open || !cur.hi_open));
    if (!mergeable) {
      parts_.push_back(nxt);
      continue;
    }
    if (nxt.hi > cur.hi || (nxt.hi == cur.hi && cur.hi_open && !nxt.hi_open)) {
      cur.hi = nxt.hi;
      cur.hi_open = nxt.hi_open;
    }
  }
}

IntervalUnion IntervalUnion::whole_line() {
  return IntervalUnion({Interval::make(-kInf, kInf, true, true)});
}

IntervalUnion IntervalUnion::points(const std::vector<double>& xs) {
  std::vector<Interval> parts;
  parts.reserve(xs.size());
  for (double x : xs) parts.push_back(Interval::point(x));
  return IntervalUnion(std::move(parts));
}

bool IntervalUnion::bounded() const {
  return parts_.empty() || (std::isfinite(parts_.front().lo) &&
                            std::isfinite(parts_.back().hi));
}

bool IntervalUnion::is_closed() const {
  for (const Interval& p : parts_)
    if (!p.is_closed()) return false;
  return true;
}

bool IntervalUnion::contains(double x) const {
  for (const Interval& p : parts_) {
    if (x < p.lo) return false;
    if (p.contains(x)) return true;
  }
  return false;
}

IntervalUnion IntervalUnion::closure() const {
  std::vector<Interval> parts;
  parts.reserve(parts_.size());
  for (const Interval& p : parts_)
    parts.push_back(
        Interval::make(p.lo, p.hi, std::isinf(p.lo), std::isinf(p.hi)));
  return IntervalUnion(std::move(parts));  // re-canonicalize: gaps may close
}

IntervalUnion IntervalUnion::complement() const {
  std::vector<Interval> parts;
  double lo = -kInf;
  bool lo_open = true;  // -inf is always open
  for (const Interval& p : parts_) {
    bool hi_open = !p.lo_open;  // the gap keeps p.lo iff p excludes it
    if (lo < p.lo)
      parts.push_back(Interval::make(lo, p.lo, lo_open, hi_open));
    else if (lo == p.lo && !lo_open && !hi_open)
      parts.push_back(Interval::point(lo));
    lo = p.hi;
    lo_open = !p.hi_open;
  }
  if (lo < kInf) parts.push_back(Interval::make(lo, kInf, lo_open, true));
  return IntervalUnion(std::move(parts));
}

IntervalUnion union_of(const IntervalUnion& a, const IntervalUnion& b) {
  std::vector<Interval> parts = a.parts();
  parts.insert(parts.end(), b.parts().begin(), b.parts().end());
  return IntervalUnion(std::move(parts));
}

IntervalUnion intersection_of(const IntervalUnion& a, const IntervalUnion& b) {
  return union_of(a.complement(), b.complement()).complement();
}

IntervalUnion difference_of(const IntervalUnion& a, const IntervalUnion& b) {
  return intersection_of(a, b.complement());
}

bool subset_of(const IntervalUnion& a, const IntervalUnion& b) {
  return difference_of(a, b).empty();
}

ExtReal point_to_union_distance(double x, const IntervalUnion& u) {
  if (u.empty())
    throw std::domain_error("point_to_union_distance: empty union");
  if (std::isinf(x)) {
    // Limit along the infinite direction.
    if (x < 0)
      return std::isinf(u.parts().front().lo) ? ExtReal(0.0)
                                              : ExtReal::infinity();
    return std::isinf(u.parts().back().hi) ? ExtReal(0.0)
                                           : ExtReal::infinity();
  }
  double best = kInf;
  for (const Interval& p : u.parts()) {
    double d;
    if (x < p.lo)
      d = p.lo - x;
    else if (x > p.hi)
      d = x - p.hi;
    else
      d = 0.0;
    best = std::min(best, d);
    if (best == 0.0) break;
  }
  return ExtReal(best);
}

DirectedWitness union_directed_hausdorff_witness(const IntervalUnion& a,
                                                 const IntervalUnion& b) {
  if (a.empty() || b.empty())
    throw std::domain_error("directed Hausdorff: empty operand");
  DirectedWitness best{ExtReal(0.0), std::nullopt, false, false};
  bool first = true;
  auto push = [&](ExtReal v, std::optional<double> at, bool neg, bool pos) {
    bool better = first || v > best.value ||
                  (v == best.value && at.has_value() && !best.at.has_value());
    if (better) {
      best = DirectedWitness{v, at, neg, pos};
      first = false;
    }
  };

  // The distance-to-B function is piecewise linear with slopes in {-1,0,+1};
  // its local peaks sit at B's gap midpoints, so the sup over a part of A is
  // attained at the part's endpoints, at one of those marks, or in the limit
  // toward an infinite side.
  std::vector<double> b_marks;
  for (const Interval& q : b.parts()) {
    if (std::isfinite(q.lo)) b_marks.push_back(q.lo);
    if (std::isfinite(q.hi)) b_marks.push_back(q.hi);
  }
  for (std::size_t i = 0; i + 1 < b.parts().size(); ++i) {
    double l = b.parts()[i].hi, r = b.parts()[i + 1].lo;
    if (std::isfinite(l) && std::isfinite(r)) b_marks.push_back((l + r) / 2.0);
  }

  for (const Interval& p : a.parts()) {
    if (std::isinf(p.lo))
      push(std::isinf(b.parts().front().lo) ? ExtReal(0.0)
                                            : ExtReal::infinity(),
           std::nullopt, true, false);
    else
      push(point_to_union_distance(p.lo, b), p.lo, false, false);
    if (std::isinf(p.hi))
      push(std::isinf(b.parts().back().hi) ? ExtReal(0.0)
                                           : ExtReal::infinity(),
           std::nullopt, false, true);
    else
      push(point_to_union_distance(p.hi, b), p.hi, false, false);
    for (double m : b_marks)
      if (m >= p.lo && m <= p.hi)
        push(point_to_union_distance(m, b), m, false, false);
  }
  return best;
}

ExtReal union_directed_hausdorff(const IntervalUnion& a,
                                 const IntervalUnion& b) {
  return union_directed_hausdorff_witness(a, b).value;
}

ExtReal union_hausdorff(const IntervalUnion& a, const IntervalUnion& b) {
  return ext_max(union_directed_hausdorff(a, b),
                 union_directed_hausdorff(b, a));
}

std::string IntervalUnion::to_text() const {
  if (parts_.empty()) return "{}";
  std::ostringstream os;
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    const Interval& p = parts_[i];
    if (i) os << " u ";
    if (p.lo == p.hi) {
      os << "{" << format_double(p.lo) << "}";
      continue;
    }
    os << (p.lo_open ? "(" : "[") << format_double(p.lo) << ","
       << format_double(p.hi) << (p.hi_open ? ")" : "]");
  }
  return os.str();
}

}  // namespace fuzz
