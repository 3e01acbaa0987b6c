#include "fuzzmet/cut_set.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace fuzz {

namespace {

bool point_eq(const Point& a, const Point& b) {
  return !point_less(a, b) && !point_less(b, a);
}

[[noreturn]] void backend_mismatch() {
  throw std::invalid_argument("cut operation: operands use different backends");
}

}  // namespace

PointSet::PointSet(std::vector<Point> points) : pts(std::move(points)) {
  std::sort(pts.begin(), pts.end(), point_less);
  pts.erase(std::unique(pts.begin(), pts.end(), point_eq), pts.end());
}

bool PointSet::contains(const Point& p) const {
  return std::binary_search(pts.begin(), pts.end(), p, point_less);
}

PointSet pointset_union(const PointSet& a, const PointSet& b) {
  std::vector<Point> out = a.pts;
  out.insert(out.end(), b.pts.begin(), b.pts.end());
  return PointSet(std::move(out));
}

PointSet pointset_intersection(const PointSet& a, const PointSet& b) {
  std::vector<Point> out;
  std::set_intersection(a.pts.begin(), a.pts.end(), b.pts.begin(), b.pts.end(),
                        std::back_inserter(out), point_less);
  return PointSet(std::move(out));
}

PointSet pointset_difference(const PointSet& a, const PointSet& b) {
  std::vector<Point> out;
  std::set_difference(a.pts.begin(), a.pts.end(), b.pts.begin(), b.pts.end(),
                      std::back_inserter(out), point_less);
  return PointSet(std::move(out));
}

bool pointset_subset(const PointSet& a, const PointSet& b) {
  return std::includes(b.pts.begin(), b.pts.end(), a.pts.begin(), a.pts.end(),
                       point_less);
}

bool cut_empty(const CutSet& c) {
  return std::visit([](const auto& s) { return s.empty(); }, c);
}

bool cut_contains(const CutSet& c, const Point& p) {
  if (std::holds_alternative<PointSet>(c))
    return std::get<PointSet>(c).contains(p);
  if (!std::holds_alternative<double>(p))
    throw std::invalid_argument("cut_contains: point not on the line");
  return std::get<IntervalUnion>(c).contains(std::get<double>(p));
}

bool cut_bounded(const CutSet& c) {
  if (std::holds_alternative<PointSet>(c)) return true;
  return std::get<IntervalUnion>(c).bounded();
}

bool cut_closed(const CutSet& c) {
  if (std::holds_alternative<PointSet>(c)) return true;
  return std::get<IntervalUnion>(c).is_closed();
}

CutSet cut_closure(const CutSet& c) {
  if (std::holds_alternative<PointSet>(c)) return c;
  return std::get<IntervalUnion>(c).closure();
}

bool cut_equal(const CutSet& a, const CutSet& b) {
  if (a.index() != b.index()) backend_mismatch();
  return a == b;
}

bool cut_subset(const CutSet& a, const CutSet& b) {
  if (a.index() != b.index()) backend_mismatch();
  if (std::holds_alternative<PointSet>(a))
    return pointset_subset(std::get<PointSet>(a), std::get<PointSet>(b));
  return subset_of(std::get<IntervalUnion>(a), std::get<IntervalUnion>(b));
}

CutSet cut_union(const CutSet& a, const CutSet& b) {
  if (a.index() != b.index()) backend_mismatch();
  if (std::holds_alternative<PointSet>(a))
    return pointset_union(std::get<PointSet>(a), std::get<PointSet>(b));
  return union_of(std::get<IntervalUnion>(a), std::get<IntervalUnion>(b));
}

CutSet cut_intersection(const CutSet& a, const CutSet& b) {
  if (a.index() != b.index()) backend_mismatch();
  if (std::holds_alternative<PointSet>(a))
    return pointset_intersection(std::get<PointSet>(a), std::get<PointSet>(b));
  return intersection_of(std::get<IntervalUnion>(a),
                         std::get<IntervalUnion>(b));
}

std::size_t cut_count(const CutSet& c) {
  if (std::holds_alternative<PointSet>(c))
    return std::get<PointSet>(c).pts.size();
  return std::get<IntervalUnion>(c).parts().size();
}

std::string cut_to_text(const CutSet& c, const GroundSpace& space) {
  if (std::holds_alternative<IntervalUnion>(c))
    return std::get<IntervalUnion>(c).to_text();
  const PointSet& s = std::get<PointSet>(c);
  if (s.empty()) return "{}";
  std::ostringstream os;
  os << "{";
  for (std::size_t i = 0; i < s.pts.size(); ++i) {
    if (i) os << ", ";
    os << point_to_text(s.pts[i], space);
  }
  os << "}";
  return os.str();
}

ExtReal cut_point_distance(const GroundSpace& space, const Point& x,
                           const CutSet& c) {
  if (std::holds_alternative<IntervalUnion>(c)) {
    if (!std::holds_alternative<double>(x))
      throw std::invalid_argument("cut_point_distance: point not on the line");
    return point_to_union_distance(std::get<double>(x),
                                   std::get<IntervalUnion>(c));
  }
  const PointSet& s = std::get<PointSet>(c);
  if (s.empty()) throw std::domain_error("cut_point_distance: empty cut");
  double best = std::numeric_limits<double>::infinity();
  for (const Point& y : s.pts) best = std::min(best, space.distance(x, y));
  return ExtReal(best);
}

ExtReal cut_directed_hausdorff(const GroundSpace& space, const CutSet& a,
                               const CutSet& b) {
  if (a.index() != b.index()) backend_mismatch();
  if (cut_empty(a) || cut_empty(b))
    throw std::domain_error("directed Hausdorff: empty operand");
  if (std::holds_alternative<IntervalUnion>(a))
    return union_directed_hausdorff(std::get<IntervalUnion>(a),
                                    std::get<IntervalUnion>(b));
  ExtReal worst(0.0);
  for (const Point& x : std::get<PointSet>(a).pts)
    worst = ext_max(worst, cut_point_distance(space, x, b));
  return worst;
}

ExtReal cut_hausdorff(const GroundSpace& space, const CutSet& a,
                      const CutSet& b) {
  return ext_max(cut_directed_hausdorff(space, a, b),
                 cut_directed_hausdorff(space, b, a));
}

}  // namespace fuzz
