#pragma once

#include <cstddef>
#include <string>
#include <variant>
#include <vector>

#include "fuzzmet/interval.hpp"
#include "fuzzmet/space.hpp"

namespace fuzz {

// Finite set of points in a finite-table or euclidean space, kept sorted and
// deduplicated so equality is structural.
struct PointSet {
  std::vector<Point> pts;

  PointSet() = default;
  explicit PointSet(std::vector<Point> points);

  bool empty() const { return pts.empty(); }
  bool contains(const Point& p) const;

  friend bool operator==(const PointSet&, const PointSet&) = default;
};

PointSet pointset_union(const PointSet& a, const PointSet& b);
PointSet pointset_intersection(const PointSet& a, const PointSet& b);
PointSet pointset_difference(const PointSet& a, const PointSet& b);
bool pointset_subset(const PointSet& a, const PointSet& b);

// A level cut: a finite point set (finite / euclidean spaces) or a canonical
// interval union (the real line).
using CutSet = std::variant<PointSet, IntervalUnion>;

bool cut_empty(const CutSet& c);
bool cut_contains(const CutSet& c, const Point& p);
bool cut_bounded(const CutSet& c);
bool cut_closed(const CutSet& c);
CutSet cut_closure(const CutSet& c);
bool cut_equal(const CutSet& a, const CutSet& b);
bool cut_subset(const CutSet& a, const CutSet& b);
CutSet cut_union(const CutSet& a, const CutSet& b);
CutSet cut_intersection(const CutSet& a, const CutSet& b);
std::size_t cut_count(const CutSet& c);  // points, or interval parts
std::string cut_to_text(const CutSet& c, const GroundSpace& space);

// Distance from a point of the ambient space to the closure of the cut.
ExtReal cut_point_distance(const GroundSpace& space, const Point& x,
                           const CutSet& c);

ExtReal cut_directed_hausdorff(const GroundSpace& space, const CutSet& a,
                               const CutSet& b);
ExtReal cut_hausdorff(const GroundSpace& space, const CutSet& a,
                      const CutSet& b);

}  // namespace fuzz
