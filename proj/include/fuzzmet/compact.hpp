#pragma once

#include <string>
#include <vector>

#include "fuzzmet/metrics.hpp"

namespace fuzz {

// Finite eps-net for one level set, or a certified reason why none exists.
// `coverage` is the exact worst-case distance from the set to the centers,
// so a successful certificate can be re-checked independently.
struct NetCertificate {
  double alpha = 0.0;
  double eps = 0.0;
  bool certified = false;
  std::vector<Point> centers;
  ExtReal coverage{0.0};
  std::string set_text;
  std::string note;  // failure reason when not certified
};

// Union of the alpha-cuts of the members (level 0 includes ghost mass).
CutSet union_at_level(const std::vector<FuzzyElem>& members, double alpha);

// Greedy farthest-point net: add the worst-covered point as a center until
// everything sits within eps of some center.  Unbounded interval input
// yields a certified negative rather than an error.
NetCertificate greedy_eps_net(const SpacePtr& space, const CutSet& set,
                              double eps);

// Independent coverage check (plain interval/ball arithmetic, no shared
// code with the net construction): does every point of `set` lie within
// eps of some center?
bool verify_net_coverage(const SpacePtr& space, const CutSet& set,
                         const std::vector<Point>& centers, double eps);

struct TotalBoundednessReport {
  double eps = 0.0;
  std::vector<NetCertificate> certificates;  // one per requested level
  bool all_certified = true;
  std::string verdict;
};

// Certificates for the cut unions on a level grid.  Pass positive levels to
// probe endograph-style compactness, level 0 for sendograph-style; the
// verdict is explicit about being a finite-prefix, fixed-resolution claim.
TotalBoundednessReport total_boundedness_report(
    const std::vector<FuzzyElem>& members, const std::vector<double>& levels,
    double eps);

// Replace everything below level eps by the full level-zero set: the result
// u_eps has [u_eps]_a = <v>_a for a > eps and <v>_0 for a <= eps.  The
// sendograph distance moves by at most eps; that bound is asserted on every
// call before the result is returned.
StepFuzzySet flatten_below(const SendoElement& v, double eps);

// Freeze everything below level eps at the level-eps cut: the result u^eps
// has [u^eps]_a = [u]_a for a > eps and [u]_eps for a <= eps, hence bounded
// support whenever [u]_eps is bounded.  The endograph distance moves by at
// most eps (asserted).  An unbounded [u]_eps is a domain error.
StepFuzzySet truncate_above(const StepFuzzySet& u, double eps);

// Snap v onto the finite grid points: level by level keep the grid points
// within eps of the cut (ties included).  Requires the standing hypothesis
// H(grid, [v]_0) < eps, which makes every projected cut nonempty; the
// supremum metric between v and the projection is at most eps (asserted).
StepFuzzySet project_to_grid(const StepFuzzySet& v, const CutSet& grid,
                             double eps);

// Pairwise distances inside a finite collection under one metric, flagging
// zero-distance pairs.  The endograph metric is only a pseudometric once
// ghost mass is allowed, so distinct elements can collide.
struct ClosednessReport {
  std::string metric;  // hend | hsend | dinf | dp
  double p = 2.0;
  std::vector<std::vector<ExtReal>> matrix;
  struct Collision {
    std::size_t i = 0, j = 0;  // i < j, distance 0
    bool identical = false;    // same representation, not just distance 0
  };
  std::vector<Collision> collisions;
};

ClosednessReport closedness_within(const std::vector<FuzzyElem>& members,
                                   const std::string& metric, double p = 2.0);

}  // namespace fuzz
