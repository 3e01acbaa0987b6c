#pragma once

// Shared generators and independent oracles for the test suite.  The oracles
// deliberately avoid the library's closed-form shortcuts: they enumerate
// product grids and dense point grids and take honest maxima, so agreement
// with the exact evaluators is meaningful evidence.

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "fuzzmet/compact.hpp"
#include "fuzzmet/document.hpp"
#include "fuzzmet/sequence.hpp"

namespace testsupport {

using namespace fuzz;
using Rng = std::mt19937;

inline double uni(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

inline int uni_int(Rng& rng, int lo, int hi) {
  return std::uniform_int_distribution<int>(lo, hi)(rng);
}

inline bool coin(Rng& rng, double p = 0.5) { return uni(rng, 0.0, 1.0) < p; }

inline bool approx(const ExtReal& got, double want, double tol) {
  return got.finite() && std::fabs(got.value() - want) <= tol;
}

// --------------------------------------------------------------- spaces

// Random finite metric space: random positive symmetric entries pushed
// through an all-pairs shortest-path closure, which enforces the triangle
// inequality without destroying symmetry or positivity.  Entries are
// quarter-integers so every sum is exact in binary and the library's exact
// triangle check cannot trip over rounding.
inline SpacePtr random_finite_space(Rng& rng, int max_pts = 6) {
  int n = uni_int(rng, 2, max_pts);
  std::vector<std::vector<double>> t(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      t[i][j] = t[j][i] = uni_int(rng, 1, 12) * 0.25;
  for (int k = 0; k < n; ++k)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        if (i != j) t[i][j] = std::min(t[i][j], t[i][k] + t[k][j]);
  std::vector<std::string> labels;
  labels.reserve(n);
  for (int i = 0; i < n; ++i) labels.push_back("p" + std::to_string(i));
  return GroundSpace::finite(std::move(labels), std::move(t));
}

inline std::vector<Point> finite_carrier(const GroundSpace& sp) {
  std::vector<Point> pts;
  for (int i = 0; i < sp.size(); ++i) pts.emplace_back(i);
  return pts;
}

inline std::vector<Point> random_cloud(Rng& rng, int n, double lo = 0.0,
                                       double hi = 3.0) {
  std::vector<Point> pts;
  for (int i = 0; i < n; ++i)
    pts.emplace_back(std::vector<double>{uni(rng, lo, hi), uni(rng, lo, hi)});
  return pts;
}

inline CutSet point_cut(const SpacePtr& sp, const Point& x) {
  if (sp->kind() == SpaceKind::line)
    return IntervalUnion::points({std::get<double>(x)});
  return CutSet(PointSet({x}));
}

inline StepFuzzySet singleton(const SpacePtr& sp, const Point& x) {
  return StepFuzzySet(sp, {1.0}, {point_cut(sp, x)});
}

// ------------------------------------------------------------- fuzzy sets

// k strictly ascending thresholds from a fixed lattice, last one 1.
inline std::vector<double> random_thresholds(Rng& rng, int k) {
  std::vector<double> lattice;
  for (int i = 1; i < 40; ++i) lattice.push_back(i / 40.0);
  std::shuffle(lattice.begin(), lattice.end(), rng);
  std::vector<double> ts(lattice.begin(), lattice.begin() + (k - 1));
  std::sort(ts.begin(), ts.end());
  ts.push_back(1.0);
  return ts;
}

inline StepFuzzySet random_point_step(Rng& rng, const SpacePtr& sp,
                                      std::vector<Point> pool,
                                      int max_levels = 4) {
  std::shuffle(pool.begin(), pool.end(), rng);
  int k = uni_int(rng, 1, max_levels);
  std::vector<int> sizes(k);
  sizes[0] = uni_int(rng, 1, static_cast<int>(pool.size()));
  for (int i = 1; i < k; ++i) sizes[i] = uni_int(rng, 1, sizes[i - 1]);
  std::vector<CutSet> cuts;
  cuts.reserve(k);
  for (int i = 0; i < k; ++i)
    cuts.emplace_back(
        PointSet(std::vector<Point>(pool.begin(), pool.begin() + sizes[i])));
  return StepFuzzySet(sp, random_thresholds(rng, k), std::move(cuts));
}

inline IntervalUnion random_closed_union(Rng& rng, double lo, double hi,
                                         int max_parts) {
  int parts = uni_int(rng, 1, max_parts);
  std::vector<Interval> iv;
  for (int i = 0; i < parts; ++i) {
    double a = uni(rng, lo, hi);
    double b = std::min(hi, a + uni(rng, 0.0, (hi - lo) / 3.0));
    iv.push_back(Interval::closed(a, b));
  }
  return IntervalUnion(std::move(iv));
}

// Nested closed interval cuts built top-down: each lower level unions in
// more mass, so nesting holds by construction.
inline StepFuzzySet random_line_step(Rng& rng, const SpacePtr& sp,
                                     double lo = 0.0, double hi = 2.0,
                                     int max_levels = 4) {
  int k = uni_int(rng, 1, max_levels);
  std::vector<CutSet> cuts(k, CutSet(IntervalUnion()));
  IntervalUnion cur = random_closed_union(rng, lo, hi, 2);
  cuts[k - 1] = cur;
  for (int i = k - 2; i >= 0; --i) {
    cur = union_of(cur, random_closed_union(rng, lo, hi, 2));
    cuts[i] = cur;
  }
  return StepFuzzySet(sp, random_thresholds(rng, k), std::move(cuts));
}

struct PairCase {
  SpacePtr space;
  FuzzyElem u, v;
};

// backend: 0 finite, 1 euclidean, 2 line.  Sendo wrappers (possibly with
// ghost mass) are mixed in so every metric code path sees them.
inline PairCase random_pair(Rng& rng, int backend, double ghost_prob = 0.3) {
  auto wrap = [&](StepFuzzySet base, CutSet ghost) -> FuzzyElem {
    if (coin(rng, ghost_prob))
      return SendoElement(std::move(base), std::move(ghost));
    return base;
  };
  if (backend == 0) {
    SpacePtr sp = random_finite_space(rng);
    auto pool = finite_carrier(*sp);
    auto ghost = [&]() -> CutSet {
      std::vector<Point> g;
      for (const Point& p : pool)
        if (coin(rng, 0.3)) g.push_back(p);
      return CutSet(PointSet(std::move(g)));
    };
    FuzzyElem u = wrap(random_point_step(rng, sp, pool), ghost());
    FuzzyElem v = wrap(random_point_step(rng, sp, pool), ghost());
    return PairCase{sp, std::move(u), std::move(v)};
  }
  if (backend == 1) {
    SpacePtr sp = GroundSpace::euclidean(2);
    auto ghost = [&]() -> CutSet {
      return CutSet(PointSet(coin(rng) ? random_cloud(rng, uni_int(rng, 1, 3))
                                       : std::vector<Point>{}));
    };
    FuzzyElem u =
        wrap(random_point_step(rng, sp, random_cloud(rng, uni_int(rng, 2, 8))),
             ghost());
    FuzzyElem v =
        wrap(random_point_step(rng, sp, random_cloud(rng, uni_int(rng, 2, 8))),
             ghost());
    return PairCase{sp, std::move(u), std::move(v)};
  }
  SpacePtr sp = GroundSpace::line();
  auto ghost = [&]() -> CutSet {
    return CutSet(coin(rng) ? random_closed_union(rng, 0.0, 2.0, 2)
                            : IntervalUnion());
  };
  FuzzyElem u = wrap(random_line_step(rng, sp), ghost());
  FuzzyElem v = wrap(random_line_step(rng, sp), ghost());
  return PairCase{sp, std::move(u), std::move(v)};
}

// ------------------------------------------------------ brute-force oracles

inline double membership_of(const FuzzyElem& e, const Point& x) {
  if (const auto* u = std::get_if<StepFuzzySet>(&e)) return u->membership(x);
  return std::get<SendoElement>(e).base().membership(x);
}

struct GraphSamples {
  std::vector<Point> xs;
  std::vector<double> height;
};

inline std::vector<double> line_samples(const IntervalUnion& u, double pitch) {
  std::vector<double> xs;
  for (const Interval& p : u.parts()) {
    if (!std::isfinite(p.lo) || !std::isfinite(p.hi))
      throw std::domain_error("oracle needs bounded sets");
    for (double x = p.lo; x < p.hi; x += pitch) xs.push_back(x);
    xs.push_back(p.hi);
  }
  return xs;
}

inline GraphSamples graph_samples(const FuzzyElem& e, double pitch) {
  GraphSamples g;
  CutSet zero = elem_cut(e, 0.0);
  if (elem_space(e)->kind() == SpaceKind::line) {
    for (double x : line_samples(std::get<IntervalUnion>(zero), pitch)) {
      g.xs.emplace_back(x);
      g.height.push_back(membership_of(e, Point(x)));
    }
  } else {
    for (const Point& x : std::get<PointSet>(zero).pts) {
      g.xs.push_back(x);
      g.height.push_back(membership_of(e, x));
    }
  }
  return g;
}

// Directed sendograph (or, with cap_end, endograph) distance by product-grid
// enumeration: graph points (x, t) of u on the height grid against graph
// points (y, s) of v.  For fixed t the best v-graph point either has
// v(y) >= t (cost d) or v(y) < t (cost d + t - v(y)); sorting v's samples by
// height once turns the scan into two running minima.  The height maximum is
// taken over the grid, never assumed to sit at t = u(x).
inline double directed_graph_oracle(const FuzzyElem& u, const FuzzyElem& v,
                                    double pitch, bool cap_end) {
  const GroundSpace& sp = *elem_space(u);
  GraphSamples gu = graph_samples(u, pitch);
  GraphSamples gv = graph_samples(v, pitch);
  std::size_t m = gv.xs.size();
  std::vector<std::size_t> order(m);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return gv.height[a] < gv.height[b];
  });
  std::vector<double> h(m), d(m), suffix_d(m + 1), prefix_shift(m + 1);
  for (std::size_t j = 0; j < m; ++j) h[j] = gv.height[order[j]];
  const double inf = std::numeric_limits<double>::infinity();
  double best = 0.0;
  for (std::size_t i = 0; i < gu.xs.size(); ++i) {
    for (std::size_t j = 0; j < m; ++j)
      d[j] = sp.distance(gu.xs[i], gv.xs[order[j]]);
    suffix_d[m] = inf;
    for (std::size_t j = m; j-- > 0;)
      suffix_d[j] = std::min(suffix_d[j + 1], d[j]);
    prefix_shift[0] = inf;
    for (std::size_t j = 0; j < m; ++j)
      prefix_shift[j + 1] = std::min(prefix_shift[j], d[j] - h[j]);
    double hu = gu.height[i];
    std::size_t split = 0;  // first j with h[j] >= t, advanced as t grows
    int steps = static_cast<int>(std::floor(hu / pitch));
    for (int k = 0; k <= steps + 1; ++k) {
      double t = k <= steps ? k * pitch : hu;
      while (split < m && h[split] < t) ++split;
      double inner = std::min(suffix_d[split], t + prefix_shift[split]);
      if (cap_end) inner = std::min(inner, t);
      best = std::max(best, inner);
    }
  }
  return best;
}

// Same quantity by a pure triple loop; only affordable on tiny instances,
// used to validate the sweep oracle itself.
inline double directed_graph_naive(const FuzzyElem& u, const FuzzyElem& v,
                                   double pitch, bool cap_end) {
  const GroundSpace& sp = *elem_space(u);
  GraphSamples gu = graph_samples(u, pitch);
  GraphSamples gv = graph_samples(v, pitch);
  double best = 0.0;
  for (std::size_t i = 0; i < gu.xs.size(); ++i) {
    int steps = static_cast<int>(std::floor(gu.height[i] / pitch));
    for (int k = 0; k <= steps + 1; ++k) {
      double t = k <= steps ? k * pitch : gu.height[i];
      double inner = std::numeric_limits<double>::infinity();
      for (std::size_t j = 0; j < gv.xs.size(); ++j) {
        int vsteps = static_cast<int>(std::floor(gv.height[j] / pitch));
        for (int l = 0; l <= vsteps + 1; ++l) {
          double s = l <= vsteps ? l * pitch : gv.height[j];
          inner = std::min(inner,
                           sp.distance(gu.xs[i], gv.xs[j]) + std::fabs(t - s));
        }
      }
      if (cap_end) inner = std::min(inner, t);
      best = std::max(best, inner);
    }
  }
  return best;
}

// Dense-grid directed interval distance with inline endpoint arithmetic (no
// library distance calls), for bounded unions.
inline double union_directed_oracle(const IntervalUnion& a,
                                    const IntervalUnion& b, double pitch) {
  double best = 0.0;
  for (const Interval& pa : a.parts()) {
    for (double x = pa.lo; x <= pa.hi + pitch / 2; x += pitch) {
      double xx = std::min(x, pa.hi);
      double dmin = std::numeric_limits<double>::infinity();
      for (const Interval& pb : b.parts()) {
        double dd = xx < pb.lo ? pb.lo - xx : (xx > pb.hi ? xx - pb.hi : 0.0);
        dmin = std::min(dmin, dd);
      }
      best = std::max(best, dmin);
    }
  }
  return best;
}

// Membership checks of the level classifiers straight from the definitions.
struct LevelProbe {
  bool in_D, in_P, in_F;
};

template <typename SetLike>
inline LevelProbe probe_level(const SetLike& u, double alpha) {
  CutSet cut(u.cut(alpha));
  CutSet sc(cut_closure(CutSet(u.strict_cut(alpha))));
  bool cut_in_sc = cut_subset(cut, sc);
  bool sc_in_cut = cut_subset(sc, cut);
  LevelProbe p;
  p.in_D = !cut_in_sc;
  p.in_P = sc_in_cut && !cut_in_sc;
  p.in_F = !(cut_in_sc && sc_in_cut);
  return p;
}

}  // namespace testsupport
