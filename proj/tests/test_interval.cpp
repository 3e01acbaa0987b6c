#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fuzzmet/cut_set.hpp"
#include "fuzzmet/interval.hpp"
#include "support.hpp"

using namespace fuzz;

namespace {

const double kInf = std::numeric_limits<double>::infinity();

IntervalUnion iu(std::vector<Interval> parts) {
  return IntervalUnion(std::move(parts));
}

}  // namespace

TEST_CASE("interval construction is validated") {
  CHECK_NOTHROW(Interval::closed(0, 1));
  CHECK_NOTHROW(Interval::open(0, 1));
  CHECK_NOTHROW(Interval::point(2.5));
  CHECK_NOTHROW(Interval::make(-kInf, 3, true, false));
  CHECK_THROWS_AS(Interval::make(1, 0, false, false), std::invalid_argument);
  CHECK_THROWS_AS(Interval::make(0, 0, true, false), std::invalid_argument);
  CHECK_THROWS_AS(Interval::make(-kInf, 3, false, false),
                  std::invalid_argument);
  CHECK_THROWS_AS(Interval::make(0, kInf, false, false),
                  std::invalid_argument);
  CHECK_THROWS_AS(Interval::make(std::nan(""), 1, false, false),
                  std::invalid_argument);
}

TEST_CASE("canonical form merges and sorts") {
  // [0,1] u (1,2] collapses to [0,2]
  IntervalUnion u = iu({Interval::closed(0, 1), Interval::make(1, 2, true, false)});
  CHECK(u.parts().size() == 1);
  CHECK(u == iu({Interval::closed(0, 2)}));
  CHECK(u.to_text() == "[0,2]");

  // overlapping, out of order
  IntervalUnion v = iu({Interval::closed(2, 3), Interval::closed(0, 2.5)});
  CHECK(v == iu({Interval::closed(0, 3)}));

  // abutting open/open stays split: (0,1) u (1,2) misses the point 1
  IntervalUnion w = iu({Interval::open(0, 1), Interval::open(1, 2)});
  CHECK(w.parts().size() == 2);
  CHECK_FALSE(w.contains(1.0));

  CHECK(IntervalUnion().empty());
  CHECK(IntervalUnion().to_text() == "{}");
  CHECK(IntervalUnion::points({1.0}).to_text() == "{1}");
}

TEST_CASE("membership respects endpoint openness") {
  IntervalUnion u = iu({Interval::make(0, 1, true, false)});  // (0,1]
  CHECK_FALSE(u.contains(0.0));
  CHECK(u.contains(1.0));
  CHECK(u.contains(0.5));
  CHECK_FALSE(u.contains(1.5));
  CHECK(IntervalUnion::whole_line().contains(-1e12));
  CHECK(IntervalUnion::points({2, 4}).contains(4.0));
  CHECK_FALSE(IntervalUnion::points({2, 4}).contains(3.0));
}

TEST_CASE("closure and closedness") {
  CHECK(iu({Interval::open(0, 1)}).closure() == iu({Interval::closed(0, 1)}));
  CHECK_FALSE(iu({Interval::open(0, 1)}).is_closed());
  CHECK(iu({Interval::closed(0, 1)}).is_closed());
  CHECK(IntervalUnion::whole_line().is_closed());
  CHECK(iu({Interval::make(-kInf, 0, true, false)}).is_closed());
  CHECK(IntervalUnion().is_closed());
  // closure of an unbounded open part keeps the infinite end open
  IntervalUnion ray = iu({Interval::make(0, kInf, true, true)});
  CHECK(ray.closure() == iu({Interval::make(0, kInf, false, true)}));
}

TEST_CASE("boundedness") {
  CHECK(iu({Interval::closed(0, 5)}).bounded());
  CHECK(IntervalUnion().bounded());
  CHECK_FALSE(IntervalUnion::whole_line().bounded());
  CHECK_FALSE(iu({Interval::make(-kInf, 0, true, false)}).bounded());
}

TEST_CASE("complement round trips") {
  IntervalUnion u = iu({Interval::closed(0, 1)});
  IntervalUnion c = u.complement();
  CHECK(c == iu({Interval::make(-kInf, 0, true, true),
                 Interval::make(1, kInf, true, true)}));
  CHECK(c.complement() == u);
  CHECK(IntervalUnion::whole_line().complement().empty());
  CHECK(IntervalUnion().complement() == IntervalUnion::whole_line());
}

TEST_CASE("set algebra") {
  IntervalUnion a = iu({Interval::closed(0, 2)});
  IntervalUnion b = iu({Interval::closed(1, 3)});
  CHECK(union_of(a, b) == iu({Interval::closed(0, 3)}));
  CHECK(intersection_of(a, b) == iu({Interval::closed(1, 2)}));
  CHECK(difference_of(a, b) == iu({Interval::make(0, 1, false, true)}));
  CHECK(subset_of(intersection_of(a, b), a));
  // (0,3] is not a subset of [0,1]
  CHECK_FALSE(subset_of(iu({Interval::make(0, 3, true, false)}),
                        iu({Interval::closed(0, 1)})));
  // but (0,1) is a subset of [0,1]
  CHECK(subset_of(iu({Interval::open(0, 1)}), iu({Interval::closed(0, 1)})));
}

TEST_CASE("point-to-union distance") {
  IntervalUnion u = iu({Interval::closed(0, 1)});
  CHECK(point_to_union_distance(2.0, u) == ExtReal(1.0));
  CHECK(point_to_union_distance(0.5, iu({Interval::open(0, 1)})) ==
        ExtReal(0.0));
  // openness never affects distances
  CHECK(point_to_union_distance(2.0, iu({Interval::open(0, 1)})) ==
        ExtReal(1.0));
  CHECK(point_to_union_distance(-3.0, u) == ExtReal(3.0));
  // limits along the axes
  CHECK(point_to_union_distance(kInf, u) == ExtReal::infinity());
  CHECK(point_to_union_distance(kInf, IntervalUnion::whole_line()) ==
        ExtReal(0.0));
  CHECK(point_to_union_distance(-kInf,
                                iu({Interval::make(-kInf, 5, true, false)})) ==
        ExtReal(0.0));
  CHECK_THROWS_AS(point_to_union_distance(0.0, IntervalUnion()),
                  std::domain_error);
}

TEST_CASE("directed Hausdorff on unions") {
  IntervalUnion ray = iu({Interval::make(-kInf, 5, true, false)});
  CHECK(union_directed_hausdorff(IntervalUnion::whole_line(), ray) ==
        ExtReal::infinity());
  CHECK(union_directed_hausdorff(ray, IntervalUnion::whole_line()) ==
        ExtReal(0.0));
  CHECK(union_hausdorff(IntervalUnion::whole_line(), ray) ==
        ExtReal::infinity());

  IntervalUnion a = iu({Interval::closed(0, 1)});
  IntervalUnion b = iu({Interval::closed(0, 0.5), Interval::closed(3, 4)});
  CHECK(union_directed_hausdorff(a, b) == ExtReal(0.5));
  CHECK(union_directed_hausdorff(b, a) == ExtReal(3.0));
  CHECK(union_hausdorff(a, b) == ExtReal(3.0));

  CHECK_THROWS_AS(union_directed_hausdorff(IntervalUnion(), a),
                  std::domain_error);
  CHECK_THROWS_AS(union_directed_hausdorff(a, IntervalUnion()),
                  std::domain_error);
}

TEST_CASE("directed Hausdorff witnesses") {
  IntervalUnion a = iu({Interval::closed(0, 1)});
  IntervalUnion b = iu({Interval::closed(0, 0.5), Interval::closed(3, 4)});
  DirectedWitness w = union_directed_hausdorff_witness(a, b);
  CHECK(w.value == ExtReal(0.5));
  REQUIRE(w.at.has_value());
  CHECK(a.closure().contains(*w.at));
  CHECK(point_to_union_distance(*w.at, b) == w.value);

  DirectedWitness far = union_directed_hausdorff_witness(
      IntervalUnion::whole_line(), iu({Interval::make(-kInf, 5, true, false)}));
  CHECK(far.value == ExtReal::infinity());
  CHECK_FALSE(far.at.has_value());
  CHECK(far.toward_pos_inf);
  CHECK_FALSE(far.toward_neg_inf);
}

TEST_CASE("directed Hausdorff agrees with a dense-grid scan") {
  testsupport::Rng rng(23);
  const double pitch = 1e-3;
  for (int trial = 0; trial < 300; ++trial) {
    IntervalUnion a = testsupport::random_closed_union(rng, 0.0, 3.0, 3);
    IntervalUnion b = testsupport::random_closed_union(rng, 0.0, 3.0, 3);
    ExtReal exact = union_directed_hausdorff(a, b);
    double sampled = testsupport::union_directed_oracle(a, b, pitch);
    REQUIRE(exact.finite());
    // the grid undershoots by at most one pitch
    CHECK(std::fabs(exact.value() - sampled) <= 2 * pitch);
  }
}

TEST_CASE("directed Hausdorff is monotone and closure-invariant") {
  testsupport::Rng rng(29);
  for (int trial = 0; trial < 200; ++trial) {
    IntervalUnion a = testsupport::random_closed_union(rng, 0.0, 3.0, 3);
    IntervalUnion b = testsupport::random_closed_union(rng, 0.0, 3.0, 3);
    IntervalUnion bigger_a = union_of(a, testsupport::random_closed_union(rng, 0.0, 3.0, 2));
    IntervalUnion bigger_b = union_of(b, testsupport::random_closed_union(rng, 0.0, 3.0, 2));
    // growing the source can only increase the sup
    CHECK(union_directed_hausdorff(a, b) <=
          union_directed_hausdorff(bigger_a, b));
    // growing the target can only decrease the inf
    CHECK(union_directed_hausdorff(a, bigger_b) <=
          union_directed_hausdorff(a, b));
  }
  // openness of endpoints is invisible to the metric
  IntervalUnion open_a = iu({Interval::open(0, 1)});
  IntervalUnion closed_a = iu({Interval::closed(0, 1)});
  IntervalUnion target = iu({Interval::open(2, 3)});
  CHECK(union_directed_hausdorff(open_a, target) ==
        union_directed_hausdorff(closed_a, target.closure()));
}

TEST_CASE("interval cuts through the CutSet facade") {
  SpacePtr line = GroundSpace::line();
  CutSet a{iu({Interval::closed(0, 1)})};
  CutSet b{iu({Interval::closed(0, 0.5), Interval::closed(3, 4)})};
  CHECK(cut_directed_hausdorff(*line, a, b) == ExtReal(0.5));
  CHECK(cut_point_distance(*line, Point(2.0), a) == ExtReal(1.0));
  CHECK(cut_count(b) == 2);
  CHECK(cut_to_text(b, *line) == "[0,0.5] u [3,4]");
  CHECK_FALSE(cut_closed(CutSet(iu({Interval::open(0, 1)}))));
  CHECK(cut_contains(a, Point(0.5)));
  CHECK_THROWS_AS(cut_contains(a, Point(1)), std::invalid_argument);
}
