#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "fuzzmet/cut_set.hpp"
#include "fuzzmet/space.hpp"
#include "support.hpp"

using namespace fuzz;

namespace {

SpacePtr two_points(double d = 1.0) {
  return GroundSpace::finite({"a", "b"}, {{0.0, d}, {d, 0.0}});
}

}  // namespace

TEST_CASE("finite space factory validates the table") {
  CHECK_NOTHROW(two_points());
  // not symmetric
  CHECK_THROWS_AS(GroundSpace::finite({"a", "b"}, {{0, 1}, {2, 0}}),
                  std::invalid_argument);
  // nonzero diagonal
  CHECK_THROWS_AS(GroundSpace::finite({"a", "b"}, {{0.5, 1}, {1, 0}}),
                  std::invalid_argument);
  // distinct points at distance zero
  CHECK_THROWS_AS(GroundSpace::finite({"a", "b"}, {{0, 0}, {0, 0}}),
                  std::invalid_argument);
  // triangle inequality: d(a,c) = 5 > 1 + 1
  CHECK_THROWS_AS(
      GroundSpace::finite({"a", "b", "c"},
                          {{0, 1, 5}, {1, 0, 1}, {5, 1, 0}}),
      std::invalid_argument);
  // ragged table
  CHECK_THROWS_AS(GroundSpace::finite({"a", "b"}, {{0, 1}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(GroundSpace::finite({"a", "a"}, {{0, 1}, {1, 0}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(GroundSpace::finite({}, {}), std::invalid_argument);
  CHECK_THROWS_AS(GroundSpace::euclidean(0), std::invalid_argument);
}

TEST_CASE("distances per backend") {
  SpacePtr fin = two_points(2.5);
  CHECK(fin->distance(Point(0), Point(1)) == 2.5);
  CHECK(fin->distance(Point(1), Point(1)) == 0.0);
  CHECK(fin->label_index("b") == 1);
  CHECK(fin->label_index("zzz") == -1);

  SpacePtr eu = GroundSpace::euclidean(2);
  CHECK(eu->distance(Point(std::vector<double>{0, 0}),
                     Point(std::vector<double>{3, 4})) == doctest::Approx(5.0));

  SpacePtr line = GroundSpace::line();
  CHECK(line->distance(Point(-1.5), Point(2.0)) == 3.5);

  // points of the wrong shape are rejected
  CHECK_THROWS_AS(fin->distance(Point(0), Point(7)), std::invalid_argument);
  CHECK_THROWS_AS(eu->distance(Point(std::vector<double>{1}),
                               Point(std::vector<double>{0, 0})),
                  std::invalid_argument);
  CHECK_THROWS_AS(line->distance(Point(0.0), Point(1)), std::invalid_argument);
}

TEST_CASE("admits checks representation, range, and finiteness") {
  SpacePtr fin = two_points();
  CHECK(fin->admits(Point(1)));
  CHECK_FALSE(fin->admits(Point(2)));
  CHECK_FALSE(fin->admits(Point(-1)));
  CHECK_FALSE(fin->admits(Point(0.5)));

  SpacePtr eu = GroundSpace::euclidean(3);
  CHECK(eu->admits(Point(std::vector<double>{1, 2, 3})));
  CHECK_FALSE(eu->admits(Point(std::vector<double>{1, 2})));
  CHECK_FALSE(eu->admits(Point(std::vector<double>{
      1, 2, std::numeric_limits<double>::infinity()})));

  SpacePtr line = GroundSpace::line();
  CHECK(line->admits(Point(0.0)));
  CHECK_FALSE(line->admits(Point(std::numeric_limits<double>::quiet_NaN())));
}

TEST_CASE("compatibility is structural") {
  CHECK(two_points()->compatible(*two_points()));
  CHECK_FALSE(two_points(1.0)->compatible(*two_points(2.0)));
  CHECK_FALSE(two_points()->compatible(*GroundSpace::line()));
  CHECK(GroundSpace::euclidean(2)->compatible(*GroundSpace::euclidean(2)));
  CHECK_FALSE(GroundSpace::euclidean(2)->compatible(*GroundSpace::euclidean(3)));
  CHECK(GroundSpace::line()->compatible(*GroundSpace::line()));
}

TEST_CASE("product metric adds base distance and height gap") {
  SpacePtr line = GroundSpace::line();
  ProductPoint p{Point(0.0), 0.25};
  ProductPoint q{Point(0.5), 0.75};
  CHECK(product_distance(p, q, *line) == doctest::Approx(1.0));
  CHECK(product_distance(p, p, *line) == 0.0);
  // symmetric
  CHECK(product_distance(q, p, *line) == product_distance(p, q, *line));
  ProductPoint bad{Point(0.0), 1.5};
  CHECK_THROWS_AS(product_distance(p, bad, *line), std::invalid_argument);
}

TEST_CASE("point sets canonicalize on construction") {
  PointSet s({Point(1), Point(0), Point(1), Point(0)});
  CHECK(s.pts.size() == 2);
  CHECK(s.pts[0] == Point(0));
  CHECK(s.contains(Point(1)));
  CHECK_FALSE(s.contains(Point(2)));
  CHECK(s == PointSet({Point(0), Point(1)}));

  PointSet a({Point(0)});
  PointSet b({Point(1)});
  CHECK(pointset_union(a, b) == s);
  CHECK(pointset_intersection(a, s) == a);
  CHECK(pointset_difference(s, a) == b);
  CHECK(pointset_subset(a, s));
  CHECK_FALSE(pointset_subset(s, a));
  CHECK(pointset_subset(PointSet(), s));
}

TEST_CASE("point rendering") {
  SpacePtr fin = two_points();
  CHECK(point_to_text(Point(1), *fin) == "b");
  CHECK(point_to_text(Point(std::vector<double>{1.5, -2.0}),
                      *GroundSpace::euclidean(2)) == "(1.5,-2)");
  CHECK(point_to_text(Point(0.25), *GroundSpace::line()) == "0.25");
}

TEST_CASE("directed Hausdorff between point cuts") {
  SpacePtr fin = two_points();
  CutSet a{PointSet({Point(0)})};
  CutSet ab{PointSet({Point(0), Point(1)})};
  CHECK(cut_directed_hausdorff(*fin, a, ab) == ExtReal(0.0));
  CHECK(cut_directed_hausdorff(*fin, ab, a) == ExtReal(1.0));
  CHECK(cut_hausdorff(*fin, a, ab) == ExtReal(1.0));
  CHECK(cut_point_distance(*fin, Point(1), a) == ExtReal(1.0));

  CHECK_THROWS_AS(cut_directed_hausdorff(*fin, CutSet(PointSet()), a),
                  std::domain_error);
  CHECK_THROWS_AS(cut_directed_hausdorff(*fin, a, CutSet(PointSet())),
                  std::domain_error);
  CHECK_THROWS_AS(cut_point_distance(*fin, Point(0), CutSet(PointSet())),
                  std::domain_error);
  // mixed backends are a usage error
  CHECK_THROWS_AS(cut_union(a, CutSet(IntervalUnion())), std::invalid_argument);
}

TEST_CASE("cut helpers on point cuts") {
  SpacePtr fin = two_points();
  CutSet ab{PointSet({Point(0), Point(1)})};
  CHECK(cut_count(ab) == 2);
  CHECK(cut_bounded(ab));
  CHECK(cut_closed(ab));
  CHECK(cut_equal(cut_closure(ab), ab));
  CHECK(cut_to_text(ab, *fin) == "{a, b}");
  CHECK(cut_empty(CutSet(PointSet())));
  CHECK(cut_subset(CutSet(PointSet({Point(1)})), ab));
  CHECK(cut_equal(cut_intersection(ab, CutSet(PointSet({Point(1)}))),
                  CutSet(PointSet({Point(1)}))));
}

TEST_CASE("random finite spaces from the generator are genuine metrics") {
  testsupport::Rng rng(11);
  for (int trial = 0; trial < 50; ++trial) {
    SpacePtr sp = testsupport::random_finite_space(rng, 8);
    int n = sp->size();
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        CHECK(sp->distance(Point(i), Point(j)) ==
              sp->distance(Point(j), Point(i)));
        for (int k = 0; k < n; ++k)
          CHECK(sp->distance(Point(i), Point(j)) <=
                sp->distance(Point(i), Point(k)) +
                    sp->distance(Point(k), Point(j)) + 1e-12);
      }
  }
}
