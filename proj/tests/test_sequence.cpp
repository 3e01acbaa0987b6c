#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fuzzmet/sequence.hpp"
#include "support.hpp"

using namespace fuzz;

namespace {

IntervalUnion iu(std::vector<Interval> parts) {
  return IntervalUnion(std::move(parts));
}

std::vector<ExtReal> series(std::initializer_list<double> xs) {
  std::vector<ExtReal> v;
  for (double x : xs) v.emplace_back(x);
  return v;
}

}  // namespace

TEST_CASE("tail verdicts look only at the last quarter") {
  TailVerdict v = tail_verdict(series({1.0, 1.0, 1.0, 1.0, 0.0, 0.0, 0.0, 0.0}),
                               1e-9);
  CHECK(v.samples == 8);
  CHECK(v.window_begin == 6);
  CHECK(v.tail_max == ExtReal(0.0));
  CHECK(v.vanishes);
  CHECK(v.trend == Trend::flat);
  CHECK(v.label.find("vanishes") != std::string::npos);

  v = tail_verdict(series({0.0, 0.0, 0.0, 1.0}), 1e-9);
  CHECK_FALSE(v.vanishes);
  CHECK(v.label.find("a finite prefix cannot decide the limit") !=
        std::string::npos);

  std::vector<ExtReal> decreasing;
  for (int n = 1; n <= 20; ++n) decreasing.emplace_back(1.0 / n);
  v = tail_verdict(decreasing, 1e-9);
  CHECK_FALSE(v.vanishes);
  CHECK(v.trend == Trend::down);
  CHECK(v.tail_max == ExtReal(1.0 / 16));

  std::vector<ExtReal> growing;
  for (int n = 1; n <= 20; ++n) growing.emplace_back(ExtReal(double(n)));
  CHECK(tail_verdict(growing, 1e-9).trend == Trend::up);

  v = tail_verdict({}, 1e-9);
  CHECK(v.samples == 0);
  CHECK(v.label == "no samples");

  // infinity never vanishes
  v = tail_verdict({ExtReal::infinity()}, 1e9);
  CHECK_FALSE(v.vanishes);
}

TEST_CASE("every gallery member and limit validates") {
  for (const std::string& id : SequenceFamily::gallery_ids()) {
    SequenceFamily fam = SequenceFamily::gallery(id, 64);
    for (int n : {1, 2, 3, 7}) {
      FuzzyElem m = fam.member(n);
      CHECK_MESSAGE(validate(m).ok(), id, " member ", n);
    }
    REQUIRE(fam.has_limit());
    CHECK_MESSAGE(validate(fam.limit()).ok(), id, " limit");
  }
  CHECK_THROWS_AS(SequenceFamily::gallery("nope"), std::invalid_argument);
  CHECK_THROWS_AS(SequenceFamily::gallery("snc").member(0),
                  std::invalid_argument);
}

TEST_CASE("platform family: one stubborn level, everything else settles") {
  SequenceFamily fam = SequenceFamily::gallery("platform-fail");
  CHECK(fam.metric_tolerance() == SequenceFamily::kExactTolerance);

  std::vector<double> levels = {0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9};
  auto rows = level_decomposition_test(fam, levels, 40);
  REQUIRE(rows.size() == levels.size());
  for (const LevelTrajectory& row : rows) {
    if (row.alpha == 0.5) {
      CHECK(row.alpha_in_p0);
      CHECK_FALSE(row.verdict.vanishes);
      for (const ExtReal& x : row.values) CHECK(x == ExtReal(1.0));
    } else {
      CHECK_FALSE(row.alpha_in_p0);
      CHECK(row.verdict.vanishes);
    }
  }
  // the alpha = 0.4 trajectory switches from 1 to 0 at n = 10
  const LevelTrajectory& at04 = rows[3];
  CHECK(at04.values[8] == ExtReal(1.0));   // n = 9
  CHECK(at04.values[9] == ExtReal(0.0));   // n = 10
  CHECK(fam.limit_p0_at(0.5));
  CHECK_FALSE(fam.limit_p0_at(0.4));

  // while the endograph metric converges like 1/n
  DecompositionReport dec = decomposition_trajectory(fam, 40);
  CHECK(dec.h_end.verdict.vanishes == false);  // 1/n tail is ~0.033 > 1e-9
  CHECK(dec.h_end.verdict.trend == Trend::down);
  for (const DecompositionRow& r : dec.rows)
    CHECK(testsupport::approx(r.h_end, r.n >= 3 ? 1.0 / r.n : 0.5, 1e-12));
}

TEST_CASE("constant family: every diagnostic is identically zero") {
  SpacePtr line = GroundSpace::line();
  FuzzyElem u = StepFuzzySet(line, {0.5, 1.0},
                             {CutSet(iu({Interval::closed(0, 2)})),
                              CutSet(iu({Interval::closed(0, 1)}))});
  std::vector<FuzzyElem> members(12, u);
  SequenceFamily fam = SequenceFamily::from_members("const", members, u);
  CHECK(fam.max_index() == 12);
  CHECK(fam.resolution() == 0.0);

  SequenceDiagnostics d = run_sequence_diagnostics(fam, 12, {0.25, 0.5, 0.75},
                                                   {0.25, 0.5});
  CHECK(d.family_id == "const");
  for (const DecompositionRow& r : d.decomposition.rows) {
    CHECK(r.h_send == ExtReal(0.0));
    CHECK(r.h_end == ExtReal(0.0));
    CHECK(r.h_zero == ExtReal(0.0));
    CHECK(r.d_inf == ExtReal(0.0));
    CHECK(r.d_p == ExtReal(0.0));
    CHECK(r.bound_applicable);
    CHECK(r.bound_holds);
  }
  CHECK(d.decomposition.bound_all_hold);
  CHECK(d.decomposition.h_send.verdict.vanishes);
  for (const LevelTrajectory& row : d.levels) {
    CHECK(row.verdict.vanishes);
    for (const ExtReal& x : row.values) CHECK(x == ExtReal(0.0));
  }
  for (const GammaResidual& g : d.gamma) {
    CHECK(g.inner_verdict.vanishes);
    CHECK(g.outer_verdict.vanishes);
  }
}

TEST_CASE("spike family: level 0.5 settles at n = 3") {
  SequenceFamily fam = SequenceFamily::gallery("remark45");
  auto rows = level_decomposition_test(fam, {0.5}, 12);
  REQUIRE(rows.size() == 1);
  const std::vector<ExtReal>& v = rows[0].values;
  CHECK(v[0] == ExtReal(1.0));
  CHECK(v[1] == ExtReal(1.0));
  for (std::size_t i = 2; i < v.size(); ++i) CHECK(v[i] == ExtReal(0.0));
  CHECK(rows[0].verdict.vanishes);
}

TEST_CASE("spike family: set-inclusion residuals at 0.25") {
  SequenceFamily fam = SequenceFamily::gallery("remark45");
  auto res = gamma_residuals(fam, {0.25}, 16);
  REQUIRE(res.size() == 1);
  const GammaResidual& g = res[0];
  for (const ExtReal& x : g.inner) CHECK(x == ExtReal(0.0));
  for (int n = 1; n <= 16; ++n)
    CHECK(g.outer[n - 1] == ExtReal(n <= 4 ? 1.0 : 0.0));
  CHECK(g.inner_verdict.vanishes);
  CHECK(g.outer_verdict.vanishes);
}

TEST_CASE("heavy-tail family: top level never follows") {
  SequenceFamily fam = SequenceFamily::gallery("fnc", 64);
  auto res = gamma_residuals(fam, {1.0}, 10);
  REQUIRE(res.size() == 1);
  for (const ExtReal& x : res[0].outer) CHECK(x == ExtReal::infinity());
  CHECK_FALSE(res[0].outer_verdict.vanishes);
  for (const ExtReal& x : res[0].inner) CHECK(x == ExtReal(0.0));
  CHECK(res[0].inner_verdict.vanishes);

  // equi-right-continuity dies: H([u_n]_delta, [u_n]_0) has the ray
  // (-inf,-1] in the level-zero set but only (-inf,-1/(1-delta)] above it
  EquiRcCurve curve = equi_rc_modulus(fam, 8, {0.1, 0.5});
  CHECK(testsupport::approx(curve.modulus[0], 0.1 / 0.9, 1e-9));
  CHECK(testsupport::approx(curve.modulus[1], 1.0, 1e-9));
}

TEST_CASE("slow ray family: endograph settles, everything stronger fails") {
  SequenceFamily fam = SequenceFamily::gallery("snc");
  CHECK(fam.resolution() == doctest::Approx(1.0 / 400));
  CHECK(fam.metric_tolerance() == doctest::Approx(10.0 / 400));

  DecompositionReport dec = decomposition_trajectory(fam, 30);
  CHECK(dec.h_end.verdict.vanishes);
  CHECK(dec.h_end.verdict.trend == Trend::down);
  for (const DecompositionRow& r : dec.rows) {
    CHECK(r.d_inf == ExtReal::infinity());
    REQUIRE(r.h_end.finite());
    CHECK(r.h_end.value() <= 1.0 / (3.0 * r.n) + 2.0 * fam.resolution());
    // the member's cut is a ray wherever the candidate's is the whole
    // line, so every level average diverges as well
    CHECK(r.d_p == ExtReal::infinity());
  }
  CHECK_FALSE(dec.d_inf.verdict.vanishes);
  CHECK_FALSE(dec.d_p.verdict.vanishes);

  // at the critical level the candidate's cut is the whole line while every
  // member's cut is a ray: the directed gap limit -> member is infinite for
  // every n, even though the reverse direction is zero
  for (int n : {1, 2, 5, 20}) {
    CHECK(cut_directed_hausdorff(*fam.space(), fam.limit_cut(1.0 / 3),
                                 fam.member_cut(n, 1.0 / 3)) ==
          ExtReal::infinity());
    CHECK(cut_directed_hausdorff(*fam.space(), fam.member_cut(n, 1.0 / 3),
                                 fam.limit_cut(1.0 / 3)) == ExtReal(0.0));
  }
  // just above the critical level both cuts are finite-ended rays again
  double just_above = 1.0 / 3 + 1e-9;
  for (int n : {1, 2, 5, 20})
    CHECK(cut_directed_hausdorff(*fam.space(), fam.limit_cut(just_above),
                                 fam.member_cut(n, just_above))
              .finite());

  // no equi-right-continuity: member 1 jumps from the whole line to a ray
  EquiRcCurve curve = equi_rc_modulus(fam, 6, {0.05, 0.2});
  for (const ExtReal& m : curve.modulus) CHECK(m == ExtReal::infinity());
  CHECK(curve.witness[0] == 1);
  CHECK_FALSE(equi_rc_witness(curve, 0.5).has_value());
}

TEST_CASE("two-point family: modulus curve steps at 1/N") {
  SequenceFamily fam = SequenceFamily::gallery("nce");
  EquiRcCurve curve = equi_rc_modulus(fam, 10, {0.05, 0.1, 0.11, 0.15});
  CHECK(curve.modulus[0] == ExtReal(0.0));
  CHECK(curve.modulus[1] == ExtReal(0.0));
  CHECK(curve.modulus[2] == ExtReal(1.0));
  CHECK(curve.modulus[3] == ExtReal(1.0));
  CHECK(equi_rc_witness(curve, 0.5) == 0.05);
  CHECK_FALSE(equi_rc_witness(curve, 0.0).has_value());

  // growing supports are no obstacle: chi_[0,n] is equi-right-continuous
  SpacePtr line = GroundSpace::line();
  std::vector<FuzzyElem> boxes;
  for (int n = 1; n <= 8; ++n)
    boxes.emplace_back(StepFuzzySet(
        line, {1.0}, {CutSet(iu({Interval::closed(0, double(n))}))}));
  SequenceFamily grow = SequenceFamily::from_members("boxes", boxes, {});
  CHECK_FALSE(grow.has_limit());
  EquiRcCurve flat = equi_rc_modulus(grow, 8, {0.1, 0.5, 0.9});
  for (const ExtReal& m : flat.modulus) CHECK(m == ExtReal(0.0));

  // a single step set is right-continuous up to its first threshold
  FuzzyElem two_level = StepFuzzySet(line, {0.3, 1.0},
                                     {CutSet(iu({Interval::closed(0, 2)})),
                                      CutSet(iu({Interval::closed(0, 1)}))});
  SequenceFamily solo = SequenceFamily::from_members("solo", {two_level}, {});
  EquiRcCurve sc = equi_rc_modulus(solo, 1, {0.1, 0.3, 0.31});
  CHECK(sc.modulus[0] == ExtReal(0.0));
  CHECK(sc.modulus[1] == ExtReal(0.0));
  CHECK(sc.modulus[2] == ExtReal(1.0));
}

TEST_CASE("quadratic spike family: weak metric dies while d_p explodes") {
  SequenceFamily fam = SequenceFamily::gallery("snp", 200);
  DecompositionReport dec = decomposition_trajectory(fam, 12);
  for (const DecompositionRow& r : dec.rows) {
    REQUIRE(r.h_send.finite());
    CHECK(r.h_send.value() <= 1.0 / r.n + 1e-12);
    REQUIRE(r.d_p.finite());
  }
  CHECK(dec.d_p.verdict.trend == Trend::up);
  CHECK(dec.d_p.verdict.tail_max > ExtReal(1.0));
  CHECK(dec.bound_all_hold);
}

TEST_CASE("vanishing hierarchy across the gallery") {
  for (const std::string& id : SequenceFamily::gallery_ids()) {
    SequenceFamily fam = SequenceFamily::gallery(id, 100);
    DecompositionReport dec = decomposition_trajectory(fam, 12);
    if (dec.h_send.verdict.vanishes) {
      CHECK_MESSAGE(dec.h_end.verdict.vanishes, id);
      CHECK_MESSAGE(dec.h_zero.verdict.vanishes, id);
    }
    if (dec.d_p.verdict.vanishes) CHECK_MESSAGE(dec.h_end.verdict.vanishes, id);
    CHECK_MESSAGE(dec.bound_all_hold, id);
  }
}

TEST_CASE("prefix unions stabilize like 1/n") {
  SpacePtr line = GroundSpace::line();
  const int N = 10;

  std::vector<CutSet> pts, nested;
  for (int n = 1; n <= N; ++n) {
    pts.emplace_back(IntervalUnion::points({0.0, 1.0 - 1.0 / n}));
    nested.emplace_back(iu({Interval::closed(0, 1.0 - 1.0 / n)}));
  }
  for (const auto& sets : {pts, nested}) {
    UnionLimitReport rep = cauchy_union_limit(line, sets);
    REQUIRE(rep.gap.size() == sets.size());
    for (int n = 1; n <= N; ++n)
      CHECK(testsupport::approx(rep.gap[n - 1], 1.0 / n - 1.0 / N, 1e-12));
    CHECK(rep.gap.back() == ExtReal(0.0));
    CHECK(rep.verdict.trend == Trend::down);
  }
  UnionLimitReport rep = cauchy_union_limit(line, pts);
  for (int n = 1; n <= N; ++n)
    CHECK(cut_contains(rep.limit, Point(1.0 - 1.0 / n)));

  // constant inputs stabilize immediately
  std::vector<CutSet> constant(5, CutSet(iu({Interval::closed(0, 1)})));
  rep = cauchy_union_limit(line, constant);
  for (const ExtReal& g : rep.gap) CHECK(g == ExtReal(0.0));
  CHECK(rep.verdict.vanishes);

  CHECK_THROWS_AS(cauchy_union_limit(line, {}), std::domain_error);
  CHECK_THROWS_AS(cauchy_union_limit(line, {CutSet(IntervalUnion())}),
                  std::domain_error);
}

TEST_CASE("member wrappers reject foreign spaces and bad indices") {
  SpacePtr line = GroundSpace::line();
  SpacePtr fin = GroundSpace::finite({"a"}, {{0}});
  FuzzyElem a = testsupport::singleton(line, Point(0.0));
  FuzzyElem b = testsupport::singleton(fin, Point(0));
  CHECK_THROWS_AS(SequenceFamily::from_members("bad", {a, b}, {}),
                  std::invalid_argument);
  CHECK_THROWS_AS(SequenceFamily::from_members("none", {}, {}),
                  std::invalid_argument);
  SequenceFamily ok = SequenceFamily::from_members("one", {a}, {});
  CHECK_THROWS_AS(ok.member(2), std::invalid_argument);
  CHECK_THROWS_AS(ok.limit(), std::invalid_argument);
  CHECK_THROWS_AS(level_decomposition_test(ok, {0.5}, 1),
                  std::invalid_argument);
  CHECK_THROWS_AS(equi_rc_modulus(ok, 1, {0.0}), std::invalid_argument);
}
