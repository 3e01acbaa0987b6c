#include "fuzzmet/sequence.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <utility>

namespace fuzz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

CutSet line_cut(std::vector<Interval> parts) {
  return CutSet(IntervalUnion(std::move(parts)));
}

Interval ray_below(double hi) { return Interval::make(-kInf, hi, true, false); }
Interval ray_below_open(double hi) {
  return Interval::make(-kInf, hi, true, true);
}
Interval ray_above(double lo) { return Interval::make(lo, kInf, false, true); }

CutSet whole_line_cut() { return CutSet(IntervalUnion::whole_line()); }
CutSet empty_line_cut() { return CutSet(IntervalUnion()); }

CutSet elem_strict_cut(const FuzzyElem& e, double alpha) {
  return std::visit(
      [alpha](const auto& x) {
        if constexpr (std::is_same_v<std::decay_t<decltype(x)>, SendoElement>)
          return x.base().strict_cut(alpha);
        else
          return x.strict_cut(alpha);
      },
      e);
}

// Directed gap with the fixed conventions for empty operands: nothing to
// cover costs 0, something to cover with nowhere to go costs +inf.
ExtReal directed_gap(const GroundSpace& sp, const CutSet& a, const CutSet& b) {
  if (cut_empty(a)) return ExtReal(0.0);
  if (cut_empty(b)) return ExtReal::infinity();
  return cut_directed_hausdorff(sp, a, b);
}

ExtReal set_gap(const GroundSpace& sp, const CutSet& a, const CutSet& b) {
  return ext_max(directed_gap(sp, a, b), directed_gap(sp, b, a));
}

std::vector<double> uniform_ladder(int m, std::initializer_list<double> extra) {
  if (m < 2)
    throw std::invalid_argument(
        "sequence family: realization ladder needs at least 2 levels");
  std::vector<double> lv;
  lv.reserve(static_cast<std::size_t>(m) + extra.size());
  for (int i = 1; i <= m; ++i) lv.push_back(static_cast<double>(i) / m);
  for (double x : extra)
    if (x > 0.0 && x < 1.0) lv.push_back(x);
  std::sort(lv.begin(), lv.end());
  lv.erase(std::unique(lv.begin(), lv.end()), lv.end());
  return lv;
}

StepFuzzySet realize(const SpacePtr& sp, const std::vector<double>& levels,
                     const std::function<CutSet(double)>& cut_at) {
  std::vector<CutSet> cuts;
  cuts.reserve(levels.size());
  for (double a : levels) cuts.push_back(cut_at(a));
  return StepFuzzySet(sp, levels, cuts);
}

void require_levels(const std::vector<double>& levels) {
  for (double a : levels)
    if (!(a >= 0.0 && a <= 1.0))
      throw std::invalid_argument("levels must lie in [0,1]");
}

}  // namespace

std::string trend_name(Trend t) {
  switch (t) {
    case Trend::down: return "down";
    case Trend::flat: return "flat";
    case Trend::up: return "up";
    case Trend::mixed: return "mixed";
  }
  return "?";
}

TailVerdict tail_verdict(const std::vector<ExtReal>& values, double tolerance) {
  TailVerdict v;
  v.samples = values.size();
  v.tolerance = tolerance;
  if (values.empty()) {
    v.label = "no samples";
    return v;
  }
  std::size_t window = std::max<std::size_t>(1, values.size() / 4);
  v.window_begin = values.size() - window;
  ExtReal mx(0.0);
  bool up = false, down = false;
  for (std::size_t i = v.window_begin; i < values.size(); ++i) {
    mx = ext_max(mx, values[i]);
    if (i > v.window_begin) {
      if (values[i] < values[i - 1]) down = true;
      if (values[i] > values[i - 1]) up = true;
    }
  }
  v.tail_max = mx;
  v.vanishes = mx <= ExtReal(tolerance);
  v.trend = (up && down) ? Trend::mixed
            : down       ? Trend::down
            : up         ? Trend::up
                         : Trend::flat;
  std::ostringstream os;
  os << "diagnostic at N=" << values.size() << ": tail max " << to_string(mx)
     << " over n in [" << (v.window_begin + 1) << "," << values.size()
     << "], tolerance " << format_double(tolerance) << "; "
     << (v.vanishes ? "vanishes" : "does not vanish") << "; trend "
     << trend_name(v.trend)
     << (v.vanishes ? "" : " (a finite prefix cannot decide the limit)");
  v.label = os.str();
  return v;
}

const std::vector<std::string>& SequenceFamily::gallery_ids() {
  static const std::vector<std::string> ids = {"remark45", "snc",
                                               "fnc",      "snp",
                                               "nce",      "platform-fail"};
  return ids;
}

SequenceFamily SequenceFamily::gallery(const std::string& id, int ladder) {
  SequenceFamily f;
  f.id_ = id;

  if (id == "remark45") {
    // u_n is 1 at the origin and 1/n on the rest of [0,1]; the limit is the
    // crisp origin.  The level-zero sets refuse to follow: they stay [0,1].
    f.space_ = GroundSpace::line();
    SpacePtr sp = f.space_;
    auto unit = [] { return line_cut({Interval::closed(0.0, 1.0)}); };
    auto origin = [] { return line_cut({Interval::point(0.0)}); };
    f.make_member_ = [sp, unit, origin](int n) -> FuzzyElem {
      if (n == 1) return StepFuzzySet(sp, {1.0}, {unit()});
      return StepFuzzySet(sp, {1.0 / n, 1.0}, {unit(), origin()});
    };
    f.member_cut_ = [unit, origin](int n, double a) {
      return a <= 1.0 / n ? unit() : origin();
    };
    f.limit_cut_ = [origin](double) { return origin(); };
    f.limit_strict_cut_ = [origin](double a) {
      return a >= 1.0 ? empty_line_cut() : origin();
    };
    f.limit_ = StepFuzzySet(sp, {1.0}, {origin()});
    return f;
  }

  if (id == "snc") {
    // Every cut is a left ray; members hold the whole line up to level
    // c_n = (n-1)/(3n) and the limit up to 1/3.  Supports are the whole
    // line, carried by the ghost so the realizations keep the true
    // level-zero set.
    f.space_ = GroundSpace::line();
    f.resolution_ = 1.0 / ladder;
    SpacePtr sp = f.space_;
    auto mcut = [](int n, double a) -> CutSet {
      double c = (n - 1.0) / (3.0 * n);
      if (a <= c) return whole_line_cut();
      return line_cut({ray_below((1.0 - c) / (a - c))});
    };
    auto lcut = [](double a) -> CutSet {
      if (a <= 1.0 / 3.0) return whole_line_cut();
      return line_cut({ray_below((2.0 / 3.0) / (a - 1.0 / 3.0))});
    };
    f.member_cut_ = mcut;
    f.limit_cut_ = lcut;
    f.limit_strict_cut_ = [](double a) -> CutSet {
      if (a >= 1.0) return empty_line_cut();
      if (a <= 1.0 / 3.0) return whole_line_cut();
      return line_cut({ray_below_open((2.0 / 3.0) / (a - 1.0 / 3.0))});
    };
    f.make_member_ = [sp, ladder, mcut](int n) -> FuzzyElem {
      double c = (n - 1.0) / (3.0 * n);
      auto levels = uniform_ladder(ladder, {c, 1.0 / 3.0});
      return SendoElement(
          realize(sp, levels, [n, mcut](double a) { return mcut(n, a); }),
          whole_line_cut());
    };
    f.limit_ = SendoElement(realize(sp, uniform_ladder(ladder, {1.0 / 3.0}),
                                    [lcut](double a) { return lcut(a); }),
                            whole_line_cut());
    return f;
  }

  if (id == "fnc") {
    // Cuts are a left ray plus the isolated normality point {1}.  Member n
    // freezes the ray at (-inf,-n] for levels above 1 - 1/n, so its top cut
    // sticks out infinitely far while the limit's top cut is just {1}.
    f.space_ = GroundSpace::line();
    f.resolution_ = 1.0 / ladder;
    SpacePtr sp = f.space_;
    auto ghost = [] { return line_cut({ray_below(-1.0), Interval::point(1.0)}); };
    auto mcut = [](int n, double a) -> CutSet {
      if (a <= 0.0) return line_cut({ray_below(-1.0), Interval::point(1.0)});
      double b = 1.0 - 1.0 / n;
      // At the breakpoint the ray ends at exactly -n; rounding of
      // -1/(1-a) must never let a higher cut poke past a lower one.
      double hi = a < b ? std::max(-1.0 / (1.0 - a), -static_cast<double>(n))
                        : -static_cast<double>(n);
      return line_cut({ray_below(hi), Interval::point(1.0)});
    };
    auto lcut = [](double a) -> CutSet {
      if (a <= 0.0) return line_cut({ray_below(-1.0), Interval::point(1.0)});
      if (a >= 1.0) return line_cut({Interval::point(1.0)});
      return line_cut({ray_below(-1.0 / (1.0 - a)), Interval::point(1.0)});
    };
    f.member_cut_ = mcut;
    f.limit_cut_ = lcut;
    f.limit_strict_cut_ = [](double a) -> CutSet {
      if (a >= 1.0) return empty_line_cut();
      return line_cut(
          {ray_below_open(-1.0 / (1.0 - a)), Interval::point(1.0)});
    };
    f.make_member_ = [sp, ladder, mcut, ghost](int n) -> FuzzyElem {
      auto levels = uniform_ladder(ladder, {1.0 - 1.0 / n});
      return SendoElement(
          realize(sp, levels, [n, mcut](double a) { return mcut(n, a); }),
          ghost());
    };
    f.limit_ = SendoElement(realize(sp, uniform_ladder(ladder, {}),
                                    [lcut](double a) { return lcut(a); }),
                            ghost());
    return f;
  }

  if (id == "snp") {
    // The limit's cuts are [0, 1/a]; member n pushes every cut below level
    // 1/n out by n^2.  Sendograph distances shrink like 1/(n+1) while the
    // level-band bulk (hence every d_p) grows like n^{2-1/p}.
    f.space_ = GroundSpace::line();
    f.resolution_ = 1.0 / ladder;
    SpacePtr sp = f.space_;
    auto ghost = [] { return line_cut({ray_above(0.0)}); };
    auto mcut = [](int n, double a) -> CutSet {
      if (a <= 0.0) return line_cut({ray_above(0.0)});
      double bump = a <= 1.0 / n ? static_cast<double>(n) * n : 0.0;
      return line_cut({Interval::closed(0.0, 1.0 / a + bump)});
    };
    auto lcut = [](double a) -> CutSet {
      if (a <= 0.0) return line_cut({ray_above(0.0)});
      return line_cut({Interval::closed(0.0, 1.0 / a)});
    };
    f.member_cut_ = mcut;
    f.limit_cut_ = lcut;
    f.limit_strict_cut_ = [](double a) -> CutSet {
      if (a >= 1.0) return empty_line_cut();
      if (a <= 0.0) return line_cut({ray_above(0.0)});
      return line_cut({Interval::make(0.0, 1.0 / a, false, true)});
    };
    f.make_member_ = [sp, ladder, mcut, ghost](int n) -> FuzzyElem {
      auto levels = uniform_ladder(ladder, {1.0 / n});
      return SendoElement(
          realize(sp, levels, [n, mcut](double a) { return mcut(n, a); }),
          ghost());
    };
    f.limit_ = SendoElement(realize(sp, uniform_ladder(ladder, {}),
                                    [lcut](double a) { return lcut(a); }),
                            ghost());
    return f;
  }

  if (id == "nce") {
    // Two-point space.  Member n keeps the far point up to level 1/n; the
    // candidate limit keeps it only at level zero, which no plain fuzzy set
    // over {0,1} can do -- the ghost carries it.
    f.space_ = GroundSpace::finite({"0", "1"}, {{0.0, 1.0}, {1.0, 0.0}});
    SpacePtr sp = f.space_;
    auto both = [] { return CutSet(PointSet({Point(0), Point(1)})); };
    auto zero = [] { return CutSet(PointSet({Point(0)})); };
    f.make_member_ = [sp, both, zero](int n) -> FuzzyElem {
      if (n == 1) return StepFuzzySet(sp, {1.0}, {both()});
      return StepFuzzySet(sp, {1.0 / n, 1.0}, {both(), zero()});
    };
    f.member_cut_ = [both, zero](int n, double a) {
      return a <= 1.0 / n ? both() : zero();
    };
    f.limit_cut_ = [both, zero](double a) { return a <= 0.0 ? both() : zero(); };
    f.limit_strict_cut_ = [zero](double a) -> CutSet {
      return a >= 1.0 ? CutSet(PointSet()) : zero();
    };
    f.limit_ = SendoElement(StepFuzzySet(sp, {1.0}, {zero()}),
                            CutSet(PointSet({Point(1)})));
    return f;
  }

  if (id == "platform-fail") {
    // The limit drops its platform [0,1] exactly at level 1/2; member n
    // drops it at 1/2 - 1/n (for n <= 2 that is already at the bottom, so
    // the member collapses to the crisp origin).  Every level trajectory
    // dies except at the jump level itself.
    f.space_ = GroundSpace::line();
    SpacePtr sp = f.space_;
    auto unit = [] { return line_cut({Interval::closed(0.0, 1.0)}); };
    auto origin = [] { return line_cut({Interval::point(0.0)}); };
    f.make_member_ = [sp, unit, origin](int n) -> FuzzyElem {
      double q = 0.5 - 1.0 / n;
      if (q <= 0.0) return StepFuzzySet(sp, {1.0}, {origin()});
      return StepFuzzySet(sp, {q, 1.0}, {unit(), origin()});
    };
    f.member_cut_ = [unit, origin](int n, double a) {
      return (n >= 3 && a <= 0.5 - 1.0 / n) ? unit() : origin();
    };
    f.limit_cut_ = [unit, origin](double a) {
      return a <= 0.5 ? unit() : origin();
    };
    f.limit_strict_cut_ = [unit, origin](double a) -> CutSet {
      if (a >= 1.0) return empty_line_cut();
      return a < 0.5 ? unit() : origin();
    };
    f.limit_ = StepFuzzySet(sp, {0.5, 1.0}, {unit(), origin()});
    return f;
  }

  throw std::invalid_argument("unknown gallery family '" + id +
                              "' (available: remark45, snc, fnc, snp, nce, "
                              "platform-fail)");
}

SequenceFamily SequenceFamily::from_members(std::string id,
                                            std::vector<FuzzyElem> members,
                                            std::optional<FuzzyElem> limit) {
  if (members.empty())
    throw std::invalid_argument("sequence family: no members given");
  SequenceFamily f;
  f.id_ = std::move(id);
  f.space_ = elem_space(members.front());
  f.max_index_ = static_cast<int>(members.size());
  auto check = [&f](const FuzzyElem& e, const std::string& what) {
    if (!elem_space(e)->compatible(*f.space_))
      throw std::invalid_argument("sequence family: " + what +
                                  " lives over a different space");
    ValidationReport r =
        std::visit([](const auto& x) { return validate(x); }, e);
    if (!r.ok())
      throw std::invalid_argument("sequence family: " + what +
                                  " is invalid: " + r.problems.front());
  };
  for (std::size_t i = 0; i < members.size(); ++i)
    check(members[i], "member " + std::to_string(i + 1));
  if (limit) check(*limit, "candidate limit");
  f.stored_ = std::move(members);
  f.limit_ = std::move(limit);
  return f;
}

double SequenceFamily::metric_tolerance() const {
  return resolution_ == 0.0 ? kExactTolerance : 10.0 * resolution_;
}

FuzzyElem SequenceFamily::member(int n) const {
  if (n < 1)
    throw std::invalid_argument("sequence family: index must be >= 1");
  if (!stored_.empty()) {
    if (n > static_cast<int>(stored_.size()))
      throw std::invalid_argument(
          "sequence family: index beyond the stored members");
    return stored_[static_cast<std::size_t>(n) - 1];
  }
  return make_member_(n);
}

const FuzzyElem& SequenceFamily::limit() const {
  if (!limit_)
    throw std::invalid_argument("sequence family '" + id_ +
                                "' has no candidate limit");
  return *limit_;
}

CutSet SequenceFamily::member_cut(int n, double alpha) const {
  require_levels({alpha});
  if (member_cut_) {
    if (n < 1)
      throw std::invalid_argument("sequence family: index must be >= 1");
    return member_cut_(n, alpha);
  }
  return elem_cut(member(n), alpha);
}

CutSet SequenceFamily::limit_cut(double alpha) const {
  require_levels({alpha});
  if (limit_cut_) return limit_cut_(alpha);
  return elem_cut(limit(), alpha);
}

CutSet SequenceFamily::limit_strict_cut(double alpha) const {
  require_levels({alpha});
  if (limit_strict_cut_) return limit_strict_cut_(alpha);
  return elem_strict_cut(limit(), alpha);
}

CutOracle SequenceFamily::member_oracle(int n) const {
  if (member_cut_) {
    if (n < 1)
      throw std::invalid_argument("sequence family: index must be >= 1");
    auto f = member_cut_;
    return [f, n](double a) { return f(n, a); };
  }
  FuzzyElem e = member(n);
  return [e](double a) { return elem_cut(e, a); };
}

CutOracle SequenceFamily::limit_oracle() const {
  if (limit_cut_) {
    auto f = limit_cut_;
    return [f](double a) { return f(a); };
  }
  FuzzyElem e = limit();
  return [e](double a) { return elem_cut(e, a); };
}

bool SequenceFamily::limit_p0_at(double alpha) const {
  if (!(alpha > 0.0 && alpha < 1.0)) return false;
  CutSet c = limit_cut(alpha);
  CutSet s = limit_strict_cut(alpha);
  if (cut_empty(c) && cut_empty(s)) return false;
  if (cut_empty(c) || cut_empty(s)) return true;
  return cut_hausdorff(*space_, c, s) > ExtReal(0.0);
}

std::vector<LevelTrajectory> level_decomposition_test(
    const SequenceFamily& fam, const std::vector<double>& levels, int N) {
  if (N < 2)
    throw std::invalid_argument("level decomposition: need N >= 2");
  require_levels(levels);
  fam.limit();  // a candidate is required
  std::vector<LevelTrajectory> out;
  out.reserve(levels.size());
  for (double a : levels) {
    LevelTrajectory t;
    t.alpha = a;
    t.alpha_in_p0 = fam.limit_p0_at(a);
    CutSet target = fam.limit_cut(a);
    t.values.reserve(static_cast<std::size_t>(N));
    for (int n = 1; n <= N; ++n)
      t.values.push_back(set_gap(*fam.space(), fam.member_cut(n, a), target));
    t.verdict = tail_verdict(t.values, SequenceFamily::kExactTolerance);
    out.push_back(std::move(t));
  }
  return out;
}

std::vector<GammaResidual> gamma_residuals(const SequenceFamily& fam,
                                           const std::vector<double>& levels,
                                           int N) {
  if (N < 2)
    throw std::invalid_argument("set-inclusion residuals: need N >= 2");
  require_levels(levels);
  fam.limit();
  std::vector<GammaResidual> out;
  out.reserve(levels.size());
  for (double a : levels) {
    GammaResidual r;
    r.alpha = a;
    CutSet strict = fam.limit_strict_cut(a);
    CutSet full = fam.limit_cut(a);
    r.inner.reserve(static_cast<std::size_t>(N));
    r.outer.reserve(static_cast<std::size_t>(N));
    for (int n = 1; n <= N; ++n) {
      CutSet cn = fam.member_cut(n, a);
      r.inner.push_back(directed_gap(*fam.space(), strict, cn));
      r.outer.push_back(directed_gap(*fam.space(), cn, full));
    }
    r.inner_verdict = tail_verdict(r.inner, SequenceFamily::kExactTolerance);
    r.outer_verdict = tail_verdict(r.outer, SequenceFamily::kExactTolerance);
    out.push_back(std::move(r));
  }
  return out;
}

DecompositionReport decomposition_trajectory(const SequenceFamily& fam, int N,
                                             double p) {
  if (N < 2)
    throw std::invalid_argument("decomposition trajectory: need N >= 2");
  const FuzzyElem& u = fam.limit();
  DecompositionReport rep;
  rep.p = p;
  rep.h_send.name = "h_send";
  rep.h_end.name = "h_end";
  rep.h_zero.name = "h_zero";
  rep.d_inf.name = "d_inf";
  rep.d_p.name = "d_p";
  rep.rows.reserve(static_cast<std::size_t>(N));
  for (int n = 1; n <= N; ++n) {
    MetricReport m = metric_report(fam.member(n), u, {p});
    DecompositionRow row;
    row.n = n;
    row.h_send = m.h_send();
    row.h_end = m.h_end();
    row.h_zero = m.h_zero();
    row.d_inf = m.d_inf();
    row.d_p = m.dp.front().symmetric();
    row.bound_applicable = row.h_end < ExtReal(1.0);
    row.bound_holds = !row.bound_applicable ||
                      row.h_send <= row.h_end + row.h_zero + ExtReal(1e-12);
    if (!row.bound_holds) rep.bound_all_hold = false;
    rep.h_send.values.push_back(row.h_send);
    rep.h_end.values.push_back(row.h_end);
    rep.h_zero.values.push_back(row.h_zero);
    rep.d_inf.values.push_back(row.d_inf);
    rep.d_p.values.push_back(row.d_p);
    rep.rows.push_back(row);
  }
  double tol = fam.metric_tolerance();
  rep.h_send.verdict = tail_verdict(rep.h_send.values, tol);
  rep.h_end.verdict = tail_verdict(rep.h_end.values, tol);
  rep.h_zero.verdict = tail_verdict(rep.h_zero.values, tol);
  rep.d_inf.verdict = tail_verdict(rep.d_inf.values, tol);
  rep.d_p.verdict = tail_verdict(rep.d_p.values, tol);
  return rep;
}

EquiRcCurve equi_rc_modulus(const SequenceFamily& fam, int N,
                            const std::vector<double>& deltas) {
  if (N < 1)
    throw std::invalid_argument("equi-right-continuity: need N >= 1");
  for (double d : deltas)
    if (!(d > 0.0 && d <= 1.0))
      throw std::invalid_argument("deltas must lie in (0,1]");
  EquiRcCurve c;
  c.delta.reserve(deltas.size());
  c.modulus.reserve(deltas.size());
  c.witness.reserve(deltas.size());
  for (double d : deltas) {
    ExtReal best(0.0);
    int who = 1;
    for (int n = 1; n <= N; ++n) {
      ExtReal g =
          set_gap(*fam.space(), fam.member_cut(n, d), fam.member_cut(n, 0.0));
      if (g > best) {
        best = g;
        who = n;
      }
    }
    c.delta.push_back(d);
    c.modulus.push_back(best);
    c.witness.push_back(who);
  }
  return c;
}

std::optional<double> equi_rc_witness(const EquiRcCurve& curve, double eps) {
  std::vector<std::size_t> order(curve.delta.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&curve](std::size_t a, std::size_t b) {
    return curve.delta[a] < curve.delta[b];
  });
  for (std::size_t i : order)
    if (curve.modulus[i] < ExtReal(eps)) return curve.delta[i];
  return std::nullopt;
}

UnionLimitReport cauchy_union_limit(const SpacePtr& space,
                                    const std::vector<CutSet>& sets) {
  if (!space) throw std::invalid_argument("union limit: null space");
  if (sets.empty()) throw std::domain_error("union limit: no sets given");
  std::vector<CutSet> prefix;
  prefix.reserve(sets.size());
  for (std::size_t i = 0; i < sets.size(); ++i) {
    if (cut_empty(sets[i]))
      throw std::domain_error("union limit: set " + std::to_string(i + 1) +
                              " is empty");
    CutSet c = cut_closure(sets[i]);
    prefix.push_back(prefix.empty() ? std::move(c)
                                    : cut_union(prefix.back(), c));
  }
  UnionLimitReport rep;
  rep.limit = prefix.back();
  rep.gap.reserve(prefix.size());
  for (const CutSet& d : prefix)
    rep.gap.push_back(cut_hausdorff(*space, d, prefix.back()));
  rep.verdict = tail_verdict(rep.gap, SequenceFamily::kExactTolerance);
  return rep;
}

SequenceDiagnostics run_sequence_diagnostics(const SequenceFamily& fam, int N,
                                             std::vector<double> levels,
                                             std::vector<double> deltas,
                                             double p) {
  if (levels.empty())
    for (int i = 1; i <= 9; ++i) levels.push_back(i / 10.0);
  if (deltas.empty())
    deltas = {0.001, 0.002, 0.005, 0.01, 0.02, 0.05, 0.1, 0.25};
  SequenceDiagnostics d;
  d.family_id = fam.id();
  d.N = N;
  if (fam.has_limit()) {
    d.decomposition = decomposition_trajectory(fam, N, p);
    d.levels = level_decomposition_test(fam, levels, N);
    d.gamma = gamma_residuals(fam, levels, N);
  }
  d.equi_rc = equi_rc_modulus(fam, N, deltas);
  return d;
}

}  // namespace fuzz
