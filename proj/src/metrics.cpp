#include "fuzzmet/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <queue>
#include <stdexcept>

namespace fuzz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const SpacePtr& space_of(const FuzzyElem& e) {
  if (std::holds_alternative<StepFuzzySet>(e))
    return std::get<StepFuzzySet>(e).space();
  return std::get<SendoElement>(e).base().space();
}

ValidationReport validate_elem(const FuzzyElem& e) {
  return std::visit([](const auto& x) { return validate(x); }, e);
}

}  // namespace

const SpacePtr& elem_space(const FuzzyElem& e) { return space_of(e); }

CutSet elem_cut(const FuzzyElem& e, double alpha) {
  return std::visit([alpha](const auto& x) { return x.cut(alpha); }, e);
}

ValidationReport validate(const FuzzyElem& e) { return validate_elem(e); }

namespace {

struct PreparedPair {
  LevelView a, b;
};

PreparedPair prepare(const FuzzyElem& u, const FuzzyElem& v) {
  if (!space_of(u)->compatible(*space_of(v)))
    throw std::invalid_argument("metric: operands live on different spaces");
  ValidationReport ru = validate_elem(u);
  if (!ru.ok())
    throw std::invalid_argument("metric: left operand invalid: " +
                                ru.problems.front());
  ValidationReport rv = validate_elem(v);
  if (!rv.ok())
    throw std::invalid_argument("metric: right operand invalid: " +
                                rv.problems.front());
  return PreparedPair{level_view(u), level_view(v)};
}

// ---- discrete backend (finite tables, point clouds) ----

struct HeightedPoints {
  std::vector<Point> pts;
  std::vector<double> h;
};

HeightedPoints heights(const LevelView& v) {
  HeightedPoints out;
  for (const Point& p : std::get<PointSet>(v.cuts[0]).pts) {
    double h = 0.0;
    for (std::size_t i = v.levels.size(); i-- > 1;)
      if (cut_contains(v.cuts[i], p)) {
        h = v.levels[i];
        break;
      }
    out.pts.push_back(p);
    out.h.push_back(h);
  }
  return out;
}

std::pair<ExtReal, ExtReal> send_end_discrete(const GroundSpace& space,
                                              const HeightedPoints& A,
                                              const HeightedPoints& B) {
  double send = 0.0, end = 0.0;
  for (std::size_t i = 0; i < A.pts.size(); ++i) {
    double inner = kInf;
    for (std::size_t j = 0; j < B.pts.size(); ++j) {
      double c = space.distance(A.pts[i], B.pts[j]) +
                 std::max(0.0, A.h[i] - B.h[j]);
      inner = std::min(inner, c);
    }
    send = std::max(send, inner);
    end = std::max(end, std::min(A.h[i], inner));
  }
  return {ExtReal(send), ExtReal(end)};
}

// ---- real-line backend ----
//
// For a fixed target side B and a height t, the inner function
//   env_t(x) = inf over y in supp B of d(x,y) + max(0, t - B(y))
// is the lower envelope of one cost per B part: constant pen_q on the part,
// slope +1 to its right, slope -1 to its left.  Between consecutive part
// endpoints the envelope is min(const, x + r, -x + s), so its sup over any
// interval is attained at segment ends or at the single rising/falling
// crossing.  Unbounded sides converge to the smallest penalty among parts
// that are unbounded on that side.
class LineEnvelope {
 public:
  explicit LineEnvelope(const LevelView& b) {
    for (std::size_t j = 0; j < b.levels.size(); ++j)
      for (const Interval& p : std::get<IntervalUnion>(b.cuts[j]).parts())
        parts_.push_back(Part{p.lo, p.hi, b.levels[j], 0, 0});
    for (const Part& p : parts_) {
      if (std::isfinite(p.lo)) events_.push_back(p.lo);
      if (std::isfinite(p.hi)) events_.push_back(p.hi);
    }
    std::sort(events_.begin(), events_.end());
    events_.erase(std::unique(events_.begin(), events_.end()), events_.end());
    const int E = static_cast<int>(events_.size());
    start_at_.assign(E + 1, {});
    hi_at_.assign(E, {});
    lo_at_.assign(E, {});
    for (int i = 0; i < static_cast<int>(parts_.size()); ++i) {
      Part& p = parts_[i];
      p.li = std::isinf(p.lo) ? 0 : index_of(p.lo) + 1;
      p.ri = std::isinf(p.hi) ? E : index_of(p.hi);
      start_at_[p.li].push_back(i);
      if (std::isfinite(p.hi)) hi_at_[index_of(p.hi)].push_back(i);
      if (std::isfinite(p.lo)) lo_at_[index_of(p.lo)].push_back(i);
      if (std::isinf(p.lo)) left_unbounded_.push_back(i);
      if (std::isinf(p.hi)) right_unbounded_.push_back(i);
    }
  }

  // sup of env_t over the given union of intervals (may be +inf)
  double sup_env(const IntervalUnion& cut, double t) {
    const int E = static_cast<int>(events_.size());
    const int P = static_cast<int>(parts_.size());
    pen_.resize(P);
    for (int i = 0; i < P; ++i)
      pen_[i] = std::max(0.0, t - parts_[i].level);
    rise_.assign(E, kInf);
    double run = kInf;
    for (int e = 0; e < E; ++e) {
      for (int i : hi_at_[e]) run = std::min(run, pen_[i] - events_[e]);
      rise_[e] = run;
    }
    fall_.assign(E, kInf);
    run = kInf;
    for (int e = E; e-- > 0;) {
      for (int i : lo_at_[e]) run = std::min(run, pen_[i] + events_[e]);
      fall_[e] = run;
    }
    inside_.assign(E + 1, kInf);
    using Entry = std::pair<double, int>;  // (penalty, last segment)
    std::priority_queue<Entry, std::vector<Entry>, std::greater<Entry>> heap;
    for (int q = 0; q <= E; ++q) {
      for (int i : start_at_[q]) heap.emplace(pen_[i], parts_[i].ri);
      while (!heap.empty() && heap.top().second < q) heap.pop();
      if (!heap.empty()) inside_[q] = heap.top().first;
    }
    double left_lim = kInf, right_lim = kInf;
    for (int i : left_unbounded_) left_lim = std::min(left_lim, pen_[i]);
    for (int i : right_unbounded_) right_lim = std::min(right_lim, pen_[i]);

    double best = 0.0;
    for (const Interval& part : cut.parts()) {
      if (std::isinf(part.lo)) best = std::max(best, left_lim);
      if (std::isinf(part.hi)) best = std::max(best, right_lim);
      int qL = static_cast<int>(
          std::upper_bound(events_.begin(), events_.end(), part.lo) -
          events_.begin());
      int qR = static_cast<int>(
          std::upper_bound(events_.begin(), events_.end(), part.hi) -
          events_.begin());
      for (int q = qL; q <= qR; ++q) {
        double a = std::max(part.lo, q == 0 ? -kInf : events_[q - 1]);
        double b = std::min(part.hi, q == E ? kInf : events_[q]);
        double c = inside_[q];
        double r = q >= 1 ? rise_[q - 1] : kInf;
        double s = q <= E - 1 ? fall_[q] : kInf;
        auto val = [&](double x) {
          double v = c;
          if (std::isfinite(r)) v = std::min(v, x + r);
          if (std::isfinite(s)) v = std::min(v, s - x);
          return v;
        };
        if (std::isfinite(a)) best = std::max(best, val(a));
        if (std::isfinite(b)) best = std::max(best, val(b));
        if (std::isfinite(r) && std::isfinite(s)) {
          double cross = (s - r) / 2.0;
          if (cross >= a && cross <= b) best = std::max(best, val(cross));
        }
      }
    }
    return best;
  }

 private:
  struct Part {
    double lo, hi, level;
    int li, ri;  // first / last segment index fully covered
  };

  int index_of(double x) const {
    return static_cast<int>(
        std::lower_bound(events_.begin(), events_.end(), x) - events_.begin());
  }

  std::vector<Part> parts_;
  std::vector<double> events_;
  std::vector<std::vector<int>> start_at_, hi_at_, lo_at_;
  std::vector<int> left_unbounded_, right_unbounded_;
  std::vector<double> pen_, rise_, fall_, inside_;
};

std::pair<ExtReal, ExtReal> send_end_line(const LevelView& A,
                                          const LevelView& B) {
  LineEnvelope env(B);
  double send = 0.0, end = 0.0;
  for (std::size_t i = 0; i < A.levels.size(); ++i) {
    double t = A.levels[i];
    double v = env.sup_env(std::get<IntervalUnion>(A.cuts[i]), t);
    send = std::max(send, v);
    if (i > 0) end = std::max(end, std::min(t, v));
  }
  return {ExtReal(send), ExtReal(end)};
}

std::pair<ExtReal, ExtReal> send_end_directed(const LevelView& a,
                                              const LevelView& b) {
  if (a.space->kind() == SpaceKind::line) return send_end_line(a, b);
  HeightedPoints ha = heights(a), hb = heights(b);
  return send_end_discrete(*a.space, ha, hb);
}

const CutSet& view_cut(const LevelView& v, double alpha) {  // alpha in (0,1]
  auto it = std::lower_bound(v.levels.begin() + 1, v.levels.end(), alpha);
  return v.cuts[static_cast<std::size_t>(it - v.levels.begin())];
}

std::vector<double> merged_levels(const LevelView& a, const LevelView& b) {
  std::vector<double> m(a.levels.begin() + 1, a.levels.end());
  m.insert(m.end(), b.levels.begin() + 1, b.levels.end());
  std::sort(m.begin(), m.end());
  m.erase(std::unique(m.begin(), m.end()), m.end());
  return m;
}

Directed sup_impl(const PreparedPair& pp) {
  const GroundSpace& sp = *pp.a.space;
  Directed d;
  d.uv = cut_directed_hausdorff(sp, pp.a.cuts[0], pp.b.cuts[0]);
  d.vu = cut_directed_hausdorff(sp, pp.b.cuts[0], pp.a.cuts[0]);
  for (double l : merged_levels(pp.a, pp.b)) {
    const CutSet& cu = view_cut(pp.a, l);
    const CutSet& cv = view_cut(pp.b, l);
    d.uv = ext_max(d.uv, cut_directed_hausdorff(sp, cu, cv));
    d.vu = ext_max(d.vu, cut_directed_hausdorff(sp, cv, cu));
  }
  return d;
}

Directed dp_impl(const PreparedPair& pp, double p) {
  if (!(p >= 1.0))
    throw std::invalid_argument("dp_metric: exponent p must be >= 1");
  const GroundSpace& sp = *pp.a.space;
  double sum_uv = 0.0, sum_vu = 0.0;
  bool inf_uv = false, inf_vu = false;
  double prev = 0.0;
  for (double l : merged_levels(pp.a, pp.b)) {
    double width = l - prev;
    prev = l;
    const CutSet& cu = view_cut(pp.a, l);
    const CutSet& cv = view_cut(pp.b, l);
    ExtReal huv = cut_directed_hausdorff(sp, cu, cv);
    ExtReal hvu = cut_directed_hausdorff(sp, cv, cu);
    if (huv.finite())
      sum_uv += std::pow(huv.value(), p) * width;
    else
      inf_uv = true;
    if (hvu.finite())
      sum_vu += std::pow(hvu.value(), p) * width;
    else
      inf_vu = true;
  }
  Directed d;
  d.uv = inf_uv ? ExtReal::infinity() : ExtReal(std::pow(sum_uv, 1.0 / p));
  d.vu = inf_vu ? ExtReal::infinity() : ExtReal(std::pow(sum_vu, 1.0 / p));
  return d;
}

Directed zero_impl(const PreparedPair& pp) {
  const GroundSpace& sp = *pp.a.space;
  Directed d;
  d.uv = cut_directed_hausdorff(sp, pp.a.cuts[0], pp.b.cuts[0]);
  d.vu = cut_directed_hausdorff(sp, pp.b.cuts[0], pp.a.cuts[0]);
  return d;
}

struct SendEnd {
  Directed send, end;
};

SendEnd send_end_impl(const PreparedPair& pp) {
  auto [suv, euv] = send_end_directed(pp.a, pp.b);
  auto [svu, evu] = send_end_directed(pp.b, pp.a);
  return SendEnd{Directed{suv, svu}, Directed{euv, evu}};
}

}  // namespace

LevelView level_view(const FuzzyElem& e) {
  return std::visit([](const auto& x) { return level_view(x); }, e);
}

ExtReal send_metric(const FuzzyElem& u, const FuzzyElem& v) {
  return send_parts(u, v).symmetric();
}

Directed send_parts(const FuzzyElem& u, const FuzzyElem& v) {
  return send_end_impl(prepare(u, v)).send;
}

ExtReal end_metric(const FuzzyElem& u, const FuzzyElem& v) {
  return end_parts(u, v).symmetric();
}

Directed end_parts(const FuzzyElem& u, const FuzzyElem& v) {
  return send_end_impl(prepare(u, v)).end;
}

ExtReal sup_metric(const FuzzyElem& u, const FuzzyElem& v) {
  return sup_parts(u, v).symmetric();
}

Directed sup_parts(const FuzzyElem& u, const FuzzyElem& v) {
  return sup_impl(prepare(u, v));
}

ExtReal dp_metric(const FuzzyElem& u, const FuzzyElem& v, double p) {
  return dp_parts(u, v, p).symmetric();
}

Directed dp_parts(const FuzzyElem& u, const FuzzyElem& v, double p) {
  return dp_impl(prepare(u, v), p);
}

ExtReal zero_metric(const FuzzyElem& u, const FuzzyElem& v) {
  return zero_parts(u, v).symmetric();
}

Directed zero_parts(const FuzzyElem& u, const FuzzyElem& v) {
  return zero_impl(prepare(u, v));
}

MetricReport metric_report(const FuzzyElem& u, const FuzzyElem& v,
                           const std::vector<double>& ps) {
  PreparedPair pp = prepare(u, v);
  MetricReport r;
  SendEnd se = send_end_impl(pp);
  r.send = se.send;
  r.end = se.end;
  r.sup = sup_impl(pp);
  r.zero = zero_impl(pp);
  r.ps = ps;
  for (double p : ps) r.dp.push_back(dp_impl(pp, p));
  return r;
}

StepFuzzySet step_from_oracle(SpacePtr space, const CutOracle& oracle, int m) {
  if (m < 2) throw std::invalid_argument("step_from_oracle: need m >= 2");
  std::vector<double> thresholds;
  std::vector<CutSet> cuts;
  thresholds.reserve(m);
  cuts.reserve(m);
  for (int i = 1; i <= m; ++i) {
    double a = static_cast<double>(i) / m;
    thresholds.push_back(a);
    cuts.push_back(oracle(a));
  }
  return StepFuzzySet(std::move(space), std::move(thresholds), std::move(cuts));
}

DpEstimate dp_via_oracle(SpacePtr space, const CutOracle& u, const CutOracle& v,
                         double p, int m) {
  StepFuzzySet um = step_from_oracle(space, u, m);
  StepFuzzySet vm = step_from_oracle(space, v, m);
  StepFuzzySet u2 = step_from_oracle(space, u, 2 * m);
  StepFuzzySet v2 = step_from_oracle(space, v, 2 * m);
  DpEstimate e;
  e.value = dp_metric(um, vm, p);
  e.refined = dp_metric(u2, v2, p);
  if (!e.value.finite() && !e.refined.finite())
    e.error = ExtReal(0.0);
  else if (e.value.finite() && e.refined.finite())
    e.error = ExtReal(std::fabs(e.value.value() - e.refined.value()));
  else
    e.error = ExtReal::infinity();
  return e;
}

AenReport aen_bound_check(const FuzzyElem& u, const FuzzyElem& v, double alpha,
                          double beta, double eps) {
  if (std::isnan(alpha) || std::isnan(beta) || alpha < 0.0 || alpha > 1.0 ||
      beta < 0.0 || beta > 1.0)
    throw std::invalid_argument("aen_bound_check: levels must lie in [0,1]");
  if (!(eps > 0.0) || !(alpha - beta >= eps))
    throw std::invalid_argument(
        "aen_bound_check: requires alpha - beta >= eps > 0");
  PreparedPair pp = prepare(u, v);
  AenReport r;
  r.alpha = alpha;
  r.beta = beta;
  r.eps = eps;
  r.end_directed = send_end_directed(pp.a, pp.b).second;
  r.hypothesis_holds = r.end_directed < ExtReal(eps);
  const CutSet& ca = view_cut(pp.a, alpha);
  const CutSet& cb = beta > 0.0 ? view_cut(pp.b, beta) : pp.b.cuts[0];
  r.cut_directed = cut_directed_hausdorff(*pp.a.space, ca, cb);
  r.conclusion_holds = r.cut_directed <= r.end_directed;
  return r;
}

}  // namespace fuzz
