#include "fuzzmet/fuzzy_set.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace fuzz {

namespace {

CutSet empty_cut(const GroundSpace& space) {
  if (space.kind() == SpaceKind::line) return CutSet(IntervalUnion());
  return CutSet(PointSet());
}

void check_backend(const GroundSpace& space, const CutSet& c,
                   const char* what) {
  if (space.kind() == SpaceKind::line) {
    if (!std::holds_alternative<IntervalUnion>(c))
      throw std::invalid_argument(std::string(what) +
                                  ": real-line sets need interval cuts");
    return;
  }
  if (!std::holds_alternative<PointSet>(c))
    throw std::invalid_argument(std::string(what) +
                                ": this space needs point-set cuts");
  for (const Point& p : std::get<PointSet>(c).pts)
    if (!space.admits(p))
      throw std::invalid_argument(std::string(what) +
                                  ": cut point not in the space");
}

void check_level(double alpha) {
  if (std::isnan(alpha) || alpha < 0.0 || alpha > 1.0)
    throw std::invalid_argument("level must lie in [0,1]");
}

}  // namespace

StepFuzzySet::StepFuzzySet(SpacePtr space, std::vector<double> thresholds,
                           std::vector<CutSet> cuts)
    : space_(std::move(space)) {
  if (!space_) throw std::invalid_argument("fuzzy set: null space");
  if (thresholds.empty() || thresholds.size() != cuts.size())
    throw std::invalid_argument("fuzzy set: need one cut per threshold");
  for (std::size_t i = 0; i < thresholds.size(); ++i) {
    double a = thresholds[i];
    if (std::isnan(a) || a <= 0.0 || a > 1.0)
      throw std::invalid_argument("fuzzy set: thresholds must lie in (0,1]");
    if (i && thresholds[i - 1] >= a)
      throw std::invalid_argument(
          "fuzzy set: thresholds must be strictly increasing");
  }
  if (thresholds.back() != 1.0)
    throw std::invalid_argument("fuzzy set: top threshold must be 1");
  for (const CutSet& c : cuts) check_backend(*space_, c, "fuzzy set");
  // Bands with identical cuts collapse into one.
  for (std::size_t i = 0; i < cuts.size(); ++i) {
    if (i + 1 < cuts.size() && cuts[i] == cuts[i + 1]) continue;
    thresholds_.push_back(thresholds[i]);
    cuts_.push_back(std::move(cuts[i]));
  }
}

CutSet StepFuzzySet::support() const {
  if (space_->kind() == SpaceKind::line) {
    std::vector<Interval> parts;
    for (const CutSet& c : cuts_) {
      const auto& u = std::get<IntervalUnion>(c);
      parts.insert(parts.end(), u.parts().begin(), u.parts().end());
    }
    return IntervalUnion(std::move(parts)).closure();
  }
  std::vector<Point> pts;
  for (const CutSet& c : cuts_) {
    const auto& s = std::get<PointSet>(c);
    pts.insert(pts.end(), s.pts.begin(), s.pts.end());
  }
  return PointSet(std::move(pts));
}

CutSet StepFuzzySet::cut(double alpha) const {
  check_level(alpha);
  if (alpha == 0.0) return support();
  auto it = std::lower_bound(thresholds_.begin(), thresholds_.end(), alpha);
  return cuts_[static_cast<std::size_t>(it - thresholds_.begin())];
}

CutSet StepFuzzySet::strict_cut(double alpha) const {
  check_level(alpha);
  auto it = std::upper_bound(thresholds_.begin(), thresholds_.end(), alpha);
  if (it == thresholds_.end()) return empty_cut(*space_);
  return cuts_[static_cast<std::size_t>(it - thresholds_.begin())];
}

double StepFuzzySet::membership(const Point& x) const {
  for (std::size_t i = cuts_.size(); i-- > 0;)
    if (cut_contains(cuts_[i], x)) return thresholds_[i];
  return 0.0;
}

bool operator==(const StepFuzzySet& a, const StepFuzzySet& b) {
  return a.space_->compatible(*b.space_) && a.thresholds_ == b.thresholds_ &&
         a.cuts_ == b.cuts_;
}

BandFuzzySet::BandFuzzySet(
    SpacePtr space, std::vector<std::pair<IntervalUnion, double>> pieces)
    : space_(std::move(space)) {
  if (!space_ || space_->kind() != SpaceKind::line)
    throw std::invalid_argument("band fuzzy set: real-line space required");
  for (auto& [region, v] : pieces) {
    if (std::isnan(v) || v < 0.0 || v > 1.0)
      throw std::invalid_argument(
          "band fuzzy set: piece values must lie in [0,1]");
    if (v == 0.0 || region.empty()) continue;  // contributes nothing
    pieces_.emplace_back(std::move(region), v);
  }
  std::sort(pieces_.begin(), pieces_.end(),
            [](const auto& a, const auto& b) { return a.second < b.second; });
  std::vector<std::pair<IntervalUnion, double>> merged;
  for (auto& [region, v] : pieces_) {
    if (!merged.empty() && merged.back().second == v)
      merged.back().first = union_of(merged.back().first, region);
    else
      merged.emplace_back(std::move(region), v);
  }
  pieces_ = std::move(merged);
}

IntervalUnion BandFuzzySet::cut(double alpha) const {
  check_level(alpha);
  std::vector<Interval> parts;
  for (const auto& [region, v] : pieces_) {
    if (alpha > 0.0 && v < alpha) continue;
    parts.insert(parts.end(), region.parts().begin(), region.parts().end());
  }
  IntervalUnion u(std::move(parts));
  return alpha == 0.0 ? u.closure() : u;
}

IntervalUnion BandFuzzySet::strict_cut(double alpha) const {
  check_level(alpha);
  std::vector<Interval> parts;
  for (const auto& [region, v] : pieces_) {
    if (v <= alpha) continue;
    parts.insert(parts.end(), region.parts().begin(), region.parts().end());
  }
  return IntervalUnion(std::move(parts));
}

double BandFuzzySet::membership(double x) const {
  double best = 0.0;
  for (const auto& [region, v] : pieces_)
    if (region.contains(x)) best = std::max(best, v);
  return best;
}

SendoElement::SendoElement(StepFuzzySet base, CutSet ghost)
    : base_(std::move(base)), ghost_(std::move(ghost)) {
  check_backend(*base_.space(), ghost_, "ghost");
}

CutSet SendoElement::cut(double alpha) const {
  check_level(alpha);
  if (alpha > 0.0) return base_.cut(alpha);
  return cut_union(base_.support(), ghost_);
}

bool operator==(const SendoElement& a, const SendoElement& b) {
  return a.base_ == b.base_ && a.ghost_ == b.ghost_;
}

ValidationReport validate(const StepFuzzySet& u) {
  ValidationReport r;
  const auto& ts = u.thresholds();
  const auto& cs = u.cuts();
  bool closed = true, bounded_all = true;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (!cut_closed(cs[i])) {
      closed = false;
      r.problems.push_back("cut at level " + format_double(ts[i]) +
                           " is not closed (representation clause (i))");
    }
    if (!cut_bounded(cs[i])) bounded_all = false;
    if (i + 1 < cs.size() && !cut_subset(cs[i + 1], cs[i]))
      r.problems.push_back("cuts not nested: level " + format_double(ts[i + 1]) +
                           " escapes level " + format_double(ts[i]) +
                           " (representation clause (ii))");
  }
  r.normal = !cut_empty(cs.back());
  if (!r.normal) r.problems.push_back("top cut is empty (set never reaches 1)");
  r.usc = closed;
  r.uscg = bounded_all;
  r.uscb = cut_bounded(u.support());
  return r;
}

ValidationReport validate(const BandFuzzySet& u) {
  ValidationReport r;
  const auto& ps = u.pieces();
  for (std::size_t i = 0; i < ps.size(); ++i)
    for (std::size_t j = i + 1; j < ps.size(); ++j)
      if (!intersection_of(ps[i].first, ps[j].first).empty())
        r.problems.push_back("pieces at values " +
                             format_double(ps[i].second) + " and " +
                             format_double(ps[j].second) + " overlap");
  r.normal = !u.cut(1.0).empty();
  r.usc = true;
  r.uscg = true;
  for (const auto& [region, v] : ps) {
    IntervalUnion c = u.cut(v);
    if (!c.is_closed()) r.usc = false;
    if (!c.bounded()) r.uscg = false;
  }
  r.uscb = u.cut(0.0).bounded();
  return r;
}

ValidationReport validate(const SendoElement& v) {
  ValidationReport r = validate(v.base());
  if (!cut_closed(v.ghost()))
    r.problems.push_back("ghost set is not closed");
  r.usc = r.usc && cut_closed(v.ghost());
  r.uscb = r.uscb && cut_bounded(v.ghost());
  return r;
}

ValidationReport validate(const AnyFuzzySet& s) {
  return std::visit([](const auto& x) { return validate(x); }, s);
}

SendoElement arrow_forward(const StepFuzzySet& u) {
  CutSet ghost = empty_cut(*u.space());
  return SendoElement(u, std::move(ghost));
}

StepFuzzySet arrow_back(const SendoElement& v) { return v.base(); }

SendoElement v_prime(const SendoElement& v) {
  return arrow_forward(arrow_back(v));
}

bool is_arrow_image(const SendoElement& v) {
  if (cut_empty(v.ghost())) return true;
  return cut_subset(v.ghost(), v.base().support());
}

namespace {

template <typename CutFn, typename StrictFn>
LevelSetReport classify_impl(const GroundSpace& space,
                             std::vector<double> criticals, CutFn cut_fn,
                             StrictFn strict_fn) {
  std::vector<Interval> D, P, P0, F;
  // Cuts are constant on the open bands between critical levels, so one
  // representative per band plus the critical levels themselves decide the
  // classifiers everywhere.
  auto segment = [&](double rep, bool is_point, double lo, double hi) {
    CutSet c = cut_fn(rep);
    CutSet s = strict_fn(rep);
    CutSet scl = cut_closure(s);
    bool in_f = !cut_equal(scl, c);
    bool in_d = !cut_subset(c, scl);
    bool in_p = in_f && cut_subset(scl, c);
    bool in_p0 = false;
    if (is_point) {
      // Hausdorff discontinuity across the level: compare the cut with the
      // constant cut just above (which is the strict cut).
      bool ce = cut_empty(c), se = cut_empty(s);
      if (ce != se)
        in_p0 = true;
      else if (!ce)
        in_p0 = cut_hausdorff(space, c, s) > ExtReal(0.0);
    }
    auto add = [&](std::vector<Interval>& out, bool in) {
      if (in)
        out.push_back(is_point ? Interval::point(rep)
                               : Interval::make(lo, hi, true, true));
    };
    add(D, in_d);
    add(P, in_p);
    add(P0, in_p0);
    add(F, in_f);
  };
  double prev = 0.0;
  for (double c : criticals) {
    if (c > prev) segment((prev + c) / 2.0, false, prev, c);
    segment(c, true, c, c);
    prev = c;
  }
  if (prev < 1.0) segment((prev + 1.0) / 2.0, false, prev, 1.0);
  return LevelSetReport{IntervalUnion(std::move(D)), IntervalUnion(std::move(P)),
                        IntervalUnion(std::move(P0)),
                        IntervalUnion(std::move(F))};
}

}  // namespace

LevelSetReport classify_levels(const StepFuzzySet& u) {
  std::vector<double> criticals;
  for (double a : u.thresholds())
    if (a < 1.0) criticals.push_back(a);
  return classify_impl(
      *u.space(), std::move(criticals),
      [&](double a) { return u.cut(a); },
      [&](double a) { return u.strict_cut(a); });
}

LevelSetReport classify_levels(const BandFuzzySet& u) {
  std::vector<double> criticals;
  for (const auto& [region, v] : u.pieces())
    if (v < 1.0) criticals.push_back(v);
  std::sort(criticals.begin(), criticals.end());
  return classify_impl(
      *u.space(), std::move(criticals),
      [&](double a) { return CutSet(u.cut(a)); },
      [&](double a) { return CutSet(u.strict_cut(a)); });
}

LevelView level_view(const StepFuzzySet& u) {
  LevelView v;
  v.space = u.space();
  v.levels.push_back(0.0);
  v.cuts.push_back(u.support());
  for (std::size_t i = 0; i < u.thresholds().size(); ++i) {
    v.levels.push_back(u.thresholds()[i]);
    v.cuts.push_back(u.cuts()[i]);
  }
  return v;
}

LevelView level_view(const SendoElement& s) {
  LevelView v = level_view(s.base());
  v.cuts[0] = s.cut(0.0);
  return v;
}

}  // namespace fuzz
