#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "fuzzmet/cut_set.hpp"

namespace fuzz {

struct ValidationReport {
  std::vector<std::string> problems;  // violated invariants; empty = valid
  bool usc = false;    // every level cut is closed
  bool normal = false;  // the 1-cut (or value-1 region) is nonempty
  bool uscg = false;   // every positive-level cut is bounded
  bool uscb = false;   // the closed support is bounded
  bool ok() const { return problems.empty(); }
};

// Fuzzy set with finitely many membership values, stored by its ladder of
// level cuts: the alpha-cut equals cuts[i] for alpha in (thresholds[i-1],
// thresholds[i]] (with thresholds[-1] = 0), and the 0-cut is the closure of
// cuts[0]'s union.  The constructor checks structure (shape, threshold order,
// backend match) and merges bands with identical cuts; semantic requirements
// (nesting, closed cuts, nonempty top cut) are reported by validate() so that
// malformed documents can still be loaded and diagnosed.
class StepFuzzySet {
 public:
  StepFuzzySet(SpacePtr space, std::vector<double> thresholds,
               std::vector<CutSet> cuts);

  const SpacePtr& space() const { return space_; }
  const std::vector<double>& thresholds() const { return thresholds_; }
  const std::vector<CutSet>& cuts() const { return cuts_; }

  CutSet cut(double alpha) const;         // {u >= alpha}; alpha=0 gives support
  CutSet strict_cut(double alpha) const;  // {u > alpha}
  CutSet support() const;                 // closure of the union of all cuts
  double membership(const Point& x) const;

  friend bool operator==(const StepFuzzySet& a, const StepFuzzySet& b);

 private:
  SpacePtr space_;
  std::vector<double> thresholds_;
  std::vector<CutSet> cuts_;
};

// Piecewise-constant membership on the real line given directly by disjoint
// (region, value) pieces.  Unlike StepFuzzySet the regions need not be closed
// or nested, so this can hold non-upper-semicontinuous sets; only cut,
// strict_cut and the level classifiers accept it.
class BandFuzzySet {
 public:
  BandFuzzySet(SpacePtr space,
               std::vector<std::pair<IntervalUnion, double>> pieces);

  const SpacePtr& space() const { return space_; }
  const std::vector<std::pair<IntervalUnion, double>>& pieces() const {
    return pieces_;
  }

  IntervalUnion cut(double alpha) const;
  IntervalUnion strict_cut(double alpha) const;
  double membership(double x) const;

 private:
  SpacePtr space_;
  std::vector<std::pair<IntervalUnion, double>> pieces_;  // ascending values
};

// A fuzzy set together with extra closed mass pinned at level zero: the
// level-0 set is support(base) union ghost, while every positive cut comes
// from base.  Ghost mass is invisible to membership values but participates
// in the level-0 geometry.
class SendoElement {
 public:
  SendoElement(StepFuzzySet base, CutSet ghost);

  const StepFuzzySet& base() const { return base_; }
  const CutSet& ghost() const { return ghost_; }

  CutSet cut(double alpha) const;  // alpha=0 includes the ghost
  friend bool operator==(const SendoElement& a, const SendoElement& b);

 private:
  StepFuzzySet base_;
  CutSet ghost_;
};

using AnyFuzzySet = std::variant<StepFuzzySet, BandFuzzySet, SendoElement>;

ValidationReport validate(const StepFuzzySet& u);
ValidationReport validate(const BandFuzzySet& u);
ValidationReport validate(const SendoElement& v);
ValidationReport validate(const AnyFuzzySet& s);

SendoElement arrow_forward(const StepFuzzySet& u);   // ghost = empty
StepFuzzySet arrow_back(const SendoElement& v);      // drop the ghost
SendoElement v_prime(const SendoElement& v);         // forward(back(v))
// True when the ghost adds nothing beyond the closed support, i.e. v is the
// image of a plain fuzzy set under arrow_forward.
bool is_arrow_image(const SendoElement& v);

// Where the level-cut family changes, as subsets of the open unit interval
// of levels.  D: the cut escapes the closure of the strict cut; P: the
// closure of the strict cut is a proper subset of the cut; F: the two
// differ at all; P0: the cut family is discontinuous (in Hausdorff distance)
// at that level.
struct LevelSetReport {
  IntervalUnion D, P, P0, F;
};

LevelSetReport classify_levels(const StepFuzzySet& u);
LevelSetReport classify_levels(const BandFuzzySet& u);

// Uniform ladder view used by the metric evaluators: levels[0] = 0 with the
// full level-0 set (support plus ghost), then the positive thresholds with
// their cuts.
struct LevelView {
  SpacePtr space;
  std::vector<double> levels;
  std::vector<CutSet> cuts;
};

LevelView level_view(const StepFuzzySet& u);
LevelView level_view(const SendoElement& v);

}  // namespace fuzz
