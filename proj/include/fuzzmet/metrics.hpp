#pragma once

#include <functional>
#include <variant>
#include <vector>

#include "fuzzmet/fuzzy_set.hpp"

namespace fuzz {

// Metric operands: plain fuzzy sets or fuzzy sets with level-zero ghost mass.
using FuzzyElem = std::variant<StepFuzzySet, SendoElement>;

LevelView level_view(const FuzzyElem& e);
const SpacePtr& elem_space(const FuzzyElem& e);
CutSet elem_cut(const FuzzyElem& e, double alpha);  // alpha=0 includes ghosts
ValidationReport validate(const FuzzyElem& e);

struct Directed {
  ExtReal uv{0.0}, vu{0.0};
  ExtReal symmetric() const { return ext_max(uv, vu); }
};

// Hausdorff distance between sendographs under d(x,y)+|s-t|.  Evaluated by
// the closed form: the directed half is the sup over support points x of
// inf over support points y of d(x,y) + max(0, u(x) - v(y)), with ghost
// points entering at height 0.
ExtReal send_metric(const FuzzyElem& u, const FuzzyElem& v);
Directed send_parts(const FuzzyElem& u, const FuzzyElem& v);

// Hausdorff distance between endographs (the zero slab over the whole space
// is included, so this is at most 1 and ignores ghost mass).
ExtReal end_metric(const FuzzyElem& u, const FuzzyElem& v);
Directed end_parts(const FuzzyElem& u, const FuzzyElem& v);

// Supremum over levels (including 0) of the level-cut Hausdorff distance.
ExtReal sup_metric(const FuzzyElem& u, const FuzzyElem& v);
Directed sup_parts(const FuzzyElem& u, const FuzzyElem& v);

// L_p average over levels of the level-cut Hausdorff distance, p >= 1.
// Cut distances are constant on the merged threshold bands, so the integral
// is an exact finite sum; any band with infinite distance gives +inf.
ExtReal dp_metric(const FuzzyElem& u, const FuzzyElem& v, double p);
Directed dp_parts(const FuzzyElem& u, const FuzzyElem& v, double p);

// Hausdorff distance between the level-0 sets (support plus ghost).
ExtReal zero_metric(const FuzzyElem& u, const FuzzyElem& v);
Directed zero_parts(const FuzzyElem& u, const FuzzyElem& v);

struct MetricReport {
  Directed send, end, sup, zero;
  std::vector<double> ps;     // requested exponents
  std::vector<Directed> dp;   // parallel to ps
  ExtReal h_send() const { return send.symmetric(); }
  ExtReal h_end() const { return end.symmetric(); }
  ExtReal d_inf() const { return sup.symmetric(); }
  ExtReal h_zero() const { return zero.symmetric(); }
};

// All metrics in one pass (inputs validated once).
MetricReport metric_report(const FuzzyElem& u, const FuzzyElem& v,
                           const std::vector<double>& ps = {});

// Level-to-cut callback for families whose cuts are not step functions.
using CutOracle = std::function<CutSet(double)>;

// Right-endpoint step realization of a cut family on the uniform m-ladder.
StepFuzzySet step_from_oracle(SpacePtr space, const CutOracle& oracle, int m);

struct DpEstimate {
  ExtReal value;    // at m levels
  ExtReal refined;  // at 2m levels
  ExtReal error;    // |value - refined|, refinement-based estimate
};

DpEstimate dp_via_oracle(SpacePtr space, const CutOracle& u,
                         const CutOracle& v, double p, int m);

// For alpha - beta >= eps > 0: whenever the directed endograph distance is
// below eps, the directed distance from [u]_alpha to [v]_beta cannot exceed
// it.  Reports both sides so property tests can assert the implication.
struct AenReport {
  double alpha, beta, eps;
  ExtReal end_directed;  // H*(end u, end v)
  bool hypothesis_holds;
  ExtReal cut_directed;  // H*([u]_alpha, [v]_beta)
  bool conclusion_holds;  // cut_directed <= end_directed (when hypothesis)
};

AenReport aen_bound_check(const FuzzyElem& u, const FuzzyElem& v, double alpha,
                          double beta, double eps);

}  // namespace fuzz
