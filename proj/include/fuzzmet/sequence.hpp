#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fuzzmet/metrics.hpp"

namespace fuzz {

enum class Trend { down, flat, up, mixed };

std::string trend_name(Trend t);

// Whether a sampled nonnegative trajectory dies out.  A finite prefix can
// never decide a limit, so the verdict only inspects the tail window (the
// last quarter of the samples), reports the trend seen there, and says all
// of that in its label.
struct TailVerdict {
  std::size_t samples = 0;
  std::size_t window_begin = 0;  // first sample index of the tail window
  ExtReal tail_max{0.0};
  double tolerance = 0.0;
  bool vanishes = false;  // tail_max <= tolerance
  Trend trend = Trend::flat;
  std::string label;
};

TailVerdict tail_verdict(const std::vector<ExtReal>& values, double tolerance);

struct Trajectory {
  std::string name;
  std::vector<ExtReal> values;  // values[i] belongs to index n = i + 1
  TailVerdict verdict;
};

// A sequence u_1, u_2, ... with a candidate limit, available both as
// realized elements (what the metric evaluators consume) and as exact
// level-cut callbacks (what the per-level diagnostics consume).  Built-in
// generators provide the gallery families exercised by the CLI and the
// acceptance suite; arbitrary sequences can be wrapped with from_members.
class SequenceFamily {
 public:
  // remark45, snc, fnc, snp, nce, platform-fail.
  static const std::vector<std::string>& gallery_ids();
  // For families whose cuts move continuously with the level (snc, fnc,
  // snp), members are realized on a uniform ladder of `ladder` levels plus
  // the family's breakpoints; the other families ignore `ladder` because
  // their members are already step sets.
  static SequenceFamily gallery(const std::string& id, int ladder = 400);
  static SequenceFamily from_members(std::string id,
                                     std::vector<FuzzyElem> members,
                                     std::optional<FuzzyElem> limit);

  const std::string& id() const { return id_; }
  const SpacePtr& space() const { return space_; }
  int max_index() const { return max_index_; }  // 0 = generated on demand
  bool has_limit() const { return limit_.has_value(); }

  // Level pitch of the member realizations; 0 when members carry their
  // exact cuts.
  double resolution() const { return resolution_; }
  // Vanishing tolerance for metric trajectories computed from the realized
  // members: exact by default, ten ladder pitches otherwise.
  double metric_tolerance() const;
  static constexpr double kExactTolerance = 1e-9;

  FuzzyElem member(int n) const;   // n >= 1
  const FuzzyElem& limit() const;  // throws std::invalid_argument if absent

  // Exact cuts (alpha in [0,1]; 0 gives the level-zero set, ghost included).
  CutSet member_cut(int n, double alpha) const;
  CutSet limit_cut(double alpha) const;
  // Strict cut {u > alpha} of the candidate; for a ghost-carrying candidate
  // this is the base's strict cut (ghost mass has no membership value).
  CutSet limit_strict_cut(double alpha) const;
  CutOracle member_oracle(int n) const;
  CutOracle limit_oracle() const;

  // True when the candidate's cut family is discontinuous at alpha, i.e.
  // the cut sits at positive Hausdorff distance from its strict cut.
  bool limit_p0_at(double alpha) const;

 private:
  SequenceFamily() = default;

  std::string id_;
  SpacePtr space_;
  double resolution_ = 0.0;
  int max_index_ = 0;
  std::vector<FuzzyElem> stored_;  // from_members only
  std::function<FuzzyElem(int)> make_member_;
  std::function<CutSet(int, double)> member_cut_;
  std::function<CutSet(double)> limit_cut_;
  std::function<CutSet(double)> limit_strict_cut_;
  std::optional<FuzzyElem> limit_;
};

// H([u_n]_alpha, [u]_alpha) for n = 1..N, with the candidate's level-family
// continuity at alpha cross-referenced: a level trajectory may legitimately
// refuse to vanish exactly where the cut family jumps.
struct LevelTrajectory {
  double alpha = 0.0;
  bool alpha_in_p0 = false;
  std::vector<ExtReal> values;
  TailVerdict verdict;
};

std::vector<LevelTrajectory> level_decomposition_test(
    const SequenceFamily& fam, const std::vector<double>& levels, int N);

// Set-inclusion residuals at a level: `inner` is the directed distance from
// the candidate's strict cut into [u_n]_alpha (0 when the strict cut is
// empty), `outer` the directed distance from [u_n]_alpha into [u]_alpha
// (+inf when only the target is empty).  Both must die out along n for the
// cut sandwich {u > alpha} <= lim [u_n]_alpha <= [u]_alpha to be plausible.
struct GammaResidual {
  double alpha = 0.0;
  std::vector<ExtReal> inner;
  std::vector<ExtReal> outer;
  TailVerdict inner_verdict;
  TailVerdict outer_verdict;
};

std::vector<GammaResidual> gamma_residuals(const SequenceFamily& fam,
                                           const std::vector<double>& levels,
                                           int N);

// Per-index comparison of the sendograph distance against its two-part
// decomposition.  Whenever h_end < 1 the bound h_send <= h_end + h_zero
// must hold; rows record both sides so a violation is visible.
struct DecompositionRow {
  int n = 0;
  ExtReal h_send{0.0}, h_end{0.0}, h_zero{0.0}, d_inf{0.0}, d_p{0.0};
  bool bound_applicable = false;  // h_end < 1
  bool bound_holds = true;
};

struct DecompositionReport {
  double p = 2.0;
  std::vector<DecompositionRow> rows;
  Trajectory h_send, h_end, h_zero, d_inf, d_p;
  bool bound_all_hold = true;
};

DecompositionReport decomposition_trajectory(const SequenceFamily& fam, int N,
                                             double p = 2.0);

// delta |-> max_{n<=N} H([u_n]_delta, [u_n]_0) with a maximizing index per
// delta.  The prefix is equi-right-continuous at resolution eps exactly
// when the curve dips below eps somewhere; the curve is nondecreasing in
// delta, so the smallest delta tells the whole story.
struct EquiRcCurve {
  std::vector<double> delta;
  std::vector<ExtReal> modulus;
  std::vector<int> witness;
};

EquiRcCurve equi_rc_modulus(const SequenceFamily& fam, int N,
                            const std::vector<double>& deltas);

std::optional<double> equi_rc_witness(const EquiRcCurve& curve, double eps);

// Prefix unions D_n of closed nonempty sets, their gaps H(D_n, D_N) to the
// final union, and that final union as the limit estimate.
struct UnionLimitReport {
  CutSet limit;
  std::vector<ExtReal> gap;  // gap[i] = H(D_{i+1}, D_N); the last is 0
  TailVerdict verdict;
};

UnionLimitReport cauchy_union_limit(const SpacePtr& space,
                                    const std::vector<CutSet>& sets);

// Everything above in one bundle (what the `seq` command prints).  Empty
// level or delta lists get a default grid.
struct SequenceDiagnostics {
  std::string family_id;
  int N = 0;
  DecompositionReport decomposition;
  std::vector<LevelTrajectory> levels;
  std::vector<GammaResidual> gamma;
  EquiRcCurve equi_rc;
};

SequenceDiagnostics run_sequence_diagnostics(const SequenceFamily& fam, int N,
                                             std::vector<double> levels = {},
                                             std::vector<double> deltas = {},
                                             double p = 2.0);

}  // namespace fuzz
