#pragma once

#include <span>
#include <vector>

#include "featsel/dataset.hpp"
#include "featsel/ranking.hpp"

namespace featsel {

/// Clamp applied to the entropy in the penalization multiplier 1 + 1/H,
/// which is otherwise undefined for pure-class top-K sets.
inline constexpr double kEntropyEpsilon = 1e-6;

/// Scores within this relative margin count as tied in the argmin and
/// resolve toward the lower feature id. Structurally tied features (equal
/// entropy, equally penalized covered samples) can land an ulp apart after
/// the weight updates; a plain < would let rounding pick the winner.
inline constexpr double kScoreTieRelative = 1e-9;

/// Requested top-K size: either an absolute sample count or a fraction of
/// the dataset rows.
struct KSpec {
  bool is_fraction = true;
  double value = 0.1;

  static KSpec fraction(double f) { return {true, f}; }
  static KSpec count(int k) { return {false, static_cast<double>(k)}; }

  /// Fractions resolve to max(1, round(f * rows)).
  int resolve(int rows) const;
};

struct SelectionStep {
  int feature_id = -1;
  double entropy_bits = 0.0;
  double weighted_score = 0.0;
  std::vector<int> penalized_sample_ids;
};

/// Mutable state of the greedy loop; exposed for diagnostics and tests.
struct SelectionState {
  std::vector<double> weights;
  std::vector<int> selected;
  std::vector<int> remaining;  // eligible feature ids, ascending
  int iteration = 0;
};

struct SelectionResult {
  std::vector<int> selected;
  std::vector<SelectionStep> per_step;
  int k_resolved = 0;
  int t_requested = 0;
  int eligible_count = 0;
  int sample_count = 0;
};

/// Inner sum of the selection objective: entropy times the total weight of
/// the feature's top-K samples.
double weighted_score(const FeatureStats& stats, std::span<const double> weights);

/// Multiplies the weight of every sample in the set by 1 + 1/max(H, eps).
void penalize(std::vector<double>& weights, const TopKSet& t, double entropy_bits);

/// Scales weights to sum to one. All weights must be finite and positive.
void normalize(std::vector<double>& weights);

/// The greedy loop: normalize, pick the remaining feature with minimum
/// weighted score (ties toward the lowest feature id), penalize its top-K
/// samples. Entropies are computed once up front and never change; only the
/// weights evolve. Stops after t iterations or when no candidate remains.
SelectionResult select_features(const std::vector<FeatureStats>& stats,
                                int sample_count, int t);

/// rank_all_features + select_features with K resolved against ds.rows().
SelectionResult run_pipeline(const LabeledDataset& ds, KSpec k, int t);

}  // namespace featsel
