#include "featsel/selector.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "featsel/error.hpp"

namespace featsel {

int KSpec::resolve(int rows) const {
  if (is_fraction) {
    if (!(value > 0.0) || value > 1.0) {
      fail(errc::config, "top-k fraction must lie in (0, 1], got " + std::to_string(value));
    }
    return std::max(1, static_cast<int>(std::lround(value * rows)));
  }
  const int k = static_cast<int>(value);
  if (k < 1) fail(errc::config, "top-k count must be at least 1, got " + std::to_string(k));
  return k;
}

double weighted_score(const FeatureStats& stats, std::span<const double> weights) {
  if (!stats.eligible || !stats.entropy_bits) {
    fail(errc::contract, "weighted score requested for ineligible feature " +
                             std::to_string(stats.feature_id));
  }
  double weight_sum = 0.0;
  for (int sample : stats.top_k.sample_ids) weight_sum += weights[sample];
  return *stats.entropy_bits * weight_sum;
}

void penalize(std::vector<double>& weights, const TopKSet& t, double entropy_bits) {
  const double multiplier = 1.0 + 1.0 / std::max(entropy_bits, kEntropyEpsilon);
  for (int sample : t.sample_ids) weights[sample] *= multiplier;
}

void normalize(std::vector<double>& weights) {
  // Neumaier-compensated total; keeps the sum-to-one invariant tight for
  // large sample counts.
  double sum = 0.0;
  double comp = 0.0;
  for (double w : weights) {
    if (!std::isfinite(w) || w <= 0.0) {
      fail(errc::numeric, "weights must be finite and positive before normalization");
    }
    const double t = sum + w;
    comp += std::abs(sum) >= std::abs(w) ? (sum - t) + w : (w - t) + sum;
    sum = t;
  }
  sum += comp;
  for (double& w : weights) w /= sum;
}

SelectionResult select_features(const std::vector<FeatureStats>& stats,
                                int sample_count, int t) {
  if (t < 1) fail(errc::contract, "iteration count must be positive, got " + std::to_string(t));
  if (sample_count < 1) fail(errc::contract, "sample count must be positive");

  int max_id = -1;
  for (const auto& s : stats) max_id = std::max(max_id, s.feature_id);
  std::vector<int> position(max_id + 1, -1);
  SelectionState state;
  for (std::size_t i = 0; i < stats.size(); ++i) {
    const auto& s = stats[i];
    if (s.feature_id < 0) fail(errc::contract, "feature stats carry a negative id");
    if (position[s.feature_id] != -1) {
      fail(errc::contract, "duplicate feature id " + std::to_string(s.feature_id) +
                               " in stats list");
    }
    position[s.feature_id] = static_cast<int>(i);
    if (s.eligible) state.remaining.push_back(s.feature_id);
  }
  std::sort(state.remaining.begin(), state.remaining.end());
  if (state.remaining.empty()) {
    fail(errc::empty, "no eligible feature: every column lacks positive activations");
  }
  const auto stats_of = [&](int id) -> const FeatureStats& {
    return stats[position[id]];
  };

  SelectionResult result;
  result.t_requested = t;
  result.eligible_count = static_cast<int>(state.remaining.size());
  result.sample_count = sample_count;
  result.k_resolved = stats_of(state.remaining.front()).top_k.k_requested;

  state.weights.assign(sample_count, 1.0);
  const int steps = std::min<int>(t, result.eligible_count);
  result.selected.reserve(steps);
  result.per_step.reserve(steps);

  for (state.iteration = 1; state.iteration <= steps; ++state.iteration) {
    normalize(state.weights);

    // Argmin of the weighted score over the remaining candidates; the
    // ascending scan plus the relative tie margin resolve ties toward the
    // lowest feature id.
    int best = -1;
    double best_score = std::numeric_limits<double>::infinity();
    std::size_t best_pos = 0;
    for (std::size_t pos = 0; pos < state.remaining.size(); ++pos) {
      const int id = state.remaining[pos];
      const double score = weighted_score(stats_of(id), state.weights);
      if (best < 0 || score < best_score * (1.0 - kScoreTieRelative)) {
        best_score = score;
        best = id;
        best_pos = pos;
      }
    }

    state.selected.push_back(best);
    state.remaining.erase(state.remaining.begin() + best_pos);

    const FeatureStats& chosen = stats_of(best);
    penalize(state.weights, chosen.top_k, *chosen.entropy_bits);

    result.per_step.push_back({best, *chosen.entropy_bits, best_score,
                               chosen.top_k.sample_ids});
  }

  result.selected = std::move(state.selected);
  return result;
}

SelectionResult run_pipeline(const LabeledDataset& ds, KSpec k, int t) {
  const int k_resolved = k.resolve(ds.rows());
  auto stats = rank_all_features(ds, k_resolved);
  SelectionResult result = select_features(stats, ds.rows(), t);
  result.k_resolved = k_resolved;
  return result;
}

}  // namespace featsel
