#include "featsel/ranking.hpp"

#include <algorithm>
#include <cmath>

#include "featsel/detail/parallel.hpp"
#include "featsel/error.hpp"

namespace featsel {

TopKSet top_k_samples(const LabeledDataset& ds, int feature_id, int k) {
  if (k < 1) fail(errc::contract, "top-k size must be positive, got " + std::to_string(k));
  auto column = ds.column(feature_id);  // range-checks feature_id

  TopKSet result;
  result.feature_id = feature_id;
  result.k_requested = k;

  std::vector<int> positive;
  positive.reserve(column.size());
  for (int i = 0; i < static_cast<int>(column.size()); ++i) {
    if (column[i] > 0.0) positive.push_back(i);
  }
  const auto by_activation = [&column](int a, int b) {
    if (column[a] != column[b]) return column[a] > column[b];
    return a < b;
  };
  const int take = std::min<int>(k, static_cast<int>(positive.size()));
  std::partial_sort(positive.begin(), positive.begin() + take, positive.end(),
                    by_activation);
  positive.resize(take);
  result.sample_ids = std::move(positive);
  return result;
}

double class_entropy(const TopKSet& t, const LabeledDataset& ds) {
  if (t.empty()) {
    fail(errc::contract, "class entropy is undefined for an empty top-k set (feature " +
                             std::to_string(t.feature_id) + ")");
  }
  std::vector<int> counts(ds.classes(), 0);
  for (int sample : t.sample_ids) {
    if (sample < 0 || sample >= ds.rows()) {
      fail(errc::index, "sample index " + std::to_string(sample) + " outside dataset");
    }
    ++counts[ds.label(sample)];
  }
  const double n = static_cast<double>(t.size());
  double entropy = 0.0;
  for (int c : counts) {
    if (c == 0) continue;
    const double p = c / n;
    entropy -= p * std::log2(p);
  }
  return entropy;
}

std::vector<FeatureStats> rank_all_features(const LabeledDataset& ds, int k) {
  if (k < 1) fail(errc::contract, "top-k size must be positive, got " + std::to_string(k));
  std::vector<FeatureStats> stats(ds.cols());
  detail::parallel_for(ds.cols(), [&](int j) {
    FeatureStats s;
    s.feature_id = j;
    s.top_k = top_k_samples(ds, j, k);
    s.eligible = !s.top_k.empty();
    if (s.eligible) s.entropy_bits = class_entropy(s.top_k, ds);
    stats[j] = std::move(s);
  });
  return stats;
}

}  // namespace featsel
