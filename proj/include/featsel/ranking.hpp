#pragma once

#include <optional>
#include <vector>

#include "featsel/dataset.hpp"

namespace featsel {

/// The samples on which one feature attains its largest strictly positive
/// activations, ordered by descending activation; ties break toward the
/// smaller sample index. Holds min(k_requested, #positive) entries.
struct TopKSet {
  int feature_id = -1;
  std::vector<int> sample_ids;
  int k_requested = 0;

  bool empty() const { return sample_ids.empty(); }
  int size() const { return static_cast<int>(sample_ids.size()); }
};

/// Per-feature ranking summary. A feature with no strictly positive
/// activation is ineligible and carries no entropy.
struct FeatureStats {
  int feature_id = -1;
  TopKSet top_k;
  std::optional<double> entropy_bits;
  bool eligible = false;
};

TopKSet top_k_samples(const LabeledDataset& ds, int feature_id, int k);

/// Shannon entropy (bits) of the empirical class distribution inside the set.
double class_entropy(const TopKSet& t, const LabeledDataset& ds);

/// One FeatureStats per column, in column order. Columns are ranked
/// independently, so the scan runs in parallel over an immutable dataset.
std::vector<FeatureStats> rank_all_features(const LabeledDataset& ds, int k);

}  // namespace featsel
