#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace featsel {

/// Maps feature-name prefixes to provenance block tags, e.g. "m_" -> "material".
/// Prefixes must be non-empty and no prefix may be a prefix of another.
struct ProvenanceManifest {
  std::vector<std::pair<std::string, std::string>> entries;

  static ProvenanceManifest load(const std::filesystem::path& path);

  void validate() const;

  /// Longest matching prefix wins; "unknown" when nothing matches.
  std::string tag_for(std::string_view feature_name) const;

  bool empty() const { return entries.empty(); }
};

/// Dense sample-by-feature matrix with integer class labels.
/// Columns are stored contiguously; every hot loop scans one feature at a
/// time. Immutable after construction and safe for concurrent reads.
class LabeledDataset {
 public:
  LabeledDataset() = default;

  /// `columns` is column-major: columns[j * rows + i] = value of feature j
  /// on sample i. Validates all invariants; throws featsel::error.
  LabeledDataset(std::vector<double> columns, int rows, std::vector<int> labels,
                 int class_count, std::vector<std::string> feature_names,
                 std::vector<std::string> provenance);

  int rows() const { return rows_; }
  int cols() const { return cols_; }
  int classes() const { return class_count_; }

  std::span<const double> column(int j) const;
  double at(int row, int col) const { return columns_[static_cast<std::size_t>(col) * rows_ + row]; }

  const std::vector<int>& labels() const { return labels_; }
  int label(int row) const { return labels_[row]; }

  const std::vector<std::string>& feature_names() const { return feature_names_; }
  const std::vector<std::string>& provenance() const { return provenance_; }
  const std::vector<std::string>& class_names() const { return class_names_; }

 private:
  std::vector<double> columns_;
  std::vector<int> labels_;
  std::vector<std::string> feature_names_;
  std::vector<std::string> provenance_;
  std::vector<std::string> class_names_;
  int rows_ = 0;
  int cols_ = 0;
  int class_count_ = 0;
};

/// Reads the columnar text format: comma-separated header naming exactly one
/// `label` column, `#`-prefixed comment lines, decimal reals elsewhere.
/// class_count defaults to 1 + max observed label unless overridden.
LabeledDataset load_dataset(const std::filesystem::path& path,
                            const ProvenanceManifest& manifest = {},
                            std::optional<int> class_count_override = {});

/// Writes the same columnar format (features first, label column last) with
/// shortest round-trip decimal formatting, so load(save(ds)) == ds.
void save_dataset(const LabeledDataset& ds, const std::filesystem::path& path);

/// Columns of a followed by columns of b. Label vectors must match row by row.
LabeledDataset concatenate(const LabeledDataset& a, const LabeledDataset& b);

LabeledDataset take_rows(const LabeledDataset& ds, std::span<const int> row_ids);
LabeledDataset take_columns(const LabeledDataset& ds, std::span<const int> col_ids);

}  // namespace featsel
