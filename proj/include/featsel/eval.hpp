#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "featsel/dataset.hpp"
#include "featsel/diversity.hpp"
#include "featsel/selector.hpp"

namespace featsel {

/// Disjoint train/test row sets covering all rows for generated splits.
struct SplitSpec {
  std::vector<int> train_rows;
  std::vector<int> test_rows;
  std::uint64_t seed = 0;
};

/// Seeded random equal split; odd row counts put the extra row in train.
/// Both index sets come back sorted ascending.
SplitSpec make_equal_split(int rows, std::uint64_t seed);

/// Row-major design matrix handed to the classifiers.
struct Design {
  int rows = 0;
  int cols = 0;
  int classes = 0;
  std::vector<double> x;  // rows * cols, row-major
  std::vector<int> y;

  double at(int i, int j) const { return x[static_cast<std::size_t>(i) * cols + j]; }
};

Design gather(const LabeledDataset& ds, std::span<const int> row_ids,
              std::span<const int> col_ids);

/// Shift/scale every column by the train split's mean and standard
/// deviation; constant columns are only centered.
void standardize_train_test(Design& train, Design& test);

/// Euclidean-distance majority vote. Distance ties break toward the lower
/// train-row position, vote ties toward the smaller class id.
std::vector<int> knn_classify(const Design& train, const Design& test, int k);

struct LogRegModel {
  int classes = 0;
  int features = 0;
  std::vector<double> weights;  // classes * features, row-major
  std::vector<double> bias;     // classes
  std::vector<double> loss_curve;  // initial loss plus one entry per epoch
};

/// Multinomial logistic regression, zero-initialized full-batch gradient
/// descent on the mean cross-entropy plus 0.5 * l2 * |W|^2 (bias excluded).
LogRegModel logreg_train(const Design& train, int epochs = 500,
                         double learning_rate = 0.1, double l2 = 0.0);

std::vector<int> logreg_predict(const LogRegModel& model, const Design& rows);

double logreg_loss(const LogRegModel& model, const Design& data, double l2);

/// Analytic gradient of logreg_loss at the model's parameters; the same code
/// the training loop steps with.
void logreg_gradient(const LogRegModel& model, const Design& data, double l2,
                     std::vector<double>& grad_weights, std::vector<double>& grad_bias);

double accuracy(std::span<const int> predicted, std::span<const int> truth);

struct ClassifierConfig {
  enum class Kind { knn, logreg };
  Kind kind = Kind::knn;
  int knn_k = 5;
  int epochs = 500;
  double learning_rate = 0.1;
  double l2 = 0.0;
};

/// Standardizes on the train columns, then trains and predicts with the
/// configured classifier. knn_k is clamped to an odd value <= train rows.
std::vector<int> classify(Design train, Design test, const ClassifierConfig& cfg);

/// Restricts the dataset to `columns`, standardizes, classifies the test
/// rows, and returns the test accuracy.
double classify_accuracy(const LabeledDataset& ds, const SplitSpec& split,
                         std::span<const int> columns, const ClassifierConfig& cfg);

struct SweepPoint {
  double parameter = 0.0;       // requested grid value
  double mean_accuracy = 0.0;
  double std_accuracy = 0.0;
  int repeats = 0;
  double resolved = 0.0;        // resolved K, or effective T after clamping
  double short_topk_mean = 0.0; // eligible features with fewer than K positives
};

struct SweepCurve {
  std::vector<SweepPoint> points;
};

/// Accuracy as a function of the top-K fraction at fixed T. Each repeat uses
/// a fresh seeded equal split; selection runs on the train rows only.
SweepCurve sweep_k(const LabeledDataset& ds, std::uint64_t seed,
                   std::vector<double> k_fractions, int t,
                   const ClassifierConfig& cfg, int repeats);

/// Accuracy as a function of T at fixed K. Selection runs once per repeat at
/// the largest T and shorter selections reuse its prefix.
SweepCurve sweep_t(const LabeledDataset& ds, std::uint64_t seed,
                   std::vector<int> t_values, KSpec k,
                   const ClassifierConfig& cfg, int repeats);

/// Cumulative number of selected features per provenance tag, one row per
/// greedy iteration. Tags are sorted; counts at iteration t sum to t + 1.
struct ProvenanceCounts {
  std::vector<std::string> tags;
  std::vector<std::vector<int>> cumulative;  // [iteration][tag]

  std::vector<int> final_counts() const {
    return cumulative.empty() ? std::vector<int>(tags.size(), 0) : cumulative.back();
  }
};

ProvenanceCounts provenance_counts(const SelectionResult& result,
                                   const LabeledDataset& ds);

struct EvaluateOptions {
  KSpec k = KSpec::fraction(0.1);
  int t = 3000;
  ClassifierConfig classifier;
  int splits = 10;
  std::uint64_t seed = 0;
};

/// Accuracy table over the four feature regimes: each block alone, the
/// concatenation, and the greedy selection from the concatenation. Also
/// reports candidate/selected mean entropies and, with exactly two blocks,
/// the decision diversity of the per-block classifiers pooled over splits.
struct EvaluateReport {
  struct Regime {
    std::string name;
    int column_count = 0;
    double mean_accuracy = 0.0;
    double std_accuracy = 0.0;
    std::vector<double> per_split;
  };
  std::vector<Regime> regimes;
  std::vector<std::string> block_names;
  std::vector<int> block_sizes;
  bool single_block = false;
  int k_resolved = 0;
  int t_requested = 0;
  double t_effective_mean = 0.0;
  double h_f_mean = 0.0;
  double h_s_mean = 0.0;
  std::optional<DiversityReport> block_diversity;
};

EvaluateReport evaluate_regimes(const LabeledDataset& ds,
                                const std::vector<std::vector<int>>& blocks,
                                const std::vector<std::string>& block_names,
                                const EvaluateOptions& options);

}  // namespace featsel
