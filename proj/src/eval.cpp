#include "featsel/eval.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <set>

#include "featsel/detail/parallel.hpp"
#include "featsel/error.hpp"
#include "featsel/rng.hpp"

namespace featsel {
namespace {

double mean_of(const std::vector<double>& v) {
  return std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(v.size());
}

double stddev_of(const std::vector<double>& v, double mean) {
  double acc = 0.0;
  for (double x : v) acc += (x - mean) * (x - mean);
  return std::sqrt(acc / static_cast<double>(v.size()));
}

std::vector<int> iota_ids(int n) {
  std::vector<int> ids(n);
  std::iota(ids.begin(), ids.end(), 0);
  return ids;
}

int clamp_knn_k(int k, int train_rows) {
  k = std::min(k, train_rows);
  if (k % 2 == 0) k = std::max(1, k - 1);
  return k;
}

int count_short_topk(const std::vector<FeatureStats>& stats, int k) {
  int short_count = 0;
  for (const auto& s : stats) {
    if (s.eligible && s.top_k.size() < k) ++short_count;
  }
  return short_count;
}

}  // namespace

SplitSpec make_equal_split(int rows, std::uint64_t seed) {
  if (rows < 2) fail(errc::contract, "equal split needs at least two rows");
  std::vector<int> order = iota_ids(rows);
  Rng rng(seed);
  rng.shuffle(order);
  const int train_size = (rows + 1) / 2;
  SplitSpec split;
  split.seed = seed;
  split.train_rows.assign(order.begin(), order.begin() + train_size);
  split.test_rows.assign(order.begin() + train_size, order.end());
  std::sort(split.train_rows.begin(), split.train_rows.end());
  std::sort(split.test_rows.begin(), split.test_rows.end());
  return split;
}

Design gather(const LabeledDataset& ds, std::span<const int> row_ids,
              std::span<const int> col_ids) {
  Design d;
  d.rows = static_cast<int>(row_ids.size());
  d.cols = static_cast<int>(col_ids.size());
  d.classes = ds.classes();
  d.x.resize(static_cast<std::size_t>(d.rows) * d.cols);
  d.y.resize(d.rows);
  for (int jj = 0; jj < d.cols; ++jj) {
    auto column = ds.column(col_ids[jj]);
    for (int ii = 0; ii < d.rows; ++ii) {
      d.x[static_cast<std::size_t>(ii) * d.cols + jj] = column[row_ids[ii]];
    }
  }
  for (int ii = 0; ii < d.rows; ++ii) d.y[ii] = ds.label(row_ids[ii]);
  return d;
}

void standardize_train_test(Design& train, Design& test) {
  if (train.rows == 0) fail(errc::contract, "cannot standardize an empty train set");
  if (test.cols != train.cols) fail(errc::align, "train/test column counts differ");
  for (int j = 0; j < train.cols; ++j) {
    double mean = 0.0;
    for (int i = 0; i < train.rows; ++i) mean += train.at(i, j);
    mean /= train.rows;
    double var = 0.0;
    for (int i = 0; i < train.rows; ++i) {
      const double d = train.at(i, j) - mean;
      var += d * d;
    }
    var /= train.rows;
    const double scale = var > 1e-24 ? 1.0 / std::sqrt(var) : 1.0;
    for (int i = 0; i < train.rows; ++i) {
      auto& v = train.x[static_cast<std::size_t>(i) * train.cols + j];
      v = (v - mean) * scale;
    }
    for (int i = 0; i < test.rows; ++i) {
      auto& v = test.x[static_cast<std::size_t>(i) * test.cols + j];
      v = (v - mean) * scale;
    }
  }
}

std::vector<int> knn_classify(const Design& train, const Design& test, int k) {
  if (train.rows == 0) fail(errc::contract, "k-NN needs a non-empty train set");
  if (k < 1 || k > train.rows) {
    fail(errc::contract, "k-NN neighbor count " + std::to_string(k) +
                             " outside [1, " + std::to_string(train.rows) + "]");
  }
  if (k % 2 == 0) fail(errc::contract, "k-NN neighbor count must be odd");
  if (test.cols != train.cols) fail(errc::align, "train/test column counts differ");

  std::vector<int> predictions(test.rows);
  std::vector<std::pair<double, int>> distances(train.rows);
  std::vector<int> votes(train.classes);
  for (int q = 0; q < test.rows; ++q) {
    for (int i = 0; i < train.rows; ++i) {
      double d2 = 0.0;
      const double* a = &train.x[static_cast<std::size_t>(i) * train.cols];
      const double* b = &test.x[static_cast<std::size_t>(q) * test.cols];
      for (int j = 0; j < train.cols; ++j) {
        const double diff = a[j] - b[j];
        d2 += diff * diff;
      }
      distances[i] = {d2, i};
    }
    // Pair ordering breaks distance ties toward the lower train-row index.
    std::partial_sort(distances.begin(), distances.begin() + k, distances.end());
    std::fill(votes.begin(), votes.end(), 0);
    for (int i = 0; i < k; ++i) ++votes[train.y[distances[i].second]];
    int best_class = 0;
    for (int c = 1; c < train.classes; ++c) {
      if (votes[c] > votes[best_class]) best_class = c;
    }
    predictions[q] = best_class;
  }
  return predictions;
}

namespace {

// Row-wise softmax of scores = x W^T + b into `probs`.
void softmax_scores(const LogRegModel& model, const Design& data,
                    std::vector<double>& probs) {
  const int c_count = model.classes;
  probs.resize(static_cast<std::size_t>(data.rows) * c_count);
  for (int i = 0; i < data.rows; ++i) {
    double* row = &probs[static_cast<std::size_t>(i) * c_count];
    double max_score = -std::numeric_limits<double>::infinity();
    for (int c = 0; c < c_count; ++c) {
      double s = model.bias[c];
      const double* w = &model.weights[static_cast<std::size_t>(c) * model.features];
      const double* x = &data.x[static_cast<std::size_t>(i) * data.cols];
      for (int j = 0; j < model.features; ++j) s += w[j] * x[j];
      row[c] = s;
      max_score = std::max(max_score, s);
    }
    double z = 0.0;
    for (int c = 0; c < c_count; ++c) {
      row[c] = std::exp(row[c] - max_score);
      z += row[c];
    }
    for (int c = 0; c < c_count; ++c) row[c] /= z;
  }
}

}  // namespace

double logreg_loss(const LogRegModel& model, const Design& data, double l2) {
  std::vector<double> probs;
  softmax_scores(model, data, probs);
  double loss = 0.0;
  for (int i = 0; i < data.rows; ++i) {
    loss -= std::log(std::max(probs[static_cast<std::size_t>(i) * model.classes + data.y[i]],
                              1e-300));
  }
  loss /= data.rows;
  double reg = 0.0;
  for (double w : model.weights) reg += w * w;
  return loss + 0.5 * l2 * reg;
}

void logreg_gradient(const LogRegModel& model, const Design& data, double l2,
                     std::vector<double>& grad_weights, std::vector<double>& grad_bias) {
  std::vector<double> probs;
  softmax_scores(model, data, probs);
  grad_weights.assign(model.weights.size(), 0.0);
  grad_bias.assign(model.classes, 0.0);
  const double inv_n = 1.0 / data.rows;
  for (int i = 0; i < data.rows; ++i) {
    const double* p = &probs[static_cast<std::size_t>(i) * model.classes];
    const double* x = &data.x[static_cast<std::size_t>(i) * data.cols];
    for (int c = 0; c < model.classes; ++c) {
      const double residual = (p[c] - (data.y[i] == c ? 1.0 : 0.0)) * inv_n;
      grad_bias[c] += residual;
      double* gw = &grad_weights[static_cast<std::size_t>(c) * model.features];
      for (int j = 0; j < model.features; ++j) gw[j] += residual * x[j];
    }
  }
  for (std::size_t idx = 0; idx < model.weights.size(); ++idx) {
    grad_weights[idx] += l2 * model.weights[idx];
  }
}

LogRegModel logreg_train(const Design& train, int epochs, double learning_rate,
                         double l2) {
  if (train.rows == 0) fail(errc::contract, "cannot train on an empty set");
  if (epochs < 0) fail(errc::contract, "epoch count must be non-negative");
  std::set<int> present(train.y.begin(), train.y.end());
  if (present.size() < 2) {
    fail(errc::model, "degenerate training set: only " +
                          std::to_string(present.size()) + " class present");
  }

  LogRegModel model;
  model.classes = train.classes;
  model.features = train.cols;
  model.weights.assign(static_cast<std::size_t>(model.classes) * model.features, 0.0);
  model.bias.assign(model.classes, 0.0);
  model.loss_curve.reserve(epochs + 1);
  model.loss_curve.push_back(logreg_loss(model, train, l2));

  std::vector<double> grad_w;
  std::vector<double> grad_b;
  for (int epoch = 0; epoch < epochs; ++epoch) {
    logreg_gradient(model, train, l2, grad_w, grad_b);
    for (std::size_t idx = 0; idx < model.weights.size(); ++idx) {
      model.weights[idx] -= learning_rate * grad_w[idx];
    }
    for (int c = 0; c < model.classes; ++c) {
      model.bias[c] -= learning_rate * grad_b[c];
    }
    model.loss_curve.push_back(logreg_loss(model, train, l2));
  }
  return model;
}

std::vector<int> logreg_predict(const LogRegModel& model, const Design& rows) {
  if (rows.cols != model.features) fail(errc::align, "feature count does not match model");
  std::vector<double> probs;
  softmax_scores(model, rows, probs);
  std::vector<int> predictions(rows.rows);
  for (int i = 0; i < rows.rows; ++i) {
    const double* p = &probs[static_cast<std::size_t>(i) * model.classes];
    int best = 0;
    for (int c = 1; c < model.classes; ++c) {
      if (p[c] > p[best]) best = c;
    }
    predictions[i] = best;
  }
  return predictions;
}

double accuracy(std::span<const int> predicted, std::span<const int> truth) {
  if (predicted.size() != truth.size()) {
    fail(errc::contract, "prediction and truth lengths differ: " +
                             std::to_string(predicted.size()) + " vs " +
                             std::to_string(truth.size()));
  }
  if (predicted.empty()) fail(errc::contract, "accuracy of empty prediction vector");
  int matches = 0;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    if (predicted[i] == truth[i]) ++matches;
  }
  return static_cast<double>(matches) / static_cast<double>(truth.size());
}

std::vector<int> classify(Design train, Design test, const ClassifierConfig& cfg) {
  standardize_train_test(train, test);
  if (cfg.kind == ClassifierConfig::Kind::knn) {
    return knn_classify(train, test, clamp_knn_k(cfg.knn_k, train.rows));
  }
  LogRegModel model = logreg_train(train, cfg.epochs, cfg.learning_rate, cfg.l2);
  return logreg_predict(model, test);
}

double classify_accuracy(const LabeledDataset& ds, const SplitSpec& split,
                         std::span<const int> columns, const ClassifierConfig& cfg) {
  Design train = gather(ds, split.train_rows, columns);
  Design test = gather(ds, split.test_rows, columns);
  auto predictions = classify(std::move(train), std::move(test), cfg);
  Design truth = gather(ds, split.test_rows, std::span<const int>{});
  return accuracy(predictions, truth.y);
}

SweepCurve sweep_k(const LabeledDataset& ds, std::uint64_t seed,
                   std::vector<double> k_fractions, int t,
                   const ClassifierConfig& cfg, int repeats) {
  if (repeats < 1) fail(errc::config, "sweep needs at least one repeat");
  if (k_fractions.empty()) fail(errc::config, "sweep needs a non-empty grid");
  for (double f : k_fractions) {
    if (!(f > 0.0) || f > 1.0) {
      fail(errc::config, "top-k fraction must lie in (0, 1], got " + std::to_string(f));
    }
  }
  std::sort(k_fractions.begin(), k_fractions.end());
  k_fractions.erase(std::unique(k_fractions.begin(), k_fractions.end()), k_fractions.end());

  SweepCurve curve;
  curve.points.resize(k_fractions.size());
  std::vector<std::vector<double>> accs(k_fractions.size(), std::vector<double>(repeats));
  std::vector<std::vector<double>> resolved(k_fractions.size(), std::vector<double>(repeats));
  std::vector<std::vector<double>> shorts(k_fractions.size(), std::vector<double>(repeats));

  // Repeats are independent jobs; each writes its own (parameter, repeat)
  // slots, so the assembled curve does not depend on scheduling.
  detail::parallel_for(
      repeats,
      [&](int r) {
        SplitSpec split = make_equal_split(ds.rows(), seed + static_cast<std::uint64_t>(r));
        LabeledDataset train_ds = take_rows(ds, split.train_rows);
        for (std::size_t p = 0; p < k_fractions.size(); ++p) {
          const int k = KSpec::fraction(k_fractions[p]).resolve(train_ds.rows());
          auto stats = rank_all_features(train_ds, k);
          SelectionResult sel = select_features(stats, train_ds.rows(), t);
          accs[p][r] = classify_accuracy(ds, split, sel.selected, cfg);
          resolved[p][r] = k;
          shorts[p][r] = count_short_topk(stats, k);
        }
      },
      2);
  for (std::size_t p = 0; p < k_fractions.size(); ++p) {
    auto& point = curve.points[p];
    point.parameter = k_fractions[p];
    point.repeats = repeats;
    point.mean_accuracy = mean_of(accs[p]);
    point.std_accuracy = stddev_of(accs[p], point.mean_accuracy);
    point.resolved = mean_of(resolved[p]);
    point.short_topk_mean = mean_of(shorts[p]);
  }
  return curve;
}

SweepCurve sweep_t(const LabeledDataset& ds, std::uint64_t seed,
                   std::vector<int> t_values, KSpec k,
                   const ClassifierConfig& cfg, int repeats) {
  if (repeats < 1) fail(errc::config, "sweep needs at least one repeat");
  if (t_values.empty()) fail(errc::config, "sweep needs a non-empty grid");
  for (int t : t_values) {
    if (t < 1) fail(errc::config, "integration size must be positive, got " + std::to_string(t));
  }
  std::sort(t_values.begin(), t_values.end());
  t_values.erase(std::unique(t_values.begin(), t_values.end()), t_values.end());

  SweepCurve curve;
  curve.points.resize(t_values.size());
  std::vector<std::vector<double>> accs(t_values.size(), std::vector<double>(repeats));
  std::vector<std::vector<double>> effective(t_values.size(), std::vector<double>(repeats));
  std::vector<std::vector<double>> shorts(t_values.size(), std::vector<double>(repeats));

  const int t_max = t_values.back();
  detail::parallel_for(
      repeats,
      [&](int r) {
        SplitSpec split = make_equal_split(ds.rows(), seed + static_cast<std::uint64_t>(r));
        LabeledDataset train_ds = take_rows(ds, split.train_rows);
        const int k_resolved = k.resolve(train_ds.rows());
        auto stats = rank_all_features(train_ds, k_resolved);
        SelectionResult sel = select_features(stats, train_ds.rows(), t_max);
        const int short_count = count_short_topk(stats, k_resolved);
        for (std::size_t p = 0; p < t_values.size(); ++p) {
          // Greedy prefix property: the first t entries of the longest run
          // are exactly the t-selection.
          const int t_eff = std::min<int>(t_values[p], static_cast<int>(sel.selected.size()));
          std::vector<int> prefix(sel.selected.begin(), sel.selected.begin() + t_eff);
          accs[p][r] = classify_accuracy(ds, split, prefix, cfg);
          effective[p][r] = t_eff;
          shorts[p][r] = short_count;
        }
      },
      2);
  for (std::size_t p = 0; p < t_values.size(); ++p) {
    auto& point = curve.points[p];
    point.parameter = t_values[p];
    point.repeats = repeats;
    point.mean_accuracy = mean_of(accs[p]);
    point.std_accuracy = stddev_of(accs[p], point.mean_accuracy);
    point.resolved = mean_of(effective[p]);
    point.short_topk_mean = mean_of(shorts[p]);
  }
  return curve;
}

ProvenanceCounts provenance_counts(const SelectionResult& result,
                                   const LabeledDataset& ds) {
  ProvenanceCounts counts;
  std::set<std::string> tag_set(ds.provenance().begin(), ds.provenance().end());
  counts.tags.assign(tag_set.begin(), tag_set.end());

  std::vector<int> running(counts.tags.size(), 0);
  counts.cumulative.reserve(result.selected.size());
  for (int feature : result.selected) {
    const std::string& tag = ds.provenance()[feature];
    const auto it = std::lower_bound(counts.tags.begin(), counts.tags.end(), tag);
    ++running[static_cast<std::size_t>(it - counts.tags.begin())];
    counts.cumulative.push_back(running);
  }
  return counts;
}

EvaluateReport evaluate_regimes(const LabeledDataset& ds,
                                const std::vector<std::vector<int>>& blocks,
                                const std::vector<std::string>& block_names,
                                const EvaluateOptions& options) {
  if (blocks.empty()) fail(errc::config, "evaluate needs at least one feature block");
  if (blocks.size() != block_names.size()) {
    fail(errc::config, "block name count does not match block count");
  }
  if (options.splits < 1) fail(errc::config, "evaluate needs at least one split");

  EvaluateReport report;
  report.block_names = block_names;
  report.single_block = blocks.size() == 1;
  report.t_requested = options.t;
  for (const auto& b : blocks) report.block_sizes.push_back(static_cast<int>(b.size()));

  const std::vector<int> all_columns = iota_ids(ds.cols());

  struct RegimeDef {
    std::string name;
    const std::vector<int>* columns;  // nullptr = per-split selection
  };
  std::vector<RegimeDef> defs;
  if (!report.single_block) {
    defs.push_back({"M", &blocks[0]});
    defs.push_back({"O", &blocks[1]});
  } else {
    defs.push_back({"M", &all_columns});
  }
  defs.push_back({"MO", &all_columns});
  defs.push_back({"SMO", nullptr});

  report.regimes.resize(defs.size());
  for (std::size_t d = 0; d < defs.size(); ++d) {
    report.regimes[d].name = defs[d].name;
  }

  std::vector<double> h_f_values;
  std::vector<double> h_s_values;
  std::vector<double> t_effective;
  // Pooled correctness rows of the two per-block classifiers, for the
  // decision-diversity analysis.
  std::vector<std::vector<int>> block_predictions(2);
  std::vector<int> pooled_truth;

  for (int r = 0; r < options.splits; ++r) {
    SplitSpec split = make_equal_split(ds.rows(), options.seed + static_cast<std::uint64_t>(r));
    LabeledDataset train_ds = take_rows(ds, split.train_rows);

    // Selection runs on raw train activations only.
    const int k_resolved = options.k.resolve(train_ds.rows());
    auto stats = rank_all_features(train_ds, k_resolved);
    SelectionResult sel = select_features(stats, train_ds.rows(), options.t);
    report.k_resolved = k_resolved;
    t_effective.push_back(static_cast<double>(sel.selected.size()));

    std::vector<int> eligible;
    for (const auto& s : stats) {
      if (s.eligible) eligible.push_back(s.feature_id);
    }
    h_f_values.push_back(avg_entropy(stats, eligible));
    h_s_values.push_back(avg_entropy(stats, sel.selected));

    for (std::size_t d = 0; d < defs.size(); ++d) {
      const std::vector<int>& columns = defs[d].columns ? *defs[d].columns : sel.selected;
      report.regimes[d].column_count = static_cast<int>(columns.size());
      report.regimes[d].per_split.push_back(
          classify_accuracy(ds, split, columns, options.classifier));
    }

    if (!report.single_block) {
      Design truth = gather(ds, split.test_rows, std::span<const int>{});
      for (int b = 0; b < 2; ++b) {
        Design train = gather(ds, split.train_rows, blocks[b]);
        Design test = gather(ds, split.test_rows, blocks[b]);
        auto preds = classify(std::move(train), std::move(test), options.classifier);
        block_predictions[b].insert(block_predictions[b].end(), preds.begin(), preds.end());
      }
      pooled_truth.insert(pooled_truth.end(), truth.y.begin(), truth.y.end());
    }
  }

  for (auto& regime : report.regimes) {
    regime.mean_accuracy = mean_of(regime.per_split);
    regime.std_accuracy = stddev_of(regime.per_split, regime.mean_accuracy);
  }
  report.h_f_mean = mean_of(h_f_values);
  report.h_s_mean = mean_of(h_s_values);
  report.t_effective_mean = mean_of(t_effective);

  if (!report.single_block) {
    auto cm = CorrectnessMatrix::from_predictions(block_predictions, pooled_truth);
    DiversityReport diversity = diversity_report(cm);
    diversity.h_f = report.h_f_mean;
    diversity.h_s = report.h_s_mean;
    report.block_diversity = diversity;
  }
  return report;
}

}  // namespace featsel
