// Acceptance suite: one pass/fail line per criterion, nonzero exit when any
// criterion fails. Tolerances and thresholds are pinned in code.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <functional>
#include <numeric>
#include <string>
#include <vector>

#include "featsel/dataset.hpp"
#include "featsel/diversity.hpp"
#include "featsel/eval.hpp"
#include "featsel/ranking.hpp"
#include "featsel/report.hpp"
#include "featsel/rng.hpp"
#include "featsel/selector.hpp"
#include "featsel/synth.hpp"
#include "greedy_oracle.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using namespace featsel;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

double elapsed_seconds(std::chrono::steady_clock::time_point start) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

std::string fmt(const char* format, auto... args) {
  char buffer[256];
  std::snprintf(buffer, sizeof(buffer), format, args...);
  return buffer;
}

LabeledDataset random_instance(Rng& rng, int max_rows, int max_cols, int max_classes) {
  const int rows = rng.uniform_int(2, max_rows);
  const int cols = rng.uniform_int(1, max_cols);
  const int classes = rng.uniform_int(2, max_classes);
  std::vector<double> data(static_cast<std::size_t>(rows) * cols);
  for (auto& v : data) {
    v = rng.uniform_int(0, 4) == 0 ? 0.0 : rng.uniform(-1, 1);
  }
  std::vector<int> labels(rows);
  for (auto& l : labels) l = rng.uniform_int(0, classes - 1);
  labels[0] = 0;
  labels[rows - 1] = classes - 1;
  std::vector<std::string> names;
  for (int j = 0; j < cols; ++j) names.push_back("f" + std::to_string(j));
  return LabeledDataset(std::move(data), rows, std::move(labels), classes,
                        std::move(names), std::vector<std::string>(cols, "unknown"));
}

bool has_eligible(const std::vector<FeatureStats>& stats) {
  for (const auto& s : stats) {
    if (s.eligible) return true;
  }
  return false;
}

// --------------------------------------------------------------------------
// 1. greedy selection matches an independent brute-force re-evaluation

Outcome criterion_greedy_oracle() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(10001);
  int checked = 0;
  while (checked < 1000) {
    auto ds = random_instance(rng, 50, 20, 4);
    const int k = rng.uniform_int(1, ds.rows());
    const int t = rng.uniform_int(1, 10);
    auto stats = rank_all_features(ds, k);
    if (!has_eligible(stats)) continue;
    ++checked;

    auto got = select_features(stats, ds.rows(), t);
    auto expected = oracle::run_greedy(ds, k, t);
    if (got.selected != expected.selected) {
      return {false, fmt("instance %d: selected sequence differs", checked)};
    }
    for (std::size_t i = 0; i < got.per_step.size(); ++i) {
      if (std::abs(got.per_step[i].weighted_score - expected.steps[i].score) > 1e-12) {
        return {false, fmt("instance %d step %zu: score differs by %.3e", checked, i,
                           std::abs(got.per_step[i].weighted_score - expected.steps[i].score))};
      }
    }
  }
  const double seconds = elapsed_seconds(start);
  if (seconds >= 10.0) return {false, fmt("took %.2f s (limit 10 s)", seconds)};
  return {true, fmt("1000 instances, %.2f s", seconds)};
}

// --------------------------------------------------------------------------
// 2. entropy bounds, purity/uniformity characterization, frozen value

Outcome criterion_entropy_suite() {
  const auto start = std::chrono::steady_clock::now();
  Rng rng(10002);
  for (int trial = 0; trial < 10000; ++trial) {
    const int classes = rng.uniform_int(2, 10);
    std::vector<int> counts(classes, 0);
    if (trial % 10 == 3) {
      counts[rng.uniform_int(0, classes - 1)] = rng.uniform_int(1, 12);  // pure
    } else if (trial % 10 == 7) {
      const int each = rng.uniform_int(1, 6);  // exactly uniform
      for (auto& c : counts) c = each;
    } else {
      const int size = rng.uniform_int(1, 60);
      for (int i = 0; i < size; ++i) ++counts[rng.uniform_int(0, classes - 1)];
    }
    int total = std::accumulate(counts.begin(), counts.end(), 0);
    if (total == 0) {
      counts[0] = 1;
      total = 1;
    }

    std::vector<double> column(total);
    std::vector<int> labels(total);
    int row = 0;
    for (int c = 0; c < classes; ++c) {
      for (int i = 0; i < counts[c]; ++i) {
        column[row] = 1.0 + row;
        labels[row] = c;
        ++row;
      }
    }
    LabeledDataset ds(column, total, labels, classes, {"f"}, {"unknown"});
    auto top = top_k_samples(ds, 0, total);
    const double h = class_entropy(top, ds);
    const double ceiling = std::log2(static_cast<double>(classes));

    if (h < 0.0 || h > ceiling + 1e-12) {
      return {false, fmt("entropy %.12f outside [0, log2 %d]", h, classes)};
    }
    const int nonzero = static_cast<int>(
        std::count_if(counts.begin(), counts.end(), [](int c) { return c > 0; }));
    const bool pure = nonzero == 1;
    if (pure != (h <= 1e-12)) {
      return {false, fmt("purity mismatch: %d classes present, H = %.15f", nonzero, h)};
    }
    const bool uniform = nonzero == classes &&
                         std::all_of(counts.begin(), counts.end(),
                                     [&](int c) { return c == counts[0]; });
    if (uniform != (std::abs(h - ceiling) <= 1e-9)) {
      return {false, fmt("uniformity mismatch at H = %.15f vs log2 C = %.15f", h, ceiling)};
    }
  }

  // frozen reference: 3:1 two-class split
  {
    LabeledDataset ds({4, 3, 2, 1}, 4, {0, 0, 0, 1}, 2, {"f"}, {"unknown"});
    const double h = class_entropy(top_k_samples(ds, 0, 4), ds);
    if (std::abs(h - 0.811278) > 1e-6) {
      return {false, fmt("3:1 split entropy %.9f differs from 0.811278", h)};
    }
  }
  const double seconds = elapsed_seconds(start);
  if (seconds >= 1.0) return {false, fmt("took %.3f s (limit 1 s)", seconds)};
  return {true, fmt("10000 sets, %.3f s", seconds)};
}

// --------------------------------------------------------------------------
// 3. per-column positive rescaling never changes the selected sequence

Outcome criterion_scaling_invariance() {
  Rng rng(10003);
  for (int trial = 0; trial < 100; ++trial) {
    auto ds = random_instance(rng, 40, 15, 4);
    const int k = rng.uniform_int(1, ds.rows());
    const int t = rng.uniform_int(1, 12);
    auto stats = rank_all_features(ds, k);
    if (!has_eligible(stats)) {
      --trial;
      continue;
    }
    auto baseline = select_features(stats, ds.rows(), t);

    std::vector<double> scaled_data;
    scaled_data.reserve(static_cast<std::size_t>(ds.rows()) * ds.cols());
    for (int j = 0; j < ds.cols(); ++j) {
      const double scale = std::exp(rng.uniform(-3, 3));
      for (double v : ds.column(j)) scaled_data.push_back(v * scale);
    }
    LabeledDataset scaled(std::move(scaled_data), ds.rows(), ds.labels(), ds.classes(),
                          ds.feature_names(), ds.provenance());
    auto rescaled = select_features(rank_all_features(scaled, k), scaled.rows(), t);
    if (baseline.selected != rescaled.selected) {
      return {false, fmt("trial %d: sequence changed under positive rescaling", trial)};
    }
  }
  return {true, "100 datasets, sequences identical"};
}

// --------------------------------------------------------------------------
// 4. diversity statistics: KW = disagreement/4 for L=2, published-row
//    consistency, closed forms for identical/complementary classifiers

Outcome criterion_diversity_consistency() {
  Rng rng(10004);
  for (int trial = 0; trial < 500; ++trial) {
    const int n = rng.uniform_int(1, 80);
    CorrectnessMatrix cm(2, n);
    for (int l = 0; l < 2; ++l) {
      for (int i = 0; i < n; ++i) cm.set(l, i, rng.below(2) == 0);
    }
    auto r = diversity_report(cm);
    if (std::abs(r.kw_variance - r.disagreement / 4.0) > 1e-12) {
      return {false, fmt("KW %.15f != disagreement/4 %.15f", r.kw_variance,
                         r.disagreement / 4.0)};
    }
  }

  // published disagreement/KW rows agree to their printed rounding
  const std::vector<std::pair<double, double>> rows{
      {0.0279, 0.0070}, {0.0172, 0.0043}, {0.0008, 0.0002}};
  for (const auto& [disagreement, kw] : rows) {
    const double rounded = std::round(disagreement / 4.0 * 1e4) / 1e4;
    if (std::abs(rounded - kw) > 1e-12) {
      return {false, fmt("row D=%.4f: D/4 rounds to %.4f, table says %.4f", disagreement,
                         rounded, kw)};
    }
  }

  CorrectnessMatrix identical(2, 4);
  for (int l = 0; l < 2; ++l) {
    identical.set(l, 0, true);
    identical.set(l, 1, true);
  }
  auto ri = diversity_report(identical);
  if (ri.disagreement != 0.0 || ri.kw_variance != 0.0 || !ri.q_statistic ||
      *ri.q_statistic != 1.0 || !ri.kappa || *ri.kappa != 1.0 ||
      !ri.generalized_diversity || *ri.generalized_diversity != 0.0) {
    return {false, "identical-classifier closed form violated"};
  }

  CorrectnessMatrix complementary(2, 4);
  for (int i = 0; i < 4; ++i) {
    complementary.set(0, i, i % 2 == 0);
    complementary.set(1, i, i % 2 == 1);
  }
  auto rc = diversity_report(complementary);
  if (rc.disagreement != 1.0 || rc.kw_variance != 0.25 || !rc.q_statistic ||
      *rc.q_statistic != -1.0 || !rc.kappa || *rc.kappa != -1.0 ||
      !rc.generalized_diversity || *rc.generalized_diversity != 1.0) {
    return {false, "complementary-classifier closed form violated"};
  }
  return {true, "500 random matrices + closed forms + published rows"};
}

// --------------------------------------------------------------------------
// 5. selection lowers the mean entropy on noisy planted datasets

Outcome criterion_entropy_direction() {
  int hits = 0;
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SynthConfig config;
    config.classes = 4;
    config.samples_per_class = 12;
    config.informative_per_class = 2;
    config.noise_features = 24;  // 75% of all columns are noise
    config.duplicates_per_informative = 0;
    config.seed = 900 + seed;
    auto sd = generate(config);

    // K above the class size keeps informative entropies positive but below
    // the noise level
    const int k = KSpec::fraction(0.5).resolve(sd.data.rows());
    auto stats = rank_all_features(sd.data, k);
    auto sel = select_features(stats, sd.data.rows(),
                               config.classes * config.informative_per_class);
    std::vector<int> eligible;
    for (const auto& s : stats) {
      if (s.eligible) eligible.push_back(s.feature_id);
    }
    const double h_f = avg_entropy(stats, eligible);
    const double h_s = avg_entropy(stats, sel.selected);
    if (h_s < h_f) ++hits;
  }
  if (hits < 19) return {false, fmt("H_S < H_F in only %d of 20 seeds", hits)};
  return {true, fmt("H_S < H_F in %d of 20 seeds", hits)};
}

// --------------------------------------------------------------------------
// 6. end-to-end recovery and accuracy on the planted benchmark

Outcome criterion_end_to_end() {
  const auto start = std::chrono::steady_clock::now();
  double recovery_sum = 0.0;
  double selected_acc_sum = 0.0;
  double baseline_acc_sum = 0.0;

  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    SynthConfig config;
    config.classes = 5;
    config.samples_per_class = 20;
    config.informative_per_class = 4;
    config.noise_features = 200;  // 10x the informative count
    config.duplicates_per_informative = 2;
    config.seed = 7000 + seed;
    auto sd = generate(config);

    auto split = make_equal_split(sd.data.rows(), 7100 + seed);
    auto train = take_rows(sd.data, split.train_rows);

    const int t = 2 * config.classes * config.informative_per_class;  // 40
    // default K = 10% of the train rows; T leaves 2x headroom so duplicate
    // copies cannot crowd out the planted originals
    auto sel = run_pipeline(train, KSpec::fraction(0.1), t);

    int groups_hit = 0;
    for (const auto& group : sd.informative_groups) {
      const bool hit = std::any_of(group.begin(), group.end(), [&](int column) {
        return std::find(sel.selected.begin(), sel.selected.end(), column) !=
               sel.selected.end();
      });
      if (hit) ++groups_hit;
    }
    recovery_sum += static_cast<double>(groups_hit) / sd.informative_groups.size();

    ClassifierConfig cfg;  // k-NN, k = 5
    selected_acc_sum += classify_accuracy(sd.data, split, sel.selected, cfg);
    std::vector<int> all(sd.data.cols());
    std::iota(all.begin(), all.end(), 0);
    baseline_acc_sum += classify_accuracy(sd.data, split, all, cfg);
  }

  const double recovery = recovery_sum / 20.0;
  const double selected_acc = selected_acc_sum / 20.0;
  const double baseline_acc = baseline_acc_sum / 20.0;
  const double seconds = elapsed_seconds(start);
  if (seconds >= 60.0) return {false, fmt("took %.1f s (limit 60 s)", seconds)};
  if (recovery < 0.90) {
    return {false, fmt("mean recovery %.3f below 0.90", recovery)};
  }
  if (selected_acc < baseline_acc) {
    return {false, fmt("selected k-NN accuracy %.3f below baseline %.3f", selected_acc,
                       baseline_acc)};
  }
  return {true, fmt("recovery %.3f, k-NN %.3f vs baseline %.3f, %.1f s", recovery,
                    selected_acc, baseline_acc, seconds)};
}

// --------------------------------------------------------------------------
// 7. the T/2 selection is exactly the first half of the T selection

Outcome criterion_greedy_prefix() {
  Rng rng(10007);
  for (int trial = 0; trial < 200; ++trial) {
    auto ds = random_instance(rng, 40, 16, 4);
    const int k = rng.uniform_int(1, ds.rows());
    const int t = 2 * rng.uniform_int(1, 8);
    auto stats = rank_all_features(ds, k);
    if (!has_eligible(stats)) {
      --trial;
      continue;
    }
    auto full = select_features(stats, ds.rows(), t);
    auto half = select_features(stats, ds.rows(), t / 2);
    if (half.selected.size() > full.selected.size() ||
        !std::equal(half.selected.begin(), half.selected.end(), full.selected.begin())) {
      return {false, fmt("trial %d: T/2 selection is not a prefix", trial)};
    }
  }
  return {true, "200 instances, prefixes exact"};
}

// --------------------------------------------------------------------------
// 8. hyperparameter defaults: K = 10% resolves to 50 on 500 rows, T = 3000

Outcome criterion_defaults() {
  if (KSpec().resolve(500) != 50) {
    return {false, fmt("default K spec resolves to %d on 500 rows", KSpec().resolve(500))};
  }
  if (KSpec::fraction(0.1).resolve(500) != 50) {
    return {false, "K = 10% of 500 does not resolve to 50"};
  }
  EvaluateOptions options;
  if (options.t != 3000) {
    return {false, fmt("default T is %d, expected 3000", options.t)};
  }

  // the CLI echoes both in its report
  testutil::TempDir dir("acc_defaults");
  const std::string data_dir = (dir.path() / "data").string();
  std::string command = std::string(FEATSEL_CLI_PATH) +
                        " synth --classes 5 --per-class 100 --informative 1 --noise 2"
                        " --duplicates 0 --seed 1 --out " + data_dir + " >/dev/null 2>&1";
  if (std::system(command.c_str()) != 0) return {false, "synth command failed"};
  command = std::string(FEATSEL_CLI_PATH) + " select --features " + data_dir +
            "/data.csv --out " + (dir.path() / "sel").string() + " >/dev/null 2>&1";
  if (std::system(command.c_str()) != 0) return {false, "select command failed"};
  const std::string report = testutil::slurp(dir.path() / "sel" / "selection.kv");
  if (report.find("k.resolved = 50\n") == std::string::npos) {
    return {false, "report does not echo k.resolved = 50 for 500 rows"};
  }
  if (report.find("t.requested = 3000\n") == std::string::npos) {
    return {false, "report does not echo t.requested = 3000"};
  }
  return {true, "K(10%, 500) = 50 and T = 3000 echoed in the report"};
}

// --------------------------------------------------------------------------
// 9. fixed-seed CLI reruns emit byte-identical machine-readable outputs

Outcome criterion_determinism() {
  testutil::TempDir dir("acc_determinism");
  const std::string cli = FEATSEL_CLI_PATH;

  auto shell = [&](const std::string& args) {
    const std::string command = cli + " " + args + " >/dev/null 2>&1";
    return std::system(command.c_str()) == 0;
  };

  // fixed prediction inputs for the diversity command
  testutil::TempDir inputs("acc_det_inputs");
  inputs.write("p1.txt", "0\n1\n2\n0\n1\n");
  inputs.write("p2.txt", "0\n2\n2\n0\n0\n");
  inputs.write("truth.txt", "0\n1\n2\n1\n1\n");

  for (const std::string run : {"r1", "r2"}) {
    const fs::path base = dir.path() / run;
    if (!shell("synth --classes 3 --per-class 10 --informative 2 --noise 8 --duplicates 1"
               " --seed 21 --out " + (base / "synth").string())) {
      return {false, "synth failed in run " + run};
    }
    const std::string data = (base / "synth" / "data.csv").string();
    const std::string manifest = (base / "synth" / "manifest.txt").string();
    if (!shell("select --features " + data + " --manifest " + manifest +
               " --k 0.3 --t 10 --out " + (base / "select").string())) {
      return {false, "select failed in run " + run};
    }
    if (!shell("evaluate --features " + data + " --manifest " + manifest +
               " --k 0.3 --t 10 --splits 3 --seed 9 --out " + (base / "evaluate").string())) {
      return {false, "evaluate failed in run " + run};
    }
    if (!shell("sweep --features " + data + " --manifest " + manifest +
               " --mode k --grid 0.2 --grid 0.5 --t 8 --splits 2 --seed 4 --out " +
               (base / "sweep").string())) {
      return {false, "sweep failed in run " + run};
    }
    if (!shell("diversity --pred " + (inputs.path() / "p1.txt").string() + " --pred " +
               (inputs.path() / "p2.txt").string() + " --truth " +
               (inputs.path() / "truth.txt").string() + " --out " +
               (base / "diversity").string())) {
      return {false, "diversity failed in run " + run};
    }
  }

  const std::vector<std::string> files{
      "synth/data.csv",     "synth/manifest.txt", "synth/truth.txt", "synth/synth.kv",
      "select/selection.kv", "select/provenance.csv", "evaluate/evaluate.kv",
      "sweep/sweep.csv",    "sweep/sweep.kv",     "diversity/diversity.kv"};
  for (const auto& file : files) {
    const std::string a = testutil::slurp(dir.path() / "r1" / file);
    const std::string b = testutil::slurp(dir.path() / "r2" / file);
    if (a.empty()) return {false, file + " missing or empty"};
    if (a != b) return {false, file + " differs between reruns"};
  }
  return {true, fmt("%zu machine outputs byte-identical across reruns", files.size())};
}

// --------------------------------------------------------------------------
// 10. analytic logreg gradient vs central finite differences

Outcome criterion_gradient_check() {
  Rng rng(10010);
  Design d;
  d.rows = 15;
  d.cols = 4;
  d.classes = 3;
  for (int i = 0; i < d.rows; ++i) {
    for (int j = 0; j < d.cols; ++j) d.x.push_back(rng.gaussian(0, 1));
    d.y.push_back(rng.uniform_int(0, 2));
  }
  d.y[0] = 0;
  d.y[1] = 1;
  d.y[2] = 2;
  const double l2 = 0.01;

  double worst = 0.0;
  for (int point = 0; point < 10; ++point) {
    LogRegModel model;
    model.classes = d.classes;
    model.features = d.cols;
    model.weights.resize(static_cast<std::size_t>(d.classes) * d.cols);
    model.bias.resize(d.classes);
    for (auto& w : model.weights) w = rng.gaussian(0, 1);
    for (auto& b : model.bias) b = rng.gaussian(0, 1);

    std::vector<double> grad_w, grad_b;
    logreg_gradient(model, d, l2, grad_w, grad_b);

    auto check = [&](double& param, double analytic) {
      const double h = 1e-5 * std::max(1.0, std::abs(param));
      const double saved = param;
      param = saved + h;
      const double up = logreg_loss(model, d, l2);
      param = saved - h;
      const double down = logreg_loss(model, d, l2);
      param = saved;
      const double fd = (up - down) / (2 * h);
      const double rel =
          std::abs(analytic - fd) / std::max({1.0, std::abs(analytic), std::abs(fd)});
      worst = std::max(worst, rel);
    };
    for (std::size_t i = 0; i < model.weights.size(); ++i) check(model.weights[i], grad_w[i]);
    for (int c = 0; c < d.classes; ++c) check(model.bias[c], grad_b[c]);
  }
  if (worst >= 1e-4) return {false, fmt("worst relative error %.3e >= 1e-4", worst)};
  return {true, fmt("10 points, worst relative error %.3e", worst)};
}

}  // namespace

int main() {
  struct Criterion {
    int id;
    const char* name;
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {1, "greedy-oracle equivalence", criterion_greedy_oracle},
      {2, "entropy suite", criterion_entropy_suite},
      {3, "positive-scaling invariance", criterion_scaling_invariance},
      {4, "diversity consistency", criterion_diversity_consistency},
      {5, "average-entropy direction", criterion_entropy_direction},
      {6, "end-to-end selection quality", criterion_end_to_end},
      {7, "greedy prefix property", criterion_greedy_prefix},
      {8, "hyperparameter defaults", criterion_defaults},
      {9, "CLI determinism", criterion_determinism},
      {10, "logreg gradient check", criterion_gradient_check},
  };

  int failures = 0;
  for (const auto& criterion : criteria) {
    Outcome outcome;
    try {
      outcome = criterion.run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %2d. %s — %s\n", outcome.pass ? "PASS" : "FAIL", criterion.id,
                criterion.name, outcome.detail.c_str());
    if (!outcome.pass) ++failures;
  }
  if (failures > 0) {
    std::printf("%d of %zu criteria failed\n", failures, criteria.size());
    return 1;
  }
  std::printf("all %zu criteria passed\n", criteria.size());
  return 0;
}
