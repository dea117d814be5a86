// featsel: entropy-weighted greedy feature selection and integration for
// multi-representation feature matrices, with evaluation and diversity
// analysis tooling.
//
// Subcommands: synth, select, evaluate, diversity, sweep. Every command
// writes machine-readable reports (key-value text / CSV) into --out and
// prints a human-readable summary on stdout. Machine reports contain no
// filesystem paths, so fixed-seed reruns are byte-identical.

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "featsel/dataset.hpp"
#include "featsel/diversity.hpp"
#include "featsel/error.hpp"
#include "featsel/eval.hpp"
#include "featsel/ranking.hpp"
#include "featsel/report.hpp"
#include "featsel/selector.hpp"
#include "featsel/synth.hpp"

namespace fs = std::filesystem;
using namespace featsel;

namespace {

std::string_view trim_view(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Plain key-value config files ("t = 3000" lines, # comments). Values apply
// only to options the command line did not set, so the precedence is
// flags > config file > defaults. Repeated keys accumulate for list options.
void apply_config_file(CLI::App* cmd) {
  auto* config_option = cmd->get_option_no_throw("--config");
  if (config_option == nullptr || config_option->count() == 0) return;
  const auto path = config_option->as<std::string>();
  std::ifstream in(path);
  if (!in) fail(errc::io, "cannot open config file: " + path);

  std::vector<CLI::Option*> touched;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const std::string_view view = trim_view(line);
    if (view.empty() || view.front() == '#') continue;
    const std::size_t eq = view.find('=');
    if (eq == std::string_view::npos) {
      fail(errc::config, path + ": line " + std::to_string(line_no) +
                             ": expected 'key = value'");
    }
    const std::string key(trim_view(view.substr(0, eq)));
    const std::string value(trim_view(view.substr(eq + 1)));
    CLI::Option* option = cmd->get_option_no_throw("--" + key);
    if (option == nullptr || option == config_option) {
      fail(errc::config, path + ": line " + std::to_string(line_no) +
                             ": unknown config key '" + key + "'");
    }
    if (option->count() > 0 &&
        std::find(touched.begin(), touched.end(), option) == touched.end()) {
      continue;  // set on the command line
    }
    option->add_result(value);
    if (std::find(touched.begin(), touched.end(), option) == touched.end()) {
      touched.push_back(option);
    }
  }
  for (auto* option : touched) option->run_callback();
}

void require_value(const std::string& value, const char* flag) {
  if (value.empty()) fail(errc::config, std::string(flag) + " is required");
}

struct DataArgs {
  std::string features;
  std::string features_b;
  std::string manifest;
  int class_count = 0;  // 0 = derive from labels
};

void add_data_flags(CLI::App* cmd, DataArgs& args) {
  cmd->add_option("--features", args.features, "input feature matrix (columnar text)");
  cmd->add_option("--features-b", args.features_b,
                  "second representation block, concatenated column-wise");
  cmd->add_option("--manifest", args.manifest, "provenance manifest (prefix = tag lines)");
  cmd->add_option("--classes", args.class_count,
                  "explicit class count (default: 1 + max observed label)");
}

LabeledDataset load_inputs(const DataArgs& args) {
  ProvenanceManifest manifest;
  if (!args.manifest.empty()) manifest = ProvenanceManifest::load(args.manifest);
  std::optional<int> override;
  if (args.class_count > 0) override = args.class_count;
  LabeledDataset ds = load_dataset(args.features, manifest, override);
  if (!args.features_b.empty()) {
    ds = concatenate(ds, load_dataset(args.features_b, manifest, override));
  }
  return ds;
}

KSpec parse_k_spec(const std::string& text) {
  long count = 0;
  const char* begin = text.data();
  const char* end = begin + text.size();
  if (auto [p, ec] = std::from_chars(begin, end, count); ec == std::errc() && p == end) {
    if (count < 1) fail(errc::config, "--k count must be at least 1");
    return KSpec::count(static_cast<int>(count));
  }
  double fraction = 0.0;
  if (auto [p, ec] = std::from_chars(begin, end, fraction); ec == std::errc() && p == end) {
    if (!(fraction > 0.0) || fraction > 1.0) {
      fail(errc::config, "--k fraction must lie in (0, 1]");
    }
    return KSpec::fraction(fraction);
  }
  fail(errc::config, "--k expects a positive integer count or a fraction like 0.1");
}

struct ClassifierArgs {
  std::string name = "knn";
  ClassifierConfig config;

  ClassifierConfig resolve() const {
    ClassifierConfig cfg = config;
    if (name == "knn") {
      cfg.kind = ClassifierConfig::Kind::knn;
    } else if (name == "logreg") {
      cfg.kind = ClassifierConfig::Kind::logreg;
    } else {
      fail(errc::config, "unknown classifier '" + name + "' (expected knn or logreg)");
    }
    return cfg;
  }
};

void add_classifier_flags(CLI::App* cmd, ClassifierArgs& args) {
  cmd->add_option("--classifier", args.name, "evaluation classifier: knn or logreg")
      ->check(CLI::IsMember({"knn", "logreg"}));
  cmd->add_option("--knn-k", args.config.knn_k, "k-NN neighbor count (odd)");
  cmd->add_option("--epochs", args.config.epochs, "logreg gradient-descent epochs");
  cmd->add_option("--learning-rate", args.config.learning_rate, "logreg learning rate");
  cmd->add_option("--l2", args.config.l2, "logreg ridge strength");
}

void emit_classifier(KvReport& kv, const ClassifierArgs& args) {
  kv.add("classifier", args.name);
  if (args.name == "knn") {
    kv.add("classifier.knn_k", args.config.knn_k);
  } else {
    kv.add("classifier.epochs", args.config.epochs);
    kv.add("classifier.learning_rate", args.config.learning_rate);
    kv.add("classifier.l2", args.config.l2);
  }
}

void emit_k_spec(KvReport& kv, const KSpec& k) {
  kv.add("k.kind", k.is_fraction ? "fraction" : "count");
  kv.add("k.value", k.value);
}

std::string row4(const std::string& a, const std::string& b, const std::string& c,
                 const std::string& d) {
  char buffer[160];
  std::snprintf(buffer, sizeof(buffer), "  %-8s %8s %10s %10s\n", a.c_str(), b.c_str(),
                c.c_str(), d.c_str());
  return buffer;
}

std::string fixed4(double v) {
  char buffer[32];
  std::snprintf(buffer, sizeof(buffer), "%.4f", v);
  return buffer;
}

// ---------------------------------------------------------------------------
// synth

struct SynthArgs {
  SynthConfig config;
  std::string out;
  std::string config_file;
};

int cmd_synth(const SynthArgs& args) {
  require_value(args.out, "--out");
  SynthDataset sd = generate(args.config);
  const fs::path dir(args.out);
  write_synth_files(sd, dir);

  KvReport kv;
  kv.add("schema", "featsel.synth.v1");
  kv.add("classes", args.config.classes);
  kv.add("samples_per_class", args.config.samples_per_class);
  kv.add("informative_per_class", args.config.informative_per_class);
  kv.add("noise_features", args.config.noise_features);
  kv.add("duplicates_per_informative", args.config.duplicates_per_informative);
  kv.add("on_mean", args.config.on_mean);
  kv.add("off_mean", args.config.off_mean);
  kv.add("spread", args.config.spread);
  kv.add("seed", args.config.seed);
  kv.add("rows", sd.data.rows());
  kv.add("features", sd.data.cols());
  kv.add("truth.count", static_cast<int>(sd.informative_names.size()));
  write_file_atomic(dir / "synth.kv", kv.str());

  std::cout << "synth: wrote " << sd.data.rows() << " rows x " << sd.data.cols()
            << " features (" << sd.informative_names.size() << " planted) to "
            << dir.string() << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// select

struct SelectArgs {
  DataArgs data;
  std::string k_text = "0.1";
  int t = 3000;
  std::string out;
  std::string config;
};

int cmd_select(const SelectArgs& args) {
  require_value(args.data.features, "--features");
  require_value(args.out, "--out");
  const KSpec k = parse_k_spec(args.k_text);
  LabeledDataset ds = load_inputs(args.data);

  const int k_resolved = k.resolve(ds.rows());
  auto stats = rank_all_features(ds, k_resolved);
  SelectionResult result = select_features(stats, ds.rows(), args.t);

  std::vector<int> eligible;
  for (const auto& s : stats) {
    if (s.eligible) eligible.push_back(s.feature_id);
  }
  const double h_f = avg_entropy(stats, eligible);
  const double h_s = avg_entropy(stats, result.selected);

  KvReport kv;
  kv.add("schema", "featsel.selection.v1");
  kv.add("samples", ds.rows());
  kv.add("features", ds.cols());
  kv.add("classes", ds.classes());
  kv.add("eligible", result.eligible_count);
  emit_k_spec(kv, k);
  kv.add("k.resolved", k_resolved);
  kv.add("t.requested", args.t);
  kv.add("t.effective", static_cast<int>(result.selected.size()));
  kv.add("entropy.candidates.mean", h_f);
  kv.add("entropy.selected.mean", h_s);
  kv.add("selected.count", static_cast<int>(result.selected.size()));
  kv.add_list("selected.ids", result.selected);
  std::vector<std::string> names;
  names.reserve(result.selected.size());
  for (int id : result.selected) names.push_back(ds.feature_names()[id]);
  kv.add_list("selected.names", names);
  for (std::size_t i = 0; i < result.per_step.size(); ++i) {
    const auto& step = result.per_step[i];
    const std::string prefix = "step." + std::to_string(i + 1);
    kv.add(prefix + ".feature", step.feature_id);
    kv.add(prefix + ".entropy", step.entropy_bits);
    kv.add(prefix + ".score", step.weighted_score);
    kv.add(prefix + ".penalized", static_cast<int>(step.penalized_sample_ids.size()));
  }

  const fs::path dir(args.out);
  fs::create_directories(dir);
  write_file_atomic(dir / "selection.kv", kv.str());

  // Cumulative per-block counts of the selected features, one row per
  // iteration.
  ProvenanceCounts counts = provenance_counts(result, ds);
  std::string csv = "t";
  for (const auto& tag : counts.tags) csv += "," + tag;
  csv += '\n';
  for (std::size_t t = 0; t < counts.cumulative.size(); ++t) {
    csv += std::to_string(t + 1);
    for (int c : counts.cumulative[t]) csv += "," + std::to_string(c);
    csv += '\n';
  }
  write_file_atomic(dir / "provenance.csv", csv);

  std::cout << "select: " << result.selected.size() << " of " << result.eligible_count
            << " eligible features (K=" << k_resolved << ", T=" << args.t << ")\n"
            << "  mean entropy: candidates " << fixed4(h_f) << " bits, selected "
            << fixed4(h_s) << " bits\n  final provenance counts:";
  const auto finals = counts.final_counts();
  for (std::size_t i = 0; i < counts.tags.size(); ++i) {
    std::cout << " " << counts.tags[i] << "=" << finals[i];
  }
  std::cout << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// evaluate

struct EvaluateArgs {
  DataArgs data;
  std::string k_text = "0.1";
  int t = 3000;
  ClassifierArgs classifier;
  int splits = 10;
  std::uint64_t seed = 0;
  std::string out;
  std::string config;
};

// Representation blocks: with two input files, the files are the blocks;
// with one file, columns group by provenance tag when exactly two tags are
// present.
std::pair<std::vector<std::vector<int>>, std::vector<std::string>> derive_blocks(
    const LabeledDataset& ds, int cols_in_first, bool two_files) {
  std::vector<std::vector<int>> blocks;
  std::vector<std::string> names;
  if (two_files) {
    blocks.resize(2);
    for (int j = 0; j < ds.cols(); ++j) blocks[j < cols_in_first ? 0 : 1].push_back(j);
    std::set<std::string> tags_a, tags_b;
    for (int j = 0; j < ds.cols(); ++j) {
      (j < cols_in_first ? tags_a : tags_b).insert(ds.provenance()[j]);
    }
    names.push_back(tags_a.size() == 1 && *tags_a.begin() != "unknown" ? *tags_a.begin()
                                                                       : "block-a");
    names.push_back(tags_b.size() == 1 && *tags_b.begin() != "unknown" ? *tags_b.begin()
                                                                       : "block-b");
    return {blocks, names};
  }
  std::set<std::string> tags(ds.provenance().begin(), ds.provenance().end());
  if (tags.size() == 2) {
    blocks.resize(2);
    const std::string first = *tags.begin();
    for (int j = 0; j < ds.cols(); ++j) {
      blocks[ds.provenance()[j] == first ? 0 : 1].push_back(j);
    }
    names.assign(tags.begin(), tags.end());
    return {blocks, names};
  }
  blocks.emplace_back(ds.cols());
  std::iota(blocks[0].begin(), blocks[0].end(), 0);
  names.push_back("all");
  return {blocks, names};
}

void emit_diversity(KvReport& kv, const std::string& prefix, const DiversityReport& d) {
  kv.add(prefix + "kappa", d.kappa);
  kv.add(prefix + "q", d.q_statistic);
  kv.add(prefix + "q.defined_pairs", d.q_defined_pairs);
  kv.add(prefix + "q.pairs", d.q_pair_count);
  kv.add(prefix + "kw", d.kw_variance);
  kv.add(prefix + "disagreement", d.disagreement);
  kv.add(prefix + "gd", d.generalized_diversity);
}

int cmd_evaluate(const EvaluateArgs& args) {
  require_value(args.data.features, "--features");
  require_value(args.out, "--out");
  EvaluateOptions options;
  options.k = parse_k_spec(args.k_text);
  options.t = args.t;
  options.classifier = args.classifier.resolve();
  options.splits = args.splits;
  options.seed = args.seed;

  ProvenanceManifest manifest;
  if (!args.data.manifest.empty()) manifest = ProvenanceManifest::load(args.data.manifest);
  std::optional<int> override;
  if (args.data.class_count > 0) override = args.data.class_count;
  LabeledDataset ds = load_dataset(args.data.features, manifest, override);
  const int cols_in_first = ds.cols();
  const bool two_files = !args.data.features_b.empty();
  if (two_files) ds = concatenate(ds, load_dataset(args.data.features_b, manifest, override));

  auto [blocks, block_names] = derive_blocks(ds, cols_in_first, two_files);
  EvaluateReport report = evaluate_regimes(ds, blocks, block_names, options);

  KvReport kv;
  kv.add("schema", "featsel.evaluate.v1");
  kv.add("samples", ds.rows());
  kv.add("features", ds.cols());
  kv.add("classes", ds.classes());
  emit_classifier(kv, args.classifier);
  kv.add("splits", args.splits);
  kv.add("seed", args.seed);
  emit_k_spec(kv, options.k);
  kv.add("k.resolved", report.k_resolved);
  kv.add("t.requested", report.t_requested);
  kv.add("t.effective.mean", report.t_effective_mean);
  kv.add("blocks", static_cast<int>(blocks.size()));
  for (std::size_t b = 0; b < blocks.size(); ++b) {
    kv.add("block." + std::to_string(b + 1) + ".name", block_names[b]);
    kv.add("block." + std::to_string(b + 1) + ".columns",
           static_cast<int>(blocks[b].size()));
  }
  if (report.single_block) {
    kv.add("note", "single block: M, O and MO regimes coincide");
  }
  kv.add("entropy.candidates.mean", report.h_f_mean);
  kv.add("entropy.selected.mean", report.h_s_mean);
  for (const auto& regime : report.regimes) {
    const std::string prefix = "regime." + regime.name;
    kv.add(prefix + ".columns", regime.column_count);
    kv.add(prefix + ".mean", regime.mean_accuracy);
    kv.add(prefix + ".std", regime.std_accuracy);
    kv.add_list(prefix + ".per_split", regime.per_split);
  }
  if (report.block_diversity) {
    emit_diversity(kv, "diversity.", *report.block_diversity);
  }

  const fs::path dir(args.out);
  fs::create_directories(dir);
  write_file_atomic(dir / "evaluate.kv", kv.str());

  std::cout << "evaluate: " << args.splits << " split(s), classifier "
            << args.classifier.name << ", K=" << report.k_resolved << ", T=" << args.t
            << "\n";
  if (report.single_block) {
    std::cout << "  single block: M, O and MO regimes coincide\n";
  }
  std::cout << row4("regime", "columns", "mean", "std");
  for (const auto& regime : report.regimes) {
    std::cout << row4(regime.name, std::to_string(regime.column_count),
                      fixed4(regime.mean_accuracy), fixed4(regime.std_accuracy));
  }
  std::cout << "  entropy: candidates " << fixed4(report.h_f_mean) << " bits, selected "
            << fixed4(report.h_s_mean) << " bits\n";
  return 0;
}

// ---------------------------------------------------------------------------
// diversity

struct DiversityArgs {
  std::vector<std::string> prediction_paths;
  std::string truth_path;
  std::string out;
  std::string config;
};

std::vector<int> read_label_file(const fs::path& path) {
  std::ifstream in(path);
  if (!in) fail(errc::io, "cannot open label file: " + path.string());
  std::vector<int> labels;
  std::string line;
  int line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    std::string_view view(line);
    while (!view.empty() && (view.back() == '\r' || view.back() == ' ')) view.remove_suffix(1);
    while (!view.empty() && view.front() == ' ') view.remove_prefix(1);
    if (view.empty() || view.front() == '#') continue;
    long value = 0;
    auto [p, ec] = std::from_chars(view.data(), view.data() + view.size(), value);
    if (ec != std::errc() || p != view.data() + view.size() || value < 0) {
      fail(errc::label, path.string() + ": line " + std::to_string(line_no) +
                            ": expected a non-negative integer label");
    }
    labels.push_back(static_cast<int>(value));
  }
  if (labels.empty()) fail(errc::schema, path.string() + ": no labels found");
  return labels;
}

int cmd_diversity(const DiversityArgs& args) {
  if (args.prediction_paths.size() < 2) {
    fail(errc::config, "diversity needs at least two --pred files");
  }
  require_value(args.truth_path, "--truth");
  require_value(args.out, "--out");
  const std::vector<int> truth = read_label_file(args.truth_path);
  std::vector<std::vector<int>> predictions;
  predictions.reserve(args.prediction_paths.size());
  for (const auto& p : args.prediction_paths) predictions.push_back(read_label_file(p));

  auto cm = CorrectnessMatrix::from_predictions(predictions, truth);
  DiversityReport report = diversity_report(cm);

  KvReport kv;
  kv.add("schema", "featsel.diversity.v1");
  kv.add("classifiers", cm.classifiers());
  kv.add("samples", cm.samples());
  for (std::size_t l = 0; l < predictions.size(); ++l) {
    kv.add("accuracy." + std::to_string(l + 1), accuracy(predictions[l], truth));
  }
  emit_diversity(kv, "", report);

  const fs::path dir(args.out);
  fs::create_directories(dir);
  write_file_atomic(dir / "diversity.kv", kv.str());

  const auto show = [](const std::optional<double>& v) {
    return v ? fixed4(*v) : std::string("undefined");
  };
  std::cout << "diversity over " << cm.classifiers() << " classifiers, " << cm.samples()
            << " samples\n"
            << "  kappa        " << show(report.kappa) << "\n"
            << "  Q statistic  " << show(report.q_statistic) << " (" << report.q_defined_pairs
            << "/" << report.q_pair_count << " pairs)\n"
            << "  KW variance  " << fixed4(report.kw_variance) << "\n"
            << "  disagreement " << fixed4(report.disagreement) << "\n"
            << "  gen. div.    " << show(report.generalized_diversity) << "\n";
  return 0;
}

// ---------------------------------------------------------------------------
// sweep

struct SweepArgs {
  DataArgs data;
  std::string mode = "k";
  std::vector<std::string> grid;
  std::string k_text = "0.1";
  int t = 3000;
  ClassifierArgs classifier;
  int repeats = 10;
  std::uint64_t seed = 0;
  std::string out;
  std::string config;
};

int cmd_sweep(const SweepArgs& args) {
  require_value(args.data.features, "--features");
  require_value(args.out, "--out");
  LabeledDataset ds = load_inputs(args.data);
  const ClassifierConfig cfg = args.classifier.resolve();

  SweepCurve curve;
  KvReport kv;
  kv.add("schema", "featsel.sweep.v1");
  kv.add("mode", args.mode);
  kv.add("samples", ds.rows());
  kv.add("features", ds.cols());
  emit_classifier(kv, args.classifier);
  kv.add("repeats", args.repeats);
  kv.add("seed", args.seed);

  if (args.mode == "k") {
    std::vector<double> fractions;
    if (args.grid.empty()) {
      fractions = {0.01, 0.05, 0.10, 0.25, 0.50, 1.00};
    } else {
      for (const auto& g : args.grid) {
        double f = 0.0;
        auto [p, ec] = std::from_chars(g.data(), g.data() + g.size(), f);
        if (ec != std::errc() || p != g.data() + g.size()) {
          fail(errc::config, "bad grid value '" + g + "'");
        }
        fractions.push_back(f);
      }
    }
    kv.add("fixed.t", args.t);
    curve = sweep_k(ds, args.seed, fractions, args.t, cfg, args.repeats);
  } else if (args.mode == "t") {
    std::vector<int> t_values;
    if (args.grid.empty()) {
      t_values = {100, 400, 1000, 3000};
    } else {
      for (const auto& g : args.grid) {
        long t = 0;
        auto [p, ec] = std::from_chars(g.data(), g.data() + g.size(), t);
        if (ec != std::errc() || p != g.data() + g.size()) {
          fail(errc::config, "bad grid value '" + g + "'");
        }
        t_values.push_back(static_cast<int>(t));
      }
    }
    const KSpec k = parse_k_spec(args.k_text);
    kv.add("fixed.k.kind", k.is_fraction ? "fraction" : "count");
    kv.add("fixed.k.value", k.value);
    curve = sweep_t(ds, args.seed, t_values, k, cfg, args.repeats);
  } else {
    fail(errc::config, "unknown sweep mode '" + args.mode + "' (expected k or t)");
  }

  for (std::size_t i = 0; i < curve.points.size(); ++i) {
    const auto& point = curve.points[i];
    const std::string prefix = "point." + std::to_string(i + 1);
    kv.add(prefix + ".parameter", point.parameter);
    kv.add(prefix + ".resolved", point.resolved);
    kv.add(prefix + ".short_topk", point.short_topk_mean);
    kv.add(prefix + ".mean", point.mean_accuracy);
    kv.add(prefix + ".std", point.std_accuracy);
  }

  std::string csv = "parameter,mean,std,repeats\n";
  for (const auto& point : curve.points) {
    csv += format_double(point.parameter) + "," + format_double(point.mean_accuracy) + "," +
           format_double(point.std_accuracy) + "," + std::to_string(point.repeats) + '\n';
  }

  const fs::path dir(args.out);
  fs::create_directories(dir);
  write_file_atomic(dir / "sweep.csv", csv);
  write_file_atomic(dir / "sweep.kv", kv.str());

  std::cout << "sweep (" << args.mode << "): " << curve.points.size() << " points, "
            << args.repeats << " repeat(s)\n"
            << row4("param", "resolved", "mean", "std");
  for (const auto& point : curve.points) {
    std::cout << row4(format_double(point.parameter),
                      format_double(point.resolved), fixed4(point.mean_accuracy),
                      fixed4(point.std_accuracy));
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"entropy-weighted greedy feature selection and integration"};
  app.require_subcommand(1);

  SynthArgs synth_args;
  auto* synth_cmd = app.add_subcommand("synth", "generate a planted-feature dataset");
  synth_cmd->add_option("--config", synth_args.config_file, "config file (key = value lines)");
  synth_cmd->add_option("--classes", synth_args.config.classes, "class count");
  synth_cmd->add_option("--per-class", synth_args.config.samples_per_class,
                        "samples per class");
  synth_cmd->add_option("--informative", synth_args.config.informative_per_class,
                        "informative features per class");
  synth_cmd->add_option("--noise", synth_args.config.noise_features, "noise feature count");
  synth_cmd->add_option("--duplicates", synth_args.config.duplicates_per_informative,
                        "duplicate copies per informative feature");
  synth_cmd->add_option("--on-mean", synth_args.config.on_mean, "on-class activation mean");
  synth_cmd->add_option("--off-mean", synth_args.config.off_mean,
                        "off-class activation mean");
  synth_cmd->add_option("--spread", synth_args.config.spread, "activation stddev");
  synth_cmd->add_option("--seed", synth_args.config.seed, "generator seed");
  synth_cmd->add_option("--out", synth_args.out, "output directory");

  SelectArgs select_args;
  auto* select_cmd = app.add_subcommand("select", "run the greedy integration loop");
  select_cmd->add_option("--config", select_args.config, "config file (key = value lines)");
  add_data_flags(select_cmd, select_args.data);
  select_cmd->add_option("--k", select_args.k_text,
                         "top-K size: fraction of rows (0.1) or count (50)");
  select_cmd->add_option("--t", select_args.t, "number of features to integrate");
  select_cmd->add_option("--out", select_args.out, "output directory");

  EvaluateArgs evaluate_args;
  auto* evaluate_cmd =
      app.add_subcommand("evaluate", "accuracy over the M / O / MO / SMO feature regimes");
  evaluate_cmd->add_option("--config", evaluate_args.config, "config file (key = value lines)");
  add_data_flags(evaluate_cmd, evaluate_args.data);
  evaluate_cmd->add_option("--k", evaluate_args.k_text, "top-K size (fraction or count)");
  evaluate_cmd->add_option("--t", evaluate_args.t, "number of features to integrate");
  add_classifier_flags(evaluate_cmd, evaluate_args.classifier);
  evaluate_cmd->add_option("--splits", evaluate_args.splits, "random equal splits");
  evaluate_cmd->add_option("--seed", evaluate_args.seed, "split seed");
  evaluate_cmd->add_option("--out", evaluate_args.out, "output directory");

  DiversityArgs diversity_args;
  auto* diversity_cmd =
      app.add_subcommand("diversity", "decision-diversity statistics of classifier outputs");
  diversity_cmd->add_option("--config", diversity_args.config,
                            "config file (key = value lines)");
  diversity_cmd->add_option("--pred", diversity_args.prediction_paths,
                            "prediction file, one label per line (repeat per classifier)");
  diversity_cmd->add_option("--truth", diversity_args.truth_path, "ground-truth label file");
  diversity_cmd->add_option("--out", diversity_args.out, "output directory");

  SweepArgs sweep_args;
  auto* sweep_cmd = app.add_subcommand("sweep", "robustness sweep over K or T");
  sweep_cmd->add_option("--config", sweep_args.config, "config file (key = value lines)");
  add_data_flags(sweep_cmd, sweep_args.data);
  sweep_cmd->add_option("--mode", sweep_args.mode, "sweep axis: k or t")
      ->check(CLI::IsMember({"k", "t"}));
  sweep_cmd->add_option("--grid", sweep_args.grid,
                        "grid values (fractions for k mode, integers for t mode)");
  sweep_cmd->add_option("--k", sweep_args.k_text, "fixed K for t mode");
  sweep_cmd->add_option("--t", sweep_args.t, "fixed T for k mode");
  add_classifier_flags(sweep_cmd, sweep_args.classifier);
  sweep_cmd->add_option("--splits", sweep_args.repeats, "repeats (fresh split each)");
  sweep_cmd->add_option("--seed", sweep_args.seed, "split seed");
  sweep_cmd->add_option("--out", sweep_args.out, "output directory");

  CLI11_PARSE(app, argc, argv);

  try {
    for (auto* cmd : app.get_subcommands()) apply_config_file(cmd);
    if (synth_cmd->parsed()) return cmd_synth(synth_args);
    if (select_cmd->parsed()) return cmd_select(select_args);
    if (evaluate_cmd->parsed()) return cmd_evaluate(evaluate_args);
    if (diversity_cmd->parsed()) return cmd_diversity(diversity_args);
    if (sweep_cmd->parsed()) return cmd_sweep(sweep_args);
  } catch (const error& e) {
    std::cerr << "error [" << errc_name(e.code()) << "]: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error [E_INTERNAL]: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
