#include "featsel/synth.hpp"

#include <string>

#include "featsel/error.hpp"
#include "featsel/report.hpp"
#include "featsel/rng.hpp"

namespace featsel {

void SynthConfig::validate() const {
  if (classes < 2) fail(errc::config, "synthetic dataset needs at least 2 classes");
  if (samples_per_class < 1) fail(errc::config, "samples per class must be positive");
  if (informative_per_class < 0 || noise_features < 0 || duplicates_per_informative < 0) {
    fail(errc::config, "feature counts must be non-negative");
  }
  if (informative_per_class == 0 && noise_features == 0) {
    fail(errc::config, "config generates no features");
  }
  if (!(on_mean > off_mean)) {
    fail(errc::config, "on-class mean must exceed off-class mean");
  }
  if (!(spread > 0.0)) fail(errc::config, "spread must be positive");
}

SynthDataset generate(const SynthConfig& config) {
  config.validate();
  const int rows = config.classes * config.samples_per_class;
  const int informative = config.classes * config.informative_per_class;
  const int total_cols =
      informative * (1 + config.duplicates_per_informative) + config.noise_features;

  std::vector<int> labels(rows);
  for (int i = 0; i < rows; ++i) labels[i] = i / config.samples_per_class;

  Rng rng(config.seed);
  std::vector<double> columns;
  columns.reserve(static_cast<std::size_t>(rows) * total_cols);
  std::vector<std::string> base_names;
  base_names.reserve(total_cols);

  SynthDataset out;

  // Column layout: every informative original, then all duplicate copies,
  // then noise. Duplicates consume no randomness, so the value stream
  // depends only on (classes, samples_per_class, informative_per_class,
  // noise_features, means, spread, seed).
  std::vector<std::size_t> original_start;
  for (int c = 0; c < config.classes; ++c) {
    for (int f = 0; f < config.informative_per_class; ++f) {
      original_start.push_back(columns.size());
      for (int i = 0; i < rows; ++i) {
        const double mean = labels[i] == c ? config.on_mean : config.off_mean;
        columns.push_back(rng.gaussian(mean, config.spread));
      }
      base_names.push_back("inf" + std::to_string(c) + "_" + std::to_string(f));
      out.informative_groups.push_back({static_cast<int>(base_names.size()) - 1});
    }
  }
  for (int d = 1; d <= config.duplicates_per_informative; ++d) {
    for (std::size_t g = 0; g < original_start.size(); ++g) {
      out.informative_groups[g].push_back(static_cast<int>(base_names.size()));
      const std::size_t src = original_start[g];
      for (int i = 0; i < rows; ++i) columns.push_back(columns[src + i]);
      base_names.push_back(base_names[out.informative_groups[g].front()] + "d" +
                           std::to_string(d));
    }
  }
  for (int f = 0; f < config.noise_features; ++f) {
    for (int i = 0; i < rows; ++i) {
      columns.push_back(rng.gaussian(0.0, config.spread));
    }
    base_names.push_back("noise" + std::to_string(f));
  }

  // Provenance alternates between the two emulated representation blocks by
  // column parity.
  std::vector<std::string> names(total_cols);
  std::vector<std::string> provenance(total_cols);
  for (int j = 0; j < total_cols; ++j) {
    const bool material = j % 2 == 0;
    names[j] = (material ? "m_" : "o_") + base_names[j];
    provenance[j] = material ? "material" : "object";
  }
  for (const auto& group : out.informative_groups) {
    out.informative_names.push_back(names[group.front()]);
  }

  out.data = LabeledDataset(std::move(columns), rows, std::move(labels),
                            config.classes, std::move(names), std::move(provenance));
  return out;
}

void write_synth_files(const SynthDataset& sd, const std::filesystem::path& dir) {
  std::filesystem::create_directories(dir);
  save_dataset(sd.data, dir / "data.csv");
  write_file_atomic(dir / "manifest.txt", "m_ = material\no_ = object\n");
  std::string truth;
  for (const auto& name : sd.informative_names) {
    truth += name;
    truth += '\n';
  }
  write_file_atomic(dir / "truth.txt", truth);
}

}  // namespace featsel
