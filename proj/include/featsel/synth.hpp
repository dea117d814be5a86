#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "featsel/dataset.hpp"

namespace featsel {

/// Generative parameters for planted-feature datasets. An informative
/// feature for class c draws N(on_mean, spread) on class-c rows and
/// N(off_mean, spread) elsewhere; noise features draw N(0, spread) on every
/// row. Duplicates are exact column copies of their informative original.
struct SynthConfig {
  int classes = 5;
  int samples_per_class = 20;
  int informative_per_class = 4;
  int noise_features = 200;
  int duplicates_per_informative = 2;
  double on_mean = 5.0;
  double off_mean = -1.0;
  double spread = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
};

struct SynthDataset {
  LabeledDataset data;
  /// Planted informative feature names, classes * informative_per_class.
  std::vector<std::string> informative_names;
  /// Column ids of each planted feature followed by its duplicate copies.
  std::vector<std::vector<int>> informative_groups;
};

/// Deterministic for a fixed seed: the value stream is a documented
/// transform of mt19937_64, so identical seeds give identical datasets on
/// every platform. Provenance alternates between the "material" and
/// "object" blocks by column parity.
SynthDataset generate(const SynthConfig& config);

/// Writes data.csv (columnar text format), manifest.txt and truth.txt (one
/// planted feature name per line) into the directory.
void write_synth_files(const SynthDataset& sd, const std::filesystem::path& dir);

}  // namespace featsel
