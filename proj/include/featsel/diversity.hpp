#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "featsel/ranking.hpp"

namespace featsel {

/// L x N binary matrix: entry (l, i) is 1 iff classifier l is correct on
/// sample i. Requires at least two classifiers.
class CorrectnessMatrix {
 public:
  CorrectnessMatrix(int classifiers, int samples);

  static CorrectnessMatrix from_predictions(
      const std::vector<std::vector<int>>& predictions,
      const std::vector<int>& truth);

  int classifiers() const { return classifiers_; }
  int samples() const { return samples_; }

  void set(int classifier, int sample, bool correct);
  bool correct(int classifier, int sample) const {
    return bits_[static_cast<std::size_t>(classifier) * samples_ + sample] != 0;
  }

  /// Number of classifiers correct on the given sample.
  int correct_count(int sample) const;

 private:
  int classifiers_ = 0;
  int samples_ = 0;
  std::vector<std::uint8_t> bits_;
};

/// Pairwise and ensemble statistics of classifier-correctness patterns.
/// Undefined values (perfect or degenerate ensembles) stay unset rather than
/// being silently zeroed. h_f / h_s are filled by the caller from feature
/// entropies; they are not functions of the correctness matrix.
struct DiversityReport {
  std::optional<double> kappa;
  std::optional<double> q_statistic;
  int q_defined_pairs = 0;
  int q_pair_count = 0;
  double kw_variance = 0.0;
  double disagreement = 0.0;
  std::optional<double> generalized_diversity;
  std::optional<double> h_f;
  std::optional<double> h_s;
};

/// Arithmetic mean of entropy_bits over the subset; every member must be an
/// eligible feature.
double avg_entropy(const std::vector<FeatureStats>& stats,
                   std::span<const int> subset);

/// With l_i = #correct classifiers on sample i and pbar = mean accuracy:
///   KW  = sum_i l_i (L - l_i) / (N L^2)
///   dis = pairwise mean of (N01 + N10) / N
///   Q   = pairwise mean of (N11 N00 - N01 N10) / (N11 N00 + N01 N10),
///         pairs with zero denominator excluded and counted
///   kappa = 1 - (sum_i l_i (L - l_i) / L) / (N (L-1) pbar (1 - pbar))
///   GD  = 1 - p(2) / p(1) over the exactly-i-failures distribution
DiversityReport diversity_report(const CorrectnessMatrix& cm);

}  // namespace featsel
