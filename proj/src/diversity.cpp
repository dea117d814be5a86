#include "featsel/diversity.hpp"

#include <string>

#include "featsel/error.hpp"

namespace featsel {

CorrectnessMatrix::CorrectnessMatrix(int classifiers, int samples)
    : classifiers_(classifiers), samples_(samples) {
  if (classifiers_ < 2) {
    fail(errc::contract, "diversity needs at least two classifiers, got " +
                             std::to_string(classifiers_));
  }
  if (samples_ < 1) fail(errc::contract, "diversity needs at least one sample");
  bits_.assign(static_cast<std::size_t>(classifiers_) * samples_, 0);
}

CorrectnessMatrix CorrectnessMatrix::from_predictions(
    const std::vector<std::vector<int>>& predictions, const std::vector<int>& truth) {
  CorrectnessMatrix cm(static_cast<int>(predictions.size()),
                       static_cast<int>(truth.size()));
  for (std::size_t l = 0; l < predictions.size(); ++l) {
    if (predictions[l].size() != truth.size()) {
      fail(errc::align, "prediction vector " + std::to_string(l + 1) + " has " +
                            std::to_string(predictions[l].size()) +
                            " entries, truth has " + std::to_string(truth.size()));
    }
    for (std::size_t i = 0; i < truth.size(); ++i) {
      cm.set(static_cast<int>(l), static_cast<int>(i), predictions[l][i] == truth[i]);
    }
  }
  return cm;
}

void CorrectnessMatrix::set(int classifier, int sample, bool correct) {
  if (classifier < 0 || classifier >= classifiers_ || sample < 0 || sample >= samples_) {
    fail(errc::index, "correctness entry (" + std::to_string(classifier) + ", " +
                          std::to_string(sample) + ") out of range");
  }
  bits_[static_cast<std::size_t>(classifier) * samples_ + sample] = correct ? 1 : 0;
}

int CorrectnessMatrix::correct_count(int sample) const {
  int count = 0;
  for (int l = 0; l < classifiers_; ++l) count += correct(l, sample) ? 1 : 0;
  return count;
}

double avg_entropy(const std::vector<FeatureStats>& stats, std::span<const int> subset) {
  if (subset.empty()) fail(errc::contract, "average entropy of an empty feature set");
  double sum = 0.0;
  for (int id : subset) {
    const FeatureStats* found = nullptr;
    // rank_all_features emits stats in column order, so try the direct slot
    // before falling back to a scan.
    if (id >= 0 && id < static_cast<int>(stats.size()) && stats[id].feature_id == id) {
      found = &stats[id];
    } else {
      for (const auto& s : stats) {
        if (s.feature_id == id) {
          found = &s;
          break;
        }
      }
    }
    if (!found) fail(errc::index, "feature " + std::to_string(id) + " not in stats list");
    if (!found->eligible || !found->entropy_bits) {
      fail(errc::contract, "feature " + std::to_string(id) + " is ineligible");
    }
    sum += *found->entropy_bits;
  }
  return sum / static_cast<double>(subset.size());
}

DiversityReport diversity_report(const CorrectnessMatrix& cm) {
  const int l_count = cm.classifiers();
  const int n = cm.samples();
  const double nd = static_cast<double>(n);
  DiversityReport report;

  // Per-sample agreement profile.
  std::vector<int> correct_per_sample(n);
  long long total_correct = 0;
  double li_term_sum = 0.0;  // sum_i l_i (L - l_i)
  for (int i = 0; i < n; ++i) {
    const int li = cm.correct_count(i);
    correct_per_sample[i] = li;
    total_correct += li;
    li_term_sum += static_cast<double>(li) * (l_count - li);
  }
  const double pbar = static_cast<double>(total_correct) / (nd * l_count);

  report.kw_variance = li_term_sum / (nd * l_count * l_count);

  const double chance = pbar * (1.0 - pbar);
  if (chance > 0.0) {
    report.kappa = 1.0 - (li_term_sum / l_count) / (nd * (l_count - 1) * chance);
  }

  // Pairwise disagreement and Q statistic.
  double disagreement_sum = 0.0;
  double q_sum = 0.0;
  int q_defined = 0;
  int pair_count = 0;
  for (int a = 0; a < l_count; ++a) {
    for (int b = a + 1; b < l_count; ++b) {
      double n11 = 0, n00 = 0, n01 = 0, n10 = 0;
      for (int i = 0; i < n; ++i) {
        const bool ca = cm.correct(a, i);
        const bool cb = cm.correct(b, i);
        if (ca && cb) ++n11;
        else if (!ca && !cb) ++n00;
        else if (!ca && cb) ++n01;
        else ++n10;
      }
      ++pair_count;
      disagreement_sum += (n01 + n10) / nd;
      const double denom = n11 * n00 + n01 * n10;
      if (denom > 0.0) {
        q_sum += (n11 * n00 - n01 * n10) / denom;
        ++q_defined;
      }
    }
  }
  report.disagreement = disagreement_sum / pair_count;
  report.q_pair_count = pair_count;
  report.q_defined_pairs = q_defined;
  if (q_defined > 0) report.q_statistic = q_sum / q_defined;

  // Generalized diversity over the exactly-i-failures distribution.
  std::vector<int> failure_counts(l_count + 1, 0);
  for (int i = 0; i < n; ++i) ++failure_counts[l_count - correct_per_sample[i]];
  double p1 = 0.0;
  double p2 = 0.0;
  for (int i = 1; i <= l_count; ++i) {
    const double p_i = failure_counts[i] / nd;
    p1 += (static_cast<double>(i) / l_count) * p_i;
    p2 += (static_cast<double>(i) * (i - 1)) / (static_cast<double>(l_count) * (l_count - 1)) * p_i;
  }
  if (p1 > 0.0) report.generalized_diversity = 1.0 - p2 / p1;

  return report;
}

}  // namespace featsel
