#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "somnb/bayes.hpp"
#include "somnb/dataset.hpp"
#include "somnb/som.hpp"

namespace somnb {

struct PipelineConfig {
  SomConfig som = default_config();
  double nb_epsilon = 1e-9;
  bool normalize = false;
  bool swap_roles = false;  // exchange the train/test sets before anything else
};

struct PipelineResult {
  SomModel som_model;
  NbModel nb_model;
  std::vector<int> pseudo_labels;       // per training row, 0-based unit ids
  std::vector<int> predictions;         // per test row, same id space
  std::vector<int> train_predictions;   // NB re-applied to the training rows
  std::vector<std::vector<double>> posteriors;  // per test row, aligned with nb_model.labels
  std::vector<int> empty_units;         // units that received no training rows
  std::vector<std::string> warnings;
};

/// SOM pseudo-labeling followed by NB training and test prediction.
/// Normalization (when enabled) is fit on the training rows and applied to
/// both sets; the fitted params are stored in the returned SomModel.
PipelineResult run_pipeline(const std::vector<FeatureRow>& train,
                            const std::vector<FeatureRow>& test,
                            const PipelineConfig& config);

/// Identity-match rate between two equally long label lists. The fraction
/// is kept exact (matches/total); matching_rows are 1-based row numbers.
struct RawAgreement {
  std::int64_t matches = 0;
  std::int64_t total = 0;
  std::vector<std::size_t> matching_rows;

  double fraction() const { return total ? double(matches) / double(total) : 0.0; }
  std::string percent() const;  // 2 decimals, e.g. "29.63"
};

RawAgreement raw_agreement(const std::vector<int>& a, const std::vector<int>& b);

/// Best identity-match rate over injective relabelings of b. The codomain
/// is the union of both label sets, padded with the smallest positive
/// integers not already present up to size max(4, |union|). On ties the
/// lexicographically lowest mapping (by ascending b label) wins.
struct AlignedAgreement {
  std::int64_t matches = 0;
  std::int64_t total = 0;
  std::map<int, int> mapping;  // b label -> relabeled value

  double fraction() const { return total ? double(matches) / double(total) : 0.0; }
  std::string percent() const;
};

AlignedAgreement aligned_agreement(const std::vector<int>& a, const std::vector<int>& b);

/// Square count matrix over the sorted union of observed labels (plus any
/// `ensure_labels`); cell (i, j) = positions where a = labels[i], b = labels[j].
struct ConfusionMatrix {
  std::vector<int> labels;
  std::vector<std::vector<std::int64_t>> counts;
};

ConfusionMatrix confusion_matrix(const std::vector<int>& a, const std::vector<int>& b,
                                 const std::vector<int>& ensure_labels = {});

struct EvaluationReport {
  ConfusionMatrix confusion;
  RawAgreement raw;
  AlignedAgreement aligned;
  std::map<int, std::int64_t> left_counts;
  std::map<int, std::int64_t> right_counts;
  std::vector<int> left_empty_labels;   // report labels absent on each side
  std::vector<int> right_empty_labels;
};

/// Report comparing two label lists over a report label space (the union
/// plus ensure_labels).
EvaluationReport compare_labels(const std::vector<int>& a, const std::vector<int>& b,
                                const std::vector<int>& ensure_labels = {});

/// Recomputes Klassen quadrants for the rows and compares them against
/// `predictions`, which must already be in report label space (1-based).
EvaluationReport compare_with_klassen(const std::vector<FeatureRow>& rows,
                                      const std::vector<int>& predictions);

}  // namespace somnb
