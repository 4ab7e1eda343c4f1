#pragma once

#include <optional>
#include <vector>

#include "somnb/error.hpp"

namespace somnb {

/// Gaussian naive Bayes model: class priors plus per-class per-feature
/// mean and (floored) population variance. Labels are kept sorted; ties in
/// prediction break to the lowest label id.
struct NbModel {
  std::vector<int> labels;
  std::vector<double> priors;
  std::vector<std::vector<double>> means;      // [label][feature]
  std::vector<std::vector<double>> variances;  // [label][feature], >= variance_floor
  double variance_floor = 0.0;

  std::size_t dimension() const { return means.empty() ? 0 : means.front().size(); }
  std::optional<std::size_t> label_index(int label) const;
};

/// MLE fit. Per-class variances are floored at
/// epsilon * max(overall per-feature variance), falling back to epsilon
/// when the data has no variance at all.
NbModel fit_nb(const std::vector<std::vector<double>>& rows,
               const std::vector<int>& labels, double epsilon = 1e-9);

/// sum_k [ -0.5*ln(2*pi*var_k) - (x_k - mean_k)^2 / (2*var_k) ].
double log_likelihood(const NbModel& model, const std::vector<double>& x, int label);

struct Prediction {
  int label = 0;
  std::vector<double> posteriors;  // aligned with model.labels, sums to 1
};

/// Maximum-posterior label; scores are ln(prior) + log-likelihood, with
/// posteriors recovered by softmax.
Prediction predict(const NbModel& model, const std::vector<double>& x);

}  // namespace somnb
