#include "somnb/bayes.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>

namespace somnb {

std::optional<std::size_t> NbModel::label_index(int label) const {
  const auto it = std::lower_bound(labels.begin(), labels.end(), label);
  if (it == labels.end() || *it != label) return std::nullopt;
  return static_cast<std::size_t>(it - labels.begin());
}

NbModel fit_nb(const std::vector<std::vector<double>>& rows,
               const std::vector<int>& labels, double epsilon) {
  if (rows.empty()) throw Error(ErrorCode::EmptyInput, "no training rows");
  if (rows.size() != labels.size()) {
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(rows.size()) + " rows vs " + std::to_string(labels.size()) +
                    " labels");
  }
  if (epsilon <= 0.0) throw Error(ErrorCode::InvalidConfig, "epsilon must be positive");
  const std::size_t dim = rows.front().size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim) {
      throw Error(ErrorCode::DimensionMismatch, "row " + std::to_string(i) + " dimension");
    }
  }

  std::map<int, std::vector<std::size_t>> by_label;
  for (std::size_t i = 0; i < labels.size(); ++i) by_label[labels[i]].push_back(i);

  // Floor scale: largest overall per-feature population variance (or 1 when
  // the data is fully degenerate), so the floor tracks the data's units.
  const double n = static_cast<double>(rows.size());
  double max_overall_variance = 0.0;
  for (std::size_t k = 0; k < dim; ++k) {
    double sum = 0.0;
    for (const auto& r : rows) sum += r[k];
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& r : rows) ss += (r[k] - mean) * (r[k] - mean);
    max_overall_variance = std::max(max_overall_variance, ss / n);
  }
  if (max_overall_variance == 0.0) max_overall_variance = 1.0;

  NbModel model;
  model.variance_floor = epsilon * max_overall_variance;
  for (const auto& [label, indices] : by_label) {
    model.labels.push_back(label);
    model.priors.push_back(static_cast<double>(indices.size()) / n);
    std::vector<double> mean(dim, 0.0);
    for (std::size_t i : indices) {
      for (std::size_t k = 0; k < dim; ++k) mean[k] += rows[i][k];
    }
    for (auto& m : mean) m /= static_cast<double>(indices.size());
    std::vector<double> variance(dim, 0.0);
    for (std::size_t i : indices) {
      for (std::size_t k = 0; k < dim; ++k) {
        const double d = rows[i][k] - mean[k];
        variance[k] += d * d;
      }
    }
    for (auto& v : variance) {
      v = std::max(v / static_cast<double>(indices.size()), model.variance_floor);
    }
    model.means.push_back(std::move(mean));
    model.variances.push_back(std::move(variance));
  }
  return model;
}

double log_likelihood(const NbModel& model, const std::vector<double>& x, int label) {
  const auto idx = model.label_index(label);
  if (!idx) throw Error(ErrorCode::UnknownLabel, "label " + std::to_string(label));
  if (x.size() != model.dimension()) {
    throw Error(ErrorCode::DimensionMismatch,
                "input dimension " + std::to_string(x.size()) + ", model has " +
                    std::to_string(model.dimension()));
  }
  const auto& mean = model.means[*idx];
  const auto& variance = model.variances[*idx];
  double ll = 0.0;
  for (std::size_t k = 0; k < x.size(); ++k) {
    const double d = x[k] - mean[k];
    ll += -0.5 * std::log(2.0 * std::numbers::pi * variance[k]) - d * d / (2.0 * variance[k]);
  }
  return ll;
}

Prediction predict(const NbModel& model, const std::vector<double>& x) {
  if (x.size() != model.dimension()) {
    throw Error(ErrorCode::DimensionMismatch,
                "input dimension " + std::to_string(x.size()) + ", model has " +
                    std::to_string(model.dimension()));
  }
  std::vector<double> scores(model.labels.size());
  for (std::size_t i = 0; i < model.labels.size(); ++i) {
    scores[i] = std::log(model.priors[i]) + log_likelihood(model, x, model.labels[i]);
  }
  // Labels are sorted ascending, so keeping strict improvement only makes
  // ties resolve to the lowest label id.
  std::size_t winner = 0;
  for (std::size_t i = 1; i < scores.size(); ++i) {
    if (scores[i] > scores[winner]) winner = i;
  }
  const double max_score = scores[winner];
  double norm = 0.0;
  Prediction prediction;
  prediction.label = model.labels[winner];
  prediction.posteriors.resize(scores.size());
  for (std::size_t i = 0; i < scores.size(); ++i) {
    prediction.posteriors[i] = std::exp(scores[i] - max_score);
    norm += prediction.posteriors[i];
  }
  for (auto& p : prediction.posteriors) p /= norm;
  return prediction;
}

}  // namespace somnb
