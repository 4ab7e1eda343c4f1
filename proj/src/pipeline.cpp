#include "somnb/pipeline.hpp"

#include <algorithm>
#include <cstdio>
#include <set>

#include "somnb/klassen.hpp"

namespace somnb {

namespace {

std::vector<std::vector<double>> to_vectors(const std::vector<FeatureRow>& rows) {
  std::vector<std::vector<double>> out;
  out.reserve(rows.size());
  for (const auto& r : rows) out.push_back({r.v1, r.v2, r.v3, r.v4});
  return out;
}

std::string percent_string(std::int64_t matches, std::int64_t total) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f",
                total ? 100.0 * double(matches) / double(total) : 0.0);
  return buf;
}

std::vector<int> sorted_unique(const std::vector<int>& xs) {
  std::vector<int> out = xs;
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

}  // namespace

std::string RawAgreement::percent() const { return percent_string(matches, total); }
std::string AlignedAgreement::percent() const { return percent_string(matches, total); }

RawAgreement raw_agreement(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(a.size()) + " vs " + std::to_string(b.size()) + " labels");
  }
  if (a.empty()) throw Error(ErrorCode::EmptyInput, "no labels to compare");
  RawAgreement result;
  result.total = static_cast<std::int64_t>(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i] == b[i]) {
      ++result.matches;
      result.matching_rows.push_back(i + 1);  // 1-based, report convention
    }
  }
  return result;
}

namespace {

struct AlignmentSearch {
  std::vector<int> b_labels;             // ascending
  std::vector<int> codomain;             // ascending
  std::vector<std::vector<std::int64_t>> contingency;  // [codomain idx][b idx]
  std::vector<std::int64_t> per_label_best;            // max over codomain, per b idx
  std::vector<int> current;
  std::vector<int> best_assignment;
  std::int64_t best_score = -1;
  std::vector<bool> used;

  void search(std::size_t bi, std::int64_t score, std::int64_t optimistic_rest) {
    if (bi == b_labels.size()) {
      if (score > best_score) {
        best_score = score;
        best_assignment = current;
      }
      return;
    }
    // Candidates ascend, so the first maximum found is the lexicographically
    // lowest mapping; equal-bound subtrees cannot strictly improve and are cut.
    const std::int64_t rest = optimistic_rest - per_label_best[bi];
    for (std::size_t c = 0; c < codomain.size(); ++c) {
      if (used[c]) continue;
      const std::int64_t gained = contingency[c][bi];
      if (score + gained + rest <= best_score) continue;
      used[c] = true;
      current[bi] = codomain[c];
      search(bi + 1, score + gained, rest);
      used[c] = false;
    }
  }
};

}  // namespace

AlignedAgreement aligned_agreement(const std::vector<int>& a, const std::vector<int>& b) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(a.size()) + " vs " + std::to_string(b.size()) + " labels");
  }
  if (a.empty()) throw Error(ErrorCode::EmptyInput, "no labels to compare");

  const std::vector<int> a_labels = sorted_unique(a);
  const std::vector<int> b_labels = sorted_unique(b);
  if (a_labels.size() > 8 || b_labels.size() > 8) {
    throw Error(ErrorCode::TooManyLabels, "more than 8 distinct labels on one side");
  }

  std::set<int> codomain_set(a_labels.begin(), a_labels.end());
  codomain_set.insert(b_labels.begin(), b_labels.end());
  const std::size_t target_size = std::max<std::size_t>(4, codomain_set.size());
  for (int pad = 1; codomain_set.size() < target_size; ++pad) {
    codomain_set.insert(pad);  // smallest positive ints not already present
  }

  AlignmentSearch s;
  s.b_labels = b_labels;
  s.codomain.assign(codomain_set.begin(), codomain_set.end());
  s.contingency.assign(s.codomain.size(), std::vector<std::int64_t>(b_labels.size(), 0));
  for (std::size_t i = 0; i < a.size(); ++i) {
    const auto ci = std::lower_bound(s.codomain.begin(), s.codomain.end(), a[i]) -
                    s.codomain.begin();
    const auto bi = std::lower_bound(b_labels.begin(), b_labels.end(), b[i]) -
                    b_labels.begin();
    ++s.contingency[static_cast<std::size_t>(ci)][static_cast<std::size_t>(bi)];
  }
  s.per_label_best.assign(b_labels.size(), 0);
  std::int64_t optimistic = 0;
  for (std::size_t bi = 0; bi < b_labels.size(); ++bi) {
    for (std::size_t c = 0; c < s.codomain.size(); ++c) {
      s.per_label_best[bi] = std::max(s.per_label_best[bi], s.contingency[c][bi]);
    }
    optimistic += s.per_label_best[bi];
  }
  s.current.resize(b_labels.size());
  s.used.assign(s.codomain.size(), false);
  s.search(0, 0, optimistic);

  AlignedAgreement result;
  result.matches = s.best_score;
  result.total = static_cast<std::int64_t>(a.size());
  for (std::size_t i = 0; i < b_labels.size(); ++i) {
    result.mapping[b_labels[i]] = s.best_assignment[i];
  }
  return result;
}

ConfusionMatrix confusion_matrix(const std::vector<int>& a, const std::vector<int>& b,
                                 const std::vector<int>& ensure_labels) {
  if (a.size() != b.size()) {
    throw Error(ErrorCode::LengthMismatch,
                std::to_string(a.size()) + " vs " + std::to_string(b.size()) + " labels");
  }
  std::set<int> label_set(ensure_labels.begin(), ensure_labels.end());
  label_set.insert(a.begin(), a.end());
  label_set.insert(b.begin(), b.end());

  ConfusionMatrix matrix;
  matrix.labels.assign(label_set.begin(), label_set.end());
  matrix.counts.assign(matrix.labels.size(),
                       std::vector<std::int64_t>(matrix.labels.size(), 0));
  auto index_of = [&](int label) {
    return static_cast<std::size_t>(
        std::lower_bound(matrix.labels.begin(), matrix.labels.end(), label) -
        matrix.labels.begin());
  };
  for (std::size_t i = 0; i < a.size(); ++i) {
    ++matrix.counts[index_of(a[i])][index_of(b[i])];
  }
  return matrix;
}

EvaluationReport compare_labels(const std::vector<int>& a, const std::vector<int>& b,
                                const std::vector<int>& ensure_labels) {
  EvaluationReport report;
  report.confusion = confusion_matrix(a, b, ensure_labels);
  report.raw = raw_agreement(a, b);
  report.aligned = aligned_agreement(a, b);
  for (int label : report.confusion.labels) {
    report.left_counts[label] = 0;
    report.right_counts[label] = 0;
  }
  for (int label : a) ++report.left_counts[label];
  for (int label : b) ++report.right_counts[label];
  for (int label : report.confusion.labels) {
    if (report.left_counts[label] == 0) report.left_empty_labels.push_back(label);
    if (report.right_counts[label] == 0) report.right_empty_labels.push_back(label);
  }
  return report;
}

EvaluationReport compare_with_klassen(const std::vector<FeatureRow>& rows,
                                      const std::vector<int>& predictions) {
  return compare_labels(classify_all_labels(rows), predictions, {1, 2, 3, 4});
}

PipelineResult run_pipeline(const std::vector<FeatureRow>& train,
                            const std::vector<FeatureRow>& test,
                            const PipelineConfig& config) {
  const auto& train_rows = config.swap_roles ? test : train;
  const auto& test_rows = config.swap_roles ? train : test;
  if (train_rows.empty()) throw Error(ErrorCode::EmptyInput, "no training rows");

  NormalizationParams norm;
  if (config.normalize) norm = fit_normalizer(train_rows);

  const auto train_vectors = to_vectors(apply_normalizer(norm, train_rows));
  const auto test_vectors = to_vectors(apply_normalizer(norm, test_rows));

  PipelineResult result;
  result.som_model = train_som(train_vectors, config.som);
  result.som_model.normalization = norm;
  result.pseudo_labels = assign_labels(result.som_model, train_vectors);

  std::vector<std::int64_t> counts(static_cast<std::size_t>(config.som.grid.units()), 0);
  for (int label : result.pseudo_labels) ++counts[static_cast<std::size_t>(label)];
  for (std::size_t u = 0; u < counts.size(); ++u) {
    if (counts[u] == 0) {
      result.empty_units.push_back(static_cast<int>(u));
      result.warnings.push_back("EmptySomCluster: unit " + std::to_string(u) +
                                " received no training rows");
    }
  }

  result.nb_model = fit_nb(train_vectors, result.pseudo_labels, config.nb_epsilon);
  result.predictions.reserve(test_vectors.size());
  result.posteriors.reserve(test_vectors.size());
  for (const auto& x : test_vectors) {
    Prediction p = predict(result.nb_model, x);
    result.predictions.push_back(p.label);
    result.posteriors.push_back(std::move(p.posteriors));
  }
  result.train_predictions.reserve(train_vectors.size());
  for (const auto& x : train_vectors) {
    result.train_predictions.push_back(predict(result.nb_model, x).label);
  }
  return result;
}

}  // namespace somnb
