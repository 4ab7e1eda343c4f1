#include <doctest.h>

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <set>

#include "somnb/klassen.hpp"
#include "somnb/pipeline.hpp"
#include "testutil.hpp"

using namespace somnb;

namespace {

const std::vector<std::array<double, 4>> kBlobCenters{
    {0, 0, 0, 0}, {20, 0, 0, 0}, {0, 20, 0, 0}, {0, 0, 20, 0}};

/// Every injection of b's labels into the padded codomain, scored directly.
std::int64_t aligned_by_enumeration(const std::vector<int>& a, const std::vector<int>& b) {
  std::set<int> b_set(b.begin(), b.end());
  std::set<int> codomain_set(a.begin(), a.end());
  codomain_set.insert(b_set.begin(), b_set.end());
  const std::size_t target = std::max<std::size_t>(4, codomain_set.size());
  for (int pad = 1; codomain_set.size() < target; ++pad) codomain_set.insert(pad);
  std::vector<int> b_labels(b_set.begin(), b_set.end());
  std::vector<int> codomain(codomain_set.begin(), codomain_set.end());

  std::vector<std::size_t> chosen(codomain.size());
  std::iota(chosen.begin(), chosen.end(), 0);
  std::int64_t best = -1;
  // Walk every permutation of the codomain; the first |b_labels| entries
  // define the injection.
  std::sort(chosen.begin(), chosen.end());
  do {
    std::map<int, int> mapping;
    for (std::size_t i = 0; i < b_labels.size(); ++i) {
      mapping[b_labels[i]] = codomain[chosen[i]];
    }
    std::int64_t matches = 0;
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (mapping.at(b[i]) == a[i]) ++matches;
    }
    best = std::max(best, matches);
  } while (std::next_permutation(chosen.begin(), chosen.end()));
  return best;
}

}  // namespace

TEST_CASE("raw agreement counts positional matches") {
  const RawAgreement r = raw_agreement({1, 2, 3, 4}, {1, 2, 4, 4});
  CHECK(r.matches == 3);
  CHECK(r.total == 4);
  CHECK(r.matching_rows == std::vector<std::size_t>{1, 2, 4});
  CHECK(r.fraction() == doctest::Approx(0.75));
  CHECK(r.percent() == "75.00");

  const RawAgreement all = raw_agreement({2, 2}, {2, 2});
  CHECK(all.matches == all.total);
}

TEST_CASE("raw agreement input validation") {
  CHECK_THROWS_AS(raw_agreement({}, {}), Error);
  CHECK_THROWS_AS(raw_agreement({1}, {1, 2}), Error);
}

TEST_CASE("aligned agreement finds the swap permutation") {
  const AlignedAgreement a = aligned_agreement({1, 1, 2, 2}, {2, 2, 1, 1});
  CHECK(a.matches == 4);
  CHECK(a.total == 4);
  CHECK(a.fraction() == 1.0);
  CHECK(a.mapping.at(1) == 2);
  CHECK(a.mapping.at(2) == 1);
}

TEST_CASE("aligned agreement of a list with itself is total") {
  const std::vector<int> labels{0, 1, 2, 3, 0, 1, 2, 3, 2};
  const AlignedAgreement a = aligned_agreement(labels, labels);
  CHECK(a.matches == static_cast<std::int64_t>(labels.size()));
  for (int l : {0, 1, 2, 3}) CHECK(a.mapping.at(l) == l);
}

TEST_CASE("aligned agreement ties pick the lexicographically lowest mapping") {
  const AlignedAgreement a = aligned_agreement({1, 1}, {2, 3});
  CHECK(a.matches == 1);
  CHECK(a.mapping.at(2) == 1);
  CHECK(a.mapping.at(3) == 2);
}

TEST_CASE("aligned agreement rejects oversized label sets") {
  std::vector<int> a, b;
  for (int i = 0; i < 9; ++i) {
    a.push_back(1);
    b.push_back(i);
  }
  try {
    aligned_agreement(a, b);
    FAIL("expected a label-count error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooManyLabels);
  }
}

TEST_CASE("aligned agreement dominates raw and matches exhaustive enumeration") {
  std::mt19937_64 gen(71);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + gen() % 30;
    const int a_labels = 1 + int(gen() % 4);
    const int b_labels = 1 + int(gen() % 4);
    std::vector<int> a(n), b(n);
    for (auto& v : a) v = 1 + int(gen() % a_labels);
    for (auto& v : b) v = 1 + int(gen() % b_labels);

    const RawAgreement raw = raw_agreement(a, b);
    const AlignedAgreement aligned = aligned_agreement(a, b);
    CHECK(aligned.matches >= raw.matches);
    CHECK(aligned.matches == aligned_by_enumeration(a, b));
  }
}

TEST_CASE("confusion matrix lays out counts over the label union") {
  const ConfusionMatrix m = confusion_matrix({1, 1, 2, 3}, {1, 2, 2, 1});
  REQUIRE(m.labels == std::vector<int>{1, 2, 3});
  CHECK(m.counts[0][0] == 1);  // a=1, b=1
  CHECK(m.counts[0][1] == 1);  // a=1, b=2
  CHECK(m.counts[1][1] == 1);  // a=2, b=2
  CHECK(m.counts[2][0] == 1);  // a=3, b=1
  CHECK(m.counts[1][0] == 0);
}

TEST_CASE("confusion matrix of identical lists is diagonal") {
  const std::vector<int> labels{1, 2, 2, 3, 3, 3};
  const ConfusionMatrix m = confusion_matrix(labels, labels);
  for (std::size_t i = 0; i < m.labels.size(); ++i) {
    for (std::size_t j = 0; j < m.labels.size(); ++j) {
      if (i != j) CHECK(m.counts[i][j] == 0);
    }
  }
  CHECK(m.counts[0][0] == 1);
  CHECK(m.counts[1][1] == 2);
  CHECK(m.counts[2][2] == 3);
}

TEST_CASE("ensure_labels pads the matrix with empty rows and columns") {
  const ConfusionMatrix m = confusion_matrix({1, 2}, {1, 2}, {1, 2, 3, 4});
  REQUIRE(m.labels == std::vector<int>{1, 2, 3, 4});
  for (std::size_t j = 0; j < 4; ++j) {
    CHECK(m.counts[3][j] == 0);
    CHECK(m.counts[j][3] == 0);
  }
}

TEST_CASE("confusion matrix row sums are the left-hand label counts") {
  std::mt19937_64 gen(73);
  std::vector<int> a(40), b(40);
  for (auto& v : a) v = 1 + int(gen() % 4);
  for (auto& v : b) v = 1 + int(gen() % 4);
  const EvaluationReport report = compare_labels(a, b);
  for (std::size_t i = 0; i < report.confusion.labels.size(); ++i) {
    const std::int64_t row_sum = std::accumulate(report.confusion.counts[i].begin(),
                                                 report.confusion.counts[i].end(),
                                                 std::int64_t{0});
    CHECK(row_sum == report.left_counts.at(report.confusion.labels[i]));
  }
}

TEST_CASE("compare_labels flags labels absent on either side") {
  const EvaluationReport report = compare_labels({1, 1, 2}, {1, 1, 1}, {1, 2, 3, 4});
  CHECK(report.left_empty_labels == std::vector<int>{3, 4});
  CHECK(report.right_empty_labels == std::vector<int>{2, 3, 4});
}

TEST_CASE("compare_with_klassen against its own rule is total agreement") {
  const auto blobs = testutil::make_blobs(kBlobCenters, 30, 79);
  const std::vector<int> rule = classify_all_labels(blobs.rows);
  const EvaluationReport report = compare_with_klassen(blobs.rows, rule);
  CHECK(report.raw.matches == 30);
  CHECK(report.raw.fraction() == 1.0);
}

TEST_CASE("run_pipeline shapes and posterior closure") {
  const auto train = testutil::make_blobs(kBlobCenters, 60, 83);
  const auto test = testutil::make_blobs(kBlobCenters, 20, 89);
  PipelineConfig config;
  config.som.epochs = 200;
  config.som.seed = 3;
  const PipelineResult result = run_pipeline(train.rows, test.rows, config);

  CHECK(result.pseudo_labels.size() == train.rows.size());
  CHECK(result.train_predictions.size() == train.rows.size());
  CHECK(result.predictions.size() == test.rows.size());
  CHECK(result.posteriors.size() == test.rows.size());
  for (const auto& p : result.posteriors) {
    CHECK(std::accumulate(p.begin(), p.end(), 0.0) == doctest::Approx(1.0).epsilon(1e-9));
  }
  for (int label : result.pseudo_labels) {
    CHECK(label >= 0);
    CHECK(label < config.som.grid.units());
  }
}

TEST_CASE("run_pipeline is deterministic for a fixed seed") {
  const auto train = testutil::make_blobs(kBlobCenters, 60, 83);
  const auto test = testutil::make_blobs(kBlobCenters, 20, 89);
  PipelineConfig config;
  config.som.epochs = 200;
  config.som.seed = 11;
  const PipelineResult a = run_pipeline(train.rows, test.rows, config);
  const PipelineResult b = run_pipeline(train.rows, test.rows, config);
  CHECK(a.som_model.prototypes == b.som_model.prototypes);
  CHECK(a.pseudo_labels == b.pseudo_labels);
  CHECK(a.predictions == b.predictions);
}

TEST_CASE("classifier reproduces the pseudo-labels on separated blobs") {
  const auto train = testutil::make_blobs(kBlobCenters, 135, 42);
  const auto test = testutil::make_blobs(kBlobCenters, 54, 97);
  PipelineConfig config;
  config.som.seed = 1;
  const PipelineResult result = run_pipeline(train.rows, test.rows, config);

  std::int64_t fidelity = 0;
  for (std::size_t i = 0; i < result.pseudo_labels.size(); ++i) {
    if (result.train_predictions[i] == result.pseudo_labels[i]) ++fidelity;
  }
  CHECK(double(fidelity) / double(result.pseudo_labels.size()) >= 0.98);

  const std::set<int> trained(result.pseudo_labels.begin(), result.pseudo_labels.end());
  for (int label : result.predictions) CHECK(trained.count(label) == 1);
}

TEST_CASE("swap_roles exchanges the input sets") {
  const auto first = testutil::make_blobs(kBlobCenters, 40, 101);
  const auto second = testutil::make_blobs(kBlobCenters, 24, 103);
  PipelineConfig config;
  config.som.epochs = 150;
  config.som.seed = 13;
  PipelineConfig swapped = config;
  swapped.swap_roles = true;

  const PipelineResult direct = run_pipeline(second.rows, first.rows, config);
  const PipelineResult via_swap = run_pipeline(first.rows, second.rows, swapped);
  CHECK(direct.som_model.prototypes == via_swap.som_model.prototypes);
  CHECK(direct.pseudo_labels == via_swap.pseudo_labels);
  CHECK(direct.predictions == via_swap.predictions);
}

TEST_CASE("normalized pipeline stores the fitted parameters") {
  const auto train = testutil::make_blobs(kBlobCenters, 60, 107);
  const auto test = testutil::make_blobs(kBlobCenters, 20, 109);
  PipelineConfig config;
  config.som.epochs = 200;
  config.som.seed = 17;
  config.normalize = true;
  const PipelineResult result = run_pipeline(train.rows, test.rows, config);
  CHECK(result.som_model.normalization.enabled);
  REQUIRE(result.som_model.normalization.mean.size() == 4);
  CHECK(result.predictions.size() == test.rows.size());
}

TEST_CASE("training rows that never win a unit are reported") {
  const std::vector<FeatureRow> train(6, testutil::row(5, 10, 5, 10));
  const auto test = testutil::make_blobs(kBlobCenters, 10, 113);
  PipelineConfig config;
  config.som.epochs = 50;
  const PipelineResult result = run_pipeline(train, test.rows, config);
  CHECK(result.empty_units.size() == 3);  // identical rows all map to unit 0
  REQUIRE(result.warnings.size() == 3);
  for (const auto& w : result.warnings) {
    CHECK(w.find("EmptySomCluster") != std::string::npos);
  }
  const std::set<int> predicted(result.predictions.begin(), result.predictions.end());
  CHECK(predicted == std::set<int>{0});
}

TEST_CASE("run_pipeline rejects an empty training set") {
  const auto test = testutil::make_blobs(kBlobCenters, 10, 127);
  CHECK_THROWS_AS(run_pipeline({}, test.rows, PipelineConfig{}), Error);
}
