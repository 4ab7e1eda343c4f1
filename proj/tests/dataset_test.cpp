#include <doctest.h>

#include <cmath>
#include <random>

#include "somnb/dataset.hpp"
#include "testutil.hpp"

using namespace somnb;

namespace {

SectorSeries series(const std::string& region, RegionKind kind, const std::string& sector,
                    std::vector<double> amounts, int first_year = 2018) {
  SectorSeries s;
  s.region_id = region;
  s.kind = kind;
  s.sector = sector;
  int year = first_year;
  for (double amount : amounts) s.values.push_back({year++, amount});
  return s;
}

}  // namespace

TEST_CASE("growth_series year-over-year percent change") {
  CHECK(growth_series(series("d", RegionKind::District, "Agriculture", {100, 100, 100})) ==
        std::vector<double>{0.0, 0.0});
  CHECK(growth_series(series("d", RegionKind::District, "Agriculture", {100, 110})) ==
        std::vector<double>{10.0});
  CHECK(growth_series(series("d", RegionKind::District, "Agriculture", {100, 110, 99})) ==
        std::vector<double>{10.0, -10.0});
}

TEST_CASE("growth_series input validation") {
  try {
    growth_series(series("d", RegionKind::District, "Agriculture", {100}));
    FAIL("expected a too-short error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::TooShort);
  }
  try {
    growth_series(series("d", RegionKind::District, "Agriculture", {100, 0, 50}));
    FAIL("expected a zero base-year error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroBaseYear);
  }
}

TEST_CASE("growth_series of a geometric series is constant") {
  std::mt19937_64 gen(11);
  for (int trial = 0; trial < 50; ++trial) {
    const double q = 0.5 + double(gen() >> 11) * 0x1.0p-53 * 1.5;  // ratio in [0.5, 2)
    std::vector<double> amounts{100.0};
    for (int i = 0; i < 6; ++i) amounts.push_back(amounts.back() * q);
    const auto growth = growth_series(series("d", RegionKind::District, "Services", amounts));
    for (double g : growth) CHECK(g == doctest::Approx(100.0 * (q - 1.0)).epsilon(1e-9));
  }
}

TEST_CASE("contribution_series percent share per year") {
  const auto total = series("d", RegionKind::District, "Total", {100, 120});
  CHECK(contribution_series(series("d", RegionKind::District, "Building", {25, 30}), total) ==
        std::vector<double>{25.0, 25.0});
  CHECK(contribution_series(series("d", RegionKind::District, "Building", {0, 0}), total) ==
        std::vector<double>{0.0, 0.0});
  CHECK(contribution_series(total, total) == std::vector<double>{100.0, 100.0});
}

TEST_CASE("contribution_series input validation") {
  const auto total = series("d", RegionKind::District, "Total", {100, 120});
  try {
    contribution_series(
        series("d", RegionKind::District, "Building", {25, 30}, 2019), total);
    FAIL("expected a year mismatch");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::YearMismatch);
  }
  try {
    contribution_series(series("d", RegionKind::District, "Building", {25, 30}),
                        series("d", RegionKind::District, "Total", {100, 0}));
    FAIL("expected a zero total");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroTotal);
  }
}

TEST_CASE("contributions against the sector sum add to 100") {
  std::mt19937_64 gen(13);
  auto uniform = [&] { return 1.0 + double(gen() >> 11) * 0x1.0p-53 * 99.0; };
  std::vector<SectorSeries> sectors;
  SectorSeries total = series("d", RegionKind::District, "Total", {0, 0, 0});
  for (const auto& name : sector_names()) {
    auto s = series("d", RegionKind::District, name, {uniform(), uniform(), uniform()});
    for (std::size_t y = 0; y < 3; ++y) total.values[y].amount += s.values[y].amount;
    sectors.push_back(std::move(s));
  }
  for (std::size_t y = 0; y < 3; ++y) {
    double sum = 0.0;
    for (const auto& s : sectors) sum += contribution_series(s, total)[y];
    CHECK(sum == doctest::Approx(100.0).epsilon(1e-9));
  }
}

TEST_CASE("build_feature_rows single district and sector") {
  Panel panel;
  panel.district_sectors.push_back(
      series("D1", RegionKind::District, "Agriculture", {100, 110}));
  panel.province_sectors.push_back(
      series("P1", RegionKind::Province, "Agriculture", {200, 210}));
  panel.explicit_totals["P1"] = {{2018, 400}, {2019, 420}};

  const auto rows = build_feature_rows(panel);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].region_id == "D1");
  CHECK(rows[0].sector == "Agriculture");
  CHECK(rows[0].v1 == doctest::Approx(10.0).epsilon(1e-12));
  // The district has a single sector, so its own total is that sector.
  CHECK(rows[0].v2 == doctest::Approx(100.0).epsilon(1e-12));
  CHECK(rows[0].v3 == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(rows[0].v4 == doctest::Approx(50.0).epsilon(1e-12));
}

TEST_CASE("build_feature_rows on a district equal to its province") {
  std::vector<SectorSeries> district;
  std::vector<SectorSeries> province;
  double base = 80.0;
  for (const auto& name : sector_names()) {
    district.push_back(series("D1", RegionKind::District, name, {base, base * 1.1, base * 1.3}));
    province.push_back(series("P1", RegionKind::Province, name, {base, base * 1.1, base * 1.3}));
    base += 17.0;
  }
  for (const auto& r : build_feature_rows(district, province)) {
    CHECK(r.v1 == doctest::Approx(r.v3).epsilon(1e-12));
    CHECK(r.v2 == doctest::Approx(r.v4).epsilon(1e-12));
  }
}

TEST_CASE("build_feature_rows yields districts x sectors rows") {
  std::vector<SectorSeries> district;
  std::vector<SectorSeries> province;
  for (int d = 1; d <= 15; ++d) {
    double base = 40.0 + 3.0 * d;
    for (const auto& name : sector_names()) {
      district.push_back(series("D" + std::to_string(d), RegionKind::District, name,
                                {base, base + 5.0, base + 9.0}));
      base += 6.0;
    }
  }
  double base = 900.0;
  for (const auto& name : sector_names()) {
    province.push_back(
        series("P1", RegionKind::Province, name, {base, base + 40.0, base + 70.0}));
    base += 55.0;
  }
  CHECK(build_feature_rows(district, province).size() == 135);
}

TEST_CASE("build_feature_rows requires every district sector at province level") {
  std::vector<SectorSeries> district{
      series("D1", RegionKind::District, "Agriculture", {100, 110}),
      series("D1", RegionKind::District, "Building", {10, 12})};
  std::vector<SectorSeries> province{
      series("P1", RegionKind::Province, "Agriculture", {200, 210})};
  try {
    build_feature_rows(district, province);
    FAIL("expected a missing sector error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingSector);
    CHECK(std::string(e.what()).find("Building") != std::string::npos);
  }
}

TEST_CASE("normalizer maps (0,2) to (-1,1) with population sd") {
  const std::vector<FeatureRow> rows{testutil::row(0, 0, 0, 0), testutil::row(2, 2, 2, 2)};
  const auto params = fit_normalizer(rows);
  const auto scaled = apply_normalizer(params, rows);
  for (int k = 0; k < 4; ++k) {
    CHECK(scaled[0].features()[k] == doctest::Approx(-1.0).epsilon(1e-12));
    CHECK(scaled[1].features()[k] == doctest::Approx(1.0).epsilon(1e-12));
  }
}

TEST_CASE("normalizer rejects zero-variance features") {
  const std::vector<FeatureRow> rows{testutil::row(1, 2, 3, 4), testutil::row(1, 5, 6, 7)};
  try {
    fit_normalizer(rows);
    FAIL("expected a zero variance error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::ZeroVariance);
  }
}

TEST_CASE("disabled normalizer is the identity") {
  const std::vector<FeatureRow> rows{testutil::row(1, 2, 3, 4), testutil::row(-7, 0, 2, 9)};
  const auto out = apply_normalizer(NormalizationParams{}, rows);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(out[i].features() == rows[i].features());
  }
}

TEST_CASE("fit-then-apply standardizes the fit set") {
  const auto blobs = testutil::make_blobs({{0, 0, 0, 0}, {5, 3, -2, 8}}, 60, 19, 2.0);
  const auto scaled = apply_normalizer(fit_normalizer(blobs.rows), blobs.rows);
  for (int k = 0; k < 4; ++k) {
    double sum = 0.0, ss = 0.0;
    for (const auto& r : scaled) sum += r.features()[k];
    const double mean = sum / double(scaled.size());
    for (const auto& r : scaled) {
      const double d = r.features()[k] - mean;
      ss += d * d;
    }
    CHECK(mean == doctest::Approx(0.0).epsilon(1e-9));
    CHECK(std::sqrt(ss / double(scaled.size())) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("feature CSV round trip preserves full precision") {
  testutil::TempDir dir;
  FeatureTable table;
  std::mt19937_64 gen(23);
  auto uniform = [&] { return (double(gen() >> 11) * 0x1.0p-53 - 0.5) * 2e6; };
  for (int i = 0; i < 40; ++i) {
    auto r = testutil::row(uniform(), uniform(), uniform(), uniform());
    r.region_id = "R" + std::to_string(i % 6 + 1);
    r.sector = sector_names()[i % 9];
    table.rows.push_back(std::move(r));
  }
  table.klassen.emplace();
  table.model.emplace();
  for (int i = 0; i < 40; ++i) {
    table.klassen->push_back(i % 4 + 1);
    table.model->push_back((i + 1) % 4 + 1);
  }
  table.inconsistent_rows = {3, 17};

  const std::string path = dir.file("roundtrip.csv");
  save_feature_csv(table, path);
  const FeatureTable loaded = load_feature_csv(path);
  REQUIRE(loaded.rows.size() == table.rows.size());
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    CHECK(loaded.rows[i].region_id == table.rows[i].region_id);
    CHECK(loaded.rows[i].sector == table.rows[i].sector);
    CHECK(loaded.rows[i].features() == table.rows[i].features());  // bit-exact
  }
  CHECK(*loaded.klassen == *table.klassen);
  CHECK(*loaded.model == *table.model);
  CHECK(loaded.inconsistent_rows == table.inconsistent_rows);
}

TEST_CASE("feature CSV reports malformed rows with their line number") {
  testutil::TempDir dir;
  const std::string path = dir.file("bad.csv");
  write_text_file(path, "region_id,sector,v1,v2,v3,v4\na,b,1,2,3,4\na,b,oops,2,3,4\n");
  try {
    load_feature_csv(path);
    FAIL("expected a malformed row error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MalformedRow);
    CHECK(std::string(e.what()).find("line 3") != std::string::npos);
  }
}

TEST_CASE("header-only feature CSV loads as an empty table") {
  testutil::TempDir dir;
  const std::string path = dir.file("empty.csv");
  write_text_file(path, "region_id,sector,v1,v2,v3,v4\n");
  const FeatureTable loaded = load_feature_csv(path);
  CHECK(loaded.rows.empty());
  CHECK(!loaded.klassen);
  CHECK(!loaded.model);
}

TEST_CASE("panel CSV loads districts, province, and explicit totals") {
  testutil::TempDir dir;
  const std::string path = dir.file("panel.csv");
  write_text_file(path,
                  "region_id,region_kind,sector,year,amount\n"
                  "D1,district,Agriculture,2019,110\n"
                  "D1,district,Agriculture,2018,100\n"
                  "P1,province,Agriculture,2018,200\n"
                  "P1,province,Agriculture,2019,210\n"
                  "P1,province,Total,2018,400\n"
                  "P1,province,Total,2019,420\n");
  const Panel panel = load_panel_csv(path);
  REQUIRE(panel.district_sectors.size() == 1);
  REQUIRE(panel.province_sectors.size() == 1);
  CHECK(panel.district_sectors[0].values[0].year == 2018);  // years sorted on load
  REQUIRE(panel.explicit_totals.count("P1"));

  const auto rows = build_feature_rows(panel);
  REQUIRE(rows.size() == 1);
  CHECK(rows[0].v1 == doctest::Approx(10.0));
  CHECK(rows[0].v4 == doctest::Approx(50.0));
}

TEST_CASE("panel CSV rejects duplicate years and unknown kinds") {
  testutil::TempDir dir;
  const std::string dup = dir.file("dup.csv");
  write_text_file(dup,
                  "region_id,region_kind,sector,year,amount\n"
                  "D1,district,Agriculture,2018,100\n"
                  "D1,district,Agriculture,2018,101\n");
  try {
    load_panel_csv(dup);
    FAIL("expected a duplicate year error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidPanel);
  }

  const std::string kind = dir.file("kind.csv");
  write_text_file(kind,
                  "region_id,region_kind,sector,year,amount\n"
                  "D1,town,Agriculture,2018,100\n");
  try {
    load_panel_csv(kind);
    FAIL("expected a malformed row error");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MalformedRow);
    CHECK(std::string(e.what()).find("line 2") != std::string::npos);
  }
}
