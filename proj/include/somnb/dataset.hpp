#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "somnb/error.hpp"

namespace somnb {

enum class RegionKind { District, Province };

struct YearValue {
  int year = 0;
  double amount = 0.0;
};

/// The closed set of GDP sector names, in canonical order.
const std::array<std::string, 9>& sector_names();
bool is_sector_name(const std::string& name);

/// Reserved sector name for an explicit total-GDP series in panel files.
inline constexpr const char* kTotalSector = "Total";

/// One region's yearly monetary values for a single sector.
/// Years must be strictly increasing and amounts non-negative.
struct SectorSeries {
  std::string region_id;
  RegionKind kind = RegionKind::District;
  std::string sector;
  std::vector<YearValue> values;

  void validate() const;  // throws Error on invariant violation
};

/// The 4-dimensional input vector: district average growth/contribution,
/// province average growth/contribution. Identifier fields may be empty.
struct FeatureRow {
  double v1 = 0.0;
  double v2 = 0.0;
  double v3 = 0.0;
  double v4 = 0.0;
  std::string region_id;
  std::string sector;

  std::array<double, 4> features() const { return {v1, v2, v3, v4}; }
  bool finite() const;
};

/// Year-over-year percent change; output has one element per consecutive
/// year pair. A zero base-year amount is an error, not a skip.
std::vector<double> growth_series(const SectorSeries& s);

/// Percent share of `s` in `total`, per year. Both series must cover the
/// same years; total amounts must be positive.
std::vector<double> contribution_series(const SectorSeries& s, const SectorSeries& total);

/// Raw sector panel for one province and its districts. Explicit "Total"
/// series, when present, override the per-region sum of sectors.
struct Panel {
  std::vector<SectorSeries> district_sectors;
  std::vector<SectorSeries> province_sectors;
  std::map<std::string, std::vector<YearValue>> explicit_totals;
};

/// One FeatureRow per (district, sector) pair. v1/v2 come from the
/// district's series (contribution against the district total), v3/v4 from
/// the province's series for the same sector (against the province total).
std::vector<FeatureRow> build_feature_rows(const Panel& panel);
std::vector<FeatureRow> build_feature_rows(const std::vector<SectorSeries>& district,
                                           const std::vector<SectorSeries>& province);

/// Per-feature standardization parameters (population statistics).
struct NormalizationParams {
  bool enabled = false;
  std::vector<double> mean;
  std::vector<double> stddev;
};

NormalizationParams fit_normalizer(const std::vector<FeatureRow>& rows);
std::vector<FeatureRow> apply_normalizer(const NormalizationParams& params,
                                         const std::vector<FeatureRow>& rows);

/// Feature CSV contents. The optional label columns carry integers 1..4.
/// `inconsistent_rows` holds 1-based row numbers parsed from an
/// `# inconsistent_klassen_rows:` comment line, when the file has one.
struct FeatureTable {
  std::vector<FeatureRow> rows;
  std::optional<std::vector<int>> klassen;
  std::optional<std::vector<int>> model;
  std::vector<std::size_t> inconsistent_rows;
};

FeatureTable load_feature_csv(const std::string& path);
void save_feature_csv(const FeatureTable& table, const std::string& path);

/// Raw panel CSV: region_id, region_kind, sector, year, amount.
Panel load_panel_csv(const std::string& path);

}  // namespace somnb
