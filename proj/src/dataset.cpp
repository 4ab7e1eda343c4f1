#include "somnb/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

namespace somnb {

namespace {

std::string row_context(const SectorSeries& s) {
  return "region '" + s.region_id + "', sector '" + s.sector + "'";
}

double mean_of(const std::vector<double>& xs) {
  return std::accumulate(xs.begin(), xs.end(), 0.0) / static_cast<double>(xs.size());
}

}  // namespace

const std::array<std::string, 9>& sector_names() {
  static const std::array<std::string, 9> names = {
      "Agriculture",
      "Mining and Quarrying",
      "Manufacturing",
      "Electricity-Gas and Water",
      "Building",
      "Commerce-Hotel and Restaurant",
      "Transport and Communications",
      "Finance-Leasing and services agency",
      "Services",
  };
  return names;
}

bool is_sector_name(const std::string& name) {
  const auto& names = sector_names();
  return std::find(names.begin(), names.end(), name) != names.end();
}

void SectorSeries::validate() const {
  if (!is_sector_name(sector) && sector != kTotalSector) {
    throw Error(ErrorCode::MalformedRow, "unknown sector '" + sector + "' (" + row_context(*this) + ")");
  }
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (values[i].amount < 0.0 || !std::isfinite(values[i].amount)) {
      throw Error(ErrorCode::MalformedRow,
                  "negative or non-finite amount in year " + std::to_string(values[i].year) +
                      " (" + row_context(*this) + ")");
    }
    if (i > 0 && values[i].year <= values[i - 1].year) {
      throw Error(ErrorCode::MalformedRow,
                  "years not strictly increasing at " + std::to_string(values[i].year) + " (" +
                      row_context(*this) + ")");
    }
  }
}

bool FeatureRow::finite() const {
  return std::isfinite(v1) && std::isfinite(v2) && std::isfinite(v3) && std::isfinite(v4);
}

std::vector<double> growth_series(const SectorSeries& s) {
  if (s.values.size() < 2) {
    throw Error(ErrorCode::TooShort,
                "need at least 2 yearly values to derive growth (" + row_context(s) + ")");
  }
  std::vector<double> out;
  out.reserve(s.values.size() - 1);
  for (std::size_t i = 0; i + 1 < s.values.size(); ++i) {
    const double base = s.values[i].amount;
    if (base == 0.0) {
      throw Error(ErrorCode::ZeroBaseYear,
                  "zero base-year amount in year " + std::to_string(s.values[i].year) + " (" +
                      row_context(s) + ")");
    }
    out.push_back(100.0 * (s.values[i + 1].amount - base) / base);
  }
  return out;
}

std::vector<double> contribution_series(const SectorSeries& s, const SectorSeries& total) {
  if (s.values.size() != total.values.size()) {
    throw Error(ErrorCode::YearMismatch,
                "series and total cover different year counts (" + row_context(s) + ")");
  }
  std::vector<double> out;
  out.reserve(s.values.size());
  for (std::size_t i = 0; i < s.values.size(); ++i) {
    if (s.values[i].year != total.values[i].year) {
      throw Error(ErrorCode::YearMismatch,
                  "year " + std::to_string(s.values[i].year) + " vs total year " +
                      std::to_string(total.values[i].year) + " (" + row_context(s) + ")");
    }
    if (total.values[i].amount <= 0.0) {
      throw Error(ErrorCode::ZeroTotal, "non-positive total in year " +
                                            std::to_string(total.values[i].year) + " (" +
                                            row_context(s) + ")");
    }
    out.push_back(100.0 * s.values[i].amount / total.values[i].amount);
  }
  return out;
}

namespace {

// region_id -> sector -> series, preserving first-seen region order
struct GroupedRegions {
  std::vector<std::string> order;
  std::map<std::string, std::map<std::string, const SectorSeries*>> by_region;
};

GroupedRegions group_by_region(const std::vector<SectorSeries>& series) {
  GroupedRegions g;
  for (const auto& s : series) {
    s.validate();
    auto [it, inserted] = g.by_region.try_emplace(s.region_id);
    if (inserted) g.order.push_back(s.region_id);
    if (!it->second.emplace(s.sector, &s).second) {
      throw Error(ErrorCode::InvalidPanel,
                  "duplicate series for " + row_context(s));
    }
  }
  return g;
}

// Total series for one region: the explicit override when present,
// otherwise the per-year sum of the region's sector series.
SectorSeries region_total(const std::string& region_id,
                          const std::map<std::string, const SectorSeries*>& sectors,
                          const std::map<std::string, std::vector<YearValue>>& explicit_totals) {
  SectorSeries total;
  total.region_id = region_id;
  total.sector = kTotalSector;
  if (auto it = explicit_totals.find(region_id); it != explicit_totals.end()) {
    total.values = it->second;
    return total;
  }
  const SectorSeries* first = sectors.begin()->second;
  total.kind = first->kind;
  total.values = first->values;
  for (auto it = std::next(sectors.begin()); it != sectors.end(); ++it) {
    const auto& vals = it->second->values;
    if (vals.size() != total.values.size()) {
      throw Error(ErrorCode::YearMismatch,
                  "sector series of region '" + region_id + "' cover different years");
    }
    for (std::size_t i = 0; i < vals.size(); ++i) {
      if (vals[i].year != total.values[i].year) {
        throw Error(ErrorCode::YearMismatch,
                    "sector series of region '" + region_id + "' cover different years");
      }
      total.values[i].amount += vals[i].amount;
    }
  }
  return total;
}

}  // namespace

std::vector<FeatureRow> build_feature_rows(const Panel& panel) {
  if (panel.district_sectors.empty() || panel.province_sectors.empty()) {
    throw Error(ErrorCode::EmptyInput, "panel needs district and province series");
  }
  GroupedRegions districts = group_by_region(panel.district_sectors);
  GroupedRegions provinces = group_by_region(panel.province_sectors);
  if (provinces.order.size() != 1) {
    throw Error(ErrorCode::InvalidPanel,
                "expected exactly one province region, got " + std::to_string(provinces.order.size()));
  }
  const auto& province_sectors = provinces.by_region.at(provinces.order.front());
  SectorSeries province_total =
      region_total(provinces.order.front(), province_sectors, panel.explicit_totals);

  // Province-level averages are shared by every district row of a sector.
  std::map<std::string, std::pair<double, double>> province_features;  // sector -> (v3, v4)
  for (const auto& [sector, series] : province_sectors) {
    province_features[sector] = {mean_of(growth_series(*series)),
                                 mean_of(contribution_series(*series, province_total))};
  }

  std::vector<FeatureRow> rows;
  for (const auto& region_id : districts.order) {
    const auto& sectors = districts.by_region.at(region_id);
    SectorSeries district_total = region_total(region_id, sectors, panel.explicit_totals);
    for (const auto& [sector, series] : sectors) {
      auto it = province_features.find(sector);
      if (it == province_features.end()) {
        throw Error(ErrorCode::MissingSector,
                    "province has no series for sector '" + sector + "'");
      }
      FeatureRow row;
      row.region_id = region_id;
      row.sector = sector;
      row.v1 = mean_of(growth_series(*series));
      row.v2 = mean_of(contribution_series(*series, district_total));
      row.v3 = it->second.first;
      row.v4 = it->second.second;
      rows.push_back(std::move(row));
    }
  }
  return rows;
}

std::vector<FeatureRow> build_feature_rows(const std::vector<SectorSeries>& district,
                                           const std::vector<SectorSeries>& province) {
  Panel panel;
  panel.district_sectors = district;
  panel.province_sectors = province;
  return build_feature_rows(panel);
}

NormalizationParams fit_normalizer(const std::vector<FeatureRow>& rows) {
  if (rows.size() < 2) {
    throw Error(ErrorCode::EmptyInput, "need at least 2 rows to fit a normalizer");
  }
  NormalizationParams params;
  params.enabled = true;
  const double n = static_cast<double>(rows.size());
  for (std::size_t k = 0; k < 4; ++k) {
    double sum = 0.0;
    for (const auto& r : rows) sum += r.features()[k];
    const double mean = sum / n;
    double ss = 0.0;
    for (const auto& r : rows) {
      const double d = r.features()[k] - mean;
      ss += d * d;
    }
    const double sd = std::sqrt(ss / n);  // population statistics
    if (sd == 0.0) {
      throw Error(ErrorCode::ZeroVariance,
                  "feature v" + std::to_string(k + 1) + " has zero variance");
    }
    params.mean.push_back(mean);
    params.stddev.push_back(sd);
  }
  return params;
}

std::vector<FeatureRow> apply_normalizer(const NormalizationParams& params,
                                         const std::vector<FeatureRow>& rows) {
  if (!params.enabled) return rows;
  if (params.mean.size() != 4 || params.stddev.size() != 4) {
    throw Error(ErrorCode::DimensionMismatch, "normalizer does not carry 4 feature pairs");
  }
  std::vector<FeatureRow> out = rows;
  for (auto& r : out) {
    r.v1 = (r.v1 - params.mean[0]) / params.stddev[0];
    r.v2 = (r.v2 - params.mean[1]) / params.stddev[1];
    r.v3 = (r.v3 - params.mean[2]) / params.stddev[2];
    r.v4 = (r.v4 - params.mean[3]) / params.stddev[3];
  }
  return out;
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::stringstream ss(line);
  while (std::getline(ss, field, ',')) fields.push_back(field);
  if (!line.empty() && line.back() == ',') fields.push_back("");
  return fields;
}

double parse_double(const std::string& text, std::size_t line_no, const char* column) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const double value = std::strtod(begin, &end);
  if (end == begin || *end != '\0' || !std::isfinite(value)) {
    throw Error(ErrorCode::MalformedRow, "line " + std::to_string(line_no) +
                                             ": non-numeric or non-finite " + column + " '" +
                                             text + "'");
  }
  return value;
}

int parse_int(const std::string& text, std::size_t line_no, const char* column) {
  const char* begin = text.c_str();
  char* end = nullptr;
  const long value = std::strtol(begin, &end, 10);
  if (end == begin || *end != '\0') {
    throw Error(ErrorCode::MalformedRow, "line " + std::to_string(line_no) +
                                             ": non-integer " + column + " '" + text + "'");
  }
  return static_cast<int>(value);
}

int parse_label(const std::string& text, std::size_t line_no, const char* column) {
  const int value = parse_int(text, line_no, column);
  if (value < 1 || value > 4) {
    throw Error(ErrorCode::MalformedRow, "line " + std::to_string(line_no) + ": " + column +
                                             " label out of range 1..4: '" + text + "'");
  }
  return value;
}

std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

constexpr const char* kInconsistentTag = "inconsistent_klassen_rows:";

}  // namespace

FeatureTable load_feature_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");

  FeatureTable table;
  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  bool has_klassen = false;
  bool has_model = false;

  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line.front() == '#') {
      if (auto pos = line.find(kInconsistentTag); pos != std::string::npos) {
        std::stringstream ss(line.substr(pos + std::string(kInconsistentTag).size()));
        std::string item;
        while (std::getline(ss, item, ',')) {
          table.inconsistent_rows.push_back(
              static_cast<std::size_t>(parse_int(item, line_no, "annotation row")));
        }
      }
      continue;
    }
    auto fields = split_csv_line(line);
    if (!header_seen) {
      if (fields.size() < 6 || fields[0] != "region_id" || fields[1] != "sector" ||
          fields[2] != "v1" || fields[3] != "v2" || fields[4] != "v3" || fields[5] != "v4") {
        throw Error(ErrorCode::MalformedRow,
                    "line " + std::to_string(line_no) +
                        ": expected header region_id,sector,v1,v2,v3,v4[,klassen[,model]]");
      }
      has_klassen = fields.size() >= 7 && fields[6] == "klassen";
      has_model = fields.size() >= 8 && fields[7] == "model";
      if (fields.size() > 6 && !has_klassen) {
        throw Error(ErrorCode::MalformedRow,
                    "line " + std::to_string(line_no) + ": unexpected column '" + fields[6] + "'");
      }
      if (fields.size() > 7 && !has_model) {
        throw Error(ErrorCode::MalformedRow,
                    "line " + std::to_string(line_no) + ": unexpected column '" + fields[7] + "'");
      }
      if (fields.size() > 8) {
        throw Error(ErrorCode::MalformedRow,
                    "line " + std::to_string(line_no) + ": too many header columns");
      }
      if (has_klassen) table.klassen.emplace();
      if (has_model) table.model.emplace();
      header_seen = true;
      continue;
    }
    const std::size_t expected = 6 + (has_klassen ? 1 : 0) + (has_model ? 1 : 0);
    if (fields.size() != expected) {
      throw Error(ErrorCode::MalformedRow, "line " + std::to_string(line_no) + ": expected " +
                                               std::to_string(expected) + " fields, got " +
                                               std::to_string(fields.size()));
    }
    FeatureRow row;
    row.region_id = fields[0];
    row.sector = fields[1];
    row.v1 = parse_double(fields[2], line_no, "v1");
    row.v2 = parse_double(fields[3], line_no, "v2");
    row.v3 = parse_double(fields[4], line_no, "v3");
    row.v4 = parse_double(fields[5], line_no, "v4");
    table.rows.push_back(std::move(row));
    if (has_klassen) table.klassen->push_back(parse_label(fields[6], line_no, "klassen"));
    if (has_model) table.model->push_back(parse_label(fields[7], line_no, "model"));
  }
  if (!header_seen) {
    throw Error(ErrorCode::MalformedRow, "missing header row in '" + path + "'");
  }
  return table;
}

void save_feature_csv(const FeatureTable& table, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IoError, "cannot write '" + path + "'");
  if (!table.inconsistent_rows.empty()) {
    out << "# " << kInconsistentTag << " ";
    for (std::size_t i = 0; i < table.inconsistent_rows.size(); ++i) {
      if (i) out << ",";
      out << table.inconsistent_rows[i];
    }
    out << "\n";
  }
  out << "region_id,sector,v1,v2,v3,v4";
  if (table.klassen) out << ",klassen";
  if (table.model) out << ",model";
  out << "\n";
  for (std::size_t i = 0; i < table.rows.size(); ++i) {
    const auto& r = table.rows[i];
    out << r.region_id << "," << r.sector << "," << format_double(r.v1) << ","
        << format_double(r.v2) << "," << format_double(r.v3) << "," << format_double(r.v4);
    if (table.klassen) out << "," << (*table.klassen)[i];
    if (table.model) out << "," << (*table.model)[i];
    out << "\n";
  }
  if (!out) throw Error(ErrorCode::IoError, "write failed for '" + path + "'");
}

Panel load_panel_csv(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IoError, "cannot open '" + path + "'");

  struct Key {
    std::string region;
    RegionKind kind;
    std::string sector;
    bool operator<(const Key& o) const {
      return std::tie(region, kind, sector) < std::tie(o.region, o.kind, o.sector);
    }
  };
  std::map<Key, std::vector<YearValue>> series;
  std::vector<Key> order;

  std::string line;
  std::size_t line_no = 0;
  bool header_seen = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line.front() == '#') continue;
    auto fields = split_csv_line(line);
    if (!header_seen) {
      if (fields.size() != 5 || fields[0] != "region_id" || fields[1] != "region_kind" ||
          fields[2] != "sector" || fields[3] != "year" || fields[4] != "amount") {
        throw Error(ErrorCode::MalformedRow,
                    "line " + std::to_string(line_no) +
                        ": expected header region_id,region_kind,sector,year,amount");
      }
      header_seen = true;
      continue;
    }
    if (fields.size() != 5) {
      throw Error(ErrorCode::MalformedRow,
                  "line " + std::to_string(line_no) + ": expected 5 fields, got " +
                      std::to_string(fields.size()));
    }
    Key key;
    key.region = fields[0];
    if (fields[1] == "district") {
      key.kind = RegionKind::District;
    } else if (fields[1] == "province") {
      key.kind = RegionKind::Province;
    } else {
      throw Error(ErrorCode::MalformedRow, "line " + std::to_string(line_no) +
                                               ": region_kind must be district or province, got '" +
                                               fields[1] + "'");
    }
    key.sector = fields[2];
    if (!is_sector_name(key.sector) && key.sector != kTotalSector) {
      throw Error(ErrorCode::MalformedRow,
                  "line " + std::to_string(line_no) + ": unknown sector '" + key.sector + "'");
    }
    const int year = parse_int(fields[3], line_no, "year");
    const double amount = parse_double(fields[4], line_no, "amount");
    if (amount < 0.0) {
      throw Error(ErrorCode::MalformedRow,
                  "line " + std::to_string(line_no) + ": negative amount");
    }
    auto [it, inserted] = series.try_emplace(key);
    if (inserted) order.push_back(key);
    it->second.push_back({year, amount});
  }
  if (!header_seen) {
    throw Error(ErrorCode::MalformedRow, "missing header row in '" + path + "'");
  }
  if (series.empty()) {
    throw Error(ErrorCode::EmptyInput, "no rows in '" + path + "'");
  }

  Panel panel;
  for (const auto& key : order) {
    auto values = series.at(key);
    std::sort(values.begin(), values.end(),
              [](const YearValue& a, const YearValue& b) { return a.year < b.year; });
    for (std::size_t i = 1; i < values.size(); ++i) {
      if (values[i].year == values[i - 1].year) {
        throw Error(ErrorCode::InvalidPanel,
                    "duplicate year " + std::to_string(values[i].year) + " for region '" +
                        key.region + "', sector '" + key.sector + "'");
      }
    }
    if (key.sector == kTotalSector) {
      panel.explicit_totals[key.region] = std::move(values);
      continue;
    }
    SectorSeries s;
    s.region_id = key.region;
    s.kind = key.kind;
    s.sector = key.sector;
    s.values = std::move(values);
    s.validate();
    if (key.kind == RegionKind::District) {
      panel.district_sectors.push_back(std::move(s));
    } else {
      panel.province_sectors.push_back(std::move(s));
    }
  }
  return panel;
}

}  // namespace somnb
