#include "somnb/klassen.hpp"

namespace somnb {

Quadrant classify_quadrant(const FeatureRow& row) {
  if (!row.finite()) {
    throw Error(ErrorCode::NonFinite, "feature row has NaN or infinite values");
  }
  const bool growth_high = row.v1 >= row.v3;        // ties count as "high"
  const bool contribution_high = row.v2 >= row.v4;
  if (growth_high && contribution_high) return Quadrant::Developed;
  if (!growth_high && contribution_high) return Quadrant::Stagnant;
  if (growth_high) return Quadrant::Developing;
  return Quadrant::Underdeveloped;
}

std::vector<Quadrant> classify_all(const std::vector<FeatureRow>& rows) {
  std::vector<Quadrant> out;
  out.reserve(rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (!rows[i].finite()) {
      throw Error(ErrorCode::NonFinite,
                  "feature row " + std::to_string(i + 1) + " has NaN or infinite values");
    }
    out.push_back(classify_quadrant(rows[i]));
  }
  return out;
}

std::vector<int> classify_all_labels(const std::vector<FeatureRow>& rows) {
  std::vector<int> out;
  out.reserve(rows.size());
  for (Quadrant q : classify_all(rows)) out.push_back(static_cast<int>(q));
  return out;
}

}  // namespace somnb
