#pragma once

#include <vector>

#include "somnb/dataset.hpp"

namespace somnb {

/// The four development quadrants. Numeric values match report labels.
enum class Quadrant : int {
  Developed = 1,        // growth and contribution both at or above province
  Stagnant = 2,         // contribution high, growth below province
  Developing = 3,       // growth high, contribution below province
  Underdeveloped = 4,   // both below province
};

/// Quadrant from the signs of (v1 - v3) and (v2 - v4); equality counts as
/// "high". Throws NonFinite on NaN/infinite inputs.
Quadrant classify_quadrant(const FeatureRow& row);

/// Element-wise classify_quadrant; the first non-finite row is reported
/// with its 1-based row number.
std::vector<Quadrant> classify_all(const std::vector<FeatureRow>& rows);

/// classify_all as 1..4 integers, the label space reports use.
std::vector<int> classify_all_labels(const std::vector<FeatureRow>& rows);

}  // namespace somnb
