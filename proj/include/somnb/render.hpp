#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "somnb/som.hpp"

namespace somnb {

/// Per-unit counts from 0-based unit labels.
std::vector<std::int64_t> label_histogram(const std::vector<int>& labels, std::size_t units);

/// Text grid of per-unit assigned-row counts.
std::string hitmap_text(const GridSpec& grid, const std::vector<std::int64_t>& counts);

/// Static SVG: one hexagon (or square) per unit, fill intensity by count.
std::string hitmap_svg(const GridSpec& grid, const std::vector<std::int64_t>& counts);

}  // namespace somnb
