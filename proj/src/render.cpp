#include "somnb/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace somnb {

std::vector<std::int64_t> label_histogram(const std::vector<int>& labels, std::size_t units) {
  std::vector<std::int64_t> counts(units, 0);
  for (int label : labels) {
    if (label < 0 || static_cast<std::size_t>(label) >= units) {
      throw Error(ErrorCode::UnknownLabel,
                  "label " + std::to_string(label) + " outside 0.." + std::to_string(units - 1));
    }
    ++counts[static_cast<std::size_t>(label)];
  }
  return counts;
}

std::string hitmap_text(const GridSpec& grid, const std::vector<std::int64_t>& counts) {
  grid.validate();
  if (counts.size() != static_cast<std::size_t>(grid.units())) {
    throw Error(ErrorCode::LengthMismatch, "one count per grid unit required");
  }
  std::ostringstream out;
  char cell[32];
  for (int r = 0; r < grid.rows; ++r) {
    if (grid.topology == Topology::Hexagonal && r % 2 == 1) out << "   ";
    for (int c = 0; c < grid.cols; ++c) {
      const auto u = static_cast<std::size_t>(r * grid.cols + c);
      std::snprintf(cell, sizeof(cell), "[%4lld]", static_cast<long long>(counts[u]));
      out << cell;
    }
    out << "\n";
  }
  return out.str();
}

namespace {

std::string fmt(double value) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", value);
  return buf;
}

// Pointy-top hexagon with horizontal extent 1, so neighbors in a row touch.
std::string hexagon_points(double cx, double cy, double scale) {
  const double radius = 1.0 / std::sqrt(3.0);
  std::string points;
  for (int k = 0; k < 6; ++k) {
    const double angle = (90.0 + 60.0 * k) * std::acos(-1.0) / 180.0;
    if (k) points += " ";
    points += fmt(cx + scale * radius * std::cos(angle));
    points += ",";
    points += fmt(cy + scale * radius * std::sin(angle));
  }
  return points;
}

}  // namespace

std::string hitmap_svg(const GridSpec& grid, const std::vector<std::int64_t>& counts) {
  grid.validate();
  if (counts.size() != static_cast<std::size_t>(grid.units())) {
    throw Error(ErrorCode::LengthMismatch, "one count per grid unit required");
  }
  const auto positions = grid_positions(grid);
  const double scale = 64.0;
  const double margin = 48.0;
  double max_x = 0.0, max_y = 0.0;
  for (const auto& p : positions) {
    max_x = std::max(max_x, p.x);
    max_y = std::max(max_y, p.y);
  }
  const double width = max_x * scale + 2.0 * margin;
  const double height = max_y * scale + 2.0 * margin;
  const std::int64_t peak = std::max<std::int64_t>(
      1, *std::max_element(counts.begin(), counts.end()));

  std::ostringstream out;
  out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << fmt(width)
      << "\" height=\"" << fmt(height) << "\" viewBox=\"0 0 " << fmt(width) << " "
      << fmt(height) << "\">\n";
  out << "  <rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  for (std::size_t u = 0; u < positions.size(); ++u) {
    const double cx = margin + positions[u].x * scale;
    const double cy = margin + positions[u].y * scale;
    const double intensity = double(counts[u]) / double(peak);
    const int shade = 255 - static_cast<int>(std::lround(195.0 * intensity));
    const std::string fill =
        "rgb(" + std::to_string(shade) + "," + std::to_string(shade) + ",255)";
    if (grid.topology == Topology::Hexagonal) {
      out << "  <polygon points=\"" << hexagon_points(cx, cy, scale) << "\" fill=\"" << fill
          << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    } else {
      const double side = 0.96 * scale;
      out << "  <rect x=\"" << fmt(cx - side / 2.0) << "\" y=\"" << fmt(cy - side / 2.0)
          << "\" width=\"" << fmt(side) << "\" height=\"" << fmt(side) << "\" fill=\"" << fill
          << "\" stroke=\"#333333\" stroke-width=\"1\"/>\n";
    }
    out << "  <text x=\"" << fmt(cx) << "\" y=\"" << fmt(cy + 5.0)
        << "\" font-family=\"monospace\" font-size=\"14\" text-anchor=\"middle\">"
        << counts[u] << "</text>\n";
  }
  out << "</svg>\n";
  return out.str();
}

}  // namespace somnb
