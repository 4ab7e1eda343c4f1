#include "somnb/som.hpp"

#include <cmath>
#include <limits>
#include <numeric>
#include <random>

namespace somnb {

namespace {

// std::uniform_real_distribution and std::shuffle are implementation-defined,
// which would break the bit-identical replay contract if the standard
// library changed; the draws below are pinned to the mt19937_64 stream.
double uniform_in(std::mt19937_64& gen, double lo, double hi) {
  const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;  // [0, 1)
  return lo + u * (hi - lo);
}

std::uint64_t bounded(std::mt19937_64& gen, std::uint64_t n) {
  const std::uint64_t limit =
      std::numeric_limits<std::uint64_t>::max() -
      std::numeric_limits<std::uint64_t>::max() % n;
  std::uint64_t v;
  do {
    v = gen();
  } while (v >= limit);
  return v % n;
}

void shuffle_indices(std::vector<std::size_t>& idx, std::mt19937_64& gen) {
  for (std::size_t i = idx.size(); i > 1; --i) {
    std::swap(idx[i - 1], idx[bounded(gen, i)]);
  }
}

void check_rows(const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw Error(ErrorCode::EmptyInput, "no training rows");
  const std::size_t dim = rows.front().size();
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (rows[i].size() != dim) {
      throw Error(ErrorCode::DimensionMismatch,
                  "row " + std::to_string(i) + " has dimension " +
                      std::to_string(rows[i].size()) + ", expected " + std::to_string(dim));
    }
    for (double v : rows[i]) {
      if (!std::isfinite(v)) {
        throw Error(ErrorCode::NonFinite, "row " + std::to_string(i) + " is not finite");
      }
    }
  }
}

double squared_distance(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t k = 0; k < a.size(); ++k) {
    const double d = a[k] - b[k];
    s += d * d;
  }
  return s;
}

std::vector<std::vector<double>> draw_initial(const std::vector<std::vector<double>>& rows,
                                              std::size_t units, std::mt19937_64& gen) {
  const std::size_t dim = rows.front().size();
  std::vector<double> lo(dim, std::numeric_limits<double>::infinity());
  std::vector<double> hi(dim, -std::numeric_limits<double>::infinity());
  for (const auto& row : rows) {
    for (std::size_t k = 0; k < dim; ++k) {
      lo[k] = std::min(lo[k], row[k]);
      hi[k] = std::max(hi[k], row[k]);
    }
  }
  std::vector<std::vector<double>> prototypes(units, std::vector<double>(dim));
  for (auto& p : prototypes) {
    for (std::size_t k = 0; k < dim; ++k) p[k] = uniform_in(gen, lo[k], hi[k]);
  }
  return prototypes;
}

}  // namespace

void GridSpec::validate() const {
  if (rows < 1 || cols < 1) {
    throw Error(ErrorCode::InvalidConfig, "grid must have at least 1 row and 1 column");
  }
}

void SomConfig::validate() const {
  grid.validate();
  if (epochs < 1) throw Error(ErrorCode::InvalidConfig, "epochs must be positive");
  if (!(alpha_end > 0.0 && alpha_end <= alpha0 && alpha0 <= 1.0)) {
    throw Error(ErrorCode::InvalidConfig, "need 0 < alpha_end <= alpha0 <= 1");
  }
  if (!(sigma_min > 0.0 && sigma_min <= sigma0)) {
    throw Error(ErrorCode::InvalidConfig, "need 0 < sigma_min <= sigma0");
  }
}

std::vector<Position> grid_positions(const GridSpec& spec) {
  spec.validate();
  std::vector<Position> positions;
  positions.reserve(static_cast<std::size_t>(spec.units()));
  const double row_height = std::sqrt(3.0) / 2.0;
  for (int r = 0; r < spec.rows; ++r) {
    for (int c = 0; c < spec.cols; ++c) {
      if (spec.topology == Topology::Hexagonal) {
        positions.push_back({c + 0.5 * (r % 2), r * row_height});
      } else {
        positions.push_back({double(c), double(r)});
      }
    }
  }
  return positions;
}

SomConfig default_config(const GridSpec& grid) {
  SomConfig config;
  config.grid = grid;
  const auto positions = grid_positions(grid);
  double diameter = 0.0;
  for (std::size_t i = 0; i < positions.size(); ++i) {
    for (std::size_t j = i + 1; j < positions.size(); ++j) {
      const double dx = positions[i].x - positions[j].x;
      const double dy = positions[i].y - positions[j].y;
      diameter = std::max(diameter, std::sqrt(dx * dx + dy * dy));
    }
  }
  config.sigma0 = std::max(diameter / 2.0, config.sigma_min);
  return config;
}

BmuResult find_bmu(const std::vector<double>& x,
                   const std::vector<std::vector<double>>& prototypes) {
  if (prototypes.empty()) throw Error(ErrorCode::EmptyInput, "no prototypes");
  BmuResult best{0, std::numeric_limits<double>::infinity()};
  for (std::size_t i = 0; i < prototypes.size(); ++i) {
    if (prototypes[i].size() != x.size()) {
      throw Error(ErrorCode::DimensionMismatch,
                  "prototype " + std::to_string(i) + " has dimension " +
                      std::to_string(prototypes[i].size()) + ", input has " +
                      std::to_string(x.size()));
    }
    const double d = squared_distance(x, prototypes[i]);
    if (d < best.distance) best = {i, d};
  }
  best.distance = std::sqrt(best.distance);
  return best;
}

double neighborhood(std::size_t b, std::size_t i, double sigma,
                    const std::vector<Position>& positions) {
  const double dx = positions[b].x - positions[i].x;
  const double dy = positions[b].y - positions[i].y;
  return std::exp(-(dx * dx + dy * dy) / (2.0 * sigma * sigma));
}

std::vector<double> update_prototype(const std::vector<double>& m,
                                     const std::vector<double>& x,
                                     double alpha, double h) {
  if (m.size() != x.size()) {
    throw Error(ErrorCode::DimensionMismatch, "prototype and input dimensions differ");
  }
  std::vector<double> out(m.size());
  const double step = alpha * h;
  for (std::size_t k = 0; k < m.size(); ++k) out[k] = m[k] + step * (x[k] - m[k]);
  return out;
}

std::size_t SomModel::dimension() const {
  return prototypes.empty() ? 0 : prototypes.front().size();
}

std::vector<std::vector<double>> initial_prototypes(
    const std::vector<std::vector<double>>& rows, const SomConfig& config) {
  config.validate();
  check_rows(rows);
  std::mt19937_64 gen(config.seed);
  return draw_initial(rows, static_cast<std::size_t>(config.grid.units()), gen);
}

SomModel train_som(const std::vector<std::vector<double>>& rows, const SomConfig& config) {
  config.validate();
  check_rows(rows);

  SomModel model;
  model.config = config;
  model.positions = grid_positions(config.grid);

  std::mt19937_64 gen(config.seed);
  model.prototypes = draw_initial(rows, model.positions.size(), gen);

  const std::size_t n = rows.size();
  const std::uint64_t total = static_cast<std::uint64_t>(config.epochs) * n;
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});

  std::uint64_t t = 0;
  for (int epoch = 0; epoch < config.epochs; ++epoch) {
    shuffle_indices(order, gen);
    for (std::size_t idx : order) {
      const double progress = total > 1 ? double(t) / double(total - 1) : 0.0;
      const double alpha = config.alpha0 + progress * (config.alpha_end - config.alpha0);
      const double sigma = config.sigma0 + progress * (config.sigma_min - config.sigma0);
      const std::size_t b = find_bmu(rows[idx], model.prototypes).index;
      for (std::size_t i = 0; i < model.prototypes.size(); ++i) {
        const double h = neighborhood(b, i, sigma, model.positions);
        const double step = alpha * h;
        auto& m = model.prototypes[i];
        for (std::size_t k = 0; k < m.size(); ++k) m[k] += step * (rows[idx][k] - m[k]);
      }
      ++t;
    }
  }
  return model;
}

std::vector<int> assign_labels(const SomModel& model,
                               const std::vector<std::vector<double>>& rows) {
  std::vector<int> labels;
  labels.reserve(rows.size());
  for (const auto& row : rows) {
    labels.push_back(static_cast<int>(find_bmu(row, model.prototypes).index));
  }
  return labels;
}

double quantization_error(const SomModel& model,
                          const std::vector<std::vector<double>>& rows) {
  if (rows.empty()) throw Error(ErrorCode::EmptyInput, "no rows");
  double sum = 0.0;
  for (const auto& row : rows) {
    const BmuResult bmu = find_bmu(row, model.prototypes);
    sum += bmu.distance * bmu.distance;
  }
  return sum / static_cast<double>(rows.size());
}

double som_energy(const SomModel& model, const std::vector<std::vector<double>>& rows,
                  double sigma) {
  if (rows.empty()) throw Error(ErrorCode::EmptyInput, "no rows");
  if (sigma <= 0.0) throw Error(ErrorCode::InvalidConfig, "sigma must be positive");
  double energy = 0.0;
  for (const auto& row : rows) {
    const std::size_t b = find_bmu(row, model.prototypes).index;
    for (std::size_t j = 0; j < model.prototypes.size(); ++j) {
      energy += neighborhood(b, j, sigma, model.positions) *
                squared_distance(row, model.prototypes[j]);
    }
  }
  return energy;
}

}  // namespace somnb
