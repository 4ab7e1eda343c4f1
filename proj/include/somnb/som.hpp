#pragma once

#include <cstdint>
#include <vector>

#include "somnb/dataset.hpp"
#include "somnb/error.hpp"

namespace somnb {

enum class Topology { Hexagonal, Rectangular };

struct GridSpec {
  int rows = 2;
  int cols = 2;
  Topology topology = Topology::Hexagonal;

  int units() const { return rows * cols; }
  void validate() const;
};

/// Training configuration. Alpha and sigma decay linearly over the total
/// number of presentations (epochs * rows), from the 0-suffixed value to
/// the end/min value.
struct SomConfig {
  GridSpec grid;
  int epochs = 1000;
  double alpha0 = 0.5;
  double alpha_end = 0.01;
  double sigma0 = 0.87;
  double sigma_min = 0.3;
  std::uint64_t seed = 0;

  void validate() const;
};

/// Stock defaults for a grid: 1000 epochs, alpha 0.5 -> 0.01, sigma
/// from half the grid diameter (max pairwise unit distance / 2) down to 0.3.
SomConfig default_config(const GridSpec& grid = GridSpec{});

struct Position {
  double x = 0.0;
  double y = 0.0;
};

/// Unit u = r*cols + c sits at (c + 0.5*(r mod 2), r*sqrt(3)/2) on a
/// hexagonal grid and at (c, r) on a rectangular one; nearest-neighbor
/// distance is exactly 1 in both.
std::vector<Position> grid_positions(const GridSpec& spec);

struct BmuResult {
  std::size_t index = 0;
  double distance = 0.0;  // Euclidean, not squared
};

/// Index of the prototype closest to x (Euclidean); ties break to the
/// lowest index.
BmuResult find_bmu(const std::vector<double>& x,
                   const std::vector<std::vector<double>>& prototypes);

/// Gaussian kernel over grid distance: exp(-|r_b - r_i|^2 / (2 sigma^2)).
double neighborhood(std::size_t b, std::size_t i, double sigma,
                    const std::vector<Position>& positions);

/// m' = m + alpha*h*(x - m).
std::vector<double> update_prototype(const std::vector<double>& m,
                                     const std::vector<double>& x,
                                     double alpha, double h);

struct SomModel {
  SomConfig config;
  std::vector<Position> positions;
  std::vector<std::vector<double>> prototypes;
  NormalizationParams normalization;  // identity unless the pipeline scaled inputs

  std::size_t dimension() const;
};

/// Prototype initialization: uniform draws within each feature's [min, max]
/// over the training rows, from the seeded generator. train_som starts from
/// exactly these vectors for the same (rows, config).
std::vector<std::vector<double>> initial_prototypes(
    const std::vector<std::vector<double>>& rows, const SomConfig& config);

/// Sequential SOM training: every epoch visits each row once in a seeded
/// shuffle order; every presentation updates all units with the current
/// alpha(t) and sigma(t). Bit-identical across runs for equal inputs + seed.
SomModel train_som(const std::vector<std::vector<double>>& rows, const SomConfig& config);

/// Per-row BMU indices (0-based unit ids; reports render them 1-based).
std::vector<int> assign_labels(const SomModel& model,
                               const std::vector<std::vector<double>>& rows);

/// Mean squared input-to-BMU distance.
double quantization_error(const SomModel& model,
                          const std::vector<std::vector<double>>& rows);

/// Kernel-weighted energy at a fixed sigma:
/// sum_i sum_j h(bmu(x_i), j) * |x_i - m_j|^2.
double som_energy(const SomModel& model, const std::vector<std::vector<double>>& rows,
                  double sigma);

}  // namespace somnb
