#pragma once

#include <optional>
#include <vector>

#include "rbmd/density.hpp"
#include "rbmd/domain.hpp"
#include "rbmd/dynamics.hpp"
#include "rbmd/grid.hpp"

namespace rbmd {

/// Gridded drift estimate. Invalid nodes carry no vector.
struct DriftField {
  Grid2D grid;
  std::vector<std::optional<Vec2>> values;
  std::vector<std::size_t> counts;
  /// Nodes outside the domain (when one was given) are not evaluated.
  std::vector<bool> evaluated;
  std::size_t min_count = 0;

  bool valid(std::size_t k) const { return values[k].has_value(); }
  std::size_t valid_count() const;
  /// Valid nodes over evaluated nodes.
  double valid_fraction() const;
};

/// Increments whose left endpoint lies in the closed ball B(x, h_loc),
/// averaged and divided by delta. Increments flagged as excluded are skipped.
/// Throws NoLocalSamples when none qualify.
Vec2 local_increment_drift(const Trajectory& trajectory, Vec2 x, double h_loc);

/// Same estimate, also reporting the number of increments used (0 when none).
std::optional<Vec2> local_increment_drift(const Trajectory& trajectory, Vec2 x, double h_loc, std::size_t& count);

/// grad(g_n)(x) / (2 g_n(x)). Throws DensityBelowFloor when g_n(x) < floor.
Vec2 plugin_gradient_drift(const DensityEstimate& estimate, Vec2 x, double floor);

/// local_increment_drift at every node; nodes with fewer than min_count
/// increments are invalid. With a domain, only nodes inside it are evaluated.
DriftField drift_field_on_grid(const Trajectory& trajectory, const Grid2D& grid, double h_loc,
                               std::size_t min_count, const Domain* domain = nullptr);

/// plugin_gradient_drift at every node; nodes below the floor are invalid.
/// counts hold the number of samples within one bandwidth of the node.
DriftField plugin_drift_field(const DensityEstimate& estimate, const Grid2D& grid, double floor,
                              const Domain* domain = nullptr);

}  // namespace rbmd
