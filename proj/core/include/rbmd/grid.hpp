#pragma once

#include <cstddef>
#include <vector>

#include "rbmd/types.hpp"

namespace rbmd {

/// Rectangular lattice of nx * ny nodes spanning a box, corners included.
/// A single node along an axis sits at the box centre on that axis.
struct Grid2D {
  BBox box;
  std::size_t nx = 1;
  std::size_t ny = 1;

  Grid2D() = default;
  Grid2D(BBox b, std::size_t nx_, std::size_t ny_);

  std::size_t size() const { return nx * ny; }
  double dx() const { return nx > 1 ? box.width() / static_cast<double>(nx - 1) : 0.0; }
  double dy() const { return ny > 1 ? box.height() / static_cast<double>(ny - 1) : 0.0; }
  double x(std::size_t i) const;
  double y(std::size_t j) const;
  Vec2 node(std::size_t i, std::size_t j) const { return {x(i), y(j)}; }
  /// Row-major: k = j * nx + i.
  Vec2 node(std::size_t k) const { return node(k % nx, k / nx); }
};

/// Values at the nodes of a grid, row-major.
struct ScalarField {
  Grid2D grid;
  std::vector<double> values;

  double at(std::size_t i, std::size_t j) const { return values[j * grid.nx + i]; }
  double max() const;
};

}  // namespace rbmd
