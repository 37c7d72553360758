#pragma once

#include <functional>
#include <vector>

#include "rbmd/density.hpp"
#include "rbmd/domain.hpp"
#include "rbmd/dynamics.hpp"
#include "rbmd/grid.hpp"
#include "rbmd/region.hpp"

namespace rbmd {

/// Gradient-case stationary density g(x) = exp(-V(x)) / c on the domain and
/// exactly 0 outside.
class AnalyticDensity {
 public:
  AnalyticDensity(Domain domain, Potential potential, double c);
  /// Computes c with normalization_constant at the given resolution.
  static AnalyticDensity normalized(Domain domain, Potential potential, std::size_t resolution = 2000);

  double operator()(Vec2 x) const;
  Vec2 gradient(Vec2 x) const;
  double c() const { return c_; }
  const Domain& domain() const { return domain_; }
  const Potential& potential() const { return potential_; }

 private:
  Domain domain_;
  Potential potential_;
  double c_;
};

/// Midpoint rule for int_box f(x) 1_A(x) dx on n x n cells. Cells whose
/// corners and centre disagree on membership are refined to 4 x 4
/// sub-midpoints. Rows are summed with compensation and combined in order.
double masked_quadrature(const BBox& box, std::size_t n, const std::function<double(Vec2)>& f,
                         const std::function<bool(Vec2)>& member);

/// Runs masked_quadrature at n and 2n; throws QuadratureNotConverged when the
/// relative change is 1e-3 or more. Returns the value at n.
double checked_quadrature(const BBox& box, std::size_t n, const std::function<double(Vec2)>& f,
                          const std::function<bool(Vec2)>& member);

/// c = int_D exp(-V).
double normalization_constant(const Domain& domain, const Potential& potential, std::size_t resolution);

/// pi(region) under the analytic density.
double region_measure(const AnalyticDensity& density, const Region2D& region, std::size_t resolution);
/// pi({g > lambda}).
double region_measure(const AnalyticDensity& density, double lambda, std::size_t resolution);

/// max |estimate - g| over grid nodes inside the domain at distance more than
/// margin from its boundary. Throws NoInteriorNodes.
double sup_norm_error(const std::function<double(Vec2)>& estimate, const AnalyticDensity& density,
                      const Grid2D& grid, double margin);
double sup_norm_error(const DensityEstimate& estimate, const AnalyticDensity& density, const Grid2D& grid,
                      double margin);

/// #{i : X_i in region} / (N + 1).
double occupation_fraction(const Trajectory& trajectory, const std::function<bool(Vec2)>& region);
double occupation_fraction(const Trajectory& trajectory, const Region2D& region);
double occupation_fraction(const Trajectory& trajectory, const Domain& region);

/// Lattice nodes at spacing `pitch` over the domain box where g > lambda.
std::vector<Vec2> level_nodes(const AnalyticDensity& density, double lambda, double pitch);

/// Min and max of |grad g| over lattice nodes with lo <= g <= hi.
struct GradientRange {
  double min = 0.0;
  double max = 0.0;
  std::size_t nodes = 0;
};
GradientRange gradient_range(const AnalyticDensity& density, double lo, double hi, double pitch);

}  // namespace rbmd
