#pragma once

#include <optional>
#include <span>
#include <vector>

#include "rbmd/density.hpp"
#include "rbmd/grid.hpp"
#include "rbmd/region.hpp"

namespace rbmd {

/// A level query: exactly one of lambda / tau, plus the hull radius and the
/// extraction grid.
struct LevelQuery {
  std::optional<double> lambda;
  std::optional<double> tau;
  std::optional<double> r;
  std::size_t grid_nx = 200;
  std::size_t grid_ny = 200;

  /// Throws ConfigError when the query is malformed.
  void validate() const;
};

/// {g_n > lambda} by marching squares on the grid field. Throws EmptyLevelSet
/// when no node exceeds lambda.
Region2D plugin_level_set(const DensityEstimate& estimate, double lambda, const Grid2D& grid);
Region2D plugin_level_set(const ScalarField& field, double lambda);

/// Sample points whose estimated density exceeds lambda.
std::vector<Vec2> level_sample(const DensityEstimate& estimate, std::span<const Vec2> sample, double lambda);
/// Same, with precomputed values g_n(X_i).
std::vector<Vec2> level_sample(std::span<const Vec2> sample, std::span<const double> values, double lambda);

/// A_n(lambda): r-convex hull of {X_i : g_n(X_i) > lambda}. Throws
/// EmptyLevelSample when no sample point qualifies.
Region2D rconvex_level_estimator(const DensityEstimate& estimate, std::span<const Vec2> sample, double lambda,
                                 double r);
Region2D rconvex_level_estimator(std::span<const Vec2> sample, std::span<const double> values, double lambda,
                                 double r);

/// Empirical fixed-content level: the smallest sample value lambda with
/// #{v_i > lambda} <= (1 - tau) n, i.e. the order statistic v_(ceil(tau n)).
double fixed_content_threshold(const DensityEstimate& estimate, std::span<const Vec2> sample, double tau);
double fixed_content_threshold(std::span<const double> values, double tau);

/// plugin_level_set at the fixed-content level.
Region2D level_set_with_content(const DensityEstimate& estimate, std::span<const Vec2> sample, double tau,
                                const Grid2D& grid);

}  // namespace rbmd
