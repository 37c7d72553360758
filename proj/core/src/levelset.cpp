#include "rbmd/levelset.hpp"

#include <algorithm>
#include <cmath>

#include "rbmd/contour.hpp"
#include "rbmd/errors.hpp"
#include "rbmd/geometry.hpp"

namespace rbmd {

void LevelQuery::validate() const {
  if (lambda.has_value() == tau.has_value()) throw ConfigError("level query needs exactly one of lambda and tau");
  if (lambda && !(*lambda >= 0.0)) throw ConfigError("level must be non-negative");
  if (tau && !(*tau > 0.0 && *tau < 1.0)) throw ConfigError("content must lie in (0, 1)");
  if (r && !(*r > 0.0)) throw ConfigError("hull radius must be positive");
  if (grid_nx < 2 || grid_ny < 2) throw ConfigError("extraction grid needs at least 2 x 2 nodes");
}

Region2D plugin_level_set(const ScalarField& field, double lambda) {
  if (!(lambda >= 0.0)) throw ConfigError("level must be non-negative");
  if (!std::any_of(field.values.begin(), field.values.end(), [&](double v) { return v > lambda; })) {
    throw EmptyLevelSet("no grid node exceeds the level");
  }
  Region2D r = contour_region(field, lambda);
  nlohmann::json meta = r.meta();
  meta["kind"] = "plugin_level_set";
  meta["lambda"] = lambda;
  meta.erase("level");
  return r.with_meta(std::move(meta));
}

Region2D plugin_level_set(const DensityEstimate& estimate, double lambda, const Grid2D& grid) {
  Region2D r = plugin_level_set(evaluate_on_grid(estimate, grid), lambda);
  nlohmann::json meta = r.meta();
  meta["h"] = estimate.h();
  meta["kernel"] = estimate.kernel().name();
  meta["n"] = estimate.n();
  return r.with_meta(std::move(meta));
}

std::vector<Vec2> level_sample(std::span<const Vec2> sample, std::span<const double> values, double lambda) {
  std::vector<Vec2> out;
  for (std::size_t i = 0; i < sample.size(); ++i) {
    if (values[i] > lambda) out.push_back(sample[i]);
  }
  return out;
}

std::vector<Vec2> level_sample(const DensityEstimate& estimate, std::span<const Vec2> sample, double lambda) {
  const std::vector<double> v = estimate.evaluate_many(sample);
  return level_sample(sample, v, lambda);
}

Region2D rconvex_level_estimator(std::span<const Vec2> sample, std::span<const double> values, double lambda,
                                 double r) {
  if (sample.empty()) throw EmptyLevelSample("empty sample");
  if (!(r > 0.0)) throw ConfigError("hull radius must be positive");
  const std::vector<Vec2> kept = level_sample(sample, values, lambda);
  if (kept.empty()) throw EmptyLevelSample("no sample point exceeds the level");
  Region2D hull = r_convex_hull(kept, r);
  nlohmann::json meta = hull.meta();
  meta["kind"] = "rconvex_level_set";
  meta["lambda"] = lambda;
  meta["generators"] = kept.size();
  return hull.with_meta(std::move(meta));
}

Region2D rconvex_level_estimator(const DensityEstimate& estimate, std::span<const Vec2> sample, double lambda,
                                 double r) {
  if (sample.empty()) throw EmptyLevelSample("empty sample");
  const std::vector<double> v = estimate.evaluate_many(sample);
  Region2D hull = rconvex_level_estimator(sample, v, lambda, r);
  nlohmann::json meta = hull.meta();
  meta["h"] = estimate.h();
  meta["kernel"] = estimate.kernel().name();
  meta["n"] = estimate.n();
  return hull.with_meta(std::move(meta));
}

double fixed_content_threshold(std::span<const double> values, double tau) {
  if (!(tau > 0.0 && tau < 1.0)) throw ConfigError("content must lie in (0, 1)");
  const std::size_t n = values.size();
  if (n < 2) throw DegenerateInput("fixed-content threshold needs at least two values");
  std::vector<double> v(values.begin(), values.end());
  std::sort(v.begin(), v.end());
  // At most floor((1 - tau) n) values may exceed the level.
  const auto allowed = static_cast<std::size_t>(std::floor((1.0 - tau) * static_cast<double>(n)));
  const std::size_t k = n - std::min(allowed, n - 1);  // 1-based order statistic
  return std::max(v[k - 1], 0.0);
}

double fixed_content_threshold(const DensityEstimate& estimate, std::span<const Vec2> sample, double tau) {
  const std::vector<double> v = estimate.evaluate_many(sample);
  return fixed_content_threshold(v, tau);
}

Region2D level_set_with_content(const DensityEstimate& estimate, std::span<const Vec2> sample, double tau,
                                const Grid2D& grid) {
  const double lambda = fixed_content_threshold(estimate, sample, tau);
  Region2D r = plugin_level_set(estimate, lambda, grid);
  nlohmann::json meta = r.meta();
  meta["tau"] = tau;
  return r.with_meta(std::move(meta));
}

}  // namespace rbmd
