#include "rbmd/drift.hpp"

#include <algorithm>
#include <cmath>

#include "rbmd/errors.hpp"
#include "rbmd/spatial_index.hpp"

namespace rbmd {

std::size_t DriftField::valid_count() const {
  std::size_t c = 0;
  for (const auto& v : values) c += v.has_value();
  return c;
}

double DriftField::valid_fraction() const {
  std::size_t total = 0;
  for (bool e : evaluated) total += e;
  return total == 0 ? 0.0 : static_cast<double>(valid_count()) / static_cast<double>(total);
}

std::optional<Vec2> local_increment_drift(const Trajectory& trajectory, Vec2 x, double h_loc, std::size_t& count) {
  if (!(h_loc > 0.0)) throw ConfigError("drift ball radius must be positive");
  if (!(trajectory.delta > 0.0)) throw DegenerateInput("trajectory time step must be positive");
  const auto& X = trajectory.positions;
  const double r2 = h_loc * h_loc;
  Vec2 sum{0.0, 0.0};
  count = 0;
  for (std::size_t i = 0; i + 1 < X.size(); ++i) {
    if (norm2(X[i] - x) > r2 || trajectory.increment_excluded(i)) continue;
    sum += X[i + 1] - X[i];
    ++count;
  }
  if (count == 0) return std::nullopt;
  return sum / (trajectory.delta * static_cast<double>(count));
}

Vec2 local_increment_drift(const Trajectory& trajectory, Vec2 x, double h_loc) {
  if (trajectory.positions.size() < 2) throw NoLocalSamples("trajectory has no increments");
  std::size_t count = 0;
  auto v = local_increment_drift(trajectory, x, h_loc, count);
  if (!v) throw NoLocalSamples("no increment starts within the ball");
  return *v;
}

Vec2 plugin_gradient_drift(const DensityEstimate& estimate, Vec2 x, double floor) {
  const double g = estimate.evaluate(x);
  if (!(g >= floor) || g <= 0.0) throw DensityBelowFloor("density below the plug-in floor");
  return (0.5 / g) * estimate.gradient(x);
}

namespace {

DriftField empty_field(const Grid2D& grid, std::size_t min_count, const Domain* domain) {
  DriftField f;
  f.grid = grid;
  f.min_count = min_count;
  f.values.assign(grid.size(), std::nullopt);
  f.counts.assign(grid.size(), 0);
  f.evaluated.assign(grid.size(), true);
  if (domain) {
    for (std::size_t k = 0; k < grid.size(); ++k) f.evaluated[k] = domain->contains(grid.node(k));
  }
  return f;
}

}  // namespace

DriftField drift_field_on_grid(const Trajectory& trajectory, const Grid2D& grid, double h_loc,
                               std::size_t min_count, const Domain* domain) {
  if (!(h_loc > 0.0)) throw ConfigError("drift ball radius must be positive");
  DriftField f = empty_field(grid, min_count, domain);
  const auto& X = trajectory.positions;
  if (X.size() < 2 || !(trajectory.delta > 0.0)) return f;

  // Bucket increment left endpoints so each node scans only nearby ones.
  std::vector<Vec2> left(X.begin(), X.end() - 1);
  const BBox box = bounding_box(left);
  UniformGrid bins(box, std::max(h_loc, box.diagonal() / 2048.0));
  std::vector<std::size_t> start(bins.nx() * bins.ny() + 1, 0);
  for (Vec2 p : left) ++start[bins.flat(bins.col(p.x), bins.row(p.y)) + 1];
  for (std::size_t k = 1; k < start.size(); ++k) start[k] += start[k - 1];
  std::vector<std::size_t> items(left.size());
  std::vector<std::size_t> fill(start.begin(), start.end() - 1);
  for (std::size_t i = 0; i < left.size(); ++i) items[fill[bins.flat(bins.col(left[i].x), bins.row(left[i].y))]++] = i;

  const double r2 = h_loc * h_loc;
  const auto n = static_cast<std::int64_t>(grid.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t kk = 0; kk < n; ++kk) {
    const auto k = static_cast<std::size_t>(kk);
    if (!f.evaluated[k]) continue;
    const Vec2 x = grid.node(k);
    const std::int64_t ci = bins.col(x.x), cj = bins.row(x.y);
    // Visit candidates in trajectory order so sums do not depend on bucketing.
    std::vector<std::size_t> hits;
    for (std::int64_t j = cj - 1; j <= cj + 1; ++j) {
      for (std::int64_t i = ci - 1; i <= ci + 1; ++i) {
        if (!bins.in_range(i, j)) continue;
        const std::size_t c = bins.flat(i, j);
        for (std::size_t r = start[c]; r < start[c + 1]; ++r) {
          const std::size_t idx = items[r];
          if (norm2(left[idx] - x) <= r2 && !trajectory.increment_excluded(idx)) hits.push_back(idx);
        }
      }
    }
    std::sort(hits.begin(), hits.end());
    Vec2 sum{0.0, 0.0};
    for (std::size_t idx : hits) sum += X[idx + 1] - X[idx];
    f.counts[k] = hits.size();
    if (!hits.empty() && hits.size() >= min_count) {
      f.values[k] = sum / (trajectory.delta * static_cast<double>(hits.size()));
    }
  }
  return f;
}

DriftField plugin_drift_field(const DensityEstimate& estimate, const Grid2D& grid, double floor,
                              const Domain* domain) {
  DriftField f = empty_field(grid, 0, domain);
  const double r2 = estimate.h() * estimate.h();
  for (std::size_t k = 0; k < grid.size(); ++k) {
    if (!f.evaluated[k]) continue;
    const Vec2 x = grid.node(k);
    std::size_t c = 0;
    for (Vec2 p : estimate.samples()) c += norm2(p - x) <= r2;
    f.counts[k] = c;
    try {
      f.values[k] = plugin_gradient_drift(estimate, x, floor);
    } catch (const DensityBelowFloor&) {
    } catch (const NonDifferentiablePoint&) {
    }
  }
  return f;
}

}  // namespace rbmd
