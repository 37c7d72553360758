#pragma once

#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "rbmd/grid.hpp"
#include "rbmd/kernel.hpp"
#include "rbmd/region.hpp"
#include "rbmd/types.hpp"

namespace rbmd {

namespace detail {
class KdeEngine;
}

/// Kernel density estimate g(x) = (1/n) sum K((x - X_i) / h) / h^2, set to
/// zero outside an optional support mask. Masked estimates are not
/// renormalized.
///
/// Gaussian sums use a Hermite-expansion fast Gauss transform over boxes of
/// side sqrt(2) h (sparse boxes are summed directly) and ignore samples
/// beyond 8h; the truncation error is below 1e-12 relative. Epanechnikov sums
/// are exact over binned samples. Grid and pointwise evaluation share one
/// code path and agree bit for bit.
class DensityEstimate {
 public:
  DensityEstimate(std::vector<Vec2> samples, Kernel kernel, double h, std::optional<Region2D> mask = std::nullopt);

  double evaluate(Vec2 x) const;
  double operator()(Vec2 x) const { return evaluate(x); }
  /// Analytic gradient of the finite sum (zero outside the mask). Throws
  /// NonDifferentiablePoint for the epanechnikov kernel when x sits on the
  /// support circle of some sample.
  Vec2 gradient(Vec2 x) const;
  std::vector<double> evaluate_many(std::span<const Vec2> xs) const;

  DensityEstimate with_mask(std::optional<Region2D> mask) const;

  const std::vector<Vec2>& samples() const { return *samples_; }
  std::size_t n() const { return samples_->size(); }
  double h() const { return h_; }
  const Kernel& kernel() const { return kernel_; }
  const std::optional<Region2D>& mask() const { return mask_; }
  int dimension() const { return 2; }

 private:
  std::shared_ptr<const std::vector<Vec2>> samples_;
  Kernel kernel_;
  double h_;
  std::optional<Region2D> mask_;
  std::shared_ptr<const detail::KdeEngine> engine_;
};

double evaluate_density(const DensityEstimate& estimate, Vec2 x);
Vec2 gradient_density(const DensityEstimate& estimate, Vec2 x);

enum class BandwidthMode { RateOptimal, UniformConsistency };

BandwidthMode bandwidth_mode_from_string(const std::string& s);
std::string to_string(BandwidthMode m);

/// c_h n^(-1/(d+2)) for rate_optimal, c_h n^(-1/(d+1)) for uniform_consistency.
double default_bandwidth(std::size_t n, int d, BandwidthMode mode, double c_h = 1.0);

/// Density at every grid node (row-major).
ScalarField evaluate_on_grid(const DensityEstimate& estimate, const Grid2D& grid);

}  // namespace rbmd
