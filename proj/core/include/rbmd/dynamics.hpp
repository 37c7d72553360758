#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rbmd/domain.hpp"
#include "rbmd/rng.hpp"
#include "rbmd/types.hpp"

namespace rbmd {

/// Scalar potential V with value and analytic gradient.
struct Potential {
  std::function<double(Vec2)> value;
  std::function<Vec2(Vec2)> gradient;
};

/// Drift field mu with a declared Lipschitz bound.
///
/// In the gradient case the drift derives from a potential V through
/// mu = -grad(V) / 2, and the stationary density of the reflected diffusion is
/// proportional to exp(-V) on the domain. The linear restoring drift
/// mu(x) = -k (x - c) has V(x) = k |x - c|^2.
class DriftFunction {
 public:
  DriftFunction(std::function<Vec2(Vec2)> mu, double lipschitz, std::optional<Potential> potential = {},
                nlohmann::json spec = {{"type", "custom"}});

  static DriftFunction zero();
  static DriftFunction linear(double k, Vec2 center = {0.0, 0.0});

  Vec2 operator()(Vec2 x) const { return mu_(x); }
  double lipschitz() const { return lipschitz_; }
  bool gradient_case() const { return potential_.has_value(); }
  const std::optional<Potential>& potential() const { return potential_; }

  /// {"type": "none"} or {"type": "linear", "k": k, "center": [x, y]}.
  const nlohmann::json& spec() const { return spec_; }
  static DriftFunction from_json(const nlohmann::json& j);

 private:
  std::function<Vec2(Vec2)> mu_;
  double lipschitz_;
  std::optional<Potential> potential_;
  nlohmann::json spec_;
};

enum class Provenance { Simulated, Ingested };

std::string to_string(Provenance p);

/// How many steps of the reflected scheme took each branch.
struct StepCounts {
  std::uint64_t accepted = 0;   // Y inside
  std::uint64_t reflected = 0;  // sym(Y) inside
  std::uint64_t rejected = 0;   // stayed in place

  friend bool operator==(const StepCounts&, const StepCounts&) = default;
};

/// Ordered positions X_0..X_N sampled every `delta` time units.
struct Trajectory {
  double delta = 0.0;
  std::vector<Vec2> positions;
  std::uint64_t seed = 0;
  Provenance provenance = Provenance::Simulated;
  /// Wall-clock times of ingested records (same length as positions), else empty.
  std::vector<double> timestamps;
  /// Per increment i (X_i -> X_{i+1}); true when the increment must not be
  /// used for drift estimation. Empty means none excluded.
  std::vector<bool> excluded;
  StepCounts steps;

  std::size_t n_steps() const { return positions.empty() ? 0 : positions.size() - 1; }
  bool increment_excluded(std::size_t i) const { return !excluded.empty() && excluded[i]; }
};

/// N(0, delta I) draw in the plane.
Vec2 gaussian_step(double delta, Rng& rng);

/// Bounding-box centre, moved onto the domain when it falls outside.
Vec2 default_start(const Domain& domain);

/// Reflected Euler scheme: Y = X + Z + delta mu(X) with Z ~ N(0, delta I).
/// X' = Y when Y is in the domain, else the mirror image 2 xi(Y) - Y when
/// that is in the domain and the projection is unambiguous, else X' = X.
/// The Gaussian stream is Rng::stream(seed, kSimulationStream).
Trajectory simulate_rbmd(const Domain& domain, const DriftFunction& drift, Vec2 x0, double delta,
                         std::uint64_t n_steps, std::uint64_t seed);

/// Keeps X_0, X_stride, X_{2 stride}, ...; delta is multiplied by stride.
Trajectory subsample(const Trajectory& trajectory, std::size_t stride);

}  // namespace rbmd
