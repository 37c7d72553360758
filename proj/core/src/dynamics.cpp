#include "rbmd/dynamics.hpp"

#include <cmath>

#include "rbmd/errors.hpp"

namespace rbmd {

DriftFunction::DriftFunction(std::function<Vec2(Vec2)> mu, double lipschitz, std::optional<Potential> potential,
                             nlohmann::json spec)
    : mu_(std::move(mu)), lipschitz_(lipschitz), potential_(std::move(potential)), spec_(std::move(spec)) {}

DriftFunction DriftFunction::zero() {
  Potential v{[](Vec2) { return 0.0; }, [](Vec2) { return Vec2{0.0, 0.0}; }};
  return DriftFunction([](Vec2) { return Vec2{0.0, 0.0}; }, 0.0, v, {{"type", "none"}});
}

DriftFunction DriftFunction::linear(double k, Vec2 c) {
  Potential v{[k, c](Vec2 x) { return k * norm2(x - c); }, [k, c](Vec2 x) { return 2.0 * k * (x - c); }};
  return DriftFunction([k, c](Vec2 x) { return -k * (x - c); }, std::fabs(k), v,
                       {{"type", "linear"}, {"k", k}, {"center", {c.x, c.y}}});
}

DriftFunction DriftFunction::from_json(const nlohmann::json& j) {
  if (!j.is_object() || !j.contains("type")) throw ConfigError("drift spec needs a \"type\"");
  const std::string type = j.at("type").get<std::string>();
  if (type == "none") {
    if (j.size() != 1) throw ConfigError("drift \"none\" takes no parameters");
    return zero();
  }
  if (type == "linear") {
    for (const auto& [key, _] : j.items()) {
      if (key != "type" && key != "k" && key != "center") throw ConfigError("unknown drift key: " + key);
    }
    Vec2 c{0.0, 0.0};
    if (j.contains("center")) c = {j.at("center").at(0).get<double>(), j.at("center").at(1).get<double>()};
    return linear(j.value("k", 1.0), c);
  }
  throw ConfigError("unknown drift type: " + type);
}

std::string to_string(Provenance p) { return p == Provenance::Simulated ? "simulated" : "ingested"; }

Vec2 gaussian_step(double delta, Rng& rng) { return std::sqrt(delta) * rng.normal_pair(); }

Vec2 default_start(const Domain& domain) {
  const Vec2 c = domain.bbox().center();
  if (domain.contains(c)) return c;
  const Projection p = domain.project(c);
  const Vec2 x = p.point + 1e-6 * domain.bbox().diagonal() * domain.inner_normal(p.point);
  if (!domain.contains(x)) throw StartOutsideDomain("no default start point inside the domain");
  return x;
}

Trajectory simulate_rbmd(const Domain& domain, const DriftFunction& drift, Vec2 x0, double delta,
                         std::uint64_t n_steps, std::uint64_t seed) {
  if (!(delta > 0.0)) throw ConfigError("time step must be positive");
  if (!is_finite(x0) || !domain.contains(x0)) throw StartOutsideDomain("start point is outside the domain");
  Trajectory t;
  t.delta = delta;
  t.seed = seed;
  t.provenance = Provenance::Simulated;
  t.positions.reserve(static_cast<std::size_t>(n_steps) + 1);
  t.positions.push_back(x0);

  Rng rng = Rng::stream(seed, kSimulationStream);
  Vec2 x = x0;
  for (std::uint64_t i = 0; i < n_steps; ++i) {
    const Vec2 mu = drift(x);
    if (!is_finite(mu)) throw NonFiniteDrift("drift is not finite at step " + std::to_string(i));
    const Vec2 y = x + gaussian_step(delta, rng) + delta * mu;
    if (domain.contains(y)) {
      x = y;
      ++t.steps.accepted;
    } else if (auto s = try_symmetric_point(domain, y); s && domain.contains(*s)) {
      x = *s;
      ++t.steps.reflected;
    } else {
      ++t.steps.rejected;
    }
    t.positions.push_back(x);
  }
  return t;
}

Trajectory subsample(const Trajectory& trajectory, std::size_t stride) {
  if (stride == 0) throw ConfigError("subsample stride must be at least 1");
  Trajectory out;
  out.delta = trajectory.delta * static_cast<double>(stride);
  out.seed = trajectory.seed;
  out.provenance = trajectory.provenance;
  out.steps = trajectory.steps;
  const std::size_t n = trajectory.positions.size();
  for (std::size_t i = 0; i < n; i += stride) {
    out.positions.push_back(trajectory.positions[i]);
    if (!trajectory.timestamps.empty()) out.timestamps.push_back(trajectory.timestamps[i]);
    if (!trajectory.excluded.empty() && i + stride < n) {
      bool skip = false;
      for (std::size_t k = i; k < i + stride; ++k) skip = skip || trajectory.excluded[k];
      out.excluded.push_back(skip);
    }
  }
  return out;
}

}  // namespace rbmd
