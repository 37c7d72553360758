#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include <nlohmann/json.hpp>

#include "rbmd/config.hpp"
#include "rbmd/density.hpp"
#include "rbmd/domain.hpp"
#include "rbmd/dynamics.hpp"
#include "rbmd/grid.hpp"

namespace rbmd {

/// Output files keyed by path relative to the bundle directory.
struct Bundle {
  std::map<std::string, std::string> files;

  void write(const std::filesystem::path& dir) const;
};

std::optional<Domain> config_domain(const RunConfig& config);
DriftFunction config_drift(const RunConfig& config);

/// Simulated or ingested track (after thinning by the configured stride),
/// with its manifest.
Trajectory make_trajectory(const RunConfig& config, nlohmann::json& manifest);

/// Configured h, or the bandwidth rule applied to n.
double config_bandwidth(const RunConfig& config, std::size_t n);

/// The domain box when a domain is set, else the sample box inflated by 3h.
Grid2D estimation_grid(const RunConfig& config, const Trajectory& trajectory, double h, std::size_t nx,
                       std::size_t ny);

/// Kernel estimate from the trajectory positions, masked by the polygonized
/// domain when the config asks for it.
DensityEstimate make_density(const RunConfig& config, const Trajectory& trajectory, double h);

/// Runs every stage and returns the artifact bundle. Errors are rethrown as
/// StageError naming the stage. Identical configs give identical bytes.
Bundle run_pipeline(const RunConfig& config);

}  // namespace rbmd
