#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rbmd/types.hpp"

namespace rbmd {

struct SimulationSpec {
  double delta = 0.003;
  std::uint64_t n_steps = 0;
  std::optional<Vec2> x0;
  std::size_t stride = 1;

  friend bool operator==(const SimulationSpec&, const SimulationSpec&) = default;
};

struct InputSpec {
  std::string path;
  std::string timestamp_column = "timestamp";
  std::string x_column = "location-long";
  std::string y_column = "location-lat";
  /// "fit" (uniform scale onto [0, 1]) or "given" (scale and offset below).
  std::string normalization = "fit";
  double scale = 1.0;
  Vec2 offset{0.0, 0.0};
  double gap_factor = 5.0;
  double time_unit_seconds = 3600.0;

  friend bool operator==(const InputSpec&, const InputSpec&) = default;
};

struct DensitySpec {
  std::string kernel = "gaussian";
  std::optional<double> h;
  std::string bandwidth_mode = "rate_optimal";
  double c_h = 1.0;
  std::size_t grid_nx = 200;
  std::size_t grid_ny = 200;
  /// Zero the estimate outside the (polygonized) domain.
  bool mask = true;

  friend bool operator==(const DensitySpec&, const DensitySpec&) = default;
};

struct LevelSpec {
  std::vector<double> lambdas;
  std::vector<double> taus;
  std::optional<double> r;
  std::size_t grid_nx = 200;
  std::size_t grid_ny = 200;

  friend bool operator==(const LevelSpec&, const LevelSpec&) = default;
};

struct DriftEstimationSpec {
  bool enabled = true;
  std::optional<double> h_loc;
  std::size_t min_count = 20;
  std::size_t grid_nx = 15;
  std::size_t grid_ny = 15;
  std::optional<double> plugin_h;
  double floor_ratio = 1e-3;

  friend bool operator==(const DriftEstimationSpec&, const DriftEstimationSpec&) = default;
};

struct Ball {
  Vec2 center;
  double radius = 0.0;

  friend bool operator==(const Ball&, const Ball&) = default;
};

struct OracleSpec {
  std::size_t resolution = 2000;
  double margin = 0.4;
  double pitch = 0.01;
  std::vector<Ball> occupation;

  friend bool operator==(const OracleSpec&, const OracleSpec&) = default;
};

/// Complete description of one run. Parsing rejects unknown keys; to_json
/// writes every field, so parse(to_json(c)) == c.
struct RunConfig {
  nlohmann::json domain;  // null for ingested tracks without a domain
  nlohmann::json drift = {{"type", "none"}};
  std::uint64_t seed = 0;
  std::optional<SimulationSpec> simulation;
  std::optional<InputSpec> input;
  DensitySpec density;
  LevelSpec levels;
  DriftEstimationSpec drift_estimation;
  std::optional<OracleSpec> oracle;
  std::string output = "out";

  static RunConfig from_json(const nlohmann::json& j);
  nlohmann::json to_json() const;

  friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

RunConfig load_config(const std::string& path);

}  // namespace rbmd
