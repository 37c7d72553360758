#pragma once

#include <filesystem>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rbmd/drift.hpp"
#include "rbmd/dynamics.hpp"
#include "rbmd/grid.hpp"
#include "rbmd/types.hpp"

namespace rbmd::io {

/// Shortest decimal text that parses back to the same double.
std::string format_double(double v);
/// Parses a full field as a double; throws ParseError with the given line.
double parse_double(std::string_view field, std::size_t line);

/// Splits one CSV line on commas (no quoting support beyond stripping
/// surrounding double quotes).
std::vector<std::string> split_csv_line(std::string_view line);

/// Pretty-printed JSON with a trailing newline.
std::string dump_json(const nlohmann::json& j);
nlohmann::json read_json(const std::filesystem::path& path);

std::string read_text(const std::filesystem::path& path);
/// Writes the file, creating parent directories.
void write_text(const std::filesystem::path& path, const std::string& text);

/// "i,t,x,y"; t = i * delta for simulated runs, record time for ingested ones.
std::string trajectory_csv(const Trajectory& t);
nlohmann::json trajectory_manifest(const Trajectory& t, const nlohmann::json& domain, const nlohmann::json& drift);
/// Reads a trajectory CSV; delta, seed and excluded increments come from the
/// sidecar manifest "<stem>.json" when it exists, else delta = t_1 - t_0.
Trajectory read_trajectory(const std::filesystem::path& csv);

/// "x,y"
std::string points_csv(std::span<const Vec2> points);
std::vector<Vec2> read_points(const std::filesystem::path& csv);

/// "x,y,ghat"
std::string field_csv(const ScalarField& field);

/// "x,y,ux,uy,count,valid"; invalid nodes leave ux and uy empty.
std::string drift_csv(const DriftField& field);

}  // namespace rbmd::io
