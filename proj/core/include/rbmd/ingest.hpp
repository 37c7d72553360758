#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "rbmd/dynamics.hpp"
#include "rbmd/types.hpp"

namespace rbmd {

/// x' = scale * (x - offset), applied to (longitude, latitude).
struct AffineMap {
  double scale = 1.0;
  Vec2 offset{0.0, 0.0};

  Vec2 apply(Vec2 raw) const { return scale * (raw - offset); }
  Vec2 invert(Vec2 p) const { return p / scale + offset; }
  nlohmann::json to_json() const { return {{"scale", scale}, {"offset", {offset.x, offset.y}}}; }
};

struct ColumnMap {
  std::string timestamp = "timestamp";
  std::string x = "location-long";
  std::string y = "location-lat";
};

enum class Normalization { Fit, Given };

struct TrackRecord {
  double timestamp = 0.0;  // seconds since the Unix epoch
  double longitude = 0.0;
  double latitude = 0.0;
  Vec2 normalized;
};

struct IngestedTrack {
  Trajectory trajectory;
  std::vector<TrackRecord> records;
  AffineMap map;
  double median_gap_seconds = 0.0;
  double gap_factor = 5.0;
  /// Increments i (record i -> i+1) longer than gap_factor * median gap.
  std::vector<std::size_t> long_gaps;

  nlohmann::json manifest() const;
};

/// Seconds since the Unix epoch from "YYYY-MM-DD HH:MM:SS[.fff]" (a 'T'
/// separator and trailing 'Z' are accepted) or from a plain number.
/// Returns nullopt on malformed input.
std::optional<double> parse_timestamp(std::string_view text);

/// Reads a Movebank-style CSV. Fit normalization scales both axes by the
/// larger coordinate range so positions fall in [0, 1]; Given uses `given`.
/// Trajectory time is measured in units of time_unit_seconds, and delta is
/// the median record gap in those units. Throws ParseError (with the line
/// number) and NonMonotoneTimestamps.
IngestedTrack ingest_tracking_csv(const std::filesystem::path& path, const ColumnMap& columns,
                                  Normalization normalization, const AffineMap& given = {},
                                  double gap_factor = 5.0, double time_unit_seconds = 3600.0);

}  // namespace rbmd
