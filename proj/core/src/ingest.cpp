#include "rbmd/ingest.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <sstream>

#include "rbmd/errors.hpp"
#include "rbmd/io.hpp"

namespace rbmd {
namespace {

bool parse_int(std::string_view s, int& out) {
  if (s.empty()) return false;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), out);
  return ec == std::errc() && p == s.data() + s.size();
}

}  // namespace

std::optional<double> parse_timestamp(std::string_view t) {
  while (!t.empty() && (t.back() == ' ' || t.back() == '\r' || t.back() == 'Z')) t.remove_suffix(1);
  while (!t.empty() && t.front() == ' ') t.remove_prefix(1);
  if (t.empty()) return std::nullopt;
  if (t.size() < 19 || t[4] != '-' || t[7] != '-' || (t[10] != ' ' && t[10] != 'T') || t[13] != ':' ||
      t[16] != ':') {
    double v = 0.0;
    auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), v);
    if (ec == std::errc() && p == t.data() + t.size() && std::isfinite(v)) return v;
    return std::nullopt;
  }
  int Y, M, D, h, m, s;
  if (!parse_int(t.substr(0, 4), Y) || !parse_int(t.substr(5, 2), M) || !parse_int(t.substr(8, 2), D) ||
      !parse_int(t.substr(11, 2), h) || !parse_int(t.substr(14, 2), m) || !parse_int(t.substr(17, 2), s)) {
    return std::nullopt;
  }
  double frac = 0.0;
  if (t.size() > 19) {
    if (t[19] != '.') return std::nullopt;
    const std::string digits(t.substr(19));
    auto [p, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), frac);
    if (ec != std::errc() || p != digits.data() + digits.size()) return std::nullopt;
  }
  using namespace std::chrono;
  const year_month_day ymd{year{Y}, month{static_cast<unsigned>(M)}, day{static_cast<unsigned>(D)}};
  if (!ymd.ok() || h > 23 || m > 59 || s > 60 || h < 0 || m < 0 || s < 0) return std::nullopt;
  const auto days = sys_days(ymd).time_since_epoch().count();
  return static_cast<double>(days) * 86400.0 + h * 3600.0 + m * 60.0 + s + frac;
}

nlohmann::json IngestedTrack::manifest() const {
  return {{"records", records.size()},
          {"affine", map.to_json()},
          {"median_gap_seconds", median_gap_seconds},
          {"gap_factor", gap_factor},
          {"long_gaps", long_gaps},
          {"delta", trajectory.delta}};
}

IngestedTrack ingest_tracking_csv(const std::filesystem::path& path, const ColumnMap& columns,
                                  Normalization normalization, const AffineMap& given, double gap_factor,
                                  double time_unit_seconds) {
  std::istringstream in(io::read_text(path));
  std::string line;
  if (!std::getline(in, line)) throw ParseError(1, "empty tracking file");
  const auto header = io::split_csv_line(line);
  auto column = [&](const std::string& name) {
    auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) throw ParseError(1, "missing column '" + name + "'");
    return static_cast<std::size_t>(it - header.begin());
  };
  const std::size_t ct = column(columns.timestamp), cx = column(columns.x), cy = column(columns.y);

  IngestedTrack out;
  out.gap_factor = gap_factor;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto f = io::split_csv_line(line);
    if (f.size() != header.size()) throw ParseError(lineno, "expected " + std::to_string(header.size()) + " fields");
    const auto ts = parse_timestamp(f[ct]);
    if (!ts) throw ParseError(lineno, "bad timestamp '" + f[ct] + "'");
    TrackRecord r;
    r.timestamp = *ts;
    r.longitude = io::parse_double(f[cx], lineno);
    r.latitude = io::parse_double(f[cy], lineno);
    if (!out.records.empty() && !(r.timestamp > out.records.back().timestamp)) {
      throw NonMonotoneTimestamps("line " + std::to_string(lineno) + ": timestamps must be strictly increasing");
    }
    out.records.push_back(r);
  }
  if (out.records.size() < 2) throw ParseError(lineno, "a track needs at least two records");

  if (normalization == Normalization::Given) {
    out.map = given;
  } else {
    BBox box;
    for (const auto& r : out.records) box.expand({r.longitude, r.latitude});
    const double range = std::max(box.width(), box.height());
    out.map = AffineMap{range > 0.0 ? 1.0 / range : 1.0, box.lo};
  }

  std::vector<double> gaps;
  for (std::size_t i = 0; i + 1 < out.records.size(); ++i) {
    gaps.push_back(out.records[i + 1].timestamp - out.records[i].timestamp);
  }
  std::vector<double> sorted = gaps;
  std::sort(sorted.begin(), sorted.end());
  const std::size_t m = sorted.size();
  out.median_gap_seconds = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);

  Trajectory& t = out.trajectory;
  t.provenance = Provenance::Ingested;
  t.delta = out.median_gap_seconds / time_unit_seconds;
  t.excluded.assign(gaps.size(), false);
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    if (gaps[i] > gap_factor * out.median_gap_seconds) {
      t.excluded[i] = true;
      out.long_gaps.push_back(i);
    }
  }
  const double t0 = out.records.front().timestamp;
  for (auto& r : out.records) {
    r.normalized = out.map.apply({r.longitude, r.latitude});
    t.positions.push_back(r.normalized);
    t.timestamps.push_back((r.timestamp - t0) / time_unit_seconds);
  }
  return out;
}

}  // namespace rbmd
