#include "rbmd/io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "rbmd/errors.hpp"

namespace rbmd::io {

std::string format_double(double v) {
  char buf[64];
  auto [end, ec] = std::to_chars(buf, buf + sizeof buf, v);
  if (ec != std::errc()) throw std::runtime_error("number formatting failed");
  return std::string(buf, end);
}

double parse_double(std::string_view field, std::size_t line) {
  while (!field.empty() && (field.front() == ' ' || field.front() == '\t')) field.remove_prefix(1);
  while (!field.empty() && (field.back() == ' ' || field.back() == '\t' || field.back() == '\r')) field.remove_suffix(1);
  if (!field.empty() && field.front() == '+') field.remove_prefix(1);
  double v = 0.0;
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), v);
  if (ec != std::errc() || ptr != field.data() + field.size() || field.empty()) {
    throw ParseError(line, "not a number: '" + std::string(field) + "'");
  }
  return v;
}

std::vector<std::string> split_csv_line(std::string_view line) {
  if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t comma = line.find(',', start);
    std::string f(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start));
    if (f.size() >= 2 && f.front() == '"' && f.back() == '"') f = f.substr(1, f.size() - 2);
    out.push_back(std::move(f));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return out;
}

std::string dump_json(const nlohmann::json& j) { return j.dump(2) + "\n"; }

std::string read_text(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError(0, "cannot open " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

nlohmann::json read_json(const std::filesystem::path& path) {
  try {
    return nlohmann::json::parse(read_text(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(0, path.string() + ": " + e.what());
  }
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  out << text;
  if (!out) throw std::runtime_error("write failed: " + path.string());
}

std::string trajectory_csv(const Trajectory& t) {
  std::string s = "i,t,x,y\n";
  s.reserve(t.positions.size() * 48);
  for (std::size_t i = 0; i < t.positions.size(); ++i) {
    const double time = t.timestamps.empty() ? static_cast<double>(i) * t.delta : t.timestamps[i];
    s += std::to_string(i);
    s += ',';
    s += format_double(time);
    s += ',';
    s += format_double(t.positions[i].x);
    s += ',';
    s += format_double(t.positions[i].y);
    s += '\n';
  }
  return s;
}

nlohmann::json trajectory_manifest(const Trajectory& t, const nlohmann::json& domain, const nlohmann::json& drift) {
  nlohmann::json excluded = nlohmann::json::array();
  for (std::size_t i = 0; i < t.excluded.size(); ++i) {
    if (t.excluded[i]) excluded.push_back(i);
  }
  return {{"seed", t.seed},
          {"delta", t.delta},
          {"n_steps", t.n_steps()},
          {"provenance", to_string(t.provenance)},
          {"domain", domain},
          {"drift", drift},
          {"steps", {{"accepted", t.steps.accepted}, {"reflected", t.steps.reflected}, {"rejected", t.steps.rejected}}},
          {"excluded_increments", excluded}};
}

Trajectory read_trajectory(const std::filesystem::path& csv) {
  std::istringstream in(read_text(csv));
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line)) throw ParseError(1, "empty trajectory file");
  const auto header = split_csv_line(line);
  if (header != std::vector<std::string>{"i", "t", "x", "y"}) throw ParseError(1, "expected header i,t,x,y");
  Trajectory t;
  std::vector<double> times;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv_line(line);
    if (f.size() != 4) throw ParseError(lineno, "expected 4 fields");
    times.push_back(parse_double(f[1], lineno));
    t.positions.push_back({parse_double(f[2], lineno), parse_double(f[3], lineno)});
  }
  std::filesystem::path sidecar = csv;
  sidecar.replace_extension(".json");
  if (std::filesystem::exists(sidecar)) {
    const auto m = read_json(sidecar);
    t.delta = m.value("delta", 0.0);
    t.seed = m.value("seed", std::uint64_t{0});
    if (m.value("provenance", std::string("simulated")) == "ingested") {
      t.provenance = Provenance::Ingested;
      t.timestamps = times;
    }
    if (m.contains("excluded_increments") && !m.at("excluded_increments").empty()) {
      t.excluded.assign(t.n_steps(), false);
      for (const auto& i : m.at("excluded_increments")) {
        const auto k = i.get<std::size_t>();
        if (k < t.excluded.size()) t.excluded[k] = true;
      }
    }
  } else if (times.size() >= 2) {
    t.delta = times[1] - times[0];
  }
  return t;
}

std::string points_csv(std::span<const Vec2> points) {
  std::string s = "x,y\n";
  for (Vec2 p : points) s += format_double(p.x) + "," + format_double(p.y) + "\n";
  return s;
}

std::vector<Vec2> read_points(const std::filesystem::path& csv) {
  std::istringstream in(read_text(csv));
  std::string line;
  std::size_t lineno = 1;
  if (!std::getline(in, line)) throw ParseError(1, "empty point file");
  if (split_csv_line(line) != std::vector<std::string>{"x", "y"}) throw ParseError(1, "expected header x,y");
  std::vector<Vec2> out;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty() || line == "\r") continue;
    const auto f = split_csv_line(line);
    if (f.size() != 2) throw ParseError(lineno, "expected 2 fields");
    out.push_back({parse_double(f[0], lineno), parse_double(f[1], lineno)});
  }
  return out;
}

std::string field_csv(const ScalarField& field) {
  std::string s = "x,y,ghat\n";
  for (std::size_t k = 0; k < field.grid.size(); ++k) {
    const Vec2 p = field.grid.node(k);
    s += format_double(p.x) + "," + format_double(p.y) + "," + format_double(field.values[k]) + "\n";
  }
  return s;
}

std::string drift_csv(const DriftField& field) {
  std::string s = "x,y,ux,uy,count,valid\n";
  for (std::size_t k = 0; k < field.grid.size(); ++k) {
    const Vec2 p = field.grid.node(k);
    s += format_double(p.x) + "," + format_double(p.y) + ",";
    if (field.values[k]) s += format_double(field.values[k]->x) + "," + format_double(field.values[k]->y);
    else s += ",";
    s += "," + std::to_string(field.counts[k]) + "," + (field.values[k] ? "1" : "0") + "\n";
  }
  return s;
}

}  // namespace rbmd::io
