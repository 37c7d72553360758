#include "rbmd/config.hpp"

#include <algorithm>
#include <filesystem>
#include <initializer_list>

#include "rbmd/domain.hpp"
#include "rbmd/dynamics.hpp"
#include "rbmd/errors.hpp"
#include "rbmd/io.hpp"

namespace rbmd {
namespace {

using nlohmann::json;

void check_keys(const json& j, std::initializer_list<const char*> allowed, const std::string& where) {
  if (!j.is_object()) throw ConfigError(where + " must be an object");
  for (const auto& [key, _] : j.items()) {
    if (std::none_of(allowed.begin(), allowed.end(), [&](const char* a) { return key == a; })) {
      throw ConfigError("unknown key in " + where + ": " + key);
    }
  }
}

template <class T>
void get(const json& j, const char* key, T& out) {
  if (j.contains(key)) out = j.at(key).get<T>();
}

template <class T>
void get(const json& j, const char* key, std::optional<T>& out) {
  if (j.contains(key) && !j.at(key).is_null()) out = j.at(key).get<T>();
}

Vec2 vec(const json& j) {
  if (!j.is_array() || j.size() != 2) throw ConfigError("expected a [x, y] pair");
  return {j.at(0).get<double>(), j.at(1).get<double>()};
}

json vec(Vec2 v) { return json::array({v.x, v.y}); }

void grid_shape(const json& j, std::size_t& nx, std::size_t& ny) {
  if (!j.contains("grid")) return;
  const json& g = j.at("grid");
  if (!g.is_array() || g.size() != 2) throw ConfigError("grid must be [nx, ny]");
  nx = g.at(0).get<std::size_t>();
  ny = g.at(1).get<std::size_t>();
  if (nx == 0 || ny == 0) throw ConfigError("grid dimensions must be positive");
}

}  // namespace

RunConfig RunConfig::from_json(const json& j) {
  try {
    check_keys(j, {"domain", "drift", "seed", "simulation", "input", "density", "levels", "drift_estimation",
                   "oracle", "output"},
               "config");
    RunConfig c;
    if (j.contains("domain") && !j.at("domain").is_null()) c.domain = Domain::from_json(j.at("domain")).to_json();
    if (j.contains("drift")) c.drift = DriftFunction::from_json(j.at("drift")).spec();
    get(j, "seed", c.seed);
    get(j, "output", c.output);

    if (j.contains("simulation") && !j.at("simulation").is_null()) {
      const json& s = j.at("simulation");
      check_keys(s, {"delta", "n_steps", "x0", "stride"}, "simulation");
      SimulationSpec sim;
      get(s, "delta", sim.delta);
      get(s, "n_steps", sim.n_steps);
      get(s, "stride", sim.stride);
      if (s.contains("x0") && !s.at("x0").is_null()) sim.x0 = vec(s.at("x0"));
      if (!(sim.delta > 0.0)) throw ConfigError("simulation.delta must be positive");
      if (sim.stride == 0) throw ConfigError("simulation.stride must be at least 1");
      c.simulation = sim;
    }
    if (j.contains("input") && !j.at("input").is_null()) {
      const json& s = j.at("input");
      check_keys(s, {"path", "columns", "normalization", "scale", "offset", "gap_factor", "time_unit_seconds"},
                 "input");
      InputSpec in;
      get(s, "path", in.path);
      if (s.contains("columns")) {
        const json& cols = s.at("columns");
        check_keys(cols, {"timestamp", "x", "y"}, "input.columns");
        get(cols, "timestamp", in.timestamp_column);
        get(cols, "x", in.x_column);
        get(cols, "y", in.y_column);
      }
      get(s, "normalization", in.normalization);
      get(s, "scale", in.scale);
      if (s.contains("offset")) in.offset = vec(s.at("offset"));
      get(s, "gap_factor", in.gap_factor);
      get(s, "time_unit_seconds", in.time_unit_seconds);
      if (in.normalization != "fit" && in.normalization != "given") {
        throw ConfigError("input.normalization must be \"fit\" or \"given\"");
      }
      if (!(in.scale > 0.0)) throw ConfigError("input.scale must be positive");
      if (!(in.time_unit_seconds > 0.0)) throw ConfigError("input.time_unit_seconds must be positive");
      c.input = in;
    }
    if (c.simulation && c.input) throw ConfigError("config takes either simulation or input, not both");
    if (!c.simulation && !c.input) throw ConfigError("config needs a simulation or an input section");
    if (c.simulation && c.domain.is_null()) throw ConfigError("simulation needs a domain");

    if (j.contains("density")) {
      const json& s = j.at("density");
      check_keys(s, {"kernel", "h", "bandwidth", "grid", "mask"}, "density");
      get(s, "kernel", c.density.kernel);
      get(s, "h", c.density.h);
      if (s.contains("bandwidth")) {
        check_keys(s.at("bandwidth"), {"mode", "c_h"}, "density.bandwidth");
        get(s.at("bandwidth"), "mode", c.density.bandwidth_mode);
        get(s.at("bandwidth"), "c_h", c.density.c_h);
      }
      grid_shape(s, c.density.grid_nx, c.density.grid_ny);
      get(s, "mask", c.density.mask);
      if (c.density.kernel != "gaussian" && c.density.kernel != "epanechnikov") {
        throw ConfigError("unknown kernel: " + c.density.kernel);
      }
      if (c.density.bandwidth_mode != "rate_optimal" && c.density.bandwidth_mode != "uniform_consistency") {
        throw ConfigError("unknown bandwidth mode: " + c.density.bandwidth_mode);
      }
      if (c.density.h && !(*c.density.h > 0.0)) throw ConfigError("density.h must be positive");
    }
    if (j.contains("levels")) {
      const json& s = j.at("levels");
      check_keys(s, {"lambda", "tau", "r", "grid"}, "levels");
      get(s, "lambda", c.levels.lambdas);
      get(s, "tau", c.levels.taus);
      get(s, "r", c.levels.r);
      grid_shape(s, c.levels.grid_nx, c.levels.grid_ny);
      for (double l : c.levels.lambdas) {
        if (!(l >= 0.0)) throw ConfigError("levels.lambda values must be non-negative");
      }
      for (double t : c.levels.taus) {
        if (!(t > 0.0 && t < 1.0)) throw ConfigError("levels.tau values must lie in (0, 1)");
      }
      if (c.levels.r && !(*c.levels.r > 0.0)) throw ConfigError("levels.r must be positive");
    }
    if (j.contains("drift_estimation")) {
      const json& s = j.at("drift_estimation");
      check_keys(s, {"enabled", "h_loc", "min_count", "grid", "plugin_h", "floor_ratio"}, "drift_estimation");
      auto& d = c.drift_estimation;
      get(s, "enabled", d.enabled);
      get(s, "h_loc", d.h_loc);
      get(s, "min_count", d.min_count);
      grid_shape(s, d.grid_nx, d.grid_ny);
      get(s, "plugin_h", d.plugin_h);
      get(s, "floor_ratio", d.floor_ratio);
      if (d.h_loc && !(*d.h_loc > 0.0)) throw ConfigError("drift_estimation.h_loc must be positive");
      if (d.plugin_h && !(*d.plugin_h > 0.0)) throw ConfigError("drift_estimation.plugin_h must be positive");
    }
    if (j.contains("oracle") && !j.at("oracle").is_null()) {
      const json& s = j.at("oracle");
      check_keys(s, {"resolution", "margin", "pitch", "occupation"}, "oracle");
      OracleSpec o;
      get(s, "resolution", o.resolution);
      get(s, "margin", o.margin);
      get(s, "pitch", o.pitch);
      if (s.contains("occupation")) {
        for (const json& b : s.at("occupation")) {
          check_keys(b, {"center", "radius"}, "oracle.occupation");
          o.occupation.push_back({vec(b.at("center")), b.at("radius").get<double>()});
        }
      }
      if (o.resolution == 0 || !(o.pitch > 0.0)) throw ConfigError("oracle resolution and pitch must be positive");
      c.oracle = o;
    }
    return c;
  } catch (const json::exception& e) {
    throw ConfigError(std::string("config: ") + e.what());
  }
}

json RunConfig::to_json() const {
  json j;
  j["domain"] = domain;
  j["drift"] = drift;
  j["seed"] = seed;
  j["output"] = output;
  if (simulation) {
    json s{{"delta", simulation->delta}, {"n_steps", simulation->n_steps}, {"stride", simulation->stride}};
    if (simulation->x0) s["x0"] = vec(*simulation->x0);
    j["simulation"] = s;
  }
  if (input) {
    j["input"] = {{"path", input->path},
                  {"columns", {{"timestamp", input->timestamp_column}, {"x", input->x_column}, {"y", input->y_column}}},
                  {"normalization", input->normalization},
                  {"scale", input->scale},
                  {"offset", vec(input->offset)},
                  {"gap_factor", input->gap_factor},
                  {"time_unit_seconds", input->time_unit_seconds}};
  }
  json d{{"kernel", density.kernel},
         {"bandwidth", {{"mode", density.bandwidth_mode}, {"c_h", density.c_h}}},
         {"grid", {density.grid_nx, density.grid_ny}},
         {"mask", density.mask}};
  if (density.h) d["h"] = *density.h;
  j["density"] = d;
  json l{{"lambda", levels.lambdas}, {"tau", levels.taus}, {"grid", {levels.grid_nx, levels.grid_ny}}};
  if (levels.r) l["r"] = *levels.r;
  j["levels"] = l;
  json de{{"enabled", drift_estimation.enabled},
          {"min_count", drift_estimation.min_count},
          {"grid", {drift_estimation.grid_nx, drift_estimation.grid_ny}},
          {"floor_ratio", drift_estimation.floor_ratio}};
  if (drift_estimation.h_loc) de["h_loc"] = *drift_estimation.h_loc;
  if (drift_estimation.plugin_h) de["plugin_h"] = *drift_estimation.plugin_h;
  j["drift_estimation"] = de;
  if (oracle) {
    json occ = json::array();
    for (const auto& b : oracle->occupation) occ.push_back({{"center", vec(b.center)}, {"radius", b.radius}});
    j["oracle"] = {{"resolution", oracle->resolution}, {"margin", oracle->margin}, {"pitch", oracle->pitch},
                   {"occupation", occ}};
  }
  return j;
}

RunConfig load_config(const std::string& path) {
  try {
    RunConfig c = RunConfig::from_json(io::read_json(path));
    // Input paths in a config file are relative to the file.
    if (c.input && std::filesystem::path(c.input->path).is_relative()) {
      c.input->path = (std::filesystem::path(path).parent_path() / c.input->path).lexically_normal().string();
    }
    return c;
  } catch (const ParseError& e) {
    throw ConfigError(e.what());
  }
}

}  // namespace rbmd
