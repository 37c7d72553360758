#include "rbmd/pipeline.hpp"

#include <cmath>

#include "rbmd/errors.hpp"
#include "rbmd/geometry.hpp"
#include "rbmd/ingest.hpp"
#include "rbmd/io.hpp"
#include "rbmd/levelset.hpp"
#include "rbmd/validation.hpp"

namespace rbmd {

using nlohmann::json;

void Bundle::write(const std::filesystem::path& dir) const {
  for (const auto& [name, text] : files) io::write_text(dir / name, text);
}

std::optional<Domain> config_domain(const RunConfig& config) {
  if (config.domain.is_null()) return std::nullopt;
  return Domain::from_json(config.domain);
}

DriftFunction config_drift(const RunConfig& config) { return DriftFunction::from_json(config.drift); }

Trajectory make_trajectory(const RunConfig& config, json& manifest) {
  Trajectory t;
  if (config.simulation) {
    const Domain domain = *config_domain(config);
    const DriftFunction drift = config_drift(config);
    const Vec2 x0 = config.simulation->x0.value_or(default_start(domain));
    t = simulate_rbmd(domain, drift, x0, config.simulation->delta, config.simulation->n_steps, config.seed);
    if (config.simulation->stride > 1) t = subsample(t, config.simulation->stride);
    manifest = io::trajectory_manifest(t, config.domain, config.drift);
    manifest["x0"] = {x0.x, x0.y};
    manifest["stride"] = config.simulation->stride;
  } else {
    const InputSpec& in = *config.input;
    const IngestedTrack track = ingest_tracking_csv(
        in.path, ColumnMap{in.timestamp_column, in.x_column, in.y_column},
        in.normalization == "fit" ? Normalization::Fit : Normalization::Given, AffineMap{in.scale, in.offset},
        in.gap_factor, in.time_unit_seconds);
    t = track.trajectory;
    manifest = io::trajectory_manifest(t, config.domain, config.drift);
    manifest["ingest"] = track.manifest();
    manifest["time_unit_seconds"] = in.time_unit_seconds;
  }
  return t;
}

double config_bandwidth(const RunConfig& config, std::size_t n) {
  if (config.density.h) return *config.density.h;
  return default_bandwidth(n, 2, bandwidth_mode_from_string(config.density.bandwidth_mode), config.density.c_h);
}

Grid2D estimation_grid(const RunConfig& config, const Trajectory& trajectory, double h, std::size_t nx,
                       std::size_t ny) {
  if (auto d = config_domain(config)) return Grid2D(d->bbox(), nx, ny);
  return Grid2D(bounding_box(trajectory.positions).inflated(3.0 * h), nx, ny);
}

DensityEstimate make_density(const RunConfig& config, const Trajectory& trajectory, double h) {
  std::optional<Region2D> mask;
  if (config.density.mask) {
    if (auto d = config_domain(config)) {
      const Grid2D g(d->bbox(), config.density.grid_nx, config.density.grid_ny);
      const double pitch = std::min(g.nx > 1 ? g.dx() : g.box.width(), g.ny > 1 ? g.dy() : g.box.height());
      mask = polygonize(*d, 0.5 * pitch);
    }
  }
  return DensityEstimate(trajectory.positions, Kernel::by_name(config.density.kernel), h, std::move(mask));
}

namespace {

template <class F>
auto stage(const char* name, F&& f) {
  try {
    return f();
  } catch (const StageError&) {
    throw;
  } catch (const Error& e) {
    throw StageError(name, e);
  }
}

json grid_json(const Grid2D& g) {
  return {{"box", {{g.box.lo.x, g.box.lo.y}, {g.box.hi.x, g.box.hi.y}}}, {"shape", {g.nx, g.ny}},
          {"pitch", {g.dx(), g.dy()}}};
}

std::string level_file(const char* kind, std::size_t k) { return std::string("levels/") + kind + "_" + std::to_string(k) + ".json"; }

}  // namespace

Bundle run_pipeline(const RunConfig& config) {
  Bundle b;
  b.files["config.json"] = io::dump_json(config.to_json());

  json traj_manifest;
  const Trajectory traj = stage("trajectory", [&] { return make_trajectory(config, traj_manifest); });
  b.files["trajectory.csv"] = io::trajectory_csv(traj);
  b.files["trajectory.json"] = io::dump_json(traj_manifest);
  if (traj.positions.size() < 2) return b;

  const auto domain = stage("config", [&] { return config_domain(config); });
  json metrics{{"n", traj.positions.size()},
               {"steps", {{"accepted", traj.steps.accepted}, {"reflected", traj.steps.reflected},
                          {"rejected", traj.steps.rejected}}}};

  // Density
  const double h = stage("density", [&] { return config_bandwidth(config, traj.positions.size()); });
  const DensityEstimate est = stage("density", [&] { return make_density(config, traj, h); });
  const Grid2D dgrid = estimation_grid(config, traj, h, config.density.grid_nx, config.density.grid_ny);
  const ScalarField field = stage("density", [&] { return evaluate_on_grid(est, dgrid); });
  b.files["density_grid.csv"] = io::field_csv(field);
  b.files["density.json"] = io::dump_json({{"kernel", est.kernel().name()},
                                           {"h", h},
                                           {"n", est.n()},
                                           {"grid", grid_json(dgrid)},
                                           {"mask", est.mask() ? json("domain_polygon") : json(nullptr)},
                                           {"max", field.max()}});
  metrics["h"] = h;
  metrics["density_max"] = field.max();

  // Level sets
  json levels = json::array();
  std::vector<double> sample_values;
  std::vector<std::pair<double, Region2D>> hulls;
  std::vector<std::pair<double, Region2D>> content_sets;
  if (!config.levels.lambdas.empty() || !config.levels.taus.empty()) {
    stage("levelset", [&] {
      const Grid2D lgrid = estimation_grid(config, traj, h, config.levels.grid_nx, config.levels.grid_ny);
      const ScalarField lfield = evaluate_on_grid(est, lgrid);
      sample_values = est.evaluate_many(traj.positions);
      const json common{{"h", h}, {"kernel", est.kernel().name()}, {"n", est.n()}, {"pitch", {lgrid.dx(), lgrid.dy()}}};
      for (std::size_t k = 0; k < config.levels.lambdas.size(); ++k) {
        const double lambda = config.levels.lambdas[k];
        json entry = common;
        entry["kind"] = "plugin";
        entry["lambda"] = lambda;
        try {
          const Region2D r = plugin_level_set(lfield, lambda);
          entry["file"] = level_file("plugin_lambda", k);
          entry["area"] = r.area();
          b.files[entry["file"]] = io::dump_json(r.to_json());
        } catch (const EmptyLevelSet& e) {
          entry["file"] = nullptr;
          entry["empty"] = e.what();
        }
        levels.push_back(entry);
        if (!config.levels.r) continue;
        json hentry = common;
        hentry["kind"] = "rconvex";
        hentry["lambda"] = lambda;
        hentry["r"] = *config.levels.r;
        try {
          Region2D r = rconvex_level_estimator(traj.positions, sample_values, lambda, *config.levels.r);
          hentry["file"] = level_file("hull_lambda", k);
          hentry["area"] = r.area();
          hentry["generators"] = r.meta().value("generators", 0);
          b.files[hentry["file"]] = io::dump_json(r.to_json());
          hulls.emplace_back(lambda, std::move(r));
        } catch (const EmptyLevelSample& e) {
          hentry["file"] = nullptr;
          hentry["empty"] = e.what();
        }
        levels.push_back(hentry);
      }
      for (std::size_t k = 0; k < config.levels.taus.size(); ++k) {
        const double tau = config.levels.taus[k];
        json entry = common;
        entry["kind"] = "fixed_content";
        entry["tau"] = tau;
        const double lambda = fixed_content_threshold(sample_values, tau);
        entry["lambda"] = lambda;
        try {
          const Region2D r = plugin_level_set(lfield, lambda);
          entry["file"] = level_file("content_tau", k);
          entry["area"] = r.area();
          b.files[entry["file"]] = io::dump_json(r.to_json());
          content_sets.emplace_back(tau, r);
        } catch (const EmptyLevelSet& e) {
          entry["file"] = nullptr;
          entry["empty"] = e.what();
        }
        levels.push_back(entry);
      }
      return 0;
    });
    b.files["levels.json"] = io::dump_json(levels);
  }

  // Drift
  if (config.drift_estimation.enabled) {
    stage("drift", [&] {
      const auto& de = config.drift_estimation;
      const double h_loc =
          de.h_loc.value_or(3.0 * default_bandwidth(traj.positions.size(), 2, BandwidthMode::UniformConsistency));
      const Grid2D g = estimation_grid(config, traj, h, de.grid_nx, de.grid_ny);
      const Domain* dp = domain ? &*domain : nullptr;
      const DriftField inc = drift_field_on_grid(traj, g, h_loc, de.min_count, dp);
      b.files["drift_increment.csv"] = io::drift_csv(inc);
      json dj{{"grid", grid_json(g)},
              {"increment", {{"h_loc", h_loc}, {"min_count", de.min_count}, {"valid_fraction", inc.valid_fraction()}}}};
      if (de.plugin_h) {
        const DensityEstimate pest(traj.positions, Kernel::gaussian(), *de.plugin_h);
        double gmax = 0.0;
        for (std::size_t k = 0; k < g.size(); ++k) gmax = std::max(gmax, pest.evaluate(g.node(k)));
        const double floor = de.floor_ratio * gmax;
        const DriftField plug = plugin_drift_field(pest, g, floor, dp);
        b.files["drift_plugin.csv"] = io::drift_csv(plug);
        dj["plugin"] = {{"h", *de.plugin_h}, {"floor", floor}, {"valid_fraction", plug.valid_fraction()}};
      }
      b.files["drift.json"] = io::dump_json(dj);
      metrics["drift_valid_fraction"] = inc.valid_fraction();
      return 0;
    });
  }

  // Oracle comparison
  const DriftFunction drift = config_drift(config);
  if (config.oracle && domain && drift.gradient_case()) {
    stage("oracle", [&] {
      const OracleSpec& o = *config.oracle;
      const AnalyticDensity g = AnalyticDensity::normalized(*domain, *drift.potential(), o.resolution);
      json oj{{"c", g.c()}, {"resolution", o.resolution}};
      try {
        oj["sup_norm_error"] = sup_norm_error(est, g, dgrid, o.margin);
        oj["margin"] = o.margin;
      } catch (const NoInteriorNodes& e) {
        oj["sup_norm_error"] = nullptr;
      }
      json hd = json::array();
      for (const auto& [lambda, region] : hulls) {
        const auto truth = level_nodes(g, lambda, o.pitch);
        const auto approx = discretize_region(region, o.pitch);
        json e{{"lambda", lambda}, {"pitch", o.pitch}};
        e["hausdorff"] = truth.empty() || approx.empty() ? json(nullptr) : json(hausdorff_distance(approx, truth));
        hd.push_back(e);
      }
      oj["hull_hausdorff"] = hd;
      json contents = json::array();
      const std::size_t qres = std::max<std::size_t>(o.resolution / 4, 100);
      for (const auto& [tau, region] : content_sets) {
        contents.push_back({{"tau", tau}, {"measure", region_measure(g, region, qres)}, {"target", 1.0 - tau}});
      }
      oj["fixed_content"] = contents;
      json occ = json::array();
      for (const auto& ball : o.occupation) {
        const Domain bd = Domain::disk(ball.center, ball.radius);
        const double frac = occupation_fraction(traj, bd);
        const double mass = checked_quadrature(
            domain->bbox(), qres, [&](Vec2 x) { return g(x); },
            [&](Vec2 x) { return domain->contains(x) && bd.contains(x); });
        occ.push_back({{"center", {ball.center.x, ball.center.y}}, {"radius", ball.radius}, {"fraction", frac},
                       {"measure", mass}});
      }
      oj["occupation"] = occ;
      metrics["oracle"] = oj;
      return 0;
    });
  }
  b.files["metrics.json"] = io::dump_json(metrics);
  return b;
}

}  // namespace rbmd
