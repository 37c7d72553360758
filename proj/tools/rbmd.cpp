#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <rbmd/config.hpp>
#include <rbmd/density.hpp>
#include <rbmd/drift.hpp>
#include <rbmd/errors.hpp>
#include <rbmd/geometry.hpp>
#include <rbmd/io.hpp>
#include <rbmd/levelset.hpp>
#include <rbmd/pipeline.hpp>
#include <rbmd/validation.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitData = 3;
constexpr int kExitNumerical = 4;

int exit_code(rbmd::ErrorKind k) {
  switch (k) {
    case rbmd::ErrorKind::Config: return kExitConfig;
    case rbmd::ErrorKind::Data: return kExitData;
    case rbmd::ErrorKind::Numerical: return kExitNumerical;
  }
  return 1;
}

// Holed-ellipse simulation used when no --config is given.
rbmd::RunConfig default_config() {
  json j{{"domain", rbmd::holed_ellipse().to_json()},
         {"drift", {{"type", "linear"}, {"k", 1.0}, {"center", {0.0, 0.0}}}},
         {"seed", 1},
         {"simulation", {{"delta", 0.003}, {"n_steps", 100000}}}};
  return rbmd::RunConfig::from_json(j);
}

struct Globals {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string out;
};

rbmd::RunConfig base_config(const Globals& g) {
  rbmd::RunConfig c = g.config.empty() ? default_config() : rbmd::load_config(g.config);
  if (g.seed) c.seed = *g.seed;
  if (!g.out.empty()) c.output = g.out;
  return c;
}

rbmd::Trajectory load_or_make(const rbmd::RunConfig& c, const std::string& path) {
  if (!path.empty()) return rbmd::io::read_trajectory(path);
  json manifest;
  return rbmd::make_trajectory(c, manifest);
}

std::vector<rbmd::Vec2> load_set(const std::string& path, double pitch) {
  if (fs::path(path).extension() == ".json") {
    return rbmd::discretize_region(rbmd::Region2D::from_json(rbmd::io::read_json(path)), pitch);
  }
  return rbmd::io::read_points(path);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Reflected Brownian motion with drift: simulation, density, level sets and drift estimation"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config, "Run configuration (JSON)")->check(CLI::ExistingFile);
  app.add_option("--seed", g.seed, "Override the configured seed");
  app.add_option("--out", g.out, "Output directory");

  std::string trajectory_path;
  std::optional<double> h;
  std::string kernel;
  std::vector<std::size_t> grid;

  auto* sim = app.add_subcommand("simulate", "Simulate a trajectory");
  std::optional<std::uint64_t> n_steps;
  std::optional<double> delta;
  sim->add_option("--n-steps", n_steps, "Number of steps");
  sim->add_option("--delta", delta, "Time step");

  auto* den = app.add_subcommand("density", "Kernel density estimate on a grid");
  auto* lev = app.add_subcommand("levelset", "Plug-in and r-convex hull level sets");
  auto* fc = app.add_subcommand("fixed-content", "Fixed-content level and its level set");
  auto* dr = app.add_subcommand("drift", "Drift field estimates");
  for (auto* s : {den, lev, fc, dr}) {
    s->add_option("--trajectory", trajectory_path, "Trajectory CSV (default: simulate or ingest per config)");
    s->add_option("--bandwidth", h, "Bandwidth");
  }
  for (auto* s : {den, lev, fc}) {
    s->add_option("--kernel", kernel, "gaussian | epanechnikov");
    s->add_option("--grid", grid, "Grid nodes nx ny")->expected(2);
  }
  std::vector<double> lambdas;
  std::optional<double> r;
  lev->add_option("--lambda", lambdas, "Levels")->required();
  lev->add_option("-r,--radius", r, "Hull radius");
  std::vector<double> taus;
  fc->add_option("--tau", taus, "Contents in (0, 1)")->required();
  std::optional<double> h_loc, plugin_h;
  std::optional<std::size_t> min_count;
  dr->add_option("--h-loc", h_loc, "Ball radius for the increment estimator");
  dr->add_option("--min-count", min_count, "Minimum increments per node");
  dr->add_option("--plugin-h", plugin_h, "Bandwidth for the plug-in rule");
  dr->add_option("--grid", grid, "Grid nodes nx ny")->expected(2);

  auto* hd = app.add_subcommand("hausdorff", "Hausdorff distance between two point sets or regions");
  std::string set_a, set_b;
  double pitch = 0.01;
  hd->add_option("a", set_a, "Point CSV (x,y) or region JSON")->required()->check(CLI::ExistingFile);
  hd->add_option("b", set_b, "Point CSV (x,y) or region JSON")->required()->check(CLI::ExistingFile);
  hd->add_option("--pitch", pitch, "Discretization pitch for regions");

  auto* orc = app.add_subcommand("oracle", "Oracle fixture for the configured gradient-case density");
  std::size_t resolution = 2000;
  std::vector<double> oracle_lambdas;
  orc->add_option("--resolution", resolution, "Quadrature cells per axis");
  orc->add_option("--lambda", oracle_lambdas, "Levels whose content to record");

  auto* pipe = app.add_subcommand("pipeline", "Run every stage and write the artifact bundle");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitConfig;
  }

  try {
    rbmd::RunConfig c = base_config(g);
    if (!kernel.empty()) c.density.kernel = kernel;
    if (h) c.density.h = *h;
    if (grid.size() == 2) {
      c.density.grid_nx = c.levels.grid_nx = grid[0];
      c.density.grid_ny = c.levels.grid_ny = grid[1];
    }
    const fs::path out = c.output;

    if (*sim) {
      if (!c.simulation) throw rbmd::ConfigError("config has no simulation section");
      if (n_steps) c.simulation->n_steps = *n_steps;
      if (delta) c.simulation->delta = *delta;
      json manifest;
      const rbmd::Trajectory t = rbmd::make_trajectory(c, manifest);
      rbmd::io::write_text(out / "trajectory.csv", rbmd::io::trajectory_csv(t));
      rbmd::io::write_text(out / "trajectory.json", rbmd::io::dump_json(manifest));
      std::cout << "wrote " << t.positions.size() << " positions to " << (out / "trajectory.csv").string() << "\n";
      return 0;
    }
    if (*den || *lev || *fc) {
      const rbmd::Trajectory t = load_or_make(c, trajectory_path);
      const double bw = rbmd::config_bandwidth(c, t.positions.size());
      const rbmd::DensityEstimate est = rbmd::make_density(c, t, bw);
      if (*den) {
        const rbmd::Grid2D grid2 = rbmd::estimation_grid(c, t, bw, c.density.grid_nx, c.density.grid_ny);
        const rbmd::ScalarField f = rbmd::evaluate_on_grid(est, grid2);
        rbmd::io::write_text(out / "density_grid.csv", rbmd::io::field_csv(f));
        rbmd::io::write_text(out / "density.json",
                             rbmd::io::dump_json({{"kernel", est.kernel().name()}, {"h", bw}, {"n", est.n()},
                                                  {"max", f.max()}}));
        std::cout << "h = " << bw << ", max = " << f.max() << "\n";
        return 0;
      }
      const rbmd::Grid2D lgrid = rbmd::estimation_grid(c, t, bw, c.levels.grid_nx, c.levels.grid_ny);
      const rbmd::ScalarField field = rbmd::evaluate_on_grid(est, lgrid);
      const std::vector<double> values = est.evaluate_many(t.positions);
      if (*lev) {
        for (std::size_t k = 0; k < lambdas.size(); ++k) {
          const std::string tag = std::to_string(k);
          try {
            const rbmd::Region2D p = rbmd::plugin_level_set(field, lambdas[k]);
            rbmd::io::write_text(out / ("plugin_lambda_" + tag + ".json"), rbmd::io::dump_json(p.to_json()));
            std::cout << "lambda " << lambdas[k] << ": plug-in area " << p.area() << "\n";
          } catch (const rbmd::EmptyLevelSet&) {
            std::cout << "lambda " << lambdas[k] << ": plug-in set empty\n";
          }
          if (!r) continue;
          try {
            const rbmd::Region2D a = rbmd::rconvex_level_estimator(t.positions, values, lambdas[k], *r);
            rbmd::io::write_text(out / ("hull_lambda_" + tag + ".json"), rbmd::io::dump_json(a.to_json()));
            std::cout << "lambda " << lambdas[k] << ": hull area " << a.area() << "\n";
          } catch (const rbmd::EmptyLevelSample&) {
            std::cout << "lambda " << lambdas[k] << ": no sample point above the level\n";
          }
        }
        return 0;
      }
      for (std::size_t k = 0; k < taus.size(); ++k) {
        const double lambda = rbmd::fixed_content_threshold(values, taus[k]);
        const rbmd::Region2D p = rbmd::plugin_level_set(field, lambda);
        rbmd::io::write_text(out / ("content_tau_" + std::to_string(k) + ".json"), rbmd::io::dump_json(p.to_json()));
        std::cout << "tau " << taus[k] << ": level " << lambda << ", area " << p.area() << "\n";
      }
      return 0;
    }
    if (*dr) {
      if (h_loc) c.drift_estimation.h_loc = *h_loc;
      if (min_count) c.drift_estimation.min_count = *min_count;
      if (plugin_h) c.drift_estimation.plugin_h = *plugin_h;
      if (grid.size() == 2) {
        c.drift_estimation.grid_nx = grid[0];
        c.drift_estimation.grid_ny = grid[1];
      }
      const rbmd::Trajectory t = load_or_make(c, trajectory_path);
      const auto domain = rbmd::config_domain(c);
      const double bw = rbmd::config_bandwidth(c, t.positions.size());
      const auto& de = c.drift_estimation;
      const double hl = de.h_loc.value_or(
          3.0 * rbmd::default_bandwidth(t.positions.size(), 2, rbmd::BandwidthMode::UniformConsistency));
      const rbmd::Grid2D dgrid = rbmd::estimation_grid(c, t, bw, de.grid_nx, de.grid_ny);
      const rbmd::DriftField f = rbmd::drift_field_on_grid(t, dgrid, hl, de.min_count, domain ? &*domain : nullptr);
      rbmd::io::write_text(out / "drift_increment.csv", rbmd::io::drift_csv(f));
      std::cout << "increment field: " << f.valid_count() << " valid nodes (" << f.valid_fraction() << ")\n";
      if (de.plugin_h) {
        const rbmd::DensityEstimate pest(t.positions, rbmd::Kernel::gaussian(), *de.plugin_h);
        double gmax = 0.0;
        for (std::size_t k = 0; k < dgrid.size(); ++k) gmax = std::max(gmax, pest.evaluate(dgrid.node(k)));
        const rbmd::DriftField p =
            rbmd::plugin_drift_field(pest, dgrid, de.floor_ratio * gmax, domain ? &*domain : nullptr);
        rbmd::io::write_text(out / "drift_plugin.csv", rbmd::io::drift_csv(p));
        std::cout << "plug-in field: " << p.valid_count() << " valid nodes\n";
      }
      return 0;
    }
    if (*hd) {
      const auto a = load_set(set_a, pitch);
      const auto b = load_set(set_b, pitch);
      std::cout << rbmd::io::format_double(rbmd::hausdorff_distance(a, b)) << "\n";
      return 0;
    }
    if (*orc) {
      const auto domain = rbmd::config_domain(c);
      const rbmd::DriftFunction drift = rbmd::config_drift(c);
      if (!domain) throw rbmd::ConfigError("oracle needs a domain");
      if (!drift.gradient_case()) throw rbmd::ConfigError("oracle needs a gradient-case drift");
      const auto dens = rbmd::AnalyticDensity::normalized(*domain, *drift.potential(), resolution);
      json contents = json::object();
      for (double l : oracle_lambdas) {
        contents[rbmd::io::format_double(l)] = rbmd::region_measure(dens, l, resolution);
      }
      const json fixture{{"c", dens.c()},
                         {"lambda_contents", contents},
                         {"generation",
                          {{"domain", c.domain}, {"drift", c.drift}, {"resolution", resolution},
                           {"rule", "masked midpoint, 4x4 boundary refinement, doubling check 1e-3"}}}};
      const std::string text = rbmd::io::dump_json(fixture);
      if (!g.out.empty()) rbmd::io::write_text(out / "oracle.json", text);
      std::cout << text;
      return 0;
    }
    if (*pipe) {
      const rbmd::Bundle b = rbmd::run_pipeline(c);
      b.write(out);
      std::cout << "wrote " << b.files.size() << " files to " << out.string() << "\n";
      return 0;
    }
  } catch (const rbmd::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code(e.kind());
  } catch (const fs::filesystem_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitData;
  }
  return 0;
}
