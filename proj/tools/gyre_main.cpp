// gyre: command-line front end for the verification studies, basin spin-up
// and the coupled tracer experiment.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "gyre/config.hpp"
#include "gyre/double_gyre.hpp"
#include "gyre/errors.hpp"
#include "gyre/io.hpp"
#include "gyre/selftest.hpp"
#include "gyre/splitting.hpp"
#include "gyre/tracer.hpp"
#include "gyre/verification.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct Flags {
  std::string config;
  std::optional<std::string> dx;
  std::optional<double> dt;
  std::optional<double> cfl;
  std::optional<double> nu;
  std::optional<std::string> limiter;
  std::optional<std::string> splitting;
  std::optional<std::uint64_t> seed;
  std::optional<std::string> out;
  std::optional<int> workers;

  // Experiment-specific.
  std::vector<int> levels;
  std::vector<double> etas;
  std::optional<double> years;
  std::optional<double> days;
  std::optional<std::string> spinup_state;
  std::optional<std::string> convention;
  std::optional<std::string> distribution;
};


void add_common(CLI::App* app, Flags& f, gyre::Experiment e) {
  const bool basin = e == gyre::Experiment::gyre || e == gyre::Experiment::tracer;
  app->add_option("--config", f.config, "JSON config file; flags override its values")
      ->check(CLI::ExistingFile);
  if (basin) {
    app->add_option("--dx", f.dx, "grid spacing, e.g. 40km or 20000 (metres) [40km]");
    app->add_option("--dt", f.dt, "fixed time step in seconds [6 min per 10 km of dx]");
    app->add_option("--cfl", f.cfl, "adaptive steps at this Courant number instead of --dt");
    app->add_option("--nu", f.nu, "eddy viscosity in m^2/s [300]");
  } else {
    app->add_option("--dt", f.dt, "time step at N=10, scaled by (10/N)^2 [0.025]");
    app->add_option("--nu", f.nu, "nondimensional viscosity 1/Re [0.01]");
  }
  app->add_option("--limiter", f.limiter, "none, minmod, mc or superbee [" +
                      std::string(basin ? "mc" : "none") + "]");
  app->add_option("--splitting", f.splitting, "strang or godunov [strang]");
  app->add_option("--seed", f.seed, "random seed [0]");
  app->add_option("--out", f.out, "output directory [$GYRE_OUT_DIR/<experiment> or out/<experiment>]");
  app->add_option("--workers", f.workers, "worker threads [1]");
}

std::string read_text(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw gyre::IoError("cannot read " + path.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

gyre::ExperimentConfig resolve(const Flags& f, gyre::Experiment e) {
  json doc = json::object();
  if (!f.config.empty()) {
    try {
      doc = json::parse(read_text(f.config));
    } catch (const json::parse_error& err) {
      throw gyre::ConfigError(f.config + ": " + err.what());
    }
    if (doc.contains("experiment") && doc["experiment"] != std::string(gyre::to_string(e))) {
      throw gyre::ConfigError("experiment: config file is for '" +
                              doc["experiment"].dump() + "' but the command runs '" +
                              std::string(gyre::to_string(e)) + "'");
    }
  }
  if (doc.is_object() && !doc.contains("out_dir")) {
    const char* root = std::getenv("GYRE_OUT_DIR");
    doc["out_dir"] = (fs::path(root && *root ? root : "out") / std::string(gyre::to_string(e))).string();
  }

  const bool basin = e == gyre::Experiment::gyre || e == gyre::Experiment::tracer;
  json over = json::object();
  if (f.dx) over["dx"] = *f.dx;
  if (f.dt) over[basin ? "dt" : "base_dt"] = *f.dt;
  if (f.cfl) over["cfl"] = *f.cfl;
  if (f.nu) {
    if (basin) over["gyre"]["nu"] = *f.nu;
    else if (*f.nu > 0.0) over["ansatz"]["reynolds"] = 1.0 / *f.nu;
    else throw gyre::ConfigError("nu: must be positive");
  }
  if (f.limiter) over["limiter"] = *f.limiter;
  if (f.splitting) over["splitting"] = *f.splitting;
  if (f.seed) over["seed"] = *f.seed;
  if (f.out) over["out_dir"] = *f.out;
  if (f.workers) over["workers"] = *f.workers;
  if (!f.levels.empty()) over["levels"] = f.levels;
  if (!f.etas.empty()) over["etas"] = f.etas;
  if (f.years) over[e == gyre::Experiment::tracer ? "spinup_years" : "years"] = *f.years;
  if (f.days) over["tracer_days"] = *f.days;
  if (f.spinup_state) over["spinup_state"] = *f.spinup_state;
  if (f.convention) over["convention"] = *f.convention;
  if (f.distribution) over["distribution"] = *f.distribution;

  return gyre::parse_config(doc.dump(), over.dump(), e);
}

fs::path prepare_out(const gyre::ExperimentConfig& cfg) {
  const fs::path dir = cfg.out_dir;
  fs::create_directories(dir);
  std::ofstream(dir / "config.json") << gyre::to_json(cfg);
  return dir;
}

gyre::VerificationOptions verification_options(const gyre::ExperimentConfig& cfg) {
  gyre::VerificationOptions o;
  o.splitting = cfg.splitting;
  o.limiter = cfg.limiter;
  o.convention = cfg.convention;
  o.workers = cfg.workers;
  return o;
}

gyre::GyreRunOptions gyre_options(const gyre::ExperimentConfig& cfg) {
  gyre::GyreRunOptions o;
  o.dx = cfg.dx;
  o.dt = cfg.dt;
  o.cfl = cfg.cfl;
  o.t_end = cfg.years * gyre::kSecondsPerYear;
  o.splitting = cfg.splitting;
  o.limiter = cfg.limiter;
  o.workers = cfg.workers;
  o.output_every = cfg.output_every;
  return o;
}

int run_convergence(const gyre::ExperimentConfig& cfg) {
  const fs::path dir = prepare_out(cfg);
  const auto rows = gyre::convergence_study(cfg.levels, cfg.base_dt, cfg.verify_t_end,
                                            cfg.ansatz, verification_options(cfg));
  std::ofstream csv(dir / "convergence.csv");
  const auto emit = [&](const std::string& line) {
    std::cout << line << '\n';
    csv << line << '\n';
  };
  emit("n,dt,h_error,order,seconds");
  bool ok = true;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& r = rows[k];
    char buf[160];
    std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.17g,%.6f", r.n, r.dt, r.error,
                  r.observed_order, r.seconds);
    emit(buf);
    if (k > 0 && rows[k - 1].n >= 20 && r.n <= 160) {
      ok = ok && r.observed_order >= 1.7 && r.observed_order <= 2.2;
    }
  }
  std::cout << (ok ? "PASS" : "FAIL")
            << ": observed orders for 20 <= N <= 160 within [1.7, 2.2]\n";
  return ok ? 0 : 1;
}

int run_eta(const gyre::ExperimentConfig& cfg) {
  const fs::path dir = prepare_out(cfg);
  gyre::AnsatzParams base = cfg.ansatz;
  base.omega = cfg.eta_omega;
  const double dt = gyre::refinement_dt(cfg.eta_n, cfg.base_dt);
  const auto rows = gyre::eta_sensitivity_study(cfg.etas, cfg.eta_n, dt, cfg.eta_t_end,
                                                base, verification_options(cfg));
  std::ofstream csv(dir / "eta.csv");
  std::cout << "eta,u_error,seconds\n";
  csv << "eta,u_error,seconds\n";
  for (const auto& r : rows) {
    char buf[128];
    std::snprintf(buf, sizeof buf, "%.17g,%.17g,%.6f", r.eta, r.u_error, r.seconds);
    std::cout << buf << '\n';
    csv << buf << '\n';
  }
  return 0;
}

int run_basin(const gyre::ExperimentConfig& cfg) {
  const fs::path dir = prepare_out(cfg);
  const gyre::GyreRunOptions opts = gyre_options(cfg);
  const auto result = gyre::run_gyre(
      cfg.gyre, opts, cfg.snapshot_days * gyre::kSecondsPerDay, {},
      [&](const gyre::GyreSnapshot& s) {
        gyre::write_gyre_snapshot(dir, s, cfg.gyre);
        std::cerr << "day " << s.t / gyre::kSecondsPerDay << " written\n";
      });
  std::ofstream records(dir / "records.csv");
  gyre::write_step_records(records, result.records);
  gyre::write_field_csv(dir / "final_state.csv",
                        gyre::state_dump(result.final_state, opts.t_end));
  if (!result.finite) {
    std::cerr << "error: non-finite velocity encountered; run stopped early\n";
    return 1;
  }
  const auto ext = gyre::anomaly_extremum(gyre::height_anomaly(result.final_state, cfg.gyre.h0));
  std::cout << "max |u| " << result.max_abs_u << " m/s; |h - H0| extremum "
            << ext.value << " m at " << ext.distance_from_west / 1e3
            << " km from the western wall\n";
  return 0;
}

int run_tracer(const gyre::ExperimentConfig& cfg) {
  const fs::path dir = prepare_out(cfg);
  gyre::GyreRunOptions opts = gyre_options(cfg);

  fs::path state_path = cfg.spinup_state;
  if (state_path.empty()) {
    opts.t_end = cfg.spinup_years * gyre::kSecondsPerYear;
    std::cerr << "spinning up for " << cfg.spinup_years << " years\n";
    const auto spin = gyre::run_gyre(cfg.gyre, opts, opts.t_end);
    if (!spin.finite) throw gyre::InstabilityError("spin-up produced non-finite values");
    state_path = dir / "spinup_state.csv";
    gyre::write_field_csv(state_path, gyre::state_dump(spin.final_state, opts.t_end));
  }
  const gyre::ConservedField q0 = gyre::state_from_dump(gyre::read_field_csv(state_path));

  opts.dt = cfg.tracer_dt.value_or(720.0);
  opts.cfl.reset();
  opts.t_end = cfg.tracer_days * gyre::kSecondsPerDay;
  gyre::FractionalStepSolver solver(gyre::gyre_config(cfg.gyre, opts));
  if (!q0.grid().same_shape(solver.grid())) {
    throw gyre::ConfigError("spinup_state: grid does not match dx and basin size");
  }
  solver.set_state(q0);

  gyre::TracerField c =
      gyre::init_concentration(solver.grid(), cfg.circles, cfg.seed, cfg.distribution);
  gyre::CoupledOptions copts;
  copts.dt = *opts.dt;
  copts.t_end = opts.t_end;
  copts.tracer_limiter = cfg.tracer_limiter;
  copts.snapshot_days = cfg.tracer_snapshot_days;

  std::ofstream centroids(dir / "centroid.csv");
  centroids << "day,x,y,mass\n";
  const auto stats = gyre::run_coupled(solver, c, copts, [&](const gyre::TracerSnapshot& s) {
    const long day = std::lround(s.t / gyre::kSecondsPerDay);
    char name[64];
    std::snprintf(name, sizeof name, "tracer_day%05ld", day);
    gyre::FieldDump dump{s.c.grid(), s.t, {"C"}, {gyre::interior_copy(s.c)}};
    gyre::write_field_csv(dir / (std::string(name) + ".csv"), dump);
    gyre::write_field_vtk(dir / (std::string(name) + ".vtk"), dump);
    const gyre::Centroid m = gyre::tracer_centroid(s.c);
    centroids << day << ',' << m.x << ',' << m.y << ',' << m.mass << '\n';
    std::cerr << "tracer day " << day << " written\n";
  });
  std::cout << "steps " << stats.steps << "; C range [" << stats.min_c << ", "
            << stats.max_c << "]\n";
  return 0;
}

int run_selftest(int samples, std::uint64_t seed) {
  auto checks = gyre::riemann_selftest(samples, seed);
  checks.push_back(gyre::dam_break_transpose_check(64, 40));
  bool ok = true;
  for (const auto& c : checks) {
    std::printf("%s  %-46s worst %.3e  tol %.1e\n", c.passed ? "PASS" : "FAIL",
                c.name.c_str(), c.worst, c.tolerance);
    ok = ok && c.passed;
  }
  return ok ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Shallow-water double-gyre solver: verification, spin-up and tracer runs"};
  app.require_subcommand(1);

  Flags f;
  CLI::App* verify = app.add_subcommand("verify", "manufactured-solution studies");
  verify->require_subcommand(1);
  CLI::App* conv = verify->add_subcommand("convergence", "height-error refinement table");
  add_common(conv, f, gyre::Experiment::verify_convergence);
  conv->add_option("--levels", f.levels, "grid sizes N [10,20,40,80,160,250]")->delimiter(',');
  conv->add_option("--convention", f.convention, "point or cell-average sampling [point]");
  CLI::App* eta = verify->add_subcommand("eta", "u-error versus eta with eta + epsilon = 1");
  add_common(eta, f, gyre::Experiment::verify_eta);
  eta->add_option("--etas", f.etas, "eta values [0.1,0.3,0.5,0.7,0.9]")->delimiter(',');
  eta->add_option("--convention", f.convention, "point or cell-average sampling [point]");

  CLI::App* basin = app.add_subcommand("gyre", "wind-driven spin-up from rest");
  add_common(basin, f, gyre::Experiment::gyre);
  basin->add_option("--years", f.years, "simulated years [1]");

  CLI::App* tracer = app.add_subcommand("tracer", "passive tracer released in a spun-up basin");
  add_common(tracer, f, gyre::Experiment::tracer);
  tracer->add_option("--spinup-state", f.spinup_state,
                     "conserved-field CSV to start from; spins up from rest when absent");
  tracer->add_option("--years", f.years, "spin-up length when no state is given [2]");
  tracer->add_option("--days", f.days, "tracer run length [360]");
  tracer->add_option("--distribution", f.distribution,
                     "uniform or truncated-gaussian initial values [uniform]");

  int samples = 10000;
  std::uint64_t selftest_seed = 0;
  CLI::App* selftest = app.add_subcommand("riemann-selftest", "Riemann solver property suites");
  selftest->add_option("--samples", samples, "random interface states [10000]");
  selftest->add_option("--seed", selftest_seed, "random seed [0]");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*conv) return run_convergence(resolve(f, gyre::Experiment::verify_convergence));
    if (*eta) return run_eta(resolve(f, gyre::Experiment::verify_eta));
    if (*basin) return run_basin(resolve(f, gyre::Experiment::gyre));
    if (*tracer) return run_tracer(resolve(f, gyre::Experiment::tracer));
    if (*selftest) return run_selftest(samples, selftest_seed);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }
  return 0;
}
