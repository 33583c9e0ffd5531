#include "mixtura/commands.hpp"

#include <chrono>
#include <cstdlib>
#include <functional>
#include <sstream>

#include "mixtura/config.hpp"
#include "mixtura/experiments.hpp"
#include "mixtura/io.hpp"
#include "mixtura/linear_analysis.hpp"
#include "mixtura/mms.hpp"

namespace mixtura {

namespace {

using nlohmann::json;

std::filesystem::path resolve_output(const CommandOptions& opts,
                                     const ExperimentConfig& cfg) {
  if (opts.out) return *opts.out;
  if (const char* env = std::getenv("MIXTURA_OUT"); env && *env) return env;
  return cfg.output_dir;
}

json failure_json(const std::string& kind, const Error& e) {
  json j{{"error", kind}, {"message", e.what()}};
  if (const auto* p = dynamic_cast<const PositivityLoss*>(&e)) {
    j["cell"] = p->cell();
    j["x"] = p->x();
    j["t"] = p->t();
    j["value"] = p->value();
  }
  if (const auto* s = dynamic_cast<const SmallnessViolation*>(&e)) {
    j["accumulated"] = s->accumulated();
    j["bound"] = s->bound();
  }
  return j;
}

const char* error_kind(const Error& e) {
  if (dynamic_cast<const PositivityLoss*>(&e)) return "positivity_loss";
  if (dynamic_cast<const ConvergenceError*>(&e)) return "convergence";
  if (dynamic_cast<const SingularMatrixError*>(&e)) return "singular_matrix";
  if (dynamic_cast<const SmallnessViolation*>(&e)) return "smallness_violation";
  if (dynamic_cast<const DomainError*>(&e)) return "domain";
  return "numerical";
}

// Shared driver: load config, claim outputs, run body, write manifest.
int drive(const std::string& name, const CommandOptions& opts, std::ostream& log,
          const std::vector<std::string>& outputs,
          const std::function<void(const ExperimentConfig&, OutputDir&)>& body) {
  const auto start = std::chrono::steady_clock::now();
  std::optional<ExperimentConfig> cfg;
  std::optional<OutputDir> dir;
  try {
    cfg.emplace(load_config(opts.config_path));
    dir.emplace(resolve_output(opts, *cfg), opts.force);
    std::vector<std::string> all = outputs;
    all.push_back("manifest.json");
    dir->claim(all);
  } catch (const ConfigError& e) {
    log << "mixtura " << name << ": config error: " << e.what() << '\n';
    return kConfigFailure;
  } catch (const std::exception& e) {
    log << "mixtura " << name << ": config error: " << e.what() << '\n';
    return kConfigFailure;
  }

  auto manifest = [&](int status) {
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    json paths = json::array();
    for (const auto& f : dir->written()) paths.push_back((dir->path() / f).string());
    dir->write_json("manifest.json",
                    {{"command", name},
                     {"version", kVersion},
                     {"config_path", cfg->source_path},
                     {"config_sha256", cfg->sha256},
                     {"outputs", paths},
                     {"wall_clock_seconds", secs},
                     {"exit_status", status}});
  };

  try {
    body(*cfg, *dir);
    // only reachable with --force: a stale diagnostic from an earlier run
    std::filesystem::remove(dir->path() / "failure.json");
    manifest(kSuccess);
    log << "mixtura " << name << ": wrote " << dir->written().size() << " files to "
        << dir->path().string() << '\n';
    return kSuccess;
  } catch (const ConfigError& e) {
    log << "mixtura " << name << ": config error: " << e.what() << '\n';
    return kConfigFailure;
  } catch (const Error& e) {
    log << "mixtura " << name << ": numerical failure: " << e.what() << '\n';
    try {
      dir->write_json("failure.json", failure_json(error_kind(e), e));
      manifest(kNumericalFailure);
    } catch (const std::exception& w) {
      log << "mixtura " << name << ": could not write diagnostics: " << w.what() << '\n';
    }
    return kNumericalFailure;
  } catch (const std::exception& e) {
    log << "mixtura " << name << ": failure: " << e.what() << '\n';
    return kNumericalFailure;
  }
}

std::string series_text(const std::vector<TimeSeriesRecord>& rows) {
  std::ostringstream os;
  write_series_csv(os, rows);
  return os.str();
}

}  // namespace

int cmd_simulate(const CommandOptions& opts, std::ostream& log) {
  return drive("simulate", opts, log, {"series.csv", "final_state.json", "failure.json"},
               [](const ExperimentConfig& cfg, OutputDir& dir) {
                 const RunResult r = run(cfg.sim);
                 dir.write("series.csv", series_text(r.records));
                 dir.write_json("final_state.json", final_state_json(r, cfg.sim));
               });
}

int cmd_linearize(const CommandOptions& opts, std::ostream& log) {
  return drive("linearize", opts, log, {"spectrum.json", "failure.json"},
               [](const ExperimentConfig& cfg, OutputDir& dir) {
                 const auto& s = cfg.sim;
                 const auto a = equilibrium_coefficients(s.initial.rho1_star,
                                                         s.initial.rho2_star, s.params);
                 const auto op = assemble_constant(a, s.params, s.grid);
                 const auto rep = spectrum(op);
                 const auto energy = energy_dissipation_check(op, a, s.params, 100,
                                                              s.initial.seed + 1);
                 json j = spectrum_json(rep);
                 j["coefficients"] = {{"a0", a.a0}, {"a1", a.a1}, {"a2", a.a2},
                                      {"a3", a.a3}, {"a4", a.a4}};
                 j["grid"] = {{"cells", s.grid.cells()},
                              {"length", s.grid.length()},
                              {"boundary", to_string(s.grid.boundary())}};
                 j["energy_check"] = {{"trials", energy.trials},
                                      {"max_relative_residual", energy.max_relative_residual},
                                      {"max_energy_rate", energy.max_energy_rate},
                                      {"all_dissipative", energy.all_dissipative}};
                 dir.write_json("spectrum.json", j);
               });
}

int cmd_equivalence(const CommandOptions& opts, std::ostream& log) {
  return drive("equivalence", opts, log, {"equivalence.csv", "failure.json"},
               [](const ExperimentConfig& cfg, OutputDir& dir) {
                 const auto rows = equivalence_study(cfg.sim, cfg.sweep_cells,
                                                     cfg.dt_coefficient, cfg.sim.t_end);
                 std::ostringstream os;
                 os << "cells,dx,dt,linf_rho1,linf_rho2,linf_u,linf,ratio\n";
                 for (const auto& r : rows) {
                   os << r.cells << ',' << format_double(r.dx) << ',' << format_double(r.dt)
                      << ',' << format_double(r.linf_rho1) << ','
                      << format_double(r.linf_rho2) << ',' << format_double(r.linf_u)
                      << ',' << format_double(r.linf) << ',' << format_double(r.ratio)
                      << '\n';
                 }
                 dir.write("equivalence.csv", os.str());
               });
}

int cmd_lagrangian_check(const CommandOptions& opts, std::ostream& log) {
  return drive("lagrangian-check", opts, log, {"lagrangian.json", "failure.json"},
               [](const ExperimentConfig& cfg, OutputDir& dir) {
                 const auto& s = cfg.sim;
                 const auto suite = lagrangian_suite(
                     s.params, s.initial.rho1_star, s.initial.rho2_star, s.grid.length(),
                     cfg.epsilons, cfg.lagrangian_time, cfg.quadrature, cfg.delta);
                 json norms = json::array();
                 for (std::size_t i = 0; i < suite.epsilons.size(); ++i) {
                   norms.push_back({{"epsilon", suite.epsilons[i]},
                                    {"r1", suite.norms[i][0]},
                                    {"r2", suite.norms[i][1]},
                                    {"r3", suite.norms[i][2]},
                                    {"r4", suite.norms[i][3]}});
                 }
                 dir.write_json(
                     "lagrangian.json",
                     {{"inverse_identity_error", suite.inverse_identity_error},
                      {"inverse_trials", suite.inverse_trials},
                      {"zero_history_max", suite.zero_history_max},
                      {"scaling", norms},
                      {"slopes", suite.slopes},
                      {"affine_r1_error", suite.affine_r1_error},
                      {"affine_gradient_error", suite.affine_gradient_error},
                      {"second_derivative_error", suite.second_derivative_error},
                      {"smallness_flagged", suite.smallness_flagged},
                      {"delta", cfg.delta},
                      {"quadrature", cfg.quadrature},
                      {"time", cfg.lagrangian_time}});
               });
}

int cmd_convergence(const CommandOptions& opts, std::ostream& log) {
  return drive("convergence", opts, log, {"convergence.csv", "failure.json"},
               [](const ExperimentConfig& cfg, OutputDir& dir) {
                 std::ostringstream os;
                 os << "study,formulation,cells,dt,error,order\n";
                 for (auto f : {Formulation::primitive, Formulation::entropic}) {
                   SimConfig base = cfg.sim;
                   base.formulation = f;
                   base.t_end = cfg.mms_t_end;
                   const auto sp = spatial_sweep(base, cfg.sweep_cells, cfg.dt_coefficient,
                                                 cfg.mms_amplitude);
                   for (const auto& r : sp.rows) {
                     os << "spatial," << to_string(f) << ',' << r.cells << ','
                        << format_double(r.dt) << ',' << format_double(r.error) << ','
                        << format_double(sp.order) << '\n';
                   }
                   base.grid = Grid1D(cfg.temporal_cells, cfg.sim.grid.length(),
                                      cfg.sim.grid.boundary());
                   base.t_end = cfg.temporal_t_end;
                   const auto tp = temporal_sweep(base, cfg.temporal_dts, cfg.mms_amplitude);
                   for (const auto& r : tp.rows) {
                     os << "temporal," << to_string(f) << ',' << r.cells << ','
                        << format_double(r.dt) << ',' << format_double(r.error) << ','
                        << format_double(tp.order) << '\n';
                   }
                 }
                 dir.write("convergence.csv", os.str());
               });
}

int run_command(const std::string& name, const CommandOptions& opts, std::ostream& log) {
  if (name == "simulate") return cmd_simulate(opts, log);
  if (name == "linearize") return cmd_linearize(opts, log);
  if (name == "equivalence") return cmd_equivalence(opts, log);
  if (name == "lagrangian-check") return cmd_lagrangian_check(opts, log);
  if (name == "convergence") return cmd_convergence(opts, log);
  log << "mixtura: unknown command '" << name << "'\n";
  return kConfigFailure;
}

}  // namespace mixtura
