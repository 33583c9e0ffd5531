// Runs the ten acceptance criteria on the reference configuration and prints
// one PASS/FAIL line per criterion. Exit status is nonzero if any fail.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <string>
#include <vector>

#include "mixtura/config.hpp"
#include "mixtura/dynamics.hpp"
#include "mixtura/errors.hpp"
#include "mixtura/experiments.hpp"
#include "mixtura/linear_analysis.hpp"
#include "mixtura/mms.hpp"
#include "mixtura/model.hpp"

using namespace mixtura;

namespace {

const MixtureParams kParams(1, 2, 0.1, 0.1);

SimConfig reference(Formulation f) {
  SimConfig cfg(kParams, Grid1D(128, 1.0, Boundary::wall));
  cfg.formulation = f;
  cfg.dt = 1e-3;
  cfg.t_end = 1.0;
  cfg.initial.type = InitialCondition::Type::mode;
  cfg.initial.amplitude = 1e-2;
  cfg.initial.mode = 1;
  return cfg;
}

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string fmt(const char* f, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof buf, f, args...);
  return buf;
}

double relative_drift(double a, double b) { return std::abs(b - a) / std::abs(a); }

// Shared between criteria 3, 4 and 5.
RunResult g_reference_run;
double g_reference_rate = 0.0;

Outcome conservation() {
  double worst = 0.0;
  for (auto f : {Formulation::entropic, Formulation::primitive}) {
    SimConfig cfg = reference(f);
    cfg.t_end = 1000 * cfg.dt;
    cfg.output_every = 1000;
    const auto r = run(cfg);
    if (r.steps != 1000) return {false, fmt("expected 1000 steps, took %d", r.steps)};
    const auto& a = r.records.front();
    const auto& b = r.records.back();
    worst = std::max(worst, relative_drift(a.mass_total, b.mass_total));
    if (f == Formulation::primitive) {
      worst = std::max({worst, relative_drift(a.mass1, b.mass1), relative_drift(a.mass2, b.mass2)});
    }
  }
  return {worst <= 1e-12, fmt("max relative mass drift %.3e (limit 1e-12)", worst)};
}

Outcome equilibrium() {
  double worst = 0.0;
  for (auto f : {Formulation::entropic, Formulation::primitive}) {
    SimConfig cfg = reference(f);
    cfg.initial.type = InitialCondition::Type::equilibrium;
    cfg.t_end = 100 * cfg.dt;
    const auto r = run(cfg);
    const auto& q = r.records.back();
    worst = std::max({worst, q.l2_zeta, q.l2_u, q.l2_h, q.linf_zeta, q.linf_u, q.linf_h});
  }
  return {worst <= 1e-12, fmt("max perturbation norm after 100 steps %.3e (limit 1e-12)", worst)};
}

Outcome positivity() {
  SimConfig cfg = reference(Formulation::entropic);
  cfg.t_end = 10.0;
  cfg.output_every = 1;
  g_reference_run = run(cfg);
  double lo = 1e300, hi = -1e300;
  for (const auto& q : g_reference_run.records) {
    lo = std::min({lo, q.min_rho1, q.min_rho2});
    hi = std::max({hi, q.max_rho1, q.max_rho2});
  }
  const bool ok = lo >= 0.25 && hi <= 4.0 && g_reference_run.t_final == 10.0;
  return {ok, fmt("densities in [%.6f, %.6f] up to t = %g (bounds [0.25, 4])", lo, hi,
                  g_reference_run.t_final)};
}

Outcome spectral_gap() {
  const auto a = equilibrium_coefficients(1, 1, kParams);
  const auto op = assemble_constant(a, kParams, Grid1D(128, 1.0, Boundary::wall));
  const auto s = spectrum(op);
  double worst = -1e300;
  int zero = 0;
  for (const auto& l : s.eigenvalues) {
    if (std::abs(l) < 1e-10) {
      ++zero;
    } else {
      worst = std::max(worst, l.real());
    }
  }
  g_reference_rate = -worst;
  const bool ok = zero == 2 && s.zero_mode_count == 2 && g_reference_rate > 0.0 &&
                  s.kernel_residual <= 1e-13;
  return {ok, fmt("%d zero modes, gamma = %.9f, kernel residual %.1e", zero, g_reference_rate,
                  s.kernel_residual)};
}

Outcome decay() {
  if (g_reference_run.records.empty() || g_reference_rate <= 0.0) {
    return {false, "prerequisite run or spectrum missing"};
  }
  const auto a = equilibrium_coefficients(1, 1, kParams);
  std::vector<double> t, y;
  for (const auto& q : g_reference_run.records) {
    t.push_back(q.t);
    y.push_back(std::sqrt(a.a1 / a.a0 * q.l2_zeta * q.l2_zeta + a.a0 * q.l2_u * q.l2_u +
                          a.a3 * q.l2_h * q.l2_h));
  }
  const auto fit = fit_decay(t, y, 0.8);
  const double rel = std::abs(fit.rate - g_reference_rate) / g_reference_rate;
  return {rel <= 0.2, fmt("fitted %.6f vs spectral %.6f, relative gap %.2f%% (limit 20%%), r^2 %.4f",
                          fit.rate, g_reference_rate, 100 * rel, fit.r_squared)};
}

Outcome energy_dissipation() {
  const auto a = equilibrium_coefficients(1, 1, kParams);
  const auto op = assemble_constant(a, kParams, Grid1D(128, 1.0, Boundary::wall));
  const auto rep = energy_dissipation_check(op, a, kParams, 100, 2024);

  // march random states and check the weighted energy never grows
  std::mt19937_64 rng(77);
  std::normal_distribution<double> d;
  bool monotone = true;
  for (int trial = 0; trial < 5; ++trial) {
    Eigen::VectorXd x(op.size());
    for (int i = 0; i < op.size(); ++i) x[i] = d(rng);
    const auto m = march_linear(op, x, 1e-3, 0.1);
    for (std::size_t i = 1; i < m.energy_norm.size(); ++i) {
      monotone = monotone && m.energy_norm[i] <= m.energy_norm[i - 1] * (1 + 1e-14);
    }
  }
  const bool ok = rep.trials == 100 && rep.all_dissipative && rep.max_relative_residual <= 1e-11 &&
                  monotone;
  return {ok, fmt("residual %.3e (limit 1e-11), max dE/dt %.3e, marched energy %s",
                  rep.max_relative_residual, rep.max_energy_rate,
                  monotone ? "non-increasing" : "increased")};
}

Outcome equivalence() {
  constexpr double kConstant = 1e-3;
  const auto rows = equivalence_study(reference(Formulation::entropic), {32, 64, 128}, 1.0, 1.0);
  bool ok = rows.size() == 3;
  std::string detail;
  for (const auto& r : rows) {
    ok = ok && r.linf <= kConstant * r.dx * r.dx;
    if (r.ratio != 0.0) ok = ok && r.ratio >= 3.0 && r.ratio <= 5.0;
    detail += fmt("n=%d linf=%.3e (C dx^2=%.3e) ratio=%.3f; ", r.cells, r.linf,
                  kConstant * r.dx * r.dx, r.ratio);
  }
  return {ok, detail};
}

Outcome flux_identity() {
  std::mt19937_64 rng(1000);
  std::uniform_real_distribution<double> logd(-2.0, 2.0), g(-3.0, 3.0);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const PointState q{std::exp(logd(rng)), std::exp(logd(rng))};
    const double grho = g(rng), gh = g(rng);
    const auto gr = gradient_reconstruction(q, grho, gh, kParams);
    // independent evaluation of F1 = -(1/p)[(rho2/rho) d(rho1/m1) - (rho1/rho) d(rho2/m2)]
    const double p = q.rho1 / kParams.m1() + q.rho2 / kParams.m2();
    const double rho = q.rho1 + q.rho2;
    const double direct =
        -(q.rho2 / rho * gr.rho1 / kParams.m1() - q.rho1 / rho * gr.rho2 / kParams.m2()) / p;
    const double entropic = q.rho1 * q.rho2 / (p * rho) * gh;
    const double scale = std::max(1.0, std::abs(entropic));
    worst = std::max({worst, std::abs(flux_closed_form(q, gr.rho1, gr.rho2, kParams) -
                                      flux_entropic(q, gh, kParams)) / scale,
                      std::abs(direct - entropic) / scale});
  }
  return {worst <= 1e-13, fmt("max relative disagreement %.3e over 1000 states (limit 1e-13)", worst)};
}

Outcome lagrangian_algebra() {
  const auto s = lagrangian_suite(kParams, 1.0, 1.0, 1.0, {1e-2, 5e-3, 2.5e-3}, 0.5, 64, 0.5);
  bool ok = s.inverse_identity_error <= 1e-13 && s.zero_history_max == 0.0;
  for (double slope : s.slopes) ok = ok && slope >= 1.9;
  return {ok, fmt("inverse identity %.2e, zero-history max %.1e, slopes R1..R4 = %.4f %.4f %.4f %.4f",
                  s.inverse_identity_error, s.zero_history_max, s.slopes[0], s.slopes[1],
                  s.slopes[2], s.slopes[3])};
}

Outcome mms() {
  const ExperimentConfig defaults(reference(Formulation::entropic));
  bool ok = true;
  std::string detail;
  for (auto f : {Formulation::entropic, Formulation::primitive}) {
    SimConfig base = reference(f);
    base.t_end = defaults.mms_t_end;
    const auto sp = spatial_sweep(base, defaults.sweep_cells, defaults.dt_coefficient,
                                  defaults.mms_amplitude);
    SimConfig fine = reference(f);
    fine.grid = Grid1D(defaults.temporal_cells, 1.0, Boundary::wall);
    fine.t_end = defaults.temporal_t_end;
    const auto tm = temporal_sweep(fine, defaults.temporal_dts, defaults.mms_amplitude);
    ok = ok && sp.order >= 1.8 && tm.order >= 0.9;
    detail += fmt("%s spatial %.4f temporal %.4f; ", to_string(f).c_str(), sp.order, tm.order);
  }
  return {ok, detail + "(limits 1.8, 0.9)"};
}

}  // namespace

int main() {
  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"conservation", conservation},
      {"equilibrium fixed point", equilibrium},
      {"positivity", positivity},
      {"spectral gap", spectral_gap},
      {"exponential decay", decay},
      {"energy dissipation", energy_dissipation},
      {"formulation equivalence", equivalence},
      {"flux identity", flux_identity},
      {"lagrangian algebra", lagrangian_algebra},
      {"manufactured solutions", mms},
  };
  int failures = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("threw: ") + e.what()};
    }
    const double secs =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (!o.pass) ++failures;
    std::printf("criterion %2zu %-24s %s  [%.1fs] %s\n", i + 1, criteria[i].first.c_str(),
                o.pass ? "PASS" : "FAIL", secs, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures,
              criteria.size());
  return failures == 0 ? 0 : 1;
}
