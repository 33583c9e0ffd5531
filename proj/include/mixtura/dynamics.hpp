#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "mixtura/grid.hpp"
#include "mixtura/model.hpp"

namespace mixtura {

enum class Formulation { primitive, entropic };

Formulation parse_formulation(const std::string& s);
std::string to_string(Formulation f);

struct InitialCondition {
  enum class Type { equilibrium, mode, random };

  Type type = Type::mode;
  double rho1_star = 1.0;
  double rho2_star = 1.0;
  double amplitude = 1e-2;  // eps, applied to rho and h
  int mode = 1;
  std::optional<double> velocity_amplitude;  // defaults to amplitude
  std::uint64_t seed = 0;
};

InitialCondition::Type parse_initial_type(const std::string& s);
std::string to_string(InitialCondition::Type t);

struct SimConfig {
  MixtureParams params;
  Grid1D grid;
  double dt = 1e-3;
  double t_end = 1.0;
  Formulation formulation = Formulation::entropic;
  double picard_tol = 1e-10;
  int picard_max = 50;
  double cfl_limit = 0.5;
  double u_floor = 1e-8;
  InitialCondition initial;
  int output_every = 1;

  SimConfig(MixtureParams p, Grid1D g) : params(p), grid(g) {}
  /// Throws DomainError on nonpositive dt, negative t_end, etc.
  void validate() const;
};

/// rho1, rho2 at cell centres; u at nodes (wall endpoints held at 0).
struct PrimitiveState {
  std::vector<double> rho1, rho2, u;
};

/// rho, h at cell centres; u at nodes.
struct EntropicState {
  std::vector<double> rho, h, u;
};

PrimitiveState to_primitive(const EntropicState& s, const MixtureParams& params);
EntropicState to_entropic(const PrimitiveState& s, const MixtureParams& params);

/// Shape of initial mode k: cos(k pi x / L) on wall grids and
/// cos(2 pi k x / L) on periodic grids.
double mode_shape(const Grid1D& grid, int k, double x);
/// C-infinity bump supported on (0, L) with peak 1 at L/2.
double velocity_bump(double x, double length);

/// Sampled initial data. Both faces are Psi-consistent.
EntropicState initial_entropic(const SimConfig& cfg);
PrimitiveState initial_primitive(const SimConfig& cfg);

/// Optional forcing, evaluated at the new time level. Empty functions are
/// zero. Entropic steps read rho, h, u; primitive steps read rho1, rho2, u.
struct Sources {
  using Fn = std::function<double(double x, double t)>;
  Fn rho, h, rho1, rho2, u;
};

template <typename State>
struct StepResult {
  State state;
  int picard_iters = 0;
};

/// One Picard-converged Backward Euler step from t to t + dt.
StepResult<EntropicState> step_entropic(const EntropicState& s, double t,
                                        double dt, const SimConfig& cfg,
                                        const Sources* sources = nullptr);
StepResult<PrimitiveState> step_primitive(const PrimitiveState& s, double t,
                                          double dt, const SimConfig& cfg,
                                          const Sources* sources = nullptr);

struct TimeSeriesRecord {
  double t = 0.0;
  double mass_total = 0.0;
  double mass1 = 0.0;
  double mass2 = 0.0;
  double l2_zeta = 0.0;
  double l2_u = 0.0;
  double l2_h = 0.0;
  double linf_zeta = 0.0;
  double linf_u = 0.0;
  double linf_h = 0.0;
  double min_rho1 = 0.0;
  double max_rho1 = 0.0;
  double min_rho2 = 0.0;
  double max_rho2 = 0.0;
  int picard_iters = 0;
};

/// Diagnostics of a state; zeta and h are measured from their cell means.
TimeSeriesRecord diagnose(const PrimitiveState& p, const EntropicState& e,
                          const Grid1D& grid, double t, int picard_iters);

struct RunResult {
  PrimitiveState primitive;
  EntropicState entropic;
  std::vector<TimeSeriesRecord> records;
  double t_final = 0.0;
  int steps = 0;
};

/// Marches from the configured initial data to t_end. Deterministic.
RunResult run(const SimConfig& cfg, const Sources* sources = nullptr);
/// As run(), starting from explicit initial data in either form.
RunResult run_from(const SimConfig& cfg, const PrimitiveState& initial,
                   const Sources* sources = nullptr);

}  // namespace mixtura
