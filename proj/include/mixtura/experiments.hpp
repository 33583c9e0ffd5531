#pragma once

#include <array>
#include <vector>

#include "mixtura/config.hpp"
#include "mixtura/lagrangian.hpp"

namespace mixtura {

struct EquivalenceRow {
  int cells = 0;
  double dx = 0.0;
  double dt = 0.0;
  double linf_rho1 = 0.0;
  double linf_rho2 = 0.0;
  double linf_u = 0.0;
  double linf = 0.0;   // max of the three
  double ratio = 0.0;  // previous row's linf / this row's (0 for the first)
};

/// Runs both formulations from the same Psi-consistent data on each grid
/// with dt = dt_coefficient * dx^2 and compares them at t_end.
std::vector<EquivalenceRow> equivalence_study(const SimConfig& base,
                                              const std::vector<int>& cells,
                                              double dt_coefficient, double t_end);

struct LagrangianSuite {
  double inverse_identity_error = 0.0;  // max |(I+V0)(I+k) - I|_inf
  int inverse_trials = 0;
  double zero_history_max = 0.0;        // max |R_i| for v = 0
  std::vector<double> epsilons;
  std::vector<std::array<double, 4>> norms;  // per epsilon, R1..R4
  std::array<double, 4> slopes{};            // log-log slopes
  double affine_r1_error = 0.0;              // continuity remainder on v = alpha y
  double affine_gradient_error = 0.0;        // 2-D chain rule on an affine flow
  double second_derivative_error = 0.0;      // d2/dx2 transform vs analytic
  bool smallness_flagged = false;            // alpha t > delta is reported
};

LagrangianSuite lagrangian_suite(const MixtureParams& params, double rho1_star,
                                 double rho2_star, double length,
                                 const std::vector<double>& epsilons, double t,
                                 int n_quad, double delta);

}  // namespace mixtura
