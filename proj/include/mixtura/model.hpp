#pragma once

#include <span>
#include <vector>

namespace mixtura {

/// Material constants of the binary mixture. The gas constant is 1.
///
/// Construction validates m1 > 0, m2 > 0, m1 != m2, mu > 0, nu > 0 and
/// throws DomainError otherwise; the pressure only couples to the species
/// split when the molar masses differ.
class MixtureParams {
 public:
  MixtureParams(double m1, double m2, double mu, double nu);

  double m1() const noexcept { return m1_; }
  double m2() const noexcept { return m2_; }
  double mu() const noexcept { return mu_; }
  double nu() const noexcept { return nu_; }
  /// Effective 1-D viscosity: div S = (mu + nu) u_xx.
  double viscosity_1d() const noexcept { return mu_ + nu_; }

 private:
  double m1_, m2_, mu_, nu_;
};

/// Partial densities at a point. Both must be strictly positive.
struct PointState {
  double rho1;
  double rho2;

  double total() const noexcept { return rho1 + rho2; }
};

/// Entropic variables (h, rho) at a point.
struct EntropicPoint {
  double h;
  double rho;
};

/// Throws DomainError unless rho1 > 0 and rho2 > 0.
void require_positive(const PointState& p);

/// Boyle law, p = rho1/m1 + rho2/m2.
double pressure(const PointState& p, const MixtureParams& params);

/// Sigma = m1 rho1 + m2 rho2.
double sigma(const PointState& p, const MixtureParams& params);

/// Forward change of variables (rho1, rho2) -> (h, rho) with
/// h = log(rho2)/m2 - log(rho1)/m1.
EntropicPoint psi(const PointState& p, const MixtureParams& params);

/// Inverse change of variables (h, rho) -> (rho1, rho2).
///
/// Solved by safeguarded Newton in the log-ratio t = log(rho1/rho2), where
/// h(t) is strictly decreasing with slope bounded between -1/min(m) and
/// -1/max(m). Converges to |d rho1| <= 1e-14 (or a few ulps of rho when
/// rho > 1) within 100 iterations or throws ConvergenceError.
PointState phi(const EntropicPoint& e, const MixtureParams& params);

/// Two-species Maxwell-Stefan flux F1 in the closed form
/// F1 = -(1/p) [ (rho2/rho) d(rho1/m1) - (rho1/rho) d(rho2/m2) ].
/// F2 = -F1.
double flux_closed_form(const PointState& p, double grad_rho1,
                        double grad_rho2, const MixtureParams& params);

/// The same flux expressed through the entropic gradient,
/// F1 = rho1 rho2 / (p rho) * grad h.
double flux_entropic(const PointState& p, double grad_h,
                     const MixtureParams& params);

struct SpeciesGradients {
  double rho1;
  double rho2;
};

/// Recovers (grad rho1, grad rho2) from (grad rho, grad h) by solving the
/// 2x2 system obtained from differentiating psi.
SpeciesGradients gradient_reconstruction(const PointState& p, double grad_rho,
                                         double grad_h,
                                         const MixtureParams& params);

/// Pointwise coefficients of the symmetrized system:
///   rho (u_t + u u_x) - div S + pressure_density rho_x + coupling h_x = 0
///   capacity (h_t + u h_x) + coupling u_x = div(diffusivity h_x)
struct SymmetrizedCoefficients {
  double sigma;             // m1 rho1 + m2 rho2
  double pressure_density;  // rho / sigma
  double coupling;          // (m1 - m2) rho1 rho2 / sigma
  double capacity;          // m1 m2 rho1 rho2 / sigma
  double diffusivity;       // rho1 rho2 / (p rho)
};

SymmetrizedCoefficients symmetrized_coefficients(const PointState& p,
                                                 const MixtureParams& params);

/// Coefficient fields of the linearization about a (possibly nonuniform)
/// reference state rho10(x), rho20(x).
struct SpatialCoefficients {
  std::vector<double> rho0;
  std::vector<double> sigma_rho0;
  std::vector<double> gamma1;  // rho0 / sigma0
  std::vector<double> gamma2;  // (m1 - m2) rho10 rho20 / sigma0
  std::vector<double> gamma3;  // m1 m2 rho10 rho20 / sigma0
  std::vector<double> gamma4;  // rho10 rho20 / (p0 rho0)
  std::vector<double> p0;

  std::size_t size() const noexcept { return rho0.size(); }
};

SpatialCoefficients spatial_coefficients(std::span<const double> rho10,
                                         std::span<const double> rho20,
                                         const MixtureParams& params);

/// Constant coefficients of the linearization about a uniform state.
/// a2 carries the sign of m1 - m2; all others are positive.
struct EquilibriumCoefficients {
  double a0;  // rho*
  double a1;  // a0 / sigma*
  double a2;  // (m1 - m2) rho1* rho2* / sigma*
  double a3;  // m1 m2 rho1* rho2* / sigma*
  double a4;  // rho1* rho2* / (p* rho*)
  double sigma_rho_star;
  double p_star;
};

EquilibriumCoefficients equilibrium_coefficients(double rho1_star,
                                                 double rho2_star,
                                                 const MixtureParams& params);

}  // namespace mixtura
