#pragma once

#include <Eigen/Dense>
#include <array>
#include <functional>

#include "mixtura/model.hpp"

namespace mixtura::lagrangian {

/// Default smallness bound on the accumulated deformation.
inline constexpr double kDefaultDelta = 0.5;
inline constexpr int kDefaultQuadrature = 64;

/// Composite Simpson rule on [0, t] with n (even) panels.
double simpson(const std::function<double(double)>& f, double t, int n);

/// 1-D velocity history in reference coordinates with its y-derivatives.
struct VelocityHistory {
  std::function<double(double y, double s)> v;
  std::function<double(double y, double s)> v_y;
  std::function<double(double y, double s)> v_yy;
};

/// x = y + int_0^t v(y, s) ds.
double flow_map(const VelocityHistory& h, double y, double t,
                int n_quad = kDefaultQuadrature);

/// k = int_0^t dv/dy ds at a point, with its y-derivative and the
/// accumulated magnitude int_0^t |dv/dy| ds used by the smallness check.
struct DeformationAccumulator {
  double k = 0.0;
  double k_y = 0.0;
  double accumulated = 0.0;
  double delta_bound = kDefaultDelta;

  bool within_bound() const noexcept { return accumulated <= delta_bound; }
  /// Throws SmallnessViolation when the bound does not hold.
  void require_small() const;
};

DeformationAccumulator accumulate_kv(const VelocityHistory& h, double y,
                                     double t, int n_quad = kDefaultQuadrature,
                                     double delta = kDefaultDelta);

/// N-dimensional history of the velocity gradient, G_ij = d v_j / d y_i.
using GradientHistory =
    std::function<Eigen::MatrixXd(const Eigen::VectorXd& y, double s)>;

/// k_ij = int_0^t d v_j / d y_i ds (componentwise Simpson).
Eigen::MatrixXd accumulate_k(const GradientHistory& g, const Eigen::VectorXd& y,
                             double t, int n_quad = kDefaultQuadrature);

/// V0(k) = (I + k)^{-1} - I. Throws SingularMatrixError if I + k is singular.
Eigen::MatrixXd v0_matrix(const Eigen::MatrixXd& k);
/// Scalar case, V0 = -k / (1 + k).
double v0_scalar(double k);
/// dV0/dk in 1-D, -1 / (1 + k)^2.
double v0_derivative(double k);

/// grad_x f = (I + V0(k)) grad_y f~.
Eigen::VectorXd transform_gradient(const Eigen::VectorXd& grad_y,
                                   const Eigen::MatrixXd& k);
/// div_x u = sum_ij (I + V0)_ji d u~_j / d y_i, with grad_y_u(i, j) = d u~_j / d y_i.
double transform_divergence(const Eigen::MatrixXd& grad_y_u,
                            const Eigen::MatrixXd& k);
/// d^2 f / dx^2 in 1-D from y-derivatives of f~ and of k.
double transform_second_derivative(double f_y, double f_yy, double k,
                                   double k_y);

/// Value and first two y-derivatives of a scalar profile.
struct Profile {
  std::function<double(double)> f, f_y, f_yy;
};

/// The unknowns U = (eta, v, theta) at time t in reference coordinates: total
/// density, velocity and h.
/// The velocity is read from the history at s = t.
struct LagrangianState {
  Profile eta;
  Profile theta;
  VelocityHistory velocity;
  double t = 0.0;
};

struct Remainders {
  double r1 = 0.0;
  double r2 = 0.0;
  double r3 = 0.0;
};

/// R1..R3 at an interior point y (1-D specialization).
Remainders remainders_at(const LagrangianState& u, double y,
                         const MixtureParams& params,
                         int n_quad = kDefaultQuadrature,
                         double delta = kDefaultDelta);

/// R4 = -n V0 dtheta/dy at the endpoints y = 0 (n = -1) and y = L (n = +1).
std::array<double, 2> boundary_remainder(const LagrangianState& u,
                                         double length,
                                         int n_quad = kDefaultQuadrature,
                                         double delta = kDefaultDelta);

/// Max-norms of R1..R3 over `samples` interior points and of R4 over both ends.
std::array<double, 4> remainder_norms(const LagrangianState& u, double length,
                                      const MixtureParams& params, int samples,
                                      int n_quad = kDefaultQuadrature,
                                      double delta = kDefaultDelta);

}  // namespace mixtura::lagrangian
