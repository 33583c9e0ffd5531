#include "mixtura/lagrangian.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mixtura/errors.hpp"

namespace mixtura::lagrangian {

double simpson(const std::function<double(double)>& f, double t, int n) {
  if (n < 2 || n % 2 != 0) {
    throw DomainError("Simpson rule needs an even panel count >= 2");
  }
  if (t == 0.0) return 0.0;
  const double h = t / n;
  double odd = 0.0;
  double even = 0.0;
  for (int i = 1; i < n; ++i) {
    (i % 2 ? odd : even) += f(i * h);
  }
  return h / 3.0 * (f(0.0) + 4.0 * odd + 2.0 * even + f(t));
}

double flow_map(const VelocityHistory& h, double y, double t, int n_quad) {
  return y + simpson([&](double s) { return h.v(y, s); }, t, n_quad);
}

void DeformationAccumulator::require_small() const {
  if (!within_bound()) {
    std::ostringstream os;
    os << "accumulated deformation " << accumulated << " exceeds bound "
       << delta_bound;
    throw SmallnessViolation(os.str(), accumulated, delta_bound);
  }
}

DeformationAccumulator accumulate_kv(const VelocityHistory& h, double y,
                                     double t, int n_quad, double delta) {
  DeformationAccumulator acc;
  acc.delta_bound = delta;
  acc.k = simpson([&](double s) { return h.v_y(y, s); }, t, n_quad);
  acc.k_y = simpson([&](double s) { return h.v_yy(y, s); }, t, n_quad);
  acc.accumulated = simpson([&](double s) { return std::abs(h.v_y(y, s)); }, t, n_quad);
  return acc;
}

Eigen::MatrixXd accumulate_k(const GradientHistory& g, const Eigen::VectorXd& y,
                             double t, int n_quad) {
  if (n_quad < 2 || n_quad % 2 != 0) {
    throw DomainError("Simpson rule needs an even panel count >= 2");
  }
  const Eigen::Index dim = y.size();
  Eigen::MatrixXd k = Eigen::MatrixXd::Zero(dim, dim);
  if (t == 0.0) return k;
  const double h = t / n_quad;
  for (int i = 0; i <= n_quad; ++i) {
    const double w = (i == 0 || i == n_quad) ? 1.0 : (i % 2 ? 4.0 : 2.0);
    k += w * g(y, i * h);
  }
  return k * (h / 3.0);
}

Eigen::MatrixXd v0_matrix(const Eigen::MatrixXd& k) {
  const Eigen::Index n = k.rows();
  if (k.cols() != n) throw DomainError("k must be square");
  const Eigen::MatrixXd a = Eigen::MatrixXd::Identity(n, n) + k;
  Eigen::FullPivLU<Eigen::MatrixXd> lu(a);
  if (!lu.isInvertible()) {
    throw SingularMatrixError("I + k is not invertible");
  }
  return lu.inverse() - Eigen::MatrixXd::Identity(n, n);
}

double v0_scalar(double k) {
  if (1.0 + k == 0.0) throw SingularMatrixError("1 + k = 0");
  return -k / (1.0 + k);
}

double v0_derivative(double k) {
  if (1.0 + k == 0.0) throw SingularMatrixError("1 + k = 0");
  return -1.0 / ((1.0 + k) * (1.0 + k));
}

Eigen::VectorXd transform_gradient(const Eigen::VectorXd& grad_y,
                                   const Eigen::MatrixXd& k) {
  const Eigen::MatrixXd v0 = v0_matrix(k);
  return grad_y + v0 * grad_y;
}

double transform_divergence(const Eigen::MatrixXd& grad_y_u,
                            const Eigen::MatrixXd& k) {
  const Eigen::MatrixXd a =
      Eigen::MatrixXd::Identity(k.rows(), k.cols()) + v0_matrix(k);
  double div = 0.0;
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) div += a(j, i) * grad_y_u(i, j);
  }
  return div;
}

double transform_second_derivative(double f_y, double f_yy, double k,
                                   double k_y) {
  const double v0 = v0_scalar(k);
  return (1.0 + v0) * (1.0 + v0) * f_yy + (1.0 + v0) * v0_derivative(k) * k_y * f_y;
}

namespace {

struct LocalCoefficients {
  double sigma;
  double coupling;
  double diffusivity;
  double diffusivity_y;
};

LocalCoefficients local_coefficients(const LagrangianState& u, double y,
                                     const MixtureParams& params) {
  const double eta = u.eta.f(y);
  const PointState p = phi({u.theta.f(y), eta}, params);
  const auto c = symmetrized_coefficients(p, params);
  const auto g = gradient_reconstruction(p, u.eta.f_y(y), u.theta.f_y(y), params);
  const double pr = pressure(p, params);
  const double pr_y = g.rho1 / params.m1() + g.rho2 / params.m2();
  // d log gamma4 = d log rho1 + d log rho2 - d log p - d log rho
  const double dlog = g.rho1 / p.rho1 + g.rho2 / p.rho2 - pr_y / pr -
                      (g.rho1 + g.rho2) / eta;
  return {c.sigma, c.coupling, c.diffusivity, c.diffusivity * dlog};
}

}  // namespace

Remainders remainders_at(const LagrangianState& u, double y,
                         const MixtureParams& params, int n_quad, double delta) {
  const auto acc = accumulate_kv(u.velocity, y, u.t, n_quad, delta);
  acc.require_small();
  const double v0 = v0_scalar(acc.k);
  const double dv0 = v0_derivative(acc.k) * acc.k_y;
  const double quad = 2.0 * v0 + v0 * v0;

  const double v_y = u.velocity.v_y(y, u.t);
  const double v_yy = u.velocity.v_yy(y, u.t);
  const double eta = u.eta.f(y);
  const double eta_y = u.eta.f_y(y);
  const double th_y = u.theta.f_y(y);
  const double th_yy = u.theta.f_yy(y);
  const auto c = local_coefficients(u, y, params);

  Remainders r;
  r.r1 = -eta * v0 * v_y;
  r.r2 = params.viscosity_1d() * (quad * v_yy + (1.0 + v0) * dv0 * v_y) -
         eta / c.sigma * v0 * eta_y - c.coupling * v0 * th_y;
  r.r3 = c.diffusivity * (quad * th_yy + (1.0 + v0) * dv0 * th_y) +
         quad * c.diffusivity_y * th_y - c.coupling * v0 * v_y;
  return r;
}

std::array<double, 2> boundary_remainder(const LagrangianState& u,
                                         double length, int n_quad,
                                         double delta) {
  std::array<double, 2> out{};
  const double ends[2] = {0.0, length};
  const double normals[2] = {-1.0, 1.0};
  for (int e = 0; e < 2; ++e) {
    const auto acc = accumulate_kv(u.velocity, ends[e], u.t, n_quad, delta);
    acc.require_small();
    out[e] = -normals[e] * v0_scalar(acc.k) * u.theta.f_y(ends[e]);
  }
  return out;
}

std::array<double, 4> remainder_norms(const LagrangianState& u, double length,
                                      const MixtureParams& params, int samples,
                                      int n_quad, double delta) {
  std::array<double, 4> norms{};
  for (int i = 0; i < samples; ++i) {
    const double y = (i + 0.5) * length / samples;
    const auto r = remainders_at(u, y, params, n_quad, delta);
    norms[0] = std::max(norms[0], std::abs(r.r1));
    norms[1] = std::max(norms[1], std::abs(r.r2));
    norms[2] = std::max(norms[2], std::abs(r.r3));
  }
  const auto b = boundary_remainder(u, length, n_quad, delta);
  norms[3] = std::max(std::abs(b[0]), std::abs(b[1]));
  return norms;
}

}  // namespace mixtura::lagrangian
