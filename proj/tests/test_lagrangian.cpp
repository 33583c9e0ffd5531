#include <doctest.h>

#include <cmath>
#include <random>

#include "mixtura/errors.hpp"
#include "mixtura/experiments.hpp"
#include "mixtura/lagrangian.hpp"

using namespace mixtura;
using namespace mixtura::lagrangian;

namespace {

VelocityHistory zero_history() {
  auto z = [](double, double) { return 0.0; };
  return {z, z, z};
}

// time-independent v = g(y) with g = beta sin(pi y)
VelocityHistory steady(double beta) {
  const double pi = std::acos(-1.0);
  return {[=](double y, double) { return beta * std::sin(pi * y); },
          [=](double y, double) { return beta * pi * std::cos(pi * y); },
          [=](double y, double) { return -beta * pi * pi * std::sin(pi * y); }};
}

Profile smooth(double a, double w, double base = 0.0) {
  return {[=](double y) { return base + a * std::cos(w * y); },
          [=](double y) { return -a * w * std::sin(w * y); },
          [=](double y) { return -a * w * w * std::cos(w * y); }};
}

}  // namespace

TEST_CASE("Simpson quadrature is fourth order") {
  auto f = [](double s) { return std::sin(s); };
  const double exact = 1.0 - std::cos(2.0);
  const double e8 = std::abs(simpson(f, 2.0, 8) - exact);
  const double e16 = std::abs(simpson(f, 2.0, 16) - exact);
  CHECK(e8 / e16 > 14.0);
  CHECK(e8 / e16 < 18.0);
}

TEST_CASE("flow map") {
  CHECK(flow_map(zero_history(), 0.3, 1.0) == 0.3);
  auto c = [](double, double) { return 0.25; };
  auto z = [](double, double) { return 0.0; };
  CHECK(flow_map({c, z, z}, 0.3, 2.0) == doctest::Approx(0.8).epsilon(1e-15));
  auto s = [](double, double t) { return std::sin(t); };
  const double exact = 0.3 + 1.0 - std::cos(1.5);
  CHECK(std::abs(flow_map({s, z, z}, 0.3, 1.5, 64) - exact) <= 1e-8);
}

TEST_CASE("deformation accumulator") {
  const auto zero = accumulate_kv(zero_history(), 0.5, 1.0);
  CHECK(zero.k == 0.0);
  CHECK(zero.within_bound());

  const double alpha = 0.2;
  auto lin = [=](double y, double) { return alpha * y; };
  auto grad = [=](double, double) { return alpha; };
  auto z = [](double, double) { return 0.0; };
  const VelocityHistory h{lin, grad, z};
  const auto a = accumulate_kv(h, 0.7, 1.5);
  CHECK(a.k == doctest::Approx(alpha * 1.5).epsilon(1e-14));
  CHECK(a.within_bound());
  CHECK_NOTHROW(a.require_small());

  const auto b = accumulate_kv(h, 0.7, 3.0, 64, 0.5);
  CHECK_FALSE(b.within_bound());
  CHECK_THROWS_AS(b.require_small(), SmallnessViolation);
}

TEST_CASE("V0 matrix") {
  CHECK(v0_matrix(Eigen::MatrixXd::Zero(3, 3)).isZero(0.0));
  CHECK(v0_scalar(0.5) == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
  Eigen::MatrixXd k1(1, 1);
  k1 << 0.5;
  CHECK(v0_matrix(k1)(0, 0) == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));

  std::mt19937_64 rng(4);
  std::uniform_real_distribution<double> d(-1, 1);
  for (int trial = 0; trial < 100; ++trial) {
    Eigen::MatrixXd k(2, 2);
    k << d(rng), d(rng), d(rng), d(rng);
    k *= 0.45 / k.lpNorm<Eigen::Infinity>();
    const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(2, 2);
    const Eigen::MatrixXd prod = (I + v0_matrix(k)) * (I + k);
    CHECK((prod - I).cwiseAbs().maxCoeff() <= 1e-13);
  }

  Eigen::MatrixXd sing(2, 2);
  sing << -1, 0, 0, 0.2;
  CHECK_THROWS_AS(v0_matrix(sing), SingularMatrixError);
}

TEST_CASE("transformed derivatives on an affine flow") {
  // x = (1 + alpha t) y, f(x) = x^2, u(x) = x^2
  const double alpha = 0.3, t = 0.8, y = 0.6;
  const double stretch = 1.0 + alpha * t;
  const double x = stretch * y;
  Eigen::MatrixXd k(1, 1);
  k << alpha * t;
  Eigen::VectorXd gy(1);
  gy << 2.0 * stretch * stretch * y;
  CHECK(std::abs(transform_gradient(gy, k)[0] - 2.0 * x) <= 1e-12);
  CHECK(transform_gradient(gy, Eigen::MatrixXd::Zero(1, 1))[0] == gy[0]);

  Eigen::MatrixXd gu(1, 1);
  gu << 2.0 * stretch * stretch * y;
  CHECK(std::abs(transform_divergence(gu, k) - 2.0 * x) <= 1e-12);
}

TEST_CASE("2-D affine chain rule") {
  // x = (I + t B) y, f(x) = x1^2 + 3 x1 x2
  Eigen::Matrix2d B;
  B << 0.2, -0.1, 0.05, 0.15;
  const double t = 0.9;
  const Eigen::Matrix2d J = Eigen::Matrix2d::Identity() + t * B;  // dx/dy
  const Eigen::Vector2d y(0.4, -0.7);
  const Eigen::Vector2d x = J * y;
  const Eigen::Vector2d grad_x(2 * x[0] + 3 * x[1], 3 * x[0]);
  const Eigen::Vector2d grad_y = J.transpose() * grad_x;
  // k_ij = d x_j / d y_i - delta_ij
  const Eigen::MatrixXd k = (t * B).transpose();
  const Eigen::VectorXd got = transform_gradient(grad_y, k);
  CHECK((got - grad_x).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("second derivative transform on a nonlinear flow") {
  // v = g(y) steady, so x = y + t g(y); f(x) = exp(x)
  const double beta = 0.2, t = 0.7, pi = std::acos(-1.0);
  for (double y : {0.1, 0.45, 0.8}) {
    const double g1 = beta * pi * std::cos(pi * y);
    const double g2 = -beta * pi * pi * std::sin(pi * y);
    const double x = y + t * beta * std::sin(pi * y);
    const double jac = 1.0 + t * g1;
    const double f_y = std::exp(x) * jac;
    const double f_yy = std::exp(x) * jac * jac + std::exp(x) * t * g2;
    const double got = transform_second_derivative(f_y, f_yy, t * g1, t * g2);
    CHECK(std::abs(got - std::exp(x)) <= 1e-12);
  }
}

TEST_CASE("remainders vanish for a zero velocity history") {
  const MixtureParams p(1, 2, 0.1, 0.1);
  const LagrangianState s{smooth(0.1, 3.0, 2.0), smooth(0.05, 2.0), zero_history(), 0.5};
  const auto r = remainders_at(s, 0.3, p);
  CHECK(r.r1 == 0.0);
  CHECK(r.r2 == 0.0);
  CHECK(r.r3 == 0.0);
  const auto b = boundary_remainder(s, 1.0);
  CHECK(b[0] == 0.0);
  CHECK(b[1] == 0.0);
}

TEST_CASE("continuity remainder matches the direct formula") {
  const MixtureParams p(1, 2, 0.1, 0.1);
  std::mt19937_64 rng(8);
  std::uniform_real_distribution<double> d(0.01, 0.1);
  for (int trial = 0; trial < 20; ++trial) {
    const double beta = d(rng), a = d(rng), t = 0.5;
    const LagrangianState s{smooth(a, 4.0, 2.0), smooth(a, 2.0), steady(beta), t};
    const double y = 0.37;
    const double pi = std::acos(-1.0);
    const double k = t * beta * pi * std::cos(pi * y);
    const double expected = -(2.0 + a * std::cos(4.0 * y)) * (-k / (1.0 + k)) * beta * pi * std::cos(pi * y);
    CHECK(std::abs(remainders_at(s, y, p).r1 - expected) <= 1e-12);
  }
}

TEST_CASE("viscous remainder equals the transformed second derivative defect") {
  const MixtureParams p(1, 2, 0.3, 0.2);
  const double beta = 0.05, t = 0.6, pi = std::acos(-1.0);
  const LagrangianState s{smooth(0.0, 1.0, 2.0), smooth(0.0, 1.0), steady(beta), t};
  const double y = 0.3;
  const double g1 = beta * pi * std::cos(pi * y);
  const double g2 = -beta * pi * pi * std::sin(pi * y);
  const double xx = transform_second_derivative(g1, g2, t * g1, t * g2);
  CHECK(std::abs(remainders_at(s, y, p).r2 - 0.5 * (xx - g2)) <= 1e-12);
}

TEST_CASE("boundary remainder uses outward normals") {
  const double beta = 0.05, t = 0.5, pi = std::acos(-1.0);
  const LagrangianState s{smooth(0.0, 1.0, 2.0), {[](double y) { return y; }, [](double) { return 1.0; },
                                             [](double) { return 0.0; }},
                          steady(beta), t};
  const auto b = boundary_remainder(s, 1.0);
  const double k0 = t * beta * pi, k1 = -t * beta * pi;
  CHECK(std::abs(b[0] - v0_scalar(k0)) <= 1e-12);
  CHECK(std::abs(b[1] + v0_scalar(k1)) <= 1e-12);
}

TEST_CASE("remainders require the smallness condition") {
  const MixtureParams p(1, 2, 0.1, 0.1);
  const LagrangianState s{smooth(0.1, 1.0, 2.0), smooth(0.1, 1.0), steady(1.0), 1.0};
  CHECK_THROWS_AS(remainders_at(s, 0.1, p), SmallnessViolation);
}

TEST_CASE("remainders are quadratically small") {
  const MixtureParams p(1, 2, 0.1, 0.1);
  const auto suite = lagrangian_suite(p, 1.0, 1.0, 1.0, {1e-2, 5e-3, 2.5e-3}, 0.5, 64, 0.5);
  for (double s : suite.slopes) CHECK(s >= 1.9);
  CHECK(suite.zero_history_max == 0.0);
  CHECK(suite.inverse_identity_error <= 1e-13);
  CHECK(suite.smallness_flagged);
}
