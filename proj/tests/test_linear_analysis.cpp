#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <bit>
#include <cmath>
#include <numbers>

#include "mixtura/errors.hpp"
#include "mixtura/linear_analysis.hpp"

using namespace mixtura;

namespace {

const MixtureParams kParams(1, 2, 0.1, 0.1);

Eigen::MatrixXd theta_block(const LinearizedOperator& op) {
  const Eigen::MatrixXd A(op.matrix);
  return A.block(op.theta(0), op.theta(0), op.n_theta(), op.n_theta());
}

double max_real_part(const SpectrumReport& s) {
  double m = -std::numeric_limits<double>::infinity();
  for (const auto& l : s.eigenvalues) {
    if (std::abs(l) >= s.zero_threshold) m = std::max(m, l.real());
  }
  return m;
}

}  // namespace

TEST_CASE("operator dimensions") {
  const auto a = equilibrium_coefficients(1, 1, kParams);
  const auto w = assemble_constant(a, kParams, Grid1D(16, 1.0, Boundary::wall));
  CHECK(w.size() == 16 + 15 + 16);
  CHECK(w.matrix.rows() == w.size());
  const auto p = assemble_constant(a, kParams, Grid1D(16, 1.0, Boundary::periodic));
  CHECK(p.size() == 48);
}

TEST_CASE("zero coupling decouples the theta block") {
  auto a = equilibrium_coefficients(1, 1, kParams);
  a.a2 = 0.0;
  const auto op = assemble_constant(a, kParams, Grid1D(16, 1.0, Boundary::wall));
  const Eigen::MatrixXd A(op.matrix);
  const int t0 = op.theta(0), nt = op.n_theta();
  CHECK(A.block(t0, 0, nt, t0).isZero(0.0));
  CHECK(A.block(0, t0, t0, nt).isZero(0.0));
}

TEST_CASE("conserved modes on a wall grid") {
  const auto a = equilibrium_coefficients(1, 1, kParams);
  const auto op = assemble_constant(a, kParams, Grid1D(32, 1.0, Boundary::wall));
  const auto modes = conserved_modes(op);
  CHECK(modes.size() == 2);
  for (const auto& k : modes) {
    const Eigen::VectorXd r = op.matrix * k;
    CHECK(r.cwiseAbs().maxCoeff() <= 1e-13);
  }
  const auto s = spectrum(op);
  CHECK(s.zero_mode_count == 2);
  CHECK(s.expected_zero_modes == 2);
  CHECK(s.kernel_residual <= 1e-13);
  CHECK(s.eigenvalues.size() == static_cast<std::size_t>(op.size()));
  CHECK(max_real_part(s) < 0.0);
  CHECK(s.decay_rate > 0.0);
  CHECK(s.decay_rate == doctest::Approx(-s.spectral_abscissa_mean_zero));
}

TEST_CASE("conserved modes on a periodic grid") {
  const auto a = equilibrium_coefficients(1, 1, kParams);
  const auto op = assemble_constant(a, kParams, Grid1D(32, 1.0, Boundary::periodic));
  const auto s = spectrum(op);
  CHECK(s.zero_mode_count == 3);
  CHECK(s.expected_zero_modes == 3);
  CHECK(s.decay_rate > 0.0);
}

TEST_CASE("decoupled theta block follows the diffusion symbol") {
  auto a = equilibrium_coefficients(1, 1, kParams);
  a.a2 = 0.0;
  const double L = 1.0;
  auto low_mode_error = [&](int n) {
    const auto op = assemble_constant(a, kParams, Grid1D(n, L, Boundary::periodic));
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(theta_block(op));
    Eigen::VectorXd ev = es.eigenvalues();  // ascending; zero mode last
    std::sort(ev.data(), ev.data() + ev.size(), [](double x, double y) { return x > y; });
    double err = 0.0;
    // each k >= 1 appears twice (cos and sin)
    for (int k = 1; k <= 3; ++k) {
      const double exact = -(a.a4 / a.a3) * std::pow(2 * std::numbers::pi * k / L, 2);
      for (int c = 0; c < 2; ++c) {
        err = std::max(err, std::abs(ev[2 * k - 1 + c] / exact - 1.0));
      }
    }
    CHECK(std::abs(ev[0]) <= 1e-10);
    return err;
  };
  const double e32 = low_mode_error(32);
  const double e64 = low_mode_error(64);
  CHECK(e32 <= 0.05);
  CHECK(e32 / e64 >= 3.6);
  CHECK(e32 / e64 <= 4.4);
}

TEST_CASE("constant fields reproduce the constant operator bitwise") {
  for (auto bc : {Boundary::wall, Boundary::periodic}) {
    const Grid1D g(24, 1.0, bc);
    const auto a = equilibrium_coefficients(0.7, 1.4, kParams);
    const auto c = spatial_coefficients(std::vector<double>(24, 0.7), std::vector<double>(24, 1.4), kParams);
    const Eigen::MatrixXd A(assemble_constant(a, kParams, g).matrix);
    const Eigen::MatrixXd B(assemble_variable(c, kParams, g).matrix);
    REQUIRE(A.rows() == B.rows());
    bool same = true;
    for (int i = 0; i < A.rows(); ++i) {
      for (int j = 0; j < A.cols(); ++j) {
        same = same && std::bit_cast<std::uint64_t>(A(i, j)) == std::bit_cast<std::uint64_t>(B(i, j));
      }
    }
    CHECK(same);
  }
}

TEST_CASE("modulated coefficients keep the spectrum in the left half-plane") {
  const Grid1D g(32, 1.0, Boundary::wall);
  std::vector<double> r1(32), r2(32);
  for (int j = 0; j < 32; ++j) {
    const double x = g.cell_center(j);
    r1[j] = 1.0 + 0.1 * std::cos(std::numbers::pi * x);
    r2[j] = 1.0 - 0.1 * std::sin(2 * std::numbers::pi * x);
  }
  const auto op = assemble_variable(spatial_coefficients(r1, r2, kParams), kParams, g);
  CHECK(op.provenance == LinearizedOperator::Provenance::variable);
  const auto s = spectrum(op);
  CHECK(s.zero_mode_count == 2);
  CHECK(max_real_part(s) < 0.0);

  // the theta diffusion block conserves under zero-flux walls
  auto a = spatial_coefficients(r1, r2, kParams);
  std::fill(a.gamma2.begin(), a.gamma2.end(), 0.0);
  const auto dec = assemble_variable(a, kParams, g);
  const Eigen::MatrixXd T = theta_block(dec);
  // column sums vanish after weighting by the capacity
  for (int j = 0; j < 32; ++j) {
    double sum = 0.0;
    for (int i = 0; i < 32; ++i) sum += a.gamma3[i] * T(i, j);
    CHECK(std::abs(sum) <= 1e-10);
  }
}

TEST_CASE("variable assembly rejects nonpositive coefficients") {
  const Grid1D g(16, 1.0, Boundary::wall);
  auto c = spatial_coefficients(std::vector<double>(16, 1.0), std::vector<double>(16, 1.0), kParams);
  c.gamma4[3] = -1.0;
  CHECK_THROWS_AS(assemble_variable(c, kParams, g), DomainError);
}

TEST_CASE("energy identity") {
  const auto a = equilibrium_coefficients(1, 1, kParams);
  for (auto bc : {Boundary::wall, Boundary::periodic}) {
    const auto op = assemble_constant(a, kParams, Grid1D(64, 1.0, bc));
    CHECK(energy(op, Eigen::VectorXd::Zero(op.size())) == 0.0);
    const auto rep = energy_dissipation_check(op, a, kParams, 100, 7);
    CHECK(rep.trials == 100);
    CHECK(rep.max_relative_residual <= 1e-11);
    CHECK(rep.all_dissipative);
    CHECK(rep.max_energy_rate <= 0.0);
  }
}

TEST_CASE("linear march energy is monotone and matches the spectral rate") {
  const auto a = equilibrium_coefficients(1, 1, kParams);
  const auto op = assemble_constant(a, kParams, Grid1D(32, 1.0, Boundary::wall));
  const auto s = spectrum(op);
  const auto m = march_linear(op, linear_mode_state(op, 1, 1e-2), 0.01, 10.0, 10);
  for (std::size_t i = 1; i < m.energy_norm.size(); ++i) {
    CHECK(m.energy_norm[i] <= m.energy_norm[i - 1] * (1 + 1e-14));
  }
  const auto fit = fit_decay(m.t, m.energy_norm);
  CHECK(fit.rate == doctest::Approx(s.decay_rate).epsilon(0.05));
}

TEST_CASE("decay fit recovers an exponential") {
  std::vector<double> t, y;
  for (int i = 0; i <= 50; ++i) {
    t.push_back(0.1 * i);
    y.push_back(3.0 * std::exp(-0.7 * t.back()));
  }
  const auto f = fit_decay(t, y);
  CHECK(f.rate == doctest::Approx(0.7).epsilon(1e-12));
  CHECK(std::exp(f.intercept) == doctest::Approx(3.0).epsilon(1e-10));
  CHECK(f.r_squared == doctest::Approx(1.0));
}
