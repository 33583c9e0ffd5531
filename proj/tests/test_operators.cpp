#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "mixtura/errors.hpp"
#include "mixtura/operators.hpp"

using namespace mixtura;

namespace {

constexpr double kPi = std::numbers::pi;

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double periodic_gradient_error(int n) {
  const Grid1D g(n, 1.0, Boundary::periodic);
  const Field f = sample(g, Location::cell, [](double x) { return std::sin(2 * kPi * x); });
  const auto d = gradient_op(g).apply(f.values);
  double err = 0.0;
  for (int j = 0; j < n; ++j) {
    err = std::max(err, std::abs(d[j] - 2 * kPi * std::cos(2 * kPi * g.cell_center(j))));
  }
  return err;
}

double laplacian_error(int n) {
  const Grid1D g(n, 1.0, Boundary::wall);
  const Field f = sample(g, Location::node, [](double x) { return std::sin(kPi * x); });
  const auto d = apply_dirichlet_zero(node_laplacian_op(g), g);
  const std::vector<double> inner(f.values.begin() + 1, f.values.end() - 1);
  const auto r = d.apply(inner);
  double err = 0.0;
  for (int i = 0; i < n - 1; ++i) {
    err = std::max(err, std::abs(r[i] + kPi * kPi * std::sin(kPi * g.node(i + 1))));
  }
  return err;
}

double wall_diffusion_error(int n) {
  // gamma = 1 + x/2, f = cos(pi x): zero slope at both walls
  const Grid1D g(n, 1.0, Boundary::wall);
  const Field gamma = sample(g, Location::cell, [](double x) { return 1.0 + 0.5 * x; });
  const Field f = sample(g, Location::cell, [](double x) { return std::cos(kPi * x); });
  const auto r = variable_diffusion_op(gamma).apply(f.values);
  double err = 0.0;
  for (int j = 0; j < n; ++j) {
    const double x = g.cell_center(j);
    const double exact = -0.5 * kPi * std::sin(kPi * x) - (1.0 + 0.5 * x) * kPi * kPi * std::cos(kPi * x);
    err += (r[j] - exact) * (r[j] - exact) * g.dx();
  }
  return std::sqrt(err);
}

}  // namespace

TEST_CASE("grid layout") {
  const Grid1D w(16, 2.0, Boundary::wall);
  CHECK(w.nodes() == 17);
  CHECK(w.dx() * w.cells() == 2.0);
  CHECK_FALSE(w.node_is_free(0));
  CHECK_FALSE(w.node_is_free(16));
  CHECK(w.node_is_free(8));
  CHECK(w.cell_left_of_node(0) == -1);
  CHECK(w.cell_right_of_node(16) == -1);

  const Grid1D p(16, 2.0, Boundary::periodic);
  CHECK(p.nodes() == 16);
  CHECK(p.right_node(15) == 0);
  CHECK(p.cell_left_of_node(0) == 15);

  CHECK_THROWS_AS(Grid1D(4, 1.0, Boundary::wall), DomainError);
  CHECK_THROWS_AS(Grid1D(16, 0.0, Boundary::wall), DomainError);
}

TEST_CASE("gradient annihilates constants") {
  for (auto bc : {Boundary::wall, Boundary::periodic}) {
    const Grid1D g(20, 1.0, bc);
    const std::vector<double> one(g.cells(), 1.0);
    CHECK(max_abs(gradient_op(g).apply(one)) <= 1e-12);
    const std::vector<double> one_n(g.nodes(), 1.0);
    CHECK(max_abs(gradient_op(g, Location::node).apply(one_n)) <= 1e-12);
  }
}

TEST_CASE("gradient is exact for linear functions on wall grids") {
  const Grid1D g(24, 3.0, Boundary::wall);
  const Field f = sample(g, Location::node, [](double x) { return x; });
  for (double d : gradient_op(g, Location::node).apply(f.values)) {
    CHECK(std::abs(d - 1.0) <= 1e-12);
  }
}

TEST_CASE("gradient and laplacian converge at second order") {
  const double rg = periodic_gradient_error(32) / periodic_gradient_error(64);
  CHECK(rg >= 3.6);
  CHECK(rg <= 4.4);
  const double rl = laplacian_error(32) / laplacian_error(64);
  CHECK(rl >= 3.6);
  CHECK(rl <= 4.4);
  const double rd = wall_diffusion_error(32) / wall_diffusion_error(64);
  CHECK(rd >= 3.6);
  CHECK(rd <= 4.4);
}

TEST_CASE("face gradient and divergence are adjoint") {
  for (auto bc : {Boundary::wall, Boundary::periodic}) {
    const Grid1D g(12, 1.0, bc);
    const Eigen::MatrixXd G = face_gradient_op(g).dense();
    const Eigen::MatrixXd D = node_divergence_op(g).dense();
    CHECK((D + G.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
  }
}

TEST_CASE("conservative divergence telescopes") {
  const Grid1D g(40, 1.0, Boundary::wall);
  std::vector<double> zero(g.nodes(), 0.0);
  CHECK(max_abs(divergence_conservative(zero, g).values) == 0.0);

  std::vector<double> flux(g.nodes());
  for (int i = 0; i < g.nodes(); ++i) flux[i] = std::sin(3.0 * i) + 0.1 * i;
  const double sum = integrate(divergence_conservative(flux, g));
  CHECK(std::abs(sum - (flux.back() - flux.front())) <= 1e-13);

  flux.front() = 0.0;
  flux.back() = 0.0;
  CHECK(std::abs(integrate(divergence_conservative(flux, g))) <= 1e-15);

  const Grid1D p(40, 1.0, Boundary::periodic);
  std::vector<double> pf(p.nodes());
  for (int i = 0; i < p.nodes(); ++i) pf[i] = std::cos(1.7 * i);
  CHECK(std::abs(integrate(divergence_conservative(pf, p))) <= 1e-15);

  CHECK_THROWS_AS(divergence_conservative(std::vector<double>(3), g), DomainError);
}

TEST_CASE("variable diffusion with unit coefficient is the standard stencil") {
  const Grid1D g(10, 1.0, Boundary::periodic);
  const Field one(g, Location::cell, std::vector<double>(10, 1.0));
  const Eigen::MatrixXd A = variable_diffusion_op(one).dense();
  const double inv = 1.0 / (g.dx() * g.dx());
  for (int j = 0; j < 10; ++j) {
    CHECK(A(j, j) == doctest::Approx(-2 * inv));
    CHECK(A(j, (j + 1) % 10) == doctest::Approx(inv));
    CHECK(A(j, (j + 9) % 10) == doctest::Approx(inv));
  }
}

TEST_CASE("Neumann diffusion is symmetric negative semidefinite") {
  const Grid1D g(32, 1.0, Boundary::wall);
  const Field gamma = sample(g, Location::cell, [](double x) { return 1.0 + 0.3 * std::sin(5 * x); });
  const Eigen::MatrixXd A = variable_diffusion_op(gamma).dense();
  CHECK((A - A.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
  CHECK(A.rowwise().sum().cwiseAbs().maxCoeff() <= 1e-9);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
  REQUIRE(es.info() == Eigen::Success);
  CHECK(es.eigenvalues().maxCoeff() <= 1e-12);

  const Field uniform(g, Location::cell, std::vector<double>(32, 1.0));
  const Eigen::MatrixXd B = variable_diffusion_op(uniform).dense();
  CHECK((B - B.transpose()).cwiseAbs().maxCoeff() <= 1e-12);
}

TEST_CASE("Dirichlet diffusion closure") {
  const Grid1D g(16, 1.0, Boundary::wall);
  const Field one(g, Location::cell, std::vector<double>(16, 1.0));
  const Eigen::MatrixXd A = variable_diffusion_op(one, false).dense();
  const double inv = 1.0 / (g.dx() * g.dx());
  CHECK(A(0, 0) == doctest::Approx(-3 * inv));
  CHECK(A(15, 15) == doctest::Approx(-3 * inv));
  CHECK_THROWS_AS(variable_diffusion_op(Field(g, Location::node)), DomainError);
}

TEST_CASE("Dirichlet boundary helpers") {
  const Grid1D g(16, 1.0, Boundary::wall);
  Field u(g, Location::node, std::vector<double>(g.nodes(), 0.7));
  const auto r = dirichlet_residual(u);
  CHECK(r[0] == 0.7);
  CHECK(r[1] == 0.7);
  apply_dirichlet_zero(u);
  CHECK(dirichlet_residual(u)[0] == 0.0);
  CHECK(dirichlet_residual(u)[1] == 0.0);
  CHECK(u[8] == 0.7);

  const auto L = apply_dirichlet_zero(node_laplacian_op(g), g);
  CHECK(L.rows() == g.nodes() - 2);
  CHECK(L.cols() == g.nodes() - 2);
}

TEST_CASE("Neumann boundary helpers") {
  const Grid1D g(32, 1.0, Boundary::wall);
  const Field c(g, Location::cell, std::vector<double>(32, 2.5));
  const auto rc = neumann_residual(c);
  CHECK(std::abs(rc[0]) <= 1e-12);
  CHECK(std::abs(rc[1]) <= 1e-12);

  const Field lin = sample(g, Location::cell, [](double x) { return 3.0 * x; });
  const auto rl = neumann_residual(lin);
  CHECK(rl[0] == doctest::Approx(-3.0));
  CHECK(rl[1] == doctest::Approx(3.0));

  // f = x^2 (1 - x)^2 has zero slope at both ends
  auto residual = [](int n) {
    const Grid1D gg(n, 1.0, Boundary::wall);
    const Field q = sample(gg, Location::cell, [](double x) { return x * x * (1 - x) * (1 - x); });
    const auto r = neumann_residual(q);
    return std::max(std::abs(r[0]), std::abs(r[1]));
  };
  CHECK(residual(32) <= 2e-2);
  CHECK(residual(32) / residual(64) >= 3.6);

  const auto ghosts = apply_neumann_zero(lin);
  REQUIRE(ghosts.size() == 34);
  CHECK(ghosts.front() == lin[0]);
  CHECK(ghosts.back() == lin[31]);

  const Field one(g, Location::cell, std::vector<double>(32, 1.0));
  const auto folded = variable_diffusion_op(one, true);
  CHECK(max_abs(folded.apply(c.values)) <= 1e-9);
  CHECK_THROWS_AS(apply_neumann_zero(folded), DomainError);
}

TEST_CASE("operator size mismatch is reported") {
  const Grid1D g(16, 1.0, Boundary::wall);
  CHECK_THROWS_AS(gradient_op(g).apply(std::vector<double>(5)), DomainError);
}
