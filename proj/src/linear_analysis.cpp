#include "mixtura/linear_analysis.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <random>

#include "mixtura/dynamics.hpp"
#include "mixtura/errors.hpp"

namespace mixtura {

namespace {

using Triplet = Eigen::Triplet<double>;

int wrap(int i, int n) { return ((i % n) + n) % n; }

// Coefficient access: cell values and their node (face) averages.
struct ConstantCoefficients {
  double a0, a1, a2, a3, a4;
  double rho_cell(int) const { return a0; }
  double rho_node(int) const { return a0; }
  double g1_node(int) const { return a1; }
  double g2_node(int) const { return a2; }
  double g2_cell(int) const { return a2; }
  double g3_cell(int) const { return a3; }
  double g4_face(int, int) const { return a4; }
  double w_zeta(int) const { return a1 / a0; }
};

struct FieldCoefficients {
  const SpatialCoefficients& c;
  const Grid1D& g;
  double avg(const std::vector<double>& f, int node) const {
    return 0.5 * (f[g.cell_left_of_node(node)] + f[g.cell_right_of_node(node)]);
  }
  double rho_cell(int j) const { return c.rho0[j]; }
  double rho_node(int i) const { return avg(c.rho0, i); }
  double g1_node(int i) const { return avg(c.gamma1, i); }
  double g2_node(int i) const { return avg(c.gamma2, i); }
  double g2_cell(int j) const { return c.gamma2[j]; }
  double g3_cell(int j) const { return c.gamma3[j]; }
  double g4_face(int l, int r) const { return 0.5 * (c.gamma4[l] + c.gamma4[r]); }
  double w_zeta(int j) const { return c.gamma1[j] / c.rho0[j]; }
};

template <typename Coef>
LinearizedOperator assemble(const Coef& k, double visc, const Grid1D& g,
                            LinearizedOperator::Provenance prov) {
  LinearizedOperator op(g);
  op.provenance = prov;
  std::vector<int> slot(g.nodes(), -1);
  for (int i = 0; i < g.nodes(); ++i) {
    if (g.node_is_free(i)) {
      slot[i] = static_cast<int>(op.free_nodes.size());
      op.free_nodes.push_back(i);
    }
  }
  const int n = g.cells();
  const double inv = 1.0 / g.dx();
  const double inv2 = inv * inv;
  std::vector<Triplet> t;

  // zeta_t = -rho0 (v_R - v_L) / dx
  for (int j = 0; j < n; ++j) {
    const int R = g.right_node(j);
    const int L = g.left_node(j);
    if (slot[R] >= 0) t.emplace_back(op.zeta(j), op.v(slot[R]), -k.rho_cell(j) * inv);
    if (slot[L] >= 0) t.emplace_back(op.zeta(j), op.v(slot[L]), k.rho_cell(j) * inv);
  }
  // rho0 v_t = visc v_xx - g1 zeta_x - g2 theta_x
  for (int s = 0; s < op.n_v(); ++s) {
    const int i = op.free_nodes[s];
    const int row = op.v(s);
    const double r0 = k.rho_node(i);
    const double d = visc / r0 * inv2;
    t.emplace_back(row, row, -2.0 * d);
    const int il = g.periodic() ? wrap(i - 1, g.nodes()) : i - 1;
    const int ir = g.periodic() ? wrap(i + 1, g.nodes()) : i + 1;
    if (slot[il] >= 0) t.emplace_back(row, op.v(slot[il]), d);
    if (slot[ir] >= 0) t.emplace_back(row, op.v(slot[ir]), d);
    const int l = g.cell_left_of_node(i);
    const int r = g.cell_right_of_node(i);
    const double c1 = k.g1_node(i) / r0 * inv;
    const double c2 = k.g2_node(i) / r0 * inv;
    t.emplace_back(row, op.zeta(r), -c1);
    t.emplace_back(row, op.zeta(l), c1);
    t.emplace_back(row, op.theta(r), -c2);
    t.emplace_back(row, op.theta(l), c2);
  }
  // g3 theta_t = -g2 (v_R - v_L)/dx + div(g4 grad theta), zero wall flux
  for (int j = 0; j < n; ++j) {
    const int row = op.theta(j);
    const double g3 = k.g3_cell(j);
    const int R = g.right_node(j);
    const int L = g.left_node(j);
    const double c = k.g2_cell(j) / g3 * inv;
    if (slot[R] >= 0) t.emplace_back(row, op.v(slot[R]), -c);
    if (slot[L] >= 0) t.emplace_back(row, op.v(slot[L]), c);
    if (g.node_is_free(R)) {
      const int jp = g.cell_right_of_node(R);
      const double gr = k.g4_face(j, jp) / g3 * inv2;
      t.emplace_back(row, op.theta(jp), gr);
      t.emplace_back(row, row, -gr);
    }
    if (g.node_is_free(L)) {
      const int jm = g.cell_left_of_node(L);
      const double gl = k.g4_face(jm, j) / g3 * inv2;
      t.emplace_back(row, op.theta(jm), gl);
      t.emplace_back(row, row, -gl);
    }
  }
  op.matrix.resize(op.size(), op.size());
  op.matrix.setFromTriplets(t.begin(), t.end());
  op.matrix.makeCompressed();

  op.weights.resize(op.size());
  for (int j = 0; j < n; ++j) {
    op.weights[op.zeta(j)] = k.w_zeta(j);
    op.weights[op.theta(j)] = k.g3_cell(j);
  }
  for (int s = 0; s < op.n_v(); ++s) op.weights[op.v(s)] = k.rho_node(op.free_nodes[s]);
  return op;
}

}  // namespace

LinearizedOperator assemble_constant(const EquilibriumCoefficients& a,
                                     const MixtureParams& params,
                                     const Grid1D& grid) {
  const ConstantCoefficients k{a.a0, a.a1, a.a2, a.a3, a.a4};
  return assemble(k, params.viscosity_1d(), grid, LinearizedOperator::Provenance::constant);
}

LinearizedOperator assemble_variable(const SpatialCoefficients& c,
                                     const MixtureParams& params,
                                     const Grid1D& grid) {
  if (static_cast<int>(c.size()) != grid.cells()) {
    throw DomainError("coefficient fields must have one value per cell");
  }
  for (std::size_t j = 0; j < c.size(); ++j) {
    if (!(c.rho0[j] > 0.0 && c.gamma1[j] > 0.0 && c.gamma3[j] > 0.0 && c.gamma4[j] > 0.0)) {
      throw DomainError("coefficient fields must be positive");
    }
  }
  const FieldCoefficients k{c, grid};
  return assemble(k, params.viscosity_1d(), grid, LinearizedOperator::Provenance::variable);
}

std::vector<Eigen::VectorXd> conserved_modes(const LinearizedOperator& op) {
  std::vector<Eigen::VectorXd> modes;
  Eigen::VectorXd z = Eigen::VectorXd::Zero(op.size());
  z.segment(op.zeta(0), op.n_zeta()).setOnes();
  modes.push_back(z);
  Eigen::VectorXd th = Eigen::VectorXd::Zero(op.size());
  th.segment(op.theta(0), op.n_theta()).setOnes();
  modes.push_back(th);
  if (op.grid.periodic()) {
    Eigen::VectorXd v = Eigen::VectorXd::Zero(op.size());
    v.segment(op.v(0), op.n_v()).setOnes();
    modes.push_back(v);
  }
  return modes;
}

SpectrumReport spectrum(const LinearizedOperator& op, double zero_threshold) {
  SpectrumReport rep;
  rep.zero_threshold = zero_threshold;
  const Eigen::VectorXd s = op.weights.cwiseSqrt();
  Eigen::MatrixXd a = Eigen::MatrixXd(op.matrix);
  // S A S^{-1}: same eigenvalues, closer to normal
  a = s.asDiagonal() * a * s.cwiseInverse().asDiagonal();
  Eigen::EigenSolver<Eigen::MatrixXd> es(a, false);
  if (es.info() != Eigen::Success) {
    throw ConvergenceError("dense eigensolver failed");
  }
  const auto& ev = es.eigenvalues();
  rep.eigenvalues.assign(ev.data(), ev.data() + ev.size());
  std::sort(rep.eigenvalues.begin(), rep.eigenvalues.end(),
            [](auto x, auto y) { return x.real() > y.real() || (x.real() == y.real() && x.imag() > y.imag()); });
  rep.spectral_abscissa_mean_zero = -std::numeric_limits<double>::infinity();
  for (const auto& l : rep.eigenvalues) {
    if (std::abs(l) < zero_threshold) {
      ++rep.zero_mode_count;
    } else {
      rep.spectral_abscissa_mean_zero = std::max(rep.spectral_abscissa_mean_zero, l.real());
    }
  }
  rep.decay_rate = -rep.spectral_abscissa_mean_zero;
  const auto modes = conserved_modes(op);
  rep.expected_zero_modes = static_cast<int>(modes.size());
  for (const auto& m : modes) {
    const Eigen::VectorXd r = op.matrix * m;
    rep.kernel_residual = std::max(rep.kernel_residual, r.cwiseAbs().maxCoeff());
  }
  return rep;
}

double energy(const LinearizedOperator& op, const Eigen::VectorXd& x) {
  return 0.5 * op.grid.dx() * (op.weights.array() * x.array().square()).sum();
}

EnergyCheckReport energy_dissipation_check(const LinearizedOperator& op,
                                           const EquilibriumCoefficients& a,
                                           const MixtureParams& params,
                                           int trials, std::uint64_t seed) {
  const Grid1D& g = op.grid;
  const double dx = g.dx();
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  EnergyCheckReport rep;
  rep.trials = trials;
  rep.all_dissipative = true;
  rep.max_energy_rate = -std::numeric_limits<double>::infinity();
  std::vector<int> slot(g.nodes(), -1);
  for (int s = 0; s < op.n_v(); ++s) slot[op.free_nodes[s]] = s;

  for (int trial = 0; trial < trials; ++trial) {
    Eigen::VectorXd x(op.size());
    for (Eigen::Index k = 0; k < x.size(); ++k) x[k] = dist(rng);
    const Eigen::VectorXd ax = op.matrix * x;
    const double rate = dx * (op.weights.array() * x.array() * ax.array()).sum();

    double dv2 = 0.0;
    for (int j = 0; j < g.cells(); ++j) {
      const int R = g.right_node(j);
      const int L = g.left_node(j);
      const double vr = slot[R] >= 0 ? x[op.v(slot[R])] : 0.0;
      const double vl = slot[L] >= 0 ? x[op.v(slot[L])] : 0.0;
      const double d = (vr - vl) / dx;
      dv2 += d * d * dx;
    }
    double dth2 = 0.0;
    for (int i : op.free_nodes) {
      const double d = (x[op.theta(g.cell_right_of_node(i))] -
                        x[op.theta(g.cell_left_of_node(i))]) / dx;
      dth2 += d * d * dx;
    }
    const double dissipation = params.viscosity_1d() * dv2 + a.a4 * dth2;
    const double norm2 = x.squaredNorm() * dx;
    rep.max_relative_residual =
        std::max(rep.max_relative_residual, std::abs(rate + dissipation) / norm2);
    rep.max_energy_rate = std::max(rep.max_energy_rate, rate);
    if (rate > 0.0) rep.all_dissipative = false;
  }
  if (trials == 0) rep.max_energy_rate = 0.0;
  return rep;
}

LinearMarch march_linear(const LinearizedOperator& op, const Eigen::VectorXd& x0,
                         double dt, double t_end, int sample_every) {
  Eigen::SparseMatrix<double> m(op.size(), op.size());
  m.setIdentity();
  m -= dt * op.matrix;
  Eigen::SparseLU<Eigen::SparseMatrix<double>> lu;
  lu.compute(m);
  if (lu.info() != Eigen::Success) {
    throw SingularMatrixError("I - dt A is singular");
  }
  LinearMarch out;
  Eigen::VectorXd x = x0;
  out.t.push_back(0.0);
  out.energy_norm.push_back(std::sqrt(2.0 * energy(op, x)));
  const long long steps = static_cast<long long>(std::ceil(t_end / dt - 1e-9));
  for (long long k = 1; k <= steps; ++k) {
    x = lu.solve(x);
    if (k % sample_every == 0 || k == steps) {
      out.t.push_back(static_cast<double>(k) * dt);
      out.energy_norm.push_back(std::sqrt(2.0 * energy(op, x)));
    }
  }
  out.final_state = x;
  return out;
}

Eigen::VectorXd linear_mode_state(const LinearizedOperator& op, int mode,
                                  double amplitude) {
  const Grid1D& g = op.grid;
  Eigen::VectorXd x(op.size());
  for (int j = 0; j < g.cells(); ++j) {
    const double m = amplitude * mode_shape(g, mode, g.cell_center(j));
    x[op.zeta(j)] = m;
    x[op.theta(j)] = m;
  }
  for (int s = 0; s < op.n_v(); ++s) {
    x[op.v(s)] = amplitude * velocity_bump(g.node(op.free_nodes[s]), g.length());
  }
  return x;
}

DecayFit fit_decay(const std::vector<double>& t, const std::vector<double>& y,
                   double window) {
  if (t.size() != y.size() || t.size() < 3) {
    throw DomainError("decay fit needs matching series of length >= 3");
  }
  const double t0 = t.back() - window * (t.back() - t.front());
  double n = 0, st = 0, sy = 0, stt = 0, sty = 0, syy = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t[i] < t0 || !(y[i] > 0.0)) continue;
    const double ly = std::log(y[i]);
    n += 1;
    st += t[i];
    sy += ly;
    stt += t[i] * t[i];
    sty += t[i] * ly;
    syy += ly * ly;
  }
  if (n < 2) throw DomainError("decay fit window holds fewer than two points");
  DecayFit f;
  const double den = n * stt - st * st;
  const double slope = (n * sty - st * sy) / den;
  f.rate = -slope;
  f.intercept = (sy - slope * st) / n;
  const double ss_tot = syy - sy * sy / n;
  const double ss_res = ss_tot - slope * (sty - st * sy / n);
  f.r_squared = ss_tot > 0.0 ? std::clamp(1.0 - ss_res / ss_tot, 0.0, 1.0) : 1.0;
  return f;
}

}  // namespace mixtura
