#include "mixtura/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "mixtura/errors.hpp"
#include "mixtura/mms.hpp"

namespace mixtura {

std::vector<EquivalenceRow> equivalence_study(const SimConfig& base,
                                              const std::vector<int>& cells,
                                              double dt_coefficient, double t_end) {
  std::vector<EquivalenceRow> rows;
  for (int n : cells) {
    SimConfig cfg = base;
    cfg.grid = Grid1D(n, base.grid.length(), base.grid.boundary());
    cfg.dt = dt_coefficient * cfg.grid.dx() * cfg.grid.dx();
    cfg.t_end = t_end;
    cfg.output_every = 1 << 30;
    const EntropicState e0 = initial_entropic(cfg);
    const PrimitiveState p0 = to_primitive(e0, cfg.params);

    cfg.formulation = Formulation::entropic;
    const RunResult re = run_from(cfg, p0);
    cfg.formulation = Formulation::primitive;
    const RunResult rp = run_from(cfg, p0);

    EquivalenceRow row;
    row.cells = n;
    row.dx = cfg.grid.dx();
    row.dt = cfg.dt;
    for (int j = 0; j < n; ++j) {
      row.linf_rho1 = std::max(row.linf_rho1, std::abs(re.primitive.rho1[j] - rp.primitive.rho1[j]));
      row.linf_rho2 = std::max(row.linf_rho2, std::abs(re.primitive.rho2[j] - rp.primitive.rho2[j]));
    }
    for (std::size_t i = 0; i < rp.primitive.u.size(); ++i) {
      row.linf_u = std::max(row.linf_u, std::abs(re.primitive.u[i] - rp.primitive.u[i]));
    }
    row.linf = std::max({row.linf_rho1, row.linf_rho2, row.linf_u});
    if (!rows.empty() && row.linf > 0.0) row.ratio = rows.back().linf / row.linf;
    rows.push_back(row);
  }
  return rows;
}

namespace {

lagrangian::Profile constant_profile(double c) {
  return {[c](double) { return c; }, [](double) { return 0.0; },
          [](double) { return 0.0; }};
}

double inverse_identity_error(int trials) {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> dist(-1.0, 1.0);
  double worst = 0.0;
  for (int trial = 0; trial < trials; ++trial) {
    const int dim = 2 + trial % 2;
    Eigen::MatrixXd k(dim, dim);
    for (int i = 0; i < dim; ++i) {
      for (int j = 0; j < dim; ++j) k(i, j) = dist(rng);
    }
    k *= 0.45 / k.cwiseAbs().rowwise().sum().maxCoeff();
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(dim, dim);
    const Eigen::MatrixXd prod = (id + lagrangian::v0_matrix(k)) * (id + k);
    worst = std::max(worst, (prod - id).cwiseAbs().maxCoeff());
  }
  return worst;
}

}  // namespace

LagrangianSuite lagrangian_suite(const MixtureParams& params, double rho1_star,
                                 double rho2_star, double length,
                                 const std::vector<double>& epsilons, double t,
                                 int n_quad, double delta) {
  using namespace lagrangian;
  LagrangianSuite out;
  const double pi = std::numbers::pi;
  const double w = pi / length;
  const EntropicPoint star = psi({rho1_star, rho2_star}, params);

  out.inverse_trials = 100;
  out.inverse_identity_error = inverse_identity_error(out.inverse_trials);

  // shapes: eta^ = cos(w y) + sin(2 w y)/2, theta^ = sin(w y) + cos(3 w y),
  // v^ = sin(w y) (1 + s)
  auto state_for = [&](double eps) {
    LagrangianState u;
    u.t = t;
    u.eta = {[=](double y) { return star.rho + eps * (std::cos(w * y) + 0.5 * std::sin(2 * w * y)); },
             [=](double y) { return eps * (-w * std::sin(w * y) + w * std::cos(2 * w * y)); },
             [=](double y) { return eps * (-w * w * std::cos(w * y) - 2 * w * w * std::sin(2 * w * y)); }};
    u.theta = {[=](double y) { return star.h + eps * (std::sin(w * y) + std::cos(3 * w * y)); },
               [=](double y) { return eps * (w * std::cos(w * y) - 3 * w * std::sin(3 * w * y)); },
               [=](double y) { return eps * (-w * w * std::sin(w * y) - 9 * w * w * std::cos(3 * w * y)); }};
    u.velocity = {[=](double y, double s) { return eps * std::sin(w * y) * (1 + s); },
                  [=](double y, double s) { return eps * w * std::cos(w * y) * (1 + s); },
                  [=](double y, double s) { return -eps * w * w * std::sin(w * y) * (1 + s); }};
    return u;
  };

  {
    LagrangianState zero = state_for(epsilons.empty() ? 1e-2 : epsilons.front());
    zero.velocity = {[](double, double) { return 0.0; }, [](double, double) { return 0.0; },
                     [](double, double) { return 0.0; }};
    const auto n = remainder_norms(zero, length, params, 64, n_quad, delta);
    out.zero_history_max = *std::max_element(n.begin(), n.end());
  }

  out.epsilons = epsilons;
  for (double eps : epsilons) {
    out.norms.push_back(remainder_norms(state_for(eps), length, params, 64, n_quad, delta));
  }
  if (epsilons.size() >= 2) {
    for (int i = 0; i < 4; ++i) {
      std::vector<double> y;
      for (const auto& n : out.norms) y.push_back(n[i]);
      out.slopes[i] = loglog_slope(epsilons, y);
    }
  }

  {
    // v = alpha y: eta = rho0 / (1 + alpha t) and d_t eta + eta v' = R1
    const double alpha = 0.3, rho0 = star.rho;
    LagrangianState u;
    u.t = t;
    const double eta = rho0 / (1 + alpha * t);
    u.eta = constant_profile(eta);
    u.theta = constant_profile(star.h);
    u.velocity = {[=](double y, double) { return alpha * y; },
                  [=](double, double) { return alpha; },
                  [](double, double) { return 0.0; }};
    const double lhs = -rho0 * alpha / ((1 + alpha * t) * (1 + alpha * t)) + eta * alpha;
    const auto r = remainders_at(u, 0.5 * length, params, n_quad, std::max(delta, alpha * t));
    out.affine_r1_error = std::abs(lhs - r.r1);

    // the same flow with alpha t > delta is flagged
    const auto acc = accumulate_kv(u.velocity, 0.5 * length, 1.0, n_quad, 0.25);
    bool thrown = false;
    try {
      u.t = 1.0;
      remainders_at(u, 0.5 * length, params, n_quad, 0.25);
    } catch (const SmallnessViolation&) {
      thrown = true;
    }
    out.smallness_flagged = !acc.within_bound() && thrown;
  }

  {
    // 2-D affine flow x = (I + t M) y
    Eigen::MatrixXd m(2, 2);
    m << 0.2, -0.1, 0.05, 0.15;
    Eigen::MatrixXd b(2, 2);
    b << 1.0, 2.0, -0.5, 0.7;
    const GradientHistory grad = [&](const Eigen::VectorXd&, double) -> Eigen::MatrixXd {
      return m.transpose();
    };
    const Eigen::MatrixXd id = Eigen::MatrixXd::Identity(2, 2);
    double worst = 0.0;
    for (double y1 : {0.1, 0.4, 0.9}) {
      for (double y2 : {-0.3, 0.2, 0.6}) {
        Eigen::VectorXd y(2);
        y << y1, y2;
        const Eigen::MatrixXd k = accumulate_k(grad, y, t, n_quad);
        const Eigen::VectorXd x = (id + t * m) * y;
        // f = x1^2 + 3 x1 x2
        Eigen::VectorXd gx(2);
        gx << 2 * x[0] + 3 * x[1], 3 * x[0];
        const Eigen::VectorXd gy = (id + t * m).transpose() * gx;
        worst = std::max(worst, (transform_gradient(gy, k) - gx).cwiseAbs().maxCoeff());
        // u = B x: div = trace(B)
        const Eigen::MatrixXd gu = (b * (id + t * m)).transpose();
        worst = std::max(worst, std::abs(transform_divergence(gu, k) - b.trace()));
      }
    }
    out.affine_gradient_error = worst;
  }

  {
    // x = y + beta t sin(w y), f(x) = sin(2x)
    const double beta = 0.1;
    const VelocityHistory h{[=](double y, double) { return beta * std::sin(w * y); },
                            [=](double y, double) { return beta * w * std::cos(w * y); },
                            [=](double y, double) { return -beta * w * w * std::sin(w * y); }};
    double worst = 0.0;
    for (int i = 0; i < 32; ++i) {
      const double y = (i + 0.5) * length / 32;
      const auto acc = accumulate_kv(h, y, t, n_quad, 1.0);
      const double x = flow_map(h, y, t, n_quad);
      const double xy = 1 + acc.k;
      const double fy = 2 * std::cos(2 * x) * xy;
      const double fyy = -4 * std::sin(2 * x) * xy * xy + 2 * std::cos(2 * x) * acc.k_y;
      worst = std::max(worst, std::abs(transform_second_derivative(fy, fyy, acc.k, acc.k_y) +
                                       4 * std::sin(2 * x)));
    }
    out.second_derivative_error = worst;
  }
  return out;
}

}  // namespace mixtura
