#include "mixtura/mms.hpp"

#include <cmath>
#include <numbers>

#include "mixtura/errors.hpp"

namespace mixtura {

ManufacturedSolution::ManufacturedSolution(const MixtureParams& params,
                                           const Grid1D& grid, double amplitude,
                                           double r1, double r2)
    : params_(params),
      grid_(grid),
      amp_(amplitude),
      r1_(r1),
      r2_(r2),
      k_((grid.periodic() ? 2.0 : 1.0) * std::numbers::pi / grid.length()) {}

ManufacturedSolution::Point ManufacturedSolution::at(double x, double t) const {
  const double a = amp_;
  const double k = k_;
  const double c1 = std::cos(k * x), s1 = std::sin(k * x);
  const double c2 = std::cos(2 * k * x), s2 = std::sin(2 * k * x);
  const double T = std::cos(t), Tt = -std::sin(t);
  const double S = 1.0 / (1.0 + t), St = -S * S;
  Point q{};
  q.r1 = r1_ + a * c1 * T;
  q.r1x = -a * k * s1 * T;
  q.r1xx = -a * k * k * c1 * T;
  q.r1t = a * c1 * Tt;
  q.r2 = r2_ + a * c2 * S;
  q.r2x = -2 * a * k * s2 * S;
  q.r2xx = -4 * a * k * k * c2 * S;
  q.r2t = a * c2 * St;
  q.u = a * s1 * T;
  q.ux = a * k * c1 * T;
  q.uxx = -a * k * k * s1 * T;
  q.ut = a * s1 * Tt;
  return q;
}

double ManufacturedSolution::rho1(double x, double t) const { return at(x, t).r1; }
double ManufacturedSolution::rho2(double x, double t) const { return at(x, t).r2; }
double ManufacturedSolution::u(double x, double t) const { return at(x, t).u; }

double ManufacturedSolution::flux_divergence(const Point& q) const {
  const double m1 = params_.m1(), m2 = params_.m2();
  // F1 = -g / w with g = rho2 rho1_x / m1 - rho1 rho2_x / m2, w = p rho
  const double g = q.r2 * q.r1x / m1 - q.r1 * q.r2x / m2;
  const double gx = (q.r2x * q.r1x + q.r2 * q.r1xx) / m1 -
                    (q.r1x * q.r2x + q.r1 * q.r2xx) / m2;
  const double p = q.r1 / m1 + q.r2 / m2;
  const double px = q.r1x / m1 + q.r2x / m2;
  const double rho = q.r1 + q.r2;
  const double w = p * rho;
  const double wx = px * rho + p * (q.r1x + q.r2x);
  return -(gx * w - g * wx) / (w * w);
}

double ManufacturedSolution::momentum_source(const Point& q) const {
  const double rho = q.r1 + q.r2;
  const double px = q.r1x / params_.m1() + q.r2x / params_.m2();
  return rho * (q.ut + q.u * q.ux) - params_.viscosity_1d() * q.uxx + px;
}

Sources ManufacturedSolution::primitive_sources() const {
  Sources s;
  s.rho1 = [this](double x, double t) {
    const Point q = at(x, t);
    return q.r1t + q.r1x * q.u + q.r1 * q.ux + flux_divergence(q);
  };
  s.rho2 = [this](double x, double t) {
    const Point q = at(x, t);
    return q.r2t + q.r2x * q.u + q.r2 * q.ux - flux_divergence(q);
  };
  s.u = [this](double x, double t) { return momentum_source(at(x, t)); };
  return s;
}

Sources ManufacturedSolution::entropic_sources() const {
  Sources s;
  s.rho = [this](double x, double t) {
    const Point q = at(x, t);
    const double rho = q.r1 + q.r2;
    return q.r1t + q.r2t + (q.r1x + q.r2x) * q.u + rho * q.ux;
  };
  s.h = [this](double x, double t) {
    const Point q = at(x, t);
    const double m1 = params_.m1(), m2 = params_.m2();
    const auto c = symmetrized_coefficients({q.r1, q.r2}, params_);
    const double ht = q.r2t / (m2 * q.r2) - q.r1t / (m1 * q.r1);
    const double hx = q.r2x / (m2 * q.r2) - q.r1x / (m1 * q.r1);
    return c.capacity * (ht + q.u * hx) + c.coupling * q.ux - flux_divergence(q);
  };
  s.u = [this](double x, double t) { return momentum_source(at(x, t)); };
  return s;
}

PrimitiveState ManufacturedSolution::sample(double t) const {
  PrimitiveState s;
  s.rho1.resize(grid_.cells());
  s.rho2.resize(grid_.cells());
  s.u.assign(grid_.nodes(), 0.0);
  for (int j = 0; j < grid_.cells(); ++j) {
    const Point q = at(grid_.cell_center(j), t);
    s.rho1[j] = q.r1;
    s.rho2[j] = q.r2;
  }
  for (int i = 0; i < grid_.nodes(); ++i) {
    if (grid_.node_is_free(i)) s.u[i] = at(grid_.node(i), t).u;
  }
  return s;
}

MmsError mms_run(const SimConfig& cfg, const ManufacturedSolution& m) {
  const Sources src = cfg.formulation == Formulation::entropic
                          ? m.entropic_sources()
                          : m.primitive_sources();
  const RunResult r = run_from(cfg, m.sample(0.0), &src);
  const PrimitiveState exact = m.sample(r.t_final);
  const double dx = cfg.grid.dx();
  double e = 0.0;
  for (std::size_t j = 0; j < exact.rho1.size(); ++j) {
    const double d1 = r.primitive.rho1[j] - exact.rho1[j];
    const double d2 = r.primitive.rho2[j] - exact.rho2[j];
    e += d1 * d1 + d2 * d2;
  }
  for (std::size_t i = 0; i < exact.u.size(); ++i) {
    const double d = r.primitive.u[i] - exact.u[i];
    e += d * d;
  }
  return {cfg.grid.cells(), cfg.dt, std::sqrt(e * dx)};
}

double loglog_slope(const std::vector<double>& x, const std::vector<double>& y) {
  if (x.size() != y.size() || x.size() < 2) {
    throw DomainError("slope fit needs at least two matching points");
  }
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double lx = std::log(x[i]);
    const double ly = std::log(y[i]);
    sx += lx;
    sy += ly;
    sxx += lx * lx;
    sxy += lx * ly;
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ConvergenceStudy spatial_sweep(const SimConfig& base, const std::vector<int>& cells,
                               double dt_coefficient, double amplitude) {
  ConvergenceStudy study;
  std::vector<double> h, e;
  for (int n : cells) {
    SimConfig cfg = base;
    cfg.grid = Grid1D(n, base.grid.length(), base.grid.boundary());
    cfg.dt = dt_coefficient * cfg.grid.dx() * cfg.grid.dx();
    cfg.output_every = 1 << 30;
    const ManufacturedSolution m(cfg.params, cfg.grid, amplitude);
    study.rows.push_back(mms_run(cfg, m));
    h.push_back(cfg.grid.dx());
    e.push_back(study.rows.back().error);
  }
  study.order = loglog_slope(h, e);
  return study;
}

ConvergenceStudy temporal_sweep(const SimConfig& base, const std::vector<double>& dts,
                                double amplitude) {
  ConvergenceStudy study;
  std::vector<double> e;
  for (double dt : dts) {
    SimConfig cfg = base;
    cfg.dt = dt;
    cfg.output_every = 1 << 30;
    const ManufacturedSolution m(cfg.params, cfg.grid, amplitude);
    study.rows.push_back(mms_run(cfg, m));
    e.push_back(study.rows.back().error);
  }
  study.order = loglog_slope(dts, e);
  return study;
}

}  // namespace mixtura
