#include "mixtura/model.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "mixtura/errors.hpp"

namespace mixtura {

MixtureParams::MixtureParams(double m1, double m2, double mu, double nu)
    : m1_(m1), m2_(m2), mu_(mu), nu_(nu) {
  if (!(m1 > 0.0) || !(m2 > 0.0)) {
    throw DomainError("molar masses must be positive");
  }
  if (m1 == m2) {
    throw DomainError("molar masses must differ (m1 == m2 decouples h)");
  }
  if (!(mu > 0.0) || !(nu > 0.0)) {
    throw DomainError("viscosities mu and nu must be positive");
  }
}

void require_positive(const PointState& p) {
  if (!(p.rho1 > 0.0) || !(p.rho2 > 0.0)) {
    std::ostringstream os;
    os << "partial densities must be positive, got rho1=" << p.rho1
       << " rho2=" << p.rho2;
    throw DomainError(os.str());
  }
}

double pressure(const PointState& p, const MixtureParams& params) {
  require_positive(p);
  return p.rho1 / params.m1() + p.rho2 / params.m2();
}

double sigma(const PointState& p, const MixtureParams& params) {
  require_positive(p);
  return params.m1() * p.rho1 + params.m2() * p.rho2;
}

EntropicPoint psi(const PointState& p, const MixtureParams& params) {
  require_positive(p);
  return {std::log(p.rho2) / params.m2() - std::log(p.rho1) / params.m1(),
          p.rho1 + p.rho2};
}

namespace {

// log(1 + e^t) without overflow.
double softplus(double t) {
  return t > 0.0 ? t + std::log1p(std::exp(-t)) : std::log1p(std::exp(t));
}

double logistic(double t) {
  if (t >= 0.0) {
    return 1.0 / (1.0 + std::exp(-t));
  }
  const double e = std::exp(t);
  return e / (1.0 + e);
}

}  // namespace

PointState phi(const EntropicPoint& e, const MixtureParams& params) {
  if (!(e.rho > 0.0)) {
    throw DomainError("total density must be positive");
  }
  if (!std::isfinite(e.h)) {
    throw DomainError("entropic variable h must be finite");
  }
  const double inv1 = 1.0 / params.m1();
  const double inv2 = 1.0 / params.m2();
  const double c0 = (inv2 - inv1) * std::log(e.rho);

  // h(t) with t = log(rho1 / rho2); strictly decreasing.
  auto h_of = [&](double t) { return c0 - t * inv1 + (inv1 - inv2) * softplus(t); };
  auto dh_of = [&](double t) {
    const double s = logistic(t);
    return -((1.0 - s) * inv1 + s * inv2);
  };

  const double slope_min = std::min(inv1, inv2);
  double t = 0.0;
  double r = h_of(t) - e.h;
  // |h'| >= slope_min, so the root lies within |r| / slope_min of t.
  const double reach = std::abs(r) / slope_min * (1.0 + 1e-12) + 1e-300;
  double lo = t - reach;
  double hi = t + reach;

  const double tol = std::max(1e-14, 4.0 * std::numeric_limits<double>::epsilon() * e.rho);
  auto split = [&](double tt) -> PointState {
    // assign the smaller share directly so it keeps full relative accuracy
    const double s = logistic(tt);
    const double s_minus = logistic(-tt);
    if (s <= s_minus) {
      const double r1 = e.rho * s;
      return {r1, e.rho - r1};
    }
    const double r2 = e.rho * s_minus;
    return {e.rho - r2, r2};
  };

  double rho1 = e.rho * logistic(t);
  for (int it = 0; it < 100; ++it) {
    if (r == 0.0) {
      return split(t);
    }
    if (r > 0.0) {
      lo = t;  // h(t) above target -> root to the right
    } else {
      hi = t;
    }
    double next = t - r / dh_of(t);
    if (!(next > lo && next < hi)) {
      next = 0.5 * (lo + hi);
    }
    const double rho1_next = e.rho * logistic(next);
    const double step = std::abs(rho1_next - rho1);
    t = next;
    rho1 = rho1_next;
    r = h_of(t) - e.h;
    if (step <= tol) {
      // one more Newton correction lands far below tol
      return split(t - r / dh_of(t));
    }
  }
  std::ostringstream os;
  os << "phi: no convergence for h=" << e.h << " rho=" << e.rho;
  throw ConvergenceError(os.str());
}

double flux_closed_form(const PointState& p, double grad_rho1,
                        double grad_rho2, const MixtureParams& params) {
  const double pr = pressure(p, params);
  const double rho = p.total();
  return -(1.0 / pr) * ((p.rho2 / rho) * (grad_rho1 / params.m1()) -
                        (p.rho1 / rho) * (grad_rho2 / params.m2()));
}

double flux_entropic(const PointState& p, double grad_h,
                     const MixtureParams& params) {
  const double pr = pressure(p, params);
  return p.rho1 * p.rho2 / (pr * p.total()) * grad_h;
}

SpeciesGradients gradient_reconstruction(const PointState& p, double grad_rho,
                                         double grad_h,
                                         const MixtureParams& params) {
  require_positive(p);
  const double a = params.m1() * p.rho1;
  const double b = params.m2() * p.rho2;
  const double s = a + b;
  return {a / s * grad_rho - a * b / s * grad_h,
          b / s * grad_rho + a * b / s * grad_h};
}

SymmetrizedCoefficients symmetrized_coefficients(const PointState& p,
                                                 const MixtureParams& params) {
  require_positive(p);
  const double m1 = params.m1();
  const double m2 = params.m2();
  const double rho = p.rho1 + p.rho2;
  const double s = m1 * p.rho1 + m2 * p.rho2;
  const double pr = p.rho1 / m1 + p.rho2 / m2;
  const double prod = p.rho1 * p.rho2;
  return {s, rho / s, (m1 - m2) * prod / s, m1 * m2 * prod / s,
          prod / (pr * rho)};
}

SpatialCoefficients spatial_coefficients(std::span<const double> rho10,
                                         std::span<const double> rho20,
                                         const MixtureParams& params) {
  if (rho10.size() != rho20.size()) {
    throw DomainError("spatial_coefficients: field sizes differ");
  }
  const std::size_t n = rho10.size();
  SpatialCoefficients c;
  for (auto* v : {&c.rho0, &c.sigma_rho0, &c.gamma1, &c.gamma2, &c.gamma3,
                  &c.gamma4, &c.p0}) {
    v->resize(n);
  }
  for (std::size_t i = 0; i < n; ++i) {
    const PointState p{rho10[i], rho20[i]};
    const auto k = symmetrized_coefficients(p, params);
    c.rho0[i] = p.rho1 + p.rho2;
    c.sigma_rho0[i] = k.sigma;
    c.gamma1[i] = k.pressure_density;
    c.gamma2[i] = k.coupling;
    c.gamma3[i] = k.capacity;
    c.gamma4[i] = k.diffusivity;
    c.p0[i] = p.rho1 / params.m1() + p.rho2 / params.m2();
  }
  return c;
}

EquilibriumCoefficients equilibrium_coefficients(double rho1_star,
                                                 double rho2_star,
                                                 const MixtureParams& params) {
  const PointState p{rho1_star, rho2_star};
  const auto k = symmetrized_coefficients(p, params);
  EquilibriumCoefficients c{};
  c.a0 = p.rho1 + p.rho2;
  c.a1 = c.a0 / k.sigma;
  c.a2 = k.coupling;
  c.a3 = k.capacity;
  c.a4 = k.diffusivity;
  c.sigma_rho_star = k.sigma;
  c.p_star = p.rho1 / params.m1() + p.rho2 / params.m2();
  return c;
}

}  // namespace mixtura
