#include <cmath>
#include <numbers>
#include <random>

#include "mixtura/dynamics.hpp"
#include "mixtura/errors.hpp"
#include "mixtura/kernels.hpp"

namespace mixtura {

Formulation parse_formulation(const std::string& s) {
  if (s == "primitive") return Formulation::primitive;
  if (s == "entropic") return Formulation::entropic;
  throw ConfigError("unknown formulation '" + s + "' (expected primitive|entropic)");
}

std::string to_string(Formulation f) {
  return f == Formulation::primitive ? "primitive" : "entropic";
}

InitialCondition::Type parse_initial_type(const std::string& s) {
  if (s == "equilibrium") return InitialCondition::Type::equilibrium;
  if (s == "mode") return InitialCondition::Type::mode;
  if (s == "random") return InitialCondition::Type::random;
  throw ConfigError("unknown initial type '" + s + "' (expected equilibrium|mode|random)");
}

std::string to_string(InitialCondition::Type t) {
  switch (t) {
    case InitialCondition::Type::equilibrium: return "equilibrium";
    case InitialCondition::Type::mode: return "mode";
    case InitialCondition::Type::random: return "random";
  }
  return "mode";
}

void SimConfig::validate() const {
  if (!(dt > 0.0)) throw DomainError("dt must be positive");
  if (!(t_end >= 0.0)) throw DomainError("t_end must be nonnegative");
  if (!(picard_tol > 0.0)) throw DomainError("picard_tol must be positive");
  if (picard_max < 1) throw DomainError("picard_max must be at least 1");
  if (!(cfl_limit > 0.0)) throw DomainError("cfl_limit must be positive");
  if (output_every < 1) throw DomainError("output_every must be at least 1");
  if (!(initial.rho1_star > 0.0) || !(initial.rho2_star > 0.0)) {
    throw DomainError("equilibrium densities must be positive");
  }
  if (initial.mode < 1) throw DomainError("mode number must be at least 1");
}

PrimitiveState to_primitive(const EntropicState& s, const MixtureParams& params) {
  PrimitiveState p;
  p.rho1.resize(s.rho.size());
  p.rho2.resize(s.rho.size());
  kernels::phi_field(s.h, s.rho, params, p.rho1, p.rho2);
  p.u = s.u;
  return p;
}

EntropicState to_entropic(const PrimitiveState& s, const MixtureParams& params) {
  EntropicState e;
  e.rho.resize(s.rho1.size());
  e.h.resize(s.rho1.size());
  kernels::psi_field(s.rho1, s.rho2, params, e.h, e.rho);
  e.u = s.u;
  return e;
}

double velocity_bump(double x, double length) {
  const double r = 2.0 * x / length - 1.0;
  if (std::abs(r) >= 1.0) return 0.0;
  return std::exp(1.0 - 1.0 / (1.0 - r * r));
}

double mode_shape(const Grid1D& grid, int k, double x) {
  const double w = grid.periodic() ? 2.0 * std::numbers::pi : std::numbers::pi;
  return std::cos(w * k * x / grid.length());
}

EntropicState initial_entropic(const SimConfig& cfg) {
  const Grid1D& g = cfg.grid;
  const auto& ic = cfg.initial;
  const EntropicPoint star = psi({ic.rho1_star, ic.rho2_star}, cfg.params);
  const double eps = ic.type == InitialCondition::Type::equilibrium ? 0.0 : ic.amplitude;
  const double ua = ic.type == InitialCondition::Type::equilibrium
                        ? 0.0
                        : ic.velocity_amplitude.value_or(ic.amplitude);

  EntropicState s;
  s.rho.assign(g.cells(), star.rho);
  s.h.assign(g.cells(), star.h);
  s.u.assign(g.nodes(), 0.0);

  if (ic.type == InitialCondition::Type::random) {
    std::mt19937_64 rng(ic.seed);
    std::uniform_real_distribution<double> coef(-1.0, 1.0);
    constexpr int kModes = 4;
    double a[kModes], b[kModes], c[kModes];
    for (int k = 0; k < kModes; ++k) {
      a[k] = coef(rng);
      b[k] = coef(rng);
      c[k] = coef(rng);
    }
    for (int j = 0; j < g.cells(); ++j) {
      const double x = g.cell_center(j);
      for (int k = 0; k < kModes; ++k) {
        s.rho[j] += eps * a[k] * mode_shape(g, k + 1, x) / kModes;
        s.h[j] += eps * b[k] * mode_shape(g, k + 1, x) / kModes;
      }
    }
    for (int i = 0; i < g.nodes(); ++i) {
      if (!g.node_is_free(i)) continue;
      const double x = g.node(i);
      double w = 0.0;
      for (int k = 0; k < kModes; ++k) {
        w += c[k] * std::sin(std::numbers::pi * (k + 1) * x / g.length()) / kModes;
      }
      s.u[i] = ua * velocity_bump(x, g.length()) * w;
    }
    return s;
  }

  for (int j = 0; j < g.cells(); ++j) {
    const double m = mode_shape(g, ic.mode, g.cell_center(j));
    s.rho[j] += eps * m;
    s.h[j] += eps * m;
  }
  for (int i = 0; i < g.nodes(); ++i) {
    if (g.node_is_free(i)) s.u[i] = ua * velocity_bump(g.node(i), g.length());
  }
  return s;
}

PrimitiveState initial_primitive(const SimConfig& cfg) {
  return to_primitive(initial_entropic(cfg), cfg.params);
}

}  // namespace mixtura
