#include "mixtura/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "mixtura/banded.hpp"
#include "mixtura/errors.hpp"
#include "mixtura/kernels.hpp"
#include "mixtura/operators.hpp"

namespace mixtura {

namespace {

int wrap(int i, int n) { return ((i % n) + n) % n; }

// Three unknowns per position p (node p, cell p): u, then two cell fields.
// Periodic grids are folded (0, n-1, 1, n-2, ...) so wrap-around neighbours
// stay inside a narrow band.
class Layout {
 public:
  explicit Layout(const Grid1D& g) : rank_(g.cells()) {
    const int n = g.cells();
    for (int p = 0; p < n; ++p) {
      if (!g.periodic()) {
        rank_[p] = p;
      } else {
        rank_[p] = p < (n + 1) / 2 ? 2 * p : 2 * (n - 1 - p) + 1;
      }
    }
  }
  int size() const { return 3 * static_cast<int>(rank_.size()); }
  int u(int node) const { return 3 * rank_[node]; }
  int a(int cell) const { return 3 * rank_[cell] + 1; }
  int b(int cell) const { return 3 * rank_[cell] + 2; }

 private:
  std::vector<int> rank_;
};

double eval(const Sources* s, Sources::Fn Sources::*fn, double x, double t) {
  if (s == nullptr || !(s->*fn)) return 0.0;
  return (s->*fn)(x, t);
}

// Mean of the two cells adjacent to each free node; 0 at pinned walls.
std::vector<double> node_average(const Grid1D& g, const std::vector<double>& c) {
  std::vector<double> out(g.nodes(), 0.0);
  for (int i = 0; i < g.nodes(); ++i) {
    if (!g.node_is_free(i)) continue;
    out[i] = 0.5 * (c[g.cell_left_of_node(i)] + c[g.cell_right_of_node(i)]);
  }
  return out;
}

double max_abs(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

double max_abs_diff(const std::vector<double>& a, const std::vector<double>& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

// Momentum rows without the pressure terms: inertia, lagged advection and
// viscosity. Pinned wall nodes get identity rows.
void add_velocity_rows(BandedSystem& sys, const Layout& lay, const Grid1D& g,
                       double visc, double dt, const std::vector<double>& rho_node,
                       const std::vector<double>& u_lag,
                       const std::vector<double>& u_old, const Sources* src,
                       double t_new) {
  const int n = g.cells();
  const double dx = g.dx();
  const double vd = visc / (dx * dx);
  for (int i = 0; i < n; ++i) {
    const int row = lay.u(i);
    if (!g.node_is_free(i)) {
      sys.add(row, row, 1.0);
      sys.rhs(row) = 0.0;
      continue;
    }
    const int il = g.periodic() ? wrap(i - 1, n) : i - 1;
    const int ir = g.periodic() ? wrap(i + 1, n) : i + 1;
    const double adv = rho_node[i] * u_lag[i] / (2.0 * dx);
    sys.add(row, row, rho_node[i] / dt + 2.0 * vd);
    if (g.node_is_free(ir)) sys.add(row, lay.u(ir), adv - vd);
    if (g.node_is_free(il)) sys.add(row, lay.u(il), -adv - vd);
    sys.rhs(row) = rho_node[i] * u_old[i] / dt + eval(src, &Sources::u, g.node(i), t_new);
  }
}

// Cell rows for d/dt q + div(q^ u) with q^ a lagged node value.
void add_transport_rows(BandedSystem& sys, const Layout& lay, const Grid1D& g,
                        double dt, const std::vector<double>& q_node,
                        bool second_field) {
  const double dx = g.dx();
  for (int j = 0; j < g.cells(); ++j) {
    const int row = second_field ? lay.b(j) : lay.a(j);
    sys.add(row, row, 1.0 / dt);
    const int r = g.right_node(j);
    const int l = g.left_node(j);
    if (g.node_is_free(r)) sys.add(row, lay.u(r), q_node[r] / dx);
    if (g.node_is_free(l)) sys.add(row, lay.u(l), -q_node[l] / dx);
  }
}

// Neighbour cells of j with mirror ghosts at walls.
int cell_minus(const Grid1D& g, int j) {
  return g.periodic() ? wrap(j - 1, g.cells()) : std::max(j - 1, 0);
}
int cell_plus(const Grid1D& g, int j) {
  return g.periodic() ? wrap(j + 1, g.cells()) : std::min(j + 1, g.cells() - 1);
}

// rho_new = rho_old - dt div(face_flux) + dt S.
void conservative_update(const Grid1D& g, double dt,
                         const std::vector<double>& old,
                         const std::vector<double>& face_flux, const Sources* src,
                         Sources::Fn Sources::*fn, double t_new,
                         std::vector<double>& out) {
  const Field div = divergence_conservative(face_flux, g);
  out.resize(old.size());
  for (int j = 0; j < g.cells(); ++j) {
    out[j] = old[j] - dt * div[j] + dt * eval(src, fn, g.cell_center(j), t_new);
  }
}

void require_positive_field(const Grid1D& g, const std::vector<double>& f,
                            const char* name, double t) {
  for (int j = 0; j < g.cells(); ++j) {
    if (!(f[j] > 0.0)) {
      std::ostringstream os;
      os << name << " lost positivity at cell " << j << " (x=" << g.cell_center(j)
         << ", t=" << t << "): " << f[j];
      throw PositivityLoss(os.str(), j, g.cell_center(j), t, f[j]);
    }
  }
}

double relative_change(std::initializer_list<std::pair<const std::vector<double>*,
                                                       const std::vector<double>*>> pairs) {
  double diff = 0.0;
  double size = 1.0;
  for (const auto& [a, b] : pairs) {
    diff = std::max(diff, max_abs_diff(*a, *b));
    size = std::max(size, max_abs(*b));
  }
  return diff / size;
}

[[noreturn]] void picard_failure(int iters, double change, double t) {
  std::ostringstream os;
  os << "Picard iteration did not converge in " << iters
     << " sweeps (relative change " << change << ", t=" << t << ")";
  throw ConvergenceError(os.str());
}

}  // namespace

StepResult<EntropicState> step_entropic(const EntropicState& s, double t,
                                        double dt, const SimConfig& cfg,
                                        const Sources* src) {
  const Grid1D& g = cfg.grid;
  const int n = g.cells();
  const double dx = g.dx();
  const double t_new = t + dt;
  const Layout lay(g);
  require_positive_field(g, s.rho, "rho", t);

  EntropicState it = s;
  kernels::EntropicCoefficients coef;
  for (int sweep = 1; sweep <= cfg.picard_max; ++sweep) {
    kernels::entropic_coefficients(it.h, it.rho, cfg.params, coef);
    const auto rho_node = node_average(g, it.rho);
    const auto a_node = node_average(g, coef.pressure_density);
    const auto b_node = node_average(g, coef.coupling);

    BandedSystem sys(lay.size());
    add_velocity_rows(sys, lay, g, cfg.params.viscosity_1d(), dt, rho_node, it.u,
                      s.u, src, t_new);
    for (int i = 0; i < n; ++i) {
      if (!g.node_is_free(i)) continue;
      const int row = lay.u(i);
      const int l = g.cell_left_of_node(i);
      const int r = g.cell_right_of_node(i);
      sys.add(row, lay.a(r), a_node[i] / dx);
      sys.add(row, lay.a(l), -a_node[i] / dx);
      sys.add(row, lay.b(r), b_node[i] / dx);
      sys.add(row, lay.b(l), -b_node[i] / dx);
    }
    add_transport_rows(sys, lay, g, dt, rho_node, false);
    for (int j = 0; j < n; ++j) {
      sys.rhs(lay.a(j)) = s.rho[j] / dt + eval(src, &Sources::rho, g.cell_center(j), t_new);
    }
    for (int j = 0; j < n; ++j) {
      const int row = lay.b(j);
      const int R = g.right_node(j);
      const int L = g.left_node(j);
      const int jm = cell_minus(g, j);
      const int jp = cell_plus(g, j);
      const double c = coef.capacity[j];
      const double ubar = 0.5 * (it.u[L] + it.u[R]);
      const double adv = c * ubar / (2.0 * dx);
      const double gr = g.node_is_free(R) ? 0.5 * (coef.diffusivity[j] + coef.diffusivity[jp]) : 0.0;
      const double gl = g.node_is_free(L) ? 0.5 * (coef.diffusivity[jm] + coef.diffusivity[j]) : 0.0;
      const double inv2 = 1.0 / (dx * dx);
      sys.add(row, row, c / dt + (gr + gl) * inv2);
      sys.add(row, lay.b(jp), adv - gr * inv2);
      sys.add(row, lay.b(jm), -adv - gl * inv2);
      if (g.node_is_free(R)) sys.add(row, lay.u(R), coef.coupling[j] / dx);
      if (g.node_is_free(L)) sys.add(row, lay.u(L), -coef.coupling[j] / dx);
      sys.rhs(row) = c * s.h[j] / dt + eval(src, &Sources::h, g.cell_center(j), t_new);
    }

    const auto x = sys.solve();
    EntropicState next;
    next.u.assign(g.nodes(), 0.0);
    next.h.resize(n);
    for (int i = 0; i < n; ++i) {
      if (g.node_is_free(i)) next.u[i] = x[lay.u(i)];
    }
    for (int j = 0; j < n; ++j) next.h[j] = x[lay.b(j)];
    std::vector<double> flux(g.nodes(), 0.0);
    for (int i = 0; i < g.nodes(); ++i) flux[i] = rho_node[i] * next.u[i];
    conservative_update(g, dt, s.rho, flux, src, &Sources::rho, t_new, next.rho);
    require_positive_field(g, next.rho, "rho", t_new);

    const double change = relative_change(
        {{&it.u, &next.u}, {&it.rho, &next.rho}, {&it.h, &next.h}});
    it = std::move(next);
    if (change < cfg.picard_tol) return {std::move(it), sweep};
    if (sweep == cfg.picard_max) picard_failure(sweep, change, t_new);
  }
  picard_failure(cfg.picard_max, 0.0, t_new);
}

StepResult<PrimitiveState> step_primitive(const PrimitiveState& s, double t,
                                          double dt, const SimConfig& cfg,
                                          const Sources* src) {
  const Grid1D& g = cfg.grid;
  const int n = g.cells();
  const double dx = g.dx();
  const double inv2 = 1.0 / (dx * dx);
  const double t_new = t + dt;
  const double m1 = cfg.params.m1();
  const double m2 = cfg.params.m2();
  const Layout lay(g);
  require_positive_field(g, s.rho1, "rho1", t);
  require_positive_field(g, s.rho2, "rho2", t);

  PrimitiveState it = s;
  kernels::FluxCoefficients fc;
  for (int sweep = 1; sweep <= cfg.picard_max; ++sweep) {
    const auto r1_node = node_average(g, it.rho1);
    const auto r2_node = node_average(g, it.rho2);
    std::vector<double> rho_node(g.nodes());
    for (int i = 0; i < g.nodes(); ++i) rho_node[i] = r1_node[i] + r2_node[i];
    // flux coefficients at free nodes only
    std::vector<int> free_nodes;
    for (int i = 0; i < g.nodes(); ++i) {
      if (g.node_is_free(i)) free_nodes.push_back(i);
    }
    std::vector<double> fr1(free_nodes.size()), fr2(free_nodes.size());
    for (std::size_t k = 0; k < free_nodes.size(); ++k) {
      fr1[k] = r1_node[free_nodes[k]];
      fr2[k] = r2_node[free_nodes[k]];
    }
    kernels::flux_coefficients(fr1, fr2, cfg.params, fc);
    std::vector<double> c11(g.nodes(), 0.0), c12(g.nodes(), 0.0);
    for (std::size_t k = 0; k < free_nodes.size(); ++k) {
      c11[free_nodes[k]] = fc.c11[k];
      c12[free_nodes[k]] = fc.c12[k];
    }

    BandedSystem sys(lay.size());
    add_velocity_rows(sys, lay, g, cfg.params.viscosity_1d(), dt, rho_node, it.u,
                      s.u, src, t_new);
    for (int i = 0; i < n; ++i) {
      if (!g.node_is_free(i)) continue;
      const int row = lay.u(i);
      const int l = g.cell_left_of_node(i);
      const int r = g.cell_right_of_node(i);
      sys.add(row, lay.a(r), 1.0 / (m1 * dx));
      sys.add(row, lay.a(l), -1.0 / (m1 * dx));
      sys.add(row, lay.b(r), 1.0 / (m2 * dx));
      sys.add(row, lay.b(l), -1.0 / (m2 * dx));
    }
    add_transport_rows(sys, lay, g, dt, r1_node, false);
    add_transport_rows(sys, lay, g, dt, r2_node, true);
    for (int j = 0; j < n; ++j) {
      const int R = g.right_node(j);
      const int L = g.left_node(j);
      const int row1 = lay.a(j);
      const int row2 = lay.b(j);
      // +F1_R / dx and -F1_L / dx; species 2 rows carry the negation
      if (g.node_is_free(R)) {
        const int jp = g.cell_right_of_node(R);
        for (int sgn = 0; sgn < 2; ++sgn) {
          const int row = sgn == 0 ? row1 : row2;
          const double f = sgn == 0 ? 1.0 : -1.0;
          sys.add(row, lay.a(jp), f * c11[R] * inv2);
          sys.add(row, lay.a(j), -f * c11[R] * inv2);
          sys.add(row, lay.b(jp), f * c12[R] * inv2);
          sys.add(row, lay.b(j), -f * c12[R] * inv2);
        }
      }
      if (g.node_is_free(L)) {
        const int jm = g.cell_left_of_node(L);
        for (int sgn = 0; sgn < 2; ++sgn) {
          const int row = sgn == 0 ? row1 : row2;
          const double f = sgn == 0 ? 1.0 : -1.0;
          sys.add(row, lay.a(j), -f * c11[L] * inv2);
          sys.add(row, lay.a(jm), f * c11[L] * inv2);
          sys.add(row, lay.b(j), -f * c12[L] * inv2);
          sys.add(row, lay.b(jm), f * c12[L] * inv2);
        }
      }
      sys.rhs(row1) = s.rho1[j] / dt + eval(src, &Sources::rho1, g.cell_center(j), t_new);
      sys.rhs(row2) = s.rho2[j] / dt + eval(src, &Sources::rho2, g.cell_center(j), t_new);
    }

    const auto x = sys.solve();
    PrimitiveState next;
    next.u.assign(g.nodes(), 0.0);
    for (int i = 0; i < n; ++i) {
      if (g.node_is_free(i)) next.u[i] = x[lay.u(i)];
    }
    std::vector<double> s1(n), s2(n);
    for (int j = 0; j < n; ++j) {
      s1[j] = x[lay.a(j)];
      s2[j] = x[lay.b(j)];
    }
    std::vector<double> flux1(g.nodes(), 0.0), flux2(g.nodes(), 0.0);
    for (int i = 0; i < g.nodes(); ++i) {
      if (!g.node_is_free(i)) continue;
      const int l = g.cell_left_of_node(i);
      const int r = g.cell_right_of_node(i);
      const double f1 = (c11[i] * (s1[r] - s1[l]) + c12[i] * (s2[r] - s2[l])) / dx;
      flux1[i] = r1_node[i] * next.u[i] + f1;
      flux2[i] = r2_node[i] * next.u[i] - f1;
    }
    conservative_update(g, dt, s.rho1, flux1, src, &Sources::rho1, t_new, next.rho1);
    conservative_update(g, dt, s.rho2, flux2, src, &Sources::rho2, t_new, next.rho2);
    require_positive_field(g, next.rho1, "rho1", t_new);
    require_positive_field(g, next.rho2, "rho2", t_new);

    const double change = relative_change(
        {{&it.u, &next.u}, {&it.rho1, &next.rho1}, {&it.rho2, &next.rho2}});
    it = std::move(next);
    if (change < cfg.picard_tol) return {std::move(it), sweep};
    if (sweep == cfg.picard_max) picard_failure(sweep, change, t_new);
  }
  picard_failure(cfg.picard_max, 0.0, t_new);
}

TimeSeriesRecord diagnose(const PrimitiveState& p, const EntropicState& e,
                          const Grid1D& grid, double t, int picard_iters) {
  const double dx = grid.dx();
  TimeSeriesRecord r;
  r.t = t;
  r.picard_iters = picard_iters;
  double mean_rho = 0.0;
  double mean_h = 0.0;
  for (std::size_t j = 0; j < e.rho.size(); ++j) {
    r.mass_total += e.rho[j];
    r.mass1 += p.rho1[j];
    r.mass2 += p.rho2[j];
    mean_h += e.h[j];
  }
  mean_rho = r.mass_total / e.rho.size();
  mean_h /= e.h.size();
  r.mass_total *= dx;
  r.mass1 *= dx;
  r.mass2 *= dx;

  r.min_rho1 = r.max_rho1 = p.rho1.front();
  r.min_rho2 = r.max_rho2 = p.rho2.front();
  for (std::size_t j = 0; j < e.rho.size(); ++j) {
    const double z = e.rho[j] - mean_rho;
    const double h = e.h[j] - mean_h;
    r.l2_zeta += z * z;
    r.l2_h += h * h;
    r.linf_zeta = std::max(r.linf_zeta, std::abs(z));
    r.linf_h = std::max(r.linf_h, std::abs(h));
    r.min_rho1 = std::min(r.min_rho1, p.rho1[j]);
    r.max_rho1 = std::max(r.max_rho1, p.rho1[j]);
    r.min_rho2 = std::min(r.min_rho2, p.rho2[j]);
    r.max_rho2 = std::max(r.max_rho2, p.rho2[j]);
  }
  for (double u : e.u) {
    r.l2_u += u * u;
    r.linf_u = std::max(r.linf_u, std::abs(u));
  }
  r.l2_zeta = std::sqrt(r.l2_zeta * dx);
  r.l2_h = std::sqrt(r.l2_h * dx);
  r.l2_u = std::sqrt(r.l2_u * dx);
  return r;
}

namespace {

template <typename E>
[[noreturn]] void rethrow_with_step(const E& e, int step);

template <>
[[noreturn]] void rethrow_with_step(const PositivityLoss& e, int step) {
  throw PositivityLoss("step " + std::to_string(step) + ": " + e.what(), e.cell(),
                       e.x(), e.t(), e.value());
}

template <>
[[noreturn]] void rethrow_with_step(const ConvergenceError& e, int step) {
  throw ConvergenceError("step " + std::to_string(step) + ": " + e.what());
}

template <>
[[noreturn]] void rethrow_with_step(const SingularMatrixError& e, int step) {
  throw SingularMatrixError("step " + std::to_string(step) + ": " + e.what());
}

template <>
[[noreturn]] void rethrow_with_step(const DomainError& e, int step) {
  throw DomainError("step " + std::to_string(step) + ": " + e.what());
}

template <typename State, typename Stepper>
RunResult march(const SimConfig& cfg, State state, Stepper&& stepper,
                const Sources* src) {
  cfg.validate();
  const Grid1D& g = cfg.grid;
  auto both = [&](const State& s) -> std::pair<PrimitiveState, EntropicState> {
    if constexpr (std::is_same_v<State, EntropicState>) {
      return {to_primitive(s, cfg.params), s};
    } else {
      return {s, to_entropic(s, cfg.params)};
    }
  };

  RunResult out;
  {
    auto [p, e] = both(state);
    out.records.push_back(diagnose(p, e, g, 0.0, 0));
  }
  const long long steps =
      cfg.t_end > 0.0 ? static_cast<long long>(std::ceil(cfg.t_end / cfg.dt - 1e-9)) : 0;
  double t = 0.0;
  for (long long k = 0; k < steps; ++k) {
    const double target = std::min(static_cast<double>(k + 1) * cfg.dt, cfg.t_end);
    int iters = 0;
    try {
      while (t < target) {
        const double umax = std::max(max_abs(state.u), cfg.u_floor);
        double h = std::min(target - t, cfg.cfl_limit * g.dx() / umax);
        const bool last = h >= target - t;
        auto r = stepper(state, t, h, cfg, src);
        state = std::move(r.state);
        iters += r.picard_iters;
        t = last ? target : t + h;
      }
    } catch (const PositivityLoss& e) {
      rethrow_with_step(e, static_cast<int>(k + 1));
    } catch (const ConvergenceError& e) {
      rethrow_with_step(e, static_cast<int>(k + 1));
    } catch (const SingularMatrixError& e) {
      rethrow_with_step(e, static_cast<int>(k + 1));
    } catch (const DomainError& e) {
      rethrow_with_step(e, static_cast<int>(k + 1));
    }
    ++out.steps;
    if ((k + 1) % cfg.output_every == 0 || k + 1 == steps) {
      auto [p, e] = both(state);
      out.records.push_back(diagnose(p, e, g, t, iters));
    }
  }
  auto [p, e] = both(state);
  out.primitive = std::move(p);
  out.entropic = std::move(e);
  out.t_final = t;
  return out;
}

}  // namespace

RunResult run(const SimConfig& cfg, const Sources* sources) {
  if (cfg.formulation == Formulation::entropic) {
    return march(cfg, initial_entropic(cfg), step_entropic, sources);
  }
  return march(cfg, initial_primitive(cfg), step_primitive, sources);
}

RunResult run_from(const SimConfig& cfg, const PrimitiveState& initial,
                   const Sources* sources) {
  if (cfg.formulation == Formulation::entropic) {
    return march(cfg, to_entropic(initial, cfg.params), step_entropic, sources);
  }
  return march(cfg, initial, step_primitive, sources);
}

}  // namespace mixtura
