#include "mixtura/operators.hpp"

#include <cassert>

#include "mixtura/errors.hpp"

namespace mixtura {

namespace {

using Triplet = Eigen::Triplet<double>;

DiscreteOperator build(int rows, int cols, const std::vector<Triplet>& t) {
  DiscreteOperator op;
  op.matrix.resize(rows, cols);
  op.matrix.setFromTriplets(t.begin(), t.end());
  op.matrix.makeCompressed();
  return op;
}

int wrap(int i, int n) { return ((i % n) + n) % n; }

}  // namespace

std::vector<double> DiscreteOperator::apply(std::span<const double> x) const {
  if (static_cast<int>(x.size()) != cols()) {
    throw DomainError("operator/vector size mismatch");
  }
  Eigen::Map<const Eigen::VectorXd> xv(x.data(), x.size());
  Eigen::VectorXd y = matrix * xv;
  return {y.data(), y.data() + y.size()};
}

Field DiscreteOperator::apply(const Field& f, Location range) const {
  return Field(f.grid, range, apply(f.values));
}

DiscreteOperator gradient_op(const Grid1D& grid, Location loc) {
  const int m = loc == Location::cell ? grid.cells() : grid.nodes();
  const double inv2dx = 1.0 / (2.0 * grid.dx());
  std::vector<Triplet> t;
  t.reserve(2 * m + 2);
  for (int i = 0; i < m; ++i) {
    if (grid.periodic()) {
      t.emplace_back(i, wrap(i + 1, m), inv2dx);
      t.emplace_back(i, wrap(i - 1, m), -inv2dx);
    } else if (i == 0) {
      t.emplace_back(i, 0, -3.0 * inv2dx);
      t.emplace_back(i, 1, 4.0 * inv2dx);
      t.emplace_back(i, 2, -1.0 * inv2dx);
    } else if (i == m - 1) {
      t.emplace_back(i, m - 1, 3.0 * inv2dx);
      t.emplace_back(i, m - 2, -4.0 * inv2dx);
      t.emplace_back(i, m - 3, 1.0 * inv2dx);
    } else {
      t.emplace_back(i, i + 1, inv2dx);
      t.emplace_back(i, i - 1, -inv2dx);
    }
  }
  return build(m, m, t);
}

DiscreteOperator face_gradient_op(const Grid1D& grid) {
  const double inv = 1.0 / grid.dx();
  std::vector<Triplet> t;
  for (int i = 0; i < grid.nodes(); ++i) {
    if (!grid.node_is_free(i)) continue;
    t.emplace_back(i, grid.cell_right_of_node(i), inv);
    t.emplace_back(i, grid.cell_left_of_node(i), -inv);
  }
  return build(grid.nodes(), grid.cells(), t);
}

DiscreteOperator node_divergence_op(const Grid1D& grid) {
  const double inv = 1.0 / grid.dx();
  std::vector<Triplet> t;
  for (int j = 0; j < grid.cells(); ++j) {
    const int r = grid.right_node(j);
    const int l = grid.left_node(j);
    if (grid.node_is_free(r)) t.emplace_back(j, r, inv);
    if (grid.node_is_free(l)) t.emplace_back(j, l, -inv);
  }
  return build(grid.cells(), grid.nodes(), t);
}

DiscreteOperator node_laplacian_op(const Grid1D& grid) {
  const int m = grid.nodes();
  const double inv = 1.0 / (grid.dx() * grid.dx());
  std::vector<Triplet> t;
  for (int i = 0; i < m; ++i) {
    if (!grid.node_is_free(i)) continue;
    const int l = grid.periodic() ? wrap(i - 1, m) : i - 1;
    const int r = grid.periodic() ? wrap(i + 1, m) : i + 1;
    t.emplace_back(i, l, inv);
    t.emplace_back(i, i, -2.0 * inv);
    t.emplace_back(i, r, inv);
  }
  return build(m, m, t);
}

Field divergence_conservative(std::span<const double> face_flux,
                              const Grid1D& grid) {
  if (static_cast<int>(face_flux.size()) != grid.nodes()) {
    throw DomainError("face flux must have one entry per node");
  }
  Field out(grid, Location::cell);
  const double inv = 1.0 / grid.dx();
  for (int j = 0; j < grid.cells(); ++j) {
    out.values[j] = (face_flux[grid.right_node(j)] - face_flux[grid.left_node(j)]) * inv;
  }
  return out;
}

double integrate(const Field& f) {
  double s = 0.0;
  for (double v : f.values) s += v;
  return s * f.grid.dx();
}

DiscreteOperator variable_diffusion_op(const Field& gamma, bool neumann) {
  if (gamma.location != Location::cell) {
    throw DomainError("diffusion coefficient must be cell-centred");
  }
  const Grid1D& grid = gamma.grid;
  const int n = grid.cells();
  const double inv = 1.0 / (grid.dx() * grid.dx());
  std::vector<Triplet> t;
  if (grid.periodic()) {
    for (int j = 0; j < n; ++j) {
      const int l = wrap(j - 1, n);
      const int r = wrap(j + 1, n);
      const double gl = 0.5 * (gamma[l] + gamma[j]);
      const double gr = 0.5 * (gamma[j] + gamma[r]);
      t.emplace_back(j, l, gl * inv);
      t.emplace_back(j, j, -(gl + gr) * inv);
      t.emplace_back(j, r, gr * inv);
    }
    return build(n, n, t);
  }
  // Ghost-extended assembly: column c <-> cell c - 1; wall faces take the
  // adjacent cell's coefficient.
  for (int j = 0; j < n; ++j) {
    const double gl = j > 0 ? 0.5 * (gamma[j - 1] + gamma[j]) : gamma[j];
    const double gr = j + 1 < n ? 0.5 * (gamma[j] + gamma[j + 1]) : gamma[j];
    t.emplace_back(j, j, gl * inv);
    t.emplace_back(j, j + 1, -(gl + gr) * inv);
    t.emplace_back(j, j + 2, gr * inv);
  }
  DiscreteOperator ghosted = build(n, n + 2, t);
  if (neumann) {
    return apply_neumann_zero(ghosted);
  }
  // odd mirror: f_{-1} = -f_0, f_n = -f_{n-1}
  std::vector<Triplet> folded;
  for (int r = 0; r < ghosted.matrix.outerSize(); ++r) {
    for (DiscreteOperator::Matrix::InnerIterator it(ghosted.matrix, r); it; ++it) {
      const int c = static_cast<int>(it.col());
      if (c == 0) {
        folded.emplace_back(r, 0, -it.value());
      } else if (c == n + 1) {
        folded.emplace_back(r, n - 1, -it.value());
      } else {
        folded.emplace_back(r, c - 1, it.value());
      }
    }
  }
  return build(n, n, folded);
}

DiscreteOperator apply_dirichlet_zero(const DiscreteOperator& op,
                                      const Grid1D& grid) {
  if (grid.periodic()) return op;
  const int m = grid.nodes();
  if (op.rows() != m || op.cols() != m) {
    throw DomainError("apply_dirichlet_zero expects a node-to-node operator");
  }
  std::vector<Triplet> t;
  for (int r = 1; r < m - 1; ++r) {
    for (DiscreteOperator::Matrix::InnerIterator it(op.matrix, r); it; ++it) {
      const int c = static_cast<int>(it.col());
      if (c == 0 || c == m - 1) continue;
      t.emplace_back(r - 1, c - 1, it.value());
    }
  }
  return build(m - 2, m - 2, t);
}

void apply_dirichlet_zero(Field& f) {
  if (f.location != Location::node || f.grid.periodic()) return;
  f.values.front() = 0.0;
  f.values.back() = 0.0;
}

std::array<double, 2> dirichlet_residual(const Field& f) {
  if (f.location != Location::node) {
    throw DomainError("Dirichlet residual needs a node field");
  }
  if (f.grid.periodic()) return {0.0, 0.0};
  return {f.values.front(), f.values.back()};
}

DiscreteOperator apply_neumann_zero(const DiscreteOperator& ghosted) {
  const int n = ghosted.rows();
  if (ghosted.cols() != n + 2) {
    throw DomainError("apply_neumann_zero expects n x (n + 2) ghost columns");
  }
  std::vector<Triplet> t;
  for (int r = 0; r < n; ++r) {
    for (DiscreteOperator::Matrix::InnerIterator it(ghosted.matrix, r); it; ++it) {
      const int c = static_cast<int>(it.col());
      const int target = c == 0 ? 0 : (c == n + 1 ? n - 1 : c - 1);
      t.emplace_back(r, target, it.value());
    }
  }
  return build(n, n, t);
}

std::vector<double> apply_neumann_zero(const Field& f) {
  if (f.location != Location::cell) {
    throw DomainError("Neumann ghosts apply to cell fields");
  }
  std::vector<double> g(f.size() + 2);
  std::copy(f.values.begin(), f.values.end(), g.begin() + 1);
  if (f.grid.periodic()) {
    g.front() = f.values.back();
    g.back() = f.values.front();
  } else {
    g.front() = f.values.front();
    g.back() = f.values.back();
  }
  return g;
}

std::array<double, 2> neumann_residual(const Field& f) {
  if (f.location != Location::cell) {
    throw DomainError("Neumann residual needs a cell field");
  }
  if (f.grid.periodic()) return {0.0, 0.0};
  const auto& v = f.values;
  const std::size_t n = v.size();
  const double inv = 1.0 / f.grid.dx();
  // derivative at x = 0 from centres dx/2, 3dx/2, 5dx/2 (exact for quadratics)
  const double left = (-2.0 * v[0] + 3.0 * v[1] - v[2]) * inv;
  const double right = (2.0 * v[n - 1] - 3.0 * v[n - 2] + v[n - 3]) * inv;
  return {-left, right};
}

}  // namespace mixtura
