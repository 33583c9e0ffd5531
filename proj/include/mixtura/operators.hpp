#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <array>
#include <span>
#include <vector>

#include "mixtura/grid.hpp"

namespace mixtura {

/// Sparse banded difference operator. Immutable after assembly.
struct DiscreteOperator {
  using Matrix = Eigen::SparseMatrix<double, Eigen::RowMajor>;

  Matrix matrix;

  int rows() const { return static_cast<int>(matrix.rows()); }
  int cols() const { return static_cast<int>(matrix.cols()); }

  std::vector<double> apply(std::span<const double> x) const;
  Field apply(const Field& f, Location range) const;
  Eigen::MatrixXd dense() const { return Eigen::MatrixXd(matrix); }
};

/// Centred second-order gradient of a field at `loc`, mapped to the same
/// location. Wall grids use one-sided second-order stencils at the ends.
DiscreteOperator gradient_op(const Grid1D& grid, Location loc = Location::cell);

/// Compact gradient from cell centres to nodes, (f_j - f_{j-1}) / dx.
/// Rows of pinned wall nodes are empty.
DiscreteOperator face_gradient_op(const Grid1D& grid);

/// Divergence of a node field into cells, (u_{j+1} - u_j) / dx.
/// Equals minus the transpose of face_gradient_op on the free nodes.
DiscreteOperator node_divergence_op(const Grid1D& grid);

/// Second difference of a node field. Wall endpoint rows are empty; use
/// apply_dirichlet_zero to eliminate them.
DiscreteOperator node_laplacian_op(const Grid1D& grid);

/// Flux-form divergence (F_{j+1} - F_j) / dx of face (node) fluxes.
/// On a wall grid face_flux has n + 1 entries including both wall faces.
Field divergence_conservative(std::span<const double> face_flux,
                              const Grid1D& grid);

/// Cell-sum of a cell field times dx, accumulated left to right.
double integrate(const Field& f);

/// div(gamma grad .) on cell centres in flux form with arithmetic-mean face
/// coefficients. On wall grids `neumann` closes the wall faces with zero
/// flux (mirror ghost); otherwise with a homogeneous Dirichlet ghost.
DiscreteOperator variable_diffusion_op(const Field& gamma, bool neumann = true);

/// Removes the pinned wall-node rows and columns of a node operator.
DiscreteOperator apply_dirichlet_zero(const DiscreteOperator& op,
                                      const Grid1D& grid);
/// Sets the wall-node values of a node field to zero.
void apply_dirichlet_zero(Field& f);
/// Wall-node values of a node field: {u(0), u(L)}.
std::array<double, 2> dirichlet_residual(const Field& f);

/// Folds the two ghost columns of an (n) x (n + 2) ghost-extended cell
/// operator back into the boundary cells using mirror ghosts f_{-1} = f_0,
/// f_n = f_{n-1}.
DiscreteOperator apply_neumann_zero(const DiscreteOperator& ghosted);
/// Ghost-extended copy of a cell field (n + 2 values) with mirror ghosts.
std::vector<double> apply_neumann_zero(const Field& f);
/// Outward normal derivative at both walls from a one-sided second-order
/// fit through the three nearest cell centres: {-f'(0), f'(L)}.
std::array<double, 2> neumann_residual(const Field& f);

}  // namespace mixtura
