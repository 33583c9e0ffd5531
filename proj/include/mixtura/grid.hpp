#pragma once

#include <string>
#include <vector>

namespace mixtura {

enum class Boundary { wall, periodic };

Boundary parse_boundary(const std::string& s);
std::string to_string(Boundary b);

/// Uniform 1-D mesh on [0, L] with n cells.
///
/// Scalars (rho, h, rho_k) live at cell centres x_j = (j + 1/2) dx, the
/// velocity at nodes x_i = i dx. A wall grid has n + 1 nodes including both
/// endpoints, where the velocity is pinned to zero; a periodic grid has n
/// nodes with node n identified with node 0.
class Grid1D {
 public:
  static constexpr int kMinCells = 8;

  Grid1D(int cells, double length, Boundary bc);

  int cells() const noexcept { return n_; }
  int nodes() const noexcept { return bc_ == Boundary::wall ? n_ + 1 : n_; }
  double length() const noexcept { return length_; }
  double dx() const noexcept { return dx_; }
  Boundary boundary() const noexcept { return bc_; }
  bool periodic() const noexcept { return bc_ == Boundary::periodic; }

  double cell_center(int j) const noexcept { return (j + 0.5) * dx_; }
  double node(int i) const noexcept { return i * dx_; }

  std::vector<double> cell_centers() const;
  std::vector<double> node_positions() const;

  /// Cell to the left/right of node i, wrapping on periodic grids; -1 when
  /// node i is a wall endpoint without such a cell.
  int cell_left_of_node(int i) const noexcept;
  int cell_right_of_node(int i) const noexcept;

  /// Node index of the left/right face of cell j (wraps on periodic grids).
  int left_node(int j) const noexcept { return j; }
  int right_node(int j) const noexcept {
    return (bc_ == Boundary::periodic && j + 1 == n_) ? 0 : j + 1;
  }

  /// True when the velocity at node i is an unknown (not a pinned wall).
  bool node_is_free(int i) const noexcept {
    return bc_ == Boundary::periodic || (i > 0 && i < n_);
  }

 private:
  int n_;
  double length_;
  Boundary bc_;
  double dx_;
};

enum class Location { cell, node };

/// Values aligned to either the cell centres or the nodes of a grid.
struct Field {
  Grid1D grid;
  Location location;
  std::vector<double> values;

  Field(Grid1D g, Location loc);
  Field(Grid1D g, Location loc, std::vector<double> v);

  std::size_t size() const noexcept { return values.size(); }
  double& operator[](std::size_t i) { return values[i]; }
  double operator[](std::size_t i) const { return values[i]; }
};

/// Samples f at the positions of the given location.
template <typename F>
Field sample(const Grid1D& grid, Location loc, F&& f) {
  Field out(grid, loc);
  for (std::size_t i = 0; i < out.size(); ++i) {
    const double x = loc == Location::cell ? grid.cell_center(static_cast<int>(i))
                                           : grid.node(static_cast<int>(i));
    out.values[i] = f(x);
  }
  return out;
}

}  // namespace mixtura
