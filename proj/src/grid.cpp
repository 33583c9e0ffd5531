#include "mixtura/grid.hpp"

#include "mixtura/errors.hpp"

namespace mixtura {

Boundary parse_boundary(const std::string& s) {
  if (s == "wall") return Boundary::wall;
  if (s == "periodic") return Boundary::periodic;
  throw ConfigError("unknown boundary kind '" + s + "' (expected wall|periodic)");
}

std::string to_string(Boundary b) {
  return b == Boundary::wall ? "wall" : "periodic";
}

Grid1D::Grid1D(int cells, double length, Boundary bc)
    : n_(cells), length_(length), bc_(bc), dx_(length / cells) {
  if (cells < kMinCells) {
    throw DomainError("grid needs at least 8 cells");
  }
  if (!(length > 0.0)) {
    throw DomainError("domain length must be positive");
  }
}

std::vector<double> Grid1D::cell_centers() const {
  std::vector<double> x(n_);
  for (int j = 0; j < n_; ++j) x[j] = cell_center(j);
  return x;
}

std::vector<double> Grid1D::node_positions() const {
  std::vector<double> x(nodes());
  for (int i = 0; i < nodes(); ++i) x[i] = node(i);
  return x;
}

int Grid1D::cell_left_of_node(int i) const noexcept {
  if (i > 0) return i - 1;
  return bc_ == Boundary::periodic ? n_ - 1 : -1;
}

int Grid1D::cell_right_of_node(int i) const noexcept {
  if (i < n_) return i;
  return bc_ == Boundary::periodic ? 0 : -1;
}

Field::Field(Grid1D g, Location loc)
    : grid(g),
      location(loc),
      values(loc == Location::cell ? g.cells() : g.nodes(), 0.0) {}

Field::Field(Grid1D g, Location loc, std::vector<double> v)
    : grid(g), location(loc), values(std::move(v)) {
  const std::size_t expected = loc == Location::cell ? g.cells() : g.nodes();
  if (values.size() != expected) {
    throw DomainError("field length does not match grid layout");
  }
}

}  // namespace mixtura
