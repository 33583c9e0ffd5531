#pragma once

#include <vector>

#include "mixtura/dynamics.hpp"

namespace mixtura {

/// Smooth manufactured fields compatible with both boundary kinds:
///   rho1 = r1 + A cos(k x) cos(t)
///   rho2 = r2 + A cos(2 k x) / (1 + t)
///   u    = A sin(k x) cos(t)
/// with k = pi/L on wall grids and 2 pi/L on periodic grids. A = 0 gives
/// the constant state.
class ManufacturedSolution {
 public:
  ManufacturedSolution(const MixtureParams& params, const Grid1D& grid,
                       double amplitude, double r1 = 1.0, double r2 = 1.0);

  double rho1(double x, double t) const;
  double rho2(double x, double t) const;
  double u(double x, double t) const;

  /// Forcing for the primitive (rho1, rho2, u) system.
  Sources primitive_sources() const;
  /// Forcing for the entropic (rho, h, u) system.
  Sources entropic_sources() const;

  PrimitiveState sample(double t) const;

 private:
  struct Point {
    double r1, r1x, r1xx, r1t;
    double r2, r2x, r2xx, r2t;
    double u, ux, uxx, ut;
  };
  Point at(double x, double t) const;
  double flux_divergence(const Point& q) const;  // d/dx F1
  double momentum_source(const Point& q) const;

  MixtureParams params_;
  Grid1D grid_;
  double amp_, r1_, r2_, k_;
};

struct MmsError {
  int cells = 0;
  double dt = 0.0;
  double error = 0.0;  // sqrt(|e_rho1|^2 + |e_rho2|^2 + |e_u|^2), discrete L2
};

/// Runs the forced system from the exact data to cfg.t_end and measures the
/// error against the manufactured fields.
MmsError mms_run(const SimConfig& cfg, const ManufacturedSolution& m);

/// Least-squares slope of log(y) against log(x).
double loglog_slope(const std::vector<double>& x, const std::vector<double>& y);

struct ConvergenceStudy {
  std::vector<MmsError> rows;
  double order = 0.0;
};

/// Grid refinement with dt = dt_coefficient * dx^2; order from error vs dx.
ConvergenceStudy spatial_sweep(const SimConfig& base, const std::vector<int>& cells,
                               double dt_coefficient, double amplitude);
/// Step refinement on base.grid; order from error vs dt.
ConvergenceStudy temporal_sweep(const SimConfig& base, const std::vector<double>& dts,
                                double amplitude);

}  // namespace mixtura
