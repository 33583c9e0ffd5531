#pragma once

#include <span>
#include <vector>

#include "mixtura/model.hpp"

namespace mixtura::kernels {

/// Loops shorter than this run on one thread.
inline constexpr std::size_t kParallelThreshold = 2048;

/// Cell coefficients of the symmetrized system, evaluated through phi.
struct EntropicCoefficients {
  std::vector<double> rho1, rho2;
  std::vector<double> pressure_density;  // rho / Sigma
  std::vector<double> coupling;          // (m1 - m2) rho1 rho2 / Sigma
  std::vector<double> capacity;          // m1 m2 rho1 rho2 / Sigma
  std::vector<double> diffusivity;       // rho1 rho2 / (p rho)

  void resize(std::size_t n);
};

/// Coefficients of F1 = c11 d(rho1) + c12 d(rho2) at given densities.
struct FluxCoefficients {
  std::vector<double> c11, c12;

  void resize(std::size_t n);
};

void phi_field(std::span<const double> h, std::span<const double> rho,
               const MixtureParams& params, std::span<double> rho1,
               std::span<double> rho2);
void psi_field(std::span<const double> rho1, std::span<const double> rho2,
               const MixtureParams& params, std::span<double> h,
               std::span<double> rho);
void entropic_coefficients(std::span<const double> h,
                           std::span<const double> rho,
                           const MixtureParams& params,
                           EntropicCoefficients& out);
void flux_coefficients(std::span<const double> rho1,
                       std::span<const double> rho2,
                       const MixtureParams& params, FluxCoefficients& out);

/// Single-threaded reference versions; results are bitwise identical.
namespace serial {
void phi_field(std::span<const double> h, std::span<const double> rho,
               const MixtureParams& params, std::span<double> rho1,
               std::span<double> rho2);
void psi_field(std::span<const double> rho1, std::span<const double> rho2,
               const MixtureParams& params, std::span<double> h,
               std::span<double> rho);
void entropic_coefficients(std::span<const double> h,
                           std::span<const double> rho,
                           const MixtureParams& params,
                           EntropicCoefficients& out);
void flux_coefficients(std::span<const double> rho1,
                       std::span<const double> rho2,
                       const MixtureParams& params, FluxCoefficients& out);
}  // namespace serial

}  // namespace mixtura::kernels
