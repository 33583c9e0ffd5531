#include "mixtura/kernels.hpp"

#include <exception>

#include "mixtura/errors.hpp"

namespace mixtura::kernels {

void EntropicCoefficients::resize(std::size_t n) {
  for (auto* v : {&rho1, &rho2, &pressure_density, &coupling, &capacity,
                  &diffusivity}) {
    v->resize(n);
  }
}

void FluxCoefficients::resize(std::size_t n) {
  c11.resize(n);
  c12.resize(n);
}

namespace {

void check_sizes(std::size_t a, std::size_t b) {
  if (a != b) throw DomainError("kernel input sizes differ");
}

inline void phi_point(std::size_t i, std::span<const double> h,
                      std::span<const double> rho, const MixtureParams& params,
                      std::span<double> rho1, std::span<double> rho2) {
  const PointState p = phi({h[i], rho[i]}, params);
  rho1[i] = p.rho1;
  rho2[i] = p.rho2;
}

inline void psi_point(std::size_t i, std::span<const double> rho1,
                      std::span<const double> rho2, const MixtureParams& params,
                      std::span<double> h, std::span<double> rho) {
  const EntropicPoint e = psi({rho1[i], rho2[i]}, params);
  h[i] = e.h;
  rho[i] = e.rho;
}

inline void coeff_point(std::size_t i, std::span<const double> h,
                        std::span<const double> rho,
                        const MixtureParams& params, EntropicCoefficients& out) {
  const PointState p = phi({h[i], rho[i]}, params);
  const auto k = symmetrized_coefficients(p, params);
  out.rho1[i] = p.rho1;
  out.rho2[i] = p.rho2;
  out.pressure_density[i] = k.pressure_density;
  out.coupling[i] = k.coupling;
  out.capacity[i] = k.capacity;
  out.diffusivity[i] = k.diffusivity;
}

inline void flux_point(std::size_t i, std::span<const double> rho1,
                       std::span<const double> rho2,
                       const MixtureParams& params, FluxCoefficients& out) {
  const PointState p{rho1[i], rho2[i]};
  const double q = pressure(p, params) * p.total();
  out.c11[i] = -p.rho2 / (q * params.m1());
  out.c12[i] = p.rho1 / (q * params.m2());
}

// Exceptions cannot leave an OpenMP region; keep the first one and rethrow.
template <typename Body>
void parallel_for(std::size_t n, Body&& body) {
  std::exception_ptr error;
  const long long count = static_cast<long long>(n);
#pragma omp parallel for schedule(static) if (n >= kParallelThreshold)
  for (long long i = 0; i < count; ++i) {
    try {
      body(static_cast<std::size_t>(i));
    } catch (...) {
#pragma omp critical(mixtura_kernel_error)
      if (!error) error = std::current_exception();
    }
  }
  if (error) std::rethrow_exception(error);
}

}  // namespace

void phi_field(std::span<const double> h, std::span<const double> rho,
               const MixtureParams& params, std::span<double> rho1,
               std::span<double> rho2) {
  check_sizes(h.size(), rho.size());
  parallel_for(h.size(), [&](std::size_t i) { phi_point(i, h, rho, params, rho1, rho2); });
}

void psi_field(std::span<const double> rho1, std::span<const double> rho2,
               const MixtureParams& params, std::span<double> h,
               std::span<double> rho) {
  check_sizes(rho1.size(), rho2.size());
  parallel_for(rho1.size(), [&](std::size_t i) { psi_point(i, rho1, rho2, params, h, rho); });
}

void entropic_coefficients(std::span<const double> h,
                           std::span<const double> rho,
                           const MixtureParams& params,
                           EntropicCoefficients& out) {
  check_sizes(h.size(), rho.size());
  out.resize(h.size());
  parallel_for(h.size(), [&](std::size_t i) { coeff_point(i, h, rho, params, out); });
}

void flux_coefficients(std::span<const double> rho1,
                       std::span<const double> rho2,
                       const MixtureParams& params, FluxCoefficients& out) {
  check_sizes(rho1.size(), rho2.size());
  out.resize(rho1.size());
  parallel_for(rho1.size(), [&](std::size_t i) { flux_point(i, rho1, rho2, params, out); });
}

namespace serial {

void phi_field(std::span<const double> h, std::span<const double> rho,
               const MixtureParams& params, std::span<double> rho1,
               std::span<double> rho2) {
  check_sizes(h.size(), rho.size());
  for (std::size_t i = 0; i < h.size(); ++i) phi_point(i, h, rho, params, rho1, rho2);
}

void psi_field(std::span<const double> rho1, std::span<const double> rho2,
               const MixtureParams& params, std::span<double> h,
               std::span<double> rho) {
  check_sizes(rho1.size(), rho2.size());
  for (std::size_t i = 0; i < rho1.size(); ++i) psi_point(i, rho1, rho2, params, h, rho);
}

void entropic_coefficients(std::span<const double> h,
                           std::span<const double> rho,
                           const MixtureParams& params,
                           EntropicCoefficients& out) {
  check_sizes(h.size(), rho.size());
  out.resize(h.size());
  for (std::size_t i = 0; i < h.size(); ++i) coeff_point(i, h, rho, params, out);
}

void flux_coefficients(std::span<const double> rho1,
                       std::span<const double> rho2,
                       const MixtureParams& params, FluxCoefficients& out) {
  check_sizes(rho1.size(), rho2.size());
  out.resize(rho1.size());
  for (std::size_t i = 0; i < rho1.size(); ++i) flux_point(i, rho1, rho2, params, out);
}

}  // namespace serial

}  // namespace mixtura::kernels
