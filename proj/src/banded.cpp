#include "mixtura/banded.hpp"

#include <lapacke.h>

#include <algorithm>
#include <string>

#include "mixtura/errors.hpp"

namespace mixtura {

void BandedSystem::add(int row, int col, double value) {
  if (row < 0 || row >= n_ || col < 0 || col >= n_) {
    throw DomainError("banded entry out of range");
  }
  kl_ = std::max(kl_, row - col);
  ku_ = std::max(ku_, col - row);
  entries_.push_back({row, col, value});
}

std::vector<double> BandedSystem::solve() const {
  const int ldab = 2 * kl_ + ku_ + 1;
  // column-major band storage: A(i, j) -> ab[(kl + ku + i - j) + j * ldab]
  std::vector<double> ab(static_cast<std::size_t>(ldab) * n_, 0.0);
  for (const auto& e : entries_) {
    ab[static_cast<std::size_t>(kl_ + ku_ + e.row - e.col) +
       static_cast<std::size_t>(e.col) * ldab] += e.value;
  }
  std::vector<double> x = rhs_;
  std::vector<lapack_int> ipiv(n_);
  const lapack_int info = LAPACKE_dgbsv(LAPACK_COL_MAJOR, n_, kl_, ku_, 1,
                                        ab.data(), ldab, ipiv.data(), x.data(), n_);
  if (info > 0) {
    throw SingularMatrixError("banded LU: zero pivot at row " + std::to_string(info));
  }
  if (info < 0) {
    throw Error("dgbsv: illegal argument " + std::to_string(-info));
  }
  return x;
}

std::vector<double> BandedSystem::multiply(const std::vector<double>& x) const {
  std::vector<double> y(n_, 0.0);
  for (const auto& e : entries_) y[e.row] += e.value * x[e.col];
  return y;
}

}  // namespace mixtura
