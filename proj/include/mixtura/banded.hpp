#pragma once

#include <vector>

namespace mixtura {

/// General banded linear system assembled from (row, col, value) entries and
/// solved by LU with partial pivoting (LAPACK dgbsv). Repeated entries add.
class BandedSystem {
 public:
  explicit BandedSystem(int n) : n_(n), rhs_(n, 0.0) {}

  int size() const noexcept { return n_; }

  void add(int row, int col, double value);
  double& rhs(int row) { return rhs_[row]; }
  const std::vector<double>& rhs() const noexcept { return rhs_; }

  /// Lower/upper bandwidth of the entries added so far.
  int lower_bandwidth() const noexcept { return kl_; }
  int upper_bandwidth() const noexcept { return ku_; }

  /// Solves A x = rhs. Throws SingularMatrixError on a zero pivot.
  std::vector<double> solve() const;

  /// y = A x, for residual checks.
  std::vector<double> multiply(const std::vector<double>& x) const;

 private:
  struct Entry {
    int row, col;
    double value;
  };
  int n_;
  int kl_ = 0;
  int ku_ = 0;
  std::vector<Entry> entries_;
  std::vector<double> rhs_;
};

}  // namespace mixtura
