#ifndef NORMSOL_SRC_TRIDIAGONAL_HPP
#define NORMSOL_SRC_TRIDIAGONAL_HPP

#include <stdexcept>
#include <string>
#include <vector>

extern "C" void dgtsv_(const int* n, const int* nrhs, double* dl, double* d, double* du, double* b,
                       const int* ldb, int* info);

namespace normsol::detail {

/// Rows of a tridiagonal matrix: lower[i] couples row i+1 to column i,
/// upper[i] couples row i to column i+1.
struct Tridiagonal {
  std::vector<double> lower;
  std::vector<double> diag;
  std::vector<double> upper;
};

/// Solves T X = B in place for a column-major block of `nrhs` right-hand
/// sides (LAPACK dgtsv, partial pivoting). Throws std::runtime_error when
/// the matrix is singular.
inline void solve_tridiagonal(Tridiagonal t, std::vector<double>& rhs, int nrhs) {
  const int n = static_cast<int>(t.diag.size());
  if (n == 0) return;
  if (static_cast<int>(rhs.size()) != n * nrhs) {
    throw std::invalid_argument("solve_tridiagonal: right-hand side has the wrong size");
  }
  int info = 0;
  dgtsv_(&n, &nrhs, t.lower.data(), t.diag.data(), t.upper.data(), rhs.data(), &n, &info);
  if (info != 0) {
    throw std::runtime_error("tridiagonal solve failed (dgtsv info = " + std::to_string(info) + ")");
  }
}

}  // namespace normsol::detail

#endif  // NORMSOL_SRC_TRIDIAGONAL_HPP
