#pragma once

#include <cmath>
#include <cstddef>
#include <vector>

#include "rpt/errors.hpp"
#include "rpt/sym_matrix.hpp"

namespace rpt {

struct CholeskyResult {
  bool success = false;
  std::size_t dim = 0;
  std::vector<double> lower;  // row-major, upper part zeroed
};

// L L' factorization of a symmetric matrix. Fails (success = false) when a
// pivot drops to or below pivot_threshold * max(1, max |diagonal|), which
// doubles as the positive-definiteness test.
inline CholeskyResult cholesky(const SymMatrix& m, double pivot_threshold = 0.0) {
  const std::size_t n = m.dim();
  CholeskyResult out;
  out.dim = n;
  out.lower.assign(n * n, 0.0);
  double diag_scale = 1.0;
  for (std::size_t i = 0; i < n; ++i) diag_scale = std::max(diag_scale, std::abs(m(i, i)));
  const double floor = pivot_threshold * diag_scale;
  for (std::size_t j = 0; j < n; ++j) {
    double d = m(j, j);
    for (std::size_t k = 0; k < j; ++k) d -= out.lower[j * n + k] * out.lower[j * n + k];
    if (!(d > floor)) return out;  // not positive definite at this pivot
    const double ljj = std::sqrt(d);
    out.lower[j * n + j] = ljj;
    for (std::size_t i = j + 1; i < n; ++i) {
      double s = m(i, j);
      for (std::size_t k = 0; k < j; ++k) s -= out.lower[i * n + k] * out.lower[j * n + k];
      out.lower[i * n + j] = s / ljj;
    }
  }
  out.success = true;
  return out;
}

inline std::vector<double> cholesky_solve(const CholeskyResult& chol,
                                          const std::vector<double>& rhs) {
  if (!chol.success) throw NumericalError("cholesky_solve: factorization unavailable");
  const std::size_t n = chol.dim;
  if (rhs.size() != n) throw ValidationError("cholesky_solve: rhs length mismatch");
  std::vector<double> y(n);
  for (std::size_t i = 0; i < n; ++i) {
    double s = rhs[i];
    for (std::size_t k = 0; k < i; ++k) s -= chol.lower[i * n + k] * y[k];
    y[i] = s / chol.lower[i * n + i];
  }
  std::vector<double> x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = y[ii];
    for (std::size_t k = ii + 1; k < n; ++k) s -= chol.lower[k * n + ii] * x[k];
    x[ii] = s / chol.lower[ii * n + ii];
  }
  return x;
}

inline bool is_positive_definite(const SymMatrix& m, double pivot_threshold = 1e-12) {
  return cholesky(m, pivot_threshold).success;
}

}  // namespace rpt
