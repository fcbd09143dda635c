#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "rpt/errors.hpp"
#include "rpt/rng.hpp"
#include "rpt/sym_matrix.hpp"

namespace rpt {
namespace detail {

// Dimension up to which eigenvalues are computed by direct tridiagonal
// reduction. Beyond it, power iteration is used.
inline constexpr std::size_t kDirectEigenDim = 64;

inline double pythag(double a, double b) { return std::hypot(a, b); }

// Householder reduction of a symmetric matrix to tridiagonal form.
// On exit d holds the diagonal and e the subdiagonal (e[0] = 0).
// If accumulate is set, a is overwritten with the orthogonal transform Q
// such that the input equals Q T Q'.
inline void tridiagonalize(std::vector<double>& a, std::size_t n, std::vector<double>& d,
                           std::vector<double>& e, bool accumulate) {
  d.assign(n, 0.0);
  e.assign(n, 0.0);
  for (std::size_t ii = n - 1; ii >= 1; --ii) {
    const std::size_t i = ii;
    const std::size_t l = i - 1;
    double h = 0.0;
    if (l > 0) {
      double scale = 0.0;
      for (std::size_t k = 0; k <= l; ++k) scale += std::abs(a[i * n + k]);
      if (scale == 0.0) {
        e[i] = a[i * n + l];
      } else {
        for (std::size_t k = 0; k <= l; ++k) {
          a[i * n + k] /= scale;
          h += a[i * n + k] * a[i * n + k];
        }
        double f = a[i * n + l];
        double g = f >= 0.0 ? -std::sqrt(h) : std::sqrt(h);
        e[i] = scale * g;
        h -= f * g;
        a[i * n + l] = f - g;
        f = 0.0;
        for (std::size_t j = 0; j <= l; ++j) {
          if (accumulate) a[j * n + i] = a[i * n + j] / h;
          g = 0.0;
          for (std::size_t k = 0; k <= j; ++k) g += a[j * n + k] * a[i * n + k];
          for (std::size_t k = j + 1; k <= l; ++k) g += a[k * n + j] * a[i * n + k];
          e[j] = g / h;
          f += e[j] * a[i * n + j];
        }
        const double hh = f / (h + h);
        for (std::size_t j = 0; j <= l; ++j) {
          f = a[i * n + j];
          e[j] = g = e[j] - hh * f;
          for (std::size_t k = 0; k <= j; ++k)
            a[j * n + k] -= f * e[k] + g * a[i * n + k];
        }
      }
    } else {
      e[i] = a[i * n + l];
    }
    d[i] = h;
  }
  d[0] = 0.0;
  e[0] = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (accumulate) {
      if (d[i] != 0.0) {
        for (std::size_t j = 0; j < i; ++j) {
          double g = 0.0;
          for (std::size_t k = 0; k < i; ++k) g += a[i * n + k] * a[k * n + j];
          for (std::size_t k = 0; k < i; ++k) a[k * n + j] -= g * a[k * n + i];
        }
      }
      d[i] = a[i * n + i];
      a[i * n + i] = 1.0;
      for (std::size_t j = 0; j < i; ++j) a[j * n + i] = a[i * n + j] = 0.0;
    } else {
      d[i] = a[i * n + i];
    }
  }
}

// Implicit-shift QL iteration on a tridiagonal matrix. d/e as produced by
// tridiagonalize; if z is non-null its columns are rotated along, yielding
// eigenvectors of the original matrix. Eigenvalues land in d, unsorted.
inline void tql_implicit(std::vector<double>& d, std::vector<double>& e, std::size_t n,
                         std::vector<double>* z) {
  if (n == 1) return;
  for (std::size_t i = 1; i < n; ++i) e[i - 1] = e[i];
  e[n - 1] = 0.0;
  for (std::size_t l = 0; l < n; ++l) {
    std::size_t iter = 0;
    std::size_t m;
    do {
      for (m = l; m + 1 < n; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m != l) {
        if (iter++ == 100)
          throw NumericalError("tql_implicit: too many iterations at row " + std::to_string(l));
        double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
        double r = pythag(g, 1.0);
        g = d[m] - d[l] + e[l] / (g + (g >= 0.0 ? std::abs(r) : -std::abs(r)));
        double s = 1.0, c = 1.0, p = 0.0;
        bool underflow = false;
        for (std::size_t i = m; i-- > l;) {
          double f = s * e[i];
          const double b = c * e[i];
          r = pythag(f, g);
          e[i + 1] = r;
          if (r == 0.0) {
            d[i + 1] -= p;
            e[m] = 0.0;
            underflow = true;
            break;
          }
          s = f / r;
          c = g / r;
          g = d[i + 1] - p;
          r = (d[i] - g) * s + 2.0 * c * b;
          p = s * r;
          d[i + 1] = g + p;
          g = c * r - b;
          if (z) {
            for (std::size_t k = 0; k < n; ++k) {
              f = (*z)[k * n + i + 1];
              (*z)[k * n + i + 1] = s * (*z)[k * n + i] + c * f;
              (*z)[k * n + i] = c * (*z)[k * n + i] - s * f;
            }
          }
        }
        if (underflow) continue;
        d[l] -= p;
        e[l] = g;
        e[m] = 0.0;
      }
    } while (m != l);
  }
}

struct EigenDecomposition {
  std::vector<double> values;   // ascending
  std::vector<double> vectors;  // row-major n x n; column j pairs with values[j]
};

// Full symmetric eigendecomposition by Householder reduction + QL.
// Intended for modest dimensions; cost is O(n^3).
inline EigenDecomposition eigen_sym(const SymMatrix& m, bool with_vectors) {
  const std::size_t n = m.dim();
  EigenDecomposition out;
  if (m.is_diagonal() && !with_vectors) {
    out.values = m.data();
    std::sort(out.values.begin(), out.values.end());
    return out;
  }
  std::vector<double> a = m.to_dense_data();
  std::vector<double> d, e;
  if (n == 1) {
    d = {a[0]};
    if (with_vectors) a = {1.0};
  } else {
    tridiagonalize(a, n, d, e, with_vectors);
    tql_implicit(d, e, n, with_vectors ? &a : nullptr);
  }
  // sort ascending, permuting columns alongside
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) { return d[x] < d[y]; });
  out.values.resize(n);
  for (std::size_t i = 0; i < n; ++i) out.values[i] = d[order[i]];
  if (with_vectors) {
    out.vectors.resize(n * n);
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k) out.vectors[k * n + j] = a[k * n + order[j]];
  }
  return out;
}

struct PowerIterationResult {
  double value = 0.0;
  std::vector<double> vector;
  std::size_t iterations = 0;
  double residual = 0.0;
};

// Power iteration with a deterministic seeded start vector. Convergence
// requires both a stable Rayleigh quotient (change <= 1e-10 relative) and a
// small eigen-residual, which protects the estimate when the top of the
// spectrum is clustered.
inline PowerIterationResult power_iteration(const SymMatrix& m) {
  constexpr double kChangeTol = 1e-10;
  constexpr double kResidualTol = 3e-9;
  constexpr std::size_t kMaxIterations = 100000;

  const std::size_t n = m.dim();
  Rng rng(0x5eedULL);
  std::vector<double> x(n);
  for (double& v : x) v = rng.uniform(-1.0, 1.0);
  const double nx = norm(x);
  for (double& v : x) v /= nx;

  std::vector<double> y(n);
  double rho_prev = std::numeric_limits<double>::infinity();
  double rho = 0.0;
  double residual = 0.0;
  for (std::size_t it = 1; it <= kMaxIterations; ++it) {
    m.apply(x, y);
    rho = dot(x, y);
    double res_sq = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double r = y[i] - rho * x[i];
      res_sq += r * r;
    }
    residual = std::sqrt(res_sq);
    const double scale = std::max(1.0, std::abs(rho));
    if (std::abs(rho - rho_prev) <= kChangeTol * scale && residual <= kResidualTol * scale) {
      return {rho, x, it, residual};
    }
    rho_prev = rho;
    const double ny = norm(y);
    if (ny == 0.0) return {0.0, x, it, 0.0};  // x lies in the kernel
    for (std::size_t i = 0; i < n; ++i) x[i] = y[i] / ny;
  }
  throw NumericalError("power_iteration: no convergence after " +
                       std::to_string(kMaxIterations) +
                       " iterations; residual=" + std::to_string(residual));
}

}  // namespace detail

/// Largest eigenvalue of a symmetric PSD matrix. Diagonal matrices reduce to
/// a max scan; small dense matrices use the direct tridiagonal solver; large
/// dense matrices use seeded power iteration.
inline double lambda_max(const SymMatrix& m) {
  if (m.is_diagonal()) return *std::max_element(m.data().begin(), m.data().end());
  if (m.dim() <= detail::kDirectEigenDim) return detail::eigen_sym(m, false).values.back();
  return detail::power_iteration(m).value;
}

inline double lambda_min(const SymMatrix& m) {
  if (m.is_diagonal()) return *std::min_element(m.data().begin(), m.data().end());
  if (m.dim() <= detail::kDirectEigenDim) return detail::eigen_sym(m, false).values.front();
  const double top = detail::power_iteration(m).value;
  const SymMatrix shifted = SymMatrix::shift_minus(top, m);
  return top - detail::power_iteration(shifted).value;
}

/// (lambda_max, unit eigenvector) pair.
inline std::pair<double, std::vector<double>> top_eigenpair(const SymMatrix& m) {
  if (m.is_diagonal()) {
    const auto& d = m.data();
    const std::size_t arg =
        static_cast<std::size_t>(std::max_element(d.begin(), d.end()) - d.begin());
    std::vector<double> v(m.dim(), 0.0);
    v[arg] = 1.0;
    return {d[arg], std::move(v)};
  }
  if (m.dim() <= detail::kDirectEigenDim) {
    const auto eig = detail::eigen_sym(m, true);
    const std::size_t n = m.dim();
    std::vector<double> v(n);
    for (std::size_t k = 0; k < n; ++k) v[k] = eig.vectors[k * n + (n - 1)];
    return {eig.values.back(), std::move(v)};
  }
  auto res = detail::power_iteration(m);
  return {res.value, std::move(res.vector)};
}

}  // namespace rpt
