#pragma once

#include <cstddef>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "rpt/block_partition.hpp"
#include "rpt/dataset.hpp"
#include "rpt/errors.hpp"
#include "rpt/linalg.hpp"
#include "rpt/problem.hpp"
#include "rpt/spectral.hpp"
#include "rpt/sym_matrix.hpp"

namespace rpt {

/// Ridge regression objective
///   f(x) = (1/n) sum_i (<a_i, x> - b_i)^2 + lambda ||x||^2,
/// with smoothness matrix (2/n) A'A + 2 lambda I, strong convexity constant
/// 2 lambda + (2/n) lambda_min(A'A), and the exact minimizer from the normal
/// equations.
inline Problem make_ridge(const Dataset& data, double lambda, const BlockPartition& partition) {
  data.validate();
  if (!(lambda > 0.0)) throw ValidationError("make_ridge: lambda must be positive");
  if (partition.total_dim() != data.m)
    throw ValidationError("make_ridge: partition dimension " +
                          std::to_string(partition.total_dim()) +
                          " does not match feature count " + std::to_string(data.m));

  const std::size_t n = data.n;
  const std::size_t m = data.m;
  const double inv_n2 = 2.0 / static_cast<double>(n);

  // gram = A'A
  std::vector<double> gram(m * m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = data.features.data() + i * m;
    for (std::size_t j = 0; j < m; ++j) {
      const double rj = row[j];
      if (rj == 0.0) continue;
      for (std::size_t k = j; k < m; ++k) gram[j * m + k] += rj * row[k];
    }
  }
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < j; ++k) gram[j * m + k] = gram[k * m + j];

  std::vector<double> hessian(m * m);
  for (std::size_t j = 0; j < m; ++j)
    for (std::size_t k = 0; k < m; ++k)
      hessian[j * m + k] = inv_n2 * gram[j * m + k] + (j == k ? 2.0 * lambda : 0.0);
  SymMatrix l = SymMatrix::dense(m, std::move(hessian));

  std::vector<double> atb(m, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    const double* row = data.features.data() + i * m;
    const double bi = data.targets[i];
    for (std::size_t j = 0; j < m; ++j) atb[j] += row[j] * bi;
  }
  std::vector<double> rhs(m);
  for (std::size_t j = 0; j < m; ++j) rhs[j] = inv_n2 * atb[j];
  const auto chol = cholesky(l);
  if (!chol.success) throw NumericalError("make_ridge: Hessian factorization failed");
  std::vector<double> xstar = cholesky_solve(chol, rhs);

  auto shared = std::make_shared<const Dataset>(data);
  const BlockPartition part = partition;

  auto value_fn = [shared, lambda, n, m](const std::vector<double>& x) {
    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double* row = shared->features.data() + i * m;
      double r = -shared->targets[i];
      for (std::size_t j = 0; j < m; ++j) r += row[j] * x[j];
      loss += r * r;
    }
    double reg = 0.0;
    for (double v : x) reg += v * v;
    return loss / static_cast<double>(n) + lambda * reg;
  };

  Problem p{
      "ridge",
      partition,
      SmoothnessModel(l, partition),
      value_fn,
      {},
      2.0 * lambda + inv_n2 * lambda_min(SymMatrix::dense(m, gram)),
      xstar,
      value_fn(xstar),
      std::nullopt,
  };
  p.lower_bound = p.min_value;

  p.packed_block_gradient = [shared, lambda, n, m, part, inv_n2](
                                const std::vector<double>& x,
                                const std::vector<std::size_t>& active,
                                std::vector<double>& out) {
    // the residual needs all of x; per-column work is then restricted
    std::vector<double> residual(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double* row = shared->features.data() + i * m;
      double r = -shared->targets[i];
      for (std::size_t j = 0; j < m; ++j) r += row[j] * x[j];
      residual[i] = r;
    }
    std::size_t total = 0;
    for (std::size_t b : active) total += part.size(b);
    out.resize(total);
    std::size_t pos = 0;
    for (std::size_t b : active) {
      const std::size_t off = part.offset(b);
      for (std::size_t k = 0; k < part.size(b); ++k, ++pos) {
        const std::size_t j = off + k;
        double acc = 0.0;
        for (std::size_t i = 0; i < n; ++i) acc += shared->features[i * m + j] * residual[i];
        out[pos] = inv_n2 * acc + 2.0 * lambda * x[j];
      }
    }
  };
  return p;
}

}  // namespace rpt
