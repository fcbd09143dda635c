#pragma once

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "rpt/block_partition.hpp"
#include "rpt/errors.hpp"
#include "rpt/problem.hpp"
#include "rpt/rng.hpp"
#include "rpt/spectral.hpp"
#include "rpt/sym_matrix.hpp"

namespace rpt {

/// f(x) = x'Ax / 2 for a symmetric PSD matrix A. The minimizer is the origin
/// with f* = 0; mu is the smallest eigenvalue when strictly positive.
inline Problem make_quadratic(const SymMatrix& a, const BlockPartition& partition) {
  if (a.dim() != partition.total_dim())
    throw ValidationError("make_quadratic: matrix/partition dimension mismatch");
  const double top = lambda_max(a);
  const double bottom = lambda_min(a);
  if (bottom < -1e-9 * std::max(1.0, top))
    throw ValidationError("make_quadratic: matrix is not positive semidefinite (min eigenvalue " +
                          std::to_string(bottom) + ")");

  auto m = std::make_shared<const SymMatrix>(a);
  Problem p{
      "quadratic",
      partition,
      SmoothnessModel(a, partition),
      [m](const std::vector<double>& x) { return 0.5 * m->quad_form(x); },
      {},
      std::nullopt,
      std::vector<double>(a.dim(), 0.0),
      0.0,
      0.0,
  };
  if (bottom > 1e-12 * std::max(1.0, top)) p.mu = bottom;

  const BlockPartition part = partition;
  if (m->is_diagonal()) {
    p.packed_block_gradient = [m, part](const std::vector<double>& x,
                                        const std::vector<std::size_t>& active,
                                        std::vector<double>& out) {
      const auto& diag = m->data();
      std::size_t total = 0;
      for (std::size_t b : active) total += part.size(b);
      out.resize(total);
      std::size_t pos = 0;
      for (std::size_t b : active) {
        const std::size_t off = part.offset(b);
        for (std::size_t k = 0; k < part.size(b); ++k, ++pos)
          out[pos] = diag[off + k] * x[off + k];
      }
    };
  } else {
    p.packed_block_gradient = [m, part](const std::vector<double>& x,
                                        const std::vector<std::size_t>& active,
                                        std::vector<double>& out) {
      const std::size_t d = m->dim();
      const auto& data = m->data();
      std::size_t total = 0;
      for (std::size_t b : active) total += part.size(b);
      out.resize(total);
      std::size_t pos = 0;
      for (std::size_t b : active) {
        const std::size_t off = part.offset(b);
        for (std::size_t k = 0; k < part.size(b); ++k, ++pos) {
          const double* row = data.data() + (off + k) * d;
          double acc = 0.0;
          for (std::size_t j = 0; j < d; ++j) acc += row[j] * x[j];
          out[pos] = acc;
        }
      }
    };
  }
  return p;
}

/// Diagonal quadratic test problem: entries of block i are drawn uniformly
/// from [low_i, high_i], with the block maximum forced to exactly high_i so
/// the per-block smoothness constants are reproducible.
inline Problem generate_synthetic_quadratic(const std::vector<std::size_t>& block_sizes,
                                            const std::vector<std::pair<double, double>>& l_ranges,
                                            std::uint64_t seed) {
  if (block_sizes.size() != l_ranges.size())
    throw ValidationError("generate_synthetic_quadratic: one (low, high) range per block required");
  BlockPartition partition(block_sizes);  // rejects empty blocks
  for (std::size_t b = 0; b < l_ranges.size(); ++b) {
    const auto [lo, hi] = l_ranges[b];
    if (!(lo > 0.0) || !(hi >= lo))
      throw ValidationError("generate_synthetic_quadratic: block " + std::to_string(b) +
                            " needs 0 < low <= high");
  }
  Rng rng(seed);
  std::vector<double> diag(partition.total_dim());
  for (std::size_t b = 0; b < partition.num_blocks(); ++b) {
    const auto [lo, hi] = l_ranges[b];
    const std::size_t off = partition.offset(b);
    const std::size_t len = partition.size(b);
    std::size_t arg = 0;
    for (std::size_t k = 0; k < len; ++k) {
      diag[off + k] = rng.uniform(lo, hi);
      if (diag[off + k] > diag[off + arg]) arg = k;
    }
    diag[off + arg] = hi;  // force the block maximum
  }
  Problem p = make_quadratic(SymMatrix::diagonal(std::move(diag)), partition);
  p.name = "synthetic_quadratic";
  return p;
}

}  // namespace rpt
