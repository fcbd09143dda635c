#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <utility>
#include <vector>

#include "rpt/block_partition.hpp"
#include "rpt/errors.hpp"
#include "rpt/rng.hpp"
#include "rpt/sketch.hpp"
#include "rpt/sym_matrix.hpp"

namespace rpt {

inline std::vector<double> random_vector(std::size_t dim, Rng& rng, double lo, double hi) {
  std::vector<double> v(dim);
  for (double& x : v) x = rng.uniform(lo, hi);
  return v;
}

/// Q diag(eigs) Q' with a Haar-ish random orthogonal Q (Gram-Schmidt on a
/// Gaussian matrix). Intended for test and certification instances.
inline SymMatrix random_psd_with_spectrum(const std::vector<double>& eigs, Rng& rng) {
  const std::size_t n = eigs.size();
  if (n == 0) throw ValidationError("random_psd_with_spectrum: empty spectrum");
  // columns of q: orthonormalized Gaussian vectors
  std::vector<std::vector<double>> q(n, std::vector<double>(n));
  for (std::size_t c = 0; c < n; ++c) {
    auto& col = q[c];
    while (true) {
      for (double& v : col) v = rng.gaussian();
      for (std::size_t prev = 0; prev < c; ++prev) {
        const double proj = dot(col, q[prev]);
        for (std::size_t i = 0; i < n; ++i) col[i] -= proj * q[prev][i];
      }
      const double nc = norm(col);
      if (nc > 1e-8) {
        for (double& v : col) v /= nc;
        break;
      }
    }
  }
  std::vector<double> a(n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      double acc = 0.0;
      for (std::size_t k = 0; k < n; ++k) acc += q[k][i] * eigs[k] * q[k][j];
      a[i * n + j] = acc;
      a[j * n + i] = acc;
    }
  return SymMatrix::dense(n, std::move(a));
}

inline SymMatrix random_psd(std::size_t dim, Rng& rng, double eig_lo, double eig_hi) {
  return random_psd_with_spectrum(random_vector(dim, rng, eig_lo, eig_hi), rng);
}

inline BlockPartition random_partition(std::size_t total_dim, std::size_t max_blocks, Rng& rng) {
  const std::size_t b = 1 + rng.index(std::min(max_blocks, total_dim));
  std::vector<std::size_t> sizes(b, 1);
  for (std::size_t extra = total_dim - b; extra > 0; --extra) ++sizes[rng.index(b)];
  return BlockPartition(std::move(sizes));
}

/// Random valid PT-sketch distribution: shuffled labels plus sorted
/// probabilities with p_1 = 1 and p_B bounded away from zero.
inline PTSketchDistribution random_pt_distribution(const BlockPartition& partition, Rng& rng,
                                                   double p_min = 0.05) {
  const std::size_t b = partition.num_blocks();
  std::vector<std::size_t> labels(b);
  for (std::size_t k = 0; k < b; ++k) labels[k] = k;
  rng.shuffle(labels);
  std::vector<double> p(b);
  p[0] = 1.0;
  for (std::size_t i = 1; i < b; ++i) p[i] = rng.uniform(p_min, 1.0);
  std::sort(p.begin() + 1, p.end(), std::greater<double>());
  return PTSketchDistribution(partition, std::move(labels), std::move(p));
}

}  // namespace rpt
