#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "rpt/block_partition.hpp"
#include "rpt/errors.hpp"
#include "rpt/smoothness.hpp"

namespace rpt {

/// A differentiable objective over a block-partitioned domain.
///
/// packed_block_gradient evaluates the gradient on the requested blocks only,
/// writing the entries packed back-to-back in slot order; inactive blocks are
/// never touched, which is what makes partial updates cheaper than full ones.
/// The full gradient is, by construction, the packed gradient over all blocks,
/// so full and restricted evaluations agree bitwise on shared coordinates.
struct Problem {
  std::string name;
  BlockPartition partition;
  SmoothnessModel smoothness;
  std::function<double(const std::vector<double>&)> value;
  std::function<void(const std::vector<double>& x, const std::vector<std::size_t>& active,
                     std::vector<double>& out)>
      packed_block_gradient;
  std::optional<double> mu;                       // strong convexity constant, when known
  std::optional<std::vector<double>> minimizer;   // x*, when computable
  std::optional<double> min_value;                // f(x*)
  std::optional<double> lower_bound;              // f* lower bound for nonconvex use

  std::size_t dim() const { return partition.total_dim(); }

  std::optional<double> reference_value() const {
    if (min_value) return min_value;
    return lower_bound;
  }

  std::vector<double> gradient(const std::vector<double>& x) const {
    std::vector<double> g;
    packed_block_gradient(x, all_blocks(partition), g);
    return g;
  }
};

/// Gradient restricted to the given blocks, zero elsewhere. Block indices are
/// validated; duplicates are rejected.
inline std::vector<double> block_gradient(const Problem& problem, const std::vector<double>& x,
                                          const std::vector<std::size_t>& active_blocks) {
  const BlockPartition& part = problem.partition;
  std::vector<bool> seen(part.num_blocks(), false);
  for (std::size_t b : active_blocks) {
    if (b >= part.num_blocks())
      throw ValidationError("block_gradient: block index " + std::to_string(b) +
                            " out of range for " + std::to_string(part.num_blocks()) + " blocks");
    if (seen[b]) throw ValidationError("block_gradient: duplicate block index");
    seen[b] = true;
  }
  std::vector<double> packed;
  problem.packed_block_gradient(x, active_blocks, packed);
  std::vector<double> full(part.total_dim(), 0.0);
  std::size_t pos = 0;
  for (std::size_t b : active_blocks) {
    for (std::size_t k = 0; k < part.size(b); ++k) full[part.offset(b) + k] = packed[pos++];
  }
  return full;
}

}  // namespace rpt
