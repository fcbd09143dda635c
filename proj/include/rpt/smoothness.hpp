#pragma once

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "rpt/block_partition.hpp"
#include "rpt/errors.hpp"
#include "rpt/spectral.hpp"
#include "rpt/sym_matrix.hpp"

namespace rpt {

/// Per-block largest eigenvalues L_i of the diagonal subblocks of m.
inline std::vector<double> block_lambda_maxima(const SymMatrix& m,
                                               const BlockPartition& partition) {
  if (m.dim() != partition.total_dim())
    throw ValidationError("block_lambda_maxima: matrix dimension " + std::to_string(m.dim()) +
                          " does not match partition dimension " +
                          std::to_string(partition.total_dim()));
  std::vector<double> maxima(partition.num_blocks());
  for (std::size_t b = 0; b < partition.num_blocks(); ++b)
    maxima[b] = lambda_max(m.principal_block(partition.offset(b), partition.size(b)));
  return maxima;
}

/// The smoothness matrix L of an objective together with its block partition,
/// the per-block spectral maxima L_i and the global maximum lambda_max(L).
/// Immutable after construction.
class SmoothnessModel {
 public:
  SmoothnessModel(SymMatrix matrix, BlockPartition partition)
      : matrix_(std::move(matrix)),
        partition_(std::move(partition)),
        block_maxima_(block_lambda_maxima(matrix_, partition_)),
        global_max_(lambda_max(matrix_)) {}

  const SymMatrix& matrix() const { return matrix_; }
  const BlockPartition& partition() const { return partition_; }
  const std::vector<double>& block_maxima() const { return block_maxima_; }
  double global_max() const { return global_max_; }

 private:
  SymMatrix matrix_;
  BlockPartition partition_;
  std::vector<double> block_maxima_;
  double global_max_;
};

inline std::vector<double> block_lambda_maxima(const SmoothnessModel& model) {
  return model.block_maxima();
}

}  // namespace rpt
