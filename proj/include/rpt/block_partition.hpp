#pragma once

#include <cstddef>
#include <numeric>
#include <string>
#include <vector>

#include "rpt/errors.hpp"

namespace rpt {

/// Decomposition of a d-dimensional variable into B contiguous coordinate
/// blocks of sizes d_1, ..., d_B.
class BlockPartition {
 public:
  explicit BlockPartition(std::vector<std::size_t> sizes) : sizes_(std::move(sizes)) {
    if (sizes_.empty()) throw ValidationError("BlockPartition: at least one block required");
    offsets_.reserve(sizes_.size());
    std::size_t off = 0;
    for (std::size_t i = 0; i < sizes_.size(); ++i) {
      if (sizes_[i] == 0)
        throw ValidationError("BlockPartition: block " + std::to_string(i) + " is empty");
      offsets_.push_back(off);
      off += sizes_[i];
    }
    total_dim_ = off;
  }

  // B contiguous blocks of near-equal size; the first (total mod blocks)
  // blocks take the extra coordinate.
  static BlockPartition equal_blocks(std::size_t total_dim, std::size_t num_blocks) {
    if (num_blocks == 0 || total_dim < num_blocks)
      throw ValidationError("BlockPartition::equal_blocks: need 1 <= blocks <= dim");
    std::vector<std::size_t> sizes(num_blocks, total_dim / num_blocks);
    for (std::size_t b = 0; b < total_dim % num_blocks; ++b) ++sizes[b];
    return BlockPartition(std::move(sizes));
  }

  static BlockPartition single_block(std::size_t total_dim) {
    return BlockPartition(std::vector<std::size_t>{total_dim});
  }

  std::size_t num_blocks() const { return sizes_.size(); }
  std::size_t total_dim() const { return total_dim_; }
  std::size_t size(std::size_t block) const { return sizes_.at(block); }
  std::size_t offset(std::size_t block) const { return offsets_.at(block); }
  const std::vector<std::size_t>& sizes() const { return sizes_; }
  const std::vector<std::size_t>& offsets() const { return offsets_; }

  bool operator==(const BlockPartition& other) const { return sizes_ == other.sizes_; }

 private:
  std::vector<std::size_t> sizes_;
  std::vector<std::size_t> offsets_;
  std::size_t total_dim_ = 0;
};

inline std::vector<std::size_t> all_blocks(const BlockPartition& partition) {
  std::vector<std::size_t> ids(partition.num_blocks());
  std::iota(ids.begin(), ids.end(), std::size_t{0});
  return ids;
}

}  // namespace rpt
