#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <vector>

#include "rpt/block_partition.hpp"
#include "rpt/errors.hpp"

namespace rpt {

/// Per-block update costs c_1..c_B in abstract compute units, normalized so
/// that one full update (all blocks) costs 1.
class CostModel {
 public:
  static CostModel normalized(std::vector<double> raw) {
    if (raw.empty()) throw ValidationError("CostModel: empty cost vector");
    double total = 0.0;
    for (std::size_t i = 0; i < raw.size(); ++i) {
      if (!(raw[i] > 0.0) || !std::isfinite(raw[i]))
        throw ValidationError("CostModel: cost " + std::to_string(i) + " must be positive");
      total += raw[i];
    }
    for (double& c : raw) c /= total;
    return CostModel(std::move(raw));
  }

  static CostModel uniform(std::size_t num_blocks) {
    return normalized(std::vector<double>(num_blocks, 1.0));
  }

  static CostModel proportional_to_sizes(const BlockPartition& partition) {
    std::vector<double> raw(partition.num_blocks());
    for (std::size_t b = 0; b < raw.size(); ++b)
      raw[b] = static_cast<double>(partition.size(b));
    return normalized(std::move(raw));
  }

  std::size_t num_blocks() const { return costs_.size(); }
  double cost(std::size_t block) const { return costs_.at(block); }
  const std::vector<double>& costs() const { return costs_; }

 private:
  explicit CostModel(std::vector<double> costs) : costs_(std::move(costs)) {}
  std::vector<double> costs_;
};

inline CostModel normalize_costs(const std::vector<double>& raw) {
  return CostModel::normalized(raw);
}

}  // namespace rpt
