#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <numeric>
#include <string>
#include <utility>
#include <vector>

#include "rpt/block_partition.hpp"
#include "rpt/cost_model.hpp"
#include "rpt/errors.hpp"
#include "rpt/sketch.hpp"
#include "rpt/smoothness.hpp"

namespace rpt {

namespace detail {

inline void check_schedule_inputs(const std::vector<double>& block_maxima,
                                  const CostModel& costs) {
  if (block_maxima.size() != costs.num_blocks())
    throw ValidationError("scheduler: block count mismatch between L_i and costs");
  for (std::size_t i = 0; i < block_maxima.size(); ++i)
    if (!(block_maxima[i] > 0.0))
      throw ValidationError("scheduler: block smoothness constant " + std::to_string(i) +
                            " must be positive");
}

// Blocks ordered by descending sqrt(L_i / c_i); ties broken by ascending
// block index. rank_to_block[0] is the most important block.
inline std::vector<std::size_t> importance_order(const std::vector<double>& block_maxima,
                                                 const CostModel& costs) {
  std::vector<double> ratio(block_maxima.size());
  for (std::size_t i = 0; i < ratio.size(); ++i)
    ratio[i] = std::sqrt(block_maxima[i] / costs.cost(i));
  std::vector<std::size_t> order(ratio.size());
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (ratio[a] != ratio[b]) return ratio[a] > ratio[b];
    return a < b;
  });
  return order;
}

}  // namespace detail

/// (sum_i sqrt(L_i c_i))^2 -- the attainable minimum of the separable upper
/// bound on the total-complexity objective.
inline double schedule_upper_bound(const std::vector<double>& block_maxima,
                                   const CostModel& costs) {
  detail::check_schedule_inputs(block_maxima, costs);
  double s = 0.0;
  for (std::size_t i = 0; i < block_maxima.size(); ++i)
    s += std::sqrt(block_maxima[i] * costs.cost(i));
  return s * s;
}

/// Expected cost of one sketch draw: sum over labels of p_label * c_block.
inline double expected_iteration_cost(const PTSketchDistribution& dist, const CostModel& costs) {
  if (costs.num_blocks() != dist.num_blocks())
    throw ValidationError("expected_iteration_cost: block count mismatch");
  double acc = 0.0;
  for (std::size_t label = 0; label < dist.num_blocks(); ++label)
    acc += dist.probabilities()[label] * costs.cost(dist.slot_of_label(label));
  return acc;
}

inline double expected_run_cost(const PTSketchDistribution& dist, const CostModel& costs,
                                std::size_t iterations) {
  return static_cast<double>(iterations) * expected_iteration_cost(dist, costs);
}

/// Total-complexity objective c(P) = L_P * sum p_label c_block with the exact
/// L_P of the given smoothness matrix.
inline double complexity_objective(const PTSketchDistribution& dist, const SmoothnessModel& model,
                                   const CostModel& costs) {
  return compute_L_P(model, dist) * expected_iteration_cost(dist, costs);
}

/// Predicted cost advantage over full-gradient descent, clipped at 1 (the
/// p = 1 fallback is always available).
inline double theoretical_speedup(const std::vector<double>& block_maxima, const CostModel& costs,
                                  double l_global) {
  const double bound = schedule_upper_bound(block_maxima, costs);
  return l_global / std::min(l_global, bound);
}

/// Importance-sampled sketch distribution: labels ordered by descending
/// sqrt(L_i / c_i) and p_label = sqrt(L_label / c_label) / max ratio. This is
/// the closed-form minimizer of the separable upper bound, independent of
/// whether it beats the p = 1 fallback.
inline PTSketchDistribution importance_distribution(const BlockPartition& partition,
                                                    const std::vector<double>& block_maxima,
                                                    const CostModel& costs) {
  detail::check_schedule_inputs(block_maxima, costs);
  if (partition.num_blocks() != block_maxima.size())
    throw ValidationError("importance_distribution: partition block count mismatch");
  const auto order = detail::importance_order(block_maxima, costs);
  const std::size_t b = order.size();
  std::vector<std::size_t> labels(b);
  std::vector<double> p(b);
  const double top = std::sqrt(block_maxima[order[0]] / costs.cost(order[0]));
  for (std::size_t rank = 0; rank < b; ++rank) {
    labels[order[rank]] = rank;
    p[rank] = std::sqrt(block_maxima[order[rank]] / costs.cost(order[rank])) / top;
  }
  p[0] = 1.0;
  return PTSketchDistribution(partition, std::move(labels), std::move(p));
}

/// A chosen sketch distribution together with its complexity numbers.
struct Schedule {
  PTSketchDistribution distribution;
  double objective_value;      // c(P) of the returned distribution
  double upper_bound;          // (sum sqrt(L_i c_i))^2
  double gd_cost_scale;        // lambda_max(L)
  double theoretical_speedup;  // >= 1
  bool gd_fallback;            // true when p = 1 was kept instead
};

/// Minimizes the separable upper bound in closed form and falls back to the
/// p = 1 schedule whenever that bound is no better than plain gradient
/// descent. objective_value is exact when the smoothness matrix is diagonal
/// or block diagonal; for general matrices use complexity_objective.
inline Schedule optimal_schedule(const BlockPartition& partition,
                                 const std::vector<double>& block_maxima, const CostModel& costs,
                                 double gd_cost_scale) {
  detail::check_schedule_inputs(block_maxima, costs);
  const double bound = schedule_upper_bound(block_maxima, costs);
  const double speedup = gd_cost_scale / std::min(gd_cost_scale, bound);

  if (bound >= gd_cost_scale) {
    return Schedule{PTSketchDistribution::full_support(partition), gd_cost_scale, bound,
                    gd_cost_scale, speedup, true};
  }
  PTSketchDistribution dist = importance_distribution(partition, block_maxima, costs);
  double block_diag_lp = 0.0;
  for (std::size_t label = 0; label < dist.num_blocks(); ++label) {
    const std::size_t slot = dist.slot_of_label(label);
    block_diag_lp = std::max(block_diag_lp,
                             block_maxima[slot] / dist.probabilities()[label]);
  }
  const double objective = block_diag_lp * expected_iteration_cost(dist, costs);
  return Schedule{std::move(dist), objective, bound, gd_cost_scale, speedup, false};
}

// gd scale defaults to max_i L_i, which is exact for (block-)diagonal L.
inline Schedule optimal_schedule(const BlockPartition& partition,
                                 const std::vector<double>& block_maxima, const CostModel& costs) {
  detail::check_schedule_inputs(block_maxima, costs);
  return optimal_schedule(partition, block_maxima, costs,
                          *std::max_element(block_maxima.begin(), block_maxima.end()));
}

inline Schedule optimal_schedule(const SmoothnessModel& model, const CostModel& costs) {
  return optimal_schedule(model.partition(), model.block_maxima(), costs, model.global_max());
}

}  // namespace rpt
