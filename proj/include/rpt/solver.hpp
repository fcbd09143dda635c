#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "rpt/cost_model.hpp"
#include "rpt/errors.hpp"
#include "rpt/problem.hpp"
#include "rpt/rng.hpp"
#include "rpt/scheduler.hpp"
#include "rpt/sketch.hpp"
#include "rpt/spectral.hpp"

namespace rpt {

enum class StepsizeRule { Auto, OneOverLP, HalfOverLP, OneOverL, Explicit };

struct Stepsize {
  StepsizeRule rule = StepsizeRule::Auto;
  double value = 0.0;  // used when rule == Explicit

  static Stepsize explicit_value(double v) { return {StepsizeRule::Explicit, v}; }
  static Stepsize named(StepsizeRule r) { return {r, 0.0}; }
};

struct SolverConfig {
  Stepsize stepsize;
  std::size_t iterations = 0;
  std::uint64_t seed = 0;
  std::size_t metric_stride = 1;  // record every k-th iterate (0 treated as 1)
  std::optional<std::vector<double>> initial_point;  // default: origin
  std::optional<double> stop_below_f_gap;  // absolute target, checked at recorded iterates
};

struct TraceRecord {
  std::size_t iteration = 0;
  double cost = 0.0;
  double f_gap = 0.0;
  std::optional<double> dist_sq;  // absent when the minimizer is unknown
  double grad_norm_sq = 0.0;
};

struct RunTrace {
  std::string solver;
  std::vector<TraceRecord> records;     // non-decreasing cost
  std::vector<double> final_iterate;
  std::vector<double> average_iterate;  // mean of x^0 ... x^T
  std::vector<double> best_grad_iterate;  // smallest recorded gradient norm
  double best_grad_norm_sq = 0.0;
  std::size_t best_grad_iteration = 0;
  double initial_f_gap = 0.0;
  double final_cost = 0.0;
  std::size_t iterations_run = 0;
  bool stopped_early = false;
  double stepsize = 0.0;
  std::string stepsize_rule;
  std::uint64_t seed = 0;
};

enum class TraceMetric { FGap, DistSq, GradNormSq };

/// Smallest cumulative cost at which the metric first drops to <= epsilon;
/// empty if it never does.
inline std::optional<double> cost_to_accuracy(const RunTrace& trace, double epsilon,
                                              TraceMetric metric) {
  for (const TraceRecord& rec : trace.records) {
    double v;
    switch (metric) {
      case TraceMetric::FGap: v = rec.f_gap; break;
      case TraceMetric::GradNormSq: v = rec.grad_norm_sq; break;
      case TraceMetric::DistSq:
        if (!rec.dist_sq)
          throw ValidationError("cost_to_accuracy: dist_sq not present in this trace");
        v = *rec.dist_sq;
        break;
      default: throw ValidationError("cost_to_accuracy: unknown metric");
    }
    if (v <= epsilon) return rec.cost;
  }
  return std::nullopt;
}

namespace detail {

// Shared metric capture: every solver routes its iterates through here so the
// recorded numbers come from one code path.
class MetricRecorder {
 public:
  MetricRecorder(const Problem& problem, RunTrace& trace, const SolverConfig& config)
      : problem_(problem), trace_(trace),
        stride_(config.metric_stride == 0 ? 1 : config.metric_stride),
        stop_target_(config.stop_below_f_gap) {
    const auto ref = problem.reference_value();
    if (!ref)
      throw ValidationError("solver: problem carries neither a minimizer value nor a lower bound");
    f_ref_ = *ref;
  }

  bool due(std::size_t t, std::size_t total) const {
    return t % stride_ == 0 || t == total;
  }

  // Returns true when the run should stop (target reached). Throws on
  // divergence: gap beyond 1e6x the initial gap.
  bool record(std::size_t t, double cost, const std::vector<double>& x) {
    TraceRecord rec;
    rec.iteration = t;
    rec.cost = cost;
    rec.f_gap = problem_.value(x) - f_ref_;
    const std::vector<double> g = problem_.gradient(x);
    rec.grad_norm_sq = norm_sq(g);
    if (problem_.minimizer) {
      double d = 0.0;
      for (std::size_t j = 0; j < x.size(); ++j) {
        const double c = x[j] - (*problem_.minimizer)[j];
        d += c * c;
      }
      rec.dist_sq = d;
    }
    if (t == 0) {
      trace_.initial_f_gap = rec.f_gap;
      // floor keeps a start at the optimum from tripping the guard on noise
      guard_ = 1e6 * std::max(rec.f_gap, 1e-9 * std::max(1.0, std::abs(f_ref_)));
      trace_.best_grad_norm_sq = rec.grad_norm_sq;
      trace_.best_grad_iteration = 0;
      trace_.best_grad_iterate = x;
    } else if (rec.f_gap > guard_) {
      throw DivergenceError("solver diverged at iteration " + std::to_string(t) + ": f-gap " +
                                std::to_string(rec.f_gap) + " exceeds 1e6 x initial gap",
                            t, rec.f_gap);
    }
    if (rec.grad_norm_sq < trace_.best_grad_norm_sq) {
      trace_.best_grad_norm_sq = rec.grad_norm_sq;
      trace_.best_grad_iteration = t;
      trace_.best_grad_iterate = x;
    }
    const double gap = rec.f_gap;
    trace_.records.push_back(std::move(rec));
    return stop_target_ && gap <= *stop_target_;
  }

 private:
  const Problem& problem_;
  RunTrace& trace_;
  std::size_t stride_;
  std::optional<double> stop_target_;
  double f_ref_ = 0.0;
  double guard_ = 0.0;
};

inline std::vector<double> starting_point(const Problem& problem, const SolverConfig& config) {
  if (config.initial_point) {
    if (config.initial_point->size() != problem.dim())
      throw ValidationError("solver: initial point dimension mismatch");
    return *config.initial_point;
  }
  return std::vector<double>(problem.dim(), 0.0);
}

inline double resolve_stepsize(const Stepsize& s, double l_global, double l_p, std::string& name) {
  double gamma = 0.0;
  switch (s.rule) {
    case StepsizeRule::OneOverLP: gamma = 1.0 / l_p; name = "1/L_P"; break;
    case StepsizeRule::HalfOverLP: gamma = 0.5 / l_p; name = "1/(2 L_P)"; break;
    case StepsizeRule::OneOverL: gamma = 1.0 / l_global; name = "1/L"; break;
    case StepsizeRule::Explicit: gamma = s.value; name = "explicit"; break;
    case StepsizeRule::Auto: break;  // handled by the caller
  }
  if (!(gamma > 0.0) || !std::isfinite(gamma))
    throw ValidationError("solver: stepsize does not resolve to a positive real");
  return gamma;
}

struct AverageTracker {
  std::vector<double> sum;
  std::size_t count = 0;
  void add(const std::vector<double>& x) {
    if (sum.empty()) sum.assign(x.size(), 0.0);
    for (std::size_t j = 0; j < x.size(); ++j) sum[j] += x[j];
    ++count;
  }
  std::vector<double> mean() const {
    std::vector<double> out(sum.size());
    for (std::size_t j = 0; j < sum.size(); ++j)
      out[j] = sum[j] / static_cast<double>(count);
    return out;
  }
};

}  // namespace detail

/// Full-gradient descent, one cost unit per iteration. Default stepsize is
/// 1/lambda_max(L).
inline RunTrace run_gd(const Problem& problem, const SolverConfig& config) {
  RunTrace trace;
  trace.solver = "gd";
  trace.seed = config.seed;
  Stepsize s = config.stepsize;
  if (s.rule == StepsizeRule::Auto) s.rule = StepsizeRule::OneOverL;
  const double l_global = problem.smoothness.global_max();
  trace.stepsize = detail::resolve_stepsize(s, l_global, l_global, trace.stepsize_rule);

  std::vector<double> x = detail::starting_point(problem, config);
  detail::MetricRecorder recorder(problem, trace, config);
  detail::AverageTracker average;
  average.add(x);

  const std::vector<std::size_t> active = all_blocks(problem.partition);
  std::vector<double> g;
  bool stop = recorder.record(0, 0.0, x);
  std::size_t t = 0;
  while (!stop && t < config.iterations) {
    ++t;
    problem.packed_block_gradient(x, active, g);
    for (std::size_t j = 0; j < x.size(); ++j) x[j] -= trace.stepsize * g[j];
    average.add(x);
    if (recorder.due(t, config.iterations)) {
      stop = recorder.record(t, static_cast<double>(t), x);
      if (stop) trace.stopped_early = t < config.iterations;
    }
  }
  trace.iterations_run = t;
  trace.final_cost = static_cast<double>(t);
  trace.final_iterate = std::move(x);
  trace.average_iterate = average.mean();
  return trace;
}

/// Randomized progressive training: x <- x - gamma C^t grad f(x) with the
/// PT-sketch C^t. Each iteration pays the summed cost of the blocks whose
/// labels are active in the drawn outcome. Default stepsize is 1/L_P.
inline RunTrace run_rpt(const Problem& problem, const PTSketchDistribution& dist,
                        const CostModel& costs, const SolverConfig& config) {
  if (!(dist.partition() == problem.partition))
    throw ValidationError("run_rpt: sketch partition does not match problem partition");
  if (costs.num_blocks() != problem.partition.num_blocks())
    throw ValidationError("run_rpt: cost model block count mismatch");

  RunTrace trace;
  trace.solver = "rpt";
  trace.seed = config.seed;
  Stepsize s = config.stepsize;
  if (s.rule == StepsizeRule::Auto) s.rule = StepsizeRule::OneOverLP;
  const double l_p = (s.rule == StepsizeRule::OneOverLP || s.rule == StepsizeRule::HalfOverLP)
                         ? compute_L_P(problem.smoothness, dist)
                         : 0.0;
  trace.stepsize = detail::resolve_stepsize(s, problem.smoothness.global_max(), l_p,
                                            trace.stepsize_rule);

  // cost of outcome i: prefix sum of block costs in label order; the full
  // outcome is pinned to exactly 1 so the p = 1 sketch matches GD accounting
  const std::size_t b = dist.num_blocks();
  std::vector<double> outcome_cost(b, 0.0);
  double acc = 0.0;
  for (std::size_t label = 0; label < b; ++label) {
    acc += costs.cost(dist.slot_of_label(label));
    outcome_cost[label] = acc;
  }
  outcome_cost[b - 1] = 1.0;

  std::vector<double> x = detail::starting_point(problem, config);
  detail::MetricRecorder recorder(problem, trace, config);
  detail::AverageTracker average;
  average.add(x);
  Rng rng(config.seed);
  const BlockPartition& part = problem.partition;

  std::vector<double> packed;
  double cost = 0.0;
  bool stop = recorder.record(0, 0.0, x);
  std::size_t t = 0;
  while (!stop && t < config.iterations) {
    ++t;
    const SketchOutcome& outcome = dist.sample(rng);
    problem.packed_block_gradient(x, outcome.active_slots, packed);
    std::size_t pos = 0;
    for (std::size_t k = 0; k < outcome.active_slots.size(); ++k) {
      const std::size_t blk = outcome.active_slots[k];
      const double scale = outcome.slot_scales[k];
      const std::size_t off = part.offset(blk);
      for (std::size_t j = 0; j < part.size(blk); ++j, ++pos)
        x[off + j] -= trace.stepsize * (scale * packed[pos]);
    }
    cost += outcome_cost[outcome.index];
    average.add(x);
    if (recorder.due(t, config.iterations)) {
      stop = recorder.record(t, cost, x);
      if (stop) trace.stopped_early = t < config.iterations;
    }
  }
  trace.iterations_run = t;
  trace.final_cost = cost;
  trace.final_iterate = std::move(x);
  trace.average_iterate = average.mean();
  return trace;
}

inline RunTrace run_rpt(const Problem& problem, const PTSketchDistribution& dist,
                        const SolverConfig& config) {
  return run_rpt(problem, dist, CostModel::proportional_to_sizes(problem.partition), config);
}

/// Per-epoch stepsizes 1 / lambda_max of the leading principal submatrix over
/// blocks 1..b.
inline std::vector<double> default_pt_stepsizes(const Problem& problem) {
  const BlockPartition& part = problem.partition;
  std::vector<double> gammas(part.num_blocks());
  for (std::size_t bb = 0; bb < part.num_blocks(); ++bb) {
    const std::size_t head = part.offset(bb) + part.size(bb);
    gammas[bb] = 1.0 / lambda_max(problem.smoothness.matrix().principal_block(0, head));
  }
  return gammas;
}

/// T_b = floor(T / 2B) for all but the last epoch; the last epoch takes the
/// rest, which works out to T(B+1)/(2B) plus rounding remainder.
inline std::vector<std::size_t> default_pt_durations(std::size_t total_iterations,
                                                     std::size_t num_blocks) {
  if (num_blocks == 0) throw ValidationError("default_pt_durations: need at least one block");
  const std::size_t base = total_iterations / (2 * num_blocks);
  std::vector<std::size_t> durations(num_blocks, base);
  durations[num_blocks - 1] = total_iterations - base * (num_blocks - 1);
  return durations;
}

/// Deterministic progressive training: epoch b runs T_b iterations updating
/// blocks 1..b only (no scaling), paying the summed cost of those blocks per
/// iteration.
inline RunTrace run_pt(const Problem& problem, const std::vector<double>& stepsizes,
                       const std::vector<std::size_t>& durations, const CostModel& costs,
                       const SolverConfig& config) {
  const BlockPartition& part = problem.partition;
  const std::size_t b = part.num_blocks();
  if (stepsizes.size() != b || durations.size() != b)
    throw ValidationError("run_pt: need one stepsize and one duration per block");
  for (double g : stepsizes)
    if (!(g > 0.0)) throw ValidationError("run_pt: stepsizes must be positive");
  if (costs.num_blocks() != b) throw ValidationError("run_pt: cost model block count mismatch");

  RunTrace trace;
  trace.solver = "pt";
  trace.seed = config.seed;
  trace.stepsize = stepsizes[0];
  trace.stepsize_rule = "per-epoch";

  std::vector<double> epoch_cost(b, 0.0);
  double acc = 0.0;
  for (std::size_t k = 0; k < b; ++k) {
    acc += costs.cost(k);
    epoch_cost[k] = acc;
  }
  epoch_cost[b - 1] = 1.0;

  std::size_t total = 0;
  for (std::size_t d : durations) total += d;

  std::vector<double> x = detail::starting_point(problem, config);
  detail::MetricRecorder recorder(problem, trace, config);
  detail::AverageTracker average;
  average.add(x);

  std::vector<std::size_t> active;
  std::vector<double> packed;
  double cost = 0.0;
  bool stop = recorder.record(0, 0.0, x);
  std::size_t t = 0;
  for (std::size_t epoch = 0; epoch < b && !stop; ++epoch) {
    active.push_back(epoch);
    const double gamma = stepsizes[epoch];
    for (std::size_t i = 0; i < durations[epoch] && !stop; ++i) {
      ++t;
      problem.packed_block_gradient(x, active, packed);
      std::size_t pos = 0;
      for (std::size_t blk : active) {
        const std::size_t off = part.offset(blk);
        for (std::size_t j = 0; j < part.size(blk); ++j, ++pos)
          x[off + j] -= gamma * packed[pos];
      }
      cost += epoch_cost[epoch];
      average.add(x);
      if (recorder.due(t, total)) {
        stop = recorder.record(t, cost, x);
        if (stop) trace.stopped_early = t < total;
      }
    }
  }
  trace.iterations_run = t;
  trace.final_cost = cost;
  trace.final_iterate = std::move(x);
  trace.average_iterate = average.mean();
  return trace;
}

inline RunTrace run_pt(const Problem& problem, const SolverConfig& config) {
  return run_pt(problem, default_pt_stepsizes(problem),
                default_pt_durations(config.iterations, problem.partition.num_blocks()),
                CostModel::proportional_to_sizes(problem.partition), config);
}

/// Cyclic block coordinate descent: sub-step t updates block (t-1 mod B) with
/// stepsize 1/L_k at cost c_k. config.iterations counts sub-steps.
inline RunTrace run_cbcd(const Problem& problem, const CostModel& costs,
                         const SolverConfig& config) {
  const BlockPartition& part = problem.partition;
  const std::size_t b = part.num_blocks();
  if (costs.num_blocks() != b) throw ValidationError("run_cbcd: cost model block count mismatch");

  RunTrace trace;
  trace.solver = "cbcd";
  trace.seed = config.seed;
  trace.stepsize = 1.0 / problem.smoothness.block_maxima()[0];
  trace.stepsize_rule = "1/L_k";

  std::vector<double> x = detail::starting_point(problem, config);
  detail::MetricRecorder recorder(problem, trace, config);
  detail::AverageTracker average;
  average.add(x);

  std::vector<std::size_t> active(1, 0);
  std::vector<double> packed;
  double cost = 0.0;
  bool stop = recorder.record(0, 0.0, x);
  std::size_t t = 0;
  while (!stop && t < config.iterations) {
    const std::size_t blk = t % b;
    ++t;
    active[0] = blk;
    problem.packed_block_gradient(x, active, packed);
    const double gamma = 1.0 / problem.smoothness.block_maxima()[blk];
    const std::size_t off = part.offset(blk);
    for (std::size_t j = 0; j < part.size(blk); ++j) x[off + j] -= gamma * packed[j];
    cost += costs.cost(blk);
    average.add(x);
    if (recorder.due(t, config.iterations)) {
      stop = recorder.record(t, cost, x);
      if (stop) trace.stopped_early = t < config.iterations;
    }
  }
  trace.iterations_run = t;
  trace.final_cost = cost;
  trace.final_iterate = std::move(x);
  trace.average_iterate = average.mean();
  return trace;
}

inline RunTrace run_cbcd(const Problem& problem, const SolverConfig& config) {
  return run_cbcd(problem, CostModel::proportional_to_sizes(problem.partition), config);
}

}  // namespace rpt
