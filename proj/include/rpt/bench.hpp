#pragma once

#include <cmath>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rpt/config.hpp"
#include "rpt/cost_model.hpp"
#include "rpt/dataset.hpp"
#include "rpt/errors.hpp"
#include "rpt/quadratic.hpp"
#include "rpt/ridge.hpp"
#include "rpt/scheduler.hpp"
#include "rpt/solver.hpp"
#include "rpt/trace_io.hpp"

namespace rpt {

/// The built-in synthetic quadratic grid: three scales of per-block
/// smoothness constants crossed with four block-size layouts, three blocks
/// each, costs proportional to block size.
inline std::vector<QuadraticSetup> default_quadratic_setups() {
  std::vector<QuadraticSetup> setups;
  const std::vector<std::vector<std::size_t>> size_grid = {
      {10, 10, 10}, {10, 50, 250}, {10, 100, 1000}, {10, 500, 25000}};
  const std::vector<std::vector<double>> l_grid = {
      {272.0, 53.3, 11.0},   {270.5, 55.0, 11.0},  {256.7, 54.8, 11.0},  {274.8, 55.0, 11.0},
      {1066.5, 108.4, 11.0}, {1080.4, 109.6, 11.0}, {1093.9, 109.7, 11.0}, {1066.7, 110.0, 11.0},
      {27414.0, 547.0, 11.0}, {27166.0, 550.0, 11.0}, {26020.0, 549.0, 11.0}, {27363.0, 550.0, 11.0}};
  for (std::size_t i = 0; i < l_grid.size(); ++i) {
    QuadraticSetup s;
    s.name = "setup" + std::to_string(i + 1);
    s.sizes = size_grid[i % 4];
    s.l_max = l_grid[i];
    s.gen_seed = i + 1;
    setups.push_back(std::move(s));
  }
  return setups;
}

struct SpeedupRow {
  std::string name;
  std::vector<std::size_t> sizes;
  std::vector<double> l_max;
  double theoretical = 0.0;
  std::optional<double> gd_cost;
  std::optional<double> rpt_mean_cost;
  std::optional<double> actual;
  std::string status = "ok";
};

/// Runs one synthetic setup: GD once (deterministic), RPT over all seeds with
/// the importance-sampled schedule, both from x0 = ones, stopping at
/// f-gap <= eps_rel * initial gap. Costs are abstract units (one full
/// gradient = 1).
inline SpeedupRow run_speedup_setup(const QuadraticSetup& setup, const RunSpec& run) {
  SpeedupRow row;
  row.name = setup.name;
  row.sizes = setup.sizes;
  row.l_max = setup.l_max;

  const Problem problem = generate_synthetic_quadratic(setup.sizes, setup.ranges(), setup.gen_seed);
  const CostModel costs = CostModel::proportional_to_sizes(problem.partition);
  const Schedule schedule = optimal_schedule(problem.smoothness, costs);
  row.theoretical = schedule.theoretical_speedup;

  const std::vector<double> x0(problem.dim(), 1.0);
  const double initial_gap = problem.value(x0);
  const double target = run.eps_rel * initial_gap;

  SolverConfig gd_config;
  gd_config.stepsize = run.stepsize_gd;
  gd_config.iterations = run.iterations;
  gd_config.metric_stride = run.metric_stride;
  gd_config.initial_point = x0;
  gd_config.stop_below_f_gap = target;
  const RunTrace gd_trace = run_gd(problem, gd_config);
  const auto gd_cost = cost_to_accuracy(gd_trace, target, TraceMetric::FGap);
  if (!gd_cost) {
    row.status = "n/a: gd did not reach eps within T=" + std::to_string(run.iterations);
    return row;
  }
  row.gd_cost = gd_cost;

  const PTSketchDistribution dist =
      importance_distribution(problem.partition, problem.smoothness.block_maxima(), costs);
  double total = 0.0;
  for (const std::uint64_t seed : run.seeds) {
    SolverConfig config;
    config.stepsize = run.stepsize_rpt;
    config.iterations = run.iterations;
    config.seed = seed;
    config.metric_stride = run.metric_stride;
    config.initial_point = x0;
    config.stop_below_f_gap = target;
    const RunTrace trace = run_rpt(problem, dist, costs, config);
    const auto cost = cost_to_accuracy(trace, target, TraceMetric::FGap);
    if (!cost) {
      row.status = "n/a: rpt seed " + std::to_string(seed) + " did not reach eps within T=" +
                   std::to_string(run.iterations);
      return row;
    }
    total += *cost;
  }
  row.rpt_mean_cost = total / static_cast<double>(run.seeds.size());
  row.actual = *row.gd_cost / *row.rpt_mean_cost;
  return row;
}

inline std::string format_speedup(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.1f", v);
  return buf;
}

inline void write_speedup_csv(const std::vector<SpeedupRow>& rows, const std::string& path,
                              const OutputMetadata& meta) {
  std::ofstream out(path);
  if (!out) throw IoError("write_speedup_csv: cannot open '" + path + "'");
  out << meta.to_csv_header();
  out << "name,blocks,Ls,theoretical_speedup,gd_cost,rpt_mean_cost,actual_speedup,status\n";
  for (const auto& row : rows) {
    std::ostringstream sizes, ls;
    for (std::size_t i = 0; i < row.sizes.size(); ++i)
      sizes << (i ? " " : "") << row.sizes[i];
    for (std::size_t i = 0; i < row.l_max.size(); ++i)
      ls << (i ? " " : "") << format_double(row.l_max[i]);
    out << row.name << "," << sizes.str() << "," << ls.str() << ","
        << format_speedup(row.theoretical) << ","
        << (row.gd_cost ? format_double(*row.gd_cost) : std::string{}) << ","
        << (row.rpt_mean_cost ? format_double(*row.rpt_mean_cost) : std::string{}) << ","
        << (row.actual ? format_speedup(*row.actual) : std::string{}) << "," << row.status
        << "\n";
  }
  if (!out) throw IoError("write_speedup_csv: write failed for '" + path + "'");
}

struct RidgeBenchResult {
  std::size_t rows = 0;
  std::size_t features = 0;  // after preprocessing
  std::vector<std::size_t> permutation;
  std::vector<double> hessian_diagonal;
  double lambda = 0.0;
  double l_p = 0.0;
  double theoretical = 0.0;
  double eps_abs = 0.0;  // the absolute f-gap target the costs refer to
  std::vector<RunTrace> traces;  // one per (solver, seed) cell
  std::optional<double> gd_cost;
  std::optional<double> rpt_mean_cost;
  std::optional<double> actual;
  std::string status = "ok";
};

/// Full ridge pipeline: CSV ingestion, preprocessing, problem construction,
/// and a GD/RPT/CBCD comparison from x0 = 0. RPT always runs the
/// importance-sampled distribution; the theoretical column is clipped at 1.
inline RidgeBenchResult run_ridge_bench(const RidgeSpec& ridge, const RunSpec& run) {
  CsvOptions csv;
  csv.has_header = ridge.has_header;
  csv.target_column = ridge.target_column;
  csv.target_name = ridge.target_name;
  const Dataset raw = read_csv(ridge.dataset_path, csv);
  const PreprocessResult pre = preprocess(raw, ridge.add_bias);

  RidgeBenchResult result;
  result.rows = pre.dataset.n;
  result.features = pre.dataset.m;
  result.permutation = pre.permutation;
  result.hessian_diagonal = pre.hessian_diagonal;
  result.lambda = ridge.lambda;

  // narrow datasets cannot host more blocks than columns
  const std::size_t blocks =
      std::min<std::size_t>(std::max<std::size_t>(ridge.blocks, 1), pre.dataset.m);
  const BlockPartition partition = BlockPartition::equal_blocks(pre.dataset.m, blocks);
  const Problem problem = make_ridge(pre.dataset, ridge.lambda, partition);
  const CostModel costs = CostModel::proportional_to_sizes(partition);
  const Schedule schedule = optimal_schedule(problem.smoothness, costs);
  result.theoretical = schedule.theoretical_speedup;
  const PTSketchDistribution dist =
      importance_distribution(partition, problem.smoothness.block_maxima(), costs);
  result.l_p = compute_L_P(problem.smoothness, dist);

  const std::vector<double> x0(problem.dim(), 0.0);
  const double initial_gap = problem.value(x0) - *problem.min_value;
  const double target = run.eps_rel * initial_gap;
  result.eps_abs = target;

  double rpt_total = 0.0;
  std::size_t rpt_runs = 0;
  for (const SolverKind kind : run.solvers) {
    const std::vector<std::uint64_t> seeds =
        kind == SolverKind::Rpt ? run.seeds : std::vector<std::uint64_t>{run.seeds.front()};
    for (const std::uint64_t seed : seeds) {
      SolverConfig config;
      config.iterations = run.iterations;
      config.seed = seed;
      config.metric_stride = run.metric_stride;
      config.initial_point = x0;
      config.stop_below_f_gap = target;
      RunTrace trace;
      switch (kind) {
        case SolverKind::Gd:
          config.stepsize = run.stepsize_gd;
          trace = run_gd(problem, config);
          break;
        case SolverKind::Rpt:
          config.stepsize = run.stepsize_rpt;
          trace = run_rpt(problem, dist, costs, config);
          break;
        case SolverKind::Pt:
          trace = run_pt(problem, config);
          break;
        case SolverKind::Cbcd:
          trace = run_cbcd(problem, costs, config);
          break;
      }
      const auto cost = cost_to_accuracy(trace, target, TraceMetric::FGap);
      if (kind == SolverKind::Gd) {
        result.gd_cost = cost;
      } else if (kind == SolverKind::Rpt) {
        if (cost) {
          rpt_total += *cost;
          ++rpt_runs;
        } else {
          result.status = "n/a: rpt seed " + std::to_string(seed) + " did not reach eps";
        }
      }
      result.traces.push_back(std::move(trace));
    }
  }
  if (rpt_runs > 0 && result.status == "ok")
    result.rpt_mean_cost = rpt_total / static_cast<double>(rpt_runs);
  if (result.gd_cost && result.rpt_mean_cost)
    result.actual = *result.gd_cost / *result.rpt_mean_cost;
  else if (!result.gd_cost && result.status == "ok")
    result.status = "n/a: gd did not reach eps";
  return result;
}

}  // namespace rpt
