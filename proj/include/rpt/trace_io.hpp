#pragma once

#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "rpt/errors.hpp"
#include "rpt/solver.hpp"
#include "rpt/version.hpp"

namespace rpt {

// Shortest exact round-trip formatting for doubles, deterministic across runs.
inline std::string format_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

/// Provenance stamped into every output file: tool version, seeds, stepsize
/// rules, the accuracy target, plus any command-specific key-value pairs.
struct OutputMetadata {
  std::vector<std::uint64_t> seeds;
  std::string stepsize_rules;
  double epsilon = 0.0;
  std::vector<std::pair<std::string, std::string>> extra;

  std::string to_csv_header() const {
    std::ostringstream out;
    out << "# tool: rptbench " << kVersion << "\n";
    out << "# seeds:";
    for (auto s : seeds) out << " " << s;
    out << "\n";
    out << "# stepsize: " << stepsize_rules << "\n";
    out << "# eps: " << format_double(epsilon) << "\n";
    for (const auto& [k, v] : extra) out << "# " << k << ": " << v << "\n";
    return out.str();
  }

  nlohmann::json to_json() const {
    nlohmann::json meta;
    meta["tool"] = std::string("rptbench ") + kVersion;
    meta["seeds"] = seeds;
    meta["stepsize"] = stepsize_rules;
    meta["eps"] = epsilon;
    for (const auto& [k, v] : extra) meta[k] = v;
    return meta;
  }
};

inline void write_trace_csv(const RunTrace& trace, const std::string& path,
                            const OutputMetadata& meta) {
  std::ofstream out(path);
  if (!out) throw IoError("write_trace_csv: cannot open '" + path + "'");
  out << meta.to_csv_header();
  out << "t,cost,f_gap,dist_sq,grad_norm_sq\n";
  for (const TraceRecord& rec : trace.records) {
    out << rec.iteration << "," << format_double(rec.cost) << "," << format_double(rec.f_gap)
        << "," << (rec.dist_sq ? format_double(*rec.dist_sq) : std::string{}) << ","
        << format_double(rec.grad_norm_sq) << "\n";
  }
  if (!out) throw IoError("write_trace_csv: write failed for '" + path + "'");
}

// Summary of one run; when an accuracy target is given, the cost to reach it
// (f-gap metric) is included.
inline nlohmann::json trace_summary_json(const RunTrace& trace,
                                         std::optional<double> epsilon = std::nullopt) {
  nlohmann::json j;
  j["solver"] = trace.solver;
  j["seed"] = trace.seed;
  j["stepsize"] = trace.stepsize;
  j["stepsize_rule"] = trace.stepsize_rule;
  j["iterations_run"] = trace.iterations_run;
  j["stopped_early"] = trace.stopped_early;
  j["initial_f_gap"] = trace.initial_f_gap;
  j["final_cost"] = trace.final_cost;
  if (!trace.records.empty()) {
    const TraceRecord& last = trace.records.back();
    j["final_f_gap"] = last.f_gap;
    j["final_grad_norm_sq"] = last.grad_norm_sq;
    if (last.dist_sq) j["final_dist_sq"] = *last.dist_sq;
  }
  j["best_grad_norm_sq"] = trace.best_grad_norm_sq;
  j["best_grad_iteration"] = trace.best_grad_iteration;
  if (epsilon) {
    j["eps"] = *epsilon;
    const auto cost = cost_to_accuracy(trace, *epsilon, TraceMetric::FGap);
    if (cost)
      j["cost_to_accuracy"] = *cost;
    else
      j["cost_to_accuracy"] = nullptr;
  }
  return j;
}

inline void write_json_file(const nlohmann::json& j, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("write_json_file: cannot open '" + path + "'");
  out << j.dump(2) << "\n";
  if (!out) throw IoError("write_json_file: write failed for '" + path + "'");
}

}  // namespace rpt
