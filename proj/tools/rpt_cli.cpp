// rptbench: benchmark orchestration, table reproduction, dataset
// preprocessing and the verification suite for the RPT library.
//
// Exit codes: 0 success, 1 check/runtime failure, 2 usage error, 3 I/O error.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "rpt/rpt.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

struct CommonFlags {
  std::string config_path;
  std::vector<std::uint64_t> seeds;
  std::optional<double> eps;
  std::optional<std::size_t> iterations;
  std::string out_dir;
};

rpt::BenchmarkSpec load_spec(const CommonFlags& flags) {
  rpt::BenchmarkSpec spec;
  if (!flags.config_path.empty())
    spec = rpt::BenchmarkSpec::from_config(rpt::ConfigFile::parse_file(flags.config_path));
  if (!flags.seeds.empty()) spec.run.seeds = flags.seeds;
  if (flags.eps) spec.run.eps_rel = *flags.eps;
  if (flags.iterations) spec.run.iterations = *flags.iterations;
  if (!flags.out_dir.empty()) spec.run.out_dir = flags.out_dir;
  spec.validate();
  return spec;
}

rpt::OutputMetadata make_metadata(const rpt::RunSpec& run) {
  rpt::OutputMetadata meta;
  meta.seeds = run.seeds;
  meta.stepsize_rules = "gd: 1/L, rpt: 1/L_P";
  meta.epsilon = run.eps_rel;
  meta.extra.emplace_back("T", std::to_string(run.iterations));
  meta.extra.emplace_back("metric_stride", std::to_string(run.metric_stride));
  return meta;
}

int cmd_speedup_table(const CommonFlags& flags) {
  rpt::BenchmarkSpec spec = load_spec(flags);
  if (spec.setups.empty()) spec.setups = rpt::default_quadratic_setups();
  fs::create_directories(spec.run.out_dir);

  rpt::OutputMetadata meta = make_metadata(spec.run);
  meta.extra.emplace_back("x0", "ones");

  std::vector<rpt::SpeedupRow> rows;
  for (const auto& setup : spec.setups) {
    rows.push_back(rpt::run_speedup_setup(setup, spec.run));
    const auto& row = rows.back();
    std::cout << row.name << ": theory " << rpt::format_speedup(row.theoretical);
    if (row.actual)
      std::cout << ", actual " << rpt::format_speedup(*row.actual);
    else
      std::cout << ", " << row.status;
    std::cout << "\n";
  }
  const std::string csv_path = (fs::path(spec.run.out_dir) / "speedup_table.csv").string();
  rpt::write_speedup_csv(rows, csv_path, meta);
  std::cout << "wrote " << csv_path << "\n";
  return 0;
}

struct RidgeOverrides {
  rpt::RidgeSpec values;
  bool dataset = false, lambda = false, blocks = false, header = false, no_bias = false,
       target = false;
};

int cmd_bench_ridge(const CommonFlags& flags, const RidgeOverrides& overrides) {
  rpt::BenchmarkSpec spec = load_spec(flags);
  if (!spec.ridge) spec.ridge = rpt::RidgeSpec{};
  if (overrides.dataset) spec.ridge->dataset_path = overrides.values.dataset_path;
  if (overrides.lambda) spec.ridge->lambda = overrides.values.lambda;
  if (overrides.blocks) spec.ridge->blocks = overrides.values.blocks;
  if (overrides.header) spec.ridge->has_header = overrides.values.has_header;
  if (overrides.no_bias) spec.ridge->add_bias = false;
  if (overrides.target) {
    spec.ridge->target_name = overrides.values.target_name;
    spec.ridge->target_column = overrides.values.target_column;
  }
  if (spec.ridge->dataset_path.empty())
    throw rpt::ValidationError("bench-ridge: no dataset given (flag --dataset or [ridge] section)");

  fs::create_directories(spec.run.out_dir);
  const rpt::RidgeBenchResult result = rpt::run_ridge_bench(*spec.ridge, spec.run);

  rpt::OutputMetadata meta = make_metadata(spec.run);
  meta.extra.emplace_back("dataset", spec.ridge->dataset_path);
  meta.extra.emplace_back("lambda", rpt::format_double(spec.ridge->lambda));
  meta.extra.emplace_back("blocks", std::to_string(spec.ridge->blocks));
  meta.extra.emplace_back("x0", "zeros");

  json runs = json::array();
  for (const auto& trace : result.traces) {
    const std::string name =
        trace.solver + (trace.solver == "rpt" ? "_seed" + std::to_string(trace.seed) : "") +
        "_trace.csv";
    rpt::write_trace_csv(trace, (fs::path(spec.run.out_dir) / name).string(), meta);
    runs.push_back(rpt::trace_summary_json(trace, result.eps_abs));
  }

  json summary;
  summary["meta"] = meta.to_json();
  summary["runs"] = std::move(runs);
  summary["rows"] = result.rows;
  summary["features"] = result.features;
  summary["permutation"] = result.permutation;
  summary["hessian_diagonal"] = result.hessian_diagonal;
  summary["L_P"] = result.l_p;
  summary["theoretical_speedup"] = result.theoretical;
  if (result.gd_cost) summary["gd_cost"] = *result.gd_cost;
  if (result.rpt_mean_cost) summary["rpt_mean_cost"] = *result.rpt_mean_cost;
  if (result.actual) summary["actual_speedup"] = *result.actual;
  summary["status"] = result.status;
  const std::string json_path = (fs::path(spec.run.out_dir) / "ridge_summary.json").string();
  rpt::write_json_file(summary, json_path);

  std::cout << "ridge: theory " << rpt::format_speedup(result.theoretical);
  if (result.actual) std::cout << ", actual " << rpt::format_speedup(*result.actual);
  std::cout << " (" << result.status << ")\nwrote " << json_path << "\n";
  return 0;
}

int cmd_verify(const std::string& suite_name, std::uint64_t seed, const std::string& out_dir) {
  const rpt::CheckSuite suite = rpt::parse_check_suite(suite_name);
  const std::vector<rpt::CheckReport> reports = rpt::run_suite(suite, seed);

  bool all_passed = true;
  json checks = json::array();
  for (const auto& rep : reports) {
    all_passed = all_passed && rep.passed;
    std::printf("%-32s %s  instances=%zu  max_violation=%.3e (tol %.1e)\n", rep.name.c_str(),
                rep.passed ? "PASS" : "FAIL", rep.instances, rep.max_violation, rep.tolerance);
    json j;
    j["name"] = rep.name;
    j["passed"] = rep.passed;
    j["instances"] = rep.instances;
    j["max_violation"] = rep.max_violation;
    j["tolerance"] = rep.tolerance;
    if (!rep.details.empty()) j["details"] = rep.details;
    json params;
    for (const auto& [k, v] : rep.parameters) params[k] = v;
    j["parameters"] = params;
    checks.push_back(std::move(j));
  }
  if (!out_dir.empty()) {
    fs::create_directories(out_dir);
    json report;
    report["tool"] = std::string("rptbench ") + rpt::kVersion;
    report["suite"] = suite_name;
    report["seed"] = seed;
    report["all_passed"] = all_passed;
    report["checks"] = std::move(checks);
    const std::string path = (fs::path(out_dir) / ("verify_" + suite_name + ".json")).string();
    rpt::write_json_file(report, path);
    std::cout << "wrote " << path << "\n";
  }
  std::cout << (all_passed ? "all checks passed" : "CHECK FAILURES PRESENT") << "\n";
  return all_passed ? 0 : 1;
}

int cmd_preprocess(const std::string& dataset, bool has_header, int target_col,
                   const std::string& target_name, bool add_bias, const std::string& out_dir) {
  rpt::CsvOptions csv;
  csv.has_header = has_header;
  csv.target_column = target_col;
  csv.target_name = target_name;
  const rpt::Dataset raw = rpt::read_csv(dataset, csv);
  const rpt::PreprocessResult pre = rpt::preprocess(raw, add_bias);

  fs::create_directories(out_dir);
  const std::string csv_path = (fs::path(out_dir) / "preprocessed.csv").string();
  std::ofstream out(csv_path);
  if (!out) throw rpt::IoError("preprocess: cannot open '" + csv_path + "'");
  out << "# tool: rptbench " << rpt::kVersion << "\n";
  out << "# source: " << dataset << "\n";
  if (!pre.dataset.column_names.empty()) {
    for (std::size_t j = 0; j < pre.dataset.m; ++j)
      out << pre.dataset.column_names[j] << ",";
    out << "target\n";
  }
  for (std::size_t i = 0; i < pre.dataset.n; ++i) {
    for (std::size_t j = 0; j < pre.dataset.m; ++j)
      out << rpt::format_double(pre.dataset.feature(i, j)) << ",";
    out << rpt::format_double(pre.dataset.targets[i]) << "\n";
  }
  out.close();

  json info;
  info["tool"] = std::string("rptbench ") + rpt::kVersion;
  info["rows"] = pre.dataset.n;
  info["features"] = pre.dataset.m;
  info["permutation"] = pre.permutation;
  info["hessian_diagonal"] = pre.hessian_diagonal;
  if (!pre.dataset.column_names.empty()) info["column_names"] = pre.dataset.column_names;
  const std::string json_path = (fs::path(out_dir) / "preprocess.json").string();
  rpt::write_json_file(info, json_path);
  std::cout << "wrote " << csv_path << " and " << json_path << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Randomized progressive training benchmark harness"};
  app.require_subcommand(1);

  CommonFlags flags;

  auto* table = app.add_subcommand("speedup-table",
                                   "Theoretical vs measured RPT/GD speedups on synthetic quadratics");
  table->add_option("--config", flags.config_path, "experiment configuration file");
  table->add_option("--seed", flags.seeds, "seed list")->delimiter(',');
  table->add_option("--eps", flags.eps, "relative accuracy target");
  table->add_option("--T", flags.iterations, "iteration cap");
  table->add_option("--out", flags.out_dir, "output directory");

  RidgeOverrides ridge_flags;
  bool no_bias = false;
  std::string target_col_text;
  auto* ridge = app.add_subcommand("bench-ridge", "GD/RPT/CBCD comparison on a ridge dataset");
  ridge->add_option("--config", flags.config_path, "experiment configuration file");
  ridge->add_option("--dataset", ridge_flags.values.dataset_path, "CSV dataset path");
  ridge->add_option("--seed", flags.seeds, "seed list")->delimiter(',');
  ridge->add_option("--eps", flags.eps, "relative accuracy target");
  ridge->add_option("--T", flags.iterations, "iteration cap");
  ridge->add_option("--out", flags.out_dir, "output directory");
  ridge->add_option("--lambda", ridge_flags.values.lambda, "ridge regularization")
      ->check(CLI::PositiveNumber);
  ridge->add_option("--blocks", ridge_flags.values.blocks, "number of coordinate blocks");
  ridge->add_option("--target-col", target_col_text, "target column (index or name)");
  ridge->add_flag("--header", ridge_flags.values.has_header, "first row is a header");
  ridge->add_flag("--no-bias", no_bias, "skip the all-ones bias column");

  std::string suite_name = "all";
  std::uint64_t verify_seed = 0;
  std::string verify_out;
  auto* verify = app.add_subcommand("verify", "Run the executable certification suite");
  verify->add_option("suite", suite_name, "all | lemmas | theorems | appendix");
  verify->add_option("--seed", verify_seed, "base seed");
  verify->add_option("--out", verify_out, "report output directory");

  std::string pre_dataset, pre_out = "out";
  bool pre_header = false, pre_no_bias = false;
  std::string pre_target;
  auto* prep = app.add_subcommand("preprocess", "Standardize, add bias, sort by Hessian diagonal");
  prep->add_option("--dataset", pre_dataset, "CSV dataset path")->required();
  prep->add_option("--out", pre_out, "output directory");
  prep->add_option("--target-col", pre_target, "target column (index or name)");
  prep->add_flag("--header", pre_header, "first row is a header");
  prep->add_flag("--no-bias", pre_no_bias, "skip the all-ones bias column");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return e.get_exit_code() == 0 ? 0 : 2;
  }

  auto parse_target = [](const std::string& text, rpt::RidgeSpec& out_spec) {
    if (text.empty()) return;
    try {
      std::size_t used = 0;
      const int idx = std::stoi(text, &used);
      if (used == text.size()) {
        out_spec.target_column = idx;
        return;
      }
    } catch (const std::exception&) {
    }
    out_spec.target_name = text;
  };

  try {
    if (table->parsed()) return cmd_speedup_table(flags);
    if (ridge->parsed()) {
      ridge_flags.dataset = ridge->count("--dataset") > 0;
      ridge_flags.lambda = ridge->count("--lambda") > 0;
      ridge_flags.blocks = ridge->count("--blocks") > 0;
      ridge_flags.header = ridge->count("--header") > 0;
      ridge_flags.no_bias = no_bias;
      ridge_flags.target = !target_col_text.empty();
      parse_target(target_col_text, ridge_flags.values);
      return cmd_bench_ridge(flags, ridge_flags);
    }
    if (verify->parsed()) return cmd_verify(suite_name, verify_seed, verify_out);
    if (prep->parsed()) {
      rpt::RidgeSpec tmp;
      parse_target(pre_target, tmp);
      return cmd_preprocess(pre_dataset, pre_header, tmp.target_column, tmp.target_name,
                            !pre_no_bias, pre_out);
    }
  } catch (const rpt::IoError& e) {
    std::cerr << "I/O error: " << e.what() << "\n";
    return 3;
  } catch (const rpt::ValidationError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
