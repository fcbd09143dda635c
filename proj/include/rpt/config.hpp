#pragma once

#include <cstdint>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rpt/errors.hpp"
#include "rpt/solver.hpp"

namespace rpt {

/// Experiment configuration files use a small sectioned key-value grammar:
///
///   # comment (also ';')
///   [section]            sections may repeat; order is preserved
///   key = value          values: scalars, strings, or comma-separated lists
///
/// Recognized sections: [setup] (one per synthetic quadratic, repeatable),
/// [ridge] (dataset problem), [run] (solvers, budgets, seeds, output).
struct ConfigFile {
  struct Section {
    std::string name;
    std::vector<std::pair<std::string, std::string>> entries;

    const std::string* find(const std::string& key) const {
      for (const auto& [k, v] : entries)
        if (k == key) return &v;
      return nullptr;
    }
  };
  std::vector<Section> sections;

  static ConfigFile parse(std::istream& in) {
    ConfigFile cfg;
    std::string line;
    std::size_t lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const auto comment = line.find_first_of("#;");
      if (comment != std::string::npos) line = line.substr(0, comment);
      const auto a = line.find_first_not_of(" \t\r\n");
      if (a == std::string::npos) continue;
      const auto b = line.find_last_not_of(" \t\r\n");
      line = line.substr(a, b - a + 1);
      if (line.front() == '[') {
        if (line.back() != ']')
          throw ValidationError("config line " + std::to_string(lineno) + ": unterminated section");
        cfg.sections.push_back({line.substr(1, line.size() - 2), {}});
        continue;
      }
      const auto eq = line.find('=');
      if (eq == std::string::npos)
        throw ValidationError("config line " + std::to_string(lineno) + ": expected key = value");
      auto trim = [](std::string s) {
        const auto x = s.find_first_not_of(" \t");
        if (x == std::string::npos) return std::string{};
        const auto y = s.find_last_not_of(" \t");
        return s.substr(x, y - x + 1);
      };
      if (cfg.sections.empty())
        throw ValidationError("config line " + std::to_string(lineno) + ": key outside a section");
      cfg.sections.back().entries.emplace_back(trim(line.substr(0, eq)),
                                               trim(line.substr(eq + 1)));
    }
    return cfg;
  }

  static ConfigFile parse_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw IoError("config: cannot open '" + path + "'");
    return parse(in);
  }
};

namespace detail {

inline double parse_real(const std::string& v, const std::string& key) {
  try {
    std::size_t used = 0;
    const double x = std::stod(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw ValidationError("config: cannot parse '" + v + "' as a real for key '" + key + "'");
  }
}

inline long long parse_int(const std::string& v, const std::string& key) {
  try {
    std::size_t used = 0;
    const long long x = std::stoll(v, &used);
    if (used != v.size()) throw std::invalid_argument("trailing characters");
    return x;
  } catch (const std::exception&) {
    throw ValidationError("config: cannot parse '" + v + "' as an integer for key '" + key + "'");
  }
}

inline bool parse_bool(const std::string& v, const std::string& key) {
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  throw ValidationError("config: cannot parse '" + v + "' as a boolean for key '" + key + "'");
}

inline std::vector<std::string> split_list(const std::string& v) {
  std::vector<std::string> items;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto a = item.find_first_not_of(" \t");
    if (a == std::string::npos) continue;
    const auto b = item.find_last_not_of(" \t");
    items.push_back(item.substr(a, b - a + 1));
  }
  return items;
}

inline std::vector<double> parse_real_list(const std::string& v, const std::string& key) {
  std::vector<double> out;
  for (const auto& item : split_list(v)) out.push_back(parse_real(item, key));
  return out;
}

inline std::vector<std::size_t> parse_size_list(const std::string& v, const std::string& key) {
  std::vector<std::size_t> out;
  for (const auto& item : split_list(v)) {
    const long long x = parse_int(item, key);
    if (x < 0) throw ValidationError("config: key '" + key + "' must be non-negative");
    out.push_back(static_cast<std::size_t>(x));
  }
  return out;
}

inline Stepsize parse_stepsize(const std::string& v) {
  if (v == "auto") return Stepsize::named(StepsizeRule::Auto);
  if (v == "one_over_LP") return Stepsize::named(StepsizeRule::OneOverLP);
  if (v == "half_over_LP") return Stepsize::named(StepsizeRule::HalfOverLP);
  if (v == "one_over_L") return Stepsize::named(StepsizeRule::OneOverL);
  return Stepsize::explicit_value(parse_real(v, "stepsize"));
}

}  // namespace detail

struct QuadraticSetup {
  std::string name;
  std::vector<std::size_t> sizes;
  std::vector<double> l_max;
  std::vector<double> l_min;  // empty: low_i = min(L_B, L_i) for i < B, 1 for the last block
  std::uint64_t gen_seed = 1;

  std::vector<std::pair<double, double>> ranges() const {
    std::vector<std::pair<double, double>> r(l_max.size());
    for (std::size_t b = 0; b < l_max.size(); ++b) {
      double lo;
      if (!l_min.empty()) {
        lo = l_min[b];
      } else if (b + 1 == l_max.size()) {
        lo = std::min(1.0, l_max[b]);
      } else {
        lo = std::min(l_max.back(), l_max[b]);
      }
      r[b] = {lo, l_max[b]};
    }
    return r;
  }
};

enum class SolverKind { Gd, Rpt, Pt, Cbcd };

inline SolverKind parse_solver(const std::string& name) {
  if (name == "gd") return SolverKind::Gd;
  if (name == "rpt") return SolverKind::Rpt;
  if (name == "pt") return SolverKind::Pt;
  if (name == "cbcd") return SolverKind::Cbcd;
  throw ValidationError("unknown solver '" + name + "' (expected gd, rpt, pt or cbcd)");
}

inline std::string solver_name(SolverKind kind) {
  switch (kind) {
    case SolverKind::Gd: return "gd";
    case SolverKind::Rpt: return "rpt";
    case SolverKind::Pt: return "pt";
    case SolverKind::Cbcd: return "cbcd";
  }
  return "?";
}

struct RidgeSpec {
  std::string dataset_path;
  bool has_header = false;
  int target_column = -1;        // negative counts from the end
  std::string target_name;       // by-name selection, needs a header
  double lambda = 0.1;
  std::size_t blocks = 3;
  bool add_bias = true;
};

struct RunSpec {
  std::vector<SolverKind> solvers{SolverKind::Gd, SolverKind::Rpt};
  std::size_t iterations = 2000000;
  std::vector<std::uint64_t> seeds{0, 1, 2, 3, 4};
  double eps_rel = 1e-6;  // accuracy target relative to the initial f-gap
  std::size_t metric_stride = 50;
  Stepsize stepsize_gd = Stepsize::named(StepsizeRule::OneOverL);
  Stepsize stepsize_rpt = Stepsize::named(StepsizeRule::OneOverLP);
  std::string out_dir = "out";
};

struct BenchmarkSpec {
  std::vector<QuadraticSetup> setups;
  std::optional<RidgeSpec> ridge;
  RunSpec run;

  void validate() const {
    if (run.solvers.empty()) throw ValidationError("spec: at least one solver required");
    if (run.seeds.empty()) throw ValidationError("spec: seed list must be non-empty");
    if (!(run.eps_rel > 0.0)) throw ValidationError("spec: eps must be positive");
    for (const auto& s : setups) {
      if (s.sizes.empty() || s.sizes.size() != s.l_max.size())
        throw ValidationError("spec: setup '" + s.name + "' needs matching sizes and L values");
    }
  }

  static BenchmarkSpec from_config(const ConfigFile& cfg) {
    BenchmarkSpec spec;
    for (const auto& section : cfg.sections) {
      if (section.name == "setup") {
        QuadraticSetup setup;
        for (const auto& [k, v] : section.entries) {
          if (k == "name") setup.name = v;
          else if (k == "sizes") setup.sizes = detail::parse_size_list(v, k);
          else if (k == "lmax") setup.l_max = detail::parse_real_list(v, k);
          else if (k == "lmin") setup.l_min = detail::parse_real_list(v, k);
          else if (k == "gen_seed") setup.gen_seed = static_cast<std::uint64_t>(detail::parse_int(v, k));
          else throw ValidationError("config: unknown key '" + k + "' in [setup]");
        }
        if (setup.name.empty()) setup.name = "setup" + std::to_string(spec.setups.size() + 1);
        spec.setups.push_back(std::move(setup));
      } else if (section.name == "ridge") {
        RidgeSpec ridge;
        for (const auto& [k, v] : section.entries) {
          if (k == "dataset") ridge.dataset_path = v;
          else if (k == "has_header") ridge.has_header = detail::parse_bool(v, k);
          else if (k == "target_col") ridge.target_column = static_cast<int>(detail::parse_int(v, k));
          else if (k == "target_name") ridge.target_name = v;
          else if (k == "lambda") ridge.lambda = detail::parse_real(v, k);
          else if (k == "blocks") ridge.blocks = static_cast<std::size_t>(detail::parse_int(v, k));
          else if (k == "add_bias") ridge.add_bias = detail::parse_bool(v, k);
          else throw ValidationError("config: unknown key '" + k + "' in [ridge]");
        }
        spec.ridge = std::move(ridge);
      } else if (section.name == "run") {
        for (const auto& [k, v] : section.entries) {
          if (k == "solvers") {
            spec.run.solvers.clear();
            for (const auto& s : detail::split_list(v)) spec.run.solvers.push_back(parse_solver(s));
          } else if (k == "T") {
            spec.run.iterations = static_cast<std::size_t>(detail::parse_int(v, k));
          } else if (k == "seeds") {
            spec.run.seeds.clear();
            for (auto s : detail::parse_size_list(v, k)) spec.run.seeds.push_back(s);
          } else if (k == "eps") {
            spec.run.eps_rel = detail::parse_real(v, k);
          } else if (k == "metric_stride") {
            spec.run.metric_stride = static_cast<std::size_t>(detail::parse_int(v, k));
          } else if (k == "stepsize_gd") {
            spec.run.stepsize_gd = detail::parse_stepsize(v);
          } else if (k == "stepsize_rpt") {
            spec.run.stepsize_rpt = detail::parse_stepsize(v);
          } else if (k == "out") {
            spec.run.out_dir = v;
          } else {
            throw ValidationError("config: unknown key '" + k + "' in [run]");
          }
        }
      } else {
        throw ValidationError("config: unknown section '" + section.name + "'");
      }
    }
    spec.validate();
    return spec;
  }
};

}  // namespace rpt
