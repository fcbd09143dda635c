#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <fstream>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rpt/errors.hpp"

namespace rpt {

/// In-memory regression dataset: an n x m feature matrix plus n targets.
struct Dataset {
  std::size_t n = 0;  // rows
  std::size_t m = 0;  // feature columns
  std::vector<double> features;  // row-major n x m
  std::vector<double> targets;
  std::vector<std::string> column_names;  // empty when the source had no header

  double feature(std::size_t i, std::size_t j) const { return features[i * m + j]; }
  double& feature(std::size_t i, std::size_t j) { return features[i * m + j]; }

  void validate() const {
    if (n == 0 || m == 0) throw ValidationError("Dataset: empty dataset");
    if (features.size() != n * m || targets.size() != n)
      throw ValidationError("Dataset: inconsistent row counts");
    for (double v : features)
      if (!std::isfinite(v)) throw ValidationError("Dataset: non-finite feature entry");
    for (double v : targets)
      if (!std::isfinite(v)) throw ValidationError("Dataset: non-finite target entry");
  }
};

struct CsvOptions {
  bool has_header = false;
  int target_column = -1;        // 0-based; negative counts from the end (-1 = last)
  std::string target_name;       // overrides target_column when non-empty (needs header)
};

namespace detail {

inline std::string trim(const std::string& s) {
  const auto a = s.find_first_not_of(" \t\r\n");
  if (a == std::string::npos) return "";
  const auto b = s.find_last_not_of(" \t\r\n");
  return s.substr(a, b - a + 1);
}

inline std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> cells;
  std::string cell;
  std::stringstream ss(line);
  while (std::getline(ss, cell, ',')) cells.push_back(trim(cell));
  if (!line.empty() && line.back() == ',') cells.push_back("");
  return cells;
}

}  // namespace detail

/// Reads a comma-separated, UTF-8 dataset. Lines starting with '#' and blank
/// lines are skipped. One column is the target (last by default); all other
/// columns become features in file order.
inline Dataset read_csv(const std::string& path, const CsvOptions& opts = {}) {
  std::ifstream in(path);
  if (!in) throw IoError("read_csv: cannot open '" + path + "'");

  std::string line;
  std::vector<std::string> names;
  std::vector<std::vector<double>> rows;
  std::size_t lineno = 0;
  bool header_done = !opts.has_header;
  std::size_t width = 0;

  while (std::getline(in, line)) {
    ++lineno;
    const std::string stripped = detail::trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    auto cells = detail::split_csv_line(stripped);
    if (!header_done) {
      names = cells;
      width = cells.size();
      header_done = true;
      continue;
    }
    if (width == 0) width = cells.size();
    if (cells.size() != width)
      throw IoError("read_csv: row at line " + std::to_string(lineno) + " has " +
                    std::to_string(cells.size()) + " columns, expected " + std::to_string(width));
    std::vector<double> row(width);
    for (std::size_t j = 0; j < width; ++j) {
      try {
        std::size_t used = 0;
        row[j] = std::stod(cells[j], &used);
        if (used != cells[j].size()) throw std::invalid_argument("trailing characters");
      } catch (const std::exception&) {
        throw IoError("read_csv: cannot parse value at line " + std::to_string(lineno) +
                      ", column " + std::to_string(j + 1) + ": '" + cells[j] + "'");
      }
      if (!std::isfinite(row[j]))
        throw ValidationError("read_csv: non-finite value at line " + std::to_string(lineno) +
                              ", column " + std::to_string(j + 1));
    }
    rows.push_back(std::move(row));
  }
  if (rows.empty()) throw ValidationError("read_csv: no data rows in '" + path + "'");

  // resolve the target column
  std::size_t target;
  if (!opts.target_name.empty()) {
    const auto it = std::find(names.begin(), names.end(), opts.target_name);
    if (it == names.end())
      throw ValidationError("read_csv: target column '" + opts.target_name + "' not found");
    target = static_cast<std::size_t>(it - names.begin());
  } else {
    long idx = opts.target_column;
    if (idx < 0) idx += static_cast<long>(width);
    if (idx < 0 || idx >= static_cast<long>(width))
      throw ValidationError("read_csv: target column index out of range");
    target = static_cast<std::size_t>(idx);
  }

  Dataset out;
  out.n = rows.size();
  out.m = width - 1;
  if (out.m == 0) throw ValidationError("read_csv: dataset has no feature columns");
  out.features.reserve(out.n * out.m);
  out.targets.reserve(out.n);
  for (const auto& row : rows) {
    for (std::size_t j = 0; j < width; ++j) {
      if (j == target)
        out.targets.push_back(row[j]);
      else
        out.features.push_back(row[j]);
    }
  }
  if (!names.empty()) {
    for (std::size_t j = 0; j < width; ++j)
      if (j != target) out.column_names.push_back(names[j]);
  }
  out.validate();
  return out;
}

struct PreprocessResult {
  Dataset dataset;
  std::vector<std::size_t> permutation;   // output column j came from input column permutation[j]
  std::vector<double> hessian_diagonal;   // (2/n) * column sums of squares, post-permutation
};

/// Standardizes each feature column to mean 0 / unit standard deviation
/// (constant columns become 0), optionally appends an all-ones bias column,
/// and permutes columns so the ridge Hessian diagonal is non-increasing. The
/// regularizer shifts every diagonal entry equally, so the ordering does not
/// depend on lambda.
inline PreprocessResult preprocess(const Dataset& input, bool add_bias) {
  input.validate();
  const std::size_t n = input.n;
  const std::size_t m_out = input.m + (add_bias ? 1 : 0);

  Dataset staged;
  staged.n = n;
  staged.m = m_out;
  staged.features.assign(n * m_out, 0.0);
  staged.targets = input.targets;

  for (std::size_t j = 0; j < input.m; ++j) {
    double mean = 0.0;
    for (std::size_t i = 0; i < n; ++i) mean += input.feature(i, j);
    mean /= static_cast<double>(n);
    double var = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double c = input.feature(i, j) - mean;
      var += c * c;
    }
    var /= static_cast<double>(n);
    const double sd = std::sqrt(var);
    if (sd > 1e-12 * std::max(1.0, std::abs(mean))) {
      for (std::size_t i = 0; i < n; ++i)
        staged.features[i * m_out + j] = (input.feature(i, j) - mean) / sd;
    }
    // constant columns stay at 0
  }
  if (add_bias) {
    for (std::size_t i = 0; i < n; ++i) staged.features[i * m_out + input.m] = 1.0;
  }

  std::vector<std::string> staged_names;
  if (!input.column_names.empty() || add_bias) {
    for (std::size_t j = 0; j < input.m; ++j)
      staged_names.push_back(input.column_names.empty() ? "c" + std::to_string(j)
                                                        : input.column_names[j]);
    if (add_bias) staged_names.push_back("bias");
  }

  std::vector<double> diag(m_out, 0.0);
  for (std::size_t j = 0; j < m_out; ++j) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      const double v = staged.features[i * m_out + j];
      s += v * v;
    }
    diag[j] = 2.0 * s / static_cast<double>(n);
  }

  // quantize the sort key so values equal up to relative 1e-12 count as ties
  // and keep their file order under the stable sort
  double scale = 0.0;
  for (double v : diag) scale = std::max(scale, std::abs(v));
  if (scale == 0.0) scale = 1.0;
  std::vector<double> key(m_out);
  for (std::size_t j = 0; j < m_out; ++j) key[j] = std::floor(diag[j] / scale * 1e12 + 0.5);
  std::vector<std::size_t> perm(m_out);
  std::iota(perm.begin(), perm.end(), std::size_t{0});
  std::stable_sort(perm.begin(), perm.end(),
                   [&](std::size_t a, std::size_t b) { return key[a] > key[b]; });

  PreprocessResult out;
  out.permutation = perm;
  out.dataset.n = n;
  out.dataset.m = m_out;
  out.dataset.targets = staged.targets;
  out.dataset.features.assign(n * m_out, 0.0);
  out.hessian_diagonal.resize(m_out);
  for (std::size_t j = 0; j < m_out; ++j) {
    out.hessian_diagonal[j] = diag[perm[j]];
    for (std::size_t i = 0; i < n; ++i)
      out.dataset.features[i * m_out + j] = staged.features[i * m_out + perm[j]];
  }
  if (!staged_names.empty()) {
    out.dataset.column_names.resize(m_out);
    for (std::size_t j = 0; j < m_out; ++j) out.dataset.column_names[j] = staged_names[perm[j]];
  }
  out.dataset.validate();
  return out;
}

}  // namespace rpt
