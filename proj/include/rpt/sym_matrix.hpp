#pragma once

#include <cmath>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "rpt/errors.hpp"

namespace rpt {

/// Symmetric real matrix with either dense (row-major) or diagonal storage.
/// Diagonal storage keeps the large synthetic problems at O(d) memory.
/// Symmetry of dense input is validated at construction and never repaired.
class SymMatrix {
 public:
  static SymMatrix dense(std::size_t dim, std::vector<double> entries) {
    if (dim == 0) throw ValidationError("SymMatrix: dimension must be >= 1");
    if (entries.size() != dim * dim)
      throw ValidationError("SymMatrix: expected " + std::to_string(dim * dim) +
                            " entries, got " + std::to_string(entries.size()));
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = i; j < dim; ++j) {
        const double a = entries[i * dim + j];
        const double b = entries[j * dim + i];
        if (!std::isfinite(a) || !std::isfinite(b))
          throw ValidationError("SymMatrix: non-finite entry at (" + std::to_string(i) + "," +
                                std::to_string(j) + ")");
        const double scale = std::max({1.0, std::abs(a), std::abs(b)});
        if (std::abs(a - b) > 1e-10 * scale)
          throw ValidationError("SymMatrix: not symmetric at (" + std::to_string(i) + "," +
                                std::to_string(j) + "): " + std::to_string(a) +
                                " vs " + std::to_string(b));
      }
    }
    return SymMatrix(dim, false, std::move(entries));
  }

  static SymMatrix diagonal(std::vector<double> diag) {
    if (diag.empty()) throw ValidationError("SymMatrix: dimension must be >= 1");
    for (double v : diag)
      if (!std::isfinite(v)) throw ValidationError("SymMatrix: non-finite diagonal entry");
    const std::size_t dim = diag.size();
    return SymMatrix(dim, true, std::move(diag));
  }

  static SymMatrix identity(std::size_t dim) {
    return diagonal(std::vector<double>(dim, 1.0));
  }

  std::size_t dim() const { return dim_; }
  bool is_diagonal() const { return diagonal_storage_; }

  double operator()(std::size_t i, std::size_t j) const {
    if (diagonal_storage_) return i == j ? a_[i] : 0.0;
    return a_[i * dim_ + j];
  }

  // Dense: row-major entries. Diagonal: the diagonal itself.
  const std::vector<double>& data() const { return a_; }

  std::vector<double> diagonal_entries() const {
    if (diagonal_storage_) return a_;
    std::vector<double> d(dim_);
    for (std::size_t i = 0; i < dim_; ++i) d[i] = a_[i * dim_ + i];
    return d;
  }

  // y = M x
  void apply(const std::vector<double>& x, std::vector<double>& y) const {
    check_vector(x);
    y.resize(dim_);
    if (diagonal_storage_) {
      for (std::size_t i = 0; i < dim_; ++i) y[i] = a_[i] * x[i];
      return;
    }
    for (std::size_t i = 0; i < dim_; ++i) {
      const double* row = a_.data() + i * dim_;
      double acc = 0.0;
      for (std::size_t j = 0; j < dim_; ++j) acc += row[j] * x[j];
      y[i] = acc;
    }
  }

  std::vector<double> apply(const std::vector<double>& x) const {
    std::vector<double> y;
    apply(x, y);
    return y;
  }

  // x' M x
  double quad_form(const std::vector<double>& x) const {
    check_vector(x);
    if (diagonal_storage_) {
      double acc = 0.0;
      for (std::size_t i = 0; i < dim_; ++i) acc += a_[i] * x[i] * x[i];
      return acc;
    }
    double acc = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
      const double* row = a_.data() + i * dim_;
      double ri = 0.0;
      for (std::size_t j = 0; j < dim_; ++j) ri += row[j] * x[j];
      acc += x[i] * ri;
    }
    return acc;
  }

  SymMatrix principal_block(std::size_t offset, std::size_t size) const {
    if (size == 0 || offset + size > dim_)
      throw ValidationError("SymMatrix::principal_block: range out of bounds");
    if (diagonal_storage_) {
      return SymMatrix(size, true,
                       std::vector<double>(a_.begin() + offset, a_.begin() + offset + size));
    }
    std::vector<double> sub(size * size);
    for (std::size_t i = 0; i < size; ++i)
      for (std::size_t j = 0; j < size; ++j)
        sub[i * size + j] = a_[(offset + i) * dim_ + offset + j];
    return SymMatrix(size, false, std::move(sub));
  }

  // diag(s) M diag(s)
  SymMatrix congruence_scale(const std::vector<double>& s) const {
    check_vector(s);
    if (diagonal_storage_) {
      std::vector<double> d(dim_);
      for (std::size_t i = 0; i < dim_; ++i) d[i] = s[i] * a_[i] * s[i];
      return SymMatrix(dim_, true, std::move(d));
    }
    std::vector<double> out(dim_ * dim_);
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        out[i * dim_ + j] = s[i] * a_[i * dim_ + j] * s[j];
    return SymMatrix(dim_, false, std::move(out));
  }

  // s*I - M, used for smallest-eigenvalue computations via spectral shifts.
  static SymMatrix shift_minus(double s, const SymMatrix& m) {
    if (m.diagonal_storage_) {
      std::vector<double> d(m.dim_);
      for (std::size_t i = 0; i < m.dim_; ++i) d[i] = s - m.a_[i];
      return SymMatrix(m.dim_, true, std::move(d));
    }
    std::vector<double> out(m.a_.size());
    for (std::size_t i = 0; i < m.dim_; ++i)
      for (std::size_t j = 0; j < m.dim_; ++j)
        out[i * m.dim_ + j] = (i == j ? s : 0.0) - m.a_[i * m.dim_ + j];
    return SymMatrix(m.dim_, false, std::move(out));
  }

  std::vector<double> to_dense_data() const {
    if (!diagonal_storage_) return a_;
    std::vector<double> out(dim_ * dim_, 0.0);
    for (std::size_t i = 0; i < dim_; ++i) out[i * dim_ + i] = a_[i];
    return out;
  }

 private:
  SymMatrix(std::size_t dim, bool diag, std::vector<double> a)
      : dim_(dim), diagonal_storage_(diag), a_(std::move(a)) {}

  void check_vector(const std::vector<double>& x) const {
    if (x.size() != dim_)
      throw ValidationError("SymMatrix: vector length " + std::to_string(x.size()) +
                            " does not match dimension " + std::to_string(dim_));
  }

  std::size_t dim_;
  bool diagonal_storage_;
  std::vector<double> a_;
};

inline double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double acc = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) acc += a[i] * b[i];
  return acc;
}

inline double norm_sq(const std::vector<double>& a) { return dot(a, a); }

inline double norm(const std::vector<double>& a) { return std::sqrt(norm_sq(a)); }

}  // namespace rpt
