#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "rpt/block_partition.hpp"
#include "rpt/errors.hpp"
#include "rpt/problem.hpp"
#include "rpt/rng.hpp"
#include "rpt/smoothness.hpp"
#include "rpt/spectral.hpp"
#include "rpt/sym_matrix.hpp"

namespace rpt {

/// One realization C_i of the sketch: blocks whose importance label is at
/// most `index` are active, each scaled by the reciprocal of its label's
/// activation probability. The active-slot list is kept explicit so solvers
/// can evaluate partial gradients without touching inactive blocks.
struct SketchOutcome {
  std::size_t index = 0;                  // 0-based outcome number
  std::vector<std::size_t> active_slots;  // ascending block indices
  std::vector<double> slot_scales;        // 1/p for each active slot

  // Length-d diagonal of the sketch matrix: the per-slot scale repeated over
  // the slot's coordinates, zero on inactive blocks.
  std::vector<double> dense_scaling(const BlockPartition& partition) const {
    std::vector<double> s(partition.total_dim(), 0.0);
    for (std::size_t k = 0; k < active_slots.size(); ++k) {
      const std::size_t b = active_slots[k];
      for (std::size_t j = 0; j < partition.size(b); ++j)
        s[partition.offset(b) + j] = slot_scales[k];
    }
    return s;
  }
};

/// Distribution of the progressive-training sketch.
///
/// Each block slot k carries an importance label sigma(k) in {0, ..., B-1}
/// (label 0 is always active). Labels have monotone activation probabilities
/// 1 = p_0 >= p_1 >= ... >= p_{B-1} > 0, and the sketch equals outcome i
/// (all labels <= i active) with probability q_i = p_i - p_{i+1}, p_B = 0.
/// Ties in p produce zero-probability outcomes, which are legal and simply
/// never drawn.
class PTSketchDistribution {
 public:
  PTSketchDistribution(BlockPartition partition, std::vector<std::size_t> slot_labels,
                       std::vector<double> probabilities)
      : partition_(std::move(partition)),
        labels_(std::move(slot_labels)),
        p_(std::move(probabilities)) {
    const std::size_t b = partition_.num_blocks();
    if (labels_.size() != b || p_.size() != b)
      throw ValidationError("PTSketchDistribution: labels/probabilities must have one entry per block");
    std::vector<bool> seen(b, false);
    for (std::size_t lab : labels_) {
      if (lab >= b || seen[lab])
        throw ValidationError("PTSketchDistribution: slot labels must form a permutation");
      seen[lab] = true;
    }
    if (p_[0] != 1.0) throw ValidationError("PTSketchDistribution: p_1 must equal 1 exactly");
    for (std::size_t i = 0; i + 1 < b; ++i)
      if (!(p_[i + 1] <= p_[i]))
        throw ValidationError("PTSketchDistribution: probabilities must be non-increasing");
    if (!(p_.back() > 0.0))
      throw ValidationError("PTSketchDistribution: p_B must be positive");

    slot_of_label_.resize(b);
    for (std::size_t k = 0; k < b; ++k) slot_of_label_[labels_[k]] = k;

    q_.resize(b);
    cumulative_q_.resize(b);
    double cum = 0.0;
    for (std::size_t i = 0; i < b; ++i) {
      const double next = i + 1 < b ? p_[i + 1] : 0.0;
      q_[i] = p_[i] - next;
      cum += q_[i];
      cumulative_q_[i] = cum;
    }
    cumulative_q_.back() = 1.0;  // telescoping sum; pin the tail bucket

    outcomes_.resize(b);
    for (std::size_t i = 0; i < b; ++i) {
      SketchOutcome& o = outcomes_[i];
      o.index = i;
      for (std::size_t k = 0; k < b; ++k) {
        if (labels_[k] <= i) {
          o.active_slots.push_back(k);
          o.slot_scales.push_back(1.0 / p_[labels_[k]]);
        }
      }
    }
  }

  // p identically 1: the sketch is the identity and the method degenerates
  // to full-gradient descent.
  static PTSketchDistribution full_support(const BlockPartition& partition) {
    std::vector<std::size_t> labels(partition.num_blocks());
    for (std::size_t k = 0; k < labels.size(); ++k) labels[k] = k;
    return PTSketchDistribution(partition, std::move(labels),
                                std::vector<double>(partition.num_blocks(), 1.0));
  }

  const BlockPartition& partition() const { return partition_; }
  std::size_t num_blocks() const { return partition_.num_blocks(); }
  const std::vector<std::size_t>& slot_labels() const { return labels_; }
  std::size_t slot_of_label(std::size_t label) const { return slot_of_label_.at(label); }
  const std::vector<double>& probabilities() const { return p_; }
  const std::vector<double>& outcome_probabilities() const { return q_; }

  const SketchOutcome& outcome(std::size_t index) const { return outcomes_.at(index); }

  // Inverse-CDF draw; one uniform per call. Zero-width buckets are skipped.
  const SketchOutcome& sample(Rng& rng) const {
    const double u = rng.uniform01();
    const auto it = std::upper_bound(cumulative_q_.begin(), cumulative_q_.end(), u);
    const std::size_t i = static_cast<std::size_t>(it - cumulative_q_.begin());
    return outcomes_[i < outcomes_.size() ? i : outcomes_.size() - 1];
  }

  // Diagonal matrix P: coordinate j carries the activation probability of
  // its block's label.
  SymMatrix probability_matrix() const {
    std::vector<double> diag(partition_.total_dim());
    for (std::size_t k = 0; k < num_blocks(); ++k) {
      const double pk = p_[labels_[k]];
      for (std::size_t j = 0; j < partition_.size(k); ++j)
        diag[partition_.offset(k) + j] = pk;
    }
    return SymMatrix::diagonal(std::move(diag));
  }

  // E[C] by exact enumeration over the B outcomes. Identity for any valid
  // distribution; returned as computed so checks can measure the error.
  SymMatrix expected_sketch() const {
    std::vector<double> diag(partition_.total_dim(), 0.0);
    for (std::size_t i = 0; i < num_blocks(); ++i) {
      const auto scaling = outcomes_[i].dense_scaling(partition_);
      for (std::size_t j = 0; j < diag.size(); ++j) diag[j] += q_[i] * scaling[j];
    }
    return SymMatrix::diagonal(std::move(diag));
  }

  // E[C L C] by exact enumeration; symmetric PSD whenever l is.
  SymMatrix expected_clc(const SymMatrix& l) const {
    if (l.dim() != partition_.total_dim())
      throw ValidationError("expected_clc: matrix dimension does not match partition");
    const std::size_t d = l.dim();
    if (l.is_diagonal()) {
      std::vector<double> acc(d, 0.0);
      for (std::size_t i = 0; i < num_blocks(); ++i) {
        const auto s = outcomes_[i].dense_scaling(partition_);
        for (std::size_t j = 0; j < d; ++j) acc[j] += q_[i] * s[j] * l.data()[j] * s[j];
      }
      return SymMatrix::diagonal(std::move(acc));
    }
    std::vector<double> acc(d * d, 0.0);
    for (std::size_t i = 0; i < num_blocks(); ++i) {
      const auto s = outcomes_[i].dense_scaling(partition_);
      for (std::size_t r = 0; r < d; ++r)
        for (std::size_t c = 0; c < d; ++c) acc[r * d + c] += q_[i] * s[r] * l(r, c) * s[c];
    }
    return SymMatrix::dense(d, std::move(acc));
  }

 private:
  BlockPartition partition_;
  std::vector<std::size_t> labels_;
  std::vector<double> p_;
  std::vector<std::size_t> slot_of_label_;
  std::vector<double> q_;
  std::vector<double> cumulative_q_;
  std::vector<SketchOutcome> outcomes_;
};

/// L_P = lambda_max(P^{-1/2} L P^{-1/2}) for a positive diagonal P.
inline double compute_L_P(const SymMatrix& l, const SymMatrix& p) {
  if (!p.is_diagonal()) throw ValidationError("compute_L_P: P must be diagonal");
  if (p.dim() != l.dim()) throw ValidationError("compute_L_P: dimension mismatch");
  std::vector<double> s(p.dim());
  for (std::size_t j = 0; j < s.size(); ++j) {
    if (!(p.data()[j] > 0.0))
      throw ValidationError("compute_L_P: P entries must be positive");
    s[j] = 1.0 / std::sqrt(p.data()[j]);
  }
  return lambda_max(l.congruence_scale(s));
}

inline double compute_L_P(const SmoothnessModel& model, const PTSketchDistribution& dist) {
  return compute_L_P(model.matrix(), dist.probability_matrix());
}

/// Sketched gradient C_i * grad f(x): the restricted gradient over the active
/// blocks, scaled per block; inactive blocks are never evaluated.
inline std::vector<double> apply_sketch(const SketchOutcome& outcome, const Problem& problem,
                                        const std::vector<double>& x) {
  std::vector<double> packed;
  problem.packed_block_gradient(x, outcome.active_slots, packed);
  std::vector<double> g(problem.dim(), 0.0);
  std::size_t pos = 0;
  for (std::size_t k = 0; k < outcome.active_slots.size(); ++k) {
    const std::size_t b = outcome.active_slots[k];
    const double scale = outcome.slot_scales[k];
    const std::size_t off = problem.partition.offset(b);
    for (std::size_t j = 0; j < problem.partition.size(b); ++j, ++pos)
      g[off + j] = scale * packed[pos];
  }
  return g;
}

}  // namespace rpt
