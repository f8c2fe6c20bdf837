// Copyright 2026 The qdec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QDEC_QCORE_HPP
#define QDEC_QCORE_HPP

#include <string>
#include <string_view>
#include <vector>

#include "qdec/error.hpp"
#include "qdec/linalg.hpp"

namespace qdec {

/// Maximum total Hilbert-space dimension; 256 unless QDEC_DIM_CAP is set.
int dimension_cap();

struct Subsystem {
  std::string label;
  int dim = 1;
  bool operator==(const Subsystem&) const = default;
};

using Labels = std::vector<std::string>;

/// Ordered list of labelled tensor factors. The first system is the most
/// significant index of the row-major basis.
class SystemLayout {
 public:
  SystemLayout() = default;
  explicit SystemLayout(std::vector<Subsystem> systems);

  const std::vector<Subsystem>& systems() const { return systems_; }
  std::size_t size() const { return systems_.size(); }
  bool empty() const { return systems_.empty(); }
  int total_dim() const;

  bool contains(std::string_view label) const;
  std::size_t index_of(std::string_view label) const;
  int dim_of(std::string_view label) const;
  int dim_of(const Labels& labels) const;
  Labels labels() const;
  std::vector<int> dims() const;

  /// Sub-layout with the given labels, in the given order.
  SystemLayout select(const Labels& labels) const;
  /// Sub-layout without the given labels, original order kept.
  SystemLayout without(const Labels& labels) const;
  SystemLayout concat(const SystemLayout& other) const;

  bool operator==(const SystemLayout&) const = default;

 private:
  std::vector<Subsystem> systems_;
};

/// Hermitian operator on a labelled layout.
class HermitianOp {
 public:
  HermitianOp() = default;
  HermitianOp(SystemLayout layout, Matrix matrix);

  const SystemLayout& layout() const { return layout_; }
  const Matrix& matrix() const { return matrix_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }

 private:
  SystemLayout layout_;
  Matrix matrix_;
};

/// Density operator: PSD, unit trace unless flagged subnormalized.
class MultiState {
 public:
  MultiState() = default;
  MultiState(SystemLayout layout, Matrix matrix, bool subnormalized = false);

  /// Skips validation; for results that are states by construction.
  static MultiState trusted(SystemLayout layout, Matrix matrix, bool subnormalized = false);

  const SystemLayout& layout() const { return layout_; }
  const Matrix& matrix() const { return matrix_; }
  int dim() const { return static_cast<int>(matrix_.rows()); }
  bool subnormalized() const { return subnormalized_; }
  double trace() const { return matrix_.trace().real(); }
  HermitianOp as_hermitian() const { return HermitianOp(layout_, matrix_); }

 private:
  SystemLayout layout_;
  Matrix matrix_;
  bool subnormalized_ = false;
};

class PureState {
 public:
  PureState() = default;
  PureState(SystemLayout layout, Vector vector);

  const SystemLayout& layout() const { return layout_; }
  const Vector& vector() const { return vector_; }
  MultiState density() const;

 private:
  SystemLayout layout_;
  Vector vector_;
};

/// Completely positive map given by Kraus operators K_k : in -> out.
class QChannel {
 public:
  QChannel() = default;
  QChannel(SystemLayout in, SystemLayout out, std::vector<Matrix> kraus, bool require_tp = true);

  /// Tensor product of channels acting on disjoint labels.
  static QChannel tensor_product(const std::vector<QChannel>& factors);

  const SystemLayout& in_layout() const { return in_; }
  const SystemLayout& out_layout() const { return out_; }
  const std::vector<Matrix>& kraus() const { return kraus_; }
  bool trace_preserving() const;
  /// True when T(1/|in|) = 1/|out| within tol.
  bool unital(double tol = 1e-9) const;
  /// Declared tensor factors; a single-input channel is its own factor.
  bool is_tensor_product() const;
  std::vector<QChannel> factors() const;

  /// Applies the channel to an operator on the full input space.
  Matrix apply(const Matrix& x) const;

 private:
  SystemLayout in_;
  SystemLayout out_;
  std::vector<Matrix> kraus_;
  std::vector<QChannel> factors_;
};

// Layout plumbing on raw matrices.
Matrix permute_matrix(const SystemLayout& layout, const Matrix& m, const Labels& order);
Vector permute_vector(const SystemLayout& layout, const Vector& v, const Labels& order);
/// Traces out every system not in keep; kept systems stay in layout order.
Matrix partial_trace_matrix(const SystemLayout& layout, const Matrix& m, const Labels& keep);
/// Marginal on `order`, with systems arranged in that order.
Matrix marginal_matrix(const SystemLayout& layout, const Matrix& m, const Labels& order);
/// Operator acting as ops[i] on labels[i] and identity elsewhere.
Matrix embed_local(const SystemLayout& layout, const Labels& labels, const std::vector<Matrix>& ops);

MultiState tensor(const MultiState& a, const MultiState& b);
HermitianOp tensor(const HermitianOp& a, const HermitianOp& b);
PureState tensor(const PureState& a, const PureState& b);

MultiState partial_trace(const MultiState& rho, const Labels& keep);
HermitianOp partial_trace(const HermitianOp& op, const Labels& keep);
MultiState permute(const MultiState& rho, const Labels& order);
HermitianOp permute(const HermitianOp& op, const Labels& order);
PureState permute(const PureState& psi, const Labels& order);

/// Swap operator F on C^d (x) C^d.
Matrix swap_operator(int d);

/// Applies ch to the systems `on` (matched in order to the channel inputs).
/// Output systems take the place of the first consumed system.
MultiState apply_channel(const QChannel& ch, const MultiState& rho, const Labels& on);
HermitianOp apply_channel(const QChannel& ch, const HermitianOp& op, const Labels& on);

/// Choi state (id (x) T)(Phi) with Phi normalized. Layout is in (x) out;
/// output labels that clash with input labels get a trailing apostrophe.
MultiState choi(const QChannel& ch);
/// Labels the Choi state gives the channel outputs.
Labels choi_output_labels(const QChannel& ch);

double trace_distance(const Matrix& a, const Matrix& b);
double trace_distance(const MultiState& a, const MultiState& b);
double fidelity(const Matrix& a, const Matrix& b);
double fidelity(const MultiState& a, const MultiState& b);
double purified_distance(const Matrix& a, const Matrix& b);
double purified_distance(const MultiState& a, const MultiState& b);

// Builders.
PureState maximally_entangled(int d, const std::string& a = "A", const std::string& b = "B");
PureState ghz(const Labels& parties, int d = 2);
PureState w_state(const Labels& parties);
PureState basis_state(const SystemLayout& layout, int index);
MultiState maximally_mixed(const SystemLayout& layout);
/// Purification with an auxiliary system of dimension rank(rho).
PureState purify(const MultiState& rho, const std::string& aux_label = "R");

QChannel identity_channel(const SystemLayout& in, const SystemLayout& out);
QChannel identity_channel(const SystemLayout& in);
QChannel unitary_channel(const SystemLayout& in, const Matrix& u);
/// Measures projectors {P_x} and writes x to a classical register.
QChannel measurement_channel(const std::vector<Matrix>& projectors, const Subsystem& in,
                             const std::string& out_label);
/// Computational-basis blocks of the given ranks.
QChannel measurement_channel(const Subsystem& in, const std::string& out_label,
                             const std::vector<int>& ranks);
/// rho -> sum_x P_x rho P_x on the same system.
QChannel pinching_channel(const std::vector<Matrix>& projectors, const Subsystem& in);
QChannel depolarizing_channel(const SystemLayout& in);
QChannel constant_channel(const SystemLayout& in, const MultiState& sigma);
QChannel partial_trace_channel(const SystemLayout& in, const Labels& keep);
/// T_I(rho) = T(rho (x) 1/|A_{I^c}|) on the kept inputs.
QChannel restricted_channel(const QChannel& ch, const Labels& kept_inputs);

/// Projectors onto contiguous computational-basis blocks of the given ranks.
std::vector<Matrix> block_projectors(int dim, const std::vector<int>& ranks);

}  // namespace qdec

#endif  // QDEC_QCORE_HPP
