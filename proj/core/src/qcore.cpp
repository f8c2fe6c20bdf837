// Copyright 2026 The qdec Authors
// SPDX-License-Identifier: Apache-2.0

#include "qdec/qcore.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <set>

namespace qdec {
namespace {

constexpr double kStateTol = 1e-10;

std::string join(const Labels& labels) {
  std::string out;
  for (const auto& l : labels) {
    if (!out.empty()) out += ",";
    out += l;
  }
  return out;
}

// new_index[old_flat] for reordering `layout` into `order`.
std::vector<int> permutation_map(const SystemLayout& layout, const Labels& order) {
  if (order.size() != layout.size()) {
    throw InputError("permutation must list every system: got [" + join(order) + "]");
  }
  std::vector<std::size_t> perm(order.size());
  std::vector<bool> seen(order.size(), false);
  for (std::size_t p = 0; p < order.size(); ++p) {
    perm[p] = layout.index_of(order[p]);
    if (seen[perm[p]]) throw InputError("duplicate label in permutation: " + order[p]);
    seen[perm[p]] = true;
  }
  const std::vector<int> dims = layout.dims();
  const std::size_t n = dims.size();
  // Stride of each old system inside the new ordering.
  std::vector<int> new_stride(n, 1);
  int s = 1;
  for (std::size_t p = n; p-- > 0;) {
    new_stride[perm[p]] = s;
    s *= dims[perm[p]];
  }
  const int total = layout.total_dim();
  std::vector<int> map(total);
  std::vector<int> digit(n, 0);
  for (int i = 0; i < total; ++i) {
    int idx = 0;
    for (std::size_t k = 0; k < n; ++k) idx += digit[k] * new_stride[k];
    map[i] = idx;
    for (std::size_t k = n; k-- > 0;) {
      if (++digit[k] < dims[k]) break;
      digit[k] = 0;
    }
  }
  return map;
}

bool is_identity_order(const SystemLayout& layout, const Labels& order) {
  return layout.labels() == order;
}

Labels ordered_subset(const SystemLayout& layout, const Labels& subset) {
  for (const auto& l : subset) layout.index_of(l);
  Labels out;
  for (const auto& s : layout.systems()) {
    if (std::find(subset.begin(), subset.end(), s.label) != subset.end()) out.push_back(s.label);
  }
  return out;
}

Labels concat_labels(Labels a, const Labels& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

std::string fmt_residual(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3e", x);
  return buf;
}

void check_state(const Matrix& m, bool subnormalized) {
  if (m.rows() != m.cols()) throw InputError("state matrix is not square");
  double scale = std::max(1.0, m.cwiseAbs().maxCoeff());
  if (!m.allFinite()) throw InputError("state matrix has non-finite entries");
  if (double r = hermitian_residual(m); r > kStateTol * scale) {
    throw InputError("state matrix is not Hermitian (residual " + fmt_residual(r) + ")");
  }
  double tr = m.trace().real();
  if (subnormalized) {
    if (tr > 1.0 + kStateTol) throw InputError("subnormalized state has trace above 1");
  } else if (std::abs(tr - 1.0) > kStateTol) {
    throw InputError("state trace is " + fmt_residual(tr) + ", expected 1");
  }
  if (double e = min_eigenvalue(m); e < kPsdFloor) {
    throw InputError("state matrix is not positive semidefinite (min eigenvalue " + fmt_residual(e) + ")");
  }
}

Matrix choi_phi(int d) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return v * v.adjoint();
}

}  // namespace

int dimension_cap() {
  static const int cap = [] {
    if (const char* env = std::getenv("QDEC_DIM_CAP")) {
      char* end = nullptr;
      long v = std::strtol(env, &end, 10);
      if (end != env && v > 0) return static_cast<int>(v);
    }
    return 256;
  }();
  return cap;
}

// SystemLayout

SystemLayout::SystemLayout(std::vector<Subsystem> systems) : systems_(std::move(systems)) {
  std::set<std::string> labels;
  long total = 1;
  for (const auto& s : systems_) {
    if (s.label.empty()) throw InputError("empty system label");
    if (s.dim < 1) throw InputError("system " + s.label + " has dimension < 1");
    if (!labels.insert(s.label).second) throw InputError("duplicate system label: " + s.label);
    total *= s.dim;
    if (total > dimension_cap()) {
      throw InputError("total dimension exceeds cap " + std::to_string(dimension_cap()));
    }
  }
}

int SystemLayout::total_dim() const {
  int d = 1;
  for (const auto& s : systems_) d *= s.dim;
  return d;
}

bool SystemLayout::contains(std::string_view label) const {
  return std::any_of(systems_.begin(), systems_.end(), [&](const Subsystem& s) { return s.label == label; });
}

std::size_t SystemLayout::index_of(std::string_view label) const {
  for (std::size_t i = 0; i < systems_.size(); ++i) {
    if (systems_[i].label == label) return i;
  }
  throw InputError("unknown system label: " + std::string(label));
}

int SystemLayout::dim_of(std::string_view label) const { return systems_[index_of(label)].dim; }

int SystemLayout::dim_of(const Labels& labels) const {
  int d = 1;
  for (const auto& l : labels) d *= dim_of(l);
  return d;
}

Labels SystemLayout::labels() const {
  Labels out;
  for (const auto& s : systems_) out.push_back(s.label);
  return out;
}

std::vector<int> SystemLayout::dims() const {
  std::vector<int> out;
  for (const auto& s : systems_) out.push_back(s.dim);
  return out;
}

SystemLayout SystemLayout::select(const Labels& labels) const {
  std::vector<Subsystem> out;
  for (const auto& l : labels) out.push_back(systems_[index_of(l)]);
  return SystemLayout(std::move(out));
}

SystemLayout SystemLayout::without(const Labels& labels) const {
  for (const auto& l : labels) index_of(l);
  std::vector<Subsystem> out;
  for (const auto& s : systems_) {
    if (std::find(labels.begin(), labels.end(), s.label) == labels.end()) out.push_back(s);
  }
  return SystemLayout(std::move(out));
}

SystemLayout SystemLayout::concat(const SystemLayout& other) const {
  std::vector<Subsystem> out = systems_;
  out.insert(out.end(), other.systems_.begin(), other.systems_.end());
  return SystemLayout(std::move(out));
}

// Operators

HermitianOp::HermitianOp(SystemLayout layout, Matrix matrix)
    : layout_(std::move(layout)), matrix_(std::move(matrix)) {
  if (matrix_.rows() != layout_.total_dim() || matrix_.cols() != layout_.total_dim()) {
    throw InputError("operator dimension does not match layout");
  }
  double scale = std::max(1.0, matrix_.size() ? matrix_.cwiseAbs().maxCoeff() : 0.0);
  if (hermitian_residual(matrix_) > kStateTol * scale) throw InputError("operator is not Hermitian");
  matrix_ = hermitian_part(matrix_);
}

MultiState::MultiState(SystemLayout layout, Matrix matrix, bool subnormalized)
    : layout_(std::move(layout)), matrix_(std::move(matrix)), subnormalized_(subnormalized) {
  if (matrix_.rows() != layout_.total_dim()) throw InputError("state dimension does not match layout");
  check_state(matrix_, subnormalized_);
  matrix_ = hermitian_part(matrix_);
}

MultiState MultiState::trusted(SystemLayout layout, Matrix matrix, bool subnormalized) {
  MultiState s;
  s.layout_ = std::move(layout);
  s.matrix_ = hermitian_part(matrix);
  s.subnormalized_ = subnormalized;
  return s;
}

PureState::PureState(SystemLayout layout, Vector vector) : layout_(std::move(layout)), vector_(std::move(vector)) {
  if (vector_.size() != layout_.total_dim()) throw InputError("vector dimension does not match layout");
  double n = vector_.norm();
  if (std::abs(n - 1.0) > 1e-8) throw InputError("pure state is not normalized (norm " + fmt_residual(n) + ")");
}

MultiState PureState::density() const {
  return MultiState::trusted(layout_, vector_ * vector_.adjoint());
}

// Channels

QChannel::QChannel(SystemLayout in, SystemLayout out, std::vector<Matrix> kraus, bool require_tp)
    : in_(std::move(in)), out_(std::move(out)), kraus_(std::move(kraus)) {
  if (kraus_.empty()) throw InputError("channel needs at least one Kraus operator");
  for (const auto& k : kraus_) {
    if (k.rows() != out_.total_dim() || k.cols() != in_.total_dim()) {
      throw InputError("Kraus operator shape does not match channel layouts");
    }
  }
  if (require_tp && !trace_preserving()) {
    Matrix acc = Matrix::Zero(in_.total_dim(), in_.total_dim());
    for (const auto& k : kraus_) acc += k.adjoint() * k;
    double r = (acc - identity(in_.total_dim())).cwiseAbs().maxCoeff();
    throw InputError("channel is not trace preserving (residual " + fmt_residual(r) + ")");
  }
}

QChannel QChannel::tensor_product(const std::vector<QChannel>& factors) {
  if (factors.empty()) throw InputError("tensor product of no channels");
  SystemLayout in, out;
  std::vector<Matrix> kraus{Matrix::Identity(1, 1)};
  std::vector<QChannel> flat;
  for (const auto& f : factors) {
    in = in.concat(f.in_layout());
    out = out.concat(f.out_layout());
    std::vector<Matrix> next;
    for (const auto& a : kraus) {
      for (const auto& b : f.kraus()) next.push_back(kron(a, b));
    }
    kraus = std::move(next);
    for (const auto& g : f.factors()) flat.push_back(g);
  }
  QChannel ch(in, out, std::move(kraus), false);
  if (flat.size() > 1) ch.factors_ = std::move(flat);
  return ch;
}

bool QChannel::trace_preserving() const {
  Matrix acc = Matrix::Zero(in_.total_dim(), in_.total_dim());
  for (const auto& k : kraus_) acc += k.adjoint() * k;
  return (acc - identity(in_.total_dim())).cwiseAbs().maxCoeff() < 1e-9;
}

bool QChannel::unital(double tol) const {
  const int din = in_.total_dim(), dout = out_.total_dim();
  Matrix y = apply(identity(din) / din);
  return (y - identity(dout) / dout).cwiseAbs().maxCoeff() <= tol;
}

bool QChannel::is_tensor_product() const { return !factors_.empty() || in_.size() == 1; }

std::vector<QChannel> QChannel::factors() const {
  if (!factors_.empty()) return factors_;
  return {*this};
}

Matrix QChannel::apply(const Matrix& x) const {
  Matrix y = Matrix::Zero(out_.total_dim(), out_.total_dim());
  for (const auto& k : kraus_) y.noalias() += k * x * k.adjoint();
  return y;
}

// Layout plumbing

Matrix permute_matrix(const SystemLayout& layout, const Matrix& m, const Labels& order) {
  if (is_identity_order(layout, order)) return m;
  std::vector<int> map = permutation_map(layout, order);
  const int n = static_cast<int>(m.rows());
  Matrix out(n, n);
  for (int j = 0; j < n; ++j) {
    for (int i = 0; i < n; ++i) out(map[i], map[j]) = m(i, j);
  }
  return out;
}

Vector permute_vector(const SystemLayout& layout, const Vector& v, const Labels& order) {
  if (is_identity_order(layout, order)) return v;
  std::vector<int> map = permutation_map(layout, order);
  Vector out(v.size());
  for (Eigen::Index i = 0; i < v.size(); ++i) out(map[i]) = v(i);
  return out;
}

Matrix partial_trace_matrix(const SystemLayout& layout, const Matrix& m, const Labels& keep) {
  Labels kept = ordered_subset(layout, keep);
  Labels traced = layout.without(kept).labels();
  Matrix p = permute_matrix(layout, m, concat_labels(kept, traced));
  const int dk = layout.dim_of(kept), dr = layout.dim_of(traced);
  Matrix out = Matrix::Zero(dk, dk);
  for (int j = 0; j < dk; ++j) {
    for (int i = 0; i < dk; ++i) {
      Complex acc = 0.0;
      for (int r = 0; r < dr; ++r) acc += p(i * dr + r, j * dr + r);
      out(i, j) = acc;
    }
  }
  return out;
}

Matrix marginal_matrix(const SystemLayout& layout, const Matrix& m, const Labels& order) {
  Labels kept = ordered_subset(layout, order);
  if (kept.size() != order.size()) throw InputError("marginal: duplicate labels");
  return permute_matrix(layout.select(kept), partial_trace_matrix(layout, m, kept), order);
}

Matrix embed_local(const SystemLayout& layout, const Labels& labels, const std::vector<Matrix>& ops) {
  if (labels.size() != ops.size()) throw InputError("embed_local: label/operator count mismatch");
  Matrix out = Matrix::Identity(1, 1);
  for (const auto& s : layout.systems()) {
    auto it = std::find(labels.begin(), labels.end(), s.label);
    if (it == labels.end()) {
      out = kron(out, identity(s.dim));
    } else {
      const Matrix& op = ops[it - labels.begin()];
      if (op.rows() != s.dim || op.cols() != s.dim) throw InputError("local operator dimension mismatch on " + s.label);
      out = kron(out, op);
    }
  }
  for (const auto& l : labels) layout.index_of(l);
  return out;
}

MultiState tensor(const MultiState& a, const MultiState& b) {
  return MultiState::trusted(a.layout().concat(b.layout()), kron(a.matrix(), b.matrix()),
                             a.subnormalized() || b.subnormalized());
}

HermitianOp tensor(const HermitianOp& a, const HermitianOp& b) {
  return HermitianOp(a.layout().concat(b.layout()), kron(a.matrix(), b.matrix()));
}

PureState tensor(const PureState& a, const PureState& b) {
  Vector v(a.vector().size() * b.vector().size());
  for (Eigen::Index i = 0; i < a.vector().size(); ++i) {
    v.segment(i * b.vector().size(), b.vector().size()) = a.vector()(i) * b.vector();
  }
  return PureState(a.layout().concat(b.layout()), v);
}

MultiState partial_trace(const MultiState& rho, const Labels& keep) {
  Labels kept = ordered_subset(rho.layout(), keep);
  return MultiState::trusted(rho.layout().select(kept), partial_trace_matrix(rho.layout(), rho.matrix(), kept),
                             rho.subnormalized());
}

HermitianOp partial_trace(const HermitianOp& op, const Labels& keep) {
  Labels kept = ordered_subset(op.layout(), keep);
  return HermitianOp(op.layout().select(kept), partial_trace_matrix(op.layout(), op.matrix(), kept));
}

MultiState permute(const MultiState& rho, const Labels& order) {
  return MultiState::trusted(rho.layout().select(order), permute_matrix(rho.layout(), rho.matrix(), order),
                             rho.subnormalized());
}

HermitianOp permute(const HermitianOp& op, const Labels& order) {
  return HermitianOp(op.layout().select(order), permute_matrix(op.layout(), op.matrix(), order));
}

PureState permute(const PureState& psi, const Labels& order) {
  return PureState(psi.layout().select(order), permute_vector(psi.layout(), psi.vector(), order));
}

Matrix swap_operator(int d) {
  Matrix f = Matrix::Zero(d * d, d * d);
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) f(j * d + i, i * d + j) = 1.0;
  }
  return f;
}

namespace {

struct Applied {
  SystemLayout layout;
  Matrix matrix;
};

Applied apply_channel_raw(const QChannel& ch, const SystemLayout& layout, const Matrix& m, const Labels& on) {
  if (on.size() != ch.in_layout().size()) throw InputError("channel input count does not match target labels");
  for (std::size_t i = 0; i < on.size(); ++i) {
    if (layout.dim_of(on[i]) != ch.in_layout().systems()[i].dim) {
      throw InputError("channel input dimension mismatch on " + on[i]);
    }
  }
  SystemLayout rest = layout.without(on);
  for (const auto& o : ch.out_layout().systems()) {
    if (rest.contains(o.label)) throw InputError("channel output label clashes with untouched system " + o.label);
  }
  Matrix x = permute_matrix(layout, m, concat_labels(on, rest.labels()));
  const int r = rest.total_dim();
  const int dout = ch.out_layout().total_dim();
  Matrix y = Matrix::Zero(dout * r, dout * r);
  const Matrix id = identity(r);
  for (const auto& k : ch.kraus()) {
    Matrix kk = kron(k, id);
    y.noalias() += kk * x * kk.adjoint();
  }
  SystemLayout produced = ch.out_layout().concat(rest);
  // Put outputs where the first consumed system was.
  Labels target;
  bool inserted = false;
  for (const auto& s : layout.systems()) {
    if (std::find(on.begin(), on.end(), s.label) != on.end()) {
      if (!inserted) {
        for (const auto& o : ch.out_layout().systems()) target.push_back(o.label);
        inserted = true;
      }
    } else {
      target.push_back(s.label);
    }
  }
  return {produced.select(target), permute_matrix(produced, y, target)};
}

}  // namespace

MultiState apply_channel(const QChannel& ch, const MultiState& rho, const Labels& on) {
  Applied a = apply_channel_raw(ch, rho.layout(), rho.matrix(), on);
  return MultiState::trusted(a.layout, a.matrix, rho.subnormalized());
}

HermitianOp apply_channel(const QChannel& ch, const HermitianOp& op, const Labels& on) {
  Applied a = apply_channel_raw(ch, op.layout(), op.matrix(), on);
  return HermitianOp(a.layout, hermitian_part(a.matrix));
}

Labels choi_output_labels(const QChannel& ch) {
  Labels out;
  for (const auto& s : ch.out_layout().systems()) {
    std::string l = s.label;
    while (ch.in_layout().contains(l)) l += "'";
    out.push_back(l);
  }
  return out;
}

MultiState choi(const QChannel& ch) {
  const int din = ch.in_layout().total_dim();
  Matrix phi = choi_phi(din);
  Matrix tau = Matrix::Zero(din * ch.out_layout().total_dim(), din * ch.out_layout().total_dim());
  const Matrix id = identity(din);
  for (const auto& k : ch.kraus()) {
    Matrix kk = kron(id, k);
    tau.noalias() += kk * phi * kk.adjoint();
  }
  std::vector<Subsystem> sys = ch.in_layout().systems();
  Labels outs = choi_output_labels(ch);
  for (std::size_t i = 0; i < outs.size(); ++i) sys.push_back({outs[i], ch.out_layout().systems()[i].dim});
  return MultiState::trusted(SystemLayout(sys), tau, !ch.trace_preserving());
}

// Metrics

double trace_distance(const Matrix& a, const Matrix& b) { return 0.5 * trace_norm(a - b); }

double trace_distance(const MultiState& a, const MultiState& b) {
  if (a.layout() != b.layout()) throw InputError("trace_distance: layouts differ");
  return trace_distance(a.matrix(), b.matrix());
}

double fidelity(const Matrix& a, const Matrix& b) {
  // Singular values of sqrt(a) sqrt(b) give ||sqrt(a) sqrt(b)||_1.
  const Matrix m = psd_sqrt(a) * psd_sqrt(b);
  const double acc = Eigen::JacobiSVD<Matrix>(m).singularValues().sum();
  return std::min(1.0, acc * acc);
}

double fidelity(const MultiState& a, const MultiState& b) {
  if (a.layout() != b.layout()) throw InputError("fidelity: layouts differ");
  return fidelity(a.matrix(), b.matrix());
}

double purified_distance(const Matrix& a, const Matrix& b) {
  return std::sqrt(std::max(0.0, 1.0 - fidelity(a, b)));
}

double purified_distance(const MultiState& a, const MultiState& b) {
  if (a.layout() != b.layout()) throw InputError("purified_distance: layouts differ");
  return purified_distance(a.matrix(), b.matrix());
}

// Builders

PureState maximally_entangled(int d, const std::string& a, const std::string& b) {
  SystemLayout layout({{a, d}, {b, d}});
  Vector v = Vector::Zero(static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return PureState(layout, v);
}

PureState ghz(const Labels& parties, int d) {
  std::vector<Subsystem> sys;
  for (const auto& p : parties) sys.push_back({p, d});
  SystemLayout layout(sys);
  Vector v = Vector::Zero(layout.total_dim());
  int stride = 0;
  for (std::size_t k = 0; k < parties.size(); ++k) stride = stride * d + 1;
  for (int i = 0; i < d; ++i) v(i * stride) = 1.0 / std::sqrt(static_cast<double>(d));
  return PureState(layout, v);
}

PureState w_state(const Labels& parties) {
  std::vector<Subsystem> sys;
  for (const auto& p : parties) sys.push_back({p, 2});
  SystemLayout layout(sys);
  Vector v = Vector::Zero(layout.total_dim());
  const int n = static_cast<int>(parties.size());
  for (int k = 0; k < n; ++k) v(1 << (n - 1 - k)) = 1.0 / std::sqrt(static_cast<double>(n));
  return PureState(layout, v);
}

PureState basis_state(const SystemLayout& layout, int index) {
  if (index < 0 || index >= layout.total_dim()) throw InputError("basis index out of range");
  Vector v = Vector::Zero(layout.total_dim());
  v(index) = 1.0;
  return PureState(layout, v);
}

MultiState maximally_mixed(const SystemLayout& layout) {
  const int d = layout.total_dim();
  return MultiState::trusted(layout, identity(d) / d);
}

PureState purify(const MultiState& rho, const std::string& aux_label) {
  EigenSystem es = hermitian_eigen(rho.matrix());
  std::vector<int> keep;
  for (Eigen::Index i = es.values.size(); i-- > 0;) {
    if (es.values(i) > kSupportCutoff) keep.push_back(static_cast<int>(i));
  }
  if (keep.empty()) throw InputError("cannot purify the zero operator");
  const int r = static_cast<int>(keep.size());
  SystemLayout layout = rho.layout().concat(SystemLayout({{aux_label, r}}));
  const int n = rho.dim();
  double norm = 0.0;
  for (int k : keep) norm += es.values(k);
  Vector v = Vector::Zero(static_cast<Eigen::Index>(n) * r);
  for (int k = 0; k < r; ++k) {
    double w = std::sqrt(es.values(keep[k]) / norm);
    for (int i = 0; i < n; ++i) v(i * r + k) = w * es.vectors(i, keep[k]);
  }
  return PureState(layout, v);
}

QChannel identity_channel(const SystemLayout& in, const SystemLayout& out) {
  if (in.total_dim() != out.total_dim()) throw InputError("identity channel needs equal dimensions");
  return QChannel(in, out, {identity(in.total_dim())});
}

QChannel identity_channel(const SystemLayout& in) { return identity_channel(in, in); }

QChannel unitary_channel(const SystemLayout& in, const Matrix& u) {
  if (u.rows() != in.total_dim() || u.cols() != in.total_dim()) throw InputError("unitary dimension mismatch");
  return QChannel(in, in, {u});
}

std::vector<Matrix> block_projectors(int dim, const std::vector<int>& ranks) {
  int total = 0;
  for (int r : ranks) {
    if (r < 1) throw InputError("projector rank must be >= 1");
    total += r;
  }
  if (total != dim) throw InputError("projector ranks must sum to the dimension");
  std::vector<Matrix> out;
  int offset = 0;
  for (int r : ranks) {
    Matrix p = Matrix::Zero(dim, dim);
    for (int i = 0; i < r; ++i) p(offset + i, offset + i) = 1.0;
    out.push_back(p);
    offset += r;
  }
  return out;
}

namespace {

void check_projective_measurement(const std::vector<Matrix>& projectors, int dim) {
  if (projectors.empty()) throw InputError("measurement needs at least one projector");
  Matrix acc = Matrix::Zero(dim, dim);
  for (const auto& p : projectors) {
    if (p.rows() != dim || p.cols() != dim) throw InputError("projector dimension mismatch");
    if ((p * p - p).cwiseAbs().maxCoeff() > 1e-9 || hermitian_residual(p) > 1e-9) {
      throw InputError("measurement operator is not an orthogonal projector");
    }
    acc += p;
  }
  if ((acc - identity(dim)).cwiseAbs().maxCoeff() > 1e-9) throw InputError("projectors do not sum to identity");
}

}  // namespace

QChannel measurement_channel(const std::vector<Matrix>& projectors, const Subsystem& in,
                             const std::string& out_label) {
  check_projective_measurement(projectors, in.dim);
  const int t = static_cast<int>(projectors.size());
  std::vector<Matrix> kraus;
  for (int x = 0; x < t; ++x) {
    EigenSystem es = hermitian_eigen(projectors[x]);
    for (Eigen::Index i = 0; i < es.values.size(); ++i) {
      if (es.values(i) < 0.5) continue;
      Matrix k = Matrix::Zero(t, in.dim);
      k.row(x) = es.vectors.col(i).adjoint();
      kraus.push_back(k);
    }
  }
  return QChannel(SystemLayout({in}), SystemLayout({{out_label, t}}), std::move(kraus));
}

QChannel measurement_channel(const Subsystem& in, const std::string& out_label, const std::vector<int>& ranks) {
  return measurement_channel(block_projectors(in.dim, ranks), in, out_label);
}

QChannel pinching_channel(const std::vector<Matrix>& projectors, const Subsystem& in) {
  check_projective_measurement(projectors, in.dim);
  return QChannel(SystemLayout({in}), SystemLayout({in}), projectors);
}

QChannel depolarizing_channel(const SystemLayout& in) {
  const int d = in.total_dim();
  std::vector<Matrix> kraus;
  for (int i = 0; i < d; ++i) {
    for (int j = 0; j < d; ++j) {
      Matrix k = Matrix::Zero(d, d);
      k(i, j) = 1.0 / std::sqrt(static_cast<double>(d));
      kraus.push_back(k);
    }
  }
  return QChannel(in, in, std::move(kraus));
}

QChannel constant_channel(const SystemLayout& in, const MultiState& sigma) {
  const int din = in.total_dim();
  EigenSystem es = hermitian_eigen(sigma.matrix());
  std::vector<Matrix> kraus;
  for (Eigen::Index k = 0; k < es.values.size(); ++k) {
    if (es.values(k) <= kSupportCutoff) continue;
    for (int j = 0; j < din; ++j) {
      Matrix m = Matrix::Zero(sigma.dim(), din);
      m.col(j) = std::sqrt(es.values(k)) * es.vectors.col(k);
      kraus.push_back(m);
    }
  }
  return QChannel(in, sigma.layout(), std::move(kraus));
}

QChannel partial_trace_channel(const SystemLayout& in, const Labels& keep) {
  Labels kept = ordered_subset(in, keep);
  Labels traced = in.without(kept).labels();
  std::vector<int> map = permutation_map(in.select(concat_labels(kept, traced)), in.labels());
  const int dk = in.dim_of(kept), dr = in.dim_of(traced), din = in.total_dim();
  std::vector<Matrix> kraus;
  for (int r = 0; r < dr; ++r) {
    Matrix k = Matrix::Zero(dk, din);
    for (int a = 0; a < dk; ++a) k(a, map[a * dr + r]) = 1.0;
    kraus.push_back(k);
  }
  return QChannel(in, in.select(kept), std::move(kraus));
}

QChannel restricted_channel(const QChannel& ch, const Labels& kept_inputs) {
  const SystemLayout& in = ch.in_layout();
  Labels kept = ordered_subset(in, kept_inputs);
  Labels comp = in.without(kept).labels();
  if (comp.empty()) return ch;
  std::vector<int> map = permutation_map(in.select(concat_labels(kept, comp)), in.labels());
  const int dk = in.dim_of(kept), dc = in.dim_of(comp), din = in.total_dim();
  const double w = 1.0 / std::sqrt(static_cast<double>(dc));
  std::vector<Matrix> kraus;
  for (const auto& k : ch.kraus()) {
    for (int j = 0; j < dc; ++j) {
      Matrix e = Matrix::Zero(din, dk);
      for (int a = 0; a < dk; ++a) e(map[a * dc + j], a) = w;
      kraus.push_back(k * e);
    }
  }
  return QChannel(in.select(kept), ch.out_layout(), std::move(kraus), ch.trace_preserving());
}

}  // namespace qdec
