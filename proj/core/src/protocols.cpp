// Copyright 2026 The qdec Authors
// SPDX-License-Identifier: Apache-2.0

#include "qdec/protocols.hpp"

#include <algorithm>
#include <cmath>

namespace qdec {
namespace {

Labels concat(Labels a, const Labels& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

struct PreparedEoa {
  Vector v;  // ordered A, B, helpers
  int da = 0;
  int db = 0;
  std::vector<int> helper_dims;
  Labels helpers;
};

PreparedEoa prepare_eoa(const PureState& psi, const std::string& a, const std::string& b, const Labels& helpers,
                        int d) {
  if (d < 1) throw InputError("target dimension must be >= 1");
  const SystemLayout& layout = psi.layout();
  Labels all = concat({a, b}, helpers);
  if (all.size() != layout.size()) throw InputError("state must consist of exactly A, B and the helpers");
  for (const auto& l : all) layout.index_of(l);
  PreparedEoa p;
  Vector v = permute_vector(layout, psi.vector(), all);
  const int da = layout.dim_of(a);
  p.db = layout.dim_of(b);
  if (d > p.db) throw InputError("target dimension exceeds |B|");
  for (const auto& h : helpers) {
    if (layout.dim_of(h) > 1) {
      p.helpers.push_back(h);
      p.helper_dims.push_back(layout.dim_of(h));
    }
  }
  // Pad A so that d divides its dimension.
  p.da = ((da + d - 1) / d) * d;
  const int rest = static_cast<int>(v.size()) / da;
  p.v = Vector::Zero(static_cast<Eigen::Index>(p.da) * rest);
  for (int i = 0; i < da; ++i) p.v.segment(i * rest, rest) = v.segment(i * rest, rest);
  return p;
}

// Applies the local unitary on factor `pos` of a product space.
Vector apply_factor(const Vector& v, const std::vector<int>& dims, std::size_t pos, const Matrix& u) {
  int left = 1, right = 1;
  for (std::size_t i = 0; i < pos; ++i) left *= dims[i];
  for (std::size_t i = pos + 1; i < dims.size(); ++i) right *= dims[i];
  const int d = dims[pos];
  Vector out = Vector::Zero(v.size());
  for (int l = 0; l < left; ++l) {
    for (int r = 0; r < right; ++r) {
      Vector x(d);
      for (int i = 0; i < d; ++i) x(i) = v((l * d + i) * right + r);
      Vector y = u * x;
      for (int i = 0; i < d; ++i) out((l * d + i) * right + r) = y(i);
    }
  }
  return out;
}

Matrix phi_density(int d) {
  Vector v = Vector::Zero(static_cast<Eigen::Index>(d) * d);
  for (int i = 0; i < d; ++i) v(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
  return v * v.adjoint();
}

}  // namespace

ProjectorFamily equal_rank_projectors(int dim, int t) {
  if (t < 1 || t > dim) throw InputError("number of projectors must lie in [1, dim]");
  ProjectorFamily f;
  f.dim = dim;
  for (int x = 0; x < t; ++x) f.ranks.push_back(dim / t + (x < dim % t ? 1 : 0));
  f.projectors = block_projectors(dim, f.ranks);
  return f;
}

std::string register_label(const std::string& party) { return "X_" + party; }

ExtractionOutcome simulate_randomness_extraction(const MultiState& rho, const Labels& parties,
                                                 const std::vector<int>& t, const std::vector<Matrix>& unitaries) {
  if (t.size() != parties.size() || unitaries.size() != parties.size()) {
    throw InputError("need one output size and one unitary per party");
  }
  std::vector<QChannel> parts;
  int total_t = 1;
  for (std::size_t i = 0; i < parties.size(); ++i) {
    const int d = rho.layout().dim_of(parties[i]);
    ProjectorFamily f = equal_rank_projectors(d, t[i]);
    QChannel m = measurement_channel(f.projectors, {parties[i], d}, register_label(parties[i]));
    std::vector<Matrix> kraus;
    for (const auto& k : m.kraus()) kraus.push_back(k * unitaries[i]);
    parts.emplace_back(m.in_layout(), m.out_layout(), std::move(kraus));
    total_t *= t[i];
  }
  QChannel ch = QChannel::tensor_product(parts);
  MultiState out = apply_channel(ch, rho, parties);
  Labels regs = ch.out_layout().labels();
  Labels env = rho.layout().without(parties).labels();
  out = permute(out, concat(regs, env));
  Matrix ideal = identity(total_t) / total_t;
  if (!env.empty()) ideal = kron(ideal, partial_trace_matrix(rho.layout(), rho.matrix(), env));
  ExtractionOutcome res;
  res.distance = 0.5 * trace_norm(out.matrix() - ideal);
  res.output = std::move(out);
  return res;
}

McEstimate randomness_extraction_average(const MultiState& rho, const Labels& parties, const std::vector<int>& t,
                                         Design design, std::size_t samples, std::uint64_t seed) {
  std::vector<int> dims;
  for (const auto& p : parties) dims.push_back(rho.layout().dim_of(p));
  std::vector<double> values;
  McEstimate est;
  est.design = design;
  est.seed = seed;
  if (samples == 0) {
    if (design != Design::clifford) throw InputError("exact averaging requires the Clifford design");
    const auto& group = clifford_group_1q();
    std::size_t total = 1;
    for (int d : dims) {
      if (d != 2) throw InputError("Clifford enumeration requires qubit parties");
      total *= group.size();
    }
    for (std::size_t idx = 0; idx < total; ++idx) {
      std::vector<Matrix> us(dims.size());
      std::size_t r = idx;
      for (std::size_t i = dims.size(); i-- > 0;) {
        us[i] = group[r % group.size()];
        r /= group.size();
      }
      values.push_back(simulate_randomness_extraction(rho, parties, t, us).distance);
    }
    est.exact = true;
  } else {
    for (std::size_t i = 0; i < samples; ++i) {
      values.push_back(simulate_randomness_extraction(rho, parties, t, local_unitary_sample(dims, design, seed, i))
                           .distance);
    }
  }
  est.samples = values.size();
  est.mean = pairwise_sum(values) / values.size();
  if (!est.exact && values.size() > 1) {
    double acc = 0.0;
    for (double v : values) acc += (v - est.mean) * (v - est.mean);
    est.stderr_ = std::sqrt(acc / (values.size() - 1.0) / values.size());
  }
  return est;
}

UhlmannResult uhlmann_isometry(const PureState& psi, const PureState& phi, const Labels& shared) {
  Labels p_labels = psi.layout().without(shared).labels();
  Labels q_labels = phi.layout().without(shared).labels();
  const int ds = psi.layout().dim_of(shared);
  if (phi.layout().dim_of(shared) != ds) throw InputError("shared systems differ in dimension");
  for (const auto& l : shared) {
    if (psi.layout().dim_of(l) != phi.layout().dim_of(l)) throw InputError("shared system dimension mismatch: " + l);
  }
  const int dp = psi.layout().dim_of(p_labels), dq = phi.layout().dim_of(q_labels);
  if (dq > dp) throw InputError("Uhlmann isometry needs |Q| <= |P|");
  Vector vp = permute_vector(psi.layout(), psi.vector(), concat(shared, p_labels));
  Vector vq = permute_vector(phi.layout(), phi.vector(), concat(shared, q_labels));
  Matrix psi_m = Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      vp.data(), ds, dp);
  Matrix phi_m = Eigen::Map<const Eigen::Matrix<Complex, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
      vq.data(), ds, dq);
  Matrix m = psi_m.adjoint() * phi_m;  // P x Q
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Matrix x = svd.matrixV() * svd.matrixU().leftCols(dq).adjoint();  // Q x P
  UhlmannResult r;
  r.isometry = x.transpose();
  double s = svd.singularValues().sum();
  r.fidelity = std::min(1.0, s * s);
  return r;
}

EoaRun run_eoa(const PureState& psi, const std::string& a, const std::string& b, const Labels& helpers, int d,
               const std::vector<Matrix>& unitaries) {
  PreparedEoa p = prepare_eoa(psi, a, b, helpers, d);
  if (unitaries.size() != 1 + p.helpers.size()) throw InputError("need one unitary for A and each helper");
  std::vector<int> fdims{p.da, p.db};
  fdims.insert(fdims.end(), p.helper_dims.begin(), p.helper_dims.end());
  Vector v = apply_factor(p.v, fdims, 0, unitaries[0]);
  for (std::size_t i = 0; i < p.helpers.size(); ++i) v = apply_factor(v, fdims, 2 + i, unitaries[1 + i]);

  int helper_total = 1;
  for (int h : p.helper_dims) helper_total *= h;
  const int blocks = p.da / d;
  const Matrix target = phi_density(d);
  const SystemLayout slay({{"S", d}, {"B", p.db}});
  const PureState phi(SystemLayout({{"S", d}, {"Q", d}}), [&] {
    Vector w = Vector::Zero(static_cast<Eigen::Index>(d) * d);
    for (int i = 0; i < d; ++i) w(i * d + i) = 1.0 / std::sqrt(static_cast<double>(d));
    return w;
  }());

  EoaRun run;
  for (int j0 = 0; j0 < blocks; ++j0) {
    for (int jc = 0; jc < helper_total; ++jc) {
      Matrix w(d, p.db);
      for (int x = 0; x < d; ++x) {
        for (int bb = 0; bb < p.db; ++bb) w(x, bb) = v(((j0 * d + x) * p.db + bb) * helper_total + jc);
      }
      ProtocolOutcome o;
      o.outcome.push_back(j0);
      int rem = jc;
      std::vector<int> hs(p.helper_dims.size());
      for (std::size_t i = p.helper_dims.size(); i-- > 0;) {
        hs[i] = rem % p.helper_dims[i];
        rem /= p.helper_dims[i];
      }
      o.outcome.insert(o.outcome.end(), hs.begin(), hs.end());
      o.probability = w.squaredNorm();
      if (o.probability < 1e-15) {
        run.outcomes.push_back(o);
        continue;
      }
      w /= std::sqrt(o.probability);
      Matrix rho_s = w * w.adjoint();
      o.residual = 0.5 * trace_norm(rho_s - identity(d) / d);
      Vector wv(static_cast<Eigen::Index>(d) * p.db);
      for (int x = 0; x < d; ++x) {
        for (int bb = 0; bb < p.db; ++bb) wv(x * p.db + bb) = w(x, bb);
      }
      UhlmannResult u = uhlmann_isometry(PureState(slay, wv), phi, {"S"});
      Matrix c = w * u.isometry.conjugate();  // (1 x W^dag) psi, as S x Q coefficients
      Vector cv(static_cast<Eigen::Index>(d) * d);
      for (int x = 0; x < d; ++x) {
        for (int q = 0; q < d; ++q) cv(x * d + q) = c(x, q);
      }
      Matrix perp = identity(p.db) - u.isometry * u.isometry.adjoint();
      Matrix leak = w * perp.transpose() * w.adjoint();
      Matrix e0 = Matrix::Zero(d, d);
      e0(0, 0) = 1.0;
      Matrix final_state = cv * cv.adjoint() + kron(leak, e0);
      o.error = 0.5 * trace_norm(hermitian_part(final_state - target));
      run.average_error += o.probability * o.error;
      run.outcomes.push_back(o);
    }
  }
  return run;
}

EoaSimulation simulate_eoa(const PureState& psi, const std::string& a, const std::string& b, const Labels& helpers,
                           int d, Design design, std::size_t samples, std::uint64_t seed) {
  PreparedEoa p = prepare_eoa(psi, a, b, helpers, d);
  EoaSimulation sim;
  sim.helpers_used = p.helpers;
  sim.padded_a_dim = p.da;
  sim.design = design;
  std::vector<int> dims{p.da};
  dims.insert(dims.end(), p.helper_dims.begin(), p.helper_dims.end());

  // Rebuild the state on the kept systems so run_eoa sees no trivial helpers.
  std::vector<Subsystem> sys{{a, p.da}, {b, p.db}};
  for (std::size_t i = 0; i < p.helpers.size(); ++i) sys.push_back({p.helpers[i], p.helper_dims[i]});
  PureState prepared(SystemLayout(sys), p.v);

  std::vector<double> values;
  const bool qubits = std::all_of(dims.begin(), dims.end(), [](int x) { return x == 2; });
  if (design == Design::clifford && !qubits) throw InputError("Clifford design requires qubit A and helpers");
  std::size_t group_total = 1;
  for (std::size_t i = 0; i < dims.size(); ++i) group_total *= 24;
  if (design == Design::clifford && dims.size() <= 3) {
    const auto& group = clifford_group_1q();
    for (std::size_t idx = 0; idx < group_total; ++idx) {
      std::vector<Matrix> us(dims.size());
      std::size_t r = idx;
      for (std::size_t i = dims.size(); i-- > 0;) {
        us[i] = group[r % 24];
        r /= 24;
      }
      values.push_back(run_eoa(prepared, a, b, p.helpers, d, us).average_error);
    }
    sim.exact = true;
  } else {
    const std::size_t n = std::max<std::size_t>(samples, 500);
    for (std::size_t i = 0; i < n; ++i) {
      values.push_back(run_eoa(prepared, a, b, p.helpers, d, local_unitary_sample(dims, design, seed, i)).average_error);
    }
  }
  sim.unitary_samples = values.size();
  sim.average_error = pairwise_sum(values) / values.size();
  if (!sim.exact && values.size() > 1) {
    double acc = 0.0;
    for (double x : values) acc += (x - sim.average_error) * (x - sim.average_error);
    sim.stderr_ = std::sqrt(acc / (values.size() - 1.0) / values.size());
  }
  return sim;
}

}  // namespace qdec
