// Copyright 2026 The qdec Authors
// SPDX-License-Identifier: Apache-2.0

#include "qdec/decouple.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <set>
#include <thread>

#include "qdec/twirl.hpp"

namespace qdec {
namespace {

Labels concat(Labels a, const Labels& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

bool has(const Labels& v, const std::string& l) { return std::find(v.begin(), v.end(), l) != v.end(); }

struct Setup {
  Labels inputs;     // channel input order
  Labels env;        // E systems, state order
  Labels out;        // channel outputs
  std::vector<int> perm;  // perm[j] = index in `parties` of channel input j
};

Setup check_setup(const MultiState& rho, const QChannel& ch, const Labels& parties) {
  Setup s;
  s.inputs = ch.in_layout().labels();
  std::set<std::string> a(parties.begin(), parties.end()), b(s.inputs.begin(), s.inputs.end());
  if (a.size() != parties.size()) throw InputError("duplicate party label");
  if (a != b) throw InputError("parties must be exactly the channel inputs");
  for (const auto& l : s.inputs) {
    if (!rho.layout().contains(l)) throw InputError("state lacks party " + l);
    if (rho.layout().dim_of(l) != ch.in_layout().dim_of(l)) throw InputError("dimension mismatch on " + l);
    if (rho.layout().dim_of(l) < 2) throw InputError("party " + l + " has dimension 1");
  }
  s.env = rho.layout().without(s.inputs).labels();
  s.out = ch.out_layout().labels();
  for (const auto& o : s.out) {
    if (has(s.env, o)) throw InputError("channel output label clashes with state system " + o);
  }
  for (const auto& l : s.inputs) {
    s.perm.push_back(static_cast<int>(std::find(parties.begin(), parties.end(), l) - parties.begin()));
  }
  return s;
}

// Replaces the systems in `s` by maximally mixed states.
Matrix depolarize(const SystemLayout& layout, const Matrix& x, const Labels& s) {
  if (s.empty()) return x;
  Labels rest = layout.without(s).labels();
  Matrix y = partial_trace_matrix(layout, x, rest);
  const int ds = layout.dim_of(s);
  Matrix z = kron(y, identity(ds) / ds);
  return permute_matrix(layout.select(concat(rest, s)), z, layout.labels());
}

Matrix ideal_output(const MultiState& rho, const QChannel& ch, const Setup& s) {
  const int da = ch.in_layout().total_dim();
  Matrix tau_b = ch.apply(identity(da) / da);
  if (s.env.empty()) return tau_b * rho.trace();
  return kron(tau_b, partial_trace_matrix(rho.layout(), rho.matrix(), s.env));
}

// Per-sample evaluation of ||R^U rho - tau_B x rho_E||_1.
class Sampler {
 public:
  Sampler(const MultiState& rho, const QChannel& ch, const Labels& parties)
      : setup_(check_setup(rho, ch, parties)), parties_(parties) {
    x0_ = permute_matrix(rho.layout(), rho.matrix(), concat(setup_.inputs, setup_.env));
    de_ = rho.layout().dim_of(setup_.env);
    for (const auto& k : ch.kraus()) kraus_.push_back(kron(k, identity(de_)));
    ideal_ = ideal_output(rho, ch, setup_);
    for (const auto& l : parties) dims_.push_back(rho.layout().dim_of(l));
  }

  const std::vector<int>& dims() const { return dims_; }

  double distance(const std::vector<Matrix>& unitaries) const {
    Matrix u = Matrix::Identity(1, 1);
    for (int j : setup_.perm) u = kron(u, unitaries[j]);
    u = kron(u, identity(de_));
    Matrix y = Matrix::Zero(ideal_.rows(), ideal_.cols());
    for (const auto& k : kraus_) {
      Matrix m = k * u;
      y.noalias() += m * x0_ * m.adjoint();
    }
    return trace_norm(hermitian_part(y - ideal_));
  }

 private:
  Setup setup_;
  Labels parties_;
  Matrix x0_;
  int de_ = 1;
  std::vector<Matrix> kraus_;
  Matrix ideal_;
  std::vector<int> dims_;
};

template <typename F>
std::vector<double> parallel_values(std::size_t n, int workers, F&& f) {
  std::vector<double> out(n);
  workers = std::max(1, std::min<int>(workers, static_cast<int>(std::max<std::size_t>(n, 1))));
  if (workers == 1) {
    for (std::size_t i = 0; i < n; ++i) out[i] = f(i);
    return out;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&, w] {
      for (std::size_t i = w; i < n; i += workers) out[i] = f(i);
    });
  }
  for (auto& t : pool) t.join();
  return out;
}

void fill_stats(McEstimate& est, const std::vector<double>& values) {
  const double n = static_cast<double>(values.size());
  est.samples = values.size();
  est.mean = pairwise_sum(values) / n;
  if (values.size() < 2) {
    est.stderr_ = 0.0;
    return;
  }
  std::vector<double> dev(values.size());
  for (std::size_t i = 0; i < values.size(); ++i) dev[i] = (values[i] - est.mean) * (values[i] - est.mean);
  est.stderr_ = std::sqrt(pairwise_sum(dev) / (n - 1.0) / n);
}

template <typename T>
T pick(const std::vector<T>& v, std::size_t idx, const char* what) {
  if (v.size() == 1) return v[0];
  if (idx >= v.size()) throw InputError(std::string("need one ") + what + " per subset");
  return v[idx];
}

}  // namespace

std::vector<Labels> nonempty_subsets(const Labels& parties) {
  std::vector<Labels> out;
  const unsigned count = 1u << parties.size();
  for (unsigned m = 1; m < count; ++m) {
    Labels s;
    for (std::size_t i = 0; i < parties.size(); ++i) {
      if (m & (1u << i)) s.push_back(parties[i]);
    }
    out.push_back(s);
  }
  return out;
}

std::vector<TelescopeTerm> telescope_terms(const QChannel& ch, const Labels& parties) {
  std::vector<TelescopeTerm> out;
  unsigned m = 1;
  for (const auto& s : nonempty_subsets(parties)) out.push_back({s, m++, restricted_channel(ch, s)});
  return out;
}

HermitianOp term_operator(const MultiState& rho, const QChannel& ch, const Labels& parties, const Labels& subset,
                          const std::vector<Matrix>& unitaries) {
  Setup s = check_setup(rho, ch, parties);
  if (unitaries.size() != parties.size()) throw InputError("need one unitary per party");
  Labels sub;
  for (const auto& l : rho.layout().labels()) {
    if (has(subset, l)) sub.push_back(l);
  }
  if (sub.size() != subset.size() || sub.empty()) throw InputError("subset must be nonempty parties");
  const Labels keep = concat(sub, s.env);
  const SystemLayout layout = rho.layout().select(keep);
  const Matrix r = marginal_matrix(rho.layout(), rho.matrix(), keep);
  const std::size_t k = sub.size();
  Matrix acc = Matrix::Zero(r.rows(), r.cols());
  for (unsigned j = 0; j < (1u << k); ++j) {
    Labels rot, dep;
    std::vector<Matrix> us;
    for (std::size_t i = 0; i < k; ++i) {
      if (j & (1u << i)) {
        rot.push_back(sub[i]);
        us.push_back(unitaries[std::find(parties.begin(), parties.end(), sub[i]) - parties.begin()]);
      } else {
        dep.push_back(sub[i]);
      }
    }
    Matrix u = embed_local(layout, rot, us);
    Matrix x = depolarize(layout, u * r * u.adjoint(), dep);
    double sign = (dep.size() % 2) ? -1.0 : 1.0;
    acc += sign * x;
  }
  QChannel ti = restricted_channel(ch, sub);
  Labels on = ti.in_layout().labels();
  HermitianOp op(layout, hermitian_part(acc));
  HermitianOp out = apply_channel(ti, op, on);
  return permute(out, concat(s.out, s.env));
}

DifferenceSplit apply_difference(const MultiState& rho, const QChannel& ch, const Labels& parties,
                                 const std::vector<Matrix>& unitaries) {
  Setup s = check_setup(rho, ch, parties);
  if (unitaries.size() != parties.size()) throw InputError("need one unitary per party");
  Matrix u = embed_local(rho.layout(), parties, unitaries);
  MultiState rotated = MultiState::trusted(rho.layout(), u * rho.matrix() * u.adjoint(), rho.subnormalized());
  MultiState out = permute(apply_channel(ch, rotated, s.inputs), concat(s.out, s.env));
  DifferenceSplit split;
  split.total = HermitianOp(out.layout(), out.matrix() - ideal_output(rho, ch, s));
  for (const auto& sub : nonempty_subsets(parties)) {
    split.terms.push_back(term_operator(rho, ch, parties, sub, unitaries));
  }
  return split;
}

McEstimate mc_decoupling_error(const MultiState& rho, const QChannel& ch, const Labels& parties,
                               std::size_t samples, std::uint64_t seed, Design design, int workers) {
  if (samples == 0) throw InputError("need at least one sample");
  Sampler sampler(rho, ch, parties);
  auto values = parallel_values(samples, workers, [&](std::size_t i) {
    return sampler.distance(local_unitary_sample(sampler.dims(), design, seed, i));
  });
  McEstimate est;
  est.seed = seed;
  est.design = design;
  fill_stats(est, values);
  return est;
}

McEstimate exact_clifford_decoupling_error(const MultiState& rho, const QChannel& ch, const Labels& parties,
                                           int workers) {
  Sampler sampler(rho, ch, parties);
  for (int d : sampler.dims()) {
    if (d != 2) throw InputError("Clifford enumeration requires qubit parties");
  }
  const auto& group = clifford_group_1q();
  const std::size_t k = parties.size();
  std::size_t total = 1;
  for (std::size_t i = 0; i < k; ++i) total *= group.size();
  auto values = parallel_values(total, workers, [&](std::size_t idx) {
    std::vector<Matrix> us(k);
    for (std::size_t i = k; i-- > 0;) {
      us[i] = group[idx % group.size()];
      idx /= group.size();
    }
    return sampler.distance(us);
  });
  McEstimate est;
  est.design = Design::clifford;
  est.exact = true;
  fill_stats(est, values);
  est.stderr_ = 0.0;
  return est;
}

McEstimate mc_term_hs_norm(const MultiState& rho, const QChannel& ch, const Labels& parties, const Labels& subset,
                           std::size_t samples, std::uint64_t seed, Design design) {
  if (samples == 0) throw InputError("need at least one sample");
  std::vector<int> dims;
  for (const auto& l : parties) dims.push_back(rho.layout().dim_of(l));
  std::vector<double> values(samples);
  for (std::size_t i = 0; i < samples; ++i) {
    values[i] = hs_norm(term_operator(rho, ch, parties, subset, local_unitary_sample(dims, design, seed, i)).matrix());
  }
  McEstimate est;
  est.seed = seed;
  est.design = design;
  fill_stats(est, values);
  return est;
}

namespace {

EntropyValue state_renyi(const MultiState& rho, const Labels& sub, const Labels& env, double alpha,
                         const BoundConfig& cfg) {
  if (env.empty()) return renyi_sandwiched_fixed(rho, sub, {}, alpha, Matrix::Identity(1, 1));
  switch (cfg.zeta) {
    case ZetaChoice::marginal: {
      EntropyValue v =
          renyi_sandwiched_fixed(rho, sub, env, alpha, partial_trace_matrix(rho.layout(), rho.matrix(), env));
      v.sigma = "marginal";
      return v;
    }
    case ZetaChoice::optimized:
      return renyi_optimized(rho, sub, env, alpha, cfg.renyi);
    case ZetaChoice::explicit_state:
      if (!cfg.zeta_state) throw InputError("explicit zeta requested but not given");
      return renyi_sandwiched_fixed(rho, sub, env, alpha, *cfg.zeta_state);
  }
  throw InputError("bad zeta choice");
}

EntropyValue channel_collision(const QChannel& ti, const BoundConfig& cfg, bool force_uniform) {
  MultiState tau = choi(ti);
  const Labels a = ti.in_layout().labels();
  const Labels b = choi_output_labels(ti);
  const int db = ti.out_layout().total_dim();
  if (force_uniform) {
    EntropyValue v = renyi_sandwiched_fixed(tau, a, b, 2.0, identity(db) / db);
    v.sigma = "uniform";
    return v;
  }
  switch (cfg.sigma) {
    case SigmaChoice::choi_marginal: {
      EntropyValue v = renyi_sandwiched_fixed(tau, a, b, 2.0, partial_trace_matrix(tau.layout(), tau.matrix(), b));
      v.sigma = "choi_marginal";
      return v;
    }
    case SigmaChoice::optimized:
      return renyi_optimized(tau, a, b, 2.0, cfg.renyi);
    case SigmaChoice::explicit_state:
      if (!cfg.sigma_state) throw InputError("explicit sigma requested but not given");
      return renyi_sandwiched_fixed(tau, a, b, 2.0, *cfg.sigma_state);
  }
  throw InputError("bad sigma choice");
}

Labels state_ordered(const MultiState& rho, const Labels& subset) {
  Labels out;
  for (const auto& l : rho.layout().labels()) {
    if (has(subset, l)) out.push_back(l);
  }
  return out;
}

double finite_or_inf(double x) { return std::isfinite(x) ? x : std::numeric_limits<double>::infinity(); }

}  // namespace

DecouplingReport bound_smooth(const MultiState& rho, const QChannel& ch, const Labels& parties,
                              const BoundConfig& cfg) {
  Setup s = check_setup(rho, ch, parties);
  if (cfg.tensor_constant && !ch.is_tensor_product()) {
    throw InputError("tensor flag set but channel is not a declared tensor product");
  }
  DecouplingReport rep;
  rep.bound = "smooth";
  std::size_t idx = 0;
  for (const auto& subset : nonempty_subsets(parties)) {
    SubsetBoundTerm t;
    t.subset = state_ordered(rho, subset);
    const double eps = pick(cfg.epsilon, idx, "epsilon");
    if (eps < 0.0 || eps >= 1.0) throw InputError("epsilon must lie in [0, 1)");
    std::vector<int> dims;
    for (const auto& l : t.subset) dims.push_back(rho.layout().dim_of(l));
    t.d_constant = d_constant(dims, cfg.tensor_constant);
    t.parameter = eps;
    if (eps == 0.0) {
      t.state_entropy = state_renyi(rho, t.subset, s.env, 2.0, cfg);
    } else {
      t.state_entropy = hmin_smooth(rho, t.subset, s.env, eps, cfg.smoothing);
    }
    QChannel ti = restricted_channel(ch, t.subset);
    t.channel_entropy = channel_collision(ti, cfg, false);
    t.additive = std::ldexp(1.0, static_cast<int>(t.subset.size()) + 1) * eps;
    if (t.state_entropy.neg_infinity || t.channel_entropy.neg_infinity) {
      t.term = std::numeric_limits<double>::infinity();
    } else {
      t.term = t.additive +
               t.d_constant * std::exp2(-0.5 * t.state_entropy.value_bits - 0.5 * t.channel_entropy.value_bits);
    }
    rep.total_bound += t.term;
    rep.terms.push_back(std::move(t));
    ++idx;
  }
  rep.total_bound = finite_or_inf(rep.total_bound);
  if (std::any_of(cfg.epsilon.begin(), cfg.epsilon.end(), [](double e) { return e > 0.0; })) {
    rep.notes.push_back("smooth collision entropy replaced by its certified smooth min-entropy lower bound");
  }
  return rep;
}

DecouplingReport bound_renyi(const MultiState& rho, const QChannel& ch, const Labels& parties,
                             const BoundConfig& cfg) {
  Setup s = check_setup(rho, ch, parties);
  if (!ch.unital(1e-9)) throw InputError("Renyi decoupling bound requires a unital channel");
  if (cfg.tensor_constant && !ch.is_tensor_product()) {
    throw InputError("tensor flag set but channel is not a declared tensor product");
  }
  DecouplingReport rep;
  rep.bound = "renyi";
  std::size_t idx = 0;
  for (const auto& subset : nonempty_subsets(parties)) {
    SubsetBoundTerm t;
    t.subset = state_ordered(rho, subset);
    const double alpha = pick(cfg.alpha, idx, "alpha");
    if (!(alpha > 1.0 && alpha <= 2.0)) throw InputError("alpha must lie in (1, 2]");
    std::vector<int> dims;
    for (const auto& l : t.subset) dims.push_back(rho.layout().dim_of(l));
    t.d_constant = d_constant(dims, cfg.tensor_constant);
    t.parameter = alpha;
    t.state_entropy = state_renyi(rho, t.subset, s.env, alpha, cfg);
    t.channel_entropy = channel_collision(restricted_channel(ch, t.subset), cfg, true);
    if (t.state_entropy.neg_infinity || t.channel_entropy.neg_infinity) {
      t.term = std::numeric_limits<double>::infinity();
    } else {
      const double e = 1.0 - 1.0 / alpha;
      t.term = std::pow(t.d_constant, 2.0 - 2.0 / alpha) * std::exp2(2.0 / alpha - 1.0) *
               std::exp2(e * (-t.state_entropy.value_bits - t.channel_entropy.value_bits));
    }
    rep.total_bound += t.term;
    rep.terms.push_back(std::move(t));
    ++idx;
  }
  rep.total_bound = finite_or_inf(rep.total_bound);
  return rep;
}

void attach_mc(DecouplingReport& report, const McEstimate& mc) {
  report.mc = mc;
  report.pass = mc.mean <= report.total_bound + 3.0 * mc.stderr_;
}

}  // namespace qdec
