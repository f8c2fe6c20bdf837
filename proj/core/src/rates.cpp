// Copyright 2026 The qdec Authors
// SPDX-License-Identifier: Apache-2.0

#include "qdec/rates.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdio>
#include <limits>

namespace qdec {
namespace {

Labels concat(Labels a, const Labels& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

Labels subset_of(const Labels& all, unsigned mask) {
  Labels out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (mask & (1u << i)) out.push_back(all[i]);
  }
  return out;
}

std::string describe(const Labels& l) {
  std::string s = "{";
  for (std::size_t i = 0; i < l.size(); ++i) s += (i ? "," : "") + l[i];
  return s + "}";
}

Labels rate_variables(const Labels& parties) {
  Labels out;
  for (const auto& p : parties) out.push_back("R_" + p);
  return out;
}

void check_eps(RateMode mode, double eps) {
  if (mode == RateMode::oneshot && !(eps > 0.0 && eps < 1.0)) {
    throw InputError("one-shot rates need epsilon in (0, 1)");
  }
}

double log_eps_term(RateMode mode, double eps) { return mode == RateMode::oneshot ? 2.0 * std::log2(eps) : 0.0; }

}  // namespace

std::string to_string(RateMode m) { return m == RateMode::iid ? "iid" : "oneshot"; }

RateMode rate_mode_from_string(const std::string& s) {
  if (s == "iid") return RateMode::iid;
  if (s == "oneshot") return RateMode::oneshot;
  throw InputError("unknown rate mode: " + s);
}

EntropyTable subset_entropy_table(const MultiState& rho, const Labels& parties, const Labels& cond, RateMode mode,
                                  double eps, const SmoothingOptions& opts) {
  check_eps(mode, eps);
  EntropyTable t;
  t.parties = parties;
  for (unsigned m = 1; m < (1u << parties.size()); ++m) {
    Labels a = subset_of(parties, m);
    t.values[m] = mode == RateMode::iid ? cond_von_neumann(rho, a, cond) : hmin_smooth(rho, a, cond, eps, opts);
  }
  return t;
}

void add_constraint(RatePolytope& poly, unsigned mask, double bound, const std::string& tag) {
  RateConstraint c;
  c.mask = mask;
  c.bound = bound;
  c.tag = tag;
  if (poly.sense == Sense::at_most) {
    c.effective = std::max(0.0, bound);
    c.clipped = bound < 0.0;
  } else {
    c.effective = bound;
  }
  poly.constraints.push_back(c);
}

RatePolytope randomness_region(const EntropyTable& table, const std::vector<int>& dims, RateMode mode, double eps) {
  check_eps(mode, eps);
  if (dims.size() != table.parties.size()) throw InputError("need one dimension per party");
  RatePolytope poly;
  poly.task = "randomness";
  poly.mode = mode;
  poly.sense = Sense::at_most;
  poly.variables = rate_variables(table.parties);
  for (const auto& [mask, h] : table.values) {
    double bound = 0.0;
    for (std::size_t i = 0; i < dims.size(); ++i) {
      if (mask & (1u << i)) bound += std::log2(static_cast<double>(dims[i]));
    }
    bound += negative_part(h.value_bits) + log_eps_term(mode, eps);
    add_constraint(poly, mask, bound, "I=" + describe(subset_of(table.parties, mask)));
  }
  return poly;
}

RatePolytope randomness_region(const MultiState& rho, const Labels& parties, RateMode mode, double eps,
                               const SmoothingOptions& opts) {
  Labels cond = rho.layout().without(parties).labels();
  EntropyTable table = subset_entropy_table(rho, parties, cond, mode, eps, opts);
  std::vector<int> dims;
  for (const auto& p : parties) dims.push_back(rho.layout().dim_of(p));
  return randomness_region(table, dims, mode, eps);
}

RatePolytope eoa_rate(const PureState& psi, const std::string& a, const Labels& helpers, RateMode mode, double eps,
                      const SmoothingOptions& opts) {
  check_eps(mode, eps);
  MultiState rho = psi.density();
  RatePolytope poly;
  poly.task = "eoa";
  poly.mode = mode;
  poly.sense = Sense::at_most;
  poly.variables = {"R"};
  double rate = std::numeric_limits<double>::infinity();
  double helper_min = std::numeric_limits<double>::infinity();
  for (unsigned m = 0; m < (1u << helpers.size()); ++m) {
    Labels ci = subset_of(helpers, m);
    Labels aci = concat({a}, ci);
    double v = mode == RateMode::iid ? von_neumann(rho, aci).value_bits
                                     : hmin_smooth(rho, aci, {}, eps, opts).value_bits + log_eps_term(mode, eps);
    add_constraint(poly, 1u, v, "I=" + describe(ci));
    rate = std::min(rate, v);
    if (m != 0) {
      double h = mode == RateMode::iid ? von_neumann(rho, ci).value_bits : hmin_smooth(rho, ci, {}, eps, opts).value_bits;
      helper_min = std::min(helper_min, h);
    }
  }
  poly.info["rate"] = std::max(0.0, rate);
  poly.info["raw_rate"] = rate;
  if (!helpers.empty()) {
    poly.info["helper_min_entropy"] = helper_min;
    poly.flags["helper_condition"] =
        mode == RateMode::iid ? helper_min > 0.0 : -2.0 * std::log2(eps) <= helper_min;
  }
  return poly;
}

RatePolytope eoa_mixed_rate(const MultiState& rho, const std::string& a, const std::string& b, const Labels& helpers,
                            const std::vector<Preprocessing>& candidates, RateMode mode, double eps,
                            const SmoothingOptions& opts) {
  check_eps(mode, eps);
  std::vector<Preprocessing> cands = candidates;
  if (cands.empty()) cands.push_back({"identity", {}});
  std::optional<RatePolytope> best;
  std::map<std::string, double> per_candidate;
  for (const auto& cand : cands) {
    MultiState sigma = rho;
    std::string a2 = a;
    Labels h2 = helpers;
    for (const auto& [label, ch] : cand.channels) {
      if (ch.out_layout().size() != 1 || ch.in_layout().size() != 1) {
        throw InputError("preprocessing channels must map one system to one system");
      }
      if (label == b) throw InputError("preprocessing may not act on B");
      sigma = apply_channel(ch, sigma, {label});
      const std::string out = ch.out_layout().systems()[0].label;
      if (label == a) a2 = out;
      for (auto& h : h2) {
        if (h == label) h = out;
      }
    }
    RatePolytope poly;
    poly.task = "eoa_mixed";
    poly.mode = mode;
    poly.sense = Sense::at_most;
    poly.variables = {"R"};
    double rate = std::numeric_limits<double>::infinity();
    bool condition = true;
    for (unsigned m = 0; m < (1u << h2.size()); ++m) {
      Labels ci = subset_of(h2, m), rest = subset_of(h2, ~m & ((1u << h2.size()) - 1));
      Labels lhs = concat({a2}, ci), rhs = concat({b}, rest);
      double v = mode == RateMode::iid ? coherent_information(sigma, lhs, rhs).value_bits
                                       : -hmax_smooth(sigma, lhs, rhs, eps, opts).value_bits + log_eps_term(mode, eps);
      add_constraint(poly, 1u, v, "I=" + describe(ci));
      rate = std::min(rate, v);
      if (m != 0) {
        Labels cond = concat({a2, b}, rest);
        if (mode == RateMode::iid) {
          condition = condition && coherent_information(sigma, ci, cond).value_bits >= -1e-12;
        } else {
          condition = condition && -2.0 * std::log2(eps) <= -hmax_smooth(sigma, ci, cond, eps, opts).value_bits;
        }
      }
    }
    poly.info["rate"] = std::max(0.0, rate);
    poly.info["raw_rate"] = rate;
    poly.flags["helper_condition"] = condition;
    per_candidate[cand.name] = rate;
    if (!best || rate > best->info["raw_rate"]) {
      best = poly;
      best->info["best_candidate_index"] = static_cast<double>(&cand - cands.data());
    }
  }
  for (const auto& [name, r] : per_candidate) best->info["candidate:" + name] = r;
  return *best;
}

RatePolytope merging_region(const MultiState& psi, const Labels& parties, const Labels& b, RateMode mode, double eps,
                            const SmoothingOptions& opts) {
  check_eps(mode, eps);
  RatePolytope poly;
  poly.task = "merging";
  poly.mode = mode;
  poly.sense = Sense::at_least;
  poly.variables = rate_variables(parties);
  const unsigned full = (1u << parties.size()) - 1;
  for (unsigned m = 1; m <= full; ++m) {
    Labels ai = subset_of(parties, m);
    Labels cond = concat(subset_of(parties, full & ~m), b);
    double v = mode == RateMode::iid ? cond_von_neumann(psi, ai, cond).value_bits
                                     : hmax_smooth(psi, ai, cond, eps, opts).value_bits - log_eps_term(mode, eps);
    add_constraint(poly, m, v, "I=" + describe(ai));
  }
  return poly;
}

Stinespring stinespring(const QChannel& ch, const std::string& env_label) {
  const int nk = static_cast<int>(ch.kraus().size());
  const int dout = ch.out_layout().total_dim(), din = ch.in_layout().total_dim();
  Stinespring s;
  s.in = ch.in_layout();
  s.out = ch.out_layout().concat(SystemLayout({{env_label, nk}}));
  s.isometry = Matrix::Zero(static_cast<Eigen::Index>(dout) * nk, din);
  for (int k = 0; k < nk; ++k) {
    for (int o = 0; o < dout; ++o) s.isometry.row(o * nk + k) = ch.kraus()[k].row(o);
  }
  return s;
}

namespace {

struct MacSetup {
  MultiState psi;
  Labels refs;
  Labels outs;
  std::string env;
};

MacSetup build_mac(const QChannel& ch, const std::vector<PureState>& inputs, const std::string& env_label) {
  const Labels chin = ch.in_layout().labels();
  if (inputs.size() != chin.size()) throw InputError("need one input state per channel input");
  MacSetup m;
  PureState total = inputs[0];
  for (std::size_t i = 1; i < inputs.size(); ++i) total = tensor(total, inputs[i]);
  for (std::size_t i = 0; i < inputs.size(); ++i) {
    const Labels l = inputs[i].layout().labels();
    if (l.size() != 2 || !inputs[i].layout().contains(chin[i])) {
      throw InputError("input state " + std::to_string(i) + " must be pure on (reference, " + chin[i] + ")");
    }
    m.refs.push_back(l[0] == chin[i] ? l[1] : l[0]);
  }
  Stinespring st = stinespring(ch, env_label);
  QChannel iso(st.in, st.out, {st.isometry});
  MultiState out = apply_channel(iso, total.density(), chin);
  m.outs = ch.out_layout().labels();
  m.env = env_label;
  m.psi = permute(out, concat(concat(m.refs, m.outs), {env_label}));
  return m;
}

}  // namespace

MultiState mac_state(const QChannel& ch, const std::vector<PureState>& inputs, const std::string& env_label) {
  return build_mac(ch, inputs, env_label).psi;
}

RatePolytope mac_region(const QChannel& ch, const std::vector<PureState>& inputs, RateMode mode, double eps,
                        const SmoothingOptions& opts) {
  check_eps(mode, eps);
  MacSetup m = build_mac(ch, inputs, "E");
  RatePolytope poly;
  poly.task = "mac";
  poly.mode = mode;
  poly.sense = Sense::at_most;
  poly.variables = rate_variables(m.refs);
  const unsigned full = (1u << m.refs.size()) - 1;
  for (unsigned s = 1; s <= full; ++s) {
    Labels ai = subset_of(m.refs, s);
    double v;
    if (mode == RateMode::iid) {
      v = coherent_information(m.psi, ai, concat(m.outs, subset_of(m.refs, full & ~s))).value_bits;
    } else {
      v = hmin_smooth(m.psi, ai, {m.env}, eps, opts).value_bits + log_eps_term(mode, eps);
    }
    add_constraint(poly, s, v, "I=" + describe(ai));
  }
  return poly;
}

RatePolytope mac_region_ensemble(const QChannel& ch, const std::vector<double>& weights,
                                 const std::vector<std::vector<PureState>>& inputs) {
  if (weights.size() != inputs.size() || weights.empty()) throw InputError("need one weight per input tuple");
  double total = 0.0;
  for (double w : weights) {
    if (w < 0.0) throw InputError("ensemble weights must be nonnegative");
    total += w;
  }
  if (std::abs(total - 1.0) > 1e-9) throw InputError("ensemble weights must sum to 1");
  RatePolytope out;
  std::vector<double> acc;
  for (std::size_t u = 0; u < inputs.size(); ++u) {
    RatePolytope p = mac_region(ch, inputs[u], RateMode::iid, 0.0);
    if (u == 0) {
      out = p;
      acc.assign(p.constraints.size(), 0.0);
    } else if (p.variables != out.variables) {
      throw InputError("ensemble members must share reference labels");
    }
    for (std::size_t i = 0; i < acc.size(); ++i) acc[i] += weights[u] * p.constraints[i].bound;
  }
  std::vector<RateConstraint> old = out.constraints;
  out.constraints.clear();
  for (std::size_t i = 0; i < old.size(); ++i) add_constraint(out, old[i].mask, acc[i], old[i].tag);
  out.info["ensemble_size"] = static_cast<double>(inputs.size());
  return out;
}

RatePolytope compound_region(const std::vector<RatePolytope>& instances) {
  if (instances.empty()) throw InputError("compound region needs at least one instance");
  const RatePolytope& first = instances[0];
  for (const auto& p : instances) {
    if (p.task != first.task || p.sense != first.sense || p.variables != first.variables ||
        p.constraints.size() != first.constraints.size()) {
      throw InputError("compound instances must share task, variables and constraint structure");
    }
    for (std::size_t i = 0; i < p.constraints.size(); ++i) {
      if (p.constraints[i].mask != first.constraints[i].mask || p.constraints[i].tag != first.constraints[i].tag) {
        throw InputError("compound instances must share constraint structure");
      }
    }
  }
  RatePolytope out;
  out.task = first.task;
  out.mode = first.mode;
  out.sense = first.sense;
  out.variables = first.variables;
  for (std::size_t i = 0; i < first.constraints.size(); ++i) {
    double b = first.constraints[i].bound;
    for (const auto& p : instances) {
      b = first.sense == Sense::at_most ? std::min(b, p.constraints[i].bound) : std::max(b, p.constraints[i].bound);
    }
    add_constraint(out, first.constraints[i].mask, b, first.constraints[i].tag);
  }
  out.info["instances"] = static_cast<double>(instances.size());
  return out;
}

std::vector<std::vector<double>> enumerate_vertices(const RatePolytope& poly, std::optional<double> box) {
  const std::size_t k = poly.variables.size();
  if (k == 0 || k > 3) throw InputError("vertex enumeration supports 1 to 3 rate variables");
  double max_abs = 0.0;
  for (const auto& c : poly.constraints) max_abs = std::max(max_abs, std::abs(c.effective));
  const double limit = box.value_or(max_abs + 2.0);
  const double tol = 1e-9;

  struct Plane {
    Eigen::VectorXd a;
    double b;
  };
  std::vector<Plane> planes;
  for (const auto& c : poly.constraints) {
    Eigen::VectorXd a = Eigen::VectorXd::Zero(k);
    for (std::size_t i = 0; i < k; ++i) {
      if (c.mask & (1u << i)) a(i) = 1.0;
    }
    planes.push_back({a, c.effective});
  }
  for (std::size_t i = 0; i < k; ++i) {
    Eigen::VectorXd e = Eigen::VectorXd::Unit(k, i);
    planes.push_back({e, poly.sense == Sense::at_most ? 0.0 : -limit});
    planes.push_back({e, limit});
  }
  auto feasible = [&](const Eigen::VectorXd& r) {
    for (const auto& c : poly.constraints) {
      double s = 0.0;
      for (std::size_t i = 0; i < k; ++i) {
        if (c.mask & (1u << i)) s += r(i);
      }
      if (poly.sense == Sense::at_most ? s > c.effective + tol : s < c.effective - tol) return false;
    }
    for (std::size_t i = 0; i < k; ++i) {
      double lo = poly.sense == Sense::at_most ? 0.0 : -limit;
      if (r(i) < lo - tol || r(i) > limit + tol) return false;
    }
    return true;
  };

  std::vector<std::vector<double>> verts;
  const std::size_t n = planes.size();
  std::vector<std::size_t> idx(k);
  std::function<void(std::size_t, std::size_t)> choose = [&](std::size_t depth, std::size_t start) {
    if (depth == k) {
      Eigen::MatrixXd m(k, k);
      Eigen::VectorXd rhs(k);
      for (std::size_t r = 0; r < k; ++r) {
        m.row(r) = planes[idx[r]].a.transpose();
        rhs(r) = planes[idx[r]].b;
      }
      Eigen::FullPivLU<Eigen::MatrixXd> lu(m);
      if (lu.rank() < static_cast<Eigen::Index>(k)) return;
      Eigen::VectorXd x = lu.solve(rhs);
      if (!feasible(x)) return;
      std::vector<double> v(k);
      for (std::size_t i = 0; i < k; ++i) v[i] = std::abs(x(i)) < 1e-12 ? 0.0 : x(i);
      for (const auto& w : verts) {
        bool same = true;
        for (std::size_t i = 0; i < k; ++i) same = same && std::abs(w[i] - v[i]) <= tol;
        if (same) return;
      }
      verts.push_back(v);
      return;
    }
    for (std::size_t i = start; i < n; ++i) {
      idx[depth] = i;
      choose(depth + 1, i + 1);
    }
  };
  choose(0, 0);
  std::sort(verts.begin(), verts.end());
  return verts;
}

std::string vertices_csv(const RatePolytope& poly, const std::vector<std::vector<double>>& vertices) {
  std::string out;
  for (std::size_t i = 0; i < poly.variables.size(); ++i) out += (i ? "," : "") + poly.variables[i];
  out += "\n";
  char buf[64];
  for (const auto& v : vertices) {
    for (std::size_t i = 0; i < v.size(); ++i) {
      std::snprintf(buf, sizeof buf, "%.17g", v[i]);
      out += (i ? "," : "") + std::string(buf);
    }
    out += "\n";
  }
  return out;
}

}  // namespace qdec
