// Copyright 2026 The qdec Authors
// SPDX-License-Identifier: Apache-2.0

#include "qdec/twirl.hpp"

#include <algorithm>
#include <bit>
#include <cmath>

#include "qdec/entropy.hpp"

namespace qdec {
namespace {

std::vector<int> party_dims(const SystemLayout& layout, const Labels& labels) {
  std::vector<int> out;
  for (const auto& l : labels) out.push_back(layout.dim_of(l));
  return out;
}

Labels subset_labels(const Labels& all, unsigned mask) {
  Labels out;
  for (std::size_t i = 0; i < all.size(); ++i) {
    if (mask & (1u << i)) out.push_back(all[i]);
  }
  return out;
}

void check_subset(const QChannel& ch, const Labels& subset) {
  for (const auto& l : subset) {
    if (!ch.in_layout().contains(l)) throw InputError("subset label " + l + " is not a channel input");
    if (ch.in_layout().dim_of(l) < 2) throw InputError("party " + l + " has dimension 1");
  }
}

}  // namespace

SecondMoment haar_second_moment(const Matrix& m, int d) {
  if (m.rows() != d * d || m.cols() != d * d) throw InputError("second moment: operator must act on C^d (x) C^d");
  const Matrix f = swap_operator(d);
  const Complex tr = m.trace();
  const Complex trf = (m * f).trace();
  SecondMoment sm;
  if (d == 1) {
    sm.alpha = tr;
    sm.beta = 0.0;
  } else {
    const double dd = d, det = dd * dd * (dd * dd - 1.0);
    sm.alpha = (dd * dd * tr - dd * trf) / det;
    sm.beta = (dd * dd * trf - dd * tr) / det;
  }
  sm.reconstructed = sm.alpha * identity(d * d) + sm.beta * f;
  return sm;
}

Matrix partial_swap(const std::vector<int>& dims, unsigned mask) {
  const std::size_t k = dims.size();
  int half = 1;
  for (int d : dims) half *= d;
  const int n = half * half;
  Matrix p = Matrix::Zero(n, n);
  std::vector<int> x(k), y(k);
  for (int col = 0; col < n; ++col) {
    int first = col / half, second = col % half;
    for (std::size_t i = k; i-- > 0;) {
      x[i] = first % dims[i];
      first /= dims[i];
      y[i] = second % dims[i];
      second /= dims[i];
    }
    for (std::size_t i = 0; i < k; ++i) {
      if (mask & (1u << i)) std::swap(x[i], y[i]);
    }
    int r1 = 0, r2 = 0;
    for (std::size_t i = 0; i < k; ++i) {
      r1 = r1 * dims[i] + x[i];
      r2 = r2 * dims[i] + y[i];
    }
    p(r1 * half + r2, col) = 1.0;
  }
  return p;
}

TwirlMoment local_second_moment(const Matrix& m, const std::vector<int>& dims) {
  const std::size_t k = dims.size();
  if (k == 0 || k > 3) throw InputError("local second moment supports 1 to 3 parties");
  int half = 1;
  for (int d : dims) {
    if (d < 2) throw InputError("twirled parties need dimension >= 2");
    half *= d;
  }
  if (m.rows() != half * half || m.cols() != half * half) throw InputError("operator dimension mismatch");
  const unsigned count = 1u << k;
  // Tr[(F_T x 1)(F_L x 1)] = prod_i (d_i^2 if i in both or neither, else d_i).
  Matrix gram(count, count);
  Vector rhs(count);
  std::vector<Matrix> swaps;
  for (unsigned l = 0; l < count; ++l) swaps.push_back(partial_swap(dims, l));
  for (unsigned l = 0; l < count; ++l) {
    rhs(l) = (m * swaps[l]).trace();
    for (unsigned t = 0; t < count; ++t) {
      double g = 1.0;
      for (std::size_t i = 0; i < k; ++i) {
        bool same = ((l >> i) & 1u) == ((t >> i) & 1u);
        g *= same ? dims[i] * dims[i] : dims[i];
      }
      gram(l, t) = g;
    }
  }
  Eigen::PartialPivLU<Matrix> lu(gram);
  Vector c = lu.solve(rhs);
  TwirlMoment tm;
  tm.dims = dims;
  tm.coefficients.assign(c.data(), c.data() + c.size());
  Eigen::JacobiSVD<Matrix> svd(gram);
  tm.condition_number = svd.singularValues()(0) / svd.singularValues()(svd.singularValues().size() - 1);
  tm.reconstructed = Matrix::Zero(m.rows(), m.cols());
  for (unsigned l = 0; l < count; ++l) tm.reconstructed += c(l) * swaps[l];
  return tm;
}

double twirl_channel_coefficient(const QChannel& ch, const Labels& subset) {
  check_subset(ch, subset);
  QChannel ti = restricted_channel(ch, subset);
  MultiState tau = choi(ti);
  const Labels inputs = ti.in_layout().labels();
  const Labels outs = choi_output_labels(ti);
  const std::vector<int> dims = party_dims(ti.in_layout(), inputs);
  const std::size_t k = inputs.size();
  double denom = 1.0;
  for (int d : dims) denom *= 1.0 - 1.0 / (static_cast<double>(d) * d);
  const unsigned full = (1u << k) - 1;
  double acc = 0.0;
  for (unsigned l = 0; l <= full; ++l) {
    Labels keep = subset_labels(inputs, l);
    keep.insert(keep.end(), outs.begin(), outs.end());
    Matrix t = partial_trace_matrix(tau.layout(), tau.matrix(), keep);
    double purity = (t * t).trace().real();
    double comp_dim = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
      if (!(l & (1u << i))) comp_dim *= dims[i];
    }
    int sign = (std::popcount(full & ~l) % 2) ? -1 : 1;
    acc += sign * purity / comp_dim;
  }
  return acc / denom;
}

double expected_hs_norm_sq(const MultiState& rho, const QChannel& ch, const Labels& subset) {
  check_subset(ch, subset);
  for (const auto& l : ch.in_layout().labels()) {
    if (!rho.layout().contains(l)) throw InputError("state lacks channel input " + l);
  }
  const double c = twirl_channel_coefficient(ch, subset);
  // Parties of I in state-layout order.
  Labels inputs;
  for (const auto& l : ch.in_layout().labels()) {
    if (std::find(subset.begin(), subset.end(), l) != subset.end()) inputs.push_back(l);
  }
  const Labels env = rho.layout().without(ch.in_layout().labels()).labels();
  const std::size_t k = inputs.size();
  const unsigned full = (1u << k) - 1;
  double bracket = 0.0;
  for (unsigned j = 0; j <= full; ++j) {
    Labels keep = subset_labels(inputs, j);
    keep.insert(keep.end(), env.begin(), env.end());
    double purity;
    if (keep.empty()) {
      purity = rho.trace() * rho.trace();
    } else {
      Matrix r = partial_trace_matrix(rho.layout(), rho.matrix(), keep);
      purity = (r * r).trace().real();
    }
    double comp_dim = 1.0;
    for (std::size_t i = 0; i < k; ++i) {
      if (!(j & (1u << i))) comp_dim *= rho.layout().dim_of(inputs[i]);
    }
    int sign = (std::popcount(full & ~j) % 2) ? -1 : 1;
    bracket += sign * purity / comp_dim;
  }
  return c * bracket;
}

double d_constant(const std::vector<int>& dims, bool tensor_product) {
  double prod = 1.0;
  for (int d : dims) {
    if (d < 2) throw InputError("twirled parties need dimension >= 2");
    prod *= std::sqrt(1.0 - 1.0 / (static_cast<double>(d) * d));
  }
  if (tensor_product) return prod;
  return std::ldexp(1.0, static_cast<int>(dims.size()) - 1) / prod;
}

ContractiveCoeff lambda_coefficient(const QChannel& ch, const Labels& subset, bool tensor) {
  check_subset(ch, subset);
  if (subset.empty()) throw InputError("lambda needs a nonempty subset");
  ContractiveCoeff cc;
  cc.subset = subset;
  cc.tensor = tensor;
  if (!tensor) {
    QChannel ti = restricted_channel(ch, subset);
    cc.d_constant = d_constant(party_dims(ch.in_layout(), subset), false);
    cc.choi_hs_norm = hs_norm(choi(ti).matrix());
    cc.lambda = cc.d_constant * cc.choi_hs_norm;
    return cc;
  }
  if (!ch.is_tensor_product()) throw InputError("tensor flag set but channel is not a declared tensor product");
  cc.d_constant = 1.0;
  cc.choi_hs_norm = 1.0;
  for (const auto& f : ch.factors()) {
    const Labels fin = f.in_layout().labels();
    bool inside = std::any_of(fin.begin(), fin.end(), [&](const std::string& l) {
      return std::find(subset.begin(), subset.end(), l) != subset.end();
    });
    if (!inside) {
      // Outside factors act on 1/|A_j| and contribute ||T_j(1/|A_j|)||_2.
      const int dj = f.in_layout().total_dim();
      cc.choi_hs_norm *= hs_norm(f.apply(identity(dj) / dj));
      continue;
    }
    if (fin.size() != 1) throw InputError("tensor constant needs one party per factor inside the subset");
    cc.d_constant *= d_constant(f.in_layout().dims(), true);
    cc.choi_hs_norm *= hs_norm(choi(f).matrix());
  }
  cc.lambda = cc.d_constant * cc.choi_hs_norm;
  return cc;
}

CollisionCheck collision_identity_check(const QChannel& ch) {
  if (!ch.unital()) throw InputError("collision identity requires a unital channel");
  MultiState tau = choi(ch);
  const int db = ch.out_layout().total_dim();
  CollisionCheck cc;
  cc.lhs = std::log2(static_cast<double>(db)) + std::log2((tau.matrix() * tau.matrix()).trace().real());
  EntropyValue h2 = renyi_sandwiched_fixed(tau, ch.in_layout().labels(), choi_output_labels(ch), 2.0,
                                           identity(db) / db);
  cc.rhs = -h2.value_bits;
  return cc;
}

}  // namespace qdec
