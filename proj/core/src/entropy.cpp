// Copyright 2026 The qdec Authors
// SPDX-License-Identifier: Apache-2.0

#include "qdec/entropy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qdec/randomu.hpp"

namespace qdec {
namespace {

const std::string kPurifier = "qdec.purifier";

Labels concat(Labels a, const Labels& b) {
  a.insert(a.end(), b.begin(), b.end());
  return a;
}

struct Bipartite {
  Matrix m;
  int da = 1;
  int db = 1;
};

Bipartite bipartite(const MultiState& rho, const Labels& a, const Labels& b) {
  if (a.empty()) throw InputError("entropy needs a nonempty A");
  for (const auto& l : a) {
    if (std::find(b.begin(), b.end(), l) != b.end()) throw InputError("A and B overlap at " + l);
  }
  return {marginal_matrix(rho.layout(), rho.matrix(), concat(a, b)), rho.layout().dim_of(a), rho.layout().dim_of(b)};
}

Matrix partial_trace_first(const Matrix& m, int da, int db) {
  Matrix out = Matrix::Zero(db, db);
  for (int i = 0; i < da; ++i) out += m.block(i * db, i * db, db, db);
  return out;
}

Matrix partial_trace_second(const Matrix& m, int da, int db) {
  Matrix out(da, da);
  for (int i = 0; i < da; ++i) {
    for (int j = 0; j < da; ++j) out(i, j) = m.block(i * db, j * db, db, db).trace();
  }
  return out;
}

double hmin_unconditional(const Matrix& m) { return -std::log2(max_eigenvalue(m)); }

EntropyValue base_value(EntropyKind kind, const Labels& a, const Labels& b) {
  EntropyValue v;
  v.kind = kind;
  v.a = a;
  v.b = b;
  return v;
}

// Hermitian basis coordinates for the sigma parametrization.
std::vector<Matrix> hermitian_basis_matrices(int d) {
  std::vector<Matrix> basis;
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < d; ++i) {
    Matrix e = Matrix::Zero(d, d);
    e(i, i) = 1.0;
    basis.push_back(e);
  }
  for (int i = 0; i < d; ++i) {
    for (int j = i + 1; j < d; ++j) {
      Matrix s = Matrix::Zero(d, d), t = Matrix::Zero(d, d);
      s(i, j) = s(j, i) = r;
      t(i, j) = Complex(0, -r);
      t(j, i) = Complex(0, r);
      basis.push_back(s);
      basis.push_back(t);
    }
  }
  return basis;
}

Matrix sigma_from_params(const std::vector<Matrix>& basis, const RealVector& x) {
  Matrix h = Matrix::Zero(basis[0].rows(), basis[0].cols());
  for (std::size_t k = 0; k < basis.size(); ++k) h += x(k) * basis[k];
  h = hermitian_part(h);
  double shift = max_eigenvalue(h);
  Matrix e = hermitian_exp(h - shift * identity(static_cast<int>(h.rows())));
  return e / e.trace().real();
}

RealVector params_from_log(const std::vector<Matrix>& basis, const Matrix& h) {
  RealVector x(basis.size());
  for (std::size_t k = 0; k < basis.size(); ++k) x(k) = (basis[k].adjoint() * h).trace().real();
  return x;
}

// Minimizes f by BFGS with central-difference gradients.
template <typename F>
RealVector bfgs_minimize(F&& f, RealVector x, int max_iter, double* fx_out) {
  const Eigen::Index n = x.size();
  const double h = 1e-6;
  auto gradient = [&](const RealVector& p) {
    RealVector g(n);
    RealVector q = p;
    for (Eigen::Index i = 0; i < n; ++i) {
      q(i) = p(i) + h;
      double fp = f(q);
      q(i) = p(i) - h;
      double fm = f(q);
      q(i) = p(i);
      g(i) = (fp - fm) / (2 * h);
    }
    return g;
  };
  double fx = f(x);
  RealVector g = gradient(x);
  Eigen::MatrixXd hinv = Eigen::MatrixXd::Identity(n, n);
  int stalls = 0;
  for (int it = 0; it < max_iter; ++it) {
    if (g.lpNorm<Eigen::Infinity>() < 1e-10) break;
    RealVector p = -hinv * g;
    double slope = g.dot(p);
    if (slope >= 0) {
      hinv.setIdentity();
      p = -g;
      slope = -g.squaredNorm();
    }
    double step = 1.0;
    double fnew = fx;
    RealVector xnew = x;
    bool accepted = false;
    for (int ls = 0; ls < 50; ++ls) {
      xnew = x + step * p;
      fnew = f(xnew);
      if (std::isfinite(fnew) && fnew <= fx + 1e-4 * step * slope) {
        accepted = true;
        break;
      }
      step *= 0.5;
    }
    if (!accepted) break;
    RealVector gnew = gradient(xnew);
    RealVector s = xnew - x, y = gnew - g;
    double sy = s.dot(y);
    if (sy > 1e-16) {
      double rho = 1.0 / sy;
      Eigen::MatrixXd eye = Eigen::MatrixXd::Identity(n, n);
      hinv = (eye - rho * s * y.transpose()) * hinv * (eye - rho * y * s.transpose()) + rho * s * s.transpose();
    }
    double improvement = fx - fnew;
    x = xnew;
    fx = fnew;
    g = gnew;
    stalls = improvement < 1e-15 ? stalls + 1 : 0;
    if (stalls >= 3) break;
  }
  if (fx_out) *fx_out = fx;
  return x;
}

double fixed_value(const Bipartite& bp, double alpha, const Matrix& sigma, bool* neg_inf) {
  return sandwiched_conditional(bp.m, bp.da, bp.db, alpha, sigma, neg_inf);
}

}  // namespace

std::string to_string(EntropyKind k) {
  switch (k) {
    case EntropyKind::von_neumann: return "von_neumann";
    case EntropyKind::conditional_von_neumann: return "conditional_von_neumann";
    case EntropyKind::renyi_fixed: return "renyi_fixed";
    case EntropyKind::renyi_optimized: return "renyi_optimized";
    case EntropyKind::hmin: return "hmin";
    case EntropyKind::hmax: return "hmax";
    case EntropyKind::hmin_smooth: return "hmin_smooth";
    case EntropyKind::hmax_smooth: return "hmax_smooth";
    case EntropyKind::coherent_information: return "coherent_information";
  }
  return "unknown";
}

std::string to_string(Certification c) {
  switch (c) {
    case Certification::exact: return "exact";
    case Certification::lower_bound: return "lower_bound";
    case Certification::upper_bound: return "upper_bound";
  }
  return "unknown";
}

double negative_part(double x) { return std::min(x, 0.0); }

EntropyValue von_neumann(const MultiState& rho, const Labels& a) {
  EntropyValue v = base_value(EntropyKind::von_neumann, a, {});
  Matrix m = marginal_matrix(rho.layout(), rho.matrix(), a);
  v.value_bits = entropy_bits(hermitian_eigen(m).values);
  return v;
}

EntropyValue cond_von_neumann(const MultiState& rho, const Labels& a, const Labels& b) {
  EntropyValue v = base_value(EntropyKind::conditional_von_neumann, a, b);
  Bipartite bp = bipartite(rho, a, b);
  double sab = entropy_bits(hermitian_eigen(bp.m).values);
  double sb = b.empty() ? 0.0 : entropy_bits(hermitian_eigen(partial_trace_first(bp.m, bp.da, bp.db)).values);
  v.value_bits = sab - sb;
  return v;
}

EntropyValue coherent_information(const MultiState& rho, const Labels& a, const Labels& b) {
  EntropyValue v = cond_von_neumann(rho, a, b);
  v.kind = EntropyKind::coherent_information;
  v.value_bits = -v.value_bits;
  return v;
}

double sandwiched_conditional(const Matrix& rho_ab, int da, int db, double alpha, const Matrix& sigma_b,
                              bool* neg_infinity) {
  if (!(alpha >= 0.5)) throw InputError("Renyi order must be >= 1/2");
  if (sigma_b.rows() != db || sigma_b.cols() != db) throw InputError("sigma_B dimension mismatch");
  if (neg_infinity) *neg_infinity = false;
  auto fail = [&] {
    if (neg_infinity) *neg_infinity = true;
    return kNegInfinityBits;
  };
  const Matrix rho = hermitian_part(rho_ab);
  const Matrix id_a = identity(da);
  const double scale = std::max(1e-300, rho.trace().real());

  auto support_ok = [&] {
    Matrix pi = kron(id_a, support_projector(sigma_b));
    return (rho - pi * rho * pi).cwiseAbs().maxCoeff() <= 1e-10 * std::max(1.0, scale);
  };

  if (alpha == 1.0) {
    if (!support_ok()) return fail();
    EigenSystem es = hermitian_eigen(rho);
    double s = entropy_bits(es.values);
    Matrix log_sigma = hermitian_function(sigma_b, [](double x) { return x > kSupportCutoff ? std::log2(x) : 0.0; });
    double cross = (rho * kron(id_a, log_sigma)).trace().real();
    return s + cross;
  }
  if (std::isinf(alpha)) {
    if (!support_ok()) return fail();
    Matrix s = kron(id_a, psd_power(sigma_b, -0.5));
    return -std::log2(max_eigenvalue(s * rho * s));
  }
  if (alpha > 1.0 && !support_ok()) return fail();
  const double p = (1.0 - alpha) / (2.0 * alpha);
  Matrix s = kron(id_a, psd_power(sigma_b, p));
  EigenSystem es = hermitian_eigen(s * rho * s);
  double q = 0.0;
  for (Eigen::Index i = 0; i < es.values.size(); ++i) {
    if (es.values(i) > 0.0) q += std::pow(es.values(i), alpha);
  }
  if (!(q > 0.0)) return fail();
  return std::log2(q) / (1.0 - alpha);
}

EntropyValue renyi_sandwiched_fixed(const MultiState& rho, const Labels& a, const Labels& b, double alpha,
                                    const Matrix& sigma_b) {
  EntropyValue v = base_value(EntropyKind::renyi_fixed, a, b);
  v.alpha = alpha;
  v.sigma = "explicit";
  Bipartite bp = bipartite(rho, a, b);
  Matrix sigma = b.empty() ? Matrix::Identity(1, 1) : sigma_b;
  v.value_bits = fixed_value(bp, alpha, sigma, &v.neg_infinity);
  v.achiever = sigma;
  return v;
}

EntropyValue renyi_optimized(const MultiState& rho, const Labels& a, const Labels& b, double alpha,
                             const RenyiOptions& opts) {
  EntropyValue v = base_value(EntropyKind::renyi_optimized, a, b);
  v.alpha = alpha;
  v.sigma = "optimized";
  v.certified = Certification::lower_bound;
  Bipartite bp = bipartite(rho, a, b);
  if (bp.db == 1) {
    v.value_bits = fixed_value(bp, alpha, Matrix::Identity(1, 1), &v.neg_infinity);
    v.achiever = Matrix::Identity(1, 1);
    v.certified = Certification::exact;
    return v;
  }
  const Matrix rho_b = partial_trace_first(bp.m, bp.da, bp.db);
  // sigma = rho_B itself.
  bool ninf = false;
  double best = fixed_value(bp, alpha, rho_b, &ninf);
  if (ninf) best = -std::numeric_limits<double>::infinity();
  Matrix best_sigma = rho_b;

  const std::vector<Matrix> basis = hermitian_basis_matrices(bp.db);
  auto objective = [&](const RealVector& x) { return -fixed_value(bp, alpha, sigma_from_params(basis, x), nullptr); };

  std::vector<RealVector> starts;
  Matrix reg = rho_b + 1e-9 * identity(bp.db);
  starts.push_back(params_from_log(basis, hermitian_function(reg, [](double x) { return std::log(x); })));
  CounterRng rng(opts.seed, 0x5EED);
  for (int r = 0; r < opts.restarts; ++r) {
    RealVector x(basis.size());
    for (Eigen::Index k = 0; k < x.size(); ++k) x(k) = rng.normal();
    starts.push_back(x);
  }
  for (const auto& x0 : starts) {
    double fx = 0.0;
    RealVector x = bfgs_minimize(objective, x0, opts.max_iterations, &fx);
    Matrix sigma = sigma_from_params(basis, x);
    double val = fixed_value(bp, alpha, sigma, &ninf);
    if (!ninf && val > best) {
      best = val;
      best_sigma = sigma;
    }
  }
  v.value_bits = std::isfinite(best) ? best : kNegInfinityBits;
  v.neg_infinity = !std::isfinite(best);
  v.achiever = best_sigma;
  return v;
}

EntropyValue hmin(const MultiState& rho, const Labels& a, const Labels& b, const SdpOptions& opts) {
  EntropyValue v = base_value(EntropyKind::hmin, a, b);
  v.sigma = "optimized";
  Bipartite bp = bipartite(rho, a, b);
  if (b.empty()) {
    v.value_bits = hmin_unconditional(bp.m);
    v.achiever = Matrix::Identity(1, 1);
    return v;
  }
  SdpSolution sol = solve_dominating_trace_min(bp.m, bp.da, bp.db, opts);
  if (!sol.converged) {
    throw NumericalError("min-entropy SDP did not converge (gap " + std::to_string(sol.gap) + ")");
  }
  v.value_bits = -std::log2(sol.primal_value);
  v.achiever = sol.sigma_star;
  v.certified = Certification::lower_bound;
  v.sdp_gap = sol.gap;
  return v;
}

EntropyValue hmax(const MultiState& rho, const Labels& a, const Labels& b, const SdpOptions& opts) {
  EntropyValue v = base_value(EntropyKind::hmax, a, b);
  v.sigma = "optimized";
  Bipartite bp = bipartite(rho, a, b);
  if (b.empty()) {
    double s = 0.0;
    EigenSystem es = hermitian_eigen(bp.m);
    for (Eigen::Index i = 0; i < es.values.size(); ++i) s += std::sqrt(std::max(0.0, es.values(i)));
    v.value_bits = 2.0 * std::log2(s);
    return v;
  }
  SystemLayout layout({{"A", bp.da}, {"B", bp.db}});
  PureState psi = purify(MultiState::trusted(layout, bp.m), kPurifier);
  EntropyValue dual = hmin(psi.density(), {"A"}, {kPurifier}, opts);
  v.value_bits = -dual.value_bits;
  v.certified = Certification::upper_bound;
  v.sdp_gap = dual.sdp_gap;
  return v;
}

namespace {

struct SmoothResult {
  double value;
  Matrix state;
  double gap;
};

class SmoothSearch {
 public:
  SmoothSearch(const Bipartite& bp, const SmoothingOptions& opts) : bp_(bp), opts_(opts) {
    rho_b_ = partial_trace_first(bp.m, bp.da, bp.db);
  }

  SmoothResult run(double eps, const std::optional<Matrix>& seed_state) {
    best_ = evaluate(bp_.m).value();
    if (eps <= 0.0) return best_;
    if (seed_state && within(*seed_state, eps)) consider(*seed_state);
    consider(mixing_candidate(eps));
    consider(clipping_candidate(eps));
    std::vector<Matrix> sigmas{rho_b_};
    if (bp_.db > 1) {
      SdpSolution sol = solve_dominating_trace_min(bp_.m, bp_.da, bp_.db, opts_.sdp);
      if (sol.converged) sigmas.push_back(sol.sigma_star / sol.sigma_star.trace().real());
    }
    for (const Matrix& sigma : sigmas) {
      for (bool fill : {false, true}) consider(dominated_candidate(eps, sigma, fill));
    }
    local_search(eps);
    return best_;
  }

 private:
  std::optional<SmoothResult> evaluate(const Matrix& omega) {
    Matrix w = hermitian_part(omega);
    if (bp_.db == 1) return SmoothResult{hmin_unconditional(w), w, 0.0};
    SdpSolution sol = solve_dominating_trace_min(w, bp_.da, bp_.db, opts_.sdp);
    if (!sol.converged) return std::nullopt;
    return SmoothResult{-std::log2(sol.primal_value), w, sol.gap};
  }

  bool within(const Matrix& omega, double eps) const { return purified_distance(bp_.m, omega) <= eps; }

  void consider(const Matrix& omega) {
    auto r = evaluate(omega);
    if (r && r->value > best_.value) best_ = *r;
  }

  template <typename Family>
  Matrix largest_step(const Family& family, double lo, double hi, double eps, bool increasing) const {
    // Bisection for the parameter furthest from rho that stays in the ball.
    if (increasing && within(family(hi), eps)) return family(hi);
    if (!increasing && within(family(lo), eps)) return family(lo);
    for (int it = 0; it < 60; ++it) {
      double mid = 0.5 * (lo + hi);
      bool in = within(family(mid), eps);
      if (increasing == in) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return family(increasing ? lo : hi);
  }

  Matrix mixing_candidate(double eps) const {
    Matrix target = kron(identity(bp_.da) / bp_.da, rho_b_);
    auto family = [&](double p) { return Matrix((1.0 - p) * bp_.m + p * target); };
    return largest_step(family, 0.0, 1.0, eps, true);
  }

  Matrix clipping_candidate(double eps) const {
    Matrix half = kron(identity(bp_.da), psd_sqrt(rho_b_));
    Matrix inv_half = kron(identity(bp_.da), psd_power(rho_b_, -0.5));
    EigenSystem es = hermitian_eigen(inv_half * bp_.m * inv_half);
    const double top = std::max(0.0, es.values.maxCoeff());
    auto family = [&](double c) {
      RealVector clipped = es.values.cwiseMax(0.0).cwiseMin(c);
      Matrix w = half * es.vectors * clipped.asDiagonal() * es.vectors.adjoint() * half;
      double tr = w.trace().real();
      return tr > 0.0 ? Matrix(w / tr) : Matrix(bp_.m);
    };
    return largest_step(family, 0.0, top, eps, false);
  }

  // Cuts rho below t (1 (x) sigma) via G rho G^+ with G = sqrt(tS) (tS + (rho - tS)_+)^{-1/2}.
  // The lost weight is either renormalized away or refilled with 1/|A| (x) sigma.
  Matrix dominated_candidate(double eps, const Matrix& sigma, bool fill) const {
    const Matrix sig = (sigma + 1e-10 * identity(bp_.db)) / (1.0 + 1e-10 * bp_.db);
    const Matrix big_s = kron(identity(bp_.da), sig);
    const Matrix inv_half = kron(identity(bp_.da), psd_power(sig, -0.5));
    const double top = std::max(0.0, hermitian_eigen(inv_half * bp_.m * inv_half).values.maxCoeff());
    const Matrix fill_state = kron(identity(bp_.da) / bp_.da, sig);
    auto family = [&](double t) {
      const Matrix ts = t * big_s;
      EigenSystem es = hermitian_eigen(bp_.m - ts);
      const Matrix excess = es.vectors * es.values.cwiseMax(0.0).asDiagonal() * es.vectors.adjoint();
      const Matrix g = psd_sqrt(ts) * psd_power(hermitian_part(ts + excess), -0.5);
      Matrix w = hermitian_part(g * bp_.m * g.adjoint());
      const double tr = w.trace().real();
      if (!(tr > 0.0)) return Matrix(bp_.m);
      if (fill) return Matrix(w + (1.0 - tr) * fill_state);
      return Matrix(w / tr);
    };
    return largest_step(family, 1e-6 * top, top, eps, false);
  }

  void local_search(double eps) {
    const int n = bp_.da * bp_.db;
    CounterRng rng(opts_.seed, 0x500F);
    double step = 0.5 * eps;
    int evaluations = 0;
    for (int proposals = 0; proposals < 4 * opts_.budget && evaluations < opts_.budget; ++proposals) {
      Vector phi = purification_of(best_.state);
      Vector g(phi.size());
      for (Eigen::Index i = 0; i < g.size(); ++i) g(i) = rng.complex_normal();
      g /= g.norm();
      Vector cand = phi + step * g;
      cand /= cand.norm();
      Matrix omega = Matrix::Zero(n, n);
      for (int r = 0; r < n; ++r) {
        Vector col(n);
        for (int i = 0; i < n; ++i) col(i) = cand(i * n + r);
        omega += col * col.adjoint();
      }
      if (!within(omega, eps)) {
        step *= 0.7;
        continue;
      }
      ++evaluations;
      auto r = evaluate(omega);
      if (r && r->value > best_.value + 1e-12) {
        best_ = *r;
        step *= 1.5;
      } else {
        step *= 0.7;
      }
      step = std::clamp(step, 1e-4 * eps, 2.0 * eps);
    }
  }

  // Purification on AB (x) R with |R| = |AB|.
  Vector purification_of(const Matrix& omega) const {
    const int n = bp_.da * bp_.db;
    EigenSystem es = hermitian_eigen(omega);
    Vector v = Vector::Zero(static_cast<Eigen::Index>(n) * n);
    for (int k = 0; k < n; ++k) {
      double w = std::sqrt(std::max(0.0, es.values(k)));
      for (int i = 0; i < n; ++i) v(i * n + k) = w * es.vectors(i, k);
    }
    return v / v.norm();
  }

  const Bipartite& bp_;
  SmoothingOptions opts_;
  Matrix rho_b_;
  SmoothResult best_{};
};

EntropyValue smooth_value(const Bipartite& bp, const Labels& a, const Labels& b, double eps,
                          const SmoothingOptions& opts, const std::optional<Matrix>& seed_state) {
  if (eps < 0.0 || eps >= 1.0) throw InputError("smoothing parameter must lie in [0, 1)");
  EntropyValue v = base_value(EntropyKind::hmin_smooth, a, b);
  v.epsilon = eps;
  v.sigma = "optimized";
  v.certified = Certification::lower_bound;
  SmoothSearch search(bp, opts);
  SmoothResult r = search.run(eps, seed_state);
  v.value_bits = r.value;
  v.achiever = r.state;
  v.sdp_gap = r.gap;
  return v;
}

}  // namespace

EntropyValue hmin_smooth(const MultiState& rho, const Labels& a, const Labels& b, double eps,
                         const SmoothingOptions& opts) {
  return smooth_value(bipartite(rho, a, b), a, b, eps, opts, std::nullopt);
}

std::vector<EntropyValue> hmin_smooth_sequence(const MultiState& rho, const Labels& a, const Labels& b,
                                               const std::vector<double>& eps, const SmoothingOptions& opts) {
  if (!std::is_sorted(eps.begin(), eps.end())) throw InputError("smoothing sequence must be nondecreasing");
  Bipartite bp = bipartite(rho, a, b);
  std::vector<EntropyValue> out;
  std::optional<Matrix> prev;
  for (double e : eps) {
    EntropyValue v = smooth_value(bp, a, b, e, opts, prev);
    if (!out.empty() && v.value_bits < out.back().value_bits) {
      v.value_bits = out.back().value_bits;
      v.achiever = out.back().achiever;
    }
    prev = v.achiever;
    out.push_back(v);
  }
  return out;
}

EntropyValue hmax_smooth(const MultiState& rho, const Labels& a, const Labels& b, double eps,
                         const SmoothingOptions& opts) {
  Bipartite bp = bipartite(rho, a, b);
  SystemLayout layout({{"A", bp.da}, {"B", bp.db}});
  PureState psi = purify(MultiState::trusted(layout, bp.m), kPurifier);
  MultiState rho_ac = partial_trace(psi.density(), {"A", kPurifier});
  EntropyValue dual = hmin_smooth(rho_ac, {"A"}, {kPurifier}, eps, opts);
  EntropyValue v = base_value(EntropyKind::hmax_smooth, a, b);
  v.epsilon = eps;
  v.sigma = "optimized";
  v.value_bits = -dual.value_bits;
  v.certified = Certification::upper_bound;
  v.sdp_gap = dual.sdp_gap;
  return v;
}

}  // namespace qdec
