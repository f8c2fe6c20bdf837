// Copyright 2026 The qdec Authors
// SPDX-License-Identifier: Apache-2.0

#include "qdec/sdp.hpp"

#include <cmath>
#include <algorithm>
#include <limits>

namespace qdec {
namespace {

struct BasisEntry {
  int i, j;
  Complex c;
};

// Orthonormal basis of Hermitian db x db matrices.
std::vector<std::vector<BasisEntry>> hermitian_basis(int db) {
  std::vector<std::vector<BasisEntry>> basis;
  const double r = 1.0 / std::sqrt(2.0);
  for (int i = 0; i < db; ++i) basis.push_back({{i, i, 1.0}});
  for (int i = 0; i < db; ++i) {
    for (int j = i + 1; j < db; ++j) {
      basis.push_back({{i, j, r}, {j, i, r}});
      basis.push_back({{i, j, Complex(0, -r)}, {j, i, Complex(0, r)}});
    }
  }
  return basis;
}

class Barrier {
 public:
  Barrier(const Matrix& rho, int da, int db) : rho_(rho), da_(da), db_(db), basis_(hermitian_basis(db)) {}

  std::size_t params() const { return basis_.size(); }

  Matrix sigma(const RealVector& x) const {
    Matrix s = Matrix::Zero(db_, db_);
    for (std::size_t a = 0; a < basis_.size(); ++a) {
      for (const auto& e : basis_[a]) s(e.i, e.j) += x(a) * e.c;
    }
    return s;
  }

  RealVector coords(const Matrix& s) const {
    RealVector x(basis_.size());
    for (std::size_t a = 0; a < basis_.size(); ++a) {
      Complex acc = 0.0;
      for (const auto& e : basis_[a]) acc += std::conj(e.c) * s(e.i, e.j);
      x(a) = acc.real();
    }
    return x;
  }

  Matrix slack(const Matrix& s) const { return kron(identity(da_), s) - rho_; }

  // t Tr sigma - log det S, or +inf outside the feasible cone.
  double value(const RealVector& x, double t) const {
    Matrix s = sigma(x);
    Eigen::LLT<Matrix> llt(hermitian_part(slack(s)));
    if (llt.info() != Eigen::Success) return std::numeric_limits<double>::infinity();
    const Matrix& l = llt.matrixL();
    double logdet = 0.0;
    for (Eigen::Index i = 0; i < l.rows(); ++i) {
      double d = l(i, i).real();
      if (!(d > 0.0)) return std::numeric_limits<double>::infinity();
      logdet += 2.0 * std::log(d);
    }
    return t * s.trace().real() - logdet;
  }

  Matrix inverse_slack(const RealVector& x) const {
    Matrix s = hermitian_part(slack(sigma(x)));
    Eigen::LLT<Matrix> llt(s);
    return hermitian_part(llt.solve(identity(static_cast<int>(s.rows()))));
  }

  Matrix partial_trace_a(const Matrix& z) const {
    Matrix w = Matrix::Zero(db_, db_);
    for (int a = 0; a < da_; ++a) w += z.block(a * db_, a * db_, db_, db_);
    return w;
  }

  void derivatives(const Matrix& z, double t, RealVector& grad, Eigen::MatrixXd& hess) const {
    const std::size_t n = basis_.size();
    Matrix w = partial_trace_a(z);
    grad.resize(n);
    for (std::size_t a = 0; a < n; ++a) {
      Complex tr = 0.0, wt = 0.0;
      for (const auto& e : basis_[a]) {
        if (e.i == e.j) tr += e.c;
        wt += e.c * w(e.j, e.i);
      }
      grad(a) = t * tr.real() - wt.real();
    }
    // K[(ij),(kl)] = Tr[Z (1 x |i><j|) Z (1 x |k><l|)].
    const int m = db_ * db_;
    Matrix k = Matrix::Zero(m, m);
    for (int a = 0; a < da_; ++a) {
      for (int ap = 0; ap < da_; ++ap) {
        auto z1 = z.block(ap * db_, a * db_, db_, db_);  // [l][i]
        auto z2 = z.block(a * db_, ap * db_, db_, db_);  // [j][k]
        for (int i = 0; i < db_; ++i) {
          for (int j = 0; j < db_; ++j) {
            for (int kk = 0; kk < db_; ++kk) {
              for (int l = 0; l < db_; ++l) k(i * db_ + j, kk * db_ + l) += z1(l, i) * z2(j, kk);
            }
          }
        }
      }
    }
    hess.resize(n, n);
    for (std::size_t a = 0; a < n; ++a) {
      for (std::size_t b = a; b < n; ++b) {
        Complex acc = 0.0;
        for (const auto& ea : basis_[a]) {
          for (const auto& eb : basis_[b]) acc += ea.c * eb.c * k(ea.i * db_ + ea.j, eb.i * db_ + eb.j);
        }
        hess(a, b) = hess(b, a) = acc.real();
      }
    }
  }

  // Rescales X = Z/t so that Tr_A X = 1_B exactly.
  Matrix dual_certificate(const Matrix& z, double t) const {
    Matrix x = z / t;
    Matrix y = partial_trace_a(x);
    Matrix yinv = kron(identity(da_), psd_power(y, -0.5, 0.0));
    return hermitian_part(yinv * x * yinv);
  }

 private:
  const Matrix& rho_;
  int da_, db_;
  std::vector<std::vector<BasisEntry>> basis_;
};

}  // namespace

SdpSolution solve_dominating_trace_min(const Matrix& rho_ab, int da, int db, const SdpOptions& opts) {
  if (da < 1 || db < 1 || rho_ab.rows() != da * db || rho_ab.cols() != da * db) {
    throw InputError("sdp: operator shape does not match A and B dimensions");
  }
  if (!(opts.tol >= 1e-10 && opts.tol <= 1e-4)) throw InputError("sdp: tolerance must lie in [1e-10, 1e-4]");
  if (min_eigenvalue(rho_ab) < kPsdFloor) throw InputError("sdp: input is not positive semidefinite");

  const Matrix rho = hermitian_part(rho_ab);
  Barrier barrier(rho, da, db);
  const double lmax = std::max(0.0, max_eigenvalue(rho));
  RealVector x = barrier.coords((lmax + std::max(opts.tol, 1e-6 * (lmax + 1e-300)) + 1e-12) * identity(db));
  const double n_total = static_cast<double>(da) * db;
  double t = n_total / std::max(barrier.sigma(x).trace().real(), 1e-12);

  SdpSolution sol;
  RealVector grad;
  Eigen::MatrixXd hess;
  for (int outer = 0; outer < opts.max_outer; ++outer) {
    for (int it = 0; it < opts.max_newton; ++it) {
      Matrix z = barrier.inverse_slack(x);
      barrier.derivatives(z, t, grad, hess);
      RealVector step = hess.ldlt().solve(-grad);
      double decrement = -grad.dot(step);
      ++sol.iterations;
      if (!(decrement > 1e-14)) break;
      double f0 = barrier.value(x, t);
      double s = 1.0;
      while (s > 1e-16) {
        double f1 = barrier.value(x + s * step, t);
        if (std::isfinite(f1) && f1 <= f0 - 0.25 * s * decrement) break;
        s *= 0.5;
      }
      if (s <= 1e-16) break;
      x += s * step;
      if (0.5 * decrement < 1e-11) break;
    }
    Matrix z = barrier.inverse_slack(x);
    Matrix xs = barrier.dual_certificate(z, t);
    Matrix sig = hermitian_part(barrier.sigma(x));
    sol.sigma_star = sig;
    sol.primal_value = sig.trace().real();
    sol.dual_certificate = xs;
    sol.dual_value = (rho * xs).trace().real();
    sol.gap = sol.primal_value - sol.dual_value;
    if (sol.gap <= opts.tol) {
      sol.converged = true;
      break;
    }
    t *= 10.0;
  }
  return sol;
}

SdpSolution solve_dominating_trace_min(const MultiState& rho, const Labels& a, const Labels& b,
                                       const SdpOptions& opts) {
  Labels ab = a;
  ab.insert(ab.end(), b.begin(), b.end());
  Matrix ordered = marginal_matrix(rho.layout(), rho.matrix(), ab);
  return solve_dominating_trace_min(ordered, rho.layout().dim_of(a), rho.layout().dim_of(b), opts);
}

}  // namespace qdec
