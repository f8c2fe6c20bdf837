// Copyright 2026 The qdec Authors
// SPDX-License-Identifier: Apache-2.0

#include "qdec/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace qdec {

EigenSystem hermitian_eigen(const Matrix& m) {
  Eigen::SelfAdjointEigenSolver<Matrix> solver(hermitian_part(m));
  return {solver.eigenvalues(), solver.eigenvectors()};
}

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Matrix identity(int dim) { return Matrix::Identity(dim, dim); }

Matrix hermitian_part(const Matrix& m) { return 0.5 * (m + m.adjoint()); }

double hermitian_residual(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

Matrix psd_power(const Matrix& m, double p, double cutoff) {
  return hermitian_function(m, [&](double x) { return x > cutoff ? std::pow(x, p) : 0.0; });
}

Matrix psd_sqrt(const Matrix& m) {
  return hermitian_function(m, [](double x) { return x > 0.0 ? std::sqrt(x) : 0.0; });
}

Matrix support_projector(const Matrix& m, double cutoff) {
  return hermitian_function(m, [&](double x) { return x > cutoff ? 1.0 : 0.0; });
}

Matrix hermitian_exp(const Matrix& h) {
  return hermitian_function(h, [](double x) { return std::exp(x); });
}

double min_eigenvalue(const Matrix& m) { return hermitian_eigen(m).values.minCoeff(); }

double max_eigenvalue(const Matrix& m) { return hermitian_eigen(m).values.maxCoeff(); }

double trace_norm(const Matrix& m) {
  if (m.rows() == m.cols() && hermitian_residual(m) <= 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff())) {
    return hermitian_eigen(m).values.cwiseAbs().sum();
  }
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues().sum();
}

double hs_norm(const Matrix& m) { return m.norm(); }

double schatten_norm(const Matrix& m, double p) {
  RealVector s;
  if (m.rows() == m.cols() && hermitian_residual(m) <= 1e-12 * std::max(1.0, m.cwiseAbs().maxCoeff())) {
    s = hermitian_eigen(m).values.cwiseAbs();
  } else {
    s = Eigen::JacobiSVD<Matrix>(m).singularValues();
  }
  if (std::isinf(p)) return s.size() ? s.maxCoeff() : 0.0;
  double acc = 0.0;
  for (Eigen::Index i = 0; i < s.size(); ++i) acc += std::pow(s(i), p);
  return std::pow(acc, 1.0 / p);
}

double entropy_bits(const RealVector& eigenvalues) {
  double h = 0.0;
  for (Eigen::Index i = 0; i < eigenvalues.size(); ++i) {
    double x = eigenvalues(i);
    if (x > kSupportCutoff) h -= x * std::log2(x);
  }
  return h;
}

double pairwise_sum(std::span<const double> values) {
  if (values.size() <= 8) {
    double acc = 0.0;
    for (double v : values) acc += v;
    return acc;
  }
  std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace qdec
