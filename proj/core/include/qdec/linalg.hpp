// Copyright 2026 The qdec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QDEC_LINALG_HPP
#define QDEC_LINALG_HPP

#include <complex>
#include <span>

#include <Eigen/Dense>

namespace qdec {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Eigenvalues below this are treated as zero by pseudo-inverses.
inline constexpr double kSupportCutoff = 1e-12;
/// Most negative eigenvalue accepted for a PSD operator.
inline constexpr double kPsdFloor = -1e-10;

struct EigenSystem {
  RealVector values;  // ascending
  Matrix vectors;     // columns
};

/// Eigendecomposition of the Hermitian part of m.
EigenSystem hermitian_eigen(const Matrix& m);

Matrix kron(const Matrix& a, const Matrix& b);
Matrix identity(int dim);
Matrix hermitian_part(const Matrix& m);
double hermitian_residual(const Matrix& m);

/// Applies f to the eigenvalues of the Hermitian matrix m.
template <typename F>
Matrix hermitian_function(const Matrix& m, F&& f) {
  EigenSystem es = hermitian_eigen(m);
  RealVector fv(es.values.size());
  for (Eigen::Index i = 0; i < es.values.size(); ++i) fv(i) = f(es.values(i));
  return es.vectors * fv.asDiagonal() * es.vectors.adjoint();
}

/// m^p for PSD m; eigenvalues below cutoff map to zero (pseudo-inverse for p < 0).
Matrix psd_power(const Matrix& m, double p, double cutoff = kSupportCutoff);
Matrix psd_sqrt(const Matrix& m);
/// Orthogonal projector onto eigenvectors with eigenvalue above cutoff.
Matrix support_projector(const Matrix& m, double cutoff = kSupportCutoff);
Matrix hermitian_exp(const Matrix& h);

double min_eigenvalue(const Matrix& m);
double max_eigenvalue(const Matrix& m);
/// Trace norm; uses eigenvalues when m is Hermitian, singular values otherwise.
double trace_norm(const Matrix& m);
double hs_norm(const Matrix& m);
/// Schatten p-norm, p >= 1, p = infinity allowed.
double schatten_norm(const Matrix& m, double p);
/// von Neumann entropy in bits of the eigenvalues.
double entropy_bits(const RealVector& eigenvalues);

/// Fixed-order pairwise sum; identical for identical input.
double pairwise_sum(std::span<const double> values);

}  // namespace qdec

#endif  // QDEC_LINALG_HPP
