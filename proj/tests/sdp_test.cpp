// Copyright 2026 The qdec Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qdec/randomu.hpp"
#include "qdec/sdp.hpp"

namespace qdec {
namespace {

// Classical states: min Tr sigma = sum_b max_a p(a, b).
double classical_optimum(const Eigen::MatrixXd& p) {
  double s = 0.0;
  for (Eigen::Index b = 0; b < p.cols(); ++b) s += p.col(b).maxCoeff();
  return s;
}

void expect_certified(const SdpSolution& s, const Matrix& rho, int da, int db) {
  EXPECT_TRUE(s.converged);
  EXPECT_GE(s.gap, 0.0);
  EXPECT_LE(s.gap, 1e-7);
  EXPECT_LE(s.dual_value, s.primal_value + 1e-12);
  Matrix slack = kron(identity(da), s.sigma_star) - rho;
  EXPECT_GE(oracle::eigenvalues(slack).minCoeff(), -1e-8);
  EXPECT_GE(oracle::eigenvalues(s.dual_certificate).minCoeff(), -1e-10);
  std::vector<bool> keep_b = {false, true};
  Matrix xb = oracle::partial_trace(s.dual_certificate, {da, db}, keep_b);
  EXPECT_LT((xb - Matrix::Identity(db, db)).cwiseAbs().maxCoeff(), 1e-9);
  EXPECT_NEAR(s.dual_value, (s.dual_certificate * rho).trace().real(), 1e-10);
}

TEST(SdpTest, MaximallyEntangled) {
  for (int d = 2; d <= 4; ++d) {
    Matrix rho = maximally_entangled(d).density().matrix();
    SdpSolution s = solve_dominating_trace_min(rho, d, d);
    EXPECT_NEAR(s.primal_value, d, 1e-7 * d);
    EXPECT_LT((s.sigma_star - Matrix::Identity(d, d)).cwiseAbs().maxCoeff(), 1e-4);
    expect_certified(s, rho, d, d);
  }
}

TEST(SdpTest, ProductAndMaximallyMixed) {
  CounterRng rng(1);
  Matrix ra = random_mixed_state(SystemLayout({{"A", 3}}), 0, rng).matrix();
  Matrix wb = random_mixed_state(SystemLayout({{"B", 2}}), 0, rng).matrix();
  Matrix rho = kron(ra, wb);
  SdpSolution s = solve_dominating_trace_min(rho, 3, 2);
  EXPECT_NEAR(s.primal_value, oracle::eigenvalues(ra).maxCoeff(), 1e-8);
  expect_certified(s, rho, 3, 2);
  Matrix mix = Matrix::Identity(6, 6) / 6.0;
  EXPECT_NEAR(solve_dominating_trace_min(mix, 3, 2).primal_value, 1.0 / 3.0, 1e-8);
}

TEST(SdpTest, ClassicalDistributions) {
  CounterRng rng(2);
  for (int t = 0; t < 10; ++t) {
    Eigen::MatrixXd p(3, 2);
    for (Eigen::Index i = 0; i < p.size(); ++i) p(i) = rng.uniform() + 0.01;
    p /= p.sum();
    Matrix rho = Matrix::Zero(6, 6);
    for (int a = 0; a < 3; ++a) {
      for (int b = 0; b < 2; ++b) rho(a * 2 + b, a * 2 + b) = p(a, b);
    }
    SdpSolution s = solve_dominating_trace_min(rho, 3, 2);
    EXPECT_NEAR(s.primal_value, classical_optimum(p), 1e-8);
    expect_certified(s, rho, 3, 2);
  }
}

TEST(SdpTest, InvariantUnderLocalUnitaries) {
  CounterRng rng(3);
  MultiState rho = random_mixed_state(SystemLayout({{"A", 2}, {"B", 2}}), 0, rng);
  Matrix ua = haar_unitary(2, rng), ub = haar_unitary(2, rng);
  Matrix u = kron(ua, ub);
  double v0 = solve_dominating_trace_min(rho.matrix(), 2, 2).primal_value;
  double v1 = solve_dominating_trace_min(u * rho.matrix() * u.adjoint(), 2, 2).primal_value;
  EXPECT_NEAR(v0, v1, 1e-7);
}

TEST(SdpTest, MonotoneUnderPsdIncrement) {
  CounterRng rng(4);
  Matrix rho = random_mixed_state(SystemLayout({{"A", 2}, {"B", 2}}), 0, rng).matrix();
  Matrix inc = random_mixed_state(SystemLayout({{"A", 2}, {"B", 2}}), 1, rng).matrix() * 0.3;
  double v0 = solve_dominating_trace_min(rho, 2, 2).primal_value;
  double v1 = solve_dominating_trace_min(rho + inc, 2, 2).primal_value;
  EXPECT_GE(v1, v0 - 1e-8);
  EXPECT_GE(v0, 0.5 - 1e-8);  // at least Tr rho / |A|
}

TEST(SdpTest, LabelledOverloadAndErrors) {
  MultiState phi = maximally_entangled(2, "A", "B").density();
  SdpSolution s = solve_dominating_trace_min(phi, Labels{"B"}, Labels{"A"});
  EXPECT_NEAR(s.primal_value, 2.0, 1e-7);
  EXPECT_THROW(solve_dominating_trace_min(Matrix::Identity(3, 3), 2, 2), InputError);
}

TEST(SdpTest, RankDeficientInput) {
  // Pure product state: value 1.
  Matrix rho = Matrix::Zero(4, 4);
  rho(0, 0) = 1.0;
  SdpSolution s = solve_dominating_trace_min(rho, 2, 2);
  EXPECT_NEAR(s.primal_value, 1.0, 1e-7);
  expect_certified(s, rho, 2, 2);
}

}  // namespace
}  // namespace qdec
