// Copyright 2026 The qdec Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <set>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qdec/randomu.hpp"

namespace qdec {
namespace {

double unitarity_error(const Matrix& u) {
  return (u.adjoint() * u - Matrix::Identity(u.cols(), u.cols())).cwiseAbs().maxCoeff();
}

TEST(CounterRngTest, DeterministicAndStreamIndependent) {
  CounterRng a(42, 3), b(42, 3), c(42, 4);
  bool differs = false;
  for (int i = 0; i < 100; ++i) {
    auto x = a(), y = b(), z = c();
    EXPECT_EQ(x, y);
    differs = differs || x != z;
  }
  EXPECT_TRUE(differs);
  CounterRng u(7);
  double mean = 0.0;
  for (int i = 0; i < 10000; ++i) {
    double x = u.uniform();
    ASSERT_GE(x, 0.0);
    ASSERT_LT(x, 1.0);
    mean += x / 10000;
  }
  EXPECT_NEAR(mean, 0.5, 0.02);
  CounterRng w(8);
  std::vector<int> counts(3, 0);
  for (int i = 0; i < 3000; ++i) counts[w.below(3)]++;
  for (int c3 : counts) EXPECT_NEAR(c3, 1000, 120);
  EXPECT_NE(derive_stream(0, 1), derive_stream(1, 0));
}

TEST(HaarTest, UnitaryAndDeterministic) {
  for (int d : {1, 2, 3, 5}) {
    CounterRng r1(9), r2(9);
    Matrix u = haar_unitary(d, r1), v = haar_unitary(d, r2);
    EXPECT_LT(unitarity_error(u), 1e-12);
    EXPECT_EQ((u - v).cwiseAbs().maxCoeff(), 0.0);
  }
  CounterRng r(10);
  EXPECT_NEAR(std::abs(haar_unitary(1, r)(0, 0)), 1.0, 1e-15);
}

TEST(HaarTest, FirstMoment) {
  CounterRng r(11);
  Matrix rho = Matrix::Zero(2, 2);
  rho(0, 0) = 1.0;
  Matrix acc = Matrix::Zero(2, 2);
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    Matrix u = haar_unitary(2, r);
    acc += u * rho * u.adjoint() / n;
  }
  EXPECT_LT(0.5 * oracle::trace_norm(acc - Matrix::Identity(2, 2) / 2.0), 0.02);
}

TEST(HaarTest, OverlapMoment) {
  CounterRng r(12);
  MultiState x = random_mixed_state(SystemLayout({{"A", 3}}), 0, r), y = random_mixed_state(SystemLayout({{"A", 3}}), 0, r);
  double mean = 0.0;
  const int n = 20000;
  for (int i = 0; i < n; ++i) {
    Matrix u = haar_unitary(3, r);
    mean += (u * x.matrix() * u.adjoint() * y.matrix()).trace().real() / n;
  }
  EXPECT_NEAR(mean, 1.0 / 3.0, 0.01);
}

TEST(CliffordTest, GroupStructure) {
  const auto& g = clifford_group_1q();
  ASSERT_EQ(g.size(), 24u);
  bool has_identity = false;
  for (const auto& u : g) {
    EXPECT_LT(unitarity_error(u), 1e-12);
    has_identity = has_identity || (u - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12;
  }
  EXPECT_TRUE(has_identity);
  auto find = [&](const Matrix& m) {
    for (std::size_t i = 0; i < g.size(); ++i) {
      if (std::abs(std::abs((g[i].adjoint() * m).trace()) - 2.0) < 1e-9) return static_cast<int>(i);
    }
    return -1;
  };
  for (const auto& a : g) {
    for (const auto& b : g) ASSERT_GE(find(a * b), 0);
  }
  // Same group as the closure oracle.
  for (const auto& u : oracle::clifford_closure()) EXPECT_GE(find(u), 0);
}

TEST(CliffordTest, FirstAndSecondMoments) {
  const auto& g = clifford_group_1q();
  Matrix z0 = Matrix::Zero(2, 2);
  z0(0, 0) = 1.0;
  Matrix avg = Matrix::Zero(2, 2);
  for (const auto& u : g) avg += u * z0 * u.adjoint() / 24.0;
  EXPECT_LT((avg - Matrix::Identity(2, 2) / 2.0).cwiseAbs().maxCoeff(), 1e-14);
  CounterRng r(13);
  Matrix m(4, 4);
  for (Eigen::Index i = 0; i < m.size(); ++i) m(i) = r.complex_normal();
  Matrix twirl = Matrix::Zero(4, 4);
  for (const auto& u : g) {
    Matrix uu = oracle::kron(u, u);
    twirl += uu * m * uu.adjoint() / 24.0;
  }
  EXPECT_LT((twirl - oracle::haar_twirl(m, 2)).cwiseAbs().maxCoeff(), 1e-12);
}

TEST(TwoDesignTest, CliffordPassesPaulisFail) {
  EXPECT_TRUE(verify_2design(make_ensemble(Design::clifford, 2)).pass);
  Matrix x(2, 2), y(2, 2), z(2, 2);
  x << 0, 1, 1, 0;
  y << 0, Complex(0, -1), Complex(0, 1), 0;
  z << 1, 0, 0, -1;
  TwoDesignReport paulis = verify_2design({Matrix::Identity(2, 2), x, y, z});
  EXPECT_FALSE(paulis.pass);
  EXPECT_GT(paulis.max_deviation, 0.1);
  TwoDesignReport haar3 = verify_2design(make_ensemble(Design::haar, 3, 5), 0.05, 10000);
  EXPECT_TRUE(haar3.pass) << haar3.max_deviation;
}

TEST(LocalSampleTest, ReproducibleAndChecked) {
  auto a = local_unitary_sample({2, 2}, Design::clifford, 3, 17);
  auto b = local_unitary_sample({2, 2}, Design::clifford, 3, 17);
  ASSERT_EQ(a.size(), 2u);
  for (int i = 0; i < 2; ++i) EXPECT_EQ((a[i] - b[i]).cwiseAbs().maxCoeff(), 0.0);
  EXPECT_THROW(local_unitary_sample({3}, Design::clifford, 1, 0), InputError);
  auto h = local_unitary_sample({2, 3}, Design::haar, 3, 0);
  EXPECT_EQ(h[1].rows(), 3);
  EXPECT_LT(unitarity_error(h[1]), 1e-12);
}

TEST(LocalSampleTest, MarginalMatchesSinglePartyMoment) {
  Matrix z0 = Matrix::Zero(2, 2);
  z0(0, 0) = 1.0;
  Matrix m = oracle::kron(z0, z0);
  Matrix acc = Matrix::Zero(4, 4);
  const int n = 10000;
  for (int i = 0; i < n; ++i) {
    Matrix u = local_unitary_sample({2, 2}, Design::haar, 21, i)[0];
    Matrix uu = oracle::kron(u, u);
    acc += uu * m * uu.adjoint() / n;
  }
  EXPECT_LT((acc - oracle::haar_twirl(m, 2)).cwiseAbs().maxCoeff(), 0.02);
}

TEST(LocalSampleTest, ProductStaysProduct) {
  auto us = local_unitary_sample({2, 2}, Design::haar, 4, 1);
  CounterRng r(5);
  Vector a = random_pure_vector(2, r), b = random_pure_vector(2, r);
  Vector out = oracle::kron(us[0], us[1]) * oracle::kron(a, b);
  Eigen::Map<const Eigen::Matrix<Complex, 2, 2, Eigen::RowMajor>> coeffs(out.data());
  Eigen::JacobiSVD<Eigen::Matrix2cd> svd{Eigen::Matrix2cd(coeffs)};
  EXPECT_LT(svd.singularValues()(1), 1e-12);
}

TEST(RandomStatesTest, ValidAndRanked) {
  CounterRng r(6);
  SystemLayout l({{"A", 2}, {"B", 2}});
  MultiState s = random_mixed_state(l, 2, r);
  Eigen::VectorXd ev = oracle::eigenvalues(s.matrix());
  EXPECT_LT(std::abs(ev(0)) + std::abs(ev(1)), 1e-12);
  PureState p = random_pure_state(l, r);
  EXPECT_NEAR(p.vector().norm(), 1.0, 1e-12);
  Matrix h = random_hermitian(3, r);
  EXPECT_LT((h - h.adjoint()).norm(), 1e-15);
}

}  // namespace
}  // namespace qdec
