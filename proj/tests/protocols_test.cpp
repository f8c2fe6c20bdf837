// Copyright 2026 The qdec Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qdec/entropy.hpp"
#include "qdec/protocols.hpp"

namespace qdec {
namespace {

using oracle::Mat;

SystemLayout qubit(const std::string& l) { return SystemLayout({{l, 2}}); }

Mat psd_sqrt(const Mat& m) {
  Eigen::SelfAdjointEigenSolver<Mat> es(m);
  Eigen::VectorXd ev = es.eigenvalues().cwiseMax(0.0).cwiseSqrt();
  return es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
}

// (Tr |sqrt(a) sqrt(b)|)^2.
double fidelity_oracle(const Mat& a, const Mat& b) {
  Mat sa = psd_sqrt(a);
  double s = oracle::eigenvalues(psd_sqrt(sa * b * sa)).sum();
  return s * s;
}

TEST(ProjectorTest, RanksAndCompleteness) {
  EXPECT_EQ(equal_rank_projectors(4, 2).ranks, (std::vector<int>{2, 2}));
  EXPECT_EQ(equal_rank_projectors(3, 2).ranks, (std::vector<int>{2, 1}));
  EXPECT_EQ(equal_rank_projectors(7, 3).ranks, (std::vector<int>{3, 2, 2}));
  for (int dim = 1; dim <= 6; ++dim) {
    for (int t = 1; t <= dim; ++t) {
      ProjectorFamily f = equal_rank_projectors(dim, t);
      Matrix sum = Matrix::Zero(dim, dim);
      for (std::size_t i = 0; i < f.projectors.size(); ++i) {
        sum += f.projectors[i];
        EXPECT_LT((f.projectors[i] * f.projectors[i] - f.projectors[i]).cwiseAbs().maxCoeff(), 1e-14);
        for (std::size_t j = i + 1; j < f.projectors.size(); ++j) {
          EXPECT_LT((f.projectors[i] * f.projectors[j]).cwiseAbs().maxCoeff(), 1e-14);
        }
      }
      EXPECT_LT((sum - Matrix::Identity(dim, dim)).cwiseAbs().maxCoeff(), 1e-14);
      auto [lo, hi] = std::minmax_element(f.ranks.begin(), f.ranks.end());
      EXPECT_LE(*hi - *lo, 1);
    }
  }
  EXPECT_THROW(equal_rank_projectors(2, 3), InputError);
}

TEST(ProjectorTest, ChoiCollisionEntropy) {
  for (auto [dim, t] : {std::pair{2, 2}, std::pair{4, 2}, std::pair{3, 2}, std::pair{6, 3}}) {
    ProjectorFamily f = equal_rank_projectors(dim, t);
    QChannel m = measurement_channel(f.projectors, Subsystem{"A", dim}, "X");
    MultiState tau = choi(m);
    Matrix tau_x = partial_trace(tau, {"X"}).matrix();
    EntropyValue h = renyi_sandwiched_fixed(tau, {"A"}, {"X"}, 2.0, tau_x);
    EXPECT_GE(h.value_bits, std::log2(static_cast<double>(dim) / t) - 1e-9);
    if (dim == 2) EXPECT_NEAR(h.value_bits, 0.0, 1e-9);
  }
}

TEST(ExtractionTest, ProductMaximallyMixedIsUniform) {
  CounterRng r(1);
  MultiState rho = tensor(maximally_mixed(SystemLayout({{"A1", 2}, {"A2", 2}})), random_mixed_state(qubit("E"), 0, r));
  for (int i = 0; i < 5; ++i) {
    ExtractionOutcome o = simulate_randomness_extraction(rho, {"A1", "A2"}, {2, 2}, {haar_unitary(2, r), haar_unitary(2, r)});
    EXPECT_NEAR(o.distance, 0.0, 1e-13);
    EXPECT_EQ(o.output.layout().labels(), (Labels{register_label("A1"), register_label("A2"), "E"}));
  }
  EXPECT_NEAR(randomness_extraction_average(rho, {"A1", "A2"}, {2, 2}, Design::clifford, 0, 0).mean, 0.0, 1e-13);
}

TEST(ExtractionTest, GhzTwoBitsInfeasible) {
  MultiState g = ghz({"A1", "A2", "E"}).density();
  const auto& cl = clifford_group_1q();
  for (std::size_t i = 0; i < cl.size(); i += 5) {
    for (std::size_t j = 0; j < cl.size(); j += 7) {
      EXPECT_GT(simulate_randomness_extraction(g, {"A1", "A2"}, {2, 2}, {cl[i], cl[j]}).distance, 0.4);
    }
  }
}

TEST(ExtractionTest, TrivialRegisterMatchesSingleParty) {
  MultiState g = ghz({"A1", "A2", "E"}).density();
  MultiState g1e = partial_trace(g, {"A1", "E"});
  CounterRng r(2);
  for (int i = 0; i < 5; ++i) {
    Matrix u1 = haar_unitary(2, r), u2 = haar_unitary(2, r);
    double both = simulate_randomness_extraction(g, {"A1", "A2"}, {2, 1}, {u1, u2}).distance;
    double one = simulate_randomness_extraction(g1e, {"A1"}, {2}, {u1}).distance;
    EXPECT_NEAR(both, one, 1e-12);
  }
}

TEST(ExtractionTest, RegisterDistributionWithinTraceDistance) {
  CounterRng r(3);
  MultiState rho = random_mixed_state(SystemLayout({{"A1", 3}, {"A2", 2}, {"E", 2}}), 0, r);
  ExtractionOutcome o = simulate_randomness_extraction(rho, {"A1", "A2"}, {2, 2}, {haar_unitary(3, r), haar_unitary(2, r)});
  Mat px = oracle::partial_trace(o.output.matrix(), {2, 2, 2}, {true, true, false});
  double tv = 0.0;
  for (int x = 0; x < 4; ++x) tv += 0.5 * std::abs(px(x, x).real() - 0.25);
  EXPECT_LE(tv, o.distance + 1e-12);
  EXPECT_NEAR(o.output.trace(), 1.0, 1e-12);
}

TEST(UhlmannTest, IdentityAndRotation) {
  PureState phi = maximally_entangled(2, "S", "P");
  UhlmannResult same = uhlmann_isometry(phi, maximally_entangled(2, "S", "Q"), {"S"});
  EXPECT_NEAR(same.fidelity, 1.0, 1e-12);
  EXPECT_LT((same.isometry - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-10);

  CounterRng r(4);
  Matrix v = haar_unitary(2, r);
  Vector rotated = kron(identity(2), v) * maximally_entangled(2, "S", "Q").vector();
  PureState phi_rot(SystemLayout({{"S", 2}, {"Q", 2}}), rotated);
  UhlmannResult rot = uhlmann_isometry(phi, phi_rot, {"S"});
  EXPECT_NEAR(rot.fidelity, 1.0, 1e-12);
  Vector mapped = kron(identity(2), rot.isometry) * rotated;
  EXPECT_NEAR(std::norm(phi.vector().dot(mapped)), 1.0, 1e-10);
}

TEST(UhlmannTest, RandomPairsAchieveFidelity) {
  CounterRng r(5);
  for (int t = 0; t < 10; ++t) {
    const int ds = 2 + t % 2, dp = 4, dq = 2 + t % 3;
    PureState psi = random_pure_state(SystemLayout({{"S", ds}, {"P", dp}}), r);
    PureState phi = random_pure_state(SystemLayout({{"S", ds}, {"Q", dq}}), r);
    UhlmannResult u = uhlmann_isometry(psi, phi, {"S"});
    ASSERT_EQ(u.isometry.rows(), dp);
    ASSERT_EQ(u.isometry.cols(), dq);
    EXPECT_LT((u.isometry.adjoint() * u.isometry - Matrix::Identity(dq, dq)).cwiseAbs().maxCoeff(), 1e-10);
    Vector mapped = kron(identity(ds), u.isometry) * phi.vector();
    const double achieved = std::norm(psi.vector().dot(mapped));
    Mat ps = oracle::partial_trace(psi.density().matrix(), {ds, dp}, {true, false});
    Mat qs = oracle::partial_trace(phi.density().matrix(), {ds, dq}, {true, false});
    const double f = fidelity_oracle(ps, qs);
    EXPECT_NEAR(achieved, f, 1e-8);
    EXPECT_NEAR(u.fidelity, f, 1e-8);
  }
  PureState big = random_pure_state(SystemLayout({{"S", 2}, {"Q", 4}}), r);
  PureState small = random_pure_state(SystemLayout({{"S", 2}, {"P", 2}}), r);
  EXPECT_THROW(uhlmann_isometry(small, big, {"S"}), InputError);
}

TEST(EoaTest, BellWithTrivialHelper) {
  PureState psi = tensor(maximally_entangled(2, "A", "B"), basis_state(qubit("C"), 0));
  EoaSimulation sim = simulate_eoa(psi, "A", "B", {"C"}, 2, Design::clifford, 0, 0);
  EXPECT_TRUE(sim.exact);
  EXPECT_LE(sim.average_error, 1e-8);

  CounterRng r(6);
  PureState random_c = tensor(maximally_entangled(2, "A", "B"), random_pure_state(qubit("C"), r));
  EXPECT_LE(simulate_eoa(random_c, "A", "B", {"C"}, 2, Design::clifford, 0, 0).average_error, 1e-6);
}

TEST(EoaTest, GhzExactCliffordAverage) {
  PureState g = ghz({"A", "B", "C"});
  EoaSimulation sim = simulate_eoa(g, "A", "B", {"C"}, 2, Design::clifford, 0, 0);
  EXPECT_TRUE(sim.exact);
  // A Z-basis helper measurement (a third of the Cliffords) leaves |00>: error sqrt(1/2).
  EXPECT_NEAR(sim.average_error, std::sqrt(0.5) / 3.0, 1e-9);
}

TEST(EoaTest, OutcomeInvariants) {
  CounterRng r(7);
  PureState psi = random_pure_state(SystemLayout({{"A", 2}, {"B", 2}, {"C", 2}}), r);
  EoaRun run = run_eoa(psi, "A", "B", {"C"}, 2, {haar_unitary(2, r), haar_unitary(2, r)});
  double p = 0.0, avg = 0.0;
  for (const auto& o : run.outcomes) {
    p += o.probability;
    avg += o.probability * o.error;
    if (o.probability > 1e-12) EXPECT_LE(o.error, std::sqrt(o.residual * (2.0 - o.residual)) + 1e-8);
  }
  EXPECT_NEAR(p, 1.0, 1e-9);
  EXPECT_NEAR(avg, run.average_error, 1e-12);
}

TEST(EoaTest, DropsTrivialHelpersAndPadsA) {
  PureState psi = tensor(maximally_entangled(2, "A", "B"), basis_state(SystemLayout({{"C", 1}}), 0));
  EoaSimulation sim = simulate_eoa(psi, "A", "B", {"C"}, 2, Design::haar, 10, 1);
  EXPECT_TRUE(sim.helpers_used.empty());
  EXPECT_LE(sim.average_error, 1e-8);
  CounterRng r(8);
  PureState odd = random_pure_state(SystemLayout({{"A", 3}, {"B", 2}}), r);
  EoaSimulation padded = simulate_eoa(odd, "A", "B", {}, 2, Design::haar, 10, 1);
  EXPECT_EQ(padded.padded_a_dim % 2, 0);
  EXPECT_GE(padded.padded_a_dim, 3);
}

}  // namespace
}  // namespace qdec
