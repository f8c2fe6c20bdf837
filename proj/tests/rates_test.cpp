// Copyright 2026 The qdec Authors
// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cmath>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "qdec/randomu.hpp"
#include "qdec/rates.hpp"

namespace qdec {
namespace {

using oracle::Mat;
using Vertices = std::vector<std::vector<double>>;

SystemLayout qubit(const std::string& l) { return SystemLayout({{l, 2}}); }

double bound_of(const RatePolytope& p, unsigned mask) {
  for (const auto& c : p.constraints) {
    if (c.mask == mask) return c.bound;
  }
  ADD_FAILURE() << "no constraint for mask " << mask;
  return 0.0;
}

// Two-variable <= polytope with R >= 0: feasible pairwise line intersections.
Vertices vertex_oracle_2d(const std::vector<std::pair<unsigned, double>>& cons) {
  struct Line {
    double a, b, c;
  };
  std::vector<Line> lines = {{1, 0, 0}, {0, 1, 0}};
  for (auto [m, v] : cons) lines.push_back({(m & 1u) ? 1.0 : 0.0, (m & 2u) ? 1.0 : 0.0, v});
  Vertices out;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    for (std::size_t j = i + 1; j < lines.size(); ++j) {
      const double det = lines[i].a * lines[j].b - lines[i].b * lines[j].a;
      if (std::abs(det) < 1e-12) continue;
      const double x = (lines[i].c * lines[j].b - lines[i].b * lines[j].c) / det;
      const double y = (lines[i].a * lines[j].c - lines[i].c * lines[j].a) / det;
      bool ok = x >= -1e-9 && y >= -1e-9;
      for (auto [m, v] : cons) ok = ok && ((m & 1u) ? x : 0.0) + ((m & 2u) ? y : 0.0) <= v + 1e-9;
      if (!ok) continue;
      std::vector<double> p = {std::abs(x) < 1e-12 ? 0.0 : x, std::abs(y) < 1e-12 ? 0.0 : y};
      bool dup = false;
      for (const auto& q : out) dup = dup || (std::abs(q[0] - p[0]) < 1e-9 && std::abs(q[1] - p[1]) < 1e-9);
      if (!dup) out.push_back(p);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

void expect_vertices(const Vertices& got, const Vertices& want, double tol = 1e-9) {
  ASSERT_EQ(got.size(), want.size());
  for (std::size_t i = 0; i < got.size(); ++i) {
    ASSERT_EQ(got[i].size(), want[i].size());
    for (std::size_t j = 0; j < got[i].size(); ++j) EXPECT_NEAR(got[i][j], want[i][j], tol);
  }
}

RatePolytope manual(const std::vector<std::pair<unsigned, double>>& cons, int k = 2) {
  RatePolytope p;
  p.task = "randomness";
  for (int i = 0; i < k; ++i) p.variables.push_back("R_A" + std::to_string(i + 1));
  for (auto [m, v] : cons) add_constraint(p, m, v, "I=" + std::to_string(m));
  return p;
}

TEST(EntropyTableTest, GhzAndProduct) {
  MultiState g = ghz({"A1", "A2", "E"}).density();
  EntropyTable t = subset_entropy_table(g, {"A1", "A2"}, {"E"}, RateMode::iid);
  ASSERT_EQ(t.values.size(), 3u);
  EXPECT_NEAR(t.values.at(1).value_bits, 0.0, 1e-12);
  EXPECT_NEAR(t.values.at(2).value_bits, 0.0, 1e-12);
  EXPECT_NEAR(t.values.at(3).value_bits, -1.0, 1e-12);
  MultiState mix = maximally_mixed(SystemLayout({{"A1", 2}, {"A2", 3}, {"E", 2}}));
  EntropyTable p = subset_entropy_table(mix, {"A1", "A2"}, {"E"}, RateMode::iid);
  EXPECT_NEAR(p.values.at(3).value_bits, std::log2(6.0), 1e-12);
  CounterRng r(1);
  MultiState rnd = random_mixed_state(SystemLayout({{"A1", 2}, {"A2", 2}, {"A3", 2}, {"E", 2}}), 0, r);
  EXPECT_EQ(subset_entropy_table(rnd, {"A1", "A2", "A3"}, {"E"}, RateMode::iid).values.size(), 7u);
}

TEST(RandomnessRegionTest, GhzIid) {
  RatePolytope p = randomness_region(ghz({"A1", "A2", "E"}).density(), {"A1", "A2"}, RateMode::iid, 0.0);
  EXPECT_EQ(p.variables, (Labels{"R_A1", "R_A2"}));
  EXPECT_NEAR(bound_of(p, 1), 1.0, 1e-12);
  EXPECT_NEAR(bound_of(p, 2), 1.0, 1e-12);
  EXPECT_NEAR(bound_of(p, 3), 1.0, 1e-12);
  expect_vertices(enumerate_vertices(p), {{0, 0}, {0, 1}, {1, 0}});
}

TEST(RandomnessRegionTest, UncorrelatedAndOneShotShift) {
  MultiState mix = maximally_mixed(SystemLayout({{"A1", 2}, {"A2", 4}, {"E", 2}}));
  RatePolytope p = randomness_region(mix, {"A1", "A2"}, RateMode::iid, 0.0);
  EXPECT_NEAR(bound_of(p, 1), 1.0, 1e-12);
  EXPECT_NEAR(bound_of(p, 2), 2.0, 1e-12);
  EXPECT_NEAR(bound_of(p, 3), 3.0, 1e-12);
  // Hand-built table: the one-shot bound shifts by 2 log eps.
  EntropyTable t = subset_entropy_table(mix, {"A1", "A2"}, {"E"}, RateMode::iid);
  RatePolytope iid = randomness_region(t, {2, 4}, RateMode::iid, 0.0);
  RatePolytope os = randomness_region(t, {2, 4}, RateMode::oneshot, 0.1);
  for (unsigned m = 1; m <= 3; ++m) EXPECT_NEAR(bound_of(os, m) - bound_of(iid, m), 2.0 * std::log2(0.1), 1e-12);
  EXPECT_THROW(randomness_region(t, {2, 4}, RateMode::oneshot, 0.0), InputError);
}

TEST(RandomnessRegionTest, BoundsNeverExceedDimensions) {
  CounterRng r(2);
  for (int i = 0; i < 10; ++i) {
    MultiState rho = random_mixed_state(SystemLayout({{"A1", 2}, {"A2", 3}, {"E", 2}}), 0, r);
    RatePolytope p = randomness_region(rho, {"A1", "A2"}, RateMode::iid, 0.0);
    EXPECT_LE(bound_of(p, 1), 1.0 + 1e-12);
    EXPECT_LE(bound_of(p, 2), std::log2(3.0) + 1e-12);
    EXPECT_LE(bound_of(p, 3), std::log2(6.0) + 1e-12);
    for (const auto& v : enumerate_vertices(p)) {
      for (const auto& c : p.constraints) {
        double s = 0.0;
        for (int j = 0; j < 2; ++j) s += (c.mask & (1u << j)) ? v[j] : 0.0;
        EXPECT_LE(s, c.effective + 1e-9);
      }
    }
  }
}

TEST(RandomnessRegionTest, OneShotShrinksWithEpsilon) {
  MultiState g = ghz({"A1", "E"}).density();
  SmoothingOptions opts;
  opts.budget = 4;
  RatePolytope lo = randomness_region(g, {"A1"}, RateMode::oneshot, 0.05, opts);
  RatePolytope hi = randomness_region(g, {"A1"}, RateMode::oneshot, 0.2, opts);
  EXPECT_LE(bound_of(lo, 1), bound_of(hi, 1) + 1e-9);
}

TEST(EoaRateTest, Examples) {
  PureState bell_c = tensor(maximally_entangled(2, "A", "B"), basis_state(qubit("C"), 0));
  RatePolytope p = eoa_rate(bell_c, "A", {"C"}, RateMode::iid, 0.0);
  EXPECT_NEAR(p.info.at("rate"), 1.0, 1e-9);
  EXPECT_EQ(p.constraints.size(), 2u);
  EXPECT_NEAR(eoa_rate(ghz({"A", "B", "C"}), "A", {"C"}, RateMode::iid, 0.0).info.at("rate"), 1.0, 1e-9);

  CounterRng r(3);
  PureState psi = random_pure_state(SystemLayout({{"A", 2}, {"B", 2}, {"C1", 2}, {"C2", 2}}), r);
  Mat m = psi.density().matrix();
  const std::vector<int> dims = {2, 2, 2, 2};
  double want = 1e9;
  for (unsigned s = 0; s < 4; ++s) {
    std::vector<bool> keep = {true, false, (s & 1u) != 0, (s & 2u) != 0};
    want = std::min(want, oracle::entropy(oracle::partial_trace(m, dims, keep)));
  }
  RatePolytope q = eoa_rate(psi, "A", {"C1", "C2"}, RateMode::iid, 0.0);
  EXPECT_EQ(q.constraints.size(), 4u);
  EXPECT_NEAR(q.info.at("raw_rate"), want, 1e-9);
}

TEST(EoaRateTest, OneShotReportsHelperFlag) {
  SmoothingOptions opts;
  opts.budget = 2;
  RatePolytope p = eoa_rate(ghz({"A", "B", "C"}), "A", {"C"}, RateMode::oneshot, 0.1, opts);
  ASSERT_TRUE(p.flags.count("helper_condition"));
  // H_min(C) = 1 < -2 log 0.1.
  EXPECT_FALSE(p.flags.at("helper_condition"));
  EXPECT_LE(p.info.at("raw_rate"), 1.0 + 2.0 * std::log2(0.1) + 1e-6);
}

TEST(EoaMixedRateTest, Examples) {
  MultiState rho = tensor(maximally_entangled(2, "A", "B").density(), maximally_mixed(qubit("C")));
  RatePolytope p = eoa_mixed_rate(rho, "A", "B", {"C"}, {}, RateMode::iid, 0.0);
  EXPECT_NEAR(p.info.at("raw_rate"), 0.0, 1e-9);

  PureState g = ghz({"A", "B", "C"});
  RatePolytope pure = eoa_mixed_rate(g.density(), "A", "B", {"C"}, {}, RateMode::iid, 0.0);
  EXPECT_NEAR(pure.info.at("rate"), eoa_rate(g, "A", {"C"}, RateMode::iid, 0.0).info.at("rate"), 1e-9);

  Preprocessing ident{"identity", {}};
  Preprocessing dep{"depolarize-C", {{"C", depolarizing_channel(qubit("C"))}}};
  RatePolytope best = eoa_mixed_rate(g.density(), "A", "B", {"C"}, {ident, dep}, RateMode::iid, 0.0);
  EXPECT_NEAR(best.info.at("rate"), std::max(best.info.at("candidate:identity"), best.info.at("candidate:depolarize-C")),
              1e-12);
  Preprocessing on_b{"bad", {{"B", depolarizing_channel(qubit("B"))}}};
  EXPECT_THROW(eoa_mixed_rate(g.density(), "A", "B", {"C"}, {on_b}, RateMode::iid, 0.0), InputError);
}

TEST(MergingRegionTest, Examples) {
  MultiState r1 = tensor(maximally_entangled(2, "A1", "R").density(), basis_state(qubit("B"), 0).density());
  EXPECT_NEAR(bound_of(merging_region(r1, {"A1"}, {"B"}, RateMode::iid, 0.0), 1), 1.0, 1e-9);
  MultiState b1 = tensor(maximally_entangled(2, "A1", "B").density(), basis_state(qubit("R"), 0).density());
  RatePolytope gain = merging_region(b1, {"A1"}, {"B"}, RateMode::iid, 0.0);
  EXPECT_NEAR(bound_of(gain, 1), -1.0, 1e-9);
  EXPECT_FALSE(gain.constraints[0].clipped);
  EXPECT_EQ(gain.sense, Sense::at_least);

  MultiState two = tensor(maximally_entangled(2, "A1", "B").density(), maximally_entangled(2, "A2", "R").density());
  RatePolytope p = merging_region(two, {"A1", "A2"}, {"B"}, RateMode::iid, 0.0);
  EXPECT_NEAR(bound_of(p, 1), -1.0, 1e-9);
  EXPECT_NEAR(bound_of(p, 2), 1.0, 1e-9);
  EXPECT_NEAR(bound_of(p, 3), 0.0, 1e-9);
  // Upward-closed: every vertex satisfies every >= constraint.
  for (const auto& v : enumerate_vertices(p)) {
    EXPECT_GE(v[0], -1.0 - 1e-9);
    EXPECT_GE(v[1], 1.0 - 1e-9);
    EXPECT_GE(v[0] + v[1], -1e-9);
  }
}

TEST(MergingRegionTest, OneShotIsConservative) {
  MultiState b1 = tensor(maximally_entangled(2, "A1", "B").density(), basis_state(qubit("R"), 0).density());
  SmoothingOptions opts;
  opts.budget = 2;
  RatePolytope p = merging_region(b1, {"A1"}, {"B"}, RateMode::oneshot, 0.1, opts);
  // H_max^eps <= H_max = -1, then minus 2 log eps.
  EXPECT_LE(bound_of(p, 1), -1.0 - 2.0 * std::log2(0.1) + 1e-6);
}

TEST(StinespringTest, Isometries) {
  for (const QChannel& ch : {identity_channel(qubit("A"), qubit("B")), measurement_channel(Subsystem{"A", 2}, "X", {1, 1}),
                             depolarizing_channel(qubit("A"))}) {
    Stinespring s = stinespring(ch);
    const int n = static_cast<int>(ch.kraus().size());
    EXPECT_EQ(s.out.dim_of("E"), n);
    EXPECT_LT((s.isometry.adjoint() * s.isometry - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-12);
    const int dout = ch.out_layout().total_dim();
    for (int i = 0; i < 2; ++i) {
      for (int j = 0; j < 2; ++j) {
        Matrix e = Matrix::Zero(2, 2);
        e(i, j) = 1.0;
        Mat full = s.isometry * e * s.isometry.adjoint();
        Mat reduced = oracle::partial_trace(full, {dout, n}, {true, false});
        EXPECT_LT((reduced - ch.apply(e)).cwiseAbs().maxCoeff(), 1e-12);
      }
    }
  }
  Stinespring id = stinespring(identity_channel(qubit("A"), qubit("B")));
  EXPECT_EQ(id.out.dim_of("E"), 1);
  EXPECT_LT((id.isometry - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff(), 1e-14);
}

TEST(MacRegionTest, Examples) {
  QChannel id = identity_channel(qubit("X1"), qubit("B"));
  RatePolytope one = mac_region(id, {maximally_entangled(2, "A1", "X1")}, RateMode::iid, 0.0);
  EXPECT_NEAR(bound_of(one, 1), 1.0, 1e-9);

  QChannel n = QChannel::tensor_product({identity_channel(qubit("X1"), qubit("B")),
                                         partial_trace_channel(qubit("X2"), {})});
  std::vector<PureState> in = {maximally_entangled(2, "A1", "X1"), maximally_entangled(2, "A2", "X2")};
  RatePolytope p = mac_region(n, in, RateMode::iid, 0.0);
  EXPECT_EQ(p.variables, (Labels{"R_A1", "R_A2"}));
  EXPECT_NEAR(bound_of(p, 1), 1.0, 1e-9);
  EXPECT_NEAR(bound_of(p, 2), -1.0, 1e-9);
  EXPECT_NEAR(bound_of(p, 3), 0.0, 1e-9);
  expect_vertices(enumerate_vertices(p), {{0, 0}});

  MultiState psi = mac_state(n, in);
  EXPECT_EQ(psi.layout().labels(), (Labels{"A1", "A2", "B", "E"}));
  Mat want = oracle::kron(maximally_entangled(2).density().matrix(), maximally_entangled(2).density().matrix());
  // Layout A1 A2 B E versus (A1 B)(A2 E): compare entropies.
  EXPECT_NEAR(oracle::entropy(oracle::partial_trace(psi.matrix(), {2, 2, 2, 2}, {true, false, true, false})), 0.0, 1e-9);
  EXPECT_NEAR(oracle::entropy(oracle::partial_trace(psi.matrix(), {2, 2, 2, 2}, {false, true, false, true})), 0.0, 1e-9);
  EXPECT_NEAR(oracle::entropy(want), 0.0, 1e-12);
}

TEST(MacRegionTest, DepolarizingAndEnsembles) {
  std::vector<Subsystem> in2 = {{"X1", 2}, {"X2", 2}};
  QChannel dep = depolarizing_channel(SystemLayout(in2));
  std::vector<PureState> in = {maximally_entangled(2, "A1", "X1"), maximally_entangled(2, "A2", "X2")};
  RatePolytope p = mac_region(dep, in, RateMode::iid, 0.0);
  for (const auto& c : p.constraints) EXPECT_LE(c.bound, 1e-9);
  expect_vertices(enumerate_vertices(p), {{0, 0}});

  QChannel id = identity_channel(qubit("X1"), qubit("B"));
  CounterRng r(4);
  std::vector<std::vector<PureState>> ens;
  std::vector<double> single;
  for (int u = 0; u < 3; ++u) {
    PureState phi = random_pure_state(SystemLayout({{"A1", 2}, {"X1", 2}}), r);
    ens.push_back({phi});
    single.push_back(bound_of(mac_region(id, {phi}, RateMode::iid, 0.0), 1));
  }
  RatePolytope mean = mac_region_ensemble(id, {1.0 / 3, 1.0 / 3, 1.0 / 3}, ens);
  EXPECT_NEAR(bound_of(mean, 1), (single[0] + single[1] + single[2]) / 3.0, 1e-12);
  RatePolytope alone = mac_region_ensemble(id, {1.0}, {ens[0]});
  EXPECT_EQ(bound_of(alone, 1), single[0]);
  EXPECT_THROW(mac_region_ensemble(id, {0.5, 0.6}, {ens[0], ens[1]}), InputError);
}

TEST(CompoundTest, Semantics) {
  RatePolytope g = randomness_region(ghz({"A1", "A2", "E"}).density(), {"A1", "A2"}, RateMode::iid, 0.0);
  RatePolytope single = compound_region({g});
  ASSERT_EQ(single.constraints.size(), g.constraints.size());
  for (std::size_t i = 0; i < g.constraints.size(); ++i) {
    EXPECT_EQ(single.constraints[i].bound, g.constraints[i].bound);
    EXPECT_EQ(single.constraints[i].effective, g.constraints[i].effective);
  }
  RatePolytope mix = randomness_region(maximally_mixed(SystemLayout({{"A1", 2}, {"A2", 2}, {"E", 2}})), {"A1", "A2"},
                                       RateMode::iid, 0.0);
  RatePolytope both = compound_region({g, mix});
  for (unsigned m = 1; m <= 3; ++m) EXPECT_EQ(bound_of(both, m), std::min(bound_of(g, m), bound_of(mix, m)));

  MultiState b1 = tensor(maximally_entangled(2, "A1", "B").density(), basis_state(qubit("R"), 0).density());
  MultiState r1 = tensor(maximally_entangled(2, "A1", "R").density(), basis_state(qubit("B"), 0).density());
  RatePolytope merged = compound_region({merging_region(b1, {"A1"}, {"B"}, RateMode::iid, 0.0),
                                         merging_region(r1, {"A1"}, {"B"}, RateMode::iid, 0.0)});
  EXPECT_NEAR(bound_of(merged, 1), 1.0, 1e-9);
  EXPECT_THROW(compound_region({g, merging_region(b1, {"A1"}, {"B"}, RateMode::iid, 0.0)}), InputError);
  EXPECT_THROW(compound_region({}), InputError);
}

TEST(VertexTest, Examples) {
  expect_vertices(enumerate_vertices(manual({{1, 1}, {2, 1}, {3, 1.5}})),
                  {{0, 0}, {0, 1}, {0.5, 1}, {1, 0}, {1, 0.5}});
  expect_vertices(enumerate_vertices(manual({{1, 1}, {2, 1}, {3, 1}})), {{0, 0}, {0, 1}, {1, 0}});
  expect_vertices(enumerate_vertices(manual({{1, -1}, {2, -2}, {3, -1}})), {{0, 0}});
  EXPECT_THROW(enumerate_vertices(manual({{1, 1}}, 4)), InputError);
}

TEST(VertexTest, MatchesBruteForceOracle) {
  CounterRng r(5);
  for (int t = 0; t < 50; ++t) {
    std::vector<std::pair<unsigned, double>> cons = {
        {1, 2.0 * r.uniform()}, {2, 2.0 * r.uniform()}, {3, 3.0 * r.uniform()}};
    std::vector<std::pair<unsigned, double>> eff;
    for (auto [m, v] : cons) eff.push_back({m, std::max(0.0, v)});
    expect_vertices(enumerate_vertices(manual(cons)), vertex_oracle_2d(eff));
  }
}

TEST(VertexTest, ThreeVariablesAndRelabeling) {
  RatePolytope p = manual({{1, 1}, {2, 1}, {4, 1}, {7, 2}}, 3);
  Vertices v = enumerate_vertices(p);
  // Cube corners with at most two coordinates equal to 1.
  EXPECT_EQ(v.size(), 7u);
  // Swapping parties 1 and 2 permutes coordinates.
  RatePolytope q = manual({{2, 1}, {1, 1}, {4, 1}, {7, 2}}, 3);
  Vertices w = enumerate_vertices(q);
  for (auto& x : w) std::swap(x[0], x[1]);
  std::sort(w.begin(), w.end());
  expect_vertices(w, v);
}

TEST(CsvTest, Format) {
  RatePolytope p = manual({{1, 1}, {2, 1}, {3, 1}});
  std::string csv = vertices_csv(p, enumerate_vertices(p));
  EXPECT_EQ(csv, "R_A1,R_A2\n0,0\n0,1\n1,0\n");
}

}  // namespace
}  // namespace qdec
