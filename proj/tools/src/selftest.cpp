// Copyright 2026 The qdec Authors
// SPDX-License-Identifier: Apache-2.0

#include <cmath>
#include <functional>
#include <ostream>

#include "qdec/decouple.hpp"
#include "qdec/entropy.hpp"
#include "qdec/protocols.hpp"
#include "qdec/randomu.hpp"
#include "qdec/rates.hpp"
#include "qdec/twirl.hpp"
#include "qdec_cli/commands.hpp"

namespace qdec::cli {
namespace {

struct Check {
  const char* name;
  std::function<bool()> run;
};

SystemLayout qubit(const std::string& l) { return SystemLayout({{l, 2}}); }

bool near(double a, double b, double tol) { return std::abs(a - b) <= tol; }

std::vector<Check> checks() {
  return {
      {"hmin of maximally entangled states",
       [] {
         for (int d = 2; d <= 4; ++d) {
           if (!near(hmin(maximally_entangled(d).density(), {"A"}, {"B"}).value_bits, -std::log2(d), 1e-5)) {
             return false;
           }
         }
         return true;
       }},
      {"min/max-entropy duality on a random pure state",
       [] {
         CounterRng rng(11);
         MultiState psi = random_pure_state(SystemLayout({{"A", 2}, {"B", 2}, {"C", 2}}), rng).density();
         return near(hmin(psi, {"A"}, {"B"}).value_bits, -hmax(psi, {"A"}, {"C"}).value_bits, 1e-4);
       }},
      {"single-qubit Clifford group is a 2-design", [] { return verify_2design(clifford_group_1q(), 1e-12).pass; }},
      {"expected Hilbert-Schmidt norm for the identity channel",
       [] {
         MultiState phi = maximally_entangled(2, "A", "E").density();
         return near(expected_hs_norm_sq(phi, identity_channel(qubit("A"), qubit("B")), {"A"}), 0.75, 1e-10);
       }},
      {"collision identity for unital qubit channels",
       [] {
         std::vector<QChannel> chans = {identity_channel(qubit("A"), qubit("B")),
                                        measurement_channel(Subsystem{"A", 2}, "B", {1, 1}),
                                        depolarizing_channel(qubit("A"))};
         for (const auto& ch : chans) {
           CollisionCheck c = collision_identity_check(ch);
           if (!near(c.lhs, c.rhs, 1e-9)) return false;
         }
         return true;
       }},
      {"telescoping identity",
       [] {
         CounterRng rng(5);
         SystemLayout l({{"A1", 2}, {"A2", 2}, {"E", 2}});
         MultiState rho = random_mixed_state(l, 0, rng);
         QChannel ch = depolarizing_channel(SystemLayout({{"A1", 2}, {"A2", 2}}));
         DifferenceSplit s = apply_difference(rho, ch, {"A1", "A2"}, local_unitary_sample({2, 2}, Design::haar, 3, 0));
         Matrix acc = Matrix::Zero(s.total.dim(), s.total.dim());
         for (const auto& t : s.terms) acc += t.matrix();
         return (acc - s.total.matrix()).cwiseAbs().maxCoeff() < 1e-10;
       }},
      {"vertex enumeration",
       [] {
         RatePolytope p;
         p.variables = {"R_1", "R_2"};
         add_constraint(p, 1, 1.0, "1");
         add_constraint(p, 2, 1.0, "2");
         add_constraint(p, 3, 1.5, "12");
         return enumerate_vertices(p).size() == 5;
       }},
      {"uniform extraction from product maximally mixed input",
       [] {
         MultiState rho = maximally_mixed(SystemLayout({{"A1", 2}, {"A2", 2}, {"E", 2}}));
         return simulate_randomness_extraction(rho, {"A1", "A2"}, {2, 2},
                                               local_unitary_sample({2, 2}, Design::haar, 9, 0))
                    .distance < 1e-12;
       }},
      {"equal-rank projectors", [] { return equal_rank_projectors(3, 2).ranks == std::vector<int>{2, 1}; }},
      {"net size", [] { return netsize(2, "0.5") == "100000000"; }},
  };
}

}  // namespace

int selftest(std::ostream& out) {
  int passed = 0, failed = 0;
  for (const auto& c : checks()) {
    bool ok = false;
    try {
      ok = c.run();
    } catch (const std::exception& e) {
      out << "  error: " << e.what() << "\n";
    }
    out << (ok ? "PASS " : "FAIL ") << c.name << "\n";
    (ok ? passed : failed)++;
  }
  out << "selftest: " << passed << "/" << (passed + failed) << " passed\n";
  return failed;
}

}  // namespace qdec::cli
