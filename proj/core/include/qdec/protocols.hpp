// Copyright 2026 The qdec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QDEC_PROTOCOLS_HPP
#define QDEC_PROTOCOLS_HPP

#include <cstdint>
#include <vector>

#include "qdec/decouple.hpp"
#include "qdec/qcore.hpp"
#include "qdec/randomu.hpp"

namespace qdec {

/// t projectors on C^dim: the first dim mod t have rank ceil(dim/t), the
/// rest floor(dim/t).
struct ProjectorFamily {
  int dim = 0;
  std::vector<int> ranks;
  std::vector<Matrix> projectors;
};

ProjectorFamily equal_rank_projectors(int dim, int t);

/// Label of the classical register produced from party `p`.
std::string register_label(const std::string& party);

struct ExtractionOutcome {
  MultiState output;  // X_1 ... X_k E
  double distance = 0.0;  // 1/2 || output - uniform (x) rho_E ||_1
};

/// Rotates party i by U_i, measures t_i equal-rank projectors and compares
/// with uniform outputs independent of E.
ExtractionOutcome simulate_randomness_extraction(const MultiState& rho, const Labels& parties,
                                                 const std::vector<int>& t, const std::vector<Matrix>& unitaries);

/// Average extraction distance: Haar or Clifford sampling, or exact Clifford
/// enumeration when samples == 0.
McEstimate randomness_extraction_average(const MultiState& rho, const Labels& parties, const std::vector<int>& t,
                                         Design design, std::size_t samples, std::uint64_t seed);

/// For psi on S (x) P and phi on S (x) Q, the isometry W: Q -> P maximizing
/// |<psi|(1 x W)|phi>|^2, which equals F(psi_S, phi_S). Requires |Q| <= |P|.
struct UhlmannResult {
  Matrix isometry;
  double fidelity = 0.0;
};

UhlmannResult uhlmann_isometry(const PureState& psi, const PureState& phi, const Labels& shared);

struct ProtocolOutcome {
  std::vector<int> outcome;  // A block, then one result per helper
  double probability = 0.0;
  double residual = 0.0;  // 1/2 ||psi(j)_A - 1/d||_1
  double error = 0.0;     // 1/2 ||final - Phi_d||_1
};

struct EoaRun {
  double average_error = 0.0;
  std::vector<ProtocolOutcome> outcomes;
};

/// One protocol run for fixed unitaries (U_0 on A, then one per helper).
EoaRun run_eoa(const PureState& psi, const std::string& a, const std::string& b, const Labels& helpers, int d,
               const std::vector<Matrix>& unitaries);

struct EoaSimulation {
  double average_error = 0.0;
  double stderr_ = 0.0;
  std::size_t unitary_samples = 0;
  bool exact = false;
  Labels helpers_used;  // helpers of dimension 1 are dropped
  int padded_a_dim = 0;
  Design design = Design::haar;
};

/// Averages run_eoa over unitaries. Clifford design with 24^(helpers+1) <= 24^3
/// enumerates the group exactly; otherwise at least 500 samples are drawn.
EoaSimulation simulate_eoa(const PureState& psi, const std::string& a, const std::string& b, const Labels& helpers,
                           int d, Design design, std::size_t samples, std::uint64_t seed);

}  // namespace qdec

#endif  // QDEC_PROTOCOLS_HPP
