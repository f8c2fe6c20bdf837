// Copyright 2026 The qdec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QDEC_DECOUPLE_HPP
#define QDEC_DECOUPLE_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qdec/entropy.hpp"
#include "qdec/qcore.hpp"
#include "qdec/randomu.hpp"

namespace qdec {

/// Nonempty subsets of the parties in bitmask order 1 .. 2^k - 1.
std::vector<Labels> nonempty_subsets(const Labels& parties);

struct TelescopeTerm {
  Labels subset;
  unsigned mask = 0;
  QChannel restricted;  // T_I
};

std::vector<TelescopeTerm> telescope_terms(const QChannel& ch, const Labels& parties);

/// (R^U - P^{tau_B}) rho computed directly, and the terms (T_I o Theta_I) rho_{A_I E}
/// whose sum reproduces it. Operators live on B (x) E.
struct DifferenceSplit {
  HermitianOp total;
  std::vector<HermitianOp> terms;
};

DifferenceSplit apply_difference(const MultiState& rho, const QChannel& ch, const Labels& parties,
                                 const std::vector<Matrix>& unitaries);

/// (T_I o Theta_I) rho_{A_I E} for one subset.
HermitianOp term_operator(const MultiState& rho, const QChannel& ch, const Labels& parties, const Labels& subset,
                          const std::vector<Matrix>& unitaries);

struct McEstimate {
  double mean = 0.0;
  double stderr_ = 0.0;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  Design design = Design::haar;
  bool exact = false;  // full Clifford enumeration
};

/// Mean and standard error of ||R^U rho - tau_B (x) rho_E||_1. Sample i uses
/// streams derived from (seed, i); results do not depend on `workers`.
McEstimate mc_decoupling_error(const MultiState& rho, const QChannel& ch, const Labels& parties,
                               std::size_t samples, std::uint64_t seed, Design design, int workers = 1);

/// Exact average over all 24^k Clifford tuples (qubit parties only).
McEstimate exact_clifford_decoupling_error(const MultiState& rho, const QChannel& ch, const Labels& parties,
                                           int workers = 1);

/// Mean of ||(T_I o Theta_I) rho_{A_I E}||_2 over sampled unitaries.
McEstimate mc_term_hs_norm(const MultiState& rho, const QChannel& ch, const Labels& parties, const Labels& subset,
                           std::size_t samples, std::uint64_t seed, Design design);

enum class ZetaChoice { marginal, optimized, explicit_state };
enum class SigmaChoice { choi_marginal, optimized, explicit_state };

struct BoundConfig {
  /// Per subset in bitmask order, or a single value for all subsets.
  std::vector<double> epsilon{0.0};
  std::vector<double> alpha{2.0};
  ZetaChoice zeta = ZetaChoice::marginal;
  std::optional<Matrix> zeta_state;  // on E
  SigmaChoice sigma = SigmaChoice::choi_marginal;
  std::optional<Matrix> sigma_state;  // on B
  bool tensor_constant = false;
  SmoothingOptions smoothing{};
  RenyiOptions renyi{};
};

struct SubsetBoundTerm {
  Labels subset;
  double d_constant = 0.0;
  double parameter = 0.0;  // epsilon (smooth bound) or alpha (Renyi bound)
  EntropyValue state_entropy;
  EntropyValue channel_entropy;
  double additive = 0.0;  // 2^{|I|+1} epsilon
  double term = 0.0;
};

struct DecouplingReport {
  std::string bound;  // "smooth" or "renyi"
  std::vector<SubsetBoundTerm> terms;
  double total_bound = 0.0;
  std::optional<McEstimate> mc;
  std::optional<bool> pass;  // mc mean <= bound + 3 SE
  std::string smoothing_ball = "purified";
  std::vector<std::string> notes;
};

/// Smooth bound: sum_I 2^{|I|+1} eps_I + D_I 2^{-H_min^eps(A_I|E)/2 - H_2(A_I|B)_{tau|sigma}/2}.
/// With eps_I = 0 the collision entropy H_2(A_I|E)_{rho|zeta} is used directly.
DecouplingReport bound_smooth(const MultiState& rho, const QChannel& ch, const Labels& parties,
                              const BoundConfig& cfg);

/// Renyi bound for unital channels:
/// sum_I D_I^{2-2/a} 2^{2/a-1} 2^{(1-1/a)(-H_a(A_I|E)_{rho|zeta} - H_2(A_I|B)_{tau|tau_B})}.
DecouplingReport bound_renyi(const MultiState& rho, const QChannel& ch, const Labels& parties,
                             const BoundConfig& cfg);

void attach_mc(DecouplingReport& report, const McEstimate& mc);

}  // namespace qdec

#endif  // QDEC_DECOUPLE_HPP
