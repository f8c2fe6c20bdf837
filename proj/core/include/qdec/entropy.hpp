// Copyright 2026 The qdec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QDEC_ENTROPY_HPP
#define QDEC_ENTROPY_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qdec/qcore.hpp"
#include "qdec/sdp.hpp"

namespace qdec {

/// Value used for an entropy of minus infinity (support condition violated).
inline constexpr double kNegInfinityBits = -1e6;

enum class EntropyKind {
  von_neumann,
  conditional_von_neumann,
  renyi_fixed,
  renyi_optimized,
  hmin,
  hmax,
  hmin_smooth,
  hmax_smooth,
  coherent_information,
};

enum class Certification { exact, lower_bound, upper_bound };

std::string to_string(EntropyKind k);
std::string to_string(Certification c);

/// All entropies are in bits.
struct EntropyValue {
  EntropyKind kind = EntropyKind::von_neumann;
  std::optional<double> alpha;
  std::optional<double> epsilon;
  Labels a;
  Labels b;
  std::string sigma;  // how the conditioning operator was chosen
  double value_bits = 0.0;
  bool neg_infinity = false;
  /// Optimal sigma_B, or the smoothed state on A (x) B (A first).
  std::optional<Matrix> achiever;
  Certification certified = Certification::exact;
  std::optional<double> sdp_gap;
};

/// (x)_- = min(x, 0).
double negative_part(double x);

EntropyValue von_neumann(const MultiState& rho, const Labels& a);
/// S(A|B) = S(AB) - S(B).
EntropyValue cond_von_neumann(const MultiState& rho, const Labels& a, const Labels& b);
/// I(A>B) = -S(A|B).
EntropyValue coherent_information(const MultiState& rho, const Labels& a, const Labels& b);

/// Sandwiched conditional Renyi entropy with fixed sigma_B:
/// 1/(1-alpha) log Tr[(sigma^{(1-alpha)/2alpha} rho sigma^{(1-alpha)/2alpha})^alpha].
/// alpha = 1 gives -D(rho || 1 (x) sigma).
EntropyValue renyi_sandwiched_fixed(const MultiState& rho, const Labels& a, const Labels& b, double alpha,
                                    const Matrix& sigma_b);

/// Matrix-level core: rho_ab ordered A (x) B. Returns the value and sets
/// neg_infinity when the support condition fails.
double sandwiched_conditional(const Matrix& rho_ab, int da, int db, double alpha, const Matrix& sigma_b,
                              bool* neg_infinity = nullptr);

struct RenyiOptions {
  int restarts = 5;
  std::uint64_t seed = 0;
  int max_iterations = 300;
};

/// Maximizes the fixed-sigma entropy over sigma_B = exp(H)/Tr exp(H) by
/// quasi-Newton ascent with finite-difference gradients, from sigma = rho_B
/// and `restarts` random starts. Certified lower bound.
EntropyValue renyi_optimized(const MultiState& rho, const Labels& a, const Labels& b, double alpha,
                             const RenyiOptions& opts = {});

/// H_min(A|B) = -log2 of the SDP optimum. Certified lower bound.
EntropyValue hmin(const MultiState& rho, const Labels& a, const Labels& b, const SdpOptions& opts = {});
/// H_max(A|B) = -H_min(A|C) on a purification. Certified upper bound.
EntropyValue hmax(const MultiState& rho, const Labels& a, const Labels& b, const SdpOptions& opts = {});

struct SmoothingOptions {
  int budget = 40;  // SDP evaluations in the local search
  std::uint64_t seed = 0;
  SdpOptions sdp{1e-8};
};

/// Lower bound on the smooth min-entropy over the purified-distance ball:
/// best H_min over candidate states within distance eps of rho.
EntropyValue hmin_smooth(const MultiState& rho, const Labels& a, const Labels& b, double eps,
                         const SmoothingOptions& opts = {});
/// Values for increasing eps; each search is seeded with the previous optimum,
/// so the returned sequence is nondecreasing.
std::vector<EntropyValue> hmin_smooth_sequence(const MultiState& rho, const Labels& a, const Labels& b,
                                               const std::vector<double>& eps, const SmoothingOptions& opts = {});
/// Upper bound on the smooth max-entropy via H_max^eps(A|B) = -H_min^eps(A|C).
EntropyValue hmax_smooth(const MultiState& rho, const Labels& a, const Labels& b, double eps,
                         const SmoothingOptions& opts = {});

}  // namespace qdec

#endif  // QDEC_ENTROPY_HPP
