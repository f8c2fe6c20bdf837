// Copyright 2026 The qdec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QDEC_RANDOMU_HPP
#define QDEC_RANDOMU_HPP

#include <cstdint>
#include <limits>
#include <optional>
#include <string>
#include <vector>

#include "qdec/qcore.hpp"

namespace qdec {

/// Counter-based SplitMix64 stream: output n is mix(key + n * gamma), so any
/// (seed, stream) pair is reproducible independently of other streams.
class CounterRng {
 public:
  using result_type = std::uint64_t;

  explicit CounterRng(std::uint64_t seed, std::uint64_t stream = 0);

  static constexpr result_type min() { return 0; }
  static constexpr result_type max() { return std::numeric_limits<result_type>::max(); }

  result_type operator()();
  /// Uniform in [0, 1) with 53 random bits.
  double uniform();
  /// Standard normal via Box-Muller.
  double normal();
  /// Complex Gaussian with E|z|^2 = 1.
  Complex complex_normal();
  /// Uniform integer in [0, n) by rejection.
  std::uint64_t below(std::uint64_t n);

 private:
  std::uint64_t key_;
  std::uint64_t counter_ = 0;
  std::optional<double> spare_;
};

/// Stream id for (party, index) draws under one seed.
std::uint64_t derive_stream(std::uint64_t a, std::uint64_t b);

enum class Design { haar, clifford };

std::string to_string(Design d);
Design design_from_string(const std::string& s);

/// Haar unitary: Ginibre matrix, Householder QR, phases of diag(R) removed.
Matrix haar_unitary(int d, CounterRng& rng);

/// The 24 single-qubit Cliffords modulo phase, first nonzero entry real positive.
const std::vector<Matrix>& clifford_group_1q();

/// One unitary per party, drawn from stream (seed, derive_stream(index, party)).
std::vector<Matrix> local_unitary_sample(const std::vector<int>& dims, Design design, std::uint64_t seed,
                                         std::uint64_t index);

struct UnitaryEnsemble {
  Design kind = Design::haar;
  int dim = 2;
  std::vector<Matrix> members;  // empty for Haar
  std::uint64_t seed = 0;
};

UnitaryEnsemble make_ensemble(Design kind, int dim, std::uint64_t seed = 0);

struct TwoDesignReport {
  double max_deviation = 0.0;
  bool pass = false;
  std::size_t members_used = 0;
};

/// Compares E[U^{(x)2} M U^{dag (x)2}] with the Haar second moment over all
/// matrix units M. Haar ensembles are sampled with `samples` draws.
TwoDesignReport verify_2design(const UnitaryEnsemble& ens, double tol = 1e-12, std::size_t samples = 2000);
TwoDesignReport verify_2design(const std::vector<Matrix>& members, double tol = 1e-12);

Vector random_pure_vector(int dim, CounterRng& rng);
PureState random_pure_state(const SystemLayout& layout, CounterRng& rng);
/// rho = G G^dag / Tr with G a dim x rank Ginibre matrix; rank 0 means full.
MultiState random_mixed_state(const SystemLayout& layout, int rank, CounterRng& rng);
/// Random Hermitian matrix with Gaussian entries.
Matrix random_hermitian(int dim, CounterRng& rng);

}  // namespace qdec

#endif  // QDEC_RANDOMU_HPP
