// Copyright 2026 The qdec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QDEC_TWIRL_HPP
#define QDEC_TWIRL_HPP

#include <vector>

#include "qdec/qcore.hpp"

namespace qdec {

/// E_U[U^{(x)2} M U^{dag (x)2}] = alpha 1 + beta F over Haar U on C^d.
struct SecondMoment {
  Complex alpha = 0.0;
  Complex beta = 0.0;
  Matrix reconstructed;
};

/// M acts on C^d (x) C^d. For d = 1 the pair is canonicalized to beta = 0.
SecondMoment haar_second_moment(const Matrix& m, int d);

/// Product-twirl moment: sum_L c_L (F_{A_L} (x) 1), subsets L as bitmasks
/// over the parties (bit i = party i).
struct TwirlMoment {
  std::vector<int> dims;
  std::vector<Complex> coefficients;  // indexed by bitmask
  double condition_number = 1.0;
  Matrix reconstructed;
};

/// M acts on (A_1 ... A_k) (x) (A_1' ... A_k'): first copy of every party,
/// then the second copy. Requires k <= 3.
TwirlMoment local_second_moment(const Matrix& m, const std::vector<int>& dims);

/// Permutation operator swapping the two copies of the parties in `mask`,
/// in the copy-major ordering above.
Matrix partial_swap(const std::vector<int>& dims, unsigned mask);

/// c_I for T_I: (1/prod(1-1/d_i^2)) sum_{L subset I} (-1)^{|I\L|} Tr(tau_{A_L B}^2)/|A_{I\L}|.
double twirl_channel_coefficient(const QChannel& ch, const Labels& subset);

/// E_U ||(T_I o Theta_I) rho_{A_I E}||_2^2 with Theta = U.U^dag - D on each
/// party in `subset`. Parties are the channel inputs; E is every other
/// system of rho.
double expected_hs_norm_sq(const MultiState& rho, const QChannel& ch, const Labels& subset);

/// D_I: 2^{|I|-1} prod (1-1/d^2)^{-1/2} in general, prod sqrt(1-1/d^2)
/// for tensor-product channels.
double d_constant(const std::vector<int>& dims, bool tensor_product);

struct ContractiveCoeff {
  Labels subset;
  double lambda = 0.0;
  double d_constant = 0.0;
  double choi_hs_norm = 0.0;
  bool tensor = false;
};

/// lambda_I with ||E (T_I o Theta_I) rho||_2 <= lambda_I ||rho||_2 in expectation.
ContractiveCoeff lambda_coefficient(const QChannel& ch, const Labels& subset, bool tensor);

/// log|B| + log Tr tau^2 and -H_2(A|B)_{tau|1/|B|} for a unital channel.
struct CollisionCheck {
  double lhs = 0.0;
  double rhs = 0.0;
};
CollisionCheck collision_identity_check(const QChannel& ch);

}  // namespace qdec

#endif  // QDEC_TWIRL_HPP
