// Copyright 2026 The qdec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QDEC_SDP_HPP
#define QDEC_SDP_HPP

#include "qdec/qcore.hpp"

namespace qdec {

struct SdpOptions {
  double tol = 1e-9;  // target duality gap, in [1e-10, 1e-4]
  int max_newton = 100;  // per barrier step
  int max_outer = 40;
};

/// Solution of min Tr sigma_B s.t. 1_A (x) sigma_B >= rho_AB.
/// The primal iterate is strictly feasible; the dual certificate X >= 0
/// satisfies Tr_A X = 1_B exactly, so dual_value <= optimum <= primal_value.
struct SdpSolution {
  Matrix sigma_star;
  double primal_value = 0.0;
  Matrix dual_certificate;
  double dual_value = 0.0;
  double gap = 0.0;
  int iterations = 0;
  bool converged = false;
};

/// rho_ab is ordered A (x) B with the given dimensions.
SdpSolution solve_dominating_trace_min(const Matrix& rho_ab, int da, int db, const SdpOptions& opts = {});

SdpSolution solve_dominating_trace_min(const MultiState& rho, const Labels& a, const Labels& b,
                                       const SdpOptions& opts = {});

}  // namespace qdec

#endif  // QDEC_SDP_HPP
