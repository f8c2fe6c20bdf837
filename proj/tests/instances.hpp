// Copyright 2026 The qdec Authors
// SPDX-License-Identifier: Apache-2.0

// Random decoupling instances and a Kraus-sum reference for the
// decoupling difference.

#ifndef QDEC_TESTS_INSTANCES_HPP
#define QDEC_TESTS_INSTANCES_HPP

#include <algorithm>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "qdec/qcore.hpp"
#include "qdec/randomu.hpp"

namespace testing_instances {

using qdec::CounterRng;
using qdec::Labels;
using qdec::Matrix;
using qdec::MultiState;
using qdec::QChannel;
using qdec::Subsystem;
using qdec::SystemLayout;

/// Channel with nk Kraus operators cut from a random isometry.
inline QChannel random_channel(const SystemLayout& in, const SystemLayout& out, int nk, CounterRng& r) {
  const int di = in.total_dim(), dout = out.total_dim();
  Matrix v(dout * nk, di);
  for (Eigen::Index i = 0; i < v.size(); ++i) v(i) = r.complex_normal();
  Eigen::HouseholderQR<Matrix> qr(v);
  Matrix iso = qr.householderQ() * Matrix::Identity(dout * nk, di);
  std::vector<Matrix> kraus;
  for (int k = 0; k < nk; ++k) {
    Matrix kk(dout, di);
    for (int o = 0; o < dout; ++o) kk.row(o) = iso.row(o * nk + k);
    kraus.push_back(kk);
  }
  return QChannel(in, out, kraus);
}

/// Unital channel sum_i p_i U_i . U_i^dag.
inline QChannel random_mixed_unitary(const SystemLayout& in, int terms, CounterRng& r) {
  std::vector<double> p(terms);
  double s = 0.0;
  for (auto& x : p) s += (x = r.uniform() + 0.1);
  std::vector<Matrix> kraus;
  for (double x : p) kraus.push_back(std::sqrt(x / s) * qdec::haar_unitary(in.total_dim(), r));
  return QChannel(in, in, kraus);
}

struct Instance {
  MultiState rho;
  QChannel ch;
  Labels parties;
};

/// k qubit parties A1..Ak and a qubit E; channel onto one system B with
/// enough Kraus operators to be trace preserving.
inline Instance random_instance(int k, CounterRng& r) {
  std::vector<Subsystem> sys, in;
  Labels parties;
  for (int i = 0; i < k; ++i) {
    const std::string a = "A" + std::to_string(i + 1);
    sys.push_back({a, 2});
    in.push_back({a, 2});
    parties.push_back(a);
  }
  sys.push_back({"E", 2});
  const int db = k == 3 ? 2 : 3;
  const int nk = std::max(2, ((1 << k) + db - 1) / db);
  SystemLayout out({{"B", db}});
  return {qdec::random_mixed_state(SystemLayout(sys), 0, r), random_channel(SystemLayout(in), out, nk, r), parties};
}

/// (T (x) id_E)(U rho U^dag) - T(1/|A|) (x) rho_E by Kraus sums; parties
/// first in rho, then E of dimension de.
inline oracle::Mat difference_oracle(const oracle::Mat& rho, const QChannel& ch, const oracle::Mat& u, int de) {
  using oracle::Mat;
  const int da = ch.in_layout().total_dim(), db = ch.out_layout().total_dim();
  const Mat ue = oracle::kron(u, Mat::Identity(de, de));
  const Mat r = ue * rho * ue.adjoint();
  Mat out = Mat::Zero(db * de, db * de);
  Mat tau = Mat::Zero(db, db);
  for (const auto& k : ch.kraus()) {
    const Mat ke = oracle::kron(k, Mat::Identity(de, de));
    out += ke * r * ke.adjoint();
    tau += k * k.adjoint() / static_cast<double>(da);
  }
  return out - oracle::kron(tau, oracle::partial_trace(rho, {da, de}, {false, true}));
}

}  // namespace testing_instances

#endif  // QDEC_TESTS_INSTANCES_HPP
