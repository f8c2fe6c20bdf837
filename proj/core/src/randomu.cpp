// Copyright 2026 The qdec Authors
// SPDX-License-Identifier: Apache-2.0

#include "qdec/randomu.hpp"

#include <cmath>
#include <functional>
#include <numbers>

#include "qdec/twirl.hpp"

namespace qdec {
namespace {

constexpr std::uint64_t kGamma = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
  return z ^ (z >> 31);
}

}  // namespace

CounterRng::CounterRng(std::uint64_t seed, std::uint64_t stream)
    : key_(mix64(seed ^ mix64(stream + 0x632BE59BD9B4E019ULL))) {}

CounterRng::result_type CounterRng::operator()() {
  ++counter_;
  return mix64(key_ + counter_ * kGamma);
}

double CounterRng::uniform() { return static_cast<double>((*this)() >> 11) * 0x1.0p-53; }

double CounterRng::normal() {
  if (spare_) {
    double v = *spare_;
    spare_.reset();
    return v;
  }
  double u1 = uniform();
  while (u1 <= 0.0) u1 = uniform();
  double u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double th = 2.0 * std::numbers::pi * u2;
  spare_ = r * std::sin(th);
  return r * std::cos(th);
}

Complex CounterRng::complex_normal() {
  double re = normal();
  double im = normal();
  return Complex(re, im) / std::sqrt(2.0);
}

std::uint64_t CounterRng::below(std::uint64_t n) {
  if (n == 0) throw InputError("below(0)");
  const std::uint64_t limit = max() - max() % n;
  std::uint64_t v;
  do {
    v = (*this)();
  } while (v >= limit);
  return v % n;
}

std::uint64_t derive_stream(std::uint64_t a, std::uint64_t b) { return mix64(mix64(a) ^ (b * kGamma + 1)); }

std::string to_string(Design d) { return d == Design::haar ? "haar" : "clifford"; }

Design design_from_string(const std::string& s) {
  if (s == "haar") return Design::haar;
  if (s == "clifford") return Design::clifford;
  throw InputError("unknown design: " + s);
}

Matrix haar_unitary(int d, CounterRng& rng) {
  if (d < 1) throw InputError("unitary dimension must be >= 1");
  Matrix z(d, d);
  for (int j = 0; j < d; ++j) {
    for (int i = 0; i < d; ++i) z(i, j) = rng.complex_normal();
  }
  Eigen::HouseholderQR<Matrix> qr(z);
  Matrix q = qr.householderQ();
  const Matrix& r = qr.matrixQR();
  for (int j = 0; j < d; ++j) {
    Complex rjj = r(j, j);
    double mag = std::abs(rjj);
    q.col(j) *= mag > 0.0 ? rjj / mag : Complex(1.0);
  }
  return q;
}

namespace {

double snap(double x) {
  const double h = 1.0 / std::sqrt(2.0);
  for (double c : {0.0, 1.0, -1.0, h, -h, 0.5, -0.5}) {
    if (std::abs(x - c) < 1e-9) return c;
  }
  return x;
}

Matrix canonical_phase(const Matrix& u) {
  Matrix out = u;
  for (Eigen::Index i = 0; i < u.size(); ++i) {
    Complex z = u.data()[i];
    if (std::abs(z) > 1e-9) {
      out *= std::conj(z) / std::abs(z);
      break;
    }
  }
  for (Eigen::Index i = 0; i < out.size(); ++i) {
    Complex& z = out.data()[i];
    z = Complex(snap(z.real()), snap(z.imag()));
  }
  return out;
}

}  // namespace

const std::vector<Matrix>& clifford_group_1q() {
  static const std::vector<Matrix> group = [] {
    const double h = 1.0 / std::sqrt(2.0);
    Matrix H(2, 2), S(2, 2);
    H << h, h, h, -h;
    S << 1, 0, 0, Complex(0, 1);
    std::vector<Matrix> elems{canonical_phase(identity(2))};
    for (std::size_t k = 0; k < elems.size(); ++k) {
      for (const Matrix* g : {&H, &S}) {
        Matrix c = canonical_phase(*g * elems[k]);
        bool seen = false;
        for (const auto& e : elems) {
          if ((e - c).cwiseAbs().maxCoeff() < 1e-9) {
            seen = true;
            break;
          }
        }
        if (!seen) elems.push_back(c);
      }
    }
    return elems;
  }();
  return group;
}

std::vector<Matrix> local_unitary_sample(const std::vector<int>& dims, Design design, std::uint64_t seed,
                                         std::uint64_t index) {
  std::vector<Matrix> out;
  for (std::size_t p = 0; p < dims.size(); ++p) {
    CounterRng rng(seed, derive_stream(index, p));
    if (design == Design::clifford) {
      if (dims[p] != 2) throw InputError("Clifford design requires qubit parties");
      out.push_back(clifford_group_1q()[rng.below(24)]);
    } else {
      out.push_back(haar_unitary(dims[p], rng));
    }
  }
  return out;
}

UnitaryEnsemble make_ensemble(Design kind, int dim, std::uint64_t seed) {
  UnitaryEnsemble ens{kind, dim, {}, seed};
  if (kind == Design::clifford) {
    if (dim != 2) throw InputError("Clifford ensemble is defined for qubits only");
    ens.members = clifford_group_1q();
  }
  return ens;
}

namespace {

TwoDesignReport compare_moments(int d, std::size_t n, const std::function<Matrix(std::size_t)>& member, double tol) {
  const int d2 = d * d;
  TwoDesignReport rep;
  rep.members_used = n;
  std::vector<Matrix> twofold;
  twofold.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    Matrix u = member(k);
    twofold.push_back(kron(u, u));
  }
  for (int a = 0; a < d2; ++a) {
    for (int b = 0; b < d2; ++b) {
      Matrix m = Matrix::Zero(d2, d2);
      m(a, b) = 1.0;
      Matrix avg = Matrix::Zero(d2, d2);
      for (const auto& uu : twofold) avg += uu * m * uu.adjoint();
      avg /= static_cast<double>(n);
      SecondMoment sm = haar_second_moment(m, d);
      rep.max_deviation = std::max(rep.max_deviation, (avg - sm.reconstructed).cwiseAbs().maxCoeff());
    }
  }
  rep.pass = rep.max_deviation <= tol;
  return rep;
}

}  // namespace

TwoDesignReport verify_2design(const UnitaryEnsemble& ens, double tol, std::size_t samples) {
  if (ens.kind == Design::clifford) return verify_2design(ens.members, tol);
  return compare_moments(
      ens.dim, samples,
      [&](std::size_t k) {
        CounterRng rng(ens.seed, k);
        return haar_unitary(ens.dim, rng);
      },
      tol);
}

TwoDesignReport verify_2design(const std::vector<Matrix>& members, double tol) {
  if (members.empty()) throw InputError("empty ensemble");
  return compare_moments(static_cast<int>(members[0].rows()), members.size(),
                         [&](std::size_t k) { return members[k]; }, tol);
}

Vector random_pure_vector(int dim, CounterRng& rng) {
  Vector v(dim);
  for (int i = 0; i < dim; ++i) v(i) = rng.complex_normal();
  return v / v.norm();
}

PureState random_pure_state(const SystemLayout& layout, CounterRng& rng) {
  return PureState(layout, random_pure_vector(layout.total_dim(), rng));
}

MultiState random_mixed_state(const SystemLayout& layout, int rank, CounterRng& rng) {
  const int d = layout.total_dim();
  if (rank <= 0 || rank > d) rank = d;
  Matrix g(d, rank);
  for (int j = 0; j < rank; ++j) {
    for (int i = 0; i < d; ++i) g(i, j) = rng.complex_normal();
  }
  Matrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return MultiState::trusted(layout, rho);
}

Matrix random_hermitian(int dim, CounterRng& rng) {
  Matrix m(dim, dim);
  for (int j = 0; j < dim; ++j) {
    for (int i = 0; i < dim; ++i) m(i, j) = rng.complex_normal();
  }
  return hermitian_part(m);
}

}  // namespace qdec
