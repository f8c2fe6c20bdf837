// Copyright 2026 The qdec Authors
// SPDX-License-Identifier: Apache-2.0

#include <cctype>

#include <gmpxx.h>

#include "qdec/error.hpp"
#include "qdec/qcore.hpp"
#include "qdec_cli/commands.hpp"

namespace qdec::cli {
namespace {

mpq_class parse_rational(const std::string& s) {
  if (s.empty()) throw InputError("epsilon: empty value");
  if (s.find('/') != std::string::npos) {
    mpq_class q;
    if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw InputError("epsilon: malformed fraction " + s);
    q.canonicalize();
    return q;
  }
  std::size_t i = 0;
  bool negative = false;
  if (s[i] == '+' || s[i] == '-') negative = s[i++] == '-';
  std::string digits;
  long frac = 0;
  bool dot = false, any = false;
  for (; i < s.size() && (std::isdigit(static_cast<unsigned char>(s[i])) || s[i] == '.'); ++i) {
    if (s[i] == '.') {
      if (dot) throw InputError("epsilon: malformed number " + s);
      dot = true;
      continue;
    }
    any = true;
    digits += s[i];
    if (dot) ++frac;
  }
  if (!any) throw InputError("epsilon: malformed number " + s);
  long exp10 = 0;
  if (i < s.size() && (s[i] == 'e' || s[i] == 'E')) {
    std::size_t used = 0;
    try {
      exp10 = std::stol(s.substr(i + 1), &used);
    } catch (const std::exception&) {
      throw InputError("epsilon: malformed exponent in " + s);
    }
    if (used != s.size() - i - 1) throw InputError("epsilon: malformed exponent in " + s);
    i = s.size();
  }
  if (i != s.size()) throw InputError("epsilon: malformed number " + s);
  if (exp10 > 4096 || exp10 < -4096) throw InputError("epsilon: exponent out of range");
  mpz_class num(digits, 10), ten = 10, scale;
  const long shift = exp10 - frac;
  mpz_pow_ui(scale.get_mpz_t(), ten.get_mpz_t(), static_cast<unsigned long>(shift < 0 ? -shift : shift));
  mpq_class q = shift < 0 ? mpq_class(num, scale) : mpq_class(num * scale);
  q.canonicalize();
  return negative ? mpq_class(-q) : q;
}

}  // namespace

std::string netsize(int d, const std::string& eps) {
  if (d < 1) throw InputError("netsize: dimension must be >= 1");
  if (d > dimension_cap()) throw InputError("netsize: dimension exceeds cap " + std::to_string(dimension_cap()));
  const mpq_class e = parse_rational(eps);
  if (e <= 0 || e >= 1) throw InputError("netsize: epsilon must lie in (0, 1)");
  const unsigned long n = 2ul * static_cast<unsigned long>(d) * static_cast<unsigned long>(d);
  mpz_class num = 5 * e.get_den(), den = e.get_num(), num_n, den_n, out;
  mpz_pow_ui(num_n.get_mpz_t(), num.get_mpz_t(), n);
  mpz_pow_ui(den_n.get_mpz_t(), den.get_mpz_t(), n);
  mpz_cdiv_q(out.get_mpz_t(), num_n.get_mpz_t(), den_n.get_mpz_t());
  return out.get_str();
}

}  // namespace qdec::cli
