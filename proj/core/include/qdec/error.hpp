// Copyright 2026 The qdec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QDEC_ERROR_HPP
#define QDEC_ERROR_HPP

#include <stdexcept>
#include <string>

namespace qdec {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input: unknown label, dimension mismatch, invariant violation.
class InputError : public Error {
 public:
  using Error::Error;
};

/// An iterative routine stopped before reaching its tolerance.
class NumericalError : public Error {
 public:
  using Error::Error;
};

}  // namespace qdec

#endif  // QDEC_ERROR_HPP
