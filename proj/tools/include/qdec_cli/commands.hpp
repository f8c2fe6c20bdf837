// Copyright 2026 The qdec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QDEC_CLI_COMMANDS_HPP
#define QDEC_CLI_COMMANDS_HPP

#include <ostream>
#include <string>
#include <vector>

namespace qdec::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitInput = 1;
inline constexpr int kExitNumerical = 2;

/// Full command-line entry point; args excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// ceil((5/eps)^(2 d^2)) as a decimal string. eps is a decimal or p/q
/// string in (0, 1).
std::string netsize(int d, const std::string& eps);

/// Runs the built-in invariant checks; returns the number of failures.
int selftest(std::ostream& out);

}  // namespace qdec::cli

#endif  // QDEC_CLI_COMMANDS_HPP
