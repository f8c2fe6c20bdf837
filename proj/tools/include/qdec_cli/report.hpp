// Copyright 2026 The qdec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QDEC_CLI_REPORT_HPP
#define QDEC_CLI_REPORT_HPP

#include <string>
#include <vector>

#include "qdec/decouple.hpp"
#include "qdec/entropy.hpp"
#include "qdec/rates.hpp"
#include "qdec_cli/io.hpp"

namespace qdec::cli {

/// Deterministic rendering: insertion-ordered keys, two-space indent,
/// floats with 17 significant digits, trailing newline.
std::string dump(const Json& j);

/// Writes via a temporary file in the same directory and a rename.
void write_atomic(const std::string& path, const std::string& content);

/// Report skeleton with tool name, version and the echoed configuration.
Json make_report(const std::string& subcommand, const Json& config);

// Numbers tagged with their provenance.
Json exact_value(double x);
Json certified_value(double x, Certification c);
Json mc_value(const McEstimate& mc);

Json entropy_json(const EntropyValue& v);
Json decoupling_json(const DecouplingReport& r);
Json polytope_json(const RatePolytope& p, const std::vector<std::vector<double>>* vertices);

}  // namespace qdec::cli

#endif  // QDEC_CLI_REPORT_HPP
