// Copyright 2026 The qdec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QDEC_CLI_IO_HPP
#define QDEC_CLI_IO_HPP

#include <optional>
#include <string>

#include <json.hpp>

#include "qdec/qcore.hpp"

namespace qdec::cli {

using Json = nlohmann::ordered_json;

/// Parses a JSON file; syntax errors report line and column.
Json read_json_file(const std::string& path);

/// A loaded state; `pure` is set when the source is a state vector.
struct LoadedState {
  MultiState mixed;
  std::optional<PureState> pure;
};

/// State schema:
///   {"systems":[{"label","dim"}...],
///    "kind":"explicit|bell|ghz|w|random_pure|random_mixed|maximally_mixed|basis|product",
///    "matrix": rows of [re,im] pairs or a flat row-major list (explicit),
///    "vector": list of [re,im] pairs (explicit pure),
///    "seed": int (random kinds), "rank": int (random_mixed),
///    "index": int (basis), "factors": [states] (product)}
LoadedState parse_state(const Json& j, const std::string& where = "state");
LoadedState load_state(const std::string& path);

/// Channel schema:
///   {"in":[{"label","dim"}...], "out":[...],
///    "kind":"kraus|identity|depolarize|measurement|partial_trace|constant|tensor",
///    "kraus":[matrices], "projector_ranks":[ints], "sigma": state,
///    "factors":[channels] (tensor)}
QChannel parse_channel(const Json& j, const std::string& where = "channel");
QChannel load_channel(const std::string& path);

SystemLayout parse_layout(const Json& j, const std::string& where);
Matrix parse_matrix(const Json& j, int rows, int cols, const std::string& where);

/// Comma-separated labels; empty string gives an empty list.
Labels split_labels(const std::string& s);

}  // namespace qdec::cli

#endif  // QDEC_CLI_IO_HPP
