// Copyright 2026 The qdec Authors
// SPDX-License-Identifier: Apache-2.0

#include "qdec_cli/io.hpp"

#include <fstream>
#include <sstream>

#include "qdec/randomu.hpp"

namespace qdec::cli {
namespace {

std::pair<int, int> line_column(const std::string& text, std::size_t byte) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < byte && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

const Json& field(const Json& j, const char* name, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  auto it = j.find(name);
  if (it == j.end()) throw InputError(where + ": missing field \"" + name + "\"");
  return *it;
}

int int_field(const Json& j, const char* name, const std::string& where) {
  const Json& v = field(j, name, where);
  if (!v.is_number_integer()) throw InputError(where + "." + name + ": expected an integer");
  return v.get<int>();
}

std::uint64_t seed_field(const Json& j, const std::string& where) {
  const Json& v = field(j, "seed", where);
  if (!v.is_number_integer()) throw InputError(where + ".seed: expected an integer");
  return v.is_number_unsigned() ? v.get<std::uint64_t>() : static_cast<std::uint64_t>(v.get<std::int64_t>());
}

Complex parse_complex(const Json& j, const std::string& where) {
  if (j.is_number()) return {j.get<double>(), 0.0};
  if (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()) {
    return {j[0].get<double>(), j[1].get<double>()};
  }
  throw InputError(where + ": expected a number or an [re, im] pair");
}

bool is_entry(const Json& j) { return j.is_number() || (j.is_array() && j.size() == 2 && j[0].is_number() && j[1].is_number()); }

}  // namespace

Json read_json_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  const std::string text = ss.str();
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    auto [line, col] = line_column(text, e.byte == 0 ? 0 : e.byte - 1);
    throw InputError(path + ":" + std::to_string(line) + ":" + std::to_string(col) + ": malformed JSON");
  }
}

Labels split_labels(const std::string& s) {
  Labels out;
  std::string cur;
  for (char c : s) {
    if (c == ',') {
      if (!cur.empty()) out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur += c;
    }
  }
  if (!cur.empty()) out.push_back(cur);
  return out;
}

SystemLayout parse_layout(const Json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected a list of systems");
  std::vector<Subsystem> systems;
  for (std::size_t i = 0; i < j.size(); ++i) {
    const std::string w = where + "[" + std::to_string(i) + "]";
    const Json& lab = field(j[i], "label", w);
    if (!lab.is_string()) throw InputError(w + ".label: expected a string");
    systems.push_back({lab.get<std::string>(), int_field(j[i], "dim", w)});
  }
  return SystemLayout(std::move(systems));
}

Matrix parse_matrix(const Json& j, int rows, int cols, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected a matrix");
  Matrix m(rows, cols);
  const bool flat = !j.empty() && is_entry(j[0]);
  if (flat) {
    if (j.size() != static_cast<std::size_t>(rows) * cols) {
      throw InputError(where + ": expected " + std::to_string(rows * cols) + " entries, got " +
                       std::to_string(j.size()));
    }
    for (int r = 0; r < rows; ++r) {
      for (int c = 0; c < cols; ++c) {
        m(r, c) = parse_complex(j[r * cols + c], where + "[" + std::to_string(r * cols + c) + "]");
      }
    }
    return m;
  }
  if (j.size() != static_cast<std::size_t>(rows)) {
    throw InputError(where + ": expected " + std::to_string(rows) + " rows, got " + std::to_string(j.size()));
  }
  for (int r = 0; r < rows; ++r) {
    const Json& row = j[r];
    if (!row.is_array() || row.size() != static_cast<std::size_t>(cols)) {
      throw InputError(where + "[" + std::to_string(r) + "]: expected " + std::to_string(cols) + " entries");
    }
    for (int c = 0; c < cols; ++c) {
      m(r, c) = parse_complex(row[c], where + "[" + std::to_string(r) + "][" + std::to_string(c) + "]");
    }
  }
  return m;
}

LoadedState parse_state(const Json& j, const std::string& where) {
  const Json& kind_j = field(j, "kind", where);
  if (!kind_j.is_string()) throw InputError(where + ".kind: expected a string");
  const std::string kind = kind_j.get<std::string>();

  if (kind == "product") {
    const Json& factors = field(j, "factors", where);
    if (!factors.is_array() || factors.empty()) throw InputError(where + ".factors: expected a nonempty list");
    LoadedState acc = parse_state(factors[0], where + ".factors[0]");
    for (std::size_t i = 1; i < factors.size(); ++i) {
      LoadedState f = parse_state(factors[i], where + ".factors[" + std::to_string(i) + "]");
      acc.mixed = tensor(acc.mixed, f.mixed);
      if (acc.pure && f.pure) {
        acc.pure = tensor(*acc.pure, *f.pure);
      } else {
        acc.pure.reset();
      }
    }
    return acc;
  }

  const SystemLayout layout = parse_layout(field(j, "systems", where), where + ".systems");
  const Labels labels = layout.labels();
  const int dim = layout.total_dim();
  auto pure = [](PureState p) { return LoadedState{p.density(), p}; };

  if (kind == "explicit") {
    if (j.contains("vector")) {
      Matrix v = parse_matrix(j["vector"], dim, 1, where + ".vector");
      return pure(PureState(layout, v.col(0)));
    }
    Matrix m = parse_matrix(field(j, "matrix", where), dim, dim, where + ".matrix");
    try {
      return {MultiState(layout, m), std::nullopt};
    } catch (const InputError& e) {
      throw InputError(where + ": " + e.what());
    }
  }
  if (kind == "bell") {
    if (layout.size() != 2 || layout.dims()[0] != layout.dims()[1]) {
      throw InputError(where + ": bell needs two systems of equal dimension");
    }
    return pure(maximally_entangled(layout.dims()[0], labels[0], labels[1]));
  }
  if (kind == "ghz") {
    const int d = layout.dims().empty() ? 0 : layout.dims()[0];
    for (int x : layout.dims()) {
      if (x != d) throw InputError(where + ": ghz needs equal dimensions");
    }
    return pure(ghz(labels, d));
  }
  if (kind == "w") {
    for (int x : layout.dims()) {
      if (x != 2) throw InputError(where + ": w state needs qubits");
    }
    return pure(w_state(labels));
  }
  if (kind == "basis") return pure(basis_state(layout, int_field(j, "index", where)));
  if (kind == "maximally_mixed") return {maximally_mixed(layout), std::nullopt};
  if (kind == "random_pure") {
    CounterRng rng(seed_field(j, where));
    return pure(random_pure_state(layout, rng));
  }
  if (kind == "random_mixed") {
    CounterRng rng(seed_field(j, where));
    const int rank = j.contains("rank") ? int_field(j, "rank", where) : 0;
    if (rank < 0 || rank > dim) throw InputError(where + ".rank: out of range");
    return {random_mixed_state(layout, rank, rng), std::nullopt};
  }
  throw InputError(where + ".kind: unknown state kind \"" + kind + "\"");
}

LoadedState load_state(const std::string& path) { return parse_state(read_json_file(path), path); }

QChannel parse_channel(const Json& j, const std::string& where) {
  const Json& kind_j = field(j, "kind", where);
  if (!kind_j.is_string()) throw InputError(where + ".kind: expected a string");
  const std::string kind = kind_j.get<std::string>();

  if (kind == "tensor") {
    const Json& factors = field(j, "factors", where);
    if (!factors.is_array() || factors.empty()) throw InputError(where + ".factors: expected a nonempty list");
    std::vector<QChannel> chans;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      chans.push_back(parse_channel(factors[i], where + ".factors[" + std::to_string(i) + "]"));
    }
    return QChannel::tensor_product(chans);
  }

  const SystemLayout in = parse_layout(field(j, "in", where), where + ".in");
  const SystemLayout out =
      j.contains("out") ? parse_layout(j["out"], where + ".out") : SystemLayout{};
  try {
    if (kind == "kraus") {
      const Json& ks = field(j, "kraus", where);
      if (!ks.is_array() || ks.empty()) throw InputError(where + ".kraus: expected a nonempty list");
      std::vector<Matrix> kraus;
      for (std::size_t i = 0; i < ks.size(); ++i) {
        kraus.push_back(
            parse_matrix(ks[i], out.total_dim(), in.total_dim(), where + ".kraus[" + std::to_string(i) + "]"));
      }
      return QChannel(in, out, kraus);
    }
    if (kind == "identity") return out.empty() ? identity_channel(in) : identity_channel(in, out);
    if (kind == "depolarize") {
      if (!out.empty() && out != in) throw InputError(where + ": depolarize maps a layout to itself");
      return depolarizing_channel(in);
    }
    if (kind == "measurement") {
      if (in.size() != 1 || out.size() != 1) throw InputError(where + ": measurement needs one input and one output");
      const Json& r = field(j, "projector_ranks", where);
      std::vector<int> ranks = r.get<std::vector<int>>();
      int total = 0;
      for (int x : ranks) total += x;
      if (static_cast<int>(ranks.size()) != out.systems()[0].dim) {
        throw InputError(where + ": output dimension must equal the number of projectors");
      }
      if (total != in.systems()[0].dim) throw InputError(where + ".projector_ranks: must sum to the input dimension");
      return measurement_channel(in.systems()[0], out.systems()[0].label, ranks);
    }
    if (kind == "partial_trace") return partial_trace_channel(in, out.labels());
    if (kind == "constant") {
      LoadedState sigma = parse_state(field(j, "sigma", where), where + ".sigma");
      return constant_channel(in, sigma.mixed);
    }
  } catch (const nlohmann::json::exception& e) {
    throw InputError(where + ": " + e.what());
  }
  throw InputError(where + ".kind: unknown channel kind \"" + kind + "\"");
}

QChannel load_channel(const std::string& path) { return parse_channel(read_json_file(path), path); }

}  // namespace qdec::cli
