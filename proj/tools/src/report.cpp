// Copyright 2026 The qdec Authors
// SPDX-License-Identifier: Apache-2.0

#include "qdec_cli/report.hpp"

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include <unistd.h>

namespace qdec::cli {
namespace {

std::string format_double(double x) {
  if (!std::isfinite(x)) return "null";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  std::string s = buf;
  if (s.find_first_of(".eE") == std::string::npos) s += ".0";
  return s;
}

void render(const Json& j, int indent, std::string& out) {
  const std::string pad(static_cast<std::size_t>(indent) * 2, ' ');
  const std::string inner(static_cast<std::size_t>(indent + 1) * 2, ' ');
  switch (j.type()) {
    case Json::value_t::object: {
      if (j.empty()) {
        out += "{}";
        return;
      }
      out += "{\n";
      bool first = true;
      for (auto it = j.begin(); it != j.end(); ++it) {
        if (!first) out += ",\n";
        first = false;
        out += inner + Json(it.key()).dump() + ": ";
        render(it.value(), indent + 1, out);
      }
      out += "\n" + pad + "}";
      return;
    }
    case Json::value_t::array: {
      if (j.empty()) {
        out += "[]";
        return;
      }
      bool scalars = true;
      for (const auto& e : j) scalars = scalars && !e.is_structured();
      if (scalars) {
        out += "[";
        for (std::size_t i = 0; i < j.size(); ++i) {
          if (i) out += ", ";
          render(j[i], indent + 1, out);
        }
        out += "]";
        return;
      }
      out += "[\n";
      for (std::size_t i = 0; i < j.size(); ++i) {
        if (i) out += ",\n";
        out += inner;
        render(j[i], indent + 1, out);
      }
      out += "\n" + pad + "]";
      return;
    }
    case Json::value_t::number_float:
      out += format_double(j.get<double>());
      return;
    default:
      out += j.dump();
  }
}

std::string provenance(Certification c) {
  switch (c) {
    case Certification::lower_bound:
      return "certified-lower";
    case Certification::upper_bound:
      return "certified-upper";
    default:
      return "exact";
  }
}

Json optional_number(const std::optional<double>& x) { return x ? Json(*x) : Json(nullptr); }

}  // namespace

std::string dump(const Json& j) {
  std::string out;
  render(j, 0, out);
  out += "\n";
  return out;
}

void write_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp." + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw InputError("cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw InputError("write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw InputError("cannot move report into place at " + path + ": " + ec.message());
  }
}

Json make_report(const std::string& subcommand, const Json& config) {
  Json r;
  r["tool"] = {{"name", "qdec"}, {"version", QDEC_VERSION}};
  r["subcommand"] = subcommand;
  r["config"] = config;
  return r;
}

Json exact_value(double x) { return {{"value", x}, {"provenance", "exact"}}; }

Json certified_value(double x, Certification c) { return {{"value", x}, {"provenance", provenance(c)}}; }

Json mc_value(const McEstimate& mc) {
  Json j;
  j["mean"] = mc.mean;
  j["stderr"] = mc.stderr_;
  j["samples"] = mc.samples;
  j["seed"] = mc.seed;
  j["design"] = to_string(mc.design);
  j["provenance"] = mc.exact ? "exact" : "mc";
  return j;
}

Json entropy_json(const EntropyValue& v) {
  Json j;
  j["kind"] = to_string(v.kind);
  j["a"] = v.a;
  j["b"] = v.b;
  j["alpha"] = optional_number(v.alpha);
  j["epsilon"] = optional_number(v.epsilon);
  j["sigma"] = v.sigma;
  j["value_bits"] = v.value_bits;
  j["provenance"] = provenance(v.certified);
  j["neg_infinity"] = v.neg_infinity;
  j["sdp_gap"] = optional_number(v.sdp_gap);
  return j;
}

Json decoupling_json(const DecouplingReport& r) {
  Json j;
  j["bound"] = r.bound;
  j["smoothing_ball"] = r.smoothing_ball;
  Json terms = Json::array();
  for (const auto& t : r.terms) {
    Json e;
    e["subset"] = t.subset;
    e["d_constant"] = exact_value(t.d_constant);
    e["parameter"] = t.parameter;
    e["state_entropy"] = entropy_json(t.state_entropy);
    e["channel_entropy"] = entropy_json(t.channel_entropy);
    e["additive"] = exact_value(t.additive);
    e["term"] = certified_value(t.term, Certification::upper_bound);
    terms.push_back(e);
  }
  j["terms"] = terms;
  j["total_bound"] = certified_value(r.total_bound, Certification::upper_bound);
  if (r.mc) {
    j["mc"] = mc_value(*r.mc);
    j["mc_mean"] = r.mc->mean;
  }
  if (r.pass) j["pass"] = *r.pass;
  j["notes"] = r.notes;
  return j;
}

Json polytope_json(const RatePolytope& p, const std::vector<std::vector<double>>* vertices) {
  Json j;
  j["task"] = p.task;
  j["mode"] = to_string(p.mode);
  j["sense"] = p.sense == Sense::at_most ? "<=" : ">=";
  j["variables"] = p.variables;
  Json cons = Json::array();
  for (const auto& c : p.constraints) {
    Json e;
    Labels vars;
    for (std::size_t i = 0; i < p.variables.size(); ++i) {
      if (c.mask & (1u << i)) vars.push_back(p.variables[i]);
    }
    e["subset"] = vars;
    e["tag"] = c.tag;
    e["bound"] = c.bound;
    e["effective"] = c.effective;
    e["clipped"] = c.clipped;
    e["provenance"] = p.mode == RateMode::iid ? "exact"
                      : p.sense == Sense::at_most ? "certified-lower"
                                                  : "certified-upper";
    cons.push_back(e);
  }
  j["constraints"] = cons;
  Json info = Json::object();
  for (const auto& [k, v] : p.info) info[k] = v;
  j["info"] = info;
  Json flags = Json::object();
  for (const auto& [k, v] : p.flags) flags[k] = v;
  j["flags"] = flags;
  if (vertices) j["vertices"] = *vertices;
  return j;
}

}  // namespace qdec::cli
