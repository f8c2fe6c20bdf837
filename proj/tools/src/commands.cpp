// Copyright 2026 The qdec Authors
// SPDX-License-Identifier: Apache-2.0

#include "qdec_cli/commands.hpp"

#include <cmath>
#include <thread>

#include <CLI11.hpp>

#include "qdec/decouple.hpp"
#include "qdec/entropy.hpp"
#include "qdec/protocols.hpp"
#include "qdec/randomu.hpp"
#include "qdec/rates.hpp"
#include "qdec/twirl.hpp"
#include "qdec_cli/io.hpp"
#include "qdec_cli/report.hpp"

namespace qdec::cli {
namespace {

struct Common {
  std::string out_path;
  std::string format = "json";
};

void emit(const Common& c, const std::string& content, std::ostream& out) {
  if (c.out_path.empty()) {
    out << content;
  } else {
    write_atomic(c.out_path, content);
  }
}

void add_common(CLI::App* app, Common& c) {
  app->add_option("--out", c.out_path, "Write the report to this path");
  app->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"json", "csv"}));
}

std::pair<Labels, Labels> parse_cond(const std::string& s) {
  const auto bar = s.find('|');
  if (bar == std::string::npos) return {split_labels(s), {}};
  return {split_labels(s.substr(0, bar)), split_labels(s.substr(bar + 1))};
}

Design parse_design(const std::string& s) {
  try {
    return design_from_string(s);
  } catch (const InputError&) {
    throw InputError("--design: expected haar or clifford, got " + s);
  }
}

void require_seed(const CLI::Option* seed, const char* what) {
  if (seed->count() == 0) throw InputError(std::string(what) + " is stochastic and needs --seed");
}

// entropy ----------------------------------------------------------------

struct EntropyArgs {
  Common common;
  std::string state, kind = "hmin", cond;
  double alpha = 2.0, epsilon = 0.0, sdp_tol = 1e-9;
  std::uint64_t seed = 0;
  int budget = 40;
};

EntropyValue compute_entropy(const MultiState& rho, const EntropyArgs& a, const Labels& lhs, const Labels& rhs) {
  SdpOptions sdp;
  sdp.tol = a.sdp_tol;
  SmoothingOptions smooth;
  smooth.seed = a.seed;
  smooth.budget = a.budget;
  smooth.sdp.tol = std::max(a.sdp_tol, 1e-10);
  const std::string& k = a.kind;
  if (k == "vn" || k == "von_neumann") return rhs.empty() ? von_neumann(rho, lhs) : cond_von_neumann(rho, lhs, rhs);
  if (k == "coherent") return coherent_information(rho, lhs, rhs);
  if (k == "renyi") {
    Matrix sigma = rhs.empty() ? Matrix::Ones(1, 1) : marginal_matrix(rho.layout(), rho.matrix(), rhs);
    EntropyValue v = renyi_sandwiched_fixed(rho, lhs, rhs, a.alpha, sigma);
    return v;
  }
  if (k == "renyi_opt") {
    RenyiOptions ro;
    ro.seed = a.seed;
    return renyi_optimized(rho, lhs, rhs, a.alpha, ro);
  }
  if (k == "hmin") return hmin(rho, lhs, rhs, sdp);
  if (k == "hmax") return hmax(rho, lhs, rhs, sdp);
  if (k == "hmin_smooth") return hmin_smooth(rho, lhs, rhs, a.epsilon, smooth);
  if (k == "hmax_smooth") return hmax_smooth(rho, lhs, rhs, a.epsilon, smooth);
  throw InputError("--kind: unknown entropy kind " + k);
}

int cmd_entropy(const EntropyArgs& a, std::ostream& out) {
  LoadedState st = load_state(a.state);
  auto [lhs, rhs] = parse_cond(a.cond);
  if (lhs.empty()) throw InputError("--cond: no systems before '|'");
  EntropyValue v = compute_entropy(st.mixed, a, lhs, rhs);
  Json cfg = {{"state", a.state}, {"kind", a.kind}, {"cond", a.cond}, {"alpha", a.alpha},
              {"epsilon", a.epsilon}, {"seed", a.seed}, {"sdp_tol", a.sdp_tol}};
  Json r = make_report("entropy", cfg);
  r["value_bits"] = v.value_bits;
  r["provenance"] = entropy_json(v)["provenance"];
  r["entropy"] = entropy_json(v);
  emit(a.common, dump(r), out);
  return kExitOk;
}

// twirl ------------------------------------------------------------------

struct TwirlArgs {
  Common common;
  std::string channel, state;
};

int cmd_twirl(const TwirlArgs& a, std::ostream& out) {
  QChannel ch = load_channel(a.channel);
  std::optional<LoadedState> st;
  if (!a.state.empty()) st = load_state(a.state);
  const Labels parties = ch.in_layout().labels();
  Json cfg = {{"channel", a.channel}, {"state", a.state}};
  Json r = make_report("twirl", cfg);
  r["parties"] = parties;
  r["tensor_product"] = ch.is_tensor_product();
  r["unital"] = ch.unital();
  Json subsets = Json::array();
  for (const Labels& sub : nonempty_subsets(parties)) {
    Json e;
    e["subset"] = sub;
    e["channel_coefficient"] = exact_value(twirl_channel_coefficient(ch, sub));
    ContractiveCoeff gen = lambda_coefficient(ch, sub, false);
    e["lambda"] = exact_value(gen.lambda);
    e["d_constant"] = exact_value(gen.d_constant);
    if (ch.is_tensor_product()) e["lambda_tensor"] = exact_value(lambda_coefficient(ch, sub, true).lambda);
    if (st) e["expected_hs_norm_sq"] = exact_value(expected_hs_norm_sq(st->mixed, ch, sub));
    subsets.push_back(e);
  }
  r["subsets"] = subsets;
  if (ch.unital()) {
    CollisionCheck cc = collision_identity_check(ch);
    r["collision_identity"] = {{"lhs", exact_value(cc.lhs)}, {"rhs", exact_value(cc.rhs)}};
  }
  emit(a.common, dump(r), out);
  return kExitOk;
}

// decouple ---------------------------------------------------------------

struct DecoupleArgs {
  Common common;
  std::string state, channel, bound = "renyi", design = "haar", exact_design, zeta = "marginal",
                                  sigma = "choi_marginal";
  std::vector<double> alpha{2.0}, epsilon{0.0};
  long long samples = 2000;
  std::uint64_t seed = 0;
  int workers = 1;
  bool tensor_constant = false;
};

int cmd_decouple(const DecoupleArgs& a, const CLI::Option* seed_opt, std::ostream& out) {
  LoadedState st = load_state(a.state);
  QChannel ch = load_channel(a.channel);
  const Labels parties = ch.in_layout().labels();
  if (a.samples < 0 || a.samples == 1) throw InputError("--samples: need 0 (exact) or at least 2");
  if (a.workers < 1) throw InputError("--workers: must be >= 1");
  BoundConfig cfg;
  cfg.alpha = a.alpha;
  cfg.epsilon = a.epsilon;
  cfg.tensor_constant = a.tensor_constant;
  cfg.smoothing.seed = a.seed;
  cfg.renyi.seed = a.seed;
  if (a.zeta == "optimized") {
    cfg.zeta = ZetaChoice::optimized;
  } else if (a.zeta != "marginal") {
    throw InputError("--zeta: expected marginal or optimized");
  }
  if (a.sigma == "optimized") {
    cfg.sigma = SigmaChoice::optimized;
  } else if (a.sigma != "choi_marginal") {
    throw InputError("--sigma: expected choi_marginal or optimized");
  }
  DecouplingReport rep;
  if (a.bound == "renyi") {
    rep = bound_renyi(st.mixed, ch, parties, cfg);
  } else if (a.bound == "smooth") {
    rep = bound_smooth(st.mixed, ch, parties, cfg);
  } else {
    throw InputError("--bound: expected smooth or renyi");
  }
  if (a.samples == 0) {
    if (!a.exact_design.empty()) {
      if (a.exact_design != "clifford") throw InputError("--exact-design: only clifford enumeration is available");
      attach_mc(rep, exact_clifford_decoupling_error(st.mixed, ch, parties, a.workers));
    }
  } else {
    require_seed(seed_opt, "Monte-Carlo decoupling");
    attach_mc(rep, mc_decoupling_error(st.mixed, ch, parties, static_cast<std::size_t>(a.samples), a.seed,
                                       parse_design(a.design), a.workers));
  }
  Json cfgj = {{"state", a.state}, {"channel", a.channel}, {"bound", a.bound},     {"alpha", a.alpha},
               {"epsilon", a.epsilon}, {"samples", a.samples}, {"seed", a.seed}, {"design", a.design},
               {"exact_design", a.exact_design}, {"zeta", a.zeta}, {"sigma", a.sigma},
               {"tensor_constant", a.tensor_constant}};
  Json r = make_report("decouple", cfgj);
  r["parties"] = parties;
  r["report"] = decoupling_json(rep);
  r["total_bound"] = rep.total_bound;
  if (rep.mc) {
    r["mc_mean"] = rep.mc->mean;
    r["mc_stderr"] = rep.mc->stderr_;
  }
  if (rep.pass) r["pass"] = *rep.pass;
  emit(a.common, dump(r), out);
  return kExitOk;
}

// extract ----------------------------------------------------------------

struct ExtractArgs {
  Common common;
  std::string state, parties, design = "clifford";
  std::vector<int> t;
  long long samples = 0;
  std::uint64_t seed = 0;
};

int cmd_extract(const ExtractArgs& a, const CLI::Option* seed_opt, std::ostream& out) {
  LoadedState st = load_state(a.state);
  const Labels parties = split_labels(a.parties);
  if (parties.empty()) throw InputError("--parties: need at least one party");
  if (a.t.size() != parties.size()) throw InputError("--t: need one value per party");
  if (a.samples < 0 || a.samples == 1) throw InputError("--samples: need 0 (exact) or at least 2");
  if (a.samples > 0) require_seed(seed_opt, "sampled extraction");
  McEstimate mc = randomness_extraction_average(st.mixed, parties, a.t, parse_design(a.design),
                                                static_cast<std::size_t>(a.samples), a.seed);
  Json cfg = {{"state", a.state}, {"parties", parties}, {"t", a.t},
              {"design", a.design}, {"samples", a.samples}, {"seed", a.seed}};
  Json r = make_report("extract", cfg);
  r["distance"] = mc_value(mc);
  emit(a.common, dump(r), out);
  return kExitOk;
}

// eoa --------------------------------------------------------------------

struct EoaArgs {
  Common common;
  std::string state, a = "A", b = "B", helpers, design = "clifford", mode = "iid";
  int d = 2;
  long long samples = 0;
  std::uint64_t seed = 0;
  double epsilon = 0.1;
};

int cmd_eoa(const EoaArgs& a, const CLI::Option* seed_opt, std::ostream& out) {
  LoadedState st = load_state(a.state);
  if (!st.pure) throw InputError(a.state + ": eoa simulation needs a pure state");
  const Labels helpers = split_labels(a.helpers);
  if (a.samples < 0 || a.samples == 1) throw InputError("--samples: need 0 (exact) or at least 2");
  const Design design = parse_design(a.design);
  const bool exact_possible = design == Design::clifford && helpers.size() + 1 <= 3;
  if (!exact_possible || a.samples > 0) require_seed(seed_opt, "sampled eoa");
  EoaSimulation sim = simulate_eoa(*st.pure, a.a, a.b, helpers, a.d, design, static_cast<std::size_t>(a.samples),
                                   a.seed);
  const RateMode mode = rate_mode_from_string(a.mode);
  SmoothingOptions so;
  so.seed = a.seed;
  RatePolytope rate = eoa_rate(*st.pure, a.a, helpers, mode, a.epsilon, so);
  Json cfg = {{"state", a.state}, {"a", a.a},         {"b", a.b},       {"helpers", helpers}, {"d", a.d},
              {"design", a.design}, {"samples", a.samples}, {"seed", a.seed}, {"mode", a.mode},
              {"epsilon", a.epsilon}};
  Json r = make_report("eoa", cfg);
  Json s;
  s["average_error"] = sim.exact ? exact_value(sim.average_error)
                                 : Json{{"mean", sim.average_error},
                                        {"stderr", sim.stderr_},
                                        {"samples", sim.unitary_samples},
                                        {"provenance", "mc"}};
  s["exact"] = sim.exact;
  s["helpers_used"] = sim.helpers_used;
  s["padded_a_dim"] = sim.padded_a_dim;
  s["design"] = to_string(sim.design);
  r["simulation"] = s;
  r["rate"] = polytope_json(rate, nullptr);
  r["catalytic_entanglement"] = "o(n) EPR pairs assumed available; not simulated";
  emit(a.common, dump(r), out);
  return kExitOk;
}

// rates ------------------------------------------------------------------

struct RatesArgs {
  Common common;
  std::string task = "randomness", mode = "iid", instance_mode = "iid", parties, b, a = "A", helpers;
  std::vector<std::string> states, channels, inputs, preprocess;
  double epsilon = 0.1;
  double box = 0.0;
  std::uint64_t seed = 0;
};

Preprocessing load_preprocessing(const std::string& path) {
  Json j = read_json_file(path);
  Preprocessing p;
  p.name = j.value("name", path);
  if (!j.contains("channels") || !j["channels"].is_array()) throw InputError(path + ": missing \"channels\" list");
  for (std::size_t i = 0; i < j["channels"].size(); ++i) {
    const Json& e = j["channels"][i];
    const std::string w = path + ".channels[" + std::to_string(i) + "]";
    if (!e.contains("system") || !e["system"].is_string()) throw InputError(w + ": missing \"system\"");
    if (!e.contains("channel")) throw InputError(w + ": missing \"channel\"");
    p.channels.emplace_back(e["system"].get<std::string>(), parse_channel(e["channel"], w + ".channel"));
  }
  return p;
}

RatePolytope single_region(const RatesArgs& a, RateMode mode, const std::string& state_path,
                           const std::string& channel_path) {
  SmoothingOptions so;
  so.seed = a.seed;
  const double eps = mode == RateMode::oneshot ? a.epsilon : 0.0;
  if (a.task == "mac") {
    QChannel ch = load_channel(channel_path);
    std::vector<PureState> ins;
    for (const auto& p : a.inputs) {
      LoadedState s = load_state(p);
      if (!s.pure) throw InputError(p + ": mac inputs must be pure");
      ins.push_back(*s.pure);
    }
    return mac_region(ch, ins, mode, eps, so);
  }
  LoadedState st = load_state(state_path);
  if (a.task == "randomness") return randomness_region(st.mixed, split_labels(a.parties), mode, eps, so);
  if (a.task == "merging") {
    return merging_region(st.mixed, split_labels(a.parties), split_labels(a.b), mode, eps, so);
  }
  if (a.task == "eoa") {
    const Labels helpers = split_labels(a.helpers);
    if (st.pure && a.preprocess.empty()) return eoa_rate(*st.pure, a.a, helpers, mode, eps, so);
    const Labels bl = split_labels(a.b);
    if (bl.size() != 1) throw InputError("--b: mixed-state eoa needs exactly one B system");
    std::vector<Preprocessing> cands;
    for (const auto& p : a.preprocess) cands.push_back(load_preprocessing(p));
    return eoa_mixed_rate(st.mixed, a.a, bl[0], helpers, cands, mode, eps, so);
  }
  throw InputError("--task: expected randomness, eoa, merging or mac");
}

int cmd_rates(const RatesArgs& a, std::ostream& out) {
  RatePolytope poly;
  int instances = 1;
  if (a.mode == "compound") {
    const RateMode inner = rate_mode_from_string(a.instance_mode);
    std::vector<RatePolytope> polys;
    if (a.task == "mac") {
      if (a.channels.empty()) throw InputError("--channel: compound mac needs at least one channel");
      for (const auto& c : a.channels) polys.push_back(single_region(a, inner, "", c));
    } else {
      if (a.states.empty()) throw InputError("--state: compound mode needs at least one state");
      for (const auto& s : a.states) polys.push_back(single_region(a, inner, s, ""));
    }
    instances = static_cast<int>(polys.size());
    poly = compound_region(polys);
  } else {
    const RateMode mode = rate_mode_from_string(a.mode);
    if (a.task == "mac") {
      if (a.channels.size() != 1) throw InputError("--channel: need exactly one channel");
      poly = single_region(a, mode, "", a.channels[0]);
    } else {
      if (a.states.size() != 1) throw InputError("--state: need exactly one state (use --mode compound for sets)");
      poly = single_region(a, mode, a.states[0], "");
    }
  }
  std::optional<double> box;
  if (a.box > 0.0) box = a.box;
  std::vector<std::vector<double>> verts;
  const bool have_vertices = poly.variables.size() <= 3;
  if (have_vertices) verts = enumerate_vertices(poly, box);
  if (a.common.format == "csv") {
    if (!have_vertices) throw InputError("--format csv: vertex export supports at most 3 rate variables");
    emit(a.common, vertices_csv(poly, verts), out);
    return kExitOk;
  }
  Json cfg = {{"task", a.task},       {"mode", a.mode},       {"instance_mode", a.instance_mode},
              {"states", a.states},   {"channels", a.channels}, {"inputs", a.inputs},
              {"preprocess", a.preprocess}, {"parties", a.parties}, {"b", a.b},
              {"a", a.a},             {"helpers", a.helpers}, {"epsilon", a.epsilon},
              {"seed", a.seed},       {"box", a.box}};
  Json r = make_report("rates", cfg);
  r["instances"] = instances;
  r["polytope"] = polytope_json(poly, have_vertices ? &verts : nullptr);
  emit(a.common, dump(r), out);
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Multi-party decoupling toolkit", "qdec"};
  app.require_subcommand(1);
  app.set_version_flag("--version", QDEC_VERSION);

  EntropyArgs ea;
  auto* ent = app.add_subcommand("entropy", "Evaluate a conditional entropy");
  ent->add_option("--state", ea.state, "State JSON")->required();
  ent->add_option("--kind", ea.kind,
                  "vn | coherent | renyi | renyi_opt | hmin | hmax | hmin_smooth | hmax_smooth");
  ent->add_option("--cond", ea.cond, "\"A1,A2|B\"")->required();
  ent->add_option("--alpha", ea.alpha, "Renyi order");
  ent->add_option("--epsilon", ea.epsilon, "Smoothing radius");
  ent->add_option("--seed", ea.seed, "Seed for randomized searches");
  ent->add_option("--sdp-tol", ea.sdp_tol, "SDP duality-gap target")->check(CLI::Range(1e-10, 1e-4));
  ent->add_option("--budget", ea.budget, "Smoothing search budget");
  add_common(ent, ea.common);

  TwirlArgs ta;
  auto* tw = app.add_subcommand("twirl", "Twirl coefficients and contractivity constants of a channel");
  tw->add_option("--channel", ta.channel, "Channel JSON")->required();
  tw->add_option("--state", ta.state, "Optional state for expected Hilbert-Schmidt norms");
  add_common(tw, ta.common);

  DecoupleArgs da;
  auto* dec = app.add_subcommand("decouple", "Decoupling bound with an optional Monte-Carlo check");
  dec->add_option("--state", da.state, "State JSON on inputs and E")->required();
  dec->add_option("--channel", da.channel, "Channel JSON")->required();
  dec->add_option("--bound", da.bound, "smooth | renyi");
  dec->add_option("--alpha", da.alpha, "Renyi order per subset (one value applies to all)");
  dec->add_option("--epsilon", da.epsilon, "Smoothing radius per subset (one value applies to all)");
  dec->add_option("--samples", da.samples, "Monte-Carlo samples; 0 disables sampling");
  auto* dec_seed = dec->add_option("--seed", da.seed, "Seed");
  dec->add_option("--design", da.design, "haar | clifford");
  dec->add_option("--exact-design", da.exact_design, "clifford: exact enumeration when --samples 0");
  dec->add_option("--workers", da.workers, "Worker threads");
  dec->add_option("--zeta", da.zeta, "marginal | optimized");
  dec->add_option("--sigma", da.sigma, "choi_marginal | optimized");
  dec->add_flag("--tensor-constant", da.tensor_constant, "Use the tensor-product constant");
  add_common(dec, da.common);

  ExtractArgs xa;
  auto* ext = app.add_subcommand("extract", "Simulate local randomness extraction");
  ext->add_option("--state", xa.state, "State JSON")->required();
  ext->add_option("--parties", xa.parties, "Comma-separated parties")->required();
  ext->add_option("--t", xa.t, "Outcomes per party")->required()->delimiter(',');
  ext->add_option("--design", xa.design, "haar | clifford");
  ext->add_option("--samples", xa.samples, "Unitary samples; 0 enumerates the Clifford group");
  auto* ext_seed = ext->add_option("--seed", xa.seed, "Seed");
  add_common(ext, xa.common);

  EoaArgs oa;
  auto* eoa = app.add_subcommand("eoa", "Simulate entanglement of assistance");
  eoa->add_option("--state", oa.state, "Pure state JSON")->required();
  eoa->add_option("--a", oa.a, "System A");
  eoa->add_option("--b", oa.b, "System B");
  eoa->add_option("--helpers", oa.helpers, "Comma-separated helper systems");
  eoa->add_option("--d", oa.d, "Target Schmidt rank");
  eoa->add_option("--design", oa.design, "haar | clifford");
  eoa->add_option("--samples", oa.samples, "Unitary samples; 0 enumerates when possible");
  auto* eoa_seed = eoa->add_option("--seed", oa.seed, "Seed");
  eoa->add_option("--mode", oa.mode, "oneshot | iid");
  eoa->add_option("--epsilon", oa.epsilon, "Smoothing radius for oneshot rates");
  add_common(eoa, oa.common);

  RatesArgs ra;
  auto* rat = app.add_subcommand("rates", "Rate regions and vertices");
  rat->add_option("--task", ra.task, "randomness | eoa | merging | mac")
      ->check(CLI::IsMember({"randomness", "eoa", "merging", "mac"}));
  rat->add_option("--mode", ra.mode, "oneshot | iid | compound")
      ->check(CLI::IsMember({"oneshot", "iid", "compound"}));
  rat->add_option("--instance-mode", ra.instance_mode, "Per-instance mode in compound runs")
      ->check(CLI::IsMember({"oneshot", "iid"}));
  rat->add_option("--state", ra.states, "State JSON (repeat for compound sets)");
  rat->add_option("--channel", ra.channels, "Channel JSON for mac (repeat for compound sets)");
  rat->add_option("--input", ra.inputs, "Pure input state per channel input (mac)");
  rat->add_option("--preprocess", ra.preprocess, "Preprocessing candidate JSON (mixed eoa)");
  rat->add_option("--parties", ra.parties, "Comma-separated parties");
  rat->add_option("--b", ra.b, "Comma-separated B systems");
  rat->add_option("--a", ra.a, "System A (eoa)");
  rat->add_option("--helpers", ra.helpers, "Comma-separated helpers (eoa)");
  rat->add_option("--epsilon", ra.epsilon, "Smoothing radius for oneshot regions");
  rat->add_option("--seed", ra.seed, "Seed for smoothing searches");
  rat->add_option("--box", ra.box, "Display box for vertex enumeration");
  add_common(rat, ra.common);

  auto* self = app.add_subcommand("selftest", "Run the built-in invariant checks");

  int ns_dim = 2;
  std::string ns_eps;
  Common ns_common;
  auto* ns = app.add_subcommand("netsize", "Size bound of a state-space epsilon-net");
  ns->add_option("--dim", ns_dim, "Hilbert-space dimension")->required();
  ns->add_option("--epsilon", ns_eps, "Net radius in (0, 1), decimal or p/q")->required();
  add_common(ns, ns_common);

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << QDEC_VERSION << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "qdec: " << e.what() << "\n";
    return kExitInput;
  }

  try {
    if (*ent) return cmd_entropy(ea, out);
    if (*tw) return cmd_twirl(ta, out);
    if (*dec) return cmd_decouple(da, dec_seed, out);
    if (*ext) return cmd_extract(xa, ext_seed, out);
    if (*eoa) return cmd_eoa(oa, eoa_seed, out);
    if (*rat) return cmd_rates(ra, out);
    if (*self) return selftest(out) == 0 ? kExitOk : kExitNumerical;
    if (*ns) {
      Json r = make_report("netsize", {{"dim", ns_dim}, {"epsilon", ns_eps}});
      r["net_size_bound"] = netsize(ns_dim, ns_eps);
      emit(ns_common, dump(r), out);
      return kExitOk;
    }
  } catch (const NumericalError& e) {
    err << "qdec: numerical error: " << e.what() << "\n";
    return kExitNumerical;
  } catch (const InputError& e) {
    err << "qdec: input error: " << e.what() << "\n";
    return kExitInput;
  } catch (const nlohmann::json::exception& e) {
    err << "qdec: input error: " << e.what() << "\n";
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace qdec::cli
