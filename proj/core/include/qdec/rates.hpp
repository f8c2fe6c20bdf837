// Copyright 2026 The qdec Authors
// SPDX-License-Identifier: Apache-2.0

#ifndef QDEC_RATES_HPP
#define QDEC_RATES_HPP

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "qdec/entropy.hpp"
#include "qdec/qcore.hpp"

namespace qdec {

enum class RateMode { oneshot, iid };
enum class Sense { at_most, at_least };

std::string to_string(RateMode m);
RateMode rate_mode_from_string(const std::string& s);

/// Entropies per nonempty party subset, keyed by bitmask over `parties`.
struct EntropyTable {
  Labels parties;
  std::map<unsigned, EntropyValue> values;
};

/// H(A_I|cond) for every nonempty I: von Neumann (iid) or certified smooth
/// min-entropy (oneshot).
EntropyTable subset_entropy_table(const MultiState& rho, const Labels& parties, const Labels& cond, RateMode mode,
                                  double eps = 0.0, const SmoothingOptions& opts = {});

/// sum_{i in subset} R_i (<= or >=) bound. `tag` names the constraint.
struct RateConstraint {
  unsigned mask = 0;
  double bound = 0.0;      // raw value
  double effective = 0.0;  // after clipping at 0 for <= regions
  bool clipped = false;
  std::string tag;
};

struct RatePolytope {
  std::string task;
  RateMode mode = RateMode::iid;
  Sense sense = Sense::at_most;
  Labels variables;
  std::vector<RateConstraint> constraints;
  std::map<std::string, double> info;
  std::map<std::string, bool> flags;
};

/// Adds a constraint; <= bounds are clipped at 0 (rates are nonnegative).
void add_constraint(RatePolytope& poly, unsigned mask, double bound, const std::string& tag);

/// sum_{i in I} R_i <= sum log|A_i| + (H(A_I|E))_- [+ 2 log eps in oneshot mode].
RatePolytope randomness_region(const EntropyTable& table, const std::vector<int>& dims, RateMode mode, double eps);
RatePolytope randomness_region(const MultiState& rho, const Labels& parties, RateMode mode, double eps,
                               const SmoothingOptions& opts = {});

/// R <= min_{I subset [m]} S(A C_I) (iid) or H_min^eps(A C_I) + 2 log eps (oneshot).
/// Flags whether -2 log eps <= min_{I != empty} H_min^eps(C_I).
RatePolytope eoa_rate(const PureState& psi, const std::string& a, const Labels& helpers, RateMode mode, double eps,
                      const SmoothingOptions& opts = {});

/// Preprocessing candidate: channels applied to A and each helper (identity if absent).
struct Preprocessing {
  std::string name;
  std::vector<std::pair<std::string, QChannel>> channels;  // (system label, channel)
};

/// Mixed-state EoA: R <= min_I I(A C_I > B C_{I^c}) after preprocessing; the
/// reported rate is the max over the supplied candidates.
RatePolytope eoa_mixed_rate(const MultiState& rho, const std::string& a, const std::string& b, const Labels& helpers,
                            const std::vector<Preprocessing>& candidates, RateMode mode, double eps,
                            const SmoothingOptions& opts = {});

/// sum_{i in I} R_i >= S(A_I | A_{I^c} B) (iid) or H_max^eps(...) - 2 log eps.
RatePolytope merging_region(const MultiState& psi, const Labels& parties, const Labels& b, RateMode mode, double eps,
                            const SmoothingOptions& opts = {});

/// V = sum_k K_k (x) |k>_E as an isometry in -> out (x) E.
struct Stinespring {
  Matrix isometry;
  SystemLayout in;
  SystemLayout out;  // channel outputs then E
};
Stinespring stinespring(const QChannel& ch, const std::string& env_label = "E");

/// psi_{A_1..A_k B E} = (1 (x) V)(phi_1 (x) ... (x) phi_k). Each input state is
/// pure on (reference A_i, channel input A_i').
MultiState mac_state(const QChannel& ch, const std::vector<PureState>& inputs, const std::string& env_label = "E");

/// sum_{i in I} R_i <= I(A_I > B A_{I^c}) (iid) or H_min^eps(A_I|E) + 2 log eps.
RatePolytope mac_region(const QChannel& ch, const std::vector<PureState>& inputs, RateMode mode, double eps,
                        const SmoothingOptions& opts = {});

/// Ensemble-averaged iid bounds: weights q_u with input tuples.
RatePolytope mac_region_ensemble(const QChannel& ch, const std::vector<double>& weights,
                                 const std::vector<std::vector<PureState>>& inputs);

/// Compound region: inf of the bounds for <= regions, sup for >= regions.
RatePolytope compound_region(const std::vector<RatePolytope>& instances);

/// Vertices for up to 3 variables. >= regions are cut by the box
/// |R_i| <= box (default max|bound| + 2). Sorted lexicographically.
std::vector<std::vector<double>> enumerate_vertices(const RatePolytope& poly, std::optional<double> box = {});

/// Header of variable names, then one vertex per row, LF line endings.
std::string vertices_csv(const RatePolytope& poly, const std::vector<std::vector<double>>& vertices);

}  // namespace qdec

#endif  // QDEC_RATES_HPP
