#pragma once

#include <functional>

#include "fkppg/ppg.hpp"

namespace fkppg {

/// One length-t path with its exact probability mass and truncated weight.
struct Path {
  std::vector<State> states;
  double probability = 0.0;
  double weight = 0.0;
};

/// Exact enumeration of all positive-probability length-t paths of a
/// finite-support model.
struct PathTable {
  uint32_t horizon = 0;
  std::vector<Path> paths;
  bool prune_zero_weight = true;
  /// Probability mass of branches dropped because their weight hit 0.
  double pruned_probability_mass = 0.0;
  uint64_t explored_prefixes = 0;
};

struct EnumerateOptions {
  /// Maximum number of live prefixes at any depth.
  size_t cap = 1'000'000;
  /// Drop branches whose weight reaches 0 (their mass is still accounted
  /// in pruned_probability_mass). Disable to check probability
  /// conservation.
  bool prune_zero_weight = true;
};

PathTable enumerate_paths(const Ppg& g, uint32_t horizon, const EnumerateOptions& options = {});

/// Query over terminated states: h(v, S) = expr(v) * [S = nil], with an
/// optional upper bound; evaluated h values must lie in [0, bound].
struct LiftedQuery {
  Expr h;
  std::optional<double> bound;
};

/// Sum over paths of probability * functional(path).
double expectation_t(const PathTable& table, const std::function<double(const Path&)>& functional);

using PathFunctional = std::function<double(const Path&)>;

/// w_t: the cached truncated weight.
PathFunctional functional_weight();
/// 1[terminated within t] * w_t.
PathFunctional functional_terminated_weight(const Ppg& g);
/// h at the first terminated state (0 when none) * w_t.
PathFunctional functional_lifted_weight(const Ppg& g, const LiftedQuery& query);

/// Value of h at the first terminated state of the path, 0 if the path
/// never terminates within the horizon. Checks the query's range.
double lifted_value(const Ppg& g, const LiftedQuery& query, const Path& path);

struct FilterAtom {
  State state;
  double mass;
};

/// Weighted final-state marginal, normalized: the exact filtering
/// distribution at the table's horizon. Deterministically sorted by
/// (checkpoint, store).
std::vector<FilterAtom> filtering_distribution(const Ppg& g, const PathTable& table);

struct BoundsReport {
  double beta_lower = 0.0;
  /// Absent when no upper bound M is available and alpha > 1.
  std::optional<double> beta_upper;
  double alpha = 1.0;
  /// Point estimate; equals beta_lower.
  double point = 0.0;
  double mass_terminated = 0.0;  // E[1_terminated * w_t]
  double mass_total = 0.0;       // E[w_t]
  bool exact = false;
};

/// Two-sided bounds from the exact table: beta_L = E_phi[h],
/// beta_U = beta_L * alpha + M * (alpha - 1), alpha = total / terminated
/// weighted mass. When |alpha - 1| <= 1e-12 the upper bound is snapped to
/// beta_L so that an absent/infinite M cannot poison it.
BoundsReport semantics_bounds(const Ppg& g, const PathTable& table, const LiftedQuery& query);

/// Shared convention for deriving the upper bound from (beta_L, alpha, M).
std::optional<double> upper_bound_from(double beta_lower, double alpha,
                                       const std::optional<double>& bound);

}  // namespace fkppg
