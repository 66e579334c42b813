#include "fkppg/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>

namespace fkppg {

namespace {

constexpr double kAlphaUnityTolerance = 1e-12;

}  // namespace

PathTable enumerate_paths(const Ppg& g, uint32_t horizon, const EnumerateOptions& options) {
  if (horizon < 1) {
    throw Error(ErrCode::InvalidParameter, "horizon must be >= 1");
  }
  if (options.cap < 1) {
    throw Error(ErrCode::InvalidParameter, "live-prefix cap must be >= 1");
  }

  PathTable table;
  table.horizon = horizon;
  table.prune_zero_weight = options.prune_zero_weight;

  const State init = g.initial_state();
  Path root;
  root.states.push_back(init);
  root.probability = 1.0;
  root.weight = combined_score(g, init);
  table.explored_prefixes = 1;

  std::vector<Path> frontier;
  if (options.prune_zero_weight && root.weight == 0.0) {
    table.pruned_probability_mass += root.probability;
  } else {
    frontier.push_back(std::move(root));
  }

  for (uint32_t depth = 2; depth <= horizon; ++depth) {
    std::vector<Path> next;
    for (const Path& prefix : frontier) {
      const State& tip = prefix.states.back();
      if (tip.checkpoint == g.nil_id()) {
        // Absorbing: extend by the identity with probability 1, score 1.
        Path extended = prefix;
        extended.states.push_back(tip);
        next.push_back(std::move(extended));
        ++table.explored_prefixes;
        continue;
      }
      const uint32_t chosen = select_transition(g, tip.store.data(), tip.checkpoint);
      const Transition& tr = g.checkpoint(tip.checkpoint).out[chosen];
      for (const WeightedStore& outcome : enumerate_support(tr.measure, tip.store)) {
        ++table.explored_prefixes;
        State s{outcome.store, tr.target};
        const double score = combined_score(g, s);
        Path extended = prefix;
        extended.states.push_back(std::move(s));
        extended.probability = prefix.probability * outcome.probability;
        extended.weight = prefix.weight * score;
        if (options.prune_zero_weight && extended.weight == 0.0) {
          table.pruned_probability_mass += extended.probability;
          continue;
        }
        next.push_back(std::move(extended));
      }
      if (next.size() > options.cap) {
        Error e(ErrCode::PathExplosion,
                "live prefixes exceed cap " + std::to_string(options.cap) + " at depth " +
                    std::to_string(depth) + " of " + std::to_string(horizon));
        e.step = depth;
        throw e;
      }
    }
    frontier = std::move(next);
  }

  table.paths = std::move(frontier);
  return table;
}

double expectation_t(const PathTable& table,
                     const std::function<double(const Path&)>& functional) {
  double sum = 0.0;
  for (const Path& p : table.paths) {
    sum += p.probability * functional(p);
  }
  return sum;
}

PathFunctional functional_weight() {
  return [](const Path& p) { return p.weight; };
}

PathFunctional functional_terminated_weight(const Ppg& g) {
  const uint32_t nil = g.nil_id();
  return [nil](const Path& p) {
    return p.states.back().checkpoint == nil ? p.weight : 0.0;
  };
}

double lifted_value(const Ppg& g, const LiftedQuery& query, const Path& path) {
  for (const State& s : path.states) {
    if (s.checkpoint != g.nil_id()) continue;
    const double v = query.h.eval(s.store);
    const double cap = query.bound.value_or(std::numeric_limits<double>::infinity());
    if (!(v >= 0.0) || v > cap) {
      throw Error(ErrCode::QueryOutOfRange,
                  "query evaluates to " + std::to_string(v) + " at a terminated state; expected [0, " +
                      std::to_string(cap) + "]");
    }
    return v;
  }
  return 0.0;
}

PathFunctional functional_lifted_weight(const Ppg& g, const LiftedQuery& query) {
  return [&g, query](const Path& p) { return lifted_value(g, query, p) * p.weight; };
}

std::vector<FilterAtom> filtering_distribution(const Ppg& g, const PathTable& table) {
  auto cmp = [](const State& a, const State& b) {
    if (a.checkpoint != b.checkpoint) return a.checkpoint < b.checkpoint;
    return a.store < b.store;
  };
  std::map<State, double, decltype(cmp)> atoms(cmp);
  double total = 0.0;
  for (const Path& p : table.paths) {
    const double mass = p.probability * p.weight;
    if (mass == 0.0) continue;
    atoms[p.states.back()] += mass;
    total += mass;
  }
  if (total <= 0.0) {
    throw Error(ErrCode::ZeroTotalWeight,
                "every length-" + std::to_string(table.horizon) + " path has zero weighted mass");
  }
  std::vector<FilterAtom> out;
  out.reserve(atoms.size());
  for (const auto& [state, mass] : atoms) {
    out.push_back({state, mass / total});
  }
  return out;
}

std::optional<double> upper_bound_from(double beta_lower, double alpha,
                                       const std::optional<double>& bound) {
  if (std::fabs(alpha - 1.0) <= kAlphaUnityTolerance) {
    return beta_lower;
  }
  if (!bound.has_value()) {
    return std::nullopt;
  }
  return beta_lower * alpha + *bound * (alpha - 1.0);
}

BoundsReport semantics_bounds(const Ppg& g, const PathTable& table, const LiftedQuery& query) {
  BoundsReport report;
  report.exact = true;
  report.mass_total = expectation_t(table, functional_weight());
  report.mass_terminated = expectation_t(table, functional_terminated_weight(g));
  if (report.mass_terminated <= 0.0) {
    throw Error(ErrCode::NotTerminatedYet,
                "no weighted path terminates within horizon " + std::to_string(table.horizon));
  }
  const double numerator = expectation_t(table, functional_lifted_weight(g, query));
  report.alpha = report.mass_total / report.mass_terminated;
  report.beta_lower = numerator / report.mass_total;
  report.point = report.beta_lower;
  report.beta_upper = upper_bound_from(report.beta_lower, report.alpha, query.bound);
  return report;
}

}  // namespace fkppg
