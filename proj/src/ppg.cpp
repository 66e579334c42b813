#include "fkppg/ppg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <sstream>

namespace fkppg {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::string store_to_string(const double* store, uint32_t m,
                            const std::vector<std::string>& names) {
  std::ostringstream out;
  out << "(";
  for (uint32_t i = 0; i < m; ++i) {
    if (i > 0) out << ", ";
    out << names[i] << "=" << store[i];
  }
  out << ")";
  return out.str();
}

[[noreturn]] void partition_failure(const Ppg& g, const double* store, uint32_t node,
                                    int enabled, const char* detail) {
  std::ostringstream msg;
  msg << "guard partition violated at checkpoint " << g.checkpoint(node).declared_id << ": ";
  if (detail != nullptr) {
    msg << detail;
  } else {
    msg << enabled << " guard(s) enabled";
  }
  msg << " on store " << store_to_string(store, g.var_count(), g.variables());
  throw Error(ErrCode::PartitionViolation, msg.str());
}

/// True when the expression has no variable references and evaluates to
/// exactly 1 (accepts both `1` and spellings like `1 == 1`).
bool is_constant_one(const Expr& e) {
  if (!e.is_constant()) return false;
  try {
    return e.eval(nullptr) == 1.0;
  } catch (const Error&) {
    return false;
  }
}

}  // namespace

Store validation_store(uint32_t m, uint64_t seed, uint32_t index, bool allow_infinite) {
  Store store(m, 0.0);
  // Deterministic battery first: the corner stores most likely to expose
  // overlapping or gappy guards.
  switch (index) {
    case 0: return store;                                            // all zero
    case 1: std::fill(store.begin(), store.end(), 1.0); return store;
    case 2: std::fill(store.begin(), store.end(), -1.0); return store;
    case 3:
      if (allow_infinite) { std::fill(store.begin(), store.end(), kInf); return store; }
      break;
    case 4:
      if (allow_infinite) { std::fill(store.begin(), store.end(), -kInf); return store; }
      break;
    case 5:
      for (uint32_t i = 0; i < m; ++i) store[i] = i % 2 == 0 ? 0.0 : 1.0;
      return store;
    case 6:
      for (uint32_t i = 0; i < m; ++i) store[i] = i % 2 == 0 ? 1.0 : -1.0;
      return store;
    default: break;
  }
  const RngStream rng(seed);
  for (uint32_t i = 0; i < m; ++i) {
    const double pick = rng.uniform(index, i, 0);
    const double aux = rng.uniform(index, i, 1);
    if (pick < 0.20) {
      store[i] = 0.0;
    } else if (pick < 0.30) {
      store[i] = 1.0;
    } else if (pick < 0.40) {
      store[i] = -1.0;
    } else if (pick < 0.45) {
      store[i] = std::floor(aux * 11.0) - 5.0;  // small integers
    } else if (pick < 0.55 && allow_infinite) {
      store[i] = pick < 0.50 ? kInf : -kInf;
    } else if (pick < 0.90) {
      store[i] = 3.0 * inverse_normal_cdf(aux);
    } else {
      store[i] = 100.0 * inverse_normal_cdf(aux);
    }
  }
  return store;
}

Ppg validate(const ModelAst& ast, const ValidateOptions& options) {
  if (ast.variables.empty()) {
    throw Error(ErrCode::SyntaxError, "model declares no variables");
  }

  Ppg g;
  g.variables_ = ast.variables;

  // Dense remap in declaration order.
  std::map<uint32_t, uint32_t> dense;
  bool nil_declared = false;
  for (const CheckpointDecl& cp : ast.checkpoints) {
    if (dense.count(cp.id) != 0) {
      throw Error(ErrCode::DuplicateCheckpoint,
                  "checkpoint " + std::to_string(cp.id) + " declared twice");
    }
    dense.emplace(cp.id, uint32_t(g.checkpoints_.size()));
    Checkpoint c;
    c.declared_id = cp.id;
    c.score = cp.score;
    g.checkpoints_.push_back(std::move(c));
    if (cp.id == ast.nil_id) nil_declared = true;
  }
  if (!nil_declared) {
    throw Error(ErrCode::MissingNil,
                "nil checkpoint " + std::to_string(ast.nil_id) + " is not declared");
  }
  g.nil_ = dense.at(ast.nil_id);

  auto resolve = [&](uint32_t declared, const char* what) {
    auto it = dense.find(declared);
    if (it == dense.end()) {
      throw Error(ErrCode::UnknownCheckpoint,
                  std::string(what) + " references undeclared checkpoint " +
                      std::to_string(declared));
    }
    return it->second;
  };
  g.initial_ = resolve(ast.initial_id, "init");

  // A score on nil must be the constant 1; anything else conflicts with
  // nil's fixed role.
  Checkpoint& nil_cp = g.checkpoints_[g.nil_];
  if (nil_cp.score.has_value()) {
    if (!is_constant_one(*nil_cp.score)) {
      throw Error(ErrCode::ScoreOnNil, "nil checkpoint " + std::to_string(ast.nil_id) +
                                           " carries a score that is not the constant 1");
    }
    nil_cp.score.reset();
  }

  const uint32_t m = g.var_count();
  bool nil_loop_declared = false;
  for (const TransitionDecl& tr : ast.transitions) {
    const uint32_t src = resolve(tr.source, "transition source");
    const uint32_t dst = resolve(tr.target, "transition target");
    if (int64_t(m) <= tr.guard.max_var()) {
      throw Error(ErrCode::UndeclaredVariable, "transition guard references variable index " +
                                                   std::to_string(tr.guard.max_var()));
    }
    if (src == g.nil_) {
      // Definition of the terminated checkpoint: its only legal outgoing
      // transition is the identity self-loop under a constant-true guard.
      if (dst != g.nil_ || !tr.measure.statements.empty() || !is_constant_one(tr.guard) ||
          nil_loop_declared) {
        throw Error(ErrCode::NilSelfLoopConflict,
                    "nil checkpoint " + std::to_string(ast.nil_id) +
                        " admits only the identity self-loop as outgoing transition");
      }
      nil_loop_declared = true;
    }
    g.checkpoints_[src].out.push_back({tr.guard, tr.measure, dst});
  }
  if (!nil_loop_declared) {
    Transition loop;
    loop.guard = Expr::literal(1.0);
    finalize_measure(loop.measure);
    loop.target = g.nil_;
    g.checkpoints_[g.nil_].out.push_back(std::move(loop));
  }

  for (const Checkpoint& cp : g.checkpoints_) {
    if (cp.out.empty()) {
      throw Error(ErrCode::PartitionViolation,
                  "checkpoint " + std::to_string(cp.declared_id) +
                      " has no outgoing transition; no guard can be enabled");
    }
  }

  // Statistical partition / score-range screening over the store battery.
  for (uint32_t idx = 0; idx < options.random_stores; ++idx) {
    const Store wide = validation_store(m, options.seed, idx, /*allow_infinite=*/true);
    for (uint32_t node = 0; node < g.checkpoint_count(); ++node) {
      const Checkpoint& cp = g.checkpoints_[node];
      int enabled = 0;
      try {
        for (const Transition& tr : cp.out) {
          if (tr.guard.eval_predicate(wide.data()) == 1.0) ++enabled;
        }
      } catch (const Error& e) {
        partition_failure(g, wide.data(), node, 0, e.what());
      }
      if (enabled != 1) {
        partition_failure(g, wide.data(), node, enabled, nullptr);
      }
    }
    if (options.check_scores) {
      // Scores are screened on finite stores only: legitimate score
      // expressions (e.g. |x - y| <= 3) can be partial at +-inf corners
      // that no run ever reaches. combined_score still checks every
      // evaluation at run time.
      const Store finite = validation_store(m, options.seed + 1, idx, /*allow_infinite=*/false);
      for (uint32_t node = 0; node < g.checkpoint_count(); ++node) {
        const Checkpoint& cp = g.checkpoints_[node];
        if (!cp.score.has_value()) continue;
        double v;
        try {
          v = cp.score->eval(finite.data());
        } catch (const Error&) {
          continue;
        }
        if (!(v >= 0.0 && v <= 1.0)) {
          throw Error(ErrCode::ScoreOutOfRange,
                      "score at checkpoint " + std::to_string(cp.declared_id) + " evaluates to " +
                          std::to_string(v) + " on store " +
                          store_to_string(finite.data(), m, g.variables()));
        }
      }
    }
  }

  return g;
}

uint32_t select_transition(const Ppg& g, const double* store, uint32_t node) {
  const Checkpoint& cp = g.checkpoint(node);
  int enabled = 0;
  uint32_t chosen = 0;
  // Guard evaluation errors propagate as-is; only the enabled count is a
  // partition violation.
  for (uint32_t i = 0; i < cp.out.size(); ++i) {
    if (cp.out[i].guard.eval_predicate(store) == 1.0) {
      ++enabled;
      chosen = i;
    }
  }
  if (enabled != 1) {
    partition_failure(g, store, node, enabled, nullptr);
  }
  return chosen;
}

void kernel_step_inplace(const Ppg& g, double* store, uint32_t& node, DrawCursor& cursor) {
  const uint32_t chosen = select_transition(g, store, node);
  const Transition& tr = g.checkpoint(node).out[chosen];
  execute_measure_inplace(tr.measure, store, cursor);
  node = tr.target;
}

State kernel_step(const Ppg& g, const State& s, DrawCursor& cursor) {
  State next = s;
  kernel_step_inplace(g, next.store.data(), next.checkpoint, cursor);
  return next;
}

double combined_score(const Ppg& g, const double* store, uint32_t node) {
  const Checkpoint& cp = g.checkpoint(node);
  if (!cp.score.has_value()) return 1.0;
  const double v = cp.score->eval(store);
  if (!(v >= 0.0 && v <= 1.0)) {
    throw Error(ErrCode::ScoreOutOfRange,
                "score at checkpoint " + std::to_string(cp.declared_id) + " evaluates to " +
                    std::to_string(v) + ", outside [0, 1]");
  }
  return v;
}

double combined_score(const Ppg& g, const State& s) {
  return combined_score(g, s.store.data(), s.checkpoint);
}

double path_weight(const Ppg& g, std::span<const State> path) {
  double w = 1.0;
  for (const State& s : path) {
    w *= combined_score(g, s);
  }
  return w;
}

}  // namespace fkppg
