#pragma once

#include <span>

#include "fkppg/dist.hpp"
#include "fkppg/model_ast.hpp"

namespace fkppg {

/// One program state: store contents plus the current checkpoint.
struct State {
  Store store;
  uint32_t checkpoint = 0;  // dense id

  bool operator==(const State& o) const {
    return checkpoint == o.checkpoint && store == o.store;
  }
};

struct Transition {
  Expr guard;
  ParametricMeasure measure;
  uint32_t target = 0;  // dense id
};

struct Checkpoint {
  uint32_t declared_id = 0;
  std::optional<Expr> score;  // absent means the constant 1
  std::vector<Transition> out;
};

/// Validated program graph. Checkpoints are remapped to dense ids
/// 0..|P|-1 (declaration order); `declared_id` preserves the source
/// numbering for diagnostics and reports. Immutable after validate().
class Ppg {
 public:
  uint32_t var_count() const { return uint32_t(variables_.size()); }
  const std::vector<std::string>& variables() const { return variables_; }

  uint32_t checkpoint_count() const { return uint32_t(checkpoints_.size()); }
  const Checkpoint& checkpoint(uint32_t dense_id) const { return checkpoints_[dense_id]; }
  uint32_t nil_id() const { return nil_; }
  uint32_t initial_id() const { return initial_; }

  /// (0, S): the zero store at the initial checkpoint.
  State initial_state() const { return {Store(variables_.size(), 0.0), initial_}; }

 private:
  std::vector<std::string> variables_;
  std::vector<Checkpoint> checkpoints_;
  uint32_t nil_ = 0;
  uint32_t initial_ = 0;

  friend Ppg validate(const ModelAst&, const struct ValidateOptions&);
};

struct ValidateOptions {
  /// Random stores per checkpoint for the statistical guard-partition
  /// check. The check can only ever find violations, never prove the
  /// partition; the per-state check in kernel_step stays authoritative.
  size_t random_stores = 10000;
  uint64_t seed = 0x5eedf00dULL;
  /// Also sample declared score expressions (on finite stores only) and
  /// reject values outside [0, 1].
  bool check_scores = true;
};

Ppg validate(const ModelAst& ast, const ValidateOptions& options = {});

/// Applies the single-step kernel: selects the unique enabled transition
/// out of the current checkpoint and executes its measure. Exactly-one
/// guard enabledness is rechecked on every call.
State kernel_step(const Ppg& g, const State& s, DrawCursor& cursor);

/// In-place variant used by the engines; `node` is updated to the target.
void kernel_step_inplace(const Ppg& g, double* store, uint32_t& node, DrawCursor& cursor);

/// Index of the unique enabled transition out of `node`, with the
/// exactly-one check.
uint32_t select_transition(const Ppg& g, const double* store, uint32_t node);

/// Score of the state's checkpoint evaluated on its store; 1 when the
/// checkpoint declares no score. Result checked against [0, 1].
double combined_score(const Ppg& g, const State& s);
double combined_score(const Ppg& g, const double* store, uint32_t node);

/// Product of combined scores over all states of the path.
double path_weight(const Ppg& g, std::span<const State> path);

inline bool is_terminated(const Ppg& g, const State& s) { return s.checkpoint == g.nil_id(); }

/// The store battery used by validate's statistical checks: a fixed
/// deterministic prefix (all-zero, +-1, +-inf, mixtures) followed by
/// draws whose components mix atoms at 0, +-1, small integers, +-inf and
/// two Gaussian scales.
Store validation_store(uint32_t m, uint64_t seed, uint32_t index, bool allow_infinite);

}  // namespace fkppg
