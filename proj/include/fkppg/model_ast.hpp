#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fkppg/expr.hpp"

namespace fkppg {

enum class DistKind : uint8_t { Bernoulli, Normal, Uniform, Choice };

const char* dist_kind_name(DistKind kind);

/// Distribution with expression-valued parameters, evaluated on the
/// current store at sampling time.
struct DistSpec {
  DistKind kind = DistKind::Bernoulli;
  std::vector<Expr> params;  // bernoulli: p; normal: mean, sd; uniform: lo, hi; choice: values

  bool is_discrete() const { return kind == DistKind::Bernoulli || kind == DistKind::Choice; }
  bool operator==(const DistSpec& o) const { return kind == o.kind && params == o.params; }
};

/// One `var ~ dist` or `var := expr` statement.
struct Statement {
  enum class Kind : uint8_t { Sample, Assign };
  Kind kind = Kind::Assign;
  uint32_t var = 0;
  DistSpec dist;  // Sample
  Expr expr;      // Assign
  // Position among the sample statements of the owning list; fixes which
  // stream draw this statement reads. Set by finalize_measure().
  uint32_t draw_index = 0;

  bool operator==(const Statement& o) const {
    return kind == o.kind && var == o.var && dist == o.dist && expr == o.expr;
  }
};

/// Ordered statement list; executing it left to right maps a store to the
/// next store. An empty list is the identity kernel.
struct ParametricMeasure {
  std::vector<Statement> statements;
  uint32_t sample_count = 0;  // uniforms consumed per execution

  bool operator==(const ParametricMeasure& o) const { return statements == o.statements; }
};

/// Assigns draw indices; must be called after the statement list is final.
void finalize_measure(ParametricMeasure& pm);

struct CheckpointDecl {
  uint32_t id = 0;
  std::optional<Expr> score;

  bool operator==(const CheckpointDecl& o) const { return id == o.id && score == o.score; }
};

struct TransitionDecl {
  uint32_t source = 0;
  uint32_t target = 0;
  Expr guard;
  ParametricMeasure measure;

  bool operator==(const TransitionDecl& o) const {
    return source == o.source && target == o.target && guard == o.guard && measure == o.measure;
  }
};

/// Parsed model, exactly as written (no nil self-loop completion here).
struct ModelAst {
  std::vector<std::string> variables;
  std::vector<CheckpointDecl> checkpoints;
  std::vector<TransitionDecl> transitions;
  uint32_t nil_id = 0;
  uint32_t initial_id = 0;

  bool operator==(const ModelAst& o) const {
    return variables == o.variables && checkpoints == o.checkpoints &&
           transitions == o.transitions && nil_id == o.nil_id && initial_id == o.initial_id;
  }
};

/// Canonical source form; parse(pretty_print(ast)) == ast.
std::string pretty_print(const ModelAst& ast);

std::string dist_to_string(const DistSpec& dist, const std::vector<std::string>& var_names);

}  // namespace fkppg
