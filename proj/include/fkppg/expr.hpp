#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fkppg/errors.hpp"

namespace fkppg {

/// Store of m program variables. Extended reals: +-inf allowed, NaN never.
using Store = std::vector<double>;

enum class Op : uint8_t {
  Lit,
  Var,
  Neg,
  Abs,
  Not,
  Add,
  Sub,
  Mul,
  Div,
  Min,
  Max,
  Eq,
  Ne,
  Lt,
  Le,
  Gt,
  Ge,
  And,
  Or,
};

bool op_is_unary(Op op);
bool op_is_binary(Op op);

struct ExprNode {
  Op op;
  double value = 0.0;  // Lit
  uint32_t var = 0;    // Var

  bool operator==(const ExprNode& o) const {
    return op == o.op && value == o.value && var == o.var;
  }
};

/// Expression over the store, compiled to a postfix program. Immutable
/// after construction; evaluation is read-only and thread-safe.
///
/// Semantics: IEEE doubles with +-inf; any operation producing NaN
/// (inf - inf, 0/0, 0*inf) raises NumericDomain instead. Division by a
/// zero of either sign gives sign(numerator)*inf. Comparisons yield the
/// reals 0/1; logical operators require 0/1 operands (both operands are
/// always evaluated, there is no short-circuit).
class Expr {
 public:
  Expr() = default;

  static Expr literal(double v);
  static Expr variable(uint32_t index);
  static Expr unary(Op op, Expr operand);
  static Expr binary(Op op, Expr lhs, Expr rhs);

  double eval(const double* store) const;
  double eval(const Store& store) const { return eval(store.data()); }

  /// eval() followed by the {0,1} range check of a predicate.
  double eval_predicate(const double* store) const;
  double eval_predicate(const Store& store) const { return eval_predicate(store.data()); }

  bool empty() const { return code_.empty(); }
  /// True when the expression references no variables.
  bool is_constant() const;
  /// Largest variable index referenced, or -1 when constant.
  int64_t max_var() const;

  /// Fully parenthesized source form; parses back to a structurally
  /// identical expression. Variables print by name when a name table is
  /// given, else as $index.
  std::string to_string(const std::vector<std::string>* var_names = nullptr) const;

  bool operator==(const Expr& o) const { return code_ == o.code_; }

  const std::vector<ExprNode>& code() const { return code_; }

 private:
  std::vector<ExprNode> code_;  // postfix order
  uint32_t stack_need_ = 0;

  friend class ExprBuilder;
};

}  // namespace fkppg
