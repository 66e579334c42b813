#include "fkppg/expr.hpp"

#include <charconv>
#include <cmath>
#include <limits>

namespace fkppg {

namespace {

[[noreturn]] void throw_numeric(const char* what) {
  throw Error(ErrCode::NumericDomain, std::string("numeric domain error: ") + what);
}

inline double require_boolean(double v, const char* ctx) {
  if (v != 0.0 && v != 1.0) {
    throw Error(ErrCode::PredicateNotBoolean,
                std::string(ctx) + " expects 0/1 operands, got " + std::to_string(v));
  }
  return v;
}

const char* op_symbol(Op op) {
  switch (op) {
    case Op::Add: return "+";
    case Op::Sub: return "-";
    case Op::Mul: return "*";
    case Op::Div: return "/";
    case Op::Eq: return "==";
    case Op::Ne: return "!=";
    case Op::Lt: return "<";
    case Op::Le: return "<=";
    case Op::Gt: return ">";
    case Op::Ge: return ">=";
    case Op::And: return "&&";
    case Op::Or: return "||";
    default: return "?";
  }
}

std::string format_literal(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  auto [end, ec] = std::to_chars(buf, buf + sizeof(buf), v);
  (void)ec;
  return std::string(buf, end);
}

}  // namespace

bool op_is_unary(Op op) { return op == Op::Neg || op == Op::Abs || op == Op::Not; }

bool op_is_binary(Op op) { return !op_is_unary(op) && op != Op::Lit && op != Op::Var; }

Expr Expr::literal(double v) {
  Expr e;
  e.code_.push_back({Op::Lit, v, 0});
  e.stack_need_ = 1;
  return e;
}

Expr Expr::variable(uint32_t index) {
  Expr e;
  e.code_.push_back({Op::Var, 0.0, index});
  e.stack_need_ = 1;
  return e;
}

Expr Expr::unary(Op op, Expr operand) {
  // Fold negated literals so "-1" round-trips as a single node.
  if (op == Op::Neg && operand.code_.size() == 1 && operand.code_[0].op == Op::Lit) {
    return literal(-operand.code_[0].value);
  }
  Expr e = std::move(operand);
  e.code_.push_back({op, 0.0, 0});
  return e;
}

Expr Expr::binary(Op op, Expr lhs, Expr rhs) {
  Expr e = std::move(lhs);
  const uint32_t rhs_need = rhs.stack_need_;
  e.code_.insert(e.code_.end(), rhs.code_.begin(), rhs.code_.end());
  e.code_.push_back({op, 0.0, 0});
  e.stack_need_ = std::max(e.stack_need_, 1 + rhs_need);
  return e;
}

double Expr::eval(const double* store) const {
  double local[64];
  std::vector<double> heap;
  double* stack = local;
  if (stack_need_ > 64) {
    heap.resize(stack_need_);
    stack = heap.data();
  }
  size_t top = 0;

  for (const ExprNode& n : code_) {
    switch (n.op) {
      case Op::Lit:
        stack[top++] = n.value;
        break;
      case Op::Var:
        stack[top++] = store[n.var];
        break;
      case Op::Neg:
        stack[top - 1] = -stack[top - 1];
        break;
      case Op::Abs:
        stack[top - 1] = std::fabs(stack[top - 1]);
        break;
      case Op::Not:
        stack[top - 1] = 1.0 - require_boolean(stack[top - 1], "'!'");
        break;
      default: {
        const double b = stack[--top];
        const double a = stack[top - 1];
        double r;
        switch (n.op) {
          case Op::Add: r = a + b; break;
          case Op::Sub: r = a - b; break;
          case Op::Mul: r = a * b; break;
          case Op::Div:
            if (b == 0.0) {
              if (a == 0.0) throw_numeric("0/0");
              r = a > 0.0 ? std::numeric_limits<double>::infinity()
                          : -std::numeric_limits<double>::infinity();
            } else {
              r = a / b;
            }
            break;
          case Op::Min: r = std::fmin(a, b); break;
          case Op::Max: r = std::fmax(a, b); break;
          case Op::Eq: r = a == b ? 1.0 : 0.0; break;
          case Op::Ne: r = a != b ? 1.0 : 0.0; break;
          case Op::Lt: r = a < b ? 1.0 : 0.0; break;
          case Op::Le: r = a <= b ? 1.0 : 0.0; break;
          case Op::Gt: r = a > b ? 1.0 : 0.0; break;
          case Op::Ge: r = a >= b ? 1.0 : 0.0; break;
          case Op::And:
            r = (require_boolean(a, "'&&'") == 1.0 && require_boolean(b, "'&&'") == 1.0) ? 1.0
                                                                                         : 0.0;
            break;
          case Op::Or:
            r = (require_boolean(a, "'||'") == 1.0 || require_boolean(b, "'||'") == 1.0) ? 1.0
                                                                                         : 0.0;
            break;
          default: throw_numeric("bad opcode");
        }
        if (std::isnan(r)) {
          throw_numeric(op_is_binary(n.op) ? "operation produced NaN" : "NaN");
        }
        stack[top - 1] = r;
      }
    }
  }
  return stack[0];
}

double Expr::eval_predicate(const double* store) const {
  const double v = eval(store);
  if (v != 0.0 && v != 1.0) {
    throw Error(ErrCode::PredicateNotBoolean,
                "predicate evaluated to " + std::to_string(v) + ", expected 0 or 1");
  }
  return v;
}

bool Expr::is_constant() const {
  for (const ExprNode& n : code_) {
    if (n.op == Op::Var) return false;
  }
  return true;
}

int64_t Expr::max_var() const {
  int64_t m = -1;
  for (const ExprNode& n : code_) {
    if (n.op == Op::Var && int64_t(n.var) > m) m = int64_t(n.var);
  }
  return m;
}

std::string Expr::to_string(const std::vector<std::string>* var_names) const {
  // Rebuild the source text from the postfix program with a string stack.
  std::vector<std::string> stack;
  for (const ExprNode& n : code_) {
    switch (n.op) {
      case Op::Lit:
        stack.push_back(format_literal(n.value));
        break;
      case Op::Var:
        if (var_names != nullptr && n.var < var_names->size()) {
          stack.push_back((*var_names)[n.var]);
        } else {
          stack.push_back("$" + std::to_string(n.var));
        }
        break;
      case Op::Neg:
        stack.back() = "(-" + stack.back() + ")";
        break;
      case Op::Abs:
        stack.back() = "abs(" + stack.back() + ")";
        break;
      case Op::Not:
        stack.back() = "(!" + stack.back() + ")";
        break;
      case Op::Min:
      case Op::Max: {
        std::string b = std::move(stack.back());
        stack.pop_back();
        stack.back() = std::string(n.op == Op::Min ? "min(" : "max(") + stack.back() + ", " + b + ")";
        break;
      }
      default: {
        std::string b = std::move(stack.back());
        stack.pop_back();
        stack.back() = "(" + stack.back() + " " + op_symbol(n.op) + " " + b + ")";
      }
    }
  }
  return stack.empty() ? std::string() : stack.back();
}

}  // namespace fkppg
