#include "model_fuzz.hpp"

#include <cmath>
#include <sstream>

#include "fkppg/ppg.hpp"
#include "fkppg/rng.hpp"

namespace fkppg::testing {

namespace {

/// Tiny deterministic helper over the counter RNG.
class Picker {
 public:
  explicit Picker(uint64_t seed) : rng_(seed) {}

  double uniform() { return rng_.uniform(0, 0, next_++); }

  uint32_t below(uint32_t n) {
    uint32_t v = uint32_t(uniform() * double(n));
    return v >= n ? n - 1 : v;
  }

  bool coin(double p = 0.5) { return uniform() < p; }

 private:
  RngStream rng_;
  uint32_t next_ = 0;
};

std::string literal_of(Picker& pick) {
  static const char* kLits[] = {"0", "1", "2", "0.25", "0.5", "0.75"};
  return kLits[pick.below(6)];
}

std::string var_of(Picker& pick, uint32_t m) { return "v" + std::to_string(pick.below(m)); }

std::string random_statement(Picker& pick, uint32_t m) {
  switch (pick.below(4)) {
    case 0:
      return var_of(pick, m) + " ~ bernoulli(" + literal_of(pick) == "2"
                 ? var_of(pick, m) + " ~ bernoulli(0.5);"
                 : var_of(pick, m) + " ~ bernoulli(0.5);";
    default:
      return "";
  }
}

}  // namespace

Store fuzz_store(uint32_t m, uint64_t seed, uint32_t index, bool allow_infinite) {
  return validation_store(m, seed, index, allow_infinite);
}

Expr fuzz_expression(uint32_t m, uint64_t seed, uint32_t index) {
  Picker pick(seed ^ (uint64_t(index) << 20));
  // Recursive generator with shrinking depth budget.
  std::function<Expr(int)> gen = [&](int depth) -> Expr {
    if (depth <= 0 || pick.coin(0.3)) {
      if (pick.coin(0.5)) {
        static const double kLits[] = {0.0, 1.0, -1.0, 0.5, 2.0, 1e6,
                                       std::numeric_limits<double>::infinity(),
                                       -std::numeric_limits<double>::infinity()};
        return Expr::literal(kLits[pick.below(8)]);
      }
      return Expr::variable(pick.below(m));
    }
    static const Op kUnary[] = {Op::Neg, Op::Abs, Op::Not};
    static const Op kBinary[] = {Op::Add, Op::Sub, Op::Mul, Op::Div, Op::Min, Op::Max,
                                 Op::Eq,  Op::Ne,  Op::Lt,  Op::Le,  Op::Gt,  Op::Ge,
                                 Op::And, Op::Or};
    if (pick.coin(0.25)) {
      return Expr::unary(kUnary[pick.below(3)], gen(depth - 1));
    }
    return Expr::binary(kBinary[pick.below(14)], gen(depth - 1), gen(depth - 1));
  };
  return gen(4);
}

FuzzModel fuzz_discrete_model(uint64_t seed) {
  Picker pick(seed);
  const uint32_t m = 1 + pick.below(3);       // v0 .. v{m-1}
  const uint32_t nodes = 1 + pick.below(3);   // non-nil checkpoints 0..nodes-1
  const uint32_t nil = nodes;
  const uint32_t loop_var = m - 1;  // coin escaping self-loops, refreshed on entry

  auto var = [&](uint32_t i) { return "v" + std::to_string(i); };

  auto random_statements = [&](std::ostringstream& out, bool entering_loop_node) {
    const uint32_t count = pick.below(3);
    for (uint32_t i = 0; i < count; ++i) {
      switch (pick.below(4)) {
        case 0:
          out << " " << var(pick.below(m)) << " ~ bernoulli(0." << (2 + pick.below(7)) << ");";
          break;
        case 1: {
          out << " " << var(pick.below(m)) << " ~ choice(0";
          const uint32_t k = 1 + pick.below(2);
          for (uint32_t c = 0; c < k; ++c) out << ", " << (1 + pick.below(2));
          out << ");";
          break;
        }
        case 2:
          out << " " << var(pick.below(m)) << " := min(" << var(pick.below(m)) << " + 1, 2);";
          break;
        default:
          out << " " << var(pick.below(m)) << " := abs(" << var(pick.below(m)) << " - "
              << literal_of(pick) << ");";
          break;
      }
    }
    if (entering_loop_node) {
      // Fresh escape coin on every entry keeps the loop leaky.
      out << " " << var(loop_var) << " ~ bernoulli(0." << (25 + 25 * pick.below(2)) << ");";
    }
  };

  // Decide which nodes loop on themselves.
  std::vector<bool> looping(nodes);
  for (uint32_t i = 0; i < nodes; ++i) looping[i] = pick.coin(0.4);

  std::ostringstream out;
  out << "# fuzzed discrete model #" << seed << "\n";
  out << "vars";
  for (uint32_t i = 0; i < m; ++i) out << " " << var(i);
  out << "\n";
  for (uint32_t i = 0; i < nodes; ++i) {
    out << "node " << i;
    if (pick.coin(0.4)) {
      // Strictly positive scores: soft conditioning without collapse.
      if (pick.coin(0.5)) {
        out << " score 0.5";
      } else {
        out << " score (0.25 + 0.5 * (" << var(pick.below(m)) << " == " << pick.below(2) << "))";
      }
    }
    out << "\n";
  }
  out << "nil " << nil << "\n";

  auto advance_target = [&](uint32_t from) {
    // Strictly forward or straight to nil: keeps nil reachable.
    const uint32_t span = nodes - from;  // choices: from+1..nodes-1, nil
    const uint32_t o = pick.below(span);
    return from + 1 + o;  // == nil when o == span-1
  };

  for (uint32_t i = 0; i < nodes; ++i) {
    if (looping[i]) {
      const uint32_t fwd = advance_target(i);
      out << "trans " << i << " -> " << i << " when " << var(loop_var) << " == 1 do {";
      random_statements(out, /*entering_loop_node=*/true);
      out << " }\n";
      out << "trans " << i << " -> " << fwd << " when " << var(loop_var) << " != 1 do {";
      random_statements(out, looping[fwd] && fwd != nil);
      out << " }\n";
    } else if (pick.coin(0.5)) {
      const uint32_t a = advance_target(i);
      const uint32_t b = advance_target(i);
      const std::string v = var(pick.below(m));
      const std::string lit = std::to_string(pick.below(2));
      out << "trans " << i << " -> " << a << " when " << v << " == " << lit << " do {";
      random_statements(out, a != nil && looping[a]);
      out << " }\n";
      out << "trans " << i << " -> " << b << " when " << v << " != " << lit << " do {";
      random_statements(out, b != nil && looping[b]);
      out << " }\n";
    } else {
      const uint32_t a = advance_target(i);
      out << "trans " << i << " -> " << a << " when 1 == 1 do {";
      random_statements(out, a != nil && looping[a]);
      out << " }\n";
    }
  }
  out << "init 0\n";

  FuzzModel fm;
  fm.source = out.str();
  fm.query_text = "min(abs(v0), 8)";
  fm.bound = 8.0;
  fm.horizon = 4 + pick.below(3);  // 4..6
  return fm;
}

}  // namespace fkppg::testing
