#pragma once

#include <string>

#include "fkppg/oracle.hpp"

namespace fkppg::testing {

/// Deterministic random discrete model for differential testing:
/// <= 4 checkpoints, <= 3 variables, bernoulli/choice sampling only.
/// Construction guarantees:
///  - every guard pair partitions all stores (written as p / !p),
///  - nil is reachable with positive probability within a few steps
///    (loops escape through a freshly drawn coin each visit),
///  - scores are strictly positive, so weights never collapse.
struct FuzzModel {
  std::string source;
  std::string query_text;  // h over the variables, bounded by `bound`
  double bound = 0.0;
  uint32_t horizon = 4;
};

FuzzModel fuzz_discrete_model(uint64_t seed);

/// Random store with components mixing atoms at 0, +-1, small integers,
/// +-inf and Gaussians; used by expression property tests.
Store fuzz_store(uint32_t m, uint64_t seed, uint32_t index, bool allow_infinite);

/// Random expression over m variables, depth-bounded; may legitimately
/// fail to evaluate (NumericDomain etc.) but must never yield NaN.
Expr fuzz_expression(uint32_t m, uint64_t seed, uint32_t index);

}  // namespace fkppg::testing
