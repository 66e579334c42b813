#pragma once

#include "fkppg/model_ast.hpp"
#include "fkppg/rng.hpp"

namespace fkppg {

/// Draws one value from `d` with parameters evaluated on `store`.
/// Consumes exactly one uniform from the cursor, for every kind and on
/// every path (including degenerate fallbacks), so draw positions within
/// a statement list depend only on statement order.
///
/// normal(mean, sd) falls back to a deterministic default when sd <= 0 or
/// any parameter is non-finite: the draw is `mean` when finite, else 0.
double sample_dist(const DistSpec& d, const double* store, DrawCursor& cursor);

/// Runs the statement list in order on `store` (m doubles, in place).
void execute_measure_inplace(const ParametricMeasure& pm, double* store, DrawCursor& cursor);

/// Value-returning convenience wrapper.
Store execute_measure(const ParametricMeasure& pm, const Store& store, DrawCursor& cursor);

struct WeightedStore {
  Store store;
  double probability;
};

/// Exact outcome enumeration for measures built from discrete
/// distributions only. Outcomes with identical stores are merged;
/// zero-probability branches are dropped. Probabilities sum to 1.
std::vector<WeightedStore> enumerate_support(const ParametricMeasure& pm, const Store& store);

}  // namespace fkppg
