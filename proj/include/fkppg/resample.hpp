#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "fkppg/rng.hpp"

namespace fkppg {

/// Multinomial resampling: n_out independent categorical draws over the
/// normalized weights. Draw j reads stream position j of the cursor's
/// lane, so the result is a pure function of (weights, cursor lane).
std::vector<uint32_t> resample_multinomial(std::span<const double> weights, size_t n_out,
                                           DrawCursor& cursor);

/// Systematic resampling: one uniform u (stream position 0), grid points
/// (u + j) / n_out swept against the cumulative weights.
std::vector<uint32_t> resample_systematic(std::span<const double> weights, size_t n_out,
                                          DrawCursor& cursor);

/// 1 / sum of squared normalized weights.
double effective_sample_size(std::span<const double> weights);

}  // namespace fkppg
