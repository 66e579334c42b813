#pragma once

#include "fkppg/engine.hpp"

// Shared pieces of the two engine front-ends; not part of the public API.

namespace fkppg::detail {

Error collapse_error(uint32_t step);

ParticleEnsemble make_initial_ensemble(const Ppg& g, const RunParams& params, EngineKind kind);

std::vector<uint32_t> resample_indices(const ParticleEnsemble& e, Resampler scheme,
                                       const RngStream& rng, uint32_t step);

}  // namespace fkppg::detail
