#pragma once

#include "fkppg/oracle.hpp"
#include "fkppg/ppg.hpp"
#include "fkppg/resample.hpp"

namespace fkppg {

enum class Resampler : uint8_t { Multinomial, Systematic };
enum class EngineKind : uint8_t { Scalar, Vpf };

const char* resampler_name(Resampler r);
const char* engine_kind_name(EngineKind k);

/// Structure-of-arrays particle state: stores (N x m, row-major), current
/// checkpoints and per-step weights. Weights are the last combined score
/// of each particle, in [0, 1]; resampling resets history every step.
struct ParticleEnsemble {
  uint32_t var_count = 0;
  size_t count = 0;
  std::vector<double> stores;    // count * var_count
  std::vector<uint32_t> nodes;   // dense checkpoint ids
  std::vector<double> weights;
  uint32_t step = 0;             // number of states realized (== horizon after a run)

  uint64_t seed = 0;
  EngineKind engine = EngineKind::Scalar;
  Resampler resampler = Resampler::Systematic;
  double wall_time_ms = 0.0;

  double* store(size_t j) { return stores.data() + j * var_count; }
  const double* store(size_t j) const { return stores.data() + j * var_count; }

  bool operator==(const ParticleEnsemble& o) const {
    return var_count == o.var_count && count == o.count && stores == o.stores &&
           nodes == o.nodes && weights == o.weights && step == o.step;
  }
};

struct RunParams {
  uint32_t horizon = 1;   // t; the run realizes t states including the initial one
  size_t particles = 1;   // N
  uint64_t seed = 1;
  Resampler resampler = Resampler::Systematic;
  /// Parallelism hint for the vectorized engine; 0 picks the OpenMP
  /// default. Never affects results. The scalar engine is single-threaded
  /// by design.
  int threads = 0;
};

/// Bootstrap particle filter, one particle at a time. Serving as the
/// plain reference the vectorized engine is checked against: both consume
/// the stream at identical (step, slot, draw) addresses, so their outputs
/// must match bit for bit.
ParticleEnsemble run_scalar_pf(const Ppg& g, const RunParams& params);

/// Vectorized engine: per step, one boolean mask per transition over the
/// whole ensemble, masked state update and masked scoring, parallelized
/// across particles with OpenMP.
ParticleEnsemble run_vpf(const Ppg& g, const RunParams& params);

struct EstimateReport {
  double point = 0.0;       // sum of normalized-weight * h
  double beta_lower = 0.0;  // == point
  std::optional<double> beta_upper;
  std::optional<double> alpha;  // 1 / p_term; absent when p_term = 0
  double p_term = 0.0;
  double ess = 0.0;
  size_t particles = 0;
  uint32_t horizon = 0;
  uint64_t seed = 0;
  EngineKind engine = EngineKind::Scalar;
  Resampler resampler = Resampler::Systematic;
  double wall_time_ms = 0.0;
  std::optional<uint32_t> collapsed_at_step;
};

/// Weighted-sum estimate of E[h] under the filtering distribution, with
/// termination mass, bounds and ESS diagnostics.
EstimateReport estimate(const Ppg& g, const ParticleEnsemble& ensemble, const LiftedQuery& query);

}  // namespace fkppg
