#include "fkppg/engine.hpp"

#include <chrono>
#include <cmath>
#include <limits>

#include "engine_internal.hpp"

namespace fkppg {

namespace detail {

Error collapse_error(uint32_t step) {
  Error e(ErrCode::ZeroWeightEnsemble,
          "all particle weights are zero after step " + std::to_string(step));
  e.step = long(step);
  return e;
}

ParticleEnsemble make_initial_ensemble(const Ppg& g, const RunParams& params, EngineKind kind) {
  if (params.horizon < 1) {
    throw Error(ErrCode::InvalidParameter, "horizon must be >= 1");
  }
  if (params.particles < 1) {
    throw Error(ErrCode::InvalidParameter, "particle count must be >= 1");
  }
  if (params.particles >= RngStream::kResampleSlot) {
    throw Error(ErrCode::InvalidParameter, "particle count collides with the resampling slot");
  }
  ParticleEnsemble e;
  e.var_count = g.var_count();
  e.count = params.particles;
  e.stores.assign(e.count * e.var_count, 0.0);
  e.nodes.assign(e.count, g.initial_id());
  e.seed = params.seed;
  e.engine = kind;
  e.resampler = params.resampler;

  const State init = g.initial_state();
  const double w0 = combined_score(g, init);
  e.weights.assign(e.count, w0);
  e.step = 1;
  if (w0 == 0.0) {
    throw collapse_error(1);
  }
  return e;
}

std::vector<uint32_t> resample_indices(const ParticleEnsemble& e, Resampler scheme,
                                       const RngStream& rng, uint32_t step) {
  DrawCursor cursor{&rng, step, RngStream::kResampleSlot, 0};
  return scheme == Resampler::Multinomial
             ? resample_multinomial(e.weights, e.count, cursor)
             : resample_systematic(e.weights, e.count, cursor);
}

}  // namespace detail

const char* resampler_name(Resampler r) {
  return r == Resampler::Multinomial ? "multinomial" : "systematic";
}

const char* engine_kind_name(EngineKind k) { return k == EngineKind::Scalar ? "scalar" : "vpf"; }

ParticleEnsemble run_scalar_pf(const Ppg& g, const RunParams& params) {
  const auto start = std::chrono::steady_clock::now();
  ParticleEnsemble e = detail::make_initial_ensemble(g, params, EngineKind::Scalar);
  const RngStream rng(params.seed);
  const size_t n = e.count;
  const uint32_t m = e.var_count;

  std::vector<double> next_stores(n * m);
  std::vector<uint32_t> next_nodes(n);

  for (uint32_t k = 2; k <= params.horizon; ++k) {
    const auto picks = detail::resample_indices(e, params.resampler, rng, k);
    for (size_t j = 0; j < n; ++j) {
      const uint32_t src = picks[j];
      double* store = next_stores.data() + j * m;
      std::copy_n(e.stores.data() + size_t(src) * m, m, store);
      uint32_t node = e.nodes[src];
      DrawCursor cursor{&rng, k, uint32_t(j), 0};
      kernel_step_inplace(g, store, node, cursor);
      next_nodes[j] = node;
      e.weights[j] = combined_score(g, store, node);
    }
    e.stores.swap(next_stores);
    e.nodes.swap(next_nodes);
    e.step = k;

    bool any_positive = false;
    for (size_t j = 0; j < n && !any_positive; ++j) {
      any_positive = e.weights[j] > 0.0;
    }
    if (!any_positive) {
      throw detail::collapse_error(k);
    }
  }

  e.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return e;
}

EstimateReport estimate(const Ppg& g, const ParticleEnsemble& ensemble, const LiftedQuery& query) {
  EstimateReport report;
  report.particles = ensemble.count;
  report.horizon = ensemble.step;
  report.seed = ensemble.seed;
  report.engine = ensemble.engine;
  report.resampler = ensemble.resampler;
  report.wall_time_ms = ensemble.wall_time_ms;

  double total = 0.0;
  for (const double w : ensemble.weights) total += w;
  if (!(total > 0.0)) {
    throw detail::collapse_error(ensemble.step);
  }

  const double cap = query.bound.value_or(std::numeric_limits<double>::infinity());
  double point = 0.0;
  double p_term = 0.0;
  double sum_sq = 0.0;
  for (size_t j = 0; j < ensemble.count; ++j) {
    const double wn = ensemble.weights[j] / total;
    sum_sq += wn * wn;
    if (ensemble.nodes[j] != g.nil_id()) continue;
    p_term += wn;
    if (wn == 0.0) continue;
    const double h = query.h.eval(ensemble.store(j));
    if (!(h >= 0.0) || h > cap) {
      throw Error(ErrCode::QueryOutOfRange,
                  "query evaluates to " + std::to_string(h) +
                      " at a terminated particle; expected [0, " + std::to_string(cap) + "]");
    }
    point += wn * h;
  }
  report.point = point;
  report.beta_lower = point;
  report.p_term = p_term;
  report.ess = 1.0 / sum_sq;
  if (p_term > 0.0) {
    report.alpha = 1.0 / p_term;
    report.beta_upper = upper_bound_from(point, *report.alpha, query.bound);
  }
  return report;
}

}  // namespace fkppg
