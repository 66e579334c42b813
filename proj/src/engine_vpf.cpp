#include <chrono>
#include <cstring>
#include <exception>

#include "engine_internal.hpp"

#ifdef _OPENMP
#include <omp.h>
#endif

namespace fkppg {

namespace {

/// Flattened transition view: (source, guard, measure, target) across the
/// whole graph, so the per-step mask pass is one loop over E.
struct FlatTransition {
  uint32_t source;
  uint32_t target;
  const Expr* guard;
  const ParametricMeasure* measure;
};

std::vector<FlatTransition> flatten_transitions(const Ppg& g) {
  std::vector<FlatTransition> flat;
  for (uint32_t s = 0; s < g.checkpoint_count(); ++s) {
    for (const Transition& tr : g.checkpoint(s).out) {
      flat.push_back({s, tr.target, &tr.guard, &tr.measure});
    }
  }
  return flat;
}

/// Runs fn(j) over [0, n) in parallel. Exceptions cannot cross an OpenMP
/// region, so each thread records failures and the lowest-index one is
/// rethrown afterwards (deterministic regardless of the schedule).
template <typename Fn>
void parallel_particles(size_t n, int threads, Fn&& fn) {
#ifdef _OPENMP
  std::exception_ptr first_error = nullptr;
  size_t first_index = SIZE_MAX;
  const int nt = threads > 0 ? threads : omp_get_max_threads();
#pragma omp parallel for schedule(static) num_threads(nt)
  for (size_t j = 0; j < n; ++j) {
    try {
      fn(j);
    } catch (...) {
#pragma omp critical(fkppg_vpf_error)
      {
        if (j < first_index) {
          first_index = j;
          first_error = std::current_exception();
        }
      }
    }
  }
  if (first_error) std::rethrow_exception(first_error);
#else
  (void)threads;
  for (size_t j = 0; j < n; ++j) fn(j);
#endif
}

}  // namespace

ParticleEnsemble run_vpf(const Ppg& g, const RunParams& params) {
  const auto start = std::chrono::steady_clock::now();
  ParticleEnsemble e = detail::make_initial_ensemble(g, params, EngineKind::Vpf);
  const RngStream rng(params.seed);
  const size_t n = e.count;
  const uint32_t m = e.var_count;
  const auto transitions = flatten_transitions(g);
  const uint32_t n_trans = uint32_t(transitions.size());

  std::vector<double> next_stores(n * m);
  std::vector<uint32_t> next_nodes(n);
  std::vector<uint32_t> chosen(n);
  std::vector<uint8_t> enabled(n);

  for (uint32_t k = 2; k <= params.horizon; ++k) {
    const auto picks = detail::resample_indices(e, params.resampler, rng, k);

    parallel_particles(n, params.threads, [&](size_t j) {
      std::memcpy(next_stores.data() + j * m, e.stores.data() + size_t(picks[j]) * m,
                  m * sizeof(double));
      next_nodes[j] = e.nodes[picks[j]];
    });

    // Mask pass: one boolean mask per transition, source match AND guard.
    // A particle's masks must sum to exactly one across E.
    std::fill(enabled.begin(), enabled.end(), uint8_t(0));
    for (uint32_t t_idx = 0; t_idx < n_trans; ++t_idx) {
      const FlatTransition& tr = transitions[t_idx];
      parallel_particles(n, params.threads, [&](size_t j) {
        if (next_nodes[j] != tr.source) return;
        if (tr.guard->eval_predicate(next_stores.data() + j * m) == 1.0) {
          ++enabled[j];
          chosen[j] = t_idx;
        }
      });
    }
    parallel_particles(n, params.threads, [&](size_t j) {
      if (enabled[j] != 1) {
        // Rebuild the exact diagnostic through the scalar selector.
        select_transition(g, next_stores.data() + j * m, next_nodes[j]);
      }
    });

    // Masked state update, one transition at a time; the masks partition
    // the ensemble, so every particle is written exactly once.
    for (uint32_t t_idx = 0; t_idx < n_trans; ++t_idx) {
      const FlatTransition& tr = transitions[t_idx];
      parallel_particles(n, params.threads, [&](size_t j) {
        if (chosen[j] != t_idx) return;
        DrawCursor cursor{&rng, k, uint32_t(j), 0};
        execute_measure_inplace(*tr.measure, next_stores.data() + j * m, cursor);
        next_nodes[j] = tr.target;
      });
    }

    // Masked score pass.
    parallel_particles(n, params.threads, [&](size_t j) {
      e.weights[j] = combined_score(g, next_stores.data() + j * m, next_nodes[j]);
    });

    e.stores.swap(next_stores);
    e.nodes.swap(next_nodes);
    e.step = k;

    bool any_positive = false;
#ifdef _OPENMP
#pragma omp parallel for schedule(static) reduction(|| : any_positive)
#endif
    for (size_t j = 0; j < n; ++j) {
      any_positive = any_positive || e.weights[j] > 0.0;
    }
    if (!any_positive) {
      throw detail::collapse_error(k);
    }
  }

  e.wall_time_ms =
      std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
  return e;
}

}  // namespace fkppg
