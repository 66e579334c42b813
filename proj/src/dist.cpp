#include "fkppg/dist.hpp"

#include <algorithm>
#include <cmath>
#include <map>

namespace fkppg {

namespace {

[[noreturn]] void invalid_param(const std::string& what) {
  throw Error(ErrCode::InvalidParameter, "invalid distribution parameter: " + what);
}

Error tag_statement(const Error& e, size_t index) {
  Error tagged(e.code(), "statement " + std::to_string(index) + ": " + e.what());
  tagged.step = long(index);
  tagged.line = e.line;
  tagged.column = e.column;
  return tagged;
}

}  // namespace

double sample_dist(const DistSpec& d, const double* store, DrawCursor& cursor) {
  switch (d.kind) {
    case DistKind::Bernoulli: {
      const double p = d.params[0].eval(store);
      if (!(p >= 0.0 && p <= 1.0)) {
        invalid_param("bernoulli probability " + std::to_string(p) + " outside [0, 1]");
      }
      return cursor.take() < p ? 1.0 : 0.0;
    }
    case DistKind::Normal: {
      const double mean = d.params[0].eval(store);
      const double sd = d.params[1].eval(store);
      const double u = cursor.take();
      if (!(sd > 0.0) || !std::isfinite(sd) || !std::isfinite(mean)) {
        // Deterministic default in place of an ill-parameterized Gaussian.
        return std::isfinite(mean) ? mean : 0.0;
      }
      return mean + sd * inverse_normal_cdf(u);
    }
    case DistKind::Uniform: {
      const double lo = d.params[0].eval(store);
      const double hi = d.params[1].eval(store);
      if (!std::isfinite(lo) || !std::isfinite(hi) || !(lo < hi)) {
        invalid_param("uniform bounds [" + std::to_string(lo) + ", " + std::to_string(hi) +
                      ") must be finite with lo < hi");
      }
      return lo + (hi - lo) * cursor.take();
    }
    case DistKind::Choice: {
      const size_t k = d.params.size();
      const double u = cursor.take();
      size_t idx = size_t(u * double(k));
      if (idx >= k) idx = k - 1;  // guard the u -> 1 rounding edge
      return d.params[idx].eval(store);
    }
  }
  invalid_param("unknown distribution kind");
}

void execute_measure_inplace(const ParametricMeasure& pm, double* store, DrawCursor& cursor) {
  for (size_t i = 0; i < pm.statements.size(); ++i) {
    const Statement& st = pm.statements[i];
    try {
      store[st.var] = st.kind == Statement::Kind::Sample ? sample_dist(st.dist, store, cursor)
                                                         : st.expr.eval(store);
    } catch (const Error& e) {
      throw tag_statement(e, i);
    }
  }
}

Store execute_measure(const ParametricMeasure& pm, const Store& store, DrawCursor& cursor) {
  Store next = store;
  execute_measure_inplace(pm, next.data(), cursor);
  return next;
}

std::vector<WeightedStore> enumerate_support(const ParametricMeasure& pm, const Store& store) {
  std::vector<WeightedStore> frontier{{store, 1.0}};
  for (size_t i = 0; i < pm.statements.size(); ++i) {
    const Statement& st = pm.statements[i];
    std::vector<WeightedStore> next;
    try {
      for (const WeightedStore& ws : frontier) {
        switch (st.kind) {
          case Statement::Kind::Assign: {
            WeightedStore out = ws;
            out.store[st.var] = st.expr.eval(ws.store);
            next.push_back(std::move(out));
            break;
          }
          case Statement::Kind::Sample: {
            switch (st.dist.kind) {
              case DistKind::Bernoulli: {
                const double p = st.dist.params[0].eval(ws.store);
                if (!(p >= 0.0 && p <= 1.0)) {
                  invalid_param("bernoulli probability " + std::to_string(p) + " outside [0, 1]");
                }
                for (const auto& [value, prob] : {std::pair{1.0, p}, std::pair{0.0, 1.0 - p}}) {
                  if (prob <= 0.0) continue;
                  WeightedStore out = ws;
                  out.store[st.var] = value;
                  out.probability *= prob;
                  next.push_back(std::move(out));
                }
                break;
              }
              case DistKind::Choice: {
                const double p = 1.0 / double(st.dist.params.size());
                for (const Expr& v : st.dist.params) {
                  WeightedStore out = ws;
                  out.store[st.var] = v.eval(ws.store);
                  out.probability *= p;
                  next.push_back(std::move(out));
                }
                break;
              }
              default:
                throw Error(ErrCode::ContinuousDistribution,
                            std::string(dist_kind_name(st.dist.kind)) +
                                " has no finite support; only bernoulli and choice"
                                " can be enumerated");
            }
            break;
          }
        }
      }
    } catch (const Error& e) {
      throw tag_statement(e, i);
    }
    // Merge equal stores to keep the frontier canonical and small.
    std::map<Store, double> merged;
    for (WeightedStore& ws : next) {
      merged[std::move(ws.store)] += ws.probability;
    }
    frontier.clear();
    for (auto& [s, p] : merged) {
      frontier.push_back({s, p});
    }
  }
  return frontier;
}

}  // namespace fkppg
