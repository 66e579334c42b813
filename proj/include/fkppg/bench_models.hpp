#pragma once

#include <string>

#include "fkppg/oracle.hpp"

namespace fkppg {

/// A named model shipped with the library: DSL source plus the default
/// query and horizon it is normally run with.
struct BenchModel {
  std::string name;
  std::string source;
  std::string query_text;       // h-expression over the model's variables
  std::optional<double> bound;  // M
  uint32_t default_horizon = 1;

  ModelAst ast() const;
  Ppg compile() const;
  LiftedQuery query() const;
};

/// Two-coin random walk: flip c; on heads flip d and (when conditioned)
/// keep only d = 1 outcomes. Query: expected c at termination.
/// The branch guards are written as the complementary pair c == 0 /
/// c != 0 so they partition every store, not just the reachable ones.
BenchModel build_rw1(bool conditioned);

/// Drunk man and mouse: two Gaussian random walks from -1 and 1 with
/// per-walk standard deviations drawn once from uniform(0,1), stopped
/// when they come within 0.1, soft-conditioned on staying within 3 of
/// each other. Query: their distance at meeting time.
BenchModel build_dmm();

}  // namespace fkppg
