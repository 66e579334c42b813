#include "fkppg/bench_models.hpp"

#include "fkppg/parser.hpp"

namespace fkppg {

ModelAst BenchModel::ast() const { return parse_model(source); }

Ppg BenchModel::compile() const { return validate(ast()); }

LiftedQuery BenchModel::query() const {
  return {parse_expression(query_text, ast().variables), bound};
}

BenchModel build_rw1(bool conditioned) {
  BenchModel model;
  model.name = conditioned ? "rw1" : "rw1_uncond";
  model.query_text = "c";
  model.bound = 1.0;
  model.default_horizon = 4;
  model.source =
      "# Two-coin random walk; node 3 conditions on the second coin.\n"
      "vars c d\n"
      "\n"
      "node 0\n"
      "node 1\n"
      "nil 2\n";
  model.source += conditioned ? "node 3 score (d == 1)\n" : "node 3\n";
  model.source +=
      "\n"
      "trans 0 -> 1 when 1 == 1 do { c ~ bernoulli(0.5); }\n"
      "trans 1 -> 2 when c == 0 do { }\n"
      "trans 1 -> 3 when c != 0 do { d ~ bernoulli(0.5); }\n"
      "trans 3 -> 2 when 1 == 1 do { }\n"
      "trans 2 -> 2 when 1 == 1 do { }\n"
      "\n"
      "init 0\n";
  return model;
}

BenchModel build_dmm() {
  BenchModel model;
  model.name = "dmm";
  model.query_text = "d";
  model.bound = 0.1;
  model.default_horizon = 1000;
  model.source =
      "# Drunk man and mouse: independent Gaussian walks from -1 and 1,\n"
      "# stopped when their distance d drops below 0.1. Each walk draws\n"
      "# its own step deviation once, from uniform(0, 1). Node 1 scores\n"
      "# down runs where the two drift more than 3 apart.\n"
      "vars d x y sm ss\n"
      "\n"
      "node 0\n"
      "node 1 score (abs(x - y) <= 3)\n"
      "nil 2\n"
      "\n"
      "trans 0 -> 1 when 1 == 1 do {\n"
      "  sm ~ uniform(0, 1);\n"
      "  ss ~ uniform(0, 1);\n"
      "  x := -1;\n"
      "  y := 1;\n"
      "  d := abs(x - y);\n"
      "}\n"
      "trans 1 -> 1 when d >= 0.1 do {\n"
      "  x ~ normal(x, sm);\n"
      "  y ~ normal(y, ss);\n"
      "  d := abs(x - y);\n"
      "}\n"
      "trans 1 -> 2 when d < 0.1 do { }\n"
      "trans 2 -> 2 when 1 == 1 do { }\n"
      "\n"
      "init 0\n";
  return model;
}

}  // namespace fkppg
