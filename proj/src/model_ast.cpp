#include "fkppg/model_ast.hpp"

#include <sstream>

namespace fkppg {

const char* dist_kind_name(DistKind kind) {
  switch (kind) {
    case DistKind::Bernoulli: return "bernoulli";
    case DistKind::Normal: return "normal";
    case DistKind::Uniform: return "uniform";
    case DistKind::Choice: return "choice";
  }
  return "?";
}

void finalize_measure(ParametricMeasure& pm) {
  uint32_t draws = 0;
  for (Statement& st : pm.statements) {
    if (st.kind == Statement::Kind::Sample) {
      st.draw_index = draws++;
    }
  }
  pm.sample_count = draws;
}

std::string dist_to_string(const DistSpec& dist, const std::vector<std::string>& var_names) {
  std::string out = dist_kind_name(dist.kind);
  out += "(";
  for (size_t i = 0; i < dist.params.size(); ++i) {
    if (i > 0) out += ", ";
    out += dist.params[i].to_string(&var_names);
  }
  out += ")";
  return out;
}

std::string pretty_print(const ModelAst& ast) {
  std::ostringstream out;
  out << "vars";
  for (const std::string& v : ast.variables) out << " " << v;
  out << "\n\n";
  for (const CheckpointDecl& cp : ast.checkpoints) {
    if (cp.id == ast.nil_id) {
      out << "nil " << cp.id << "\n";
    } else {
      out << "node " << cp.id;
      if (cp.score.has_value()) out << " score " << cp.score->to_string(&ast.variables);
      out << "\n";
    }
  }
  out << "\n";
  for (const TransitionDecl& tr : ast.transitions) {
    out << "trans " << tr.source << " -> " << tr.target << " when "
        << tr.guard.to_string(&ast.variables) << " do {";
    if (tr.measure.statements.empty()) {
      out << " }\n";
      continue;
    }
    out << "\n";
    for (const Statement& st : tr.measure.statements) {
      out << "  " << ast.variables[st.var];
      if (st.kind == Statement::Kind::Sample) {
        out << " ~ " << dist_to_string(st.dist, ast.variables);
      } else {
        out << " := " << st.expr.to_string(&ast.variables);
      }
      out << ";\n";
    }
    out << "}\n";
  }
  out << "\ninit " << ast.initial_id << "\n";
  return out.str();
}

}  // namespace fkppg
