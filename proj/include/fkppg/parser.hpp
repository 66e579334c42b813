#pragma once

#include <string>
#include <string_view>

#include "fkppg/model_ast.hpp"

namespace fkppg {

/// Parses a model in the PPG DSL. Diagnostics carry 1-based line/column.
ModelAst parse_model(std::string_view text);

/// Parses a standalone expression against a variable name list (used for
/// CLI queries). The whole input must be consumed.
Expr parse_expression(std::string_view text, const std::vector<std::string>& variables);

}  // namespace fkppg
