#pragma once

#include <variant>

#include "relalg/checkers.hpp"

namespace relalg::detail {

/// Cached evaluator for an operation; one per thread.
class OpEval {
 public:
  explicit OpEval(const OperationSpec& op) {
    if (const auto* t = std::get_if<Term>(&op.body)) impl_.emplace<CompiledTerm>(*t);
    else impl_.emplace<FormulaEvaluator>(std::get<Formula>(op.body), op.x, op.y, true);
  }
  Relation operator()(const Structure& s) {
    if (auto* c = std::get_if<CompiledTerm>(&impl_)) return c->eval(s);
    return std::get<FormulaEvaluator>(impl_).define(s);
  }

 private:
  std::variant<std::monostate, CompiledTerm, FormulaEvaluator> impl_;
};

}  // namespace relalg::detail
