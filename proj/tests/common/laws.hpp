#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "relalg/term.hpp"

namespace testing {

struct Law {
  std::string left, right;
};

// Definitional identities between derived operations.
inline const std::vector<Law>& definitional_laws() {
  static const std::vector<Law> laws{
      {"dom(R)", "(R ; R^) & id"},
      {"~R", "id \\ dom(R)"},
      {"ran(R)", "dom(R^)"},
      {"R |> S", "R ; dom(S)"},
      {"R <+ S", "R | (S \\ (dom(R) ; T))"},
      {"R <# S", "(R <+ S) & (R^ <+ S^)^"},
      {"-R", "T \\ R"},
  };
  return laws;
}

// First structure (up to max_size, over R and S) separating the two sides.
inline std::optional<relalg::Structure> law_counterexample(const Law& law, std::size_t max_size) {
  using namespace relalg;
  CompiledTerm left(parse_term(law.left));
  CompiledTerm right(parse_term(law.right));
  StructureStream stream({"R", "S"}, max_size, StructureClass::All);
  Structure s;
  while (stream.next(s))
    if (left.eval(s) != right.eval(s)) return s;
  return std::nullopt;
}

}  // namespace testing
