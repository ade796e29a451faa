#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "relalg/formula.hpp"
#include "relalg/term.hpp"

namespace relalg {

/// One side of an equivalence check: a term, or a formula read as a
/// relation in (x, y) with missing variables unconstrained.
struct Definition {
  std::variant<Term, Formula> body;
  std::string x = "x";
  std::string y = "y";

  static Definition of(Term t) { return {std::move(t)}; }
  static Definition of(Formula f, std::string x = "x", std::string y = "y") {
    return {std::move(f), std::move(x), std::move(y)};
  }
  std::set<std::string> symbols() const;
  Relation evaluate(const Structure& s) const;
};

/// Exhaustive equivalence over every structure of one size (class all),
/// evaluating 64 structures per machine word.
class SlicedComparison {
 public:
  SlicedComparison(const Definition& left, const Definition& right,
                   std::vector<std::string> signature);

  /// Smallest structure_at index (class all, size k) on which the two sides
  /// differ, if any.
  std::optional<std::uint64_t> first_difference(std::size_t k);

  const std::vector<std::string>& signature() const { return signature_; }

 private:
  struct Instr {
    int op;
    int a = 0, b = 0;
    int arg = 0;
    std::size_t out = 0;
  };
  struct Program {
    std::vector<Instr> code;
    std::size_t result = 0;
    bool formula = false;
    std::size_t vars = 0;
    int x_slot = 0, y_slot = 0;
  };

  void compile_side(const Definition& d, Program& p);
  std::size_t compile_term(const Term& t, Program& p);
  std::size_t compile_formula(const Formula& f, Program& p, std::map<std::string, int>& slots);

  Definition left_def_;
  Definition right_def_;
  std::vector<std::string> signature_;
  Program left_, right_;

  std::vector<std::uint64_t> rel_;  // symbol-major k*k words
  std::vector<std::uint64_t> lm_, rm_;
};

}  // namespace relalg
