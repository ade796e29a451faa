#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "relalg/formula.hpp"
#include "relalg/structure.hpp"
#include "relalg/term.hpp"

namespace relalg {

/// An operation on binary relations, given by a term or by a formula in
/// (x, y), together with the ordered signature it acts on.
struct OperationSpec {
  std::variant<Term, Formula> body;
  std::vector<std::string> signature;
  std::string x = "x";
  std::string y = "y";

  /// Signature defaults to the sorted symbols; operations without symbols
  /// act on {f}.
  static OperationSpec of(Term t, std::vector<std::string> signature = {});
  static OperationSpec of(Formula f, std::vector<std::string> signature = {});

  std::size_t arity() const { return signature.size(); }
  std::string describe() const;
  /// Reference evaluation (generic evaluator, no caching).
  Relation apply(const Structure& s) const;
};

enum class Property { FunctionPreserving, TotalPreserving, InjectivePreserving, HomSafe, SubsetSafe,
                      Forward, Local };

std::string_view to_string(Property p);
Property parse_property(std::string_view name);
/// Structure class a property quantifies over by default.
StructureClass default_class(Property p);

struct CheckBounds {
  std::optional<std::size_t> max_size;       // auto: 4 / 3 / 2 for 1 / 2 / more symbols
  std::size_t samples = 1000;
  std::size_t sample_max_size = 12;
  std::optional<std::size_t> pair_max_size;  // homsafe exhaustive pairs; auto
  std::size_t jobs = 1;
  bool all_structures = false;               // forward/local: class all instead of K_pf/K_ipf
  bool include_empty = false;
};

struct BoundsRecord {
  std::string structure_class;
  std::size_t max_size = 0;
  std::uint64_t exhaustive = 0;   // structures (or pairs for homsafe) enumerated
  std::size_t samples = 0;
  std::size_t sample_max_size = 0;
  std::optional<std::size_t> pair_max_size;
};

struct CheckCounterexample {
  std::vector<Structure> structures;
  std::vector<std::string> map;  // images of the first structure's elements, if any
  std::vector<std::string> pair;
  std::string note;
};

struct Verdict {
  Property property;
  bool pass = true;
  std::optional<CheckCounterexample> counterexample;
  BoundsRecord bounds;
  std::uint64_t seed = 0;
};

Verdict check(const OperationSpec& op, Property p, const CheckBounds& bounds, std::uint64_t seed);

inline Verdict check_function_preserving(const OperationSpec& op, const CheckBounds& b,
                                         std::uint64_t seed) {
  return check(op, Property::FunctionPreserving, b, seed);
}
inline Verdict check_total_function_preserving(const OperationSpec& op, const CheckBounds& b,
                                               std::uint64_t seed) {
  return check(op, Property::TotalPreserving, b, seed);
}
inline Verdict check_injective_function_preserving(const OperationSpec& op, const CheckBounds& b,
                                                   std::uint64_t seed) {
  return check(op, Property::InjectivePreserving, b, seed);
}
inline Verdict check_homomorphism_safe(const OperationSpec& op, const CheckBounds& b,
                                       std::uint64_t seed) {
  return check(op, Property::HomSafe, b, seed);
}
inline Verdict check_subseteq_safe(const OperationSpec& op, const CheckBounds& b,
                                   std::uint64_t seed) {
  return check(op, Property::SubsetSafe, b, seed);
}
inline Verdict check_forward(const OperationSpec& op, const CheckBounds& b, std::uint64_t seed) {
  return check(op, Property::Forward, b, seed);
}
inline Verdict check_local(const OperationSpec& op, const CheckBounds& b, std::uint64_t seed) {
  return check(op, Property::Local, b, seed);
}

/// Re-evaluates a counterexample with the reference evaluator.
bool reverify(const OperationSpec& op, Property p, const CheckCounterexample& cex);

struct Table1Row {
  std::string name;
  Term term;
  std::array<Verdict, 4> verdicts;  // homsafe, subsafe, fp, forward
  std::array<bool, 4> expected;
};

struct Table1Report {
  std::vector<Table1Row> rows;
  bool matches = true;
};

inline constexpr std::array<Property, 4> kTable1Columns{
    Property::HomSafe, Property::SubsetSafe, Property::FunctionPreserving, Property::Forward};

Table1Report table1_matrix(const CheckBounds& bounds, std::uint64_t seed);

}  // namespace relalg
