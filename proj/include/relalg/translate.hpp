#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relalg/formula.hpp"
#include "relalg/sliced.hpp"
#include "relalg/term.hpp"

namespace relalg {

/// A conjunction split by variable use: psi1 over (a, b), psi2 over (a, c),
/// psi3 over (c, b). Absent parts are unconstrained.
struct GroupedConjunction {
  std::optional<Formula> psi1;
  std::optional<Formula> psi2;
  std::optional<Formula> psi3;
};

/// Splits conjuncts (each with at most two free variables among a, b, c) into
/// the three slots.
GroupedConjunction group_conjunction(const std::vector<Formula>& conjuncts, const std::string& a,
                                     const std::string& b, const std::string& c);

/// Disjunctive normal form of `f` over its maximal subformulas with at most
/// two free variables.
std::vector<std::vector<Formula>> component_dnf(const Formula& f);

/// Positive-existential FO3 formula with free variables among x, y to an
/// equivalent term over {id, 0, T, ;, |, &, ^}.
Term compile_posex(const Formula& f, const std::string& x = "x", const std::string& y = "y");

struct Counterexample {
  Structure structure;
  std::vector<std::string> pair;
  std::string note;
};

struct EquivalenceReport {
  bool pass = true;
  std::optional<Counterexample> counterexample;
  std::size_t max_size = 0;
  std::uint64_t exhaustive_structures = 0;
  std::size_t samples = 0;
  std::size_t sample_max_size = 0;
  std::uint64_t seed = 0;
};

struct EquivalenceBounds {
  std::size_t max_size = 3;
  std::size_t samples = 500;
  std::size_t sample_max_size = 8;
};

/// Compares two definitions on every structure (class all) up to max_size
/// over the union of their symbols, then on seeded random samples.
EquivalenceReport check_equivalence(const Definition& left, const Definition& right,
                                    const EquivalenceBounds& bounds, std::uint64_t seed);

EquivalenceReport verify_compilation(const Formula& f, const Term& t,
                                     const EquivalenceBounds& bounds, std::uint64_t seed);

}  // namespace relalg
