#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relalg/checkers.hpp"
#include "relalg/structure.hpp"
#include "relalg/term.hpp"
#include "relalg/translate.hpp"

namespace relalg {

/// Isomorphism type of a pointed depth-m ball in a partial-function
/// structure, by word existence and endpoint equalities.
///
/// Letters are the symbols in order; in oriented mode letter 2i is symbol i
/// and letter 2i+1 its converse. Nodes are numbered in BFS order with
/// letters tried in order, so node 0 is the root and equal balls give equal
/// encodings. Only nodes at depth < radius carry successor slots.
struct NeighborhoodType {
  static constexpr int kNone = -1;
  static constexpr int kUnknown = -2;

  std::vector<std::string> symbols;
  std::size_t radius = 0;
  bool oriented = false;
  std::vector<std::size_t> depth;
  std::vector<std::vector<int>> succ;
  std::vector<std::vector<std::size_t>> word;  // shortest, then least, word reaching the node

  std::size_t letters() const { return oriented ? 2 * symbols.size() : symbols.size(); }
  std::size_t size() const { return depth.size(); }
  bool operator==(const NeighborhoodType& other) const {
    return symbols == other.symbols && radius == other.radius && oriented == other.oriented &&
           succ == other.succ;
  }
};

std::string to_string(const NeighborhoodType& t);
std::string word_string(const NeighborhoodType& t, const std::vector<std::size_t>& word);

/// Type of the (oriented) depth-m ball at a. The structure must be in K_pf
/// (K_ipf when oriented).
NeighborhoodType neighborhood_type(const Structure& s, std::string_view a, std::size_t m,
                                   bool oriented);

/// Every type over the symbols at radius m, in canonical order.
std::vector<NeighborhoodType> enumerate_types(const std::vector<std::string>& symbols,
                                              std::size_t m, bool oriented,
                                              std::size_t budget = 1000000);

/// The type as a structure, root first. With `padded`, every empty slot at
/// depth m gets a fresh neighbour and, in forward mode, every node gets a
/// fresh predecessor per symbol.
Structure realization(const NeighborhoodType& t, bool padded = false);

/// Intersection of antidomain-rooted atoms, contained in id, true exactly at
/// roots of balls of type t.
Term chi_term(const NeighborhoodType& t);

/// Composition of the word's letters; converse letters use ^.
Term word_term(const NeighborhoodType& t, const std::vector<std::size_t>& word);

class SynthesisError : public Error {
 public:
  SynthesisError(const std::string& message, std::optional<Structure> realization)
      : Error(message), realization_(std::move(realization)) {}
  const std::optional<Structure>& realization() const { return realization_; }

 private:
  std::optional<Structure> realization_;
};

struct PositiveType {
  NeighborhoodType type;
  std::vector<std::size_t> word;
};

struct SynthesisResult {
  Term term;
  std::size_t types_considered = 0;
  std::vector<PositiveType> positive_types;
  std::size_t radius = 0;
  bool oriented = false;
};

/// Term over {;, ~, &, <+} equivalent to a forward function-preserving oracle
/// whose rows depend on the depth-m forward ball.
SynthesisResult synthesize_forward(const OperationSpec& oracle, std::size_t m);
/// Term over {;, ~, &, ^, <#} for a local injective-function-preserving oracle.
SynthesisResult synthesize_local_injective(const OperationSpec& oracle, std::size_t m);

struct SynthesisBounds {
  std::size_t max_size = 4;
  std::size_t samples = 1000;
  std::size_t sample_max_size = 12;
};

struct ValidationReport {
  bool pass = true;
  std::optional<Counterexample> counterexample;
  std::string structure_class;
  std::size_t max_size = 0;
  std::uint64_t exhaustive_structures = 0;
  std::size_t samples = 0;
  std::size_t sample_max_size = 0;
  std::uint64_t seed = 0;
};

/// Oracle equivalence over K_pf (K_ipf when oriented): every structure up to
/// max_size, then seeded random samples.
ValidationReport validate_synthesis(const OperationSpec& oracle, const Term& term, bool oriented,
                                    const SynthesisBounds& bounds, std::uint64_t seed);

struct RadiusAttempt {
  std::size_t radius = 0;
  std::string failure;  // empty when the attempt passed
  std::optional<Counterexample> counterexample;
};

struct RadiusEstimate {
  std::optional<std::size_t> radius;
  std::optional<SynthesisResult> result;
  std::vector<RadiusAttempt> attempts;
};

/// Smallest m <= max_m whose synthesized term validates.
RadiusEstimate estimate_radius(const OperationSpec& oracle, std::size_t max_m, bool oriented,
                               const SynthesisBounds& bounds, std::uint64_t seed);

/// Forward function-preserving oracles over {f, g} with radius <= 2.
const std::vector<std::string>& forward_catalog();
/// Local injective-function-preserving oracles, at most radius 1 over two
/// symbols and radius 2 over one.
const std::vector<std::string>& injective_catalog();

}  // namespace relalg
