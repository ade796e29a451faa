#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "relalg/relation.hpp"

namespace relalg {

/// A finite domain of named elements plus named binary relations over it.
///
/// Element identifiers are opaque strings and unique; relation names are
/// unique. The empty domain is allowed. Internally every relation is a
/// Relation over element indices, i.e. positions in `domain()`.
class Structure {
 public:
  Structure() = default;
  Structure(std::vector<std::string> domain, const std::vector<std::string>& signature);

  /// Builds a structure from named pairs; rejects pairs naming unknown
  /// elements (the message quotes the offending pair).
  static Structure from_named_pairs(
      std::vector<std::string> domain,
      const std::map<std::string, std::vector<std::pair<std::string, std::string>>>& relations);

  const std::vector<std::string>& domain() const { return domain_; }
  std::size_t size() const { return domain_.size(); }
  const std::string& element(std::size_t i) const { return domain_.at(i); }
  std::optional<std::size_t> find(std::string_view id) const;
  /// Throws "element not in domain" for unknown identifiers.
  std::size_t index_of(std::string_view id) const;

  std::vector<std::string> signature() const;
  bool has_relation(std::string_view name) const;
  const Relation& relation(std::string_view name) const;
  Relation& relation(std::string_view name);
  const std::map<std::string, Relation, std::less<>>& relations() const { return relations_; }
  void set_relation(const std::string& name, Relation r);
  void add_pair(std::string_view name, std::string_view a, std::string_view b);

  /// Induced substructure on the given indices (kept in the given order).
  Structure induced(const std::vector<std::size_t>& indices) const;

  /// Named pairs of one relation, sorted lexicographically by identifiers.
  std::vector<std::pair<std::string, std::string>> named_pairs(const Relation& r) const;

  bool operator==(const Structure& other) const;

 private:
  std::vector<std::string> domain_;
  std::map<std::string, std::size_t, std::less<>> index_;
  std::map<std::string, Relation, std::less<>> relations_;
};

enum class StructureClass { All, PartialFunctions, TotalFunctions, InjectivePartialFunctions };

std::string_view to_string(StructureClass c);
StructureClass parse_structure_class(std::string_view text);
bool relation_in_class(const Relation& r, StructureClass c);
bool in_class(const Structure& s, StructureClass c);

enum class Reach { Forward, Undirected };

/// Induced substructure on everything reachable from `a` (forward or undirected).
Structure generated_substructure(const Structure& s, std::string_view a, Reach mode);
/// Induced substructure on elements at distance <= radius from `a`.
Structure ball(const Structure& s, std::string_view a, std::size_t radius, Reach mode);
/// Indices within distance `radius` of `a` (unbounded when radius is nullopt),
/// listed in domain order.
std::vector<std::size_t> reachable_indices(const Structure& s, std::size_t a,
                                           std::optional<std::size_t> radius, Reach mode);

/// Tagged union: left elements become "L:x", right ones "R:x".
Structure disjoint_union(const Structure& left, const Structure& right);

/// Element maps as index vectors: map[i] is the image of left element i.
using ElementMap = std::vector<std::size_t>;

/// Up to `limit` homomorphisms from `a` to `b`, in lexicographic order of
/// the image tuple.
std::vector<ElementMap> homomorphisms(const Structure& a, const Structure& b,
                                      std::size_t limit = SIZE_MAX);
bool is_homomorphism(const Structure& a, const Structure& b, const ElementMap& h);

/// Isomorphism a -> b that maps anchors_a[i] to anchors_b[i], if any.
std::optional<ElementMap> isomorphism(const Structure& a, const std::vector<std::size_t>& anchors_a,
                                      const Structure& b, const std::vector<std::size_t>& anchors_b);

struct OrbitOptions {
  std::size_t max_elements = 64;
};

/// Orbits of dom^2 under the automorphism group, each sorted, the list
/// sorted by first member.
std::vector<std::vector<Relation::Pair>> automorphism_orbits(const Structure& s,
                                                             const OrbitOptions& options = {});

/// Deterministic enumeration of all class members with domain {e1..ek}.
class StructureStream {
 public:
  StructureStream(std::vector<std::string> signature, std::size_t max_size, StructureClass cls,
                  bool include_empty = false);

  /// Writes the next structure into `out`; false when exhausted.
  bool next(Structure& out);
  void reset();

  /// Number of structures with exactly k elements.
  std::uint64_t count_of_size(std::size_t k) const;
  std::uint64_t total() const;

 private:
  std::vector<std::string> signature_;
  std::size_t max_size_;
  StructureClass cls_;
  bool include_empty_;
  std::size_t size_ = 0;
  std::uint64_t index_ = 0;
  bool started_ = false;
};

/// Every relation of the class over k elements, in enumeration order.
/// Throws when the list would exceed 2^20 entries.
const std::vector<Relation>& class_relations(std::size_t k, StructureClass cls);

/// The `index`-th structure with k elements (mixed radix over the symbols).
Structure structure_at(const std::vector<std::string>& signature, std::size_t k, StructureClass cls,
                       std::uint64_t index);

std::vector<std::string> default_elements(std::size_t k);

std::vector<Structure> enumerate_structures(const std::vector<std::string>& signature,
                                            std::size_t max_size, StructureClass cls,
                                            bool include_empty = false);

/// Deterministic generator independent of the standard library's distributions.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : state_(seed) {}
  std::uint64_t next();
  /// Uniform in [0, n).
  std::uint64_t below(std::uint64_t n);
  bool chance(std::uint64_t num, std::uint64_t den) { return below(den) < num; }

 private:
  std::uint64_t state_;
};

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream);

Structure random_structure(std::uint64_t seed, std::size_t size,
                           const std::vector<std::string>& signature, StructureClass cls);

}  // namespace relalg
