#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace relalg {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A binary relation over the index set {0, ..., n-1}.
///
/// Stored as a dense bit matrix, one row of 64-bit words per source index.
/// Names of elements live in the owning Structure; a Relation only knows
/// the size of its universe. All operations of the relation-algebra
/// catalogue are provided as value-returning members.
class Relation {
 public:
  using Pair = std::pair<std::size_t, std::size_t>;

  Relation() = default;
  explicit Relation(std::size_t n);

  static Relation identity(std::size_t n);
  static Relation full(std::size_t n);
  static Relation from_pairs(std::size_t n, std::span<const Pair> pairs);

  std::size_t universe() const { return n_; }
  std::size_t words_per_row() const { return words_; }

  bool contains(std::size_t a, std::size_t b) const {
    return (bits_[a * words_ + (b >> 6)] >> (b & 63)) & 1U;
  }
  void insert(std::size_t a, std::size_t b) {
    bits_[a * words_ + (b >> 6)] |= std::uint64_t{1} << (b & 63);
  }
  void erase(std::size_t a, std::size_t b) {
    bits_[a * words_ + (b >> 6)] &= ~(std::uint64_t{1} << (b & 63));
  }

  std::span<const std::uint64_t> row(std::size_t a) const {
    return {bits_.data() + a * words_, words_};
  }
  std::span<std::uint64_t> row(std::size_t a) {
    return {bits_.data() + a * words_, words_};
  }
  std::span<const std::uint64_t> raw() const { return bits_; }

  bool empty() const;
  std::size_t count() const;
  bool row_empty(std::size_t a) const;
  std::size_t out_degree(std::size_t a) const;
  std::size_t in_degree(std::size_t b) const;
  std::vector<std::size_t> successors(std::size_t a) const;
  std::vector<Pair> pairs() const;

  bool is_partial_function() const;
  bool is_total_function() const;
  bool is_injective_partial_function() const;
  bool subset_of(const Relation& other) const;

  Relation complement() const;
  Relation converse() const;
  Relation domain() const;
  Relation range() const;
  Relation antidomain() const;
  Relation unite(const Relation& other) const;
  Relation intersect(const Relation& other) const;
  Relation minus(const Relation& other) const;
  Relation compose(const Relation& other) const;
  Relation semijoin(const Relation& other) const;
  Relation preferential_union(const Relation& other) const;
  /// (R <+ S) & (R^ <+ S^)^
  Relation injective_union(const Relation& other) const;

  /// Restriction to the given indices, renumbered in the given order.
  Relation restrict(std::span<const std::size_t> keep) const;
  /// Image under an index map into a universe of size `n`.
  Relation relabel(std::span<const std::size_t> map, std::size_t n) const;

  bool operator==(const Relation& other) const = default;
  bool operator<(const Relation& other) const;
  std::size_t hash() const;

 private:
  void require_same_universe(const Relation& other) const;
  std::uint64_t tail_mask() const;

  std::size_t n_ = 0;
  std::size_t words_ = 0;
  std::vector<std::uint64_t> bits_;
};

struct RelationHash {
  std::size_t operator()(const Relation& r) const { return r.hash(); }
};

}  // namespace relalg
