#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "relalg/relation.hpp"
#include "relalg/structure.hpp"

namespace relalg {

/// Term constructors, in enumeration order.
enum class Op : std::uint8_t {
  Symbol,
  Id,
  Empty,
  Top,
  Complement,
  Converse,
  Domain,
  Range,
  Antidomain,
  Union,
  Intersection,
  Difference,
  Composition,
  Semijoin,
  PrefUnion,
  InjUnion,
};

inline constexpr std::size_t kOpCount = 16;

int arity(Op op);
std::string_view op_name(Op op);
std::optional<Op> op_from_name(std::string_view name);

/// Immutable, structurally shared term tree.
class Term {
 public:
  Term() = default;

  static Term symbol(std::string name);
  static Term constant(Op op);
  static Term unary(Op op, Term operand);
  static Term binary(Op op, Term left, Term right);

  bool valid() const { return node_ != nullptr; }
  Op op() const { return node_->op; }
  const std::string& name() const { return node_->name; }
  const Term& left() const { return node_->kids[0]; }
  const Term& right() const { return node_->kids[1]; }
  const Term& operand() const { return node_->kids[0]; }
  std::size_t size() const { return node_->size; }
  std::size_t hash() const { return node_->hash; }

  /// Symbol names occurring in the term.
  std::set<std::string> signature() const;

  bool operator==(const Term& other) const;
  bool operator!=(const Term& other) const { return !(*this == other); }
  /// Identity of the shared node; used by evaluators for memoisation.
  const void* identity() const { return node_.get(); }

 private:
  struct Node {
    Op op;
    std::string name;
    std::vector<Term> kids;
    std::size_t size;
    std::size_t hash;
  };
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}
  static Term make(Op op, std::string name, std::vector<Term> kids);

  std::shared_ptr<const Node> node_;
};

struct TermHash {
  std::size_t operator()(const Term& t) const { return t.hash(); }
};

// Shorthands used throughout the library and tests.
Term sym(std::string name);
Term id_term();
Term empty_term();
Term top_term();
Term complement(Term t);
Term converse(Term t);
Term domain_of(Term t);
Term range_of(Term t);
Term antidomain(Term t);
Term unite(Term a, Term b);
Term intersect(Term a, Term b);
Term minus(Term a, Term b);
Term compose(Term a, Term b);
Term semijoin(Term a, Term b);
Term pref_union(Term a, Term b);
Term inj_union(Term a, Term b);

/// A set of term constructors (symbols are always allowed).
class Basis {
 public:
  Basis() = default;
  Basis(std::initializer_list<Op> ops);

  static Basis tra();
  static Basis fa();
  static Basis homsafe();
  static Basis fwd();
  static Basis inj();

  bool contains(Op op) const { return (mask_ >> static_cast<unsigned>(op)) & 1U; }
  Basis& insert(Op op);
  Basis with(Op op) const { return Basis(*this).insert(op); }
  std::vector<Op> ops() const;
  bool operator==(const Basis&) const = default;

 private:
  std::uint32_t mask_ = 1U;  // Symbol
};

/// Accepts preset names (tra, fa, homsafe, fwd, inj) and operation names
/// joined with '+', e.g. "fa+converse".
Basis parse_basis(std::string_view text);
std::string to_string(const Basis& b);

bool uses_only(const Term& t, const Basis& b);

// ---------------------------------------------------------------------------
// Concrete syntax

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, std::vector<std::string> expected,
             std::string found);
  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> expected_;
};

Term parse_term(std::string_view text);
std::string print_term(const Term& t);
/// One term per non-blank line; '#' starts a comment.
std::vector<Term> parse_term_file(std::string_view text);

// ---------------------------------------------------------------------------
// Semantics

Relation apply_op(Op op, const Relation& a);
Relation apply_op(Op op, const Relation& a, const Relation& b);
Relation constant_relation(Op op, std::size_t n);

/// Reference evaluator, a direct recursion over the tree.
Relation eval(const Term& t, const Structure& s);

/// Hash-consed DAG evaluator with short-circuiting, for repeated evaluation
/// of one term over many structures. Falls back to `eval` above 64 elements.
/// Not thread-safe; give each worker its own copy.
class CompiledTerm {
 public:
  explicit CompiledTerm(const Term& t);
  Relation eval(const Structure& s);
  const Term& term() const { return term_; }
  std::size_t node_count() const { return nodes_.size(); }

 private:
  struct Node {
    Op op;
    std::uint32_t a = 0;
    std::uint32_t b = 0;
    std::uint32_t symbol = 0;
  };
  std::uint32_t compile(const Term& t);
  const std::uint64_t* value(std::uint32_t node);

  Term term_;
  std::vector<Node> nodes_;
  std::vector<std::string> symbols_;
  std::uint32_t root_ = 0;

  std::size_t n_ = 0;
  std::uint64_t full_row_mask_ = 0;
  std::vector<const Relation*> bound_;
  std::vector<std::uint64_t> values_;
  std::vector<std::uint32_t> stamp_;
  std::uint32_t epoch_ = 0;
};

/// Applies only the fixed safe rewrites: x&x, x;id, id;x, x|0, 0|x, 0;x, x;0,
/// T&x, x&T.
Term simplify(const Term& t);

/// t \ (t ; (T \ id)): keeps exactly the rows of t that have one successor.
Term normalize_fp(const Term& t);

/// All terms of size <= max_size over the basis, ordered by size, then
/// constructor, then operands.
std::vector<Term> enumerate_terms(const Basis& basis, const std::vector<std::string>& symbols,
                                  std::size_t max_size);

struct ClosureEntry {
  Relation relation;
  Term witness;
};

struct ClosureOptions {
  std::size_t max_relations = 100000;
  /// Optional early exit once a relation satisfying this is found.
  std::function<bool(const Relation&)> stop;
};

struct ClosureResult {
  std::vector<ClosureEntry> entries;
  bool complete = true;
  bool stopped = false;
  std::size_t max_witness_size = 0;
};

/// Every relation on `s` denoted by a term over `generators` and `basis`,
/// each with a smallest witness.
ClosureResult semantic_closure(const Structure& s, const std::vector<std::string>& generators,
                               const Basis& basis, const ClosureOptions& options = {});

/// Random term for fuzzing; sizes are approximate.
Term random_term(Rng& rng, const Basis& basis, const std::vector<std::string>& symbols,
                 std::size_t max_depth);

}  // namespace relalg
