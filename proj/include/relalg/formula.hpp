#pragma once

#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "relalg/structure.hpp"
#include "relalg/term.hpp"

namespace relalg {

enum class FKind { True, False, Atom, Eq, Not, And, Or, Implies, Exists, Forall };

/// First-order formula over binary relation symbols. Immutable and shared.
class Formula {
 public:
  Formula() = default;

  static Formula truth();
  static Formula falsity();
  static Formula atom(std::string relation, std::string v, std::string w);
  static Formula eq(std::string v, std::string w);
  static Formula negate(Formula f);
  static Formula conj(Formula a, Formula b);
  static Formula disj(Formula a, Formula b);
  static Formula implies(Formula a, Formula b);
  static Formula exists(std::string v, Formula body);
  static Formula forall(std::string v, Formula body);

  bool valid() const { return node_ != nullptr; }
  FKind kind() const { return node_->kind; }
  /// Relation name of an atom.
  const std::string& relation() const { return node_->name; }
  /// Bound variable of a quantifier.
  const std::string& variable() const { return node_->name; }
  const std::string& first() const { return node_->v; }
  const std::string& second() const { return node_->w; }
  const Formula& left() const { return node_->kids[0]; }
  const Formula& right() const { return node_->kids[1]; }
  const Formula& body() const { return node_->kids[0]; }

  /// Source position when parsed; 0 otherwise.
  std::size_t line() const { return node_->line; }
  std::size_t column() const { return node_->column; }
  Formula at(std::size_t line, std::size_t column) const;

  std::set<std::string> free_vars() const;
  std::set<std::string> variables() const;
  std::set<std::string> symbols() const;
  std::size_t depth() const;

  bool operator==(const Formula& other) const;

 private:
  struct Node {
    FKind kind;
    std::string name;
    std::string v, w;
    std::vector<Formula> kids;
    std::size_t line = 0;
    std::size_t column = 0;
  };
  explicit Formula(std::shared_ptr<const Node> n) : node_(std::move(n)) {}
  static Formula make(Node n);

  std::shared_ptr<const Node> node_;
};

/// Parses the ASCII formula syntax; '#' comments run to end of line.
Formula parse_formula(std::string_view text);
std::string print_formula(const Formula& f);

using Assignment = std::map<std::string, std::string, std::less<>>;

bool eval_formula(const Formula& f, const Structure& s, const Assignment& assignment);

/// {(a,b) | s |= f(a,b)} with x := a, y := b. With `pad_missing`, a variable
/// among x, y that is not free in f is simply unconstrained; otherwise both
/// must occur free.
Relation define_relation(const Formula& f, const std::string& x, const std::string& y,
                         const Structure& s, bool pad_missing = false);

/// Reusable evaluator for define_relation over many structures.
class FormulaEvaluator {
 public:
  FormulaEvaluator(const Formula& f, const std::string& x, const std::string& y,
                   bool pad_missing = false);
  Relation define(const Structure& s);

 private:
  struct Node {
    FKind kind;
    int a = 0, b = 0;     // children (node indices)
    int v = 0, w = 0;     // variable slots
    int symbol = -1;
  };
  int compile(const Formula& f, std::map<std::string, int>& slots);
  bool holds(int node);

  std::vector<Node> nodes_;
  std::vector<std::string> symbols_;
  int root_ = 0;
  int x_slot_ = 0, y_slot_ = 0;
  std::vector<std::size_t> env_;
  std::vector<const Relation*> bound_;
  std::size_t n_ = 0;
};

struct Classification {
  std::size_t variable_count = 0;
  bool is_posex = false;
  std::set<std::string> free_vars;
};

Classification classify(const Formula& f);

/// FO3 formula in x, y (third variable z) defining the same relation as t.
Formula term_to_fo3(const Term& t);

/// Random positive-existential formula over variables x, y, z with free
/// variables among x, y.
Formula random_posex_formula(Rng& rng, const std::vector<std::string>& symbols,
                             std::size_t max_depth);

}  // namespace relalg
