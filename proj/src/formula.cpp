#include "relalg/formula.hpp"

#include <cctype>
#include <functional>

namespace relalg {

Formula Formula::make(Node n) { return Formula(std::make_shared<const Node>(std::move(n))); }

Formula Formula::truth() { return make({FKind::True, {}, {}, {}, {}}); }
Formula Formula::falsity() { return make({FKind::False, {}, {}, {}, {}}); }
Formula Formula::atom(std::string relation, std::string v, std::string w) {
  return make({FKind::Atom, std::move(relation), std::move(v), std::move(w), {}});
}
Formula Formula::eq(std::string v, std::string w) {
  return make({FKind::Eq, {}, std::move(v), std::move(w), {}});
}
Formula Formula::negate(Formula f) { return make({FKind::Not, {}, {}, {}, {std::move(f)}}); }
Formula Formula::conj(Formula a, Formula b) {
  return make({FKind::And, {}, {}, {}, {std::move(a), std::move(b)}});
}
Formula Formula::disj(Formula a, Formula b) {
  return make({FKind::Or, {}, {}, {}, {std::move(a), std::move(b)}});
}
Formula Formula::implies(Formula a, Formula b) {
  return make({FKind::Implies, {}, {}, {}, {std::move(a), std::move(b)}});
}
Formula Formula::exists(std::string v, Formula body) {
  return make({FKind::Exists, std::move(v), {}, {}, {std::move(body)}});
}
Formula Formula::forall(std::string v, Formula body) {
  return make({FKind::Forall, std::move(v), {}, {}, {std::move(body)}});
}

Formula Formula::at(std::size_t line, std::size_t column) const {
  Node n = *node_;
  n.line = line;
  n.column = column;
  return make(std::move(n));
}

std::set<std::string> Formula::free_vars() const {
  switch (kind()) {
    case FKind::True:
    case FKind::False: return {};
    case FKind::Atom:
    case FKind::Eq: return {first(), second()};
    case FKind::Not: return left().free_vars();
    case FKind::Exists:
    case FKind::Forall: {
      auto out = body().free_vars();
      out.erase(variable());
      return out;
    }
    default: {
      auto out = left().free_vars();
      auto r = right().free_vars();
      out.insert(r.begin(), r.end());
      return out;
    }
  }
}

std::set<std::string> Formula::variables() const {
  std::set<std::string> out;
  std::function<void(const Formula&)> rec = [&](const Formula& f) {
    switch (f.kind()) {
      case FKind::Atom:
      case FKind::Eq:
        out.insert(f.first());
        out.insert(f.second());
        break;
      case FKind::Exists:
      case FKind::Forall: out.insert(f.variable()); break;
      default: break;
    }
    for (const auto& k : f.node_->kids) rec(k);
  };
  rec(*this);
  return out;
}

std::set<std::string> Formula::symbols() const {
  std::set<std::string> out;
  std::function<void(const Formula&)> rec = [&](const Formula& f) {
    if (f.kind() == FKind::Atom) out.insert(f.relation());
    for (const auto& k : f.node_->kids) rec(k);
  };
  rec(*this);
  return out;
}

std::size_t Formula::depth() const {
  std::size_t d = 0;
  for (const auto& k : node_->kids) d = std::max(d, k.depth());
  return d + 1;
}

bool Formula::operator==(const Formula& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_) return false;
  const Node& a = *node_;
  const Node& b = *other.node_;
  if (a.kind != b.kind || a.name != b.name || a.v != b.v || a.w != b.w) return false;
  for (std::size_t i = 0; i < a.kids.size(); ++i)
    if (!(a.kids[i] == b.kids[i])) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

enum class FTok { Ident, True, False, Exists, Forall, Bang, And, Or, Arrow, Eq, Dot, Comma,
                  LParen, RParen, End };

struct FToken {
  FTok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::vector<FToken> ftokenize(std::string_view text) {
  std::vector<FToken> out;
  std::size_t i = 0, line = 1, col = 1;
  auto push = [&](FTok k, std::size_t len) {
    out.push_back({k, std::string(text.substr(i, len)), line, col});
    i += len;
    col += len;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '\n') {
      ++line;
      col = 1;
      ++i;
    } else if (c == '#') {
      while (i < text.size() && text[i] != '\n') ++i;
    } else if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
    } else if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      const std::string_view word = text.substr(i, j - i);
      FTok k = FTok::Ident;
      if (word == "true") k = FTok::True;
      else if (word == "false") k = FTok::False;
      else if (word == "exists") k = FTok::Exists;
      else if (word == "forall") k = FTok::Forall;
      push(k, j - i);
    } else if (text.substr(i).starts_with("->")) {
      push(FTok::Arrow, 2);
    } else {
      FTok k;
      switch (c) {
        case '!': k = FTok::Bang; break;
        case '&': k = FTok::And; break;
        case '|': k = FTok::Or; break;
        case '=': k = FTok::Eq; break;
        case '.': k = FTok::Dot; break;
        case ',': k = FTok::Comma; break;
        case '(': k = FTok::LParen; break;
        case ')': k = FTok::RParen; break;
        default: throw ParseError(line, col, {"a formula"}, "'" + std::string(1, c) + "'");
      }
      push(k, 1);
    }
  }
  out.push_back({FTok::End, "", line, col});
  return out;
}

class FormulaParser {
 public:
  explicit FormulaParser(std::vector<FToken> toks) : toks_(std::move(toks)) {}

  Formula parse_all() {
    Formula f = implication();
    if (peek().kind != FTok::End) fail({"'&'", "'|'", "'->'", "end of input"});
    return f;
  }

 private:
  const FToken& peek() const { return toks_[pos_]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const FToken& t = peek();
    throw ParseError(t.line, t.column, std::move(expected),
                     t.kind == FTok::End ? "end of input" : "'" + t.text + "'");
  }

  const FToken& expect(FTok kind, const char* what) {
    if (peek().kind != kind) fail({what});
    return toks_[pos_++];
  }

  Formula implication() {
    const FToken& start = peek();
    Formula f = disjunction();
    if (peek().kind == FTok::Arrow) {
      ++pos_;
      return Formula::implies(f, implication()).at(start.line, start.column);
    }
    return f;
  }

  Formula disjunction() {
    const FToken& start = peek();
    Formula f = conjunction();
    while (peek().kind == FTok::Or) {
      ++pos_;
      f = Formula::disj(f, conjunction()).at(start.line, start.column);
    }
    return f;
  }

  Formula conjunction() {
    const FToken& start = peek();
    Formula f = unary();
    while (peek().kind == FTok::And) {
      ++pos_;
      f = Formula::conj(f, unary()).at(start.line, start.column);
    }
    return f;
  }

  Formula unary() {
    const FToken start = peek();
    switch (start.kind) {
      case FTok::Bang:
        ++pos_;
        return Formula::negate(unary()).at(start.line, start.column);
      case FTok::Exists:
      case FTok::Forall: {
        ++pos_;
        const std::string v = expect(FTok::Ident, "a variable").text;
        expect(FTok::Dot, "'.'");
        Formula body = implication();
        Formula q = start.kind == FTok::Exists ? Formula::exists(v, body) : Formula::forall(v, body);
        return q.at(start.line, start.column);
      }
      default: return primary();
    }
  }

  Formula primary() {
    const FToken start = peek();
    switch (start.kind) {
      case FTok::True: ++pos_; return Formula::truth().at(start.line, start.column);
      case FTok::False: ++pos_; return Formula::falsity().at(start.line, start.column);
      case FTok::LParen: {
        ++pos_;
        Formula f = implication();
        expect(FTok::RParen, "')'");
        return f;
      }
      case FTok::Ident: {
        ++pos_;
        if (peek().kind == FTok::LParen) {
          ++pos_;
          const std::string v = expect(FTok::Ident, "a variable").text;
          expect(FTok::Comma, "','");
          const std::string w = expect(FTok::Ident, "a variable").text;
          expect(FTok::RParen, "')'");
          return Formula::atom(start.text, v, w).at(start.line, start.column);
        }
        if (peek().kind == FTok::Eq) {
          ++pos_;
          const std::string w = expect(FTok::Ident, "a variable").text;
          return Formula::eq(start.text, w).at(start.line, start.column);
        }
        fail({"'('", "'='"});
      }
      default:
        fail({"'true'", "'false'", "an atom", "'!'", "'exists'", "'forall'", "'('"});
    }
  }

  std::vector<FToken> toks_;
  std::size_t pos_ = 0;
};

int fprec(FKind k) {
  switch (k) {
    case FKind::Implies: return 1;
    case FKind::Or: return 2;
    case FKind::And: return 3;
    case FKind::Not: return 4;
    case FKind::Exists:
    case FKind::Forall: return 0;
    default: return 5;
  }
}

bool binary_kind(FKind k) { return k == FKind::And || k == FKind::Or || k == FKind::Implies; }
bool quantifier(FKind k) { return k == FKind::Exists || k == FKind::Forall; }

void fprint(const Formula& f, std::string& out) {
  auto wrapped = [&](const Formula& sub, bool paren) {
    if (paren) out += '(';
    fprint(sub, out);
    if (paren) out += ')';
  };
  switch (f.kind()) {
    case FKind::True: out += "true"; return;
    case FKind::False: out += "false"; return;
    case FKind::Atom: out += f.relation() + "(" + f.first() + "," + f.second() + ")"; return;
    case FKind::Eq: out += f.first() + "=" + f.second(); return;
    case FKind::Not:
      out += '!';
      wrapped(f.left(), binary_kind(f.left().kind()) || quantifier(f.left().kind()));
      return;
    case FKind::Exists:
    case FKind::Forall:
      out += f.kind() == FKind::Exists ? "exists " : "forall ";
      out += f.variable() + ". ";
      wrapped(f.body(), binary_kind(f.body().kind()));
      return;
    default: {
      const int p = fprec(f.kind());
      const bool right_assoc = f.kind() == FKind::Implies;
      const int lp = fprec(f.left().kind());
      const int rp = fprec(f.right().kind());
      wrapped(f.left(), quantifier(f.left().kind()) || (right_assoc ? lp <= p : lp < p));
      out += f.kind() == FKind::And ? " & " : f.kind() == FKind::Or ? " | " : " -> ";
      wrapped(f.right(), quantifier(f.right().kind()) || (right_assoc ? rp < p : rp <= p));
    }
  }
}

}  // namespace

Formula parse_formula(std::string_view text) { return FormulaParser(ftokenize(text)).parse_all(); }

std::string print_formula(const Formula& f) {
  std::string out;
  fprint(f, out);
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

FormulaEvaluator::FormulaEvaluator(const Formula& f, const std::string& x, const std::string& y,
                                   bool pad_missing) {
  if (x == y) throw Error("define_relation needs two distinct variables");
  const auto free = f.free_vars();
  std::string extra;
  for (const auto& v : free)
    if (v != x && v != y) extra += (extra.empty() ? "" : ", ") + v;
  if (!extra.empty()) throw Error("extra free variables: " + extra);
  if (!pad_missing && (!free.contains(x) || !free.contains(y)))
    throw Error("formula does not use both " + x + " and " + y +
                " freely; padding must be requested explicitly");
  std::map<std::string, int> slots{{x, 0}, {y, 1}};
  root_ = compile(f, slots);
  x_slot_ = 0;
  y_slot_ = 1;
  env_.assign(slots.size(), 0);
  bound_.assign(symbols_.size(), nullptr);
}

int FormulaEvaluator::compile(const Formula& f, std::map<std::string, int>& slots) {
  auto slot = [&](const std::string& v) {
    auto [it, _] = slots.emplace(v, static_cast<int>(slots.size()));
    return it->second;
  };
  Node n{f.kind()};
  switch (f.kind()) {
    case FKind::Atom: {
      auto it = std::find(symbols_.begin(), symbols_.end(), f.relation());
      n.symbol = static_cast<int>(it - symbols_.begin());
      if (it == symbols_.end()) symbols_.push_back(f.relation());
      n.v = slot(f.first());
      n.w = slot(f.second());
      break;
    }
    case FKind::Eq:
      n.v = slot(f.first());
      n.w = slot(f.second());
      break;
    case FKind::Not: n.a = compile(f.left(), slots); break;
    case FKind::Exists:
    case FKind::Forall:
      n.v = slot(f.variable());
      n.a = compile(f.body(), slots);
      break;
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
      n.a = compile(f.left(), slots);
      n.b = compile(f.right(), slots);
      break;
    default: break;
  }
  nodes_.push_back(n);
  return static_cast<int>(nodes_.size()) - 1;
}

bool FormulaEvaluator::holds(int idx) {
  const Node& n = nodes_[static_cast<std::size_t>(idx)];
  switch (n.kind) {
    case FKind::True: return true;
    case FKind::False: return false;
    case FKind::Atom: return bound_[static_cast<std::size_t>(n.symbol)]->contains(env_[n.v], env_[n.w]);
    case FKind::Eq: return env_[n.v] == env_[n.w];
    case FKind::Not: return !holds(n.a);
    case FKind::And: return holds(n.a) && holds(n.b);
    case FKind::Or: return holds(n.a) || holds(n.b);
    case FKind::Implies: return !holds(n.a) || holds(n.b);
    case FKind::Exists:
    case FKind::Forall: {
      const bool want = n.kind == FKind::Exists;
      const std::size_t saved = env_[n.v];
      bool result = !want;
      for (std::size_t e = 0; e < n_; ++e) {
        env_[n.v] = e;
        if (holds(n.a) == want) {
          result = want;
          break;
        }
      }
      env_[n.v] = saved;
      return result;
    }
  }
  return false;
}

Relation FormulaEvaluator::define(const Structure& s) {
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (!s.has_relation(symbols_[i])) throw Error("unknown relation symbol: " + symbols_[i]);
    bound_[i] = &s.relation(symbols_[i]);
  }
  n_ = s.size();
  Relation out(n_);
  for (std::size_t a = 0; a < n_; ++a) {
    for (std::size_t b = 0; b < n_; ++b) {
      env_[static_cast<std::size_t>(x_slot_)] = a;
      env_[static_cast<std::size_t>(y_slot_)] = b;
      if (holds(root_)) out.insert(a, b);
    }
  }
  return out;
}

Relation define_relation(const Formula& f, const std::string& x, const std::string& y,
                         const Structure& s, bool pad_missing) {
  return FormulaEvaluator(f, x, y, pad_missing).define(s);
}

bool eval_formula(const Formula& f, const Structure& s, const Assignment& assignment) {
  for (const auto& v : f.free_vars())
    if (!assignment.contains(v)) throw Error("unbound free variable: " + v);
  for (const auto& r : f.symbols())
    if (!s.has_relation(r)) throw Error("unknown relation symbol: " + r);
  std::map<std::string, std::size_t, std::less<>> env;
  for (const auto& [v, e] : assignment) env[v] = s.index_of(e);
  std::function<bool(const Formula&)> rec = [&](const Formula& g) -> bool {
    switch (g.kind()) {
      case FKind::True: return true;
      case FKind::False: return false;
      case FKind::Atom: return s.relation(g.relation()).contains(env.at(g.first()), env.at(g.second()));
      case FKind::Eq: return env.at(g.first()) == env.at(g.second());
      case FKind::Not: return !rec(g.left());
      case FKind::And: return rec(g.left()) && rec(g.right());
      case FKind::Or: return rec(g.left()) || rec(g.right());
      case FKind::Implies: return !rec(g.left()) || rec(g.right());
      case FKind::Exists:
      case FKind::Forall: {
        const bool want = g.kind() == FKind::Exists;
        auto it = env.find(g.variable());
        std::optional<std::size_t> saved;
        if (it != env.end()) saved = it->second;
        bool result = !want;
        for (std::size_t e = 0; e < s.size(); ++e) {
          env[g.variable()] = e;
          if (rec(g.body()) == want) {
            result = want;
            break;
          }
        }
        if (saved) env[g.variable()] = *saved;
        else env.erase(g.variable());
        return result;
      }
    }
    return false;
  };
  return rec(f);
}

Classification classify(const Formula& f) {
  Classification c;
  c.variable_count = f.variables().size();
  c.free_vars = f.free_vars();
  std::function<bool(const Formula&)> posex = [&](const Formula& g) -> bool {
    switch (g.kind()) {
      case FKind::Not:
      case FKind::Implies:
      case FKind::Forall: return false;
      case FKind::And:
      case FKind::Or: return posex(g.left()) && posex(g.right());
      case FKind::Exists: return posex(g.body());
      default: return true;
    }
  };
  c.is_posex = posex(f);
  return c;
}

// ---------------------------------------------------------------------------
// Term to FO3

namespace {

std::string third(const std::string& s, const std::string& d) {
  for (const char* v : {"x", "y", "z"})
    if (s != v && d != v) return v;
  return "z";
}

Formula tr(const Term& t, const std::string& s, const std::string& d) {
  using F = Formula;
  const std::string o = third(s, d);
  switch (t.op()) {
    case Op::Symbol: return F::atom(t.name(), s, d);
    case Op::Id: return F::eq(s, d);
    // Constants mention both variables so that x and y stay free.
    case Op::Empty: return F::conj(F::eq(s, d), F::negate(F::eq(s, d)));
    case Op::Top: return F::disj(F::eq(s, d), F::negate(F::eq(s, d)));
    case Op::Complement: return F::negate(tr(t.operand(), s, d));
    case Op::Converse: return tr(t.operand(), d, s);
    case Op::Domain: return F::conj(F::eq(s, d), F::exists(o, tr(t.operand(), s, o)));
    case Op::Range: return F::conj(F::eq(s, d), F::exists(o, tr(t.operand(), o, d)));
    case Op::Antidomain:
      return F::conj(F::eq(s, d), F::negate(F::exists(o, tr(t.operand(), s, o))));
    case Op::Union: return F::disj(tr(t.left(), s, d), tr(t.right(), s, d));
    case Op::Intersection: return F::conj(tr(t.left(), s, d), tr(t.right(), s, d));
    case Op::Difference: return F::conj(tr(t.left(), s, d), F::negate(tr(t.right(), s, d)));
    case Op::Composition:
      return F::exists(o, F::conj(tr(t.left(), s, o), tr(t.right(), o, d)));
    case Op::Semijoin:
      return F::conj(tr(t.left(), s, d), F::exists(o, tr(t.right(), d, o)));
    case Op::PrefUnion:
      return F::disj(tr(t.left(), s, d),
                     F::conj(tr(t.right(), s, d), F::negate(F::exists(o, tr(t.left(), s, o)))));
    case Op::InjUnion: {
      const Term& l = t.left();
      const Term& r = t.right();
      return tr(intersect(pref_union(l, r), converse(pref_union(converse(l), converse(r)))), s, d);
    }
  }
  return F::falsity();
}

}  // namespace

Formula term_to_fo3(const Term& t) { return tr(t, "x", "y"); }

Formula random_posex_formula(Rng& rng, const std::vector<std::string>& symbols,
                             std::size_t max_depth) {
  static const std::vector<std::string> vars{"x", "y", "z"};
  std::function<Formula(std::size_t)> rec = [&](std::size_t depth) -> Formula {
    const bool leaf = depth <= 1 || rng.chance(1, 4);
    if (leaf) {
      const std::uint64_t pick = rng.below(20);
      const std::string& v = vars[rng.below(3)];
      const std::string& w = vars[rng.below(3)];
      if (pick == 0) return Formula::truth();
      if (pick == 1) return Formula::falsity();
      if (pick < 5) return Formula::eq(v, w);
      return Formula::atom(symbols[rng.below(symbols.size())], v, w);
    }
    switch (rng.below(3)) {
      case 0: return Formula::conj(rec(depth - 1), rec(depth - 1));
      case 1: return Formula::disj(rec(depth - 1), rec(depth - 1));
      default: return Formula::exists(vars[rng.below(3)], rec(depth - 1));
    }
  };
  while (true) {
    Formula f = rec(max_depth);
    if (!f.free_vars().contains("z")) return f;
    if (f.depth() < max_depth) return Formula::exists("z", f);
  }
}

}  // namespace relalg
