#include "relalg/term.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <sstream>

namespace relalg {

namespace {

struct OpInfo {
  Op op;
  int arity;
  std::string_view name;
};

constexpr std::array<OpInfo, kOpCount> kOps{{
    {Op::Symbol, 0, "symbol"},
    {Op::Id, 0, "id"},
    {Op::Empty, 0, "empty"},
    {Op::Top, 0, "top"},
    {Op::Complement, 1, "complement"},
    {Op::Converse, 1, "converse"},
    {Op::Domain, 1, "domain"},
    {Op::Range, 1, "range"},
    {Op::Antidomain, 1, "antidomain"},
    {Op::Union, 2, "union"},
    {Op::Intersection, 2, "intersection"},
    {Op::Difference, 2, "difference"},
    {Op::Composition, 2, "composition"},
    {Op::Semijoin, 2, "semijoin"},
    {Op::PrefUnion, 2, "pref-union"},
    {Op::InjUnion, 2, "inj-union"},
}};

std::size_t mix(std::size_t h, std::size_t v) {
  return h ^ (v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2));
}

}  // namespace

int arity(Op op) { return kOps[static_cast<std::size_t>(op)].arity; }
std::string_view op_name(Op op) { return kOps[static_cast<std::size_t>(op)].name; }

std::optional<Op> op_from_name(std::string_view name) {
  for (const auto& info : kOps)
    if (info.name == name) return info.op;
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Term

Term Term::make(Op op, std::string name, std::vector<Term> kids) {
  std::size_t size = 1;
  std::size_t h = std::hash<std::string>{}(name) ^ (static_cast<std::size_t>(op) * 0x100000001b3ULL);
  for (const auto& k : kids) {
    if (!k.valid()) throw Error("term constructor applied to an empty term");
    size += k.size();
    h = mix(h, k.hash());
  }
  return Term(std::make_shared<const Node>(Node{op, std::move(name), std::move(kids), size, h}));
}

Term Term::symbol(std::string name) { return make(Op::Symbol, std::move(name), {}); }

Term Term::constant(Op op) {
  if (arity(op) != 0 || op == Op::Symbol) throw Error("not a constant: " + std::string(op_name(op)));
  return make(op, {}, {});
}

Term Term::unary(Op op, Term operand) {
  if (arity(op) != 1) throw Error("not a unary operation: " + std::string(op_name(op)));
  return make(op, {}, {std::move(operand)});
}

Term Term::binary(Op op, Term left, Term right) {
  if (arity(op) != 2) throw Error("not a binary operation: " + std::string(op_name(op)));
  return make(op, {}, {std::move(left), std::move(right)});
}

std::set<std::string> Term::signature() const {
  std::set<std::string> out;
  std::vector<const Term*> stack{this};
  while (!stack.empty()) {
    const Term* t = stack.back();
    stack.pop_back();
    if (t->op() == Op::Symbol) out.insert(t->name());
    for (const auto& k : t->node_->kids) stack.push_back(&k);
  }
  return out;
}

bool Term::operator==(const Term& other) const {
  if (node_ == other.node_) return true;
  if (!node_ || !other.node_) return false;
  if (node_->hash != other.node_->hash || node_->size != other.node_->size ||
      node_->op != other.node_->op || node_->name != other.node_->name)
    return false;
  for (std::size_t i = 0; i < node_->kids.size(); ++i)
    if (node_->kids[i] != other.node_->kids[i]) return false;
  return true;
}

Term sym(std::string name) { return Term::symbol(std::move(name)); }
Term id_term() { return Term::constant(Op::Id); }
Term empty_term() { return Term::constant(Op::Empty); }
Term top_term() { return Term::constant(Op::Top); }
Term complement(Term t) { return Term::unary(Op::Complement, std::move(t)); }
Term converse(Term t) { return Term::unary(Op::Converse, std::move(t)); }
Term domain_of(Term t) { return Term::unary(Op::Domain, std::move(t)); }
Term range_of(Term t) { return Term::unary(Op::Range, std::move(t)); }
Term antidomain(Term t) { return Term::unary(Op::Antidomain, std::move(t)); }
Term unite(Term a, Term b) { return Term::binary(Op::Union, std::move(a), std::move(b)); }
Term intersect(Term a, Term b) { return Term::binary(Op::Intersection, std::move(a), std::move(b)); }
Term minus(Term a, Term b) { return Term::binary(Op::Difference, std::move(a), std::move(b)); }
Term compose(Term a, Term b) { return Term::binary(Op::Composition, std::move(a), std::move(b)); }
Term semijoin(Term a, Term b) { return Term::binary(Op::Semijoin, std::move(a), std::move(b)); }
Term pref_union(Term a, Term b) { return Term::binary(Op::PrefUnion, std::move(a), std::move(b)); }
Term inj_union(Term a, Term b) { return Term::binary(Op::InjUnion, std::move(a), std::move(b)); }

// ---------------------------------------------------------------------------
// Basis

Basis::Basis(std::initializer_list<Op> ops) {
  for (auto op : ops) insert(op);
}

Basis& Basis::insert(Op op) {
  mask_ |= 1U << static_cast<unsigned>(op);
  return *this;
}

std::vector<Op> Basis::ops() const {
  std::vector<Op> out;
  for (const auto& info : kOps)
    if (info.op != Op::Symbol && contains(info.op)) out.push_back(info.op);
  return out;
}

Basis Basis::tra() {
  return {Op::Id, Op::Empty, Op::Complement, Op::Intersection, Op::Composition, Op::Converse};
}
Basis Basis::fa() {
  return {Op::Id,           Op::Empty,      Op::Domain,      Op::Range,    Op::Antidomain,
          Op::Intersection, Op::Difference, Op::Composition, Op::Semijoin, Op::PrefUnion};
}
Basis Basis::homsafe() {
  return {Op::Id, Op::Empty, Op::Top, Op::Composition, Op::Union, Op::Intersection, Op::Converse};
}
Basis Basis::fwd() { return {Op::Composition, Op::Antidomain, Op::Intersection, Op::PrefUnion}; }
Basis Basis::inj() {
  return {Op::Composition, Op::Antidomain, Op::Intersection, Op::Converse, Op::InjUnion};
}

Basis parse_basis(std::string_view text) {
  Basis out{};
  std::size_t start = 0;
  bool any = false;
  while (start <= text.size()) {
    std::size_t end = text.find('+', start);
    if (end == std::string_view::npos) end = text.size();
    const std::string_view part = text.substr(start, end - start);
    start = end + 1;
    if (part.empty()) throw Error("empty component in basis \"" + std::string(text) + "\"");
    any = true;
    Basis preset;
    if (part == "tra") preset = Basis::tra();
    else if (part == "fa") preset = Basis::fa();
    else if (part == "homsafe") preset = Basis::homsafe();
    else if (part == "fwd") preset = Basis::fwd();
    else if (part == "inj") preset = Basis::inj();
    else if (auto op = op_from_name(part); op && *op != Op::Symbol) {
      out.insert(*op);
      continue;
    } else {
      throw Error("unknown basis component: " + std::string(part));
    }
    for (auto op : preset.ops()) out.insert(op);
  }
  if (!any) throw Error("empty basis");
  return out;
}

std::string to_string(const Basis& b) {
  std::string out = "{";
  bool first = true;
  for (auto op : b.ops()) {
    if (!first) out += ", ";
    out += op_name(op);
    first = false;
  }
  return out + "}";
}

bool uses_only(const Term& t, const Basis& b) {
  if (t.op() != Op::Symbol && !b.contains(t.op())) return false;
  const int n = arity(t.op());
  if (n >= 1 && !uses_only(t.left(), b)) return false;
  if (n == 2 && !uses_only(t.right(), b)) return false;
  return true;
}

// ---------------------------------------------------------------------------
// Parser

ParseError::ParseError(std::size_t line, std::size_t column, std::vector<std::string> expected,
                       std::string found)
    : Error([&] {
        std::ostringstream msg;
        msg << "line " << line << ", column " << column << ": expected ";
        for (std::size_t i = 0; i < expected.size(); ++i) {
          if (i > 0) msg << (i + 1 == expected.size() ? " or " : ", ");
          msg << expected[i];
        }
        msg << ", found " << found;
        return msg.str();
      }()),
      line_(line), column_(column), expected_(std::move(expected)) {}

namespace {

enum class Tok {
  Ident, Id, Zero, Top, Dom, Ran, LParen, RParen,
  PrefUnion, InjUnion, Union, Semijoin, Diff, Inter, Comp, Tilde, Minus, Caret, End
};

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

std::string describe(const Token& t) {
  if (t.kind == Tok::End) return "end of input";
  return "'" + t.text + "'";
}

std::vector<Token> tokenize(std::string_view text, std::size_t line) {
  std::vector<Token> out;
  std::size_t i = 0;
  std::size_t col = 1;
  auto push = [&](Tok k, std::size_t len) {
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
      continue;
    }
    if (std::isspace(static_cast<unsigned char>(c))) {
      ++i;
      ++col;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t j = i;
      while (j < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[j])) || text[j] == '_'))
        ++j;
      const std::string_view word = text.substr(i, j - i);
      Tok k = Tok::Ident;
      if (word == "id") k = Tok::Id;
      else if (word == "T") k = Tok::Top;
      else if (word == "dom") k = Tok::Dom;
      else if (word == "ran") k = Tok::Ran;
      push(k, j - i);
      continue;
    }
    const std::string_view rest = text.substr(i);
    if (rest.starts_with("<+")) push(Tok::PrefUnion, 2);
    else if (rest.starts_with("<#")) push(Tok::InjUnion, 2);
    else if (rest.starts_with("|>")) push(Tok::Semijoin, 2);
    else if (c == '|') push(Tok::Union, 1);
    else if (c == '\\') push(Tok::Diff, 1);
    else if (c == '&') push(Tok::Inter, 1);
    else if (c == ';') push(Tok::Comp, 1);
    else if (c == '~') push(Tok::Tilde, 1);
    else if (c == '-') push(Tok::Minus, 1);
    else if (c == '^') push(Tok::Caret, 1);
    else if (c == '(') push(Tok::LParen, 1);
    else if (c == ')') push(Tok::RParen, 1);
    else if (c == '0') push(Tok::Zero, 1);
    else
      throw ParseError(line, col, {"a term"}, "'" + std::string(1, c) + "'");
  }
  out.push_back({Tok::End, "", line, col});
  return out;
}

class TermParser {
 public:
  explicit TermParser(std::vector<Token> tokens) : toks_(std::move(tokens)) {}

  Term parse_all() {
    Term t = level0();
    if (peek().kind != Tok::End) fail({"an operator", "end of input"});
    return t;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  Token take() { return toks_[pos_++]; }

  [[noreturn]] void fail(std::vector<std::string> expected) const {
    const Token& t = peek();
    throw ParseError(t.line, t.column, std::move(expected), describe(t));
  }

  void expect(Tok kind, const char* what) {
    if (peek().kind != kind) fail({what});
    ++pos_;
  }

  Term level0() {
    Term t = level1();
    while (true) {
      if (peek().kind == Tok::PrefUnion) {
        ++pos_;
        t = pref_union(t, level1());
      } else if (peek().kind == Tok::InjUnion) {
        ++pos_;
        t = inj_union(t, level1());
      } else {
        return t;
      }
    }
  }

  Term level1() {
    Term t = level2();
    while (peek().kind == Tok::Union) {
      ++pos_;
      t = unite(t, level2());
    }
    return t;
  }

  Term level2() {
    Term t = level3();
    while (true) {
      if (peek().kind == Tok::Diff) {
        ++pos_;
        t = minus(t, level3());
      } else if (peek().kind == Tok::Inter) {
        ++pos_;
        t = intersect(t, level3());
      } else {
        return t;
      }
    }
  }

  Term level3() {
    Term t = prefix();
    while (true) {
      if (peek().kind == Tok::Comp) {
        ++pos_;
        t = compose(t, prefix());
      } else if (peek().kind == Tok::Semijoin) {
        ++pos_;
        t = semijoin(t, prefix());
      } else {
        return t;
      }
    }
  }

  Term prefix() {
    if (peek().kind == Tok::Tilde) {
      ++pos_;
      return antidomain(prefix());
    }
    if (peek().kind == Tok::Minus) {
      ++pos_;
      return complement(prefix());
    }
    return postfix();
  }

  Term postfix() {
    Term t = atom();
    while (peek().kind == Tok::Caret) {
      ++pos_;
      t = converse(t);
    }
    return t;
  }

  Term atom() {
    switch (peek().kind) {
      case Tok::Ident: return sym(take().text);
      case Tok::Id: ++pos_; return id_term();
      case Tok::Zero: ++pos_; return empty_term();
      case Tok::Top: ++pos_; return top_term();
      case Tok::Dom:
      case Tok::Ran: {
        const bool is_dom = take().kind == Tok::Dom;
        expect(Tok::LParen, "'('");
        Term inner = level0();
        expect(Tok::RParen, "')'");
        return is_dom ? domain_of(inner) : range_of(inner);
      }
      case Tok::LParen: {
        ++pos_;
        Term inner = level0();
        expect(Tok::RParen, "')'");
        return inner;
      }
      default:
        fail({"identifier", "'id'", "'0'", "'T'", "'dom'", "'ran'", "'('", "'~'", "'-'"});
    }
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
};

int precedence(Op op) {
  switch (op) {
    case Op::PrefUnion:
    case Op::InjUnion: return 1;
    case Op::Union: return 2;
    case Op::Difference:
    case Op::Intersection: return 3;
    case Op::Composition:
    case Op::Semijoin: return 4;
    case Op::Complement:
    case Op::Antidomain: return 5;
    case Op::Converse: return 6;
    default: return 7;
  }
}

std::string_view infix(Op op) {
  switch (op) {
    case Op::PrefUnion: return "<+";
    case Op::InjUnion: return "<#";
    case Op::Union: return "|";
    case Op::Difference: return "\\";
    case Op::Intersection: return "&";
    case Op::Composition: return ";";
    case Op::Semijoin: return "|>";
    default: return "?";
  }
}

void print(const Term& t, std::string& out) {
  auto wrapped = [&](const Term& sub, bool paren) {
    if (paren) out += '(';
    print(sub, out);
    if (paren) out += ')';
  };
  const Op op = t.op();
  switch (op) {
    case Op::Symbol: out += t.name(); return;
    case Op::Id: out += "id"; return;
    case Op::Empty: out += "0"; return;
    case Op::Top: out += "T"; return;
    case Op::Domain:
    case Op::Range:
      out += op == Op::Domain ? "dom(" : "ran(";
      print(t.operand(), out);
      out += ')';
      return;
    case Op::Complement:
    case Op::Antidomain:
      out += op == Op::Complement ? '-' : '~';
      wrapped(t.operand(), precedence(t.operand().op()) < 5);
      return;
    case Op::Converse:
      wrapped(t.operand(), precedence(t.operand().op()) < 6);
      out += '^';
      return;
    default: {
      const int p = precedence(op);
      wrapped(t.left(), precedence(t.left().op()) < p);
      out += ' ';
      out += infix(op);
      out += ' ';
      wrapped(t.right(), precedence(t.right().op()) <= p);
    }
  }
}

}  // namespace

Term parse_term(std::string_view text) { return TermParser(tokenize(text, 1)).parse_all(); }

std::string print_term(const Term& t) {
  std::string out;
  print(t, out);
  return out;
}

std::vector<Term> parse_term_file(std::string_view text) {
  std::vector<Term> out;
  std::size_t line = 1;
  std::size_t start = 0;
  while (start <= text.size()) {
    std::size_t end = text.find('\n', start);
    if (end == std::string_view::npos) end = text.size();
    std::string_view content = text.substr(start, end - start);
    if (auto hash = content.find('#'); hash != std::string_view::npos)
      content = content.substr(0, hash);
    if (content.find_first_not_of(" \t\r") != std::string_view::npos)
      out.push_back(TermParser(tokenize(content, line)).parse_all());
    ++line;
    start = end + 1;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Rewriting

Term simplify(const Term& t) {
  const int n = arity(t.op());
  if (n == 0) return t;
  if (n == 1) {
    Term inner = simplify(t.operand());
    return inner == t.operand() ? t : Term::unary(t.op(), inner);
  }
  Term l = simplify(t.left());
  Term r = simplify(t.right());
  switch (t.op()) {
    case Op::Intersection:
      if (l == r) return l;
      if (l.op() == Op::Top) return r;
      if (r.op() == Op::Top) return l;
      break;
    case Op::Composition:
      if (r.op() == Op::Id) return l;
      if (l.op() == Op::Id) return r;
      if (l.op() == Op::Empty || r.op() == Op::Empty) return empty_term();
      break;
    case Op::Union:
      if (r.op() == Op::Empty) return l;
      if (l.op() == Op::Empty) return r;
      break;
    default: break;
  }
  if (l == t.left() && r == t.right()) return t;
  return Term::binary(t.op(), l, r);
}

Term normalize_fp(const Term& t) { return minus(t, compose(t, minus(top_term(), id_term()))); }

// ---------------------------------------------------------------------------
// Enumeration

std::vector<Term> enumerate_terms(const Basis& basis, const std::vector<std::string>& symbols,
                                  std::size_t max_size) {
  std::vector<std::vector<Term>> by_size(max_size + 1);
  if (max_size >= 1) {
    for (const auto& s : symbols) by_size[1].push_back(sym(s));
    for (Op c : {Op::Id, Op::Empty, Op::Top})
      if (basis.contains(c)) by_size[1].push_back(Term::constant(c));
  }
  const auto ops = basis.ops();
  for (std::size_t size = 2; size <= max_size; ++size) {
    auto& layer = by_size[size];
    for (Op op : ops) {
      if (arity(op) == 1) {
        for (const auto& t : by_size[size - 1]) layer.push_back(Term::unary(op, t));
      } else if (arity(op) == 2) {
        for (std::size_t ls = 1; ls + 1 < size; ++ls)
          for (const auto& l : by_size[ls])
            for (const auto& r : by_size[size - 1 - ls]) layer.push_back(Term::binary(op, l, r));
      }
    }
  }
  std::vector<Term> out;
  for (auto& layer : by_size)
    for (auto& t : layer) out.push_back(std::move(t));
  return out;
}

Term random_term(Rng& rng, const Basis& basis, const std::vector<std::string>& symbols,
                 std::size_t max_depth) {
  std::vector<Op> leaves, inner;
  for (auto op : basis.ops()) (arity(op) == 0 ? leaves : inner).push_back(op);
  const bool leaf = max_depth == 0 || inner.empty() || rng.chance(1, 4);
  if (leaf) {
    const std::size_t choice = rng.below(symbols.size() + leaves.size());
    if (choice < symbols.size()) return sym(symbols[choice]);
    return Term::constant(leaves[choice - symbols.size()]);
  }
  const Op op = inner[rng.below(inner.size())];
  Term l = random_term(rng, basis, symbols, max_depth - 1);
  if (arity(op) == 1) return Term::unary(op, l);
  return Term::binary(op, l, random_term(rng, basis, symbols, max_depth - 1));
}

}  // namespace relalg
