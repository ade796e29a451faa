#include "relalg/translate.hpp"

#include <algorithm>

namespace relalg {

namespace {

std::string located(const Formula& f, const std::string& message) {
  if (f.line() == 0) return message;
  return "line " + std::to_string(f.line()) + ", column " + std::to_string(f.column()) + ": " +
         message;
}

void require_posex(const Formula& f) {
  switch (f.kind()) {
    case FKind::Not:
    case FKind::Implies:
    case FKind::Forall:
      throw Error(located(f, "only positive-existential FO³ is compilable"));
    case FKind::And:
    case FKind::Or:
      require_posex(f.left());
      require_posex(f.right());
      break;
    case FKind::Exists: require_posex(f.body()); break;
    default: break;
  }
}

Formula conj_all(const std::vector<Formula>& parts) {
  Formula out = parts.front();
  for (std::size_t i = 1; i < parts.size(); ++i) out = Formula::conj(out, parts[i]);
  return out;
}

class Compiler {
 public:
  explicit Compiler(std::vector<std::string> names) : names_(std::move(names)) {}

  Term compile(const Formula& f, const std::string& a, const std::string& b) {
    switch (f.kind()) {
      case FKind::True: return top_term();
      case FKind::False: return empty_term();
      case FKind::Atom: {
        const Term r = sym(f.relation());
        const std::string& v = f.first();
        const std::string& w = f.second();
        if (v == a && w == b) return r;
        if (v == b && w == a) return converse(r);
        if (v == a && w == a) return compose(intersect(r, id_term()), top_term());
        if (v == b && w == b) return compose(top_term(), intersect(r, id_term()));
        throw Error(located(f, "free variable outside " + a + ", " + b));
      }
      case FKind::Eq: return f.first() == f.second() ? top_term() : id_term();
      case FKind::And: return intersect(compile(f.left(), a, b), compile(f.right(), a, b));
      case FKind::Or: return unite(compile(f.left(), a, b), compile(f.right(), a, b));
      case FKind::Exists: return compile_exists(f, a, b);
      default: throw Error(located(f, "only positive-existential FO³ is compilable"));
    }
  }

 private:
  std::string third(const std::string& a, const std::string& b) const {
    for (const auto& n : names_)
      if (n != a && n != b) return n;
    throw Error("no third variable available");
  }

  Term compile_exists(const Formula& f, const std::string& a, const std::string& b) {
    const std::string& v = f.variable();
    const Formula& body = f.body();
    if (!body.free_vars().contains(v)) return compile(body, a, b);
    if (v == a) return compose(top_term(), compile(body, a, b));
    if (v == b) return compose(compile(body, a, b), top_term());
    const std::string c = third(a, b);
    if (v != c) throw Error(located(f, "more than three variables"));
    std::optional<Term> out;
    for (const auto& conjunction : component_dnf(body)) {
      const GroupedConjunction g = group_conjunction(conjunction, a, b, c);
      const Term t1 = g.psi1 ? compile(*g.psi1, a, b) : top_term();
      const Term t2 = g.psi2 ? compile(*g.psi2, a, c) : top_term();
      const Term t3 = g.psi3 ? compile(*g.psi3, c, b) : top_term();
      const Term part = intersect(t1, compose(t2, t3));
      out = out ? unite(*out, part) : part;
    }
    return *out;
  }

  std::vector<std::string> names_;
};

}  // namespace

std::vector<std::vector<Formula>> component_dnf(const Formula& f) {
  const bool split = (f.kind() == FKind::And || f.kind() == FKind::Or) && f.free_vars().size() > 2;
  if (!split) return {{f}};
  auto l = component_dnf(f.left());
  auto r = component_dnf(f.right());
  if (f.kind() == FKind::Or) {
    l.insert(l.end(), r.begin(), r.end());
    return l;
  }
  std::vector<std::vector<Formula>> out;
  for (const auto& x : l) {
    for (const auto& y : r) {
      auto merged = x;
      merged.insert(merged.end(), y.begin(), y.end());
      out.push_back(std::move(merged));
    }
  }
  return out;
}

GroupedConjunction group_conjunction(const std::vector<Formula>& conjuncts, const std::string& a,
                                     const std::string& b, const std::string& c) {
  std::vector<Formula> p1, p2, p3;
  for (const auto& f : conjuncts) {
    const auto fv = f.free_vars();
    const bool has_a = fv.contains(a), has_b = fv.contains(b), has_c = fv.contains(c);
    if (fv.size() > static_cast<std::size_t>(has_a + has_b + has_c) ||
        (has_a && has_b && has_c))
      throw Error(located(f, "conjunct has more than two free variables among " + a + ", " + b +
                                 ", " + c));
    if (has_c) {
      (has_b ? p3 : p2).push_back(f);
    } else if (has_a && has_b) {
      p1.push_back(f);
    } else if (has_a) {
      p2.push_back(f);
    } else if (has_b) {
      p3.push_back(f);
    } else {
      p1.push_back(f);
    }
  }
  GroupedConjunction g;
  if (!p1.empty()) g.psi1 = conj_all(p1);
  if (!p2.empty()) g.psi2 = conj_all(p2);
  if (!p3.empty()) g.psi3 = conj_all(p3);
  return g;
}

Term compile_posex(const Formula& f, const std::string& x, const std::string& y) {
  require_posex(f);
  std::set<std::string> names = f.variables();
  names.insert(x);
  names.insert(y);
  if (names.size() > 3)
    throw Error(located(f, "formula uses " + std::to_string(names.size()) +
                               " variables; at most three are compilable"));
  std::string extra;
  for (const auto& v : f.free_vars())
    if (v != x && v != y) extra += (extra.empty() ? "" : ", ") + v;
  if (!extra.empty()) throw Error(located(f, "free variables outside " + x + ", " + y + ": " + extra));
  std::vector<std::string> ordered{x, y};
  for (const auto& n : names)
    if (n != x && n != y) ordered.push_back(n);
  if (ordered.size() < 3) ordered.push_back(x == "z" || y == "z" ? "w" : "z");
  return simplify(Compiler(ordered).compile(f, x, y));
}

// ---------------------------------------------------------------------------
// Verification

namespace {

std::optional<Counterexample> difference(const Definition& left, const Definition& right,
                                         const Structure& s) {
  const Relation l = left.evaluate(s);
  const Relation r = right.evaluate(s);
  if (l == r) return std::nullopt;
  for (std::size_t a = 0; a < s.size(); ++a) {
    for (std::size_t b = 0; b < s.size(); ++b) {
      if (l.contains(a, b) != r.contains(a, b)) {
        return Counterexample{s, {s.element(a), s.element(b)},
                              l.contains(a, b) ? "pair in left side only" : "pair in right side only"};
      }
    }
  }
  return std::nullopt;
}

constexpr std::size_t kMaxExhaustiveBits = 28;

}  // namespace

EquivalenceReport check_equivalence(const Definition& left, const Definition& right,
                                    const EquivalenceBounds& bounds, std::uint64_t seed) {
  std::set<std::string> symbols = left.symbols();
  for (const auto& s : right.symbols()) symbols.insert(s);
  const std::vector<std::string> signature(symbols.begin(), symbols.end());

  EquivalenceReport report;
  report.seed = seed;
  report.sample_max_size = bounds.sample_max_size;
  SlicedComparison cmp(left, right, signature);
  for (std::size_t k = 1; k <= bounds.max_size; ++k) {
    const std::size_t bits = signature.size() * k * k;
    if (bits > kMaxExhaustiveBits) break;
    report.max_size = k;
    if (auto idx = cmp.first_difference(k)) {
      report.exhaustive_structures += *idx + 1;
      report.pass = false;
      report.counterexample = difference(left, right, structure_at(signature, k, StructureClass::All, *idx));
      if (!report.counterexample) throw Error("sliced and direct evaluation disagree");
      return report;
    }
    report.exhaustive_structures += std::uint64_t{1} << bits;
  }
  for (std::size_t i = 0; i < bounds.samples; ++i) {
    Rng rng(mix_seed(seed, i));
    const std::size_t size = 1 + rng.below(bounds.sample_max_size);
    const Structure s = random_structure(rng.next(), size, signature, StructureClass::All);
    report.samples = i + 1;
    if (auto cex = difference(left, right, s)) {
      report.pass = false;
      report.counterexample = std::move(cex);
      return report;
    }
  }
  return report;
}

EquivalenceReport verify_compilation(const Formula& f, const Term& t,
                                     const EquivalenceBounds& bounds, std::uint64_t seed) {
  return check_equivalence(Definition::of(f), Definition::of(t), bounds, seed);
}

}  // namespace relalg
