#include "relalg/constructions.hpp"

namespace relalg {

namespace {

void require_cycle(std::size_t m) {
  if (m < 2) throw Error("cycle length must be at least 2, got " + std::to_string(m));
}

std::string cm_name(std::size_t i, std::size_t j) {
  return "a" + std::to_string(i) + "_" + std::to_string(j);
}

std::size_t next_group(std::size_t i, std::size_t m) { return i % m + 1; }

Term substitute(const Term& t, const std::map<std::string, Term>& by) {
  switch (arity(t.op())) {
    case 0:
      if (t.op() == Op::Symbol) {
        const auto it = by.find(t.name());
        return it == by.end() ? t : it->second;
      }
      return t;
    case 1: return Term::unary(t.op(), substitute(t.operand(), by));
    default: return Term::binary(t.op(), substitute(t.left(), by), substitute(t.right(), by));
  }
}

}  // namespace

Structure build_cm(std::size_t m) {
  require_cycle(m);
  std::vector<std::string> domain;
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = 1; j <= 3; ++j) domain.push_back(cm_name(i, j));
  Structure s(domain, {"E"});
  for (std::size_t i = 1; i <= m; ++i)
    for (std::size_t j = 1; j <= 3; ++j)
      for (std::size_t j2 = 1; j2 <= 3; ++j2)
        s.add_pair("E", cm_name(i, j), cm_name(next_group(i, m), j2));
  return s;
}

Structure build_cm_vee(std::size_t m) {
  const Structure cm = build_cm(m);
  std::vector<std::string> domain = cm.domain();
  std::vector<std::pair<std::size_t, std::size_t>> edges = cm.relation("E").pairs();
  std::vector<std::string> aux;
  for (const auto& [u, v] : edges) aux.push_back("w_" + cm.element(u) + "_" + cm.element(v));
  domain.insert(domain.end(), aux.begin(), aux.end());
  Structure s(domain, {"f", "g"});
  for (std::size_t e = 0; e < edges.size(); ++e) {
    s.add_pair("f", aux[e], cm.element(edges[e].first));
    s.add_pair("g", aux[e], cm.element(edges[e].second));
  }
  return s;
}

Term separating_term(std::size_t m) {
  const Term step = compose(converse(sym("f")), sym("g"));
  Term path = step;
  for (std::size_t i = 1; i < m; ++i) path = compose(path, step);
  return intersect(path, id_term());
}

const XMember* CounterexampleBundle::find(const Relation& r) const {
  for (const auto& member : x)
    if (member.relation == r) return &member;
  return nullptr;
}

CounterexampleBundle build_counterexample(std::size_t m, std::size_t m_prime) {
  require_cycle(m);
  require_cycle(m_prime);
  if (m == m_prime) throw Error("cycle lengths must differ, got m = m' = " + std::to_string(m));
  if (m > m_prime) throw Error("expected m < m'");
  CounterexampleBundle b;
  b.m = m;
  b.m_prime = m_prime;
  b.c = disjoint_union(build_cm_vee(m), build_cm_vee(m_prime));
  const Term id1 = domain_of(sym("f"));
  const Term id2 = unite(range_of(sym("f")), range_of(sym("g")));
  const std::pair<const char*, Term> defs[] = {
      {"f", sym("f")},
      {"g", sym("g")},
      {"id", id_term()},
      {"id1", id1},
      {"id2", id2},
      {"f | id2", unite(sym("f"), id2)},
      {"g | id2", unite(sym("g"), id2)},
      {"0", empty_term()},
  };
  for (const auto& [name, def] : defs) b.x.push_back({name, def, eval(def, b.c)});
  b.separating = separating_term(m);
  return b;
}

bool basis_function_preserving(const Basis& basis) {
  for (Op op : basis.ops()) {
    switch (op) {
      case Op::Top:
      case Op::Complement:
      case Op::Converse:
      case Op::Union: return false;
      default: break;
    }
  }
  return true;
}

Claim2Report verify_claim2_desk(const CounterexampleBundle& bundle, const Basis& basis,
                                std::size_t budget) {
  Claim2Report report;
  report.basis_function_preserving = basis_function_preserving(basis);
  const Relation target = eval(bundle.separating, bundle.c);
  ClosureOptions options;
  options.max_relations = budget;
  options.stop = [&](const Relation& r) { return r == target; };
  const ClosureResult closure = semantic_closure(bundle.c, {"f", "g"}, basis, options);
  report.complete = closure.complete || closure.stopped;
  report.closure_size = closure.entries.size();
  const Relation& f = bundle.c.relation("f");
  const Relation& g = bundle.c.relation("g");
  const Relation bound = f.unite(g).unite(Relation::identity(bundle.c.size()));
  for (const auto& entry : closure.entries) {
    if (!entry.relation.subset_of(bound)) report.subclaim1 = false;
    if (const XMember* member = bundle.find(entry.relation)) {
      report.members.push_back(member->name);
    } else if (!report.escapee) {
      report.escapee = entry.witness;
    }
    if (entry.relation == target) report.separating_witness = entry.witness;
  }
  report.pass = !report.escapee && closure.complete;
  return report;
}

SinkExtension sink_extension(const CounterexampleBundle& bundle) {
  const Structure& c = bundle.c;
  std::vector<std::string> domain = c.domain();
  const std::string sink = "s";
  if (c.find(sink)) throw Error("element name 's' already in use");
  domain.push_back(sink);
  SinkExtension ext;
  ext.structure = Structure(domain, {"fhat", "ghat", "ehat"});
  Structure& s = ext.structure;
  const std::size_t si = c.size();
  for (const auto& [name, hat] : {std::pair{"f", "fhat"}, std::pair{"g", "ghat"}}) {
    const Relation& old = c.relation(name);
    Relation& r = s.relation(hat);
    for (std::size_t a = 0; a < c.size(); ++a) {
      const auto succ = old.successors(a);
      if (succ.empty()) r.insert(a, si);
      for (auto b : succ) r.insert(a, b);
    }
    r.insert(si, si);
  }
  for (std::size_t a = 0; a <= si; ++a) s.relation("ehat").insert(a, si);
  const Term to_sink = compose(top_term(), sym("ehat"));
  ext.recovery["f"] = minus(sym("fhat"), to_sink);
  ext.recovery["g"] = minus(sym("ghat"), to_sink);
  ext.total_separating = pref_union(substitute(bundle.separating, ext.recovery), sym("ehat"));
  return ext;
}

// ---------------------------------------------------------------------------
// Figure 2

namespace {

std::string b_name(std::size_t i) { return "b" + std::to_string(i); }

}  // namespace

Fig2 build_fig2(std::size_t n, std::size_t k) {
  if (n < 1 || k < 1) throw Error("fig2 needs n >= 1 and k >= 1");
  const std::size_t top = n + k;
  std::vector<std::string> domain{"a"};
  for (std::size_t i = 0; i <= top; ++i) domain.push_back(b_name(i));
  Structure s(domain, {"R1", "R2", "R3", "R4"});
  s.add_pair("R1", "b0", "a");
  for (std::size_t i = 0; i < top; ++i) s.add_pair("R2", b_name(i + 1), b_name(i));
  s.add_pair("R2", b_name(n), b_name(top));
  for (std::size_t i = 0; i <= top; ++i) s.add_pair("R3", "b0", b_name(i));
  for (std::size_t i = 1; i < top; ++i) s.add_pair("R3", b_name(i), b_name(i + 1));
  s.add_pair("R3", b_name(top), b_name(n));
  s.add_pair("R4", "a", b_name(n));
  return {std::move(s), "a"};
}

Structure remove_b0(const Structure& s) {
  const std::size_t b0 = s.index_of("b0");
  std::vector<std::size_t> keep;
  for (std::size_t i = 0; i < s.size(); ++i)
    if (i != b0) keep.push_back(i);
  return s.induced(keep);
}

Formula phi_u() {
  static const Formula f = parse_formula(
      "R3(u,u)"
      " & (forall v. (R3(u,v) -> exists w. (R3(v,w) & R2(w,v))))"
      " & (forall v. forall w. ((R3(u,v) & R3(v,w)) -> R3(u,w)))"
      " & !(exists v. R2(u,v))"
      " & (forall v. forall w. ((R3(u,v) & (exists s. exists t. (R2(v,s) & R2(v,t) & !(s=t)))"
      " & R1(u,w)) -> R4(w,v)))");
  return f;
}

Formula psi_xy() {
  return Formula::conj(Formula::eq("x", "y"),
                       Formula::exists("u", Formula::conj(Formula::atom("R1", "u", "x"), phi_u())));
}

}  // namespace relalg
