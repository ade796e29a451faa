#include "relalg/checkers.hpp"

#include <algorithm>

#include "op_eval.hpp"
#include "parallel.hpp"

namespace relalg {

// ---------------------------------------------------------------------------
// OperationSpec

namespace {

std::vector<std::string> default_signature(const std::set<std::string>& symbols) {
  if (symbols.empty()) return {"f"};
  return {symbols.begin(), symbols.end()};
}

}  // namespace

OperationSpec OperationSpec::of(Term t, std::vector<std::string> signature) {
  if (signature.empty()) signature = default_signature(t.signature());
  return {std::move(t), std::move(signature)};
}

OperationSpec OperationSpec::of(Formula f, std::vector<std::string> signature) {
  if (signature.empty()) signature = default_signature(f.symbols());
  return {std::move(f), std::move(signature)};
}

std::string OperationSpec::describe() const {
  if (const auto* t = std::get_if<Term>(&body)) return print_term(*t);
  return print_formula(std::get<Formula>(body));
}

Relation OperationSpec::apply(const Structure& s) const {
  if (const auto* t = std::get_if<Term>(&body)) return eval(*t, s);
  return define_relation(std::get<Formula>(body), x, y, s, true);
}

std::string_view to_string(Property p) {
  switch (p) {
    case Property::FunctionPreserving: return "fp";
    case Property::TotalPreserving: return "tfp";
    case Property::InjectivePreserving: return "ifp";
    case Property::HomSafe: return "homsafe";
    case Property::SubsetSafe: return "subsafe";
    case Property::Forward: return "forward";
    case Property::Local: return "local";
  }
  return "?";
}

Property parse_property(std::string_view name) {
  for (auto p : {Property::FunctionPreserving, Property::TotalPreserving,
                 Property::InjectivePreserving, Property::HomSafe, Property::SubsetSafe,
                 Property::Forward, Property::Local})
    if (to_string(p) == name) return p;
  throw Error("unknown property: " + std::string(name));
}

StructureClass default_class(Property p) {
  switch (p) {
    case Property::FunctionPreserving: return StructureClass::PartialFunctions;
    case Property::TotalPreserving: return StructureClass::TotalFunctions;
    case Property::InjectivePreserving: return StructureClass::InjectivePartialFunctions;
    case Property::Forward: return StructureClass::PartialFunctions;
    case Property::Local: return StructureClass::InjectivePartialFunctions;
    default: return StructureClass::All;
  }
}

namespace {

using detail::OpEval;

std::string join(const std::vector<std::string>& items) {
  std::string out;
  for (const auto& s : items) out += (out.empty() ? "" : ", ") + s;
  return out;
}

std::optional<CheckCounterexample> class_violation(const Relation& r, StructureClass cls,
                                                   const Structure& s) {
  for (std::size_t a = 0; a < s.size(); ++a) {
    const auto succ = r.successors(a);
    if (cls != StructureClass::All && succ.size() > 1) {
      std::vector<std::string> names;
      for (auto b : succ) names.push_back(s.element(b));
      return CheckCounterexample{{s}, {}, {s.element(a), s.element(succ[1])},
                                 s.element(a) + " has " + std::to_string(succ.size()) +
                                     " successors in the output: " + join(names)};
    }
    if (cls == StructureClass::TotalFunctions && succ.empty())
      return CheckCounterexample{{s}, {}, {s.element(a)},
                                 s.element(a) + " has no successor in the output"};
  }
  if (cls == StructureClass::InjectivePartialFunctions) {
    for (std::size_t b = 0; b < s.size(); ++b) {
      std::vector<std::string> preds;
      std::size_t last = 0;
      for (std::size_t a = 0; a < s.size(); ++a)
        if (r.contains(a, b)) {
          preds.push_back(s.element(a));
          last = a;
        }
      if (preds.size() > 1)
        return CheckCounterexample{{s}, {}, {s.element(last), s.element(b)},
                                   s.element(b) + " has " + std::to_string(preds.size()) +
                                       " predecessors in the output: " + join(preds)};
    }
  }
  return std::nullopt;
}

template <class Evaluate>
std::optional<CheckCounterexample> generated_violation(Evaluate&& evaluate, const Structure& s,
                                                       Reach mode) {
  const Relation whole = evaluate(s);
  for (std::size_t a = 0; a < s.size(); ++a) {
    const auto keep = reachable_indices(s, a, std::nullopt, mode);
    const Structure sub = s.induced(keep);
    const Relation part = evaluate(sub);
    const std::size_t pa = static_cast<std::size_t>(
        std::find(keep.begin(), keep.end(), a) - keep.begin());
    std::vector<std::size_t> position(s.size(), SIZE_MAX);
    for (std::size_t i = 0; i < keep.size(); ++i) position[keep[i]] = i;
    for (std::size_t b = 0; b < s.size(); ++b) {
      const bool in_whole = whole.contains(a, b);
      const bool in_part = position[b] != SIZE_MAX && part.contains(pa, position[b]);
      if (in_whole == in_part) continue;
      std::string note;
      if (position[b] == SIZE_MAX)
        note = "(" + s.element(a) + ", " + s.element(b) + ") is in the output but " +
               s.element(b) + " lies outside the substructure generated by " + s.element(a);
      else if (in_whole)
        note = "(" + s.element(a) + ", " + s.element(b) +
               ") is in the output on the structure only";
      else
        note = "(" + s.element(a) + ", " + s.element(b) +
               ") is in the output on the generated substructure only";
      return CheckCounterexample{{s, sub}, {}, {s.element(a), s.element(b)}, note};
    }
  }
  return std::nullopt;
}

std::optional<CheckCounterexample> hom_violation(const Structure& a, const Relation& oa,
                                                 const Structure& b, const Relation& ob,
                                                 const ElementMap& h) {
  for (const auto& [x, y] : oa.pairs()) {
    if (ob.contains(h[x], h[y])) continue;
    std::vector<std::string> images;
    for (auto i : h) images.push_back(b.element(i));
    return CheckCounterexample{
        {a, b},
        images,
        {a.element(x), a.element(y)},
        "(" + a.element(x) + ", " + a.element(y) + ") is in the output on the first structure but (" +
            b.element(h[x]) + ", " + b.element(h[y]) + ") is not in the output on the second"};
  }
  return std::nullopt;
}

std::optional<CheckCounterexample> subset_violation(const Structure& big, const Relation& obig,
                                                    const std::vector<std::size_t>& keep,
                                                    const Relation& osmall) {
  for (const auto& [i, j] : osmall.pairs()) {
    if (obig.contains(keep[i], keep[j])) continue;
    const Structure small = big.induced(keep);
    std::vector<std::string> inclusion;
    for (auto k : keep) inclusion.push_back(big.element(k));
    return CheckCounterexample{
        {big, small},
        inclusion,
        {small.element(i), small.element(j)},
        "(" + small.element(i) + ", " + small.element(j) +
            ") is in the output on the induced substructure but not on the whole structure"};
  }
  return std::nullopt;
}

// Exhaustive index space over sizes lo..hi of one class.
struct Space {
  std::vector<std::string> signature;
  StructureClass cls;
  std::vector<std::pair<std::size_t, std::uint64_t>> sizes;  // (k, count)
  std::uint64_t total = 0;

  Space(std::vector<std::string> sig, StructureClass c, std::size_t lo, std::size_t hi)
      : signature(std::move(sig)), cls(c) {
    StructureStream stream(signature, hi, cls, lo == 0);
    for (std::size_t k = lo; k <= hi; ++k) {
      const std::uint64_t n = stream.count_of_size(k);
      sizes.emplace_back(k, n);
      total += n;
    }
  }
  Structure at(std::uint64_t index) const {
    for (const auto& [k, n] : sizes) {
      if (index < n) return structure_at(signature, k, cls, index);
      index -= n;
    }
    throw Error("structure index out of range");
  }
};

std::size_t auto_max_size(std::size_t arity) { return arity <= 1 ? 4 : arity == 2 ? 3 : 2; }

std::size_t auto_pair_size(std::size_t arity, std::size_t max_size) {
  std::size_t best = 1;
  for (std::size_t k = 1; k <= max_size; ++k) {
    Space space(std::vector<std::string>(arity, "r"), StructureClass::All, 1, k);
    if (space.total > 2000) break;
    best = k;
  }
  return best;
}

Structure random_hom_image(Rng& rng, const Structure& a, std::size_t size_b, ElementMap& h) {
  Structure b(default_elements(size_b), a.signature());
  h.assign(a.size(), 0);
  for (auto& x : h) x = rng.below(size_b);
  const std::uint64_t extra = rng.below(4);  // out of 16
  for (const auto& [name, rel] : a.relations()) {
    Relation& target = b.relation(name);
    for (const auto& [x, y] : rel.pairs()) target.insert(h[x], h[y]);
    for (std::size_t x = 0; x < size_b; ++x)
      for (std::size_t y = 0; y < size_b; ++y)
        if (rng.chance(extra, 16)) target.insert(x, y);
  }
  return b;
}

}  // namespace

Verdict check(const OperationSpec& op, Property p, const CheckBounds& bounds, std::uint64_t seed) {
  Verdict verdict;
  verdict.property = p;
  verdict.seed = seed;
  StructureClass cls = default_class(p);
  if (bounds.all_structures && (p == Property::Forward || p == Property::Local))
    cls = StructureClass::All;
  const std::size_t max_size = bounds.max_size.value_or(auto_max_size(op.arity()));
  const std::size_t lo = bounds.include_empty ? 0 : 1;
  verdict.bounds.structure_class = std::string(to_string(cls));
  verdict.bounds.max_size = max_size;
  verdict.bounds.sample_max_size = bounds.sample_max_size;

  auto finish = [&](std::optional<CheckCounterexample> cex) {
    if (cex) {
      if (!reverify(op, p, *cex))
        throw Error("internal error: counterexample for " + std::string(to_string(p)) +
                    " does not re-verify");
      verdict.pass = false;
      verdict.counterexample = std::move(cex);
    }
    return verdict;
  };

  const Reach mode = p == Property::Local ? Reach::Undirected : Reach::Forward;

  if (p == Property::HomSafe) {
    const std::size_t pair_size = bounds.pair_max_size.value_or(auto_pair_size(op.arity(), max_size));
    verdict.bounds.pair_max_size = pair_size;
    const Space space(op.signature, cls, lo, pair_size);
    std::vector<Structure> all;
    std::vector<Relation> outputs;
    {
      OpEval ev(op);
      for (std::uint64_t i = 0; i < space.total; ++i) {
        all.push_back(space.at(i));
        outputs.push_back(ev(all.back()));
      }
    }
    const std::uint64_t n = all.size();
    const std::uint64_t exhaustive = n * n;
    auto probe = [&](std::uint64_t index, OpEval& ev) -> std::optional<CheckCounterexample> {
      if (index < exhaustive) {
        const std::size_t ia = index / n, ib = index % n;
        if (outputs[ia].empty()) return std::nullopt;
        for (const auto& h : homomorphisms(all[ia], all[ib]))
          if (auto cex = hom_violation(all[ia], outputs[ia], all[ib], outputs[ib], h)) return cex;
        return std::nullopt;
      }
      Rng rng(mix_seed(seed, index - exhaustive));
      const Structure a = random_structure(rng.next(), 1 + rng.below(bounds.sample_max_size),
                                           op.signature, cls);
      ElementMap h;
      const Structure b = random_hom_image(rng, a, 1 + rng.below(bounds.sample_max_size), h);
      return hom_violation(a, ev(a), b, ev(b), h);
    };
    const std::uint64_t total = exhaustive + bounds.samples;
    auto failure = detail::first_failure(total, bounds.jobs, [&] {
      return [&, ev = std::make_shared<OpEval>(op)](std::uint64_t i) { return probe(i, *ev).has_value(); };
    });
    verdict.bounds.exhaustive = failure ? std::min(*failure + 1, exhaustive) : exhaustive;
    verdict.bounds.samples = failure ? (*failure >= exhaustive ? *failure - exhaustive + 1 : 0)
                                     : bounds.samples;
    if (!failure) return verdict;
    OpEval ev(op);
    return finish(probe(*failure, ev));
  }

  const Space space(op.signature, cls, lo, max_size);
  auto sample = [&](std::uint64_t i) {
    Rng rng(mix_seed(seed, i));
    const std::size_t size = 1 + rng.below(bounds.sample_max_size);
    return random_structure(rng.next(), size, op.signature, cls);
  };

  auto probe = [&](std::uint64_t index, OpEval& ev) -> std::optional<CheckCounterexample> {
    const bool exhaustive = index < space.total;
    const Structure s = exhaustive ? space.at(index) : sample(index - space.total);
    switch (p) {
      case Property::FunctionPreserving:
      case Property::TotalPreserving:
      case Property::InjectivePreserving:
        return class_violation(ev(s), cls, s);
      case Property::Forward:
      case Property::Local:
        return generated_violation([&](const Structure& x) { return ev(x); }, s, mode);
      case Property::SubsetSafe: {
        const Relation whole = ev(s);
        const std::size_t n = s.size();
        auto test = [&](std::uint64_t mask) -> std::optional<CheckCounterexample> {
          std::vector<std::size_t> keep;
          for (std::size_t i = 0; i < n; ++i)
            if ((mask >> i) & 1U) keep.push_back(i);
          return subset_violation(s, whole, keep, ev(s.induced(keep)));
        };
        if (exhaustive) {
          const std::uint64_t full = (std::uint64_t{1} << n) - 1;
          for (std::uint64_t mask = 1; mask < full; ++mask)
            if (auto cex = test(mask)) return cex;
        } else {
          Rng rng(mix_seed(seed ^ 0x5bd1e995ULL, index));
          for (int round = 0; round < 8; ++round) {
            std::uint64_t mask = 0;
            for (std::size_t i = 0; i < n; ++i)
              if (rng.chance(1, 2)) mask |= std::uint64_t{1} << i;
            if (mask == 0) mask = std::uint64_t{1} << rng.below(n);
            if (auto cex = test(mask)) return cex;
          }
        }
        return std::nullopt;
      }
      case Property::HomSafe: break;
    }
    return std::nullopt;
  };

  const std::uint64_t total = space.total + bounds.samples;
  auto failure = detail::first_failure(total, bounds.jobs, [&] {
    return [&, ev = std::make_shared<OpEval>(op)](std::uint64_t i) { return probe(i, *ev).has_value(); };
  });
  verdict.bounds.exhaustive = failure ? std::min(*failure + 1, space.total) : space.total;
  verdict.bounds.samples =
      failure ? (*failure >= space.total ? *failure - space.total + 1 : 0) : bounds.samples;
  if (!failure) return verdict;
  OpEval ev(op);
  return finish(probe(*failure, ev));
}

// ---------------------------------------------------------------------------
// Re-verification

bool reverify(const OperationSpec& op, Property p, const CheckCounterexample& cex) {
  auto apply = [&](const Structure& s) { return op.apply(s); };
  try {
    switch (p) {
      case Property::FunctionPreserving:
      case Property::TotalPreserving:
      case Property::InjectivePreserving: {
        if (cex.structures.size() != 1) return false;
        const Structure& s = cex.structures[0];
        if (!in_class(s, default_class(p))) return false;
        return class_violation(apply(s), default_class(p), s).has_value();
      }
      case Property::HomSafe: {
        if (cex.structures.size() != 2 || cex.pair.size() != 2) return false;
        const Structure& a = cex.structures[0];
        const Structure& b = cex.structures[1];
        ElementMap h;
        for (const auto& img : cex.map) h.push_back(b.index_of(img));
        if (!is_homomorphism(a, b, h)) return false;
        const std::size_t x = a.index_of(cex.pair[0]), y = a.index_of(cex.pair[1]);
        return apply(a).contains(x, y) && !apply(b).contains(h[x], h[y]);
      }
      case Property::SubsetSafe: {
        if (cex.structures.size() != 2 || cex.pair.size() != 2) return false;
        const Structure& big = cex.structures[0];
        const Structure& small = cex.structures[1];
        std::vector<std::size_t> keep;
        for (const auto& e : small.domain()) keep.push_back(big.index_of(e));
        if (!(big.induced(keep) == small)) return false;
        const std::size_t x = small.index_of(cex.pair[0]), y = small.index_of(cex.pair[1]);
        return apply(small).contains(x, y) && !apply(big).contains(keep[x], keep[y]);
      }
      case Property::Forward:
      case Property::Local: {
        if (cex.structures.empty() || cex.pair.size() != 2) return false;
        const Structure& s = cex.structures[0];
        const Reach mode = p == Property::Local ? Reach::Undirected : Reach::Forward;
        const Structure sub = generated_substructure(s, cex.pair[0], mode);
        const bool in_whole = apply(s).contains(s.index_of(cex.pair[0]), s.index_of(cex.pair[1]));
        const auto pb = sub.find(cex.pair[1]);
        const bool in_part = pb && apply(sub).contains(sub.index_of(cex.pair[0]), *pb);
        return in_whole != in_part;
      }
    }
  } catch (const Error&) {
    return false;
  }
  return false;
}

// ---------------------------------------------------------------------------
// Table 1

Table1Report table1_matrix(const CheckBounds& bounds, std::uint64_t seed) {
  struct Entry {
    const char* name;
    const char* term;
    std::array<bool, 4> expected;
  };
  static const Entry kEntries[] = {
      {"identity", "id", {true, true, true, true}},
      {"empty", "0", {true, true, true, true}},
      {"top", "T", {true, true, false, false}},
      {"complement", "-f", {false, false, false, false}},
      {"converse", "f^", {true, true, false, false}},
      {"domain", "dom(f)", {true, true, true, true}},
      {"range", "ran(f)", {true, true, true, false}},
      {"antidomain", "~f", {false, false, true, true}},
      {"union", "f | g", {true, true, false, true}},
      {"intersection", "f & g", {true, true, true, true}},
      {"difference", "f \\ g", {false, true, true, true}},
      {"composition", "f ; g", {true, true, true, true}},
      {"semijoin", "f |> g", {true, true, true, true}},
      {"preferential union", "f <+ g", {false, false, true, true}},
  };
  Table1Report report;
  for (const auto& e : kEntries) {
    Table1Row row{e.name, parse_term(e.term), {}, e.expected};
    const OperationSpec op = OperationSpec::of(row.term);
    for (std::size_t c = 0; c < kTable1Columns.size(); ++c) {
      row.verdicts[c] = check(op, kTable1Columns[c], bounds, seed);
      if (row.verdicts[c].pass != row.expected[c]) report.matches = false;
    }
    report.rows.push_back(std::move(row));
  }
  return report;
}

}  // namespace relalg
