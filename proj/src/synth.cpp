#include "relalg/synth.hpp"

#include <algorithm>
#include <array>
#include <functional>

#include "op_eval.hpp"

namespace relalg {

namespace {

using Word = std::vector<std::size_t>;

std::string letter_name(const NeighborhoodType& t, std::size_t l) {
  if (!t.oriented) return t.symbols[l];
  return t.symbols[l / 2] + (l % 2 ? "^" : "");
}

std::size_t inverse_letter(std::size_t l) { return l ^ 1U; }

StructureClass type_class(bool oriented) {
  return oriented ? StructureClass::InjectivePartialFunctions : StructureClass::PartialFunctions;
}

// Successor of element x along a letter, if any.
class Stepper {
 public:
  Stepper(const Structure& s, const std::vector<std::string>& symbols, bool oriented)
      : oriented_(oriented) {
    for (const auto& name : symbols) {
      forward_.push_back(&s.relation(name));
      if (oriented) backward_.push_back(s.relation(name).converse());
    }
  }
  std::optional<std::size_t> step(std::size_t x, std::size_t l) const {
    const Relation& r = oriented_ ? (l % 2 ? backward_[l / 2] : *forward_[l / 2]) : *forward_[l];
    const auto succ = r.successors(x);
    if (succ.empty()) return std::nullopt;
    return succ.front();
  }

 private:
  bool oriented_;
  std::vector<const Relation*> forward_;
  std::vector<Relation> backward_;
};

}  // namespace

std::string word_string(const NeighborhoodType& t, const Word& word) {
  if (word.empty()) return "eps";
  std::string out;
  for (std::size_t i = 0; i < word.size(); ++i) out += (i ? " " : "") + letter_name(t, word[i]);
  return out;
}

std::string to_string(const NeighborhoodType& t) {
  std::string out = "radius " + std::to_string(t.radius) + ":";
  for (std::size_t i = 0; i < t.size(); ++i) {
    out += " [" + std::to_string(i);
    for (std::size_t l = 0; l < t.letters(); ++l) {
      const int v = t.succ[i][l];
      if (v == NeighborhoodType::kUnknown) continue;
      out += " " + letter_name(t, l) + ">" + (v == NeighborhoodType::kNone ? "-" : std::to_string(v));
    }
    out += "]";
  }
  return out;
}

NeighborhoodType neighborhood_type(const Structure& s, std::string_view a, std::size_t m,
                                   bool oriented) {
  const StructureClass cls = type_class(oriented);
  if (!in_class(s, cls))
    throw Error("structure is not in class " + std::string(to_string(cls)));
  NeighborhoodType t;
  t.symbols = s.signature();
  t.radius = m;
  t.oriented = oriented;
  const Stepper stepper(s, t.symbols, oriented);
  std::vector<int> node_of(s.size(), -1);
  std::vector<std::size_t> element;
  auto add = [&](std::size_t x, std::size_t depth, Word word) {
    node_of[x] = static_cast<int>(element.size());
    element.push_back(x);
    t.depth.push_back(depth);
    t.word.push_back(std::move(word));
    t.succ.emplace_back(t.letters(), NeighborhoodType::kUnknown);
  };
  add(s.index_of(a), 0, {});
  for (std::size_t i = 0; i < element.size(); ++i) {
    if (t.depth[i] >= m) continue;
    for (std::size_t l = 0; l < t.letters(); ++l) {
      const auto y = stepper.step(element[i], l);
      if (!y) {
        t.succ[i][l] = NeighborhoodType::kNone;
        continue;
      }
      if (node_of[*y] < 0) {
        Word w = t.word[i];
        w.push_back(l);
        add(*y, t.depth[i] + 1, std::move(w));
      }
      t.succ[i][l] = node_of[*y];
    }
  }
  return t;
}

std::vector<NeighborhoodType> enumerate_types(const std::vector<std::string>& symbols,
                                              std::size_t m, bool oriented, std::size_t budget) {
  constexpr int kUnset = -3;
  NeighborhoodType proto;
  proto.symbols = symbols;
  proto.radius = m;
  proto.oriented = oriented;
  const std::size_t letters = proto.letters();

  std::vector<NeighborhoodType> out;
  std::vector<std::vector<int>> val;
  std::vector<std::size_t> depth;
  std::vector<Word> words;

  auto add_node = [&](std::size_t d, Word w) {
    val.emplace_back(letters, kUnset);
    depth.push_back(d);
    words.push_back(std::move(w));
  };
  auto emit = [&] {
    if (out.size() >= budget)
      throw Error("type enumeration exceeds budget of " + std::to_string(budget));
    NeighborhoodType t = proto;
    t.depth = depth;
    t.word = words;
    for (std::size_t i = 0; i < val.size(); ++i) {
      std::vector<int> row(letters, NeighborhoodType::kUnknown);
      if (depth[i] < m) row = val[i];
      t.succ.push_back(std::move(row));
    }
    out.push_back(std::move(t));
  };

  std::function<void(std::size_t, std::size_t)> fill = [&](std::size_t i, std::size_t l) {
    if (l == letters) {
      ++i;
      l = 0;
    }
    while (i < val.size() && depth[i] >= m) ++i;
    if (i >= val.size()) {
      emit();
      return;
    }
    if (val[i][l] != kUnset) {
      fill(i, l + 1);
      return;
    }
    const std::size_t inv = oriented ? inverse_letter(l) : 0;
    // none
    val[i][l] = NeighborhoodType::kNone;
    fill(i, l + 1);
    // existing node
    const std::size_t existing = val.size();
    for (std::size_t j = 0; j < existing; ++j) {
      if (oriented && val[j][inv] != kUnset) continue;
      val[i][l] = static_cast<int>(j);
      if (oriented) val[j][inv] = static_cast<int>(i);
      fill(i, l + 1);
      if (oriented) val[j][inv] = kUnset;
    }
    // fresh node
    Word w = words[i];
    w.push_back(l);
    add_node(depth[i] + 1, std::move(w));
    val[i][l] = static_cast<int>(existing);
    if (oriented) val[existing][inv] = static_cast<int>(i);
    fill(i, l + 1);
    val.pop_back();
    depth.pop_back();
    words.pop_back();
    val[i][l] = kUnset;
  };

  add_node(0, {});
  fill(0, 0);
  return out;
}

Structure realization(const NeighborhoodType& t, bool padded) {
  std::size_t total = t.size();
  std::vector<std::array<std::size_t, 3>> arcs;  // symbol, from, to
  auto arc = [&](std::size_t from, std::size_t l, std::size_t to) {
    if (t.oriented) {
      if (l % 2) arcs.push_back({l / 2, to, from});
      else arcs.push_back({l / 2, from, to});
    } else {
      arcs.push_back({l, from, to});
    }
  };
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t l = 0; l < t.letters(); ++l)
      if (t.succ[i][l] >= 0) arc(i, l, static_cast<std::size_t>(t.succ[i][l]));
  Structure s(default_elements(t.size()), t.symbols);
  for (const auto& [sym_index, from, to] : arcs) s.relation(t.symbols[sym_index]).insert(from, to);
  if (!padded) return s;

  const Stepper stepper(s, t.symbols, t.oriented);
  std::vector<std::array<std::size_t, 3>> extra;
  auto fresh_arc = [&](std::size_t from, std::size_t l) {
    const std::size_t p = total++;
    if (t.oriented && l % 2) extra.push_back({l / 2, p, from});
    else extra.push_back({t.oriented ? l / 2 : l, from, p});
  };
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (t.depth[i] < t.radius) continue;
    for (std::size_t l = 0; l < t.letters(); ++l)
      if (!stepper.step(i, l)) fresh_arc(i, l);
  }
  if (!t.oriented) {
    for (std::size_t i = 0; i < t.size(); ++i)
      for (std::size_t sym_index = 0; sym_index < t.symbols.size(); ++sym_index)
        extra.push_back({sym_index, total++, i});
  }
  Structure p(default_elements(total), t.symbols);
  for (const auto& [sym_index, from, to] : arcs) p.relation(t.symbols[sym_index]).insert(from, to);
  for (const auto& [sym_index, from, to] : extra) p.relation(t.symbols[sym_index]).insert(from, to);
  return p;
}

Term word_term(const NeighborhoodType& t, const Word& word) {
  if (word.empty()) return antidomain(compose(antidomain(sym(t.symbols.front())), sym(t.symbols.front())));
  std::optional<Term> out;
  for (std::size_t l : word) {
    Term letter = sym(t.oriented ? t.symbols[l / 2] : t.symbols[l]);
    if (t.oriented && l % 2) letter = converse(letter);
    out = out ? compose(*out, letter) : letter;
  }
  return *out;
}

Term chi_term(const NeighborhoodType& t) {
  // Existing words of length <= radius with their endpoints.
  std::vector<std::pair<Word, std::size_t>> existing{{{}, 0}};
  for (std::size_t k = 0; k < existing.size(); ++k) {
    const auto [w, node] = existing[k];
    if (w.size() >= t.radius) continue;
    for (std::size_t l = 0; l < t.letters(); ++l) {
      const int next = t.succ[node][l];
      if (next < 0) continue;
      Word longer = w;
      longer.push_back(l);
      existing.emplace_back(std::move(longer), static_cast<std::size_t>(next));
    }
  }

  struct Atom {
    std::size_t length;
    std::string key;
    Term term;
  };
  std::vector<Atom> atoms;
  auto add = [&](std::size_t length, Term term) {
    atoms.push_back({length, print_term(term), std::move(term)});
  };
  for (const auto& [w, node] : existing) {
    if (w.size() < t.radius) {
      for (std::size_t l = 0; l < t.letters(); ++l) {
        if (t.succ[node][l] != NeighborhoodType::kNone) continue;
        Word longer = w;
        longer.push_back(l);
        add(longer.size(), antidomain(word_term(t, longer)));
      }
    }
    const Word& rep = t.word[node];
    if (w == rep) {
      if (!w.empty()) add(w.size(), antidomain(antidomain(word_term(t, w))));
    } else {
      add(w.size(), antidomain(antidomain(intersect(word_term(t, w), word_term(t, rep)))));
    }
  }
  for (std::size_t p = 0; p < t.size(); ++p)
    for (std::size_t q = p + 1; q < t.size(); ++q)
      add(t.word[q].size(), antidomain(intersect(word_term(t, t.word[q]), word_term(t, t.word[p]))));

  if (atoms.empty()) return word_term(t, {});
  std::stable_sort(atoms.begin(), atoms.end(), [](const Atom& a, const Atom& b) {
    if (a.length != b.length) return a.length > b.length;
    return a.key < b.key;
  });
  Term chain = atoms.back().term;
  for (std::size_t i = atoms.size() - 1; i-- > 0;) chain = intersect(atoms[i].term, chain);
  return chain;
}

// ---------------------------------------------------------------------------
// Synthesis

namespace {

SynthesisResult synthesize(const OperationSpec& oracle, std::size_t m, bool oriented) {
  if (oracle.signature.empty()) throw Error("oracle has an empty signature");
  SynthesisResult result;
  result.radius = m;
  result.oriented = oriented;
  const auto types = enumerate_types(oracle.signature, m, oriented);
  result.types_considered = types.size();
  detail::OpEval ev(oracle);
  std::optional<Term> combined;
  for (const auto& t : types) {
    const Structure minimal = realization(t);
    const Structure padded = realization(t, true);
    const auto row = ev(minimal).successors(0);
    if (row.size() > 1)
      throw SynthesisError("oracle not function-preserving at type " + to_string(t), minimal);
    const auto padded_row = ev(padded).successors(0);
    if (padded_row != row)
      throw SynthesisError("oracle not m-bounded at type " + to_string(t) + " (radius " +
                               std::to_string(m) + ")",
                           padded);
    if (row.empty()) continue;
    const Word& w = t.word[row.front()];
    const Term chi = chi_term(t);
    const Term emission = w.empty() ? chi : compose(chi, word_term(t, w));
    result.positive_types.push_back({t, w});
    if (!combined) combined = emission;
    else combined = oriented ? inj_union(*combined, emission) : pref_union(*combined, emission);
  }
  const Term f1 = sym(oracle.signature.front());
  result.term = combined ? *combined : compose(antidomain(f1), f1);
  return result;
}

}  // namespace

SynthesisResult synthesize_forward(const OperationSpec& oracle, std::size_t m) {
  return synthesize(oracle, m, false);
}

SynthesisResult synthesize_local_injective(const OperationSpec& oracle, std::size_t m) {
  return synthesize(oracle, m, true);
}

ValidationReport validate_synthesis(const OperationSpec& oracle, const Term& term, bool oriented,
                                    const SynthesisBounds& bounds, std::uint64_t seed) {
  const StructureClass cls = type_class(oriented);
  ValidationReport report;
  report.structure_class = std::string(to_string(cls));
  report.max_size = bounds.max_size;
  report.sample_max_size = bounds.sample_max_size;
  report.seed = seed;
  detail::OpEval left(oracle);
  CompiledTerm right(term);
  auto compare = [&](const Structure& s) -> std::optional<Counterexample> {
    const Relation a = left(s);
    const Relation b = right.eval(s);
    if (a == b) return std::nullopt;
    for (std::size_t x = 0; x < s.size(); ++x)
      for (std::size_t y = 0; y < s.size(); ++y)
        if (a.contains(x, y) != b.contains(x, y))
          return Counterexample{s, {s.element(x), s.element(y)},
                                a.contains(x, y) ? "pair in oracle output only"
                                                 : "pair in synthesized term only"};
    return std::nullopt;
  };
  StructureStream stream(oracle.signature, bounds.max_size, cls);
  Structure s;
  while (stream.next(s)) {
    ++report.exhaustive_structures;
    if (auto cex = compare(s)) {
      report.pass = false;
      report.counterexample = std::move(cex);
      return report;
    }
  }
  for (std::size_t i = 0; i < bounds.samples; ++i) {
    Rng rng(mix_seed(seed, i));
    const std::size_t size = 1 + rng.below(bounds.sample_max_size);
    const Structure sample = random_structure(rng.next(), size, oracle.signature, cls);
    report.samples = i + 1;
    if (auto cex = compare(sample)) {
      report.pass = false;
      report.counterexample = std::move(cex);
      return report;
    }
  }
  return report;
}

RadiusEstimate estimate_radius(const OperationSpec& oracle, std::size_t max_m, bool oriented,
                               const SynthesisBounds& bounds, std::uint64_t seed) {
  RadiusEstimate estimate;
  for (std::size_t m = 0; m <= max_m; ++m) {
    RadiusAttempt attempt;
    attempt.radius = m;
    try {
      SynthesisResult result = oriented ? synthesize_local_injective(oracle, m)
                                        : synthesize_forward(oracle, m);
      const ValidationReport report = validate_synthesis(oracle, result.term, oriented, bounds, seed);
      if (report.pass) {
        estimate.attempts.push_back(attempt);
        estimate.radius = m;
        estimate.result = std::move(result);
        return estimate;
      }
      attempt.failure = "validation failed";
      attempt.counterexample = report.counterexample;
    } catch (const SynthesisError& e) {
      attempt.failure = e.what();
    } catch (const Error& e) {
      attempt.failure = e.what();
      estimate.attempts.push_back(std::move(attempt));
      break;
    }
    estimate.attempts.push_back(std::move(attempt));
  }
  return estimate;
}

const std::vector<std::string>& forward_catalog() {
  static const std::vector<std::string> catalog{
      "dom(f)", "~g ; f",        "f ; g",        "f |> g",      "f & g",
      "f <+ g", "g <+ f ; f",    "f & g <+ ~f",  "dom(f) ; g", "f \\ g",
  };
  return catalog;
}

const std::vector<std::string>& injective_catalog() {
  static const std::vector<std::string> catalog{
      "f^",     "ran(f)", "dom(f) ; g^", "f <# dom(g)",
      "~f ; g", "f & g^", "f ; f",       "f^ ; f^",
  };
  return catalog;
}

}  // namespace relalg
