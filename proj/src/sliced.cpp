#include "relalg/sliced.hpp"

#include <algorithm>
#include <bit>

namespace relalg {

std::set<std::string> Definition::symbols() const {
  if (const auto* t = std::get_if<Term>(&body)) return t->signature();
  return std::get<Formula>(body).symbols();
}

Relation Definition::evaluate(const Structure& s) const {
  if (const auto* t = std::get_if<Term>(&body)) return eval(*t, s);
  return define_relation(std::get<Formula>(body), x, y, s, true);
}

namespace {

constexpr int kFormulaBase = 100;
constexpr std::uint64_t kAll = ~std::uint64_t{0};

constexpr std::uint64_t kLanePattern[6] = {
    0xAAAAAAAAAAAAAAAAULL, 0xCCCCCCCCCCCCCCCCULL, 0xF0F0F0F0F0F0F0F0ULL,
    0xFF00FF00FF00FF00ULL, 0xFFFF0000FFFF0000ULL, 0xFFFFFFFF00000000ULL,
};

Term expand_inj(const Term& t) {
  switch (arity(t.op())) {
    case 0: return t;
    case 1: return Term::unary(t.op(), expand_inj(t.operand()));
    default: {
      Term l = expand_inj(t.left());
      Term r = expand_inj(t.right());
      if (t.op() == Op::InjUnion)
        return intersect(pref_union(l, r), converse(pref_union(converse(l), converse(r))));
      return Term::binary(t.op(), l, r);
    }
  }
}

std::size_t ipow(std::size_t b, std::size_t e) {
  std::size_t r = 1;
  while (e-- > 0) r *= b;
  return r;
}

}  // namespace

SlicedComparison::SlicedComparison(const Definition& left, const Definition& right,
                                   std::vector<std::string> signature)
    : left_def_(left), right_def_(right), signature_(std::move(signature)) {
  for (const Definition* d : {&left, &right})
    for (const auto& s : d->symbols())
      if (std::find(signature_.begin(), signature_.end(), s) == signature_.end())
        throw Error("symbol " + s + " missing from the comparison signature");
  compile_side(left, left_);
  compile_side(right, right_);
}

void SlicedComparison::compile_side(const Definition& d, Program& p) {
  if (const auto* t = std::get_if<Term>(&d.body)) {
    p.result = compile_term(expand_inj(*t), p);
    return;
  }
  const Formula& f = std::get<Formula>(d.body);
  if (d.x == d.y) throw Error("comparison needs two distinct variables");
  std::string extra;
  for (const auto& v : f.free_vars())
    if (v != d.x && v != d.y) extra += (extra.empty() ? "" : ", ") + v;
  if (!extra.empty()) throw Error("extra free variables: " + extra);
  std::map<std::string, int> slots{{d.x, 0}, {d.y, 1}};
  p.formula = true;
  p.result = compile_formula(f, p, slots);
  p.vars = slots.size();
}

std::size_t SlicedComparison::compile_term(const Term& t, Program& p) {
  Instr in{static_cast<int>(t.op())};
  switch (arity(t.op())) {
    case 0:
      if (t.op() == Op::Symbol) {
        in.arg = static_cast<int>(std::find(signature_.begin(), signature_.end(), t.name()) -
                                  signature_.begin());
      }
      break;
    case 1: in.a = static_cast<int>(compile_term(t.operand(), p)); break;
    default:
      in.a = static_cast<int>(compile_term(t.left(), p));
      in.b = static_cast<int>(compile_term(t.right(), p));
  }
  p.code.push_back(in);
  return p.code.size() - 1;
}

std::size_t SlicedComparison::compile_formula(const Formula& f, Program& p,
                                              std::map<std::string, int>& slots) {
  auto slot = [&](const std::string& v) {
    auto [it, _] = slots.emplace(v, static_cast<int>(slots.size()));
    return it->second;
  };
  Instr in{kFormulaBase + static_cast<int>(f.kind())};
  switch (f.kind()) {
    case FKind::Atom:
      in.arg = static_cast<int>(std::find(signature_.begin(), signature_.end(), f.relation()) -
                                signature_.begin());
      in.a = slot(f.first());
      in.b = slot(f.second());
      break;
    case FKind::Eq:
      in.a = slot(f.first());
      in.b = slot(f.second());
      break;
    case FKind::Not: in.a = static_cast<int>(compile_formula(f.left(), p, slots)); break;
    case FKind::Exists:
    case FKind::Forall:
      in.arg = slot(f.variable());
      in.a = static_cast<int>(compile_formula(f.body(), p, slots));
      break;
    case FKind::And:
    case FKind::Or:
    case FKind::Implies:
      in.a = static_cast<int>(compile_formula(f.left(), p, slots));
      in.b = static_cast<int>(compile_formula(f.right(), p, slots));
      break;
    default: break;
  }
  p.code.push_back(in);
  return p.code.size() - 1;
}

namespace {

struct Layout {
  std::size_t k;
  std::size_t vars;
  std::size_t table;
  std::size_t digit(std::size_t v, std::size_t asg) const { return (asg / ipow(k, v)) % k; }
};

// Values for one program; atoms and quantifiers need per-assignment index tables.
struct Prepared {
  std::vector<std::vector<std::uint64_t>> values;
  std::vector<std::vector<std::uint32_t>> aux;
};

}  // namespace

std::optional<std::uint64_t> SlicedComparison::first_difference(std::size_t k) {
  if (k == 0) return std::nullopt;
  const std::size_t kk = k * k;
  const std::size_t nbits = signature_.size() * kk;
  if (nbits > 6 + 40) throw Error("exhaustive comparison bound exceeded");

  // Per-program buffers.
  auto build = [&](const Program& p, Prepared& prep) {
    const Layout lay{k, p.vars, p.formula ? ipow(k, p.vars) : 0};
    prep.values.assign(p.code.size(), {});
    prep.aux.assign(p.code.size(), {});
    for (std::size_t i = 0; i < p.code.size(); ++i) {
      const Instr& in = p.code[i];
      if (in.op < kFormulaBase) {
        prep.values[i].assign(kk, 0);
        const Op op = static_cast<Op>(in.op);
        if (op == Op::Id)
          for (std::size_t d = 0; d < k; ++d) prep.values[i][d * k + d] = kAll;
        if (op == Op::Top) std::fill(prep.values[i].begin(), prep.values[i].end(), kAll);
        continue;
      }
      auto& val = prep.values[i];
      auto& aux = prep.aux[i];
      val.assign(lay.table, 0);
      const auto kind = static_cast<FKind>(in.op - kFormulaBase);
      switch (kind) {
        case FKind::True: std::fill(val.begin(), val.end(), kAll); break;
        case FKind::Eq:
          for (std::size_t asg = 0; asg < lay.table; ++asg)
            if (lay.digit(in.a, asg) == lay.digit(in.b, asg)) val[asg] = kAll;
          break;
        case FKind::Atom:
          aux.resize(lay.table);
          for (std::size_t asg = 0; asg < lay.table; ++asg)
            aux[asg] = static_cast<std::uint32_t>(in.arg * kk + lay.digit(in.a, asg) * k +
                                                  lay.digit(in.b, asg));
          break;
        case FKind::Exists:
        case FKind::Forall: {
          aux.resize(lay.table);
          const std::size_t stride = ipow(k, in.arg);
          for (std::size_t asg = 0; asg < lay.table; ++asg)
            aux[asg] = static_cast<std::uint32_t>(asg - lay.digit(in.arg, asg) * stride);
          break;
        }
        default: break;
      }
    }
  };

  Prepared lp, rp;
  build(left_, lp);
  build(right_, rp);
  rel_.assign(nbits, 0);

  auto exec = [&](const Program& p, Prepared& prep, std::vector<std::uint64_t>& matrix) {
    const std::size_t table = p.formula ? ipow(k, p.vars) : 0;
    for (std::size_t i = 0; i < p.code.size(); ++i) {
      const Instr& in = p.code[i];
      std::uint64_t* out = prep.values[i].data();
      if (in.op < kFormulaBase) {
        const std::uint64_t* a =
            arity(static_cast<Op>(in.op)) >= 1 ? prep.values[in.a].data() : nullptr;
        const std::uint64_t* b = arity(static_cast<Op>(in.op)) == 2 ? prep.values[in.b].data()
                                                                     : nullptr;
        switch (static_cast<Op>(in.op)) {
          case Op::Symbol:
            std::copy(rel_.begin() + in.arg * kk, rel_.begin() + (in.arg + 1) * kk, out);
            break;
          case Op::Id:
          case Op::Empty:
          case Op::Top: break;
          case Op::Complement:
            for (std::size_t e = 0; e < kk; ++e) out[e] = ~a[e];
            break;
          case Op::Converse:
            for (std::size_t r = 0; r < k; ++r)
              for (std::size_t c = 0; c < k; ++c) out[r * k + c] = a[c * k + r];
            break;
          case Op::Domain:
          case Op::Antidomain: {
            const bool anti = static_cast<Op>(in.op) == Op::Antidomain;
            std::fill(out, out + kk, 0);
            for (std::size_t r = 0; r < k; ++r) {
              std::uint64_t any = 0;
              for (std::size_t c = 0; c < k; ++c) any |= a[r * k + c];
              out[r * k + r] = anti ? ~any : any;
            }
            break;
          }
          case Op::Range:
            std::fill(out, out + kk, 0);
            for (std::size_t c = 0; c < k; ++c) {
              std::uint64_t any = 0;
              for (std::size_t r = 0; r < k; ++r) any |= a[r * k + c];
              out[c * k + c] = any;
            }
            break;
          case Op::Union:
            for (std::size_t e = 0; e < kk; ++e) out[e] = a[e] | b[e];
            break;
          case Op::Intersection:
            for (std::size_t e = 0; e < kk; ++e) out[e] = a[e] & b[e];
            break;
          case Op::Difference:
            for (std::size_t e = 0; e < kk; ++e) out[e] = a[e] & ~b[e];
            break;
          case Op::Composition:
            for (std::size_t r = 0; r < k; ++r)
              for (std::size_t c = 0; c < k; ++c) {
                std::uint64_t acc = 0;
                for (std::size_t m = 0; m < k; ++m) acc |= a[r * k + m] & b[m * k + c];
                out[r * k + c] = acc;
              }
            break;
          case Op::Semijoin:
            for (std::size_t c = 0; c < k; ++c) {
              std::uint64_t any = 0;
              for (std::size_t m = 0; m < k; ++m) any |= b[c * k + m];
              for (std::size_t r = 0; r < k; ++r) out[r * k + c] = a[r * k + c] & any;
            }
            break;
          case Op::PrefUnion:
            for (std::size_t r = 0; r < k; ++r) {
              std::uint64_t any = 0;
              for (std::size_t c = 0; c < k; ++c) any |= a[r * k + c];
              for (std::size_t c = 0; c < k; ++c) out[r * k + c] = a[r * k + c] | (b[r * k + c] & ~any);
            }
            break;
          case Op::InjUnion: break;  // expanded before compilation
        }
        continue;
      }
      const auto& aux = prep.aux[i];
      const std::uint64_t* a = prep.values[in.a].data();
      const std::uint64_t* b = prep.values[in.b].data();
      switch (static_cast<FKind>(in.op - kFormulaBase)) {
        case FKind::True:
        case FKind::False:
        case FKind::Eq: break;
        case FKind::Atom:
          for (std::size_t asg = 0; asg < table; ++asg) out[asg] = rel_[aux[asg]];
          break;
        case FKind::Not:
          for (std::size_t asg = 0; asg < table; ++asg) out[asg] = ~a[asg];
          break;
        case FKind::And:
          for (std::size_t asg = 0; asg < table; ++asg) out[asg] = a[asg] & b[asg];
          break;
        case FKind::Or:
          for (std::size_t asg = 0; asg < table; ++asg) out[asg] = a[asg] | b[asg];
          break;
        case FKind::Implies:
          for (std::size_t asg = 0; asg < table; ++asg) out[asg] = ~a[asg] | b[asg];
          break;
        case FKind::Exists:
        case FKind::Forall: {
          const bool ex = static_cast<FKind>(in.op - kFormulaBase) == FKind::Exists;
          const std::size_t stride = ipow(k, in.arg);
          for (std::size_t asg = 0; asg < table; ++asg) {
            std::uint64_t acc = ex ? 0 : kAll;
            for (std::size_t v = 0; v < k; ++v) {
              const std::uint64_t w = a[aux[asg] + v * stride];
              acc = ex ? (acc | w) : (acc & w);
            }
            out[asg] = acc;
          }
          break;
        }
      }
    }
    const std::uint64_t* res = prep.values[p.result].data();
    if (!p.formula) {
      std::copy(res, res + kk, matrix.begin());
    } else {
      // slots: x = 0, y = 1, so (i, j) sits at i + j*k with the rest zero
      for (std::size_t r = 0; r < k; ++r)
        for (std::size_t c = 0; c < k; ++c) matrix[r * k + c] = res[r + c * k];
    }
  };

  lm_.assign(kk, 0);
  rm_.assign(kk, 0);
  const std::uint64_t lane_mask = nbits >= 6 ? kAll : ((std::uint64_t{1} << (1U << nbits)) - 1);
  const std::uint64_t batches = nbits >= 6 ? (std::uint64_t{1} << (nbits - 6)) : 1;
  for (std::size_t bit = 0; bit < std::min<std::size_t>(nbits, 6); ++bit)
    rel_[bit] = kLanePattern[bit];
  for (std::uint64_t batch = 0; batch < batches; ++batch) {
    for (std::size_t bit = 6; bit < nbits; ++bit) rel_[bit] = ((batch >> (bit - 6)) & 1U) ? kAll : 0;
    exec(left_, lp, lm_);
    exec(right_, rp, rm_);
    std::uint64_t diff = 0;
    for (std::size_t e = 0; e < kk; ++e) diff |= lm_[e] ^ rm_[e];
    diff &= lane_mask;
    if (diff != 0) return batch * 64 + static_cast<std::uint64_t>(std::countr_zero(diff));
  }
  return std::nullopt;
}

}  // namespace relalg
