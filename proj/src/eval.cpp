#include <algorithm>
#include <bit>
#include <map>
#include <tuple>

#include "relalg/term.hpp"

namespace relalg {

Relation constant_relation(Op op, std::size_t n) {
  switch (op) {
    case Op::Id: return Relation::identity(n);
    case Op::Empty: return Relation(n);
    case Op::Top: return Relation::full(n);
    default: throw Error("not a constant: " + std::string(op_name(op)));
  }
}

Relation apply_op(Op op, const Relation& a) {
  switch (op) {
    case Op::Complement: return a.complement();
    case Op::Converse: return a.converse();
    case Op::Domain: return a.domain();
    case Op::Range: return a.range();
    case Op::Antidomain: return a.antidomain();
    default: throw Error("not a unary operation: " + std::string(op_name(op)));
  }
}

Relation apply_op(Op op, const Relation& a, const Relation& b) {
  switch (op) {
    case Op::Union: return a.unite(b);
    case Op::Intersection: return a.intersect(b);
    case Op::Difference: return a.minus(b);
    case Op::Composition: return a.compose(b);
    case Op::Semijoin: return a.semijoin(b);
    case Op::PrefUnion: return a.preferential_union(b);
    case Op::InjUnion: return a.injective_union(b);
    default: throw Error("not a binary operation: " + std::string(op_name(op)));
  }
}

Relation eval(const Term& t, const Structure& s) {
  switch (arity(t.op())) {
    case 0:
      if (t.op() == Op::Symbol) {
        if (!s.has_relation(t.name())) throw Error("unknown relation symbol: " + t.name());
        return s.relation(t.name());
      }
      return constant_relation(t.op(), s.size());
    case 1: return apply_op(t.op(), eval(t.operand(), s));
    default: {
      return apply_op(t.op(), eval(t.left(), s), eval(t.right(), s));
    }
  }
}

// ---------------------------------------------------------------------------
// CompiledTerm

namespace {

using Key = std::tuple<int, std::uint32_t, std::uint32_t, std::uint32_t>;

bool all_zero(const std::uint64_t* rows, std::size_t n) {
  for (std::size_t i = 0; i < n; ++i)
    if (rows[i] != 0) return false;
  return true;
}

}  // namespace

CompiledTerm::CompiledTerm(const Term& t) : term_(t) {
  std::map<Key, std::uint32_t> table;
  std::map<std::string, std::uint32_t> symbol_index;
  // Recursive hash-consing; injective union is expanded into its definition.
  std::function<std::uint32_t(Op, std::uint32_t, std::uint32_t, std::uint32_t)> node =
      [&](Op op, std::uint32_t a, std::uint32_t b, std::uint32_t symbol) {
        const Key key{static_cast<int>(op), a, b, symbol};
        auto it = table.find(key);
        if (it != table.end()) return it->second;
        const auto idx = static_cast<std::uint32_t>(nodes_.size());
        nodes_.push_back({op, a, b, symbol});
        table.emplace(key, idx);
        return idx;
      };
  std::function<std::uint32_t(const Term&)> rec = [&](const Term& u) -> std::uint32_t {
    switch (arity(u.op())) {
      case 0:
        if (u.op() == Op::Symbol) {
          auto [it, inserted] =
              symbol_index.emplace(u.name(), static_cast<std::uint32_t>(symbols_.size()));
          if (inserted) symbols_.push_back(u.name());
          return node(Op::Symbol, 0, 0, it->second);
        }
        return node(u.op(), 0, 0, 0);
      case 1: return node(u.op(), rec(u.operand()), 0, 0);
      default: {
        const std::uint32_t l = rec(u.left());
        const std::uint32_t r = rec(u.right());
        if (u.op() == Op::InjUnion) {
          const std::uint32_t fwd = node(Op::PrefUnion, l, r, 0);
          const std::uint32_t back = node(Op::Converse,
                                          node(Op::PrefUnion, node(Op::Converse, l, 0, 0),
                                               node(Op::Converse, r, 0, 0), 0),
                                          0, 0);
          return node(Op::Intersection, fwd, back, 0);
        }
        return node(u.op(), l, r, 0);
      }
    }
  };
  root_ = rec(t);
  stamp_.assign(nodes_.size(), 0);
  bound_.assign(symbols_.size(), nullptr);
}

const std::uint64_t* CompiledTerm::value(std::uint32_t idx) {
  std::uint64_t* out = values_.data() + static_cast<std::size_t>(idx) * n_;
  if (stamp_[idx] == epoch_) return out;
  const Node nd = nodes_[idx];
  const std::size_t n = n_;
  const std::uint64_t full = full_row_mask_;
  switch (nd.op) {
    case Op::Symbol: {
      const Relation& r = *bound_[nd.symbol];
      for (std::size_t i = 0; i < n; ++i) out[i] = r.row(i)[0];
      break;
    }
    case Op::Id:
      for (std::size_t i = 0; i < n; ++i) out[i] = std::uint64_t{1} << i;
      break;
    case Op::Empty: std::fill(out, out + n, 0); break;
    case Op::Top: std::fill(out, out + n, full); break;
    case Op::Complement: {
      const std::uint64_t* a = value(nd.a);
      for (std::size_t i = 0; i < n; ++i) out[i] = ~a[i] & full;
      break;
    }
    case Op::Converse: {
      const std::uint64_t* a = value(nd.a);
      std::fill(out, out + n, 0);
      for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t bits = a[i];
        while (bits != 0) {
          out[std::countr_zero(bits)] |= std::uint64_t{1} << i;
          bits &= bits - 1;
        }
      }
      break;
    }
    case Op::Domain: {
      const std::uint64_t* a = value(nd.a);
      for (std::size_t i = 0; i < n; ++i) out[i] = a[i] != 0 ? std::uint64_t{1} << i : 0;
      break;
    }
    case Op::Antidomain: {
      const std::uint64_t* a = value(nd.a);
      for (std::size_t i = 0; i < n; ++i) out[i] = a[i] == 0 ? std::uint64_t{1} << i : 0;
      break;
    }
    case Op::Range: {
      const std::uint64_t* a = value(nd.a);
      std::uint64_t mask = 0;
      for (std::size_t i = 0; i < n; ++i) mask |= a[i];
      for (std::size_t i = 0; i < n; ++i) out[i] = mask & (std::uint64_t{1} << i);
      break;
    }
    case Op::Union: {
      const std::uint64_t* a = value(nd.a);
      const std::uint64_t* b = value(nd.b);
      for (std::size_t i = 0; i < n; ++i) out[i] = a[i] | b[i];
      break;
    }
    case Op::Intersection: {
      const std::uint64_t* a = value(nd.a);
      if (all_zero(a, n)) {
        std::fill(out, out + n, 0);
        break;
      }
      const std::uint64_t* b = value(nd.b);
      for (std::size_t i = 0; i < n; ++i) out[i] = a[i] & b[i];
      break;
    }
    case Op::Difference: {
      const std::uint64_t* a = value(nd.a);
      if (all_zero(a, n)) {
        std::fill(out, out + n, 0);
        break;
      }
      const std::uint64_t* b = value(nd.b);
      for (std::size_t i = 0; i < n; ++i) out[i] = a[i] & ~b[i];
      break;
    }
    case Op::Composition: {
      const std::uint64_t* a = value(nd.a);
      if (all_zero(a, n)) {
        std::fill(out, out + n, 0);
        break;
      }
      const std::uint64_t* b = value(nd.b);
      for (std::size_t i = 0; i < n; ++i) {
        std::uint64_t acc = 0;
        std::uint64_t bits = a[i];
        while (bits != 0) {
          acc |= b[std::countr_zero(bits)];
          bits &= bits - 1;
        }
        out[i] = acc;
      }
      break;
    }
    case Op::Semijoin: {
      const std::uint64_t* a = value(nd.a);
      if (all_zero(a, n)) {
        std::fill(out, out + n, 0);
        break;
      }
      const std::uint64_t* b = value(nd.b);
      std::uint64_t mask = 0;
      for (std::size_t i = 0; i < n; ++i)
        if (b[i] != 0) mask |= std::uint64_t{1} << i;
      for (std::size_t i = 0; i < n; ++i) out[i] = a[i] & mask;
      break;
    }
    case Op::PrefUnion: {
      const std::uint64_t* a = value(nd.a);
      const std::uint64_t* b = value(nd.b);
      for (std::size_t i = 0; i < n; ++i) out[i] = a[i] != 0 ? a[i] : b[i];
      break;
    }
    case Op::InjUnion: break;  // expanded at compile time
  }
  stamp_[idx] = epoch_;
  return out;
}

Relation CompiledTerm::eval(const Structure& s) {
  const std::size_t n = s.size();
  if (n > 64) return relalg::eval(term_, s);
  for (std::size_t i = 0; i < symbols_.size(); ++i) {
    if (!s.has_relation(symbols_[i])) throw Error("unknown relation symbol: " + symbols_[i]);
    bound_[i] = &s.relation(symbols_[i]);
  }
  n_ = n;
  full_row_mask_ = n == 64 ? ~std::uint64_t{0} : ((std::uint64_t{1} << n) - 1);
  if (values_.size() < nodes_.size() * n) values_.resize(nodes_.size() * n);
  if (++epoch_ == 0) {
    std::fill(stamp_.begin(), stamp_.end(), 0);
    epoch_ = 1;
  }
  Relation out(n);
  if (n == 0) return out;
  const std::uint64_t* rows = value(root_);
  for (std::size_t i = 0; i < n; ++i) out.row(i)[0] = rows[i];
  return out;
}

}  // namespace relalg
