#include <unordered_set>

#include "relalg/term.hpp"

namespace relalg {

ClosureResult semantic_closure(const Structure& s, const std::vector<std::string>& generators,
                               const Basis& basis, const ClosureOptions& options) {
  ClosureResult result;
  std::unordered_set<Relation, RelationHash> seen;
  std::vector<std::vector<std::size_t>> layers(2);

  // Returns false when the search has to stop.
  auto offer = [&](Relation r, const std::function<Term()>& witness, std::size_t size) {
    if (seen.contains(r)) return true;
    if (result.entries.size() >= options.max_relations) {
      result.complete = false;
      return false;
    }
    seen.insert(r);
    const bool hit = options.stop && options.stop(r);
    result.entries.push_back({std::move(r), witness()});
    if (layers.size() <= size) layers.resize(size + 1);
    layers[size].push_back(result.entries.size() - 1);
    result.max_witness_size = std::max(result.max_witness_size, size);
    if (hit) {
      result.stopped = true;
      result.complete = false;
      return false;
    }
    return true;
  };

  for (const auto& g : generators) {
    if (!offer(s.relation(g), [&] { return sym(g); }, 1)) return result;
  }
  for (Op c : {Op::Id, Op::Empty, Op::Top}) {
    if (basis.contains(c) &&
        !offer(constant_relation(c, s.size()), [&] { return Term::constant(c); }, 1))
      return result;
  }

  const auto ops = basis.ops();
  for (std::size_t size = 2; size <= 2 * result.max_witness_size + 1; ++size) {
    if (layers.size() <= size) layers.resize(size + 1);
    for (Op op : ops) {
      if (arity(op) == 1) {
        // Copy: offer() may append to earlier layers' storage.
        const auto prev = layers[size - 1];
        for (auto i : prev) {
          Relation r = apply_op(op, result.entries[i].relation);
          if (!offer(std::move(r), [&] { return Term::unary(op, result.entries[i].witness); },
                     size))
            return result;
        }
      } else if (arity(op) == 2) {
        for (std::size_t ls = 1; ls + 1 < size; ++ls) {
          const auto left = layers[ls];
          const auto right = layers[size - 1 - ls];
          for (auto i : left) {
            for (auto j : right) {
              Relation r = apply_op(op, result.entries[i].relation, result.entries[j].relation);
              if (!offer(std::move(r),
                         [&] {
                           return Term::binary(op, result.entries[i].witness,
                                               result.entries[j].witness);
                         },
                         size))
                return result;
            }
          }
        }
      }
    }
  }
  return result;
}

}  // namespace relalg
