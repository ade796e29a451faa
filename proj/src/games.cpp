#include "relalg/games.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace relalg {

namespace {

using Pebbles = std::vector<std::pair<std::uint8_t, std::uint8_t>>;

class Game {
 public:
  Game(const Structure& a, const Structure& b) : a_(a), b_(b) {
    std::set<std::string> names;
    for (const auto& s : a.signature()) names.insert(s);
    for (const auto& s : b.signature()) names.insert(s);
    for (const auto& name : names) {
      rel_a_.push_back(a.has_relation(name) ? a.relation(name) : Relation(a.size()));
      rel_b_.push_back(b.has_relation(name) ? b.relation(name) : Relation(b.size()));
    }
  }

  bool extends(const Pebbles& pos, std::size_t x, std::size_t y) const {
    for (std::size_t r = 0; r < rel_a_.size(); ++r)
      if (rel_a_[r].contains(x, x) != rel_b_[r].contains(y, y)) return false;
    for (const auto& [p, q] : pos) {
      if ((p == x) != (q == y)) return false;
      for (std::size_t r = 0; r < rel_a_.size(); ++r) {
        if (rel_a_[r].contains(p, x) != rel_b_[r].contains(q, y)) return false;
        if (rel_a_[r].contains(x, p) != rel_b_[r].contains(y, q)) return false;
      }
    }
    return true;
  }

  static Pebbles with(const Pebbles& pos, std::size_t x, std::size_t y) {
    Pebbles next = pos;
    const std::pair<std::uint8_t, std::uint8_t> pair{static_cast<std::uint8_t>(x),
                                                     static_cast<std::uint8_t>(y)};
    const auto it = std::lower_bound(next.begin(), next.end(), pair);
    if (it == next.end() || *it != pair) next.insert(it, pair);
    return next;
  }

  // `pos` is a partial isomorphism.
  bool duplicator_wins(const Pebbles& pos, std::size_t r) {
    if (r == 0) return true;
    const auto key = std::make_pair(pos, r);
    if (const auto it = memo_.find(key); it != memo_.end()) return it->second;
    bool wins = true;
    for (std::size_t x = 0; x < a_.size() && wins; ++x) {
      bool answered = false;
      for (std::size_t y = 0; y < b_.size() && !answered; ++y)
        answered = extends(pos, x, y) && duplicator_wins(with(pos, x, y), r - 1);
      wins = answered;
    }
    for (std::size_t y = 0; y < b_.size() && wins; ++y) {
      bool answered = false;
      for (std::size_t x = 0; x < a_.size() && !answered; ++x)
        answered = extends(pos, x, y) && duplicator_wins(with(pos, x, y), r - 1);
      wins = answered;
    }
    memo_.emplace(key, wins);
    return wins;
  }

 private:
  const Structure& a_;
  const Structure& b_;
  std::vector<Relation> rel_a_;
  std::vector<Relation> rel_b_;
  std::map<std::pair<Pebbles, std::size_t>, bool> memo_;
};

void check_bounds(const Structure& a, const Structure& b, std::size_t r, const GameBounds& bounds) {
  const std::size_t limit = std::min<std::size_t>(bounds.max_domain, 256);
  if (a.size() > limit || b.size() > limit)
    throw Error("game domain bound exceeded: " + std::to_string(std::max(a.size(), b.size())) +
                " > " + std::to_string(limit));
  if (r > bounds.max_rank)
    throw Error("game rank bound exceeded: " + std::to_string(r) + " > " +
                std::to_string(bounds.max_rank));
}

}  // namespace

bool ef_equiv(const Structure& a, const std::vector<std::string>& pebbles_a, const Structure& b,
              const std::vector<std::string>& pebbles_b, std::size_t r, const GameBounds& bounds) {
  if (pebbles_a.size() != pebbles_b.size())
    throw Error("pebble tuples differ in length: " + std::to_string(pebbles_a.size()) + " vs " +
                std::to_string(pebbles_b.size()));
  check_bounds(a, b, r, bounds);
  Game game(a, b);
  Pebbles pos;
  for (std::size_t i = 0; i < pebbles_a.size(); ++i) {
    const std::size_t x = a.index_of(pebbles_a[i]);
    const std::size_t y = b.index_of(pebbles_b[i]);
    if (!game.extends(pos, x, y)) return false;
    pos = Game::with(pos, x, y);
  }
  return game.duplicator_wins(pos, r);
}

std::optional<std::size_t> min_distinguishing_rank(const Structure& a, const Structure& b,
                                                   std::size_t max_r, const GameBounds& bounds) {
  check_bounds(a, b, max_r, bounds);
  Game game(a, b);
  for (std::size_t r = 0; r <= max_r; ++r)
    if (!game.duplicator_wins({}, r)) return r;
  return std::nullopt;
}

Structure shuffled_copy(const Structure& s, std::uint64_t seed) {
  Rng rng(seed);
  std::vector<std::size_t> order(s.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t i = order.size(); i > 1; --i) std::swap(order[i - 1], order[rng.below(i)]);
  std::vector<std::size_t> position(s.size());
  for (std::size_t i = 0; i < order.size(); ++i) position[order[i]] = i;
  std::vector<std::string> domain;
  for (std::size_t i = 0; i < s.size(); ++i) domain.push_back("v" + std::to_string(i + 1));
  Structure out(domain, s.signature());
  for (const auto& [name, rel] : s.relations()) {
    Relation& target = out.relation(name);
    for (const auto& [x, y] : rel.pairs()) target.insert(position[x], position[y]);
  }
  return out;
}

FvReport check_fv_disjoint_union(std::size_t r, std::size_t samples, std::size_t max_size,
                                 std::uint64_t seed, const GameBounds& bounds) {
  FvReport report;
  report.rank = r;
  report.samples = samples;
  report.max_size = max_size;
  report.seed = seed;
  const std::vector<std::string> signature{"E"};
  for (std::size_t i = 0; i < samples; ++i) {
    Rng rng(mix_seed(seed, i));
    auto draw = [&] {
      return random_structure(rng.next(), 1 + rng.below(max_size), signature, StructureClass::All);
    };
    auto partner = [&](const Structure& s) {
      return rng.chance(1, 2) ? shuffled_copy(s, rng.next()) : draw();
    };
    FvQuadruple q;
    q.a = draw();
    q.a_prime = partner(q.a);
    q.b = draw();
    q.b_prime = partner(q.b);
    if (!ef_equiv(q.a, {}, q.a_prime, {}, r, bounds) || !ef_equiv(q.b, {}, q.b_prime, {}, r, bounds)) {
      ++report.skipped;
      continue;
    }
    ++report.premises_held;
    if (!ef_equiv(disjoint_union(q.a, q.b), {}, disjoint_union(q.a_prime, q.b_prime), {}, r, bounds))
      report.violations.push_back(std::move(q));
  }
  return report;
}

}  // namespace relalg
