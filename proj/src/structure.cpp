#include "relalg/structure.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <memory>
#include <mutex>
#include <numeric>
#include <set>

namespace relalg {

// ---------------------------------------------------------------------------
// Structure

Structure::Structure(std::vector<std::string> domain, const std::vector<std::string>& signature)
    : domain_(std::move(domain)) {
  for (std::size_t i = 0; i < domain_.size(); ++i) {
    if (!index_.emplace(domain_[i], i).second)
      throw Error("duplicate element identifier: " + domain_[i]);
  }
  for (const auto& name : signature) {
    if (!relations_.emplace(name, Relation(domain_.size())).second)
      throw Error("duplicate relation name: " + name);
  }
}

Structure Structure::from_named_pairs(
    std::vector<std::string> domain,
    const std::map<std::string, std::vector<std::pair<std::string, std::string>>>& relations) {
  std::vector<std::string> signature;
  for (const auto& [name, _] : relations) signature.push_back(name);
  Structure s(std::move(domain), signature);
  for (const auto& [name, pairs] : relations)
    for (const auto& [a, b] : pairs) s.add_pair(name, a, b);
  return s;
}

std::optional<std::size_t> Structure::find(std::string_view id) const {
  auto it = index_.find(id);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::size_t Structure::index_of(std::string_view id) const {
  auto idx = find(id);
  if (!idx) throw Error("element not in domain: " + std::string(id));
  return *idx;
}

std::vector<std::string> Structure::signature() const {
  std::vector<std::string> out;
  out.reserve(relations_.size());
  for (const auto& [name, _] : relations_) out.push_back(name);
  return out;
}

bool Structure::has_relation(std::string_view name) const {
  return relations_.find(name) != relations_.end();
}

const Relation& Structure::relation(std::string_view name) const {
  auto it = relations_.find(name);
  if (it == relations_.end()) throw Error("unknown relation symbol: " + std::string(name));
  return it->second;
}

Relation& Structure::relation(std::string_view name) {
  auto it = relations_.find(name);
  if (it == relations_.end()) throw Error("unknown relation symbol: " + std::string(name));
  return it->second;
}

void Structure::set_relation(const std::string& name, Relation r) {
  if (r.universe() != size()) throw Error("relation universe does not match domain of size " +
                                          std::to_string(size()));
  relations_[name] = std::move(r);
}

void Structure::add_pair(std::string_view name, std::string_view a, std::string_view b) {
  auto ia = find(a);
  auto ib = find(b);
  if (!ia || !ib) {
    throw Error("pair (" + std::string(a) + ", " + std::string(b) + ") in relation " +
                std::string(name) + " references an element not in the domain");
  }
  relation(name).insert(*ia, *ib);
}

Structure Structure::induced(const std::vector<std::size_t>& indices) const {
  std::vector<std::string> dom;
  dom.reserve(indices.size());
  for (auto i : indices) dom.push_back(domain_.at(i));
  Structure out(std::move(dom), {});
  for (const auto& [name, rel] : relations_) out.relations_.emplace(name, rel.restrict(indices));
  return out;
}

std::vector<std::pair<std::string, std::string>> Structure::named_pairs(const Relation& r) const {
  std::vector<std::pair<std::string, std::string>> out;
  for (const auto& [a, b] : r.pairs()) out.emplace_back(domain_[a], domain_[b]);
  std::sort(out.begin(), out.end());
  return out;
}

bool Structure::operator==(const Structure& other) const {
  return domain_ == other.domain_ && relations_ == other.relations_;
}

// ---------------------------------------------------------------------------
// Classes

std::string_view to_string(StructureClass c) {
  switch (c) {
    case StructureClass::All: return "all";
    case StructureClass::PartialFunctions: return "partial-functions";
    case StructureClass::TotalFunctions: return "total-functions";
    case StructureClass::InjectivePartialFunctions: return "injective-partial-functions";
  }
  return "all";
}

StructureClass parse_structure_class(std::string_view text) {
  if (text == "all") return StructureClass::All;
  if (text == "partial-functions" || text == "pf") return StructureClass::PartialFunctions;
  if (text == "total-functions" || text == "tf") return StructureClass::TotalFunctions;
  if (text == "injective-partial-functions" || text == "ipf")
    return StructureClass::InjectivePartialFunctions;
  throw Error("unknown structure class: " + std::string(text));
}

bool relation_in_class(const Relation& r, StructureClass c) {
  switch (c) {
    case StructureClass::All: return true;
    case StructureClass::PartialFunctions: return r.is_partial_function();
    case StructureClass::TotalFunctions: return r.is_total_function();
    case StructureClass::InjectivePartialFunctions: return r.is_injective_partial_function();
  }
  return false;
}

bool in_class(const Structure& s, StructureClass c) {
  return std::all_of(s.relations().begin(), s.relations().end(),
                     [c](const auto& kv) { return relation_in_class(kv.second, c); });
}

// ---------------------------------------------------------------------------
// Reachability

std::vector<std::size_t> reachable_indices(const Structure& s, std::size_t a,
                                           std::optional<std::size_t> radius, Reach mode) {
  const std::size_t n = s.size();
  std::vector<std::size_t> dist(n, SIZE_MAX);
  std::deque<std::size_t> queue{a};
  dist[a] = 0;
  while (!queue.empty()) {
    const std::size_t x = queue.front();
    queue.pop_front();
    if (radius && dist[x] >= *radius) continue;
    auto visit = [&](std::size_t y) {
      if (dist[y] == SIZE_MAX) {
        dist[y] = dist[x] + 1;
        queue.push_back(y);
      }
    };
    for (const auto& [_, rel] : s.relations()) {
      for (auto y : rel.successors(x)) visit(y);
      if (mode == Reach::Undirected)
        for (std::size_t y = 0; y < n; ++y)
          if (rel.contains(y, x)) visit(y);
    }
  }
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n; ++i)
    if (dist[i] != SIZE_MAX) out.push_back(i);
  return out;
}

Structure generated_substructure(const Structure& s, std::string_view a, Reach mode) {
  return s.induced(reachable_indices(s, s.index_of(a), std::nullopt, mode));
}

Structure ball(const Structure& s, std::string_view a, std::size_t radius, Reach mode) {
  return s.induced(reachable_indices(s, s.index_of(a), radius, mode));
}

Structure disjoint_union(const Structure& left, const Structure& right) {
  if (left.signature() != right.signature())
    throw Error("disjoint union requires identical signatures");
  std::vector<std::string> dom;
  dom.reserve(left.size() + right.size());
  for (const auto& e : left.domain()) dom.push_back("L:" + e);
  for (const auto& e : right.domain()) dom.push_back("R:" + e);
  Structure out(std::move(dom), left.signature());
  const std::size_t offset = left.size();
  for (const auto& [name, rel] : left.relations()) {
    Relation& dst = out.relation(name);
    for (const auto& [a, b] : rel.pairs()) dst.insert(a, b);
    for (const auto& [a, b] : right.relation(name).pairs()) dst.insert(a + offset, b + offset);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Homomorphisms

bool is_homomorphism(const Structure& a, const Structure& b, const ElementMap& h) {
  if (h.size() != a.size()) return false;
  for (const auto& [name, rel] : a.relations()) {
    const Relation& target = b.relation(name);
    for (const auto& [x, y] : rel.pairs())
      if (!target.contains(h[x], h[y])) return false;
  }
  return true;
}

namespace {

struct RelPair {
  const Relation* a;
  const Relation* b;
};

std::vector<RelPair> paired_relations(const Structure& a, const Structure& b) {
  if (a.signature() != b.signature()) throw Error("structures have different signatures");
  std::vector<RelPair> out;
  for (const auto& [name, rel] : a.relations()) out.push_back({&rel, &b.relation(name)});
  return out;
}

void hom_search(const std::vector<RelPair>& rels, std::size_t na, std::size_t nb, ElementMap& h,
                std::size_t pos, std::size_t limit, std::vector<ElementMap>& out) {
  if (out.size() >= limit) return;
  if (pos == na) {
    out.push_back(h);
    return;
  }
  for (std::size_t cand = 0; cand < nb; ++cand) {
    bool ok = true;
    for (const auto& rp : rels) {
      if (rp.a->contains(pos, pos) && !rp.b->contains(cand, cand)) ok = false;
      for (std::size_t z = 0; ok && z < pos; ++z) {
        if (rp.a->contains(pos, z) && !rp.b->contains(cand, h[z])) ok = false;
        if (rp.a->contains(z, pos) && !rp.b->contains(h[z], cand)) ok = false;
      }
      if (!ok) break;
    }
    if (!ok) continue;
    h[pos] = cand;
    hom_search(rels, na, nb, h, pos + 1, limit, out);
    if (out.size() >= limit) return;
  }
}

}  // namespace

std::vector<ElementMap> homomorphisms(const Structure& a, const Structure& b, std::size_t limit) {
  std::vector<ElementMap> out;
  if (limit == 0) return out;
  auto rels = paired_relations(a, b);
  ElementMap h(a.size(), 0);
  hom_search(rels, a.size(), b.size(), h, 0, limit, out);
  return out;
}

// ---------------------------------------------------------------------------
// Isomorphism

namespace {

std::vector<std::vector<std::size_t>> degree_profiles(const Structure& s) {
  std::vector<std::vector<std::size_t>> prof(s.size());
  for (const auto& [_, rel] : s.relations()) {
    for (std::size_t x = 0; x < s.size(); ++x) {
      prof[x].push_back(rel.out_degree(x));
      prof[x].push_back(rel.in_degree(x));
      prof[x].push_back(rel.contains(x, x) ? 1 : 0);
    }
  }
  return prof;
}

class IsoSearch {
 public:
  IsoSearch(const Structure& a, const Structure& b)
      : a_(a), b_(b), rels_(paired_relations(a, b)), prof_a_(degree_profiles(a)),
        prof_b_(degree_profiles(b)) {}

  std::optional<ElementMap> run(const std::vector<std::size_t>& anchors_a,
                                const std::vector<std::size_t>& anchors_b) {
    const std::size_t n = a_.size();
    if (n != b_.size() || anchors_a.size() != anchors_b.size()) return std::nullopt;
    h_.assign(n, SIZE_MAX);
    used_.assign(n, false);
    assigned_.clear();
    // anchors
    for (std::size_t i = 0; i < anchors_a.size(); ++i) {
      const std::size_t x = anchors_a[i];
      const std::size_t y = anchors_b[i];
      if (x >= n || y >= n) return std::nullopt;
      if (h_[x] != SIZE_MAX) {
        if (h_[x] != y) return std::nullopt;
        continue;
      }
      if (used_[y] || !consistent(x, y)) return std::nullopt;
      assign(x, y);
    }
    build_order();
    if (!search(0)) return std::nullopt;
    return h_;
  }

 private:
  void assign(std::size_t x, std::size_t y) {
    h_[x] = y;
    used_[y] = true;
    assigned_.push_back(x);
  }
  void unassign(std::size_t x) {
    used_[h_[x]] = false;
    h_[x] = SIZE_MAX;
    assigned_.pop_back();
  }

  bool consistent(std::size_t x, std::size_t y) const {
    if (prof_a_[x] != prof_b_[y]) return false;
    for (const auto& rp : rels_) {
      for (auto z : assigned_) {
        if (rp.a->contains(x, z) != rp.b->contains(y, h_[z])) return false;
        if (rp.a->contains(z, x) != rp.b->contains(h_[z], y)) return false;
      }
    }
    return true;
  }

  // Assignment order: breadth-first through undirected adjacency from the
  // anchors, so most elements have an already-mapped neighbour to follow.
  void build_order() {
    const std::size_t n = a_.size();
    order_.clear();
    guide_.clear();
    std::vector<bool> seen(n, false);
    std::deque<std::size_t> queue;
    for (auto x : assigned_) {
      seen[x] = true;
      queue.push_back(x);
    }
    auto expand = [&](std::size_t x) {
      for (std::size_t r = 0; r < rels_.size(); ++r) {
        for (auto y : rels_[r].a->successors(x)) {
          if (!seen[y]) {
            seen[y] = true;
            order_.push_back(y);
            guide_.push_back({x, r, true});
            queue.push_back(y);
          }
        }
        for (std::size_t y = 0; y < n; ++y) {
          if (!seen[y] && rels_[r].a->contains(y, x)) {
            seen[y] = true;
            order_.push_back(y);
            guide_.push_back({x, r, false});
            queue.push_back(y);
          }
        }
      }
    };
    std::size_t next_root = 0;
    while (true) {
      while (!queue.empty()) {
        auto x = queue.front();
        queue.pop_front();
        expand(x);
      }
      while (next_root < n && seen[next_root]) ++next_root;
      if (next_root == n) break;
      seen[next_root] = true;
      order_.push_back(next_root);
      guide_.push_back({SIZE_MAX, 0, true});
      queue.push_back(next_root);
    }
  }

  bool search(std::size_t pos) {
    if (pos == order_.size()) return true;
    const std::size_t x = order_[pos];
    const Guide& g = guide_[pos];
    std::vector<std::size_t> candidates;
    if (g.parent == SIZE_MAX) {
      candidates.resize(b_.size());
      std::iota(candidates.begin(), candidates.end(), 0);
    } else {
      const Relation& rb = *rels_[g.relation].b;
      const std::size_t hp = h_[g.parent];
      if (g.outgoing) {
        candidates = rb.successors(hp);
      } else {
        for (std::size_t y = 0; y < b_.size(); ++y)
          if (rb.contains(y, hp)) candidates.push_back(y);
      }
    }
    for (auto y : candidates) {
      if (used_[y] || !consistent(x, y)) continue;
      assign(x, y);
      if (search(pos + 1)) return true;
      unassign(x);
    }
    return false;
  }

  struct Guide {
    std::size_t parent;
    std::size_t relation;
    bool outgoing;
  };

  const Structure& a_;
  const Structure& b_;
  std::vector<RelPair> rels_;
  std::vector<std::vector<std::size_t>> prof_a_, prof_b_;
  ElementMap h_;
  std::vector<bool> used_;
  std::vector<std::size_t> assigned_;
  std::vector<std::size_t> order_;
  std::vector<Guide> guide_;
};

}  // namespace

std::optional<ElementMap> isomorphism(const Structure& a, const std::vector<std::size_t>& anchors_a,
                                      const Structure& b, const std::vector<std::size_t>& anchors_b) {
  if (a.size() != b.size() || a.signature() != b.signature()) return std::nullopt;
  if (anchors_a.size() != anchors_b.size()) throw Error("anchor tuples differ in length");
  IsoSearch search(a, b);
  return search.run(anchors_a, anchors_b);
}

std::vector<std::vector<Relation::Pair>> automorphism_orbits(const Structure& s,
                                                             const OrbitOptions& options) {
  const std::size_t n = s.size();
  if (n > options.max_elements) {
    throw Error("automorphism_orbits: structure has " + std::to_string(n) +
                " elements, above the bound of " + std::to_string(options.max_elements) +
                "; raise OrbitOptions::max_elements to override");
  }
  const std::size_t np = n * n;
  std::vector<std::size_t> parent(np);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto unite = [&](std::size_t x, std::size_t y) {
    x = find(x);
    y = find(y);
    if (x != y) parent[std::max(x, y)] = std::min(x, y);
  };

  // Cheap pair invariant: degree profiles of both ends plus the local edge pattern.
  const auto prof = degree_profiles(s);
  auto key = [&](std::size_t a, std::size_t b) {
    std::vector<std::size_t> k = prof[a];
    k.insert(k.end(), prof[b].begin(), prof[b].end());
    k.push_back(a == b ? 1 : 0);
    for (const auto& [_, rel] : s.relations()) {
      k.push_back(rel.contains(a, b) ? 1 : 0);
      k.push_back(rel.contains(b, a) ? 1 : 0);
    }
    return k;
  };
  std::vector<std::vector<std::size_t>> keys(np);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) keys[a * n + b] = key(a, b);

  IsoSearch search(s, s);
  std::vector<bool> done(np, false);
  std::vector<std::size_t> tested(np, SIZE_MAX);
  for (std::size_t p = 0; p < np; ++p) {
    if (done[find(p)]) continue;
    const std::size_t pa = p / n, pb = p % n;
    for (std::size_t q = p + 1; q < np; ++q) {
      if (keys[q] != keys[p]) continue;
      const std::size_t rq = find(q);
      if (rq == find(p) || tested[rq] == p) continue;
      auto sigma = search.run({pa, pb}, {q / n, q % n});
      if (!sigma) {
        tested[rq] = p;
        continue;
      }
      for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b) unite(a * n + b, (*sigma)[a] * n + (*sigma)[b]);
    }
    done[find(p)] = true;
  }

  std::map<std::size_t, std::vector<Relation::Pair>> groups;
  for (std::size_t p = 0; p < np; ++p) groups[find(p)].emplace_back(p / n, p % n);
  std::vector<std::vector<Relation::Pair>> out;
  for (auto& [_, members] : groups) out.push_back(std::move(members));
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Enumeration

std::vector<std::string> default_elements(std::size_t k) {
  std::vector<std::string> out;
  out.reserve(k);
  for (std::size_t i = 1; i <= k; ++i) out.push_back("e" + std::to_string(i));
  return out;
}

namespace {

constexpr std::size_t kMaxClassRelations = std::size_t{1} << 20;

void injections(std::size_t k, std::size_t pos, std::vector<bool>& used, Relation& cur,
                std::vector<Relation>& out) {
  if (pos == k) {
    out.push_back(cur);
    return;
  }
  injections(k, pos + 1, used, cur, out);
  for (std::size_t t = 0; t < k; ++t) {
    if (used[t]) continue;
    used[t] = true;
    cur.insert(pos, t);
    injections(k, pos + 1, used, cur, out);
    cur.erase(pos, t);
    used[t] = false;
  }
}

std::vector<Relation> build_class_relations(std::size_t k, StructureClass cls) {
  std::vector<Relation> out;
  auto check_size = [](double count) {
    if (count > static_cast<double>(kMaxClassRelations))
      throw Error("structure enumeration bound exceeded (more than 2^20 relations per symbol)");
  };
  switch (cls) {
    case StructureClass::All: {
      check_size(std::pow(2.0, static_cast<double>(k * k)));
      const std::uint64_t count = std::uint64_t{1} << (k * k);
      out.reserve(count);
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        Relation r(k);
        for (std::size_t bit = 0; bit < k * k; ++bit)
          if ((idx >> bit) & 1U) r.insert(bit / k, bit % k);
        out.push_back(std::move(r));
      }
      break;
    }
    case StructureClass::PartialFunctions:
    case StructureClass::TotalFunctions: {
      const bool total = cls == StructureClass::TotalFunctions;
      const std::uint64_t radix = total ? k : k + 1;
      check_size(std::pow(static_cast<double>(radix), static_cast<double>(k)));
      std::uint64_t count = 1;
      for (std::size_t i = 0; i < k; ++i) count *= radix;
      if (k == 0) count = 1;
      for (std::uint64_t idx = 0; idx < count; ++idx) {
        Relation r(k);
        std::uint64_t rest = idx;
        for (std::size_t x = 0; x < k; ++x) {
          const std::uint64_t digit = rest % radix;
          rest /= radix;
          if (total) r.insert(x, digit);
          else if (digit > 0) r.insert(x, digit - 1);
        }
        out.push_back(std::move(r));
      }
      break;
    }
    case StructureClass::InjectivePartialFunctions: {
      if (k > 8) check_size(1e300);
      std::vector<bool> used(k, false);
      Relation cur(k);
      injections(k, 0, used, cur, out);
      break;
    }
  }
  return out;
}

}  // namespace

const std::vector<Relation>& class_relations(std::size_t k, StructureClass cls) {
  static std::mutex mutex;
  static std::map<std::pair<std::size_t, int>, std::unique_ptr<std::vector<Relation>>> cache;
  std::lock_guard lock(mutex);
  auto& slot = cache[{k, static_cast<int>(cls)}];
  if (!slot) slot = std::make_unique<std::vector<Relation>>(build_class_relations(k, cls));
  return *slot;
}

Structure structure_at(const std::vector<std::string>& signature, std::size_t k, StructureClass cls,
                       std::uint64_t index) {
  const auto& rels = class_relations(k, cls);
  Structure s(default_elements(k), signature);
  for (const auto& name : signature) {
    s.relation(name) = rels[index % rels.size()];
    index /= rels.size();
  }
  return s;
}

StructureStream::StructureStream(std::vector<std::string> signature, std::size_t max_size,
                                 StructureClass cls, bool include_empty)
    : signature_(std::move(signature)), max_size_(max_size), cls_(cls),
      include_empty_(include_empty) {
  reset();
}

void StructureStream::reset() {
  size_ = include_empty_ ? 0 : 1;
  index_ = 0;
  started_ = false;
}

std::uint64_t StructureStream::count_of_size(std::size_t k) const {
  const std::uint64_t per = class_relations(k, cls_).size();
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < signature_.size(); ++i) total *= per;
  return total;
}

std::uint64_t StructureStream::total() const {
  std::uint64_t t = 0;
  for (std::size_t k = include_empty_ ? 0 : 1; k <= max_size_; ++k) t += count_of_size(k);
  return t;
}

bool StructureStream::next(Structure& out) {
  while (size_ <= max_size_) {
    if (index_ < count_of_size(size_)) {
      const auto& rels = class_relations(size_, cls_);
      if (!started_ || out.size() != size_ || out.signature() != signature_) {
        out = Structure(default_elements(size_), signature_);
        started_ = true;
      }
      std::uint64_t rest = index_;
      for (const auto& name : signature_) {
        out.relation(name) = rels[rest % rels.size()];
        rest /= rels.size();
      }
      ++index_;
      return true;
    }
    ++size_;
    index_ = 0;
  }
  return false;
}

std::vector<Structure> enumerate_structures(const std::vector<std::string>& signature,
                                            std::size_t max_size, StructureClass cls,
                                            bool include_empty) {
  StructureStream stream(signature, max_size, cls, include_empty);
  std::vector<Structure> out;
  Structure s;
  while (stream.next(s)) out.push_back(s);
  return out;
}

// ---------------------------------------------------------------------------
// Randomness

std::uint64_t Rng::next() {
  std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::uint64_t Rng::below(std::uint64_t n) {
  if (n <= 1) return 0;
  const std::uint64_t limit = UINT64_MAX - UINT64_MAX % n;
  std::uint64_t v;
  do {
    v = next();
  } while (v >= limit);
  return v % n;
}

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t stream) {
  Rng r(seed ^ (stream * 0xd1b54a32d192ed03ULL + 0x632be59bd9b4e019ULL));
  return r.next();
}

Structure random_structure(std::uint64_t seed, std::size_t size,
                           const std::vector<std::string>& signature, StructureClass cls) {
  Rng rng(seed);
  Structure s(default_elements(size), signature);
  if (size == 0) return s;
  for (const auto& name : signature) {
    Relation& r = s.relation(name);
    switch (cls) {
      case StructureClass::All: {
        // Density drawn per relation so samples range from sparse to dense.
        const std::uint64_t density = 1 + rng.below(6);  // out of 12
        for (std::size_t a = 0; a < size; ++a)
          for (std::size_t b = 0; b < size; ++b)
            if (rng.chance(density, 12)) r.insert(a, b);
        break;
      }
      case StructureClass::PartialFunctions: {
        const std::uint64_t undefined = rng.below(4);  // out of 8
        for (std::size_t a = 0; a < size; ++a)
          if (!rng.chance(undefined, 8)) r.insert(a, rng.below(size));
        break;
      }
      case StructureClass::TotalFunctions:
        for (std::size_t a = 0; a < size; ++a) r.insert(a, rng.below(size));
        break;
      case StructureClass::InjectivePartialFunctions: {
        std::vector<std::size_t> perm(size);
        std::iota(perm.begin(), perm.end(), 0);
        for (std::size_t i = size; i > 1; --i) std::swap(perm[i - 1], perm[rng.below(i)]);
        const std::uint64_t undefined = rng.below(4);
        for (std::size_t a = 0; a < size; ++a)
          if (!rng.chance(undefined, 8)) r.insert(a, perm[a]);
        break;
      }
    }
  }
  return s;
}

}  // namespace relalg
