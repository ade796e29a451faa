#include "relalg/relation.hpp"

#include <algorithm>
#include <bit>

namespace relalg {

Relation::Relation(std::size_t n) : n_(n), words_((n + 63) / 64), bits_(n * ((n + 63) / 64), 0) {}

Relation Relation::identity(std::size_t n) {
  Relation r(n);
  for (std::size_t i = 0; i < n; ++i) r.insert(i, i);
  return r;
}

Relation Relation::full(std::size_t n) {
  Relation r(n);
  if (n == 0) return r;
  const std::uint64_t tail = r.tail_mask();
  for (std::size_t i = 0; i < n; ++i) {
    auto row = r.row(i);
    std::fill(row.begin(), row.end(), ~std::uint64_t{0});
    row.back() = tail;
  }
  return r;
}

Relation Relation::from_pairs(std::size_t n, std::span<const Pair> pairs) {
  Relation r(n);
  for (const auto& [a, b] : pairs) {
    if (a >= n || b >= n) throw Error("pair index out of range");
    r.insert(a, b);
  }
  return r;
}

std::uint64_t Relation::tail_mask() const {
  const std::size_t rem = n_ & 63;
  return rem == 0 ? ~std::uint64_t{0} : ((std::uint64_t{1} << rem) - 1);
}

void Relation::require_same_universe(const Relation& other) const {
  if (n_ != other.n_) throw Error("relations over different universes");
}

bool Relation::empty() const {
  return std::all_of(bits_.begin(), bits_.end(), [](std::uint64_t w) { return w == 0; });
}

std::size_t Relation::count() const {
  std::size_t c = 0;
  for (auto w : bits_) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

bool Relation::row_empty(std::size_t a) const {
  for (auto w : row(a))
    if (w != 0) return false;
  return true;
}

std::size_t Relation::out_degree(std::size_t a) const {
  std::size_t c = 0;
  for (auto w : row(a)) c += static_cast<std::size_t>(std::popcount(w));
  return c;
}

std::size_t Relation::in_degree(std::size_t b) const {
  std::size_t c = 0;
  for (std::size_t a = 0; a < n_; ++a) c += contains(a, b) ? 1 : 0;
  return c;
}

std::vector<std::size_t> Relation::successors(std::size_t a) const {
  std::vector<std::size_t> out;
  auto r = row(a);
  for (std::size_t w = 0; w < words_; ++w) {
    std::uint64_t bits = r[w];
    while (bits != 0) {
      out.push_back(w * 64 + static_cast<std::size_t>(std::countr_zero(bits)));
      bits &= bits - 1;
    }
  }
  return out;
}

std::vector<Relation::Pair> Relation::pairs() const {
  std::vector<Pair> out;
  for (std::size_t a = 0; a < n_; ++a)
    for (auto b : successors(a)) out.emplace_back(a, b);
  return out;
}

bool Relation::is_partial_function() const {
  for (std::size_t a = 0; a < n_; ++a)
    if (out_degree(a) > 1) return false;
  return true;
}

bool Relation::is_total_function() const {
  for (std::size_t a = 0; a < n_; ++a)
    if (out_degree(a) != 1) return false;
  return true;
}

bool Relation::is_injective_partial_function() const {
  return is_partial_function() && converse().is_partial_function();
}

bool Relation::subset_of(const Relation& other) const {
  require_same_universe(other);
  for (std::size_t i = 0; i < bits_.size(); ++i)
    if ((bits_[i] & ~other.bits_[i]) != 0) return false;
  return true;
}

Relation Relation::complement() const {
  Relation r = full(n_);
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] &= ~bits_[i];
  return r;
}

Relation Relation::converse() const {
  Relation r(n_);
  for (std::size_t a = 0; a < n_; ++a)
    for (auto b : successors(a)) r.insert(b, a);
  return r;
}

Relation Relation::domain() const {
  Relation r(n_);
  for (std::size_t a = 0; a < n_; ++a)
    if (!row_empty(a)) r.insert(a, a);
  return r;
}

Relation Relation::range() const {
  Relation r(n_);
  std::vector<std::uint64_t> cols(words_, 0);
  for (std::size_t a = 0; a < n_; ++a) {
    auto rw = row(a);
    for (std::size_t w = 0; w < words_; ++w) cols[w] |= rw[w];
  }
  for (std::size_t b = 0; b < n_; ++b)
    if ((cols[b >> 6] >> (b & 63)) & 1U) r.insert(b, b);
  return r;
}

Relation Relation::antidomain() const {
  Relation r(n_);
  for (std::size_t a = 0; a < n_; ++a)
    if (row_empty(a)) r.insert(a, a);
  return r;
}

Relation Relation::unite(const Relation& other) const {
  require_same_universe(other);
  Relation r = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] |= other.bits_[i];
  return r;
}

Relation Relation::intersect(const Relation& other) const {
  require_same_universe(other);
  Relation r = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] &= other.bits_[i];
  return r;
}

Relation Relation::minus(const Relation& other) const {
  require_same_universe(other);
  Relation r = *this;
  for (std::size_t i = 0; i < bits_.size(); ++i) r.bits_[i] &= ~other.bits_[i];
  return r;
}

Relation Relation::compose(const Relation& other) const {
  require_same_universe(other);
  Relation r(n_);
  for (std::size_t a = 0; a < n_; ++a) {
    auto out = r.row(a);
    for (auto k : successors(a)) {
      auto src = other.row(k);
      for (std::size_t w = 0; w < words_; ++w) out[w] |= src[w];
    }
  }
  return r;
}

Relation Relation::semijoin(const Relation& other) const {
  require_same_universe(other);
  Relation r(n_);
  for (std::size_t a = 0; a < n_; ++a)
    for (auto b : successors(a))
      if (!other.row_empty(b)) r.insert(a, b);
  return r;
}

Relation Relation::preferential_union(const Relation& other) const {
  require_same_universe(other);
  Relation r = *this;
  for (std::size_t a = 0; a < n_; ++a) {
    if (!row_empty(a)) continue;
    auto src = other.row(a);
    std::copy(src.begin(), src.end(), r.row(a).begin());
  }
  return r;
}

Relation Relation::injective_union(const Relation& other) const {
  const Relation forward = preferential_union(other);
  const Relation backward = converse().preferential_union(other.converse()).converse();
  return forward.intersect(backward);
}

Relation Relation::restrict(std::span<const std::size_t> keep) const {
  Relation r(keep.size());
  for (std::size_t i = 0; i < keep.size(); ++i)
    for (std::size_t j = 0; j < keep.size(); ++j)
      if (contains(keep[i], keep[j])) r.insert(i, j);
  return r;
}

Relation Relation::relabel(std::span<const std::size_t> map, std::size_t n) const {
  Relation r(n);
  for (std::size_t a = 0; a < n_; ++a)
    for (auto b : successors(a)) r.insert(map[a], map[b]);
  return r;
}

bool Relation::operator<(const Relation& other) const {
  if (n_ != other.n_) return n_ < other.n_;
  return bits_ < other.bits_;
}

std::size_t Relation::hash() const {
  std::uint64_t h = 0x9e3779b97f4a7c15ULL ^ n_;
  for (auto w : bits_) {
    h ^= w + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
    h *= 0xff51afd7ed558ccdULL;
  }
  return static_cast<std::size_t>(h ^ (h >> 33));
}

}  // namespace relalg
