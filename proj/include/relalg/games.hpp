#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "relalg/structure.hpp"

namespace relalg {

struct GameBounds {
  std::size_t max_domain = 64;
  std::size_t max_rank = 4;
};

/// Duplicator wins the r-round first-order Ehrenfeucht-Fraisse game on
/// (A, pebbles_a) and (B, pebbles_b). Relations missing from one side are
/// read as empty.
bool ef_equiv(const Structure& a, const std::vector<std::string>& pebbles_a, const Structure& b,
              const std::vector<std::string>& pebbles_b, std::size_t r,
              const GameBounds& bounds = {});

/// Least r <= max_r at which A and B are distinguished, if any.
std::optional<std::size_t> min_distinguishing_rank(const Structure& a, const Structure& b,
                                                   std::size_t max_r,
                                                   const GameBounds& bounds = {});

struct FvQuadruple {
  Structure a, a_prime, b, b_prime;
};

struct FvReport {
  std::size_t rank = 0;
  std::size_t samples = 0;
  std::size_t max_size = 0;
  std::uint64_t seed = 0;
  std::size_t premises_held = 0;
  std::size_t skipped = 0;
  std::vector<FvQuadruple> violations;
};

/// Samples quadruples (A, A', B, B') of structures over {E} with at most
/// `max_size` elements; A' (B') is a shuffled copy of A (B) or an
/// independent sample. Whenever A ≡r A' and B ≡r B', checks A+B ≡r A'+B'.
FvReport check_fv_disjoint_union(std::size_t r, std::size_t samples, std::size_t max_size,
                                 std::uint64_t seed, const GameBounds& bounds = {});

/// Copy of `s` with elements renamed and listed in a seeded random order.
Structure shuffled_copy(const Structure& s, std::uint64_t seed);

}  // namespace relalg
