#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "relalg/structure.hpp"

namespace testing {

using NamedPairs = std::set<std::pair<std::string, std::string>>;
using Relations = std::map<std::string, std::vector<std::pair<std::string, std::string>>>;

inline relalg::Structure make(std::vector<std::string> domain, const Relations& relations) {
  return relalg::Structure::from_named_pairs(std::move(domain), relations);
}

inline NamedPairs named(const relalg::Structure& s, const relalg::Relation& r) {
  const auto pairs = s.named_pairs(r);
  return {pairs.begin(), pairs.end()};
}

}  // namespace testing
