#pragma once

#include <string>
#include <string_view>

#include "relalg/structure.hpp"

namespace relalg {

class IoError : public Error {
 public:
  using Error::Error;
};

/// {"domain": [...], "relations": {"f": [["a","b"], ...]}}. Unknown keys and
/// pairs naming unknown elements are rejected.
Structure parse_structure(std::string_view json_text);
/// Elements and pairs sorted lexicographically.
std::string structure_to_json(const Structure& s, int indent = 2);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view content);
Structure read_structure_file(const std::string& path);

}  // namespace relalg
