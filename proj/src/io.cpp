#include "relalg/io.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "json_io.hpp"

namespace relalg {

namespace detail {

json structure_json(const Structure& s) {
  std::vector<std::string> domain = s.domain();
  std::sort(domain.begin(), domain.end());
  json relations = json::object();
  for (const auto& [name, rel] : s.relations()) {
    json pairs = json::array();
    for (const auto& [a, b] : s.named_pairs(rel)) pairs.push_back({a, b});
    relations[name] = std::move(pairs);
  }
  return {{"domain", domain}, {"relations", relations}};
}

Structure structure_from_json(const json& j) {
  if (!j.is_object()) throw Error("structure must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (key != "domain" && key != "relations") throw Error("unknown key in structure: \"" + key + "\"");
  if (!j.contains("domain")) throw Error("structure is missing \"domain\"");
  const json& d = j.at("domain");
  if (!d.is_array()) throw Error("\"domain\" must be an array of strings");
  std::vector<std::string> domain;
  for (const auto& e : d) {
    if (!e.is_string()) throw Error("\"domain\" must be an array of strings");
    domain.push_back(e.get<std::string>());
  }
  std::map<std::string, std::vector<std::pair<std::string, std::string>>> relations;
  if (j.contains("relations")) {
    const json& r = j.at("relations");
    if (!r.is_object()) throw Error("\"relations\" must be an object");
    for (const auto& [name, pairs] : r.items()) {
      if (!pairs.is_array()) throw Error("relation \"" + name + "\" must be an array of pairs");
      auto& out = relations[name];
      for (const auto& p : pairs) {
        if (!p.is_array() || p.size() != 2 || !p[0].is_string() || !p[1].is_string())
          throw Error("relation \"" + name + "\" has a malformed pair: " + p.dump());
        out.emplace_back(p[0].get<std::string>(), p[1].get<std::string>());
      }
    }
  }
  return Structure::from_named_pairs(std::move(domain), relations);
}

}  // namespace detail

Structure parse_structure(std::string_view json_text) {
  detail::json j;
  try {
    j = detail::json::parse(json_text);
  } catch (const detail::json::parse_error& e) {
    throw Error(std::string("invalid JSON: ") + e.what());
  }
  return detail::structure_from_json(j);
}

std::string structure_to_json(const Structure& s, int indent) {
  return detail::structure_json(s).dump(indent);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path);
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, std::string_view content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path);
  out << content;
}

Structure read_structure_file(const std::string& path) {
  try {
    return parse_structure(read_file(path));
  } catch (const IoError&) {
    throw;
  } catch (const Error& e) {
    throw Error(path + ": " + e.what());
  }
}

}  // namespace relalg
