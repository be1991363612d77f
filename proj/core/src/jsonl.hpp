#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <string>

#include "json.hpp"
#include "vsl/errors.hpp"

namespace vsl::detail {

using ordered_json = nlohmann::ordered_json;

/// Calls fn(line_number, text) for each non-blank line; line numbers are 1-based.
inline void for_each_line(const std::filesystem::path& path,
                          const std::function<void(std::size_t, const std::string&)>& fn) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.find_first_not_of(" \t") == std::string::npos) continue;
    fn(number, line);
  }
}

/// "id" may be a string or an integer.
inline std::string id_of(const nlohmann::json& obj) {
  const auto it = obj.find("id");
  if (it == obj.end()) throw std::invalid_argument("missing \"id\"");
  if (it->is_string()) return it->get<std::string>();
  if (it->is_number_integer()) return it->dump();
  throw std::invalid_argument("\"id\" must be a string or integer");
}

/// UTF-8 dump with invalid sequences replaced; never throws on bad bytes.
template <typename Json>
std::string dump_compact(const Json& j) {
  return j.dump(-1, ' ', false, nlohmann::json::error_handler_t::replace);
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot write " + path.string());
  out << content;
  if (!out) throw IoError("write failed for " + path.string());
}

}  // namespace vsl::detail
