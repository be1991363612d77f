#include "vsl/templates.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

#include "json.hpp"
#include "vsl/errors.hpp"
#include "vsl/text.hpp"

namespace vsl {
namespace detail {
std::string_view default_templates_json();
}

namespace {

constexpr std::string_view kAiMarker = "AI:";

void require_list(const std::vector<std::string>& list, const char* key,
                  std::string_view must_contain) {
  if (list.empty()) {
    throw std::invalid_argument(std::string("template list '") + key + "' is empty");
  }
  for (const auto& t : list) {
    if (t.find(must_contain) == std::string::npos) {
      throw std::invalid_argument(std::string("template in '") + key + "' lacks '" +
                                  std::string(must_contain) + "': " + t);
    }
  }
}

}  // namespace

void TemplateSet::validate() const {
  require_list(read_begin, "read_begin", kAiMarker);
  require_list(read_continue_a, "read_continue_a", kLeftTextsSlot);
  require_list(read_continue_b, "read_continue_b", kAiMarker);
  require_list(key_points, "key_points", kAiMarker);
  require_list(caption, "caption", kAiMarker);
}

std::string_view default_templates_json() { return detail::default_templates_json(); }

const TemplateSet& default_templates() {
  static const TemplateSet kDefaults = parse_templates(detail::default_templates_json());
  return kDefaults;
}

TemplateSet parse_templates(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::parse_error& e) {
    throw std::invalid_argument(std::string("template file is not valid JSON: ") + e.what());
  }
  auto list = [&](const char* key) {
    if (!doc.contains(key) || !doc[key].is_array()) {
      throw std::invalid_argument(std::string("template file missing list '") + key + "'");
    }
    std::vector<std::string> out;
    for (const auto& v : doc[key]) {
      if (!v.is_string()) {
        throw std::invalid_argument(std::string("template list '") + key + "' has a non-string");
      }
      out.push_back(v.get<std::string>());
    }
    return out;
  };
  TemplateSet set;
  set.read_begin = list("read_begin");
  set.read_continue_a = list("read_continue_a");
  set.read_continue_b = list("read_continue_b");
  set.key_points = list("key_points");
  set.caption = list("caption");
  set.validate();
  return set;
}

TemplateSet load_templates(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open template file " + path.string());
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_templates(ss.str());
}

std::string strip_image_marker(std::string_view templ) {
  std::string_view s = text::trim(templ);
  if (s.starts_with(kImageMarker)) s.remove_prefix(kImageMarker.size());
  return text::collapse_whitespace(s);
}

std::string prompt_part(std::string_view templ) {
  std::string s = strip_image_marker(templ);
  const auto pos = s.find(kAiMarker);
  if (pos == std::string::npos) {
    throw std::invalid_argument("template has no 'AI:' marker: " + std::string(templ));
  }
  return text::collapse_whitespace(std::string_view(s).substr(0, pos + kAiMarker.size()));
}

}  // namespace vsl
