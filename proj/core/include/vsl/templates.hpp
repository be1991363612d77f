#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace vsl {

/// Instruction templates in their published form, e.g.
///   "<Image>Human: what words are in the image? AI: {all texts}."
/// The prompt half of a template is everything up to and including "AI:";
/// the leading image marker is dropped when prompts are rendered.
struct TemplateSet {
  std::vector<std::string> read_begin;
  std::vector<std::string> read_continue_a;
  std::vector<std::string> read_continue_b;
  std::vector<std::string> key_points;
  std::vector<std::string> caption;

  /// Non-empty lists; read_continue_a entries contain "{left texts}";
  /// all others contain "AI:".
  void validate() const;

  friend bool operator==(const TemplateSet&, const TemplateSet&) = default;
};

inline constexpr std::string_view kImageMarker = "<Image>";
inline constexpr std::string_view kLeftTextsSlot = "{left texts}";

/// Templates compiled into the library (core/data/default_templates.json).
const TemplateSet& default_templates();
std::string_view default_templates_json();

TemplateSet parse_templates(std::string_view json_text);
TemplateSet load_templates(const std::filesystem::path& path);

/// "<Image>Human: X AI: {slot}." -> "Human: X AI:"; whitespace collapsed.
std::string prompt_part(std::string_view templ);

/// Drops the image marker and collapses whitespace, keeping the rest.
std::string strip_image_marker(std::string_view templ);

}  // namespace vsl
