#include "vsl/templates.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <map>

namespace vsl {
namespace {

std::map<std::string, std::vector<std::string>> read_fixture() {
  std::ifstream in(std::string(VSL_FIXTURES_DIR) + "/instruction_templates.txt");
  std::map<std::string, std::vector<std::string>> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    const auto bar = line.find('|');
    out[line.substr(0, bar)].push_back(line.substr(bar + 1));
  }
  return out;
}

TEST(DefaultTemplates, MatchTranscribedTable) {
  const auto fixture = read_fixture();
  const TemplateSet& t = default_templates();
  EXPECT_EQ(t.read_begin, fixture.at("read_begin"));
  EXPECT_EQ(t.read_continue_a, fixture.at("read_continue_a"));
  EXPECT_EQ(t.read_continue_b, fixture.at("read_continue_b"));
  EXPECT_EQ(t.key_points, fixture.at("key_points"));
}

TEST(DefaultTemplates, Counts) {
  const TemplateSet& t = default_templates();
  EXPECT_EQ(t.read_begin.size(), 17u);
  EXPECT_EQ(t.read_continue_a.size(), 11u);
  EXPECT_EQ(t.read_continue_b.size(), 4u);
  EXPECT_EQ(t.key_points.size(), 10u);
  EXPECT_EQ(t.caption.size(), 11u);
  EXPECT_NE(std::find(t.caption.begin(), t.caption.end(),
                      "<Image>Human: Provide a brief description of the given image. AI: {caption}."),
            t.caption.end());
}

TEST(DefaultTemplates, ShippedFileEqualsCompiledCopy) {
  const auto path = std::string(VSL_FIXTURES_DIR) + "/../../core/data/default_templates.json";
  EXPECT_EQ(load_templates(path), default_templates());
}

TEST(PromptPart, StripsMarkerAndSlot) {
  EXPECT_EQ(prompt_part("<Image>Human: what words are in the image? AI: {all texts}."),
            "Human: what words are in the image? AI:");
  EXPECT_EQ(prompt_part("Continue reading the text. AI: {right texts}."),
            "Continue reading the text. AI:");
  EXPECT_EQ(strip_image_marker("<Image>Human: The words on this picture are  {left texts}."),
            "Human: The words on this picture are {left texts}.");
  EXPECT_THROW(prompt_part("Human: no marker"), std::invalid_argument);
}

TEST(ParseTemplates, Validation) {
  EXPECT_THROW(parse_templates("{"), std::invalid_argument);
  EXPECT_THROW(parse_templates(R"({"read_begin": []})"), std::invalid_argument);
  const std::string ok = R"({
    "read_begin": ["Human: read AI: {all texts}."],
    "read_continue_a": ["Human: it says {left texts}."],
    "read_continue_b": ["Go on. AI: {right texts}."],
    "key_points": ["Human: points? AI: {key points}."],
    "caption": ["Human: describe. AI: {caption}."]
  })";
  EXPECT_NO_THROW(parse_templates(ok));
  std::string missing_slot = ok;
  missing_slot.replace(missing_slot.find("{left texts}"), 12, "nothing");
  EXPECT_THROW(parse_templates(missing_slot), std::invalid_argument);
  std::string empty_caption = ok;
  empty_caption.replace(empty_caption.find("[\"Human: describe."), 34, "[]");
  EXPECT_THROW(parse_templates(empty_caption), std::invalid_argument);
}

}  // namespace
}  // namespace vsl
