#include "vsl/instruction_builder.hpp"

#include <gtest/gtest.h>

#include <map>
#include <regex>

#include "vsl/text.hpp"

namespace vsl {
namespace {

const SampleMeta kMeta{"s1", "docvqa", "img/1.png"};
const std::regex kPromptPattern("^Human: .* AI:$");

bool well_formed(const InstructionSample& s) {
  return std::regex_match(text::collapse_whitespace(s.prompt), kPromptPattern) && !s.target.empty();
}

std::vector<std::string> words(int n) {
  std::vector<std::string> w;
  for (int i = 1; i <= n; ++i) w.push_back("w" + std::to_string(i));
  return w;
}

TEST(TaskType, RoundTrip) {
  for (auto t : {TaskType::vqa, TaskType::ie, TaskType::nli, TaskType::caption,
                 TaskType::text_reading, TaskType::key_points}) {
    EXPECT_EQ(parse_task(to_string(t)), t);
  }
  EXPECT_THROW(parse_task("ocr"), std::invalid_argument);
}

TEST(FormatVqa, Substitution) {
  const auto s = format_vqa("What is the date?", "March 4", kMeta);
  EXPECT_EQ(s.prompt, "Human: What is the date? AI:");
  EXPECT_EQ(s.target, "March 4");
  EXPECT_EQ(s.task, TaskType::vqa);
  EXPECT_EQ(s.id, "s1");
  EXPECT_EQ(s.image_ref, "img/1.png");
  EXPECT_EQ(format_vqa("Is x shown?", "Yes", kMeta).target, "Yes");
}

TEST(FormatVqa, TrimsQuestion) {
  EXPECT_EQ(format_vqa("What is the date?  \t\n", "March 4", kMeta).prompt,
            "Human: What is the date? AI:");
  EXPECT_EQ(format_vqa("  What is   the date?", "x", kMeta).prompt,
            "Human: What is the date? AI:");
}

TEST(FormatVqa, EmptyFields) {
  EXPECT_THROW(format_vqa("", "a", kMeta), std::invalid_argument);
  EXPECT_THROW(format_vqa("q", "  ", kMeta), std::invalid_argument);
}

TEST(FormatIe, CategoriesInOrderWithNone) {
  const std::vector<IeField> fields = {{"advertiser", "NBC"}, {"gross_amount", std::nullopt}};
  const auto out = format_ie(fields, kMeta);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].prompt, "Human: What is the value for the advertiser? AI:");
  EXPECT_EQ(out[0].target, "NBC");
  EXPECT_EQ(out[1].prompt, "Human: What is the value for the gross_amount? AI:");
  EXPECT_EQ(out[1].target, "None");
  EXPECT_EQ(out[1].task, TaskType::ie);
}

TEST(FormatIe, EmptyCategory) {
  const std::vector<IeField> fields = {{"", "x"}};
  EXPECT_THROW(format_ie(fields, kMeta), std::invalid_argument);
}

TEST(FormatNli, Labels) {
  const auto yes = format_nli("the total is 5", 1, kMeta);
  EXPECT_EQ(yes.prompt, "Human: the total is 5, Yes or No? AI:");
  EXPECT_EQ(yes.target, "Yes");
  EXPECT_EQ(format_nli("the total is 5", 0, kMeta).target, "No");
  EXPECT_THROW(format_nli("the total is 5", 2, kMeta), std::invalid_argument);
  EXPECT_THROW(format_nli("the total is 5", -1, kMeta), std::invalid_argument);
}

TEST(FormatCaption, DeterministicAndUniform) {
  const TemplateSet& t = default_templates();
  Rng a(42), b(42);
  EXPECT_EQ(format_caption("a red bus", t, a, kMeta), format_caption("a red bus", t, b, kMeta));

  Rng rng(7);
  std::map<std::string, int> freq;
  constexpr int kDraws = 11000;
  for (int i = 0; i < kDraws; ++i) {
    const auto s = format_caption("a red bus", t, rng, kMeta);
    EXPECT_EQ(s.target, "a red bus");
    ++freq[s.prompt];
  }
  ASSERT_EQ(freq.size(), 11u);
  for (const auto& [prompt, n] : freq) {
    EXPECT_NEAR(double(n) / kDraws, 1.0 / 11.0, 0.01) << prompt;
  }
}

TEST(FormatCaption, EmptyTemplateList) {
  TemplateSet t = default_templates();
  t.caption.clear();
  Rng rng(1);
  EXPECT_THROW(format_caption("x", t, rng, kMeta), std::invalid_argument);
}

TEST(SplitDistribution, SumsToOneAndMergesCollisions) {
  for (std::size_t L = 1; L <= 40; ++L) {
    const auto dist = split_distribution(L);
    double sum = 0.0;
    for (const auto& c : dist) sum += c.probability;
    EXPECT_NEAR(sum, 1.0, 1e-15);
    EXPECT_EQ(dist.front().position, 0u);
    EXPECT_GE(dist.front().probability, 0.5);
    for (std::size_t i = 1; i < dist.size(); ++i) EXPECT_LT(dist[i - 1].position, dist[i].position);
  }
  const auto six = split_distribution(6);
  ASSERT_EQ(six.size(), 6u);
  for (std::size_t k = 0; k < 6; ++k) EXPECT_EQ(six[k].position, k);
  const auto one = split_distribution(1);
  ASSERT_EQ(one.size(), 1u);
  EXPECT_NEAR(one[0].probability, 1.0, 1e-15);
  // L = 3: positions 0,0,1,1,2,2.
  const auto three = split_distribution(3);
  ASSERT_EQ(three.size(), 3u);
  EXPECT_NEAR(three[0].probability, 0.6, 1e-15);
  EXPECT_NEAR(three[1].probability, 0.2, 1e-15);
}

TEST(DrawSplitPosition, Frequencies) {
  constexpr std::size_t L = 60;
  constexpr int kDraws = 100000;
  Rng rng(2023);
  std::map<std::size_t, int> freq;
  for (int i = 0; i < kDraws; ++i) ++freq[draw_split_position(L, rng)];
  ASSERT_EQ(freq.size(), 6u);
  const double p0 = double(freq[0]) / kDraws;
  EXPECT_GE(p0, 0.48);
  EXPECT_LE(p0, 0.52);
  for (std::size_t k = 1; k < 6; ++k) {
    const double p = double(freq[k * L / 6]) / kDraws;
    EXPECT_GE(p, 0.08);
    EXPECT_LE(p, 0.12);
  }
}

TEST(TextReading, ForcedSplitSlicesWords) {
  const auto w = words(6);
  Rng rng(1);
  const auto s = make_text_reading_sample_at(w, 3, default_templates(), rng, kMeta);
  EXPECT_EQ(s.target, "w4 w5 w6");
  EXPECT_NE(s.prompt.find("w1 w2 w3"), std::string::npos);
  EXPECT_EQ(s.prompt.find("w4"), std::string::npos);
  EXPECT_TRUE(well_formed(s));
  EXPECT_EQ(s.task, TaskType::text_reading);
}

TEST(TextReading, SplitZeroReadsEverything) {
  const auto w = words(6);
  Rng rng(1);
  const auto s = make_text_reading_sample_at(w, 0, default_templates(), rng, kMeta);
  EXPECT_EQ(s.target, "w1 w2 w3 w4 w5 w6");
  for (const auto& word : w) EXPECT_EQ(s.prompt.find(word), std::string::npos);
  bool from_begin_list = false;
  for (const auto& t : default_templates().read_begin) from_begin_list |= prompt_part(t) == s.prompt;
  EXPECT_TRUE(from_begin_list);
}

TEST(TextReading, PromptIsCombinationOfPartsAAndB) {
  const auto w = words(12);
  Rng rng(3);
  const auto s = make_text_reading_sample_at(w, 4, default_templates(), rng, kMeta);
  bool matched = false;
  for (const auto& a : default_templates().read_continue_a) {
    for (const auto& b : default_templates().read_continue_b) {
      const std::string expected = text::collapse_whitespace(
          text::replace_all(strip_image_marker(a), kLeftTextsSlot, "w1 w2 w3 w4") + " " +
          prompt_part(b));
      matched |= expected == s.prompt;
    }
  }
  EXPECT_TRUE(matched) << s.prompt;
}

TEST(TextReading, LeftPlusTargetReconstructsText) {
  const TemplateSet& t = default_templates();
  for (std::size_t L = 1; L <= 30; ++L) {
    const auto w = words(static_cast<int>(L));
    for (const auto& choice : split_distribution(L)) {
      Rng rng(L * 31 + choice.position);
      const auto s = make_text_reading_sample_at(w, choice.position, t, rng, kMeta);
      EXPECT_TRUE(well_formed(s)) << s.prompt;
      std::vector<std::string> rebuilt(w.begin(), w.begin() + static_cast<long>(choice.position));
      for (auto& x : text::split_words(s.target)) rebuilt.push_back(x);
      EXPECT_EQ(rebuilt, w);
    }
  }
}

TEST(TextReading, Errors) {
  Rng rng(1);
  const std::vector<std::string> none;
  EXPECT_THROW(make_text_reading_sample(none, default_templates(), rng, kMeta), std::invalid_argument);
  const auto w = words(3);
  EXPECT_THROW(make_text_reading_sample_at(w, 3, default_templates(), rng, kMeta), std::invalid_argument);
}

TEST(TextReading, DeterministicGivenSeed) {
  const auto w = words(50);
  Rng a(9), b(9);
  for (int i = 0; i < 20; ++i) {
    EXPECT_EQ(make_text_reading_sample(w, default_templates(), a, kMeta),
              make_text_reading_sample(w, default_templates(), b, kMeta));
  }
}

TEST(KeyPoints, Joining) {
  Rng rng(1);
  const std::vector<std::string> one = {"The chart shows revenue."};
  EXPECT_EQ(make_keypoints_sample(one, default_templates(), rng, kMeta).target,
            "The chart shows revenue.");
  const std::vector<std::string> two = {"A", "B"};
  const auto s = make_keypoints_sample(two, default_templates(), rng, kMeta);
  EXPECT_EQ(s.target, "A. B.");
  EXPECT_TRUE(well_formed(s));
  const std::vector<std::string> none;
  EXPECT_THROW(make_keypoints_sample(none, default_templates(), rng, kMeta), std::invalid_argument);
  Rng a(5), b(5);
  EXPECT_EQ(make_keypoints_sample(two, default_templates(), a, kMeta).prompt,
            make_keypoints_sample(two, default_templates(), b, kMeta).prompt);
}

TEST(AllBuilders, PromptPattern) {
  Rng rng(11);
  const TemplateSet& t = default_templates();
  const std::vector<IeField> fields = {{"date", "1999"}};
  const std::vector<std::string> kp = {"x is 3"};
  const auto w = words(20);
  std::vector<InstructionSample> all = {
      format_vqa("q?", "a", kMeta), format_nli("s", 1, kMeta),
      format_caption("c", t, rng, kMeta), make_text_reading_sample(w, t, rng, kMeta),
      make_keypoints_sample(kp, t, rng, kMeta)};
  for (auto& s : format_ie(fields, kMeta)) all.push_back(s);
  for (int i = 0; i < 200; ++i) all.push_back(make_text_reading_sample(w, t, rng, kMeta));
  for (const auto& s : all) EXPECT_TRUE(well_formed(s)) << s.prompt;
}

}  // namespace
}  // namespace vsl
