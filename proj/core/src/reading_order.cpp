#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "vsl/instruction_builder.hpp"
#include "vsl/text.hpp"

namespace vsl {
namespace {

double median(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

struct Line {
  std::vector<std::size_t> members;
  double mean_top = 0.0;
};

}  // namespace

std::string serialize_reading_order(std::span<const OcrToken> tokens) {
  if (tokens.empty()) {
    throw std::invalid_argument("serialize_reading_order: no tokens");
  }
  std::vector<double> heights;
  heights.reserve(tokens.size());
  for (const OcrToken& t : tokens) {
    if (text::trim(t.text).empty()) throw std::invalid_argument("OCR token with empty text");
    if (!(t.width > 0.0) || !(t.height > 0.0)) {
      throw std::invalid_argument("OCR token '" + t.text + "' has a non-positive box");
    }
    heights.push_back(t.height);
  }
  const double threshold = 0.5 * median(std::move(heights));

  std::vector<std::size_t> by_center(tokens.size());
  std::iota(by_center.begin(), by_center.end(), 0);
  auto center = [&](std::size_t i) { return tokens[i].y + 0.5 * tokens[i].height; };
  std::stable_sort(by_center.begin(), by_center.end(),
                   [&](std::size_t a, std::size_t b) { return center(a) < center(b); });

  // On the 1-D center axis, the connected components of "distance <
  // threshold" are exactly the runs of consecutive gaps below it.
  std::vector<Line> lines;
  for (std::size_t k = 0; k < by_center.size(); ++k) {
    const std::size_t idx = by_center[k];
    if (k == 0 || !(center(idx) - center(by_center[k - 1]) < threshold)) {
      lines.emplace_back();
    }
    lines.back().members.push_back(idx);
  }
  for (Line& line : lines) {
    double sum = 0.0;
    for (std::size_t idx : line.members) sum += tokens[idx].y;
    line.mean_top = sum / static_cast<double>(line.members.size());
    std::stable_sort(line.members.begin(), line.members.end(), [&](std::size_t a, std::size_t b) {
      if (tokens[a].x != tokens[b].x) return tokens[a].x < tokens[b].x;
      return a < b;
    });
  }
  std::stable_sort(lines.begin(), lines.end(),
                   [](const Line& a, const Line& b) { return a.mean_top < b.mean_top; });

  std::vector<std::string> parts;
  parts.reserve(tokens.size());
  for (const Line& line : lines) {
    for (std::size_t idx : line.members) parts.push_back(text::collapse_whitespace(tokens[idx].text));
  }
  return text::join(parts, " ");
}

}  // namespace vsl
