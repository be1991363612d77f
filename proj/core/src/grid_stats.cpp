#include "vsl/grid_stats.hpp"

#include "jsonl.hpp"
#include "vsl/cropper.hpp"

namespace vsl {

void GridHistogram::add(const Grid& g) {
  ++counts[g];
  ++total;
}

std::size_t GridHistogram::count(const Grid& g) const {
  const auto it = counts.find(g);
  return it == counts.end() ? 0 : it->second;
}

std::string GridHistogram::to_csv(int max_rows, int max_cols) const {
  std::string csv = "rows\\cols";
  for (int c = 1; c <= max_cols; ++c) csv += "," + std::to_string(c);
  csv += '\n';
  for (int r = 1; r <= max_rows; ++r) {
    csv += std::to_string(r);
    for (int c = 1; c <= max_cols; ++c) csv += "," + std::to_string(count({r, c}));
    csv += '\n';
  }
  return csv;
}

std::string GridHistogram::to_json() const {
  detail::ordered_json j;
  j["total"] = total;
  j["counts"] = detail::ordered_json::array();
  for (const auto& [grid, n] : counts) {
    detail::ordered_json e;
    e["rows"] = grid.rows;
    e["cols"] = grid.cols;
    e["count"] = n;
    e["frequency"] = total == 0 ? 0.0 : static_cast<double>(n) / static_cast<double>(total);
    j["counts"].push_back(std::move(e));
  }
  return j.dump(2) + "\n";
}

GridHistogram grid_stats(std::span<const ImageDims> images, const CropConfig& config) {
  config.validate();
  GridHistogram h;
  for (const ImageDims& dims : images) h.add(resolve_grid(dims, config));
  return h;
}

}  // namespace vsl
