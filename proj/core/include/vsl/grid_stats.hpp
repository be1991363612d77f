#pragma once

#include <map>
#include <span>
#include <string>

#include "vsl/grid_geometry.hpp"

namespace vsl {

/// Frequency of selected grids over a set of images.
struct GridHistogram {
  std::map<Grid, std::size_t> counts;
  std::size_t total = 0;

  void add(const Grid& g);
  std::size_t count(const Grid& g) const;

  /// rows x cols count matrix for heatmaps. First row is the header
  /// "rows\cols,1,..,max_cols", then one line per row count 1..max_rows.
  std::string to_csv(int max_rows, int max_cols) const;
  std::string to_json() const;
};

GridHistogram grid_stats(std::span<const ImageDims> images, const CropConfig& config);

}  // namespace vsl
