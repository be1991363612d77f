#pragma once

#include <compare>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace vsl {

struct ImageDims {
  int height = 0;
  int width = 0;

  friend bool operator==(const ImageDims&, const ImageDims&) = default;
};

/// Resolution of one local image, matching the vision encoder input.
struct CellDims {
  int height = 224;
  int width = 224;

  friend bool operator==(const CellDims&, const CellDims&) = default;
};

/// A rows x cols tiling candidate.
struct Grid {
  int rows = 1;
  int cols = 1;

  int cells() const { return rows * cols; }

  friend bool operator==(const Grid&, const Grid&) = default;
  friend auto operator<=>(const Grid&, const Grid&) = default;
};

/// Canonical enumeration order: fewer cells first, then fewer rows, then
/// fewer cols. Used for both sorting and argmax tie-breaking.
bool canonical_less(const Grid& a, const Grid& b);

struct CropConfig {
  int max_cells = 20;
  CellDims cell;
  /// false selects the fixed-grid baseline: every image uses `fixed_grid`.
  bool adaptive = true;
  std::optional<Grid> fixed_grid;
  bool include_global = true;

  /// Throws std::invalid_argument when the invariants do not hold.
  void validate() const;
};

struct ScoredGrid {
  Grid grid;
  double score_rr = 0.0;
  double score_ra = 0.0;
  double total = 0.0;
};

/// Real-valued rectangle extent used by the IoU scores.
struct Extent {
  double height = 0.0;
  double width = 0.0;
};

void validate(const ImageDims& dims);
void validate(const CellDims& dims);

/// Every grid with rows * cols <= max_cells in canonical order.
std::vector<Grid> enumerate_grids(int max_cells);

/// IoU of two rectangles sharing a center and axis alignment.
double centered_iou(Extent a, Extent b);

/// Resolution-related score: IoU of the image against the grid scaled to
/// pixels, (H, W) vs (rows * H_v, cols * W_v).
double score_rr(const ImageDims& image, const Grid& grid, const CellDims& cell);

/// Resolution-agnostic score: IoU of (cols * H / W, cols) vs (rows, cols),
/// which depends only on the aspect ratio.
double score_ra(const ImageDims& image, const Grid& grid);

ScoredGrid score_grid(const ImageDims& image, const Grid& grid, const CellDims& cell);

/// Shape-adaptive argmax of score_rr + score_ra over enumerate_grids.
/// Requires config.adaptive.
ScoredGrid select_grid(const ImageDims& image, const CropConfig& config);

/// Parses "RxC" (also accepts 'X' or '*' as separator).
Grid parse_grid(std::string_view text);
std::string to_string(const Grid& grid);

}  // namespace vsl
