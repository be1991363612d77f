#pragma once

#include <optional>
#include <vector>

#include "vsl/grid_geometry.hpp"
#include "vsl/image.hpp"

namespace vsl {

/// One local image: cell (row, col) of the resized image, 0-based.
struct CropRegion {
  int row = 0;
  int col = 0;
  int x = 0;
  int y = 0;
  int width = 0;
  int height = 0;

  friend bool operator==(const CropRegion&, const CropRegion&) = default;
};

struct CropPlan {
  ImageDims source;
  Grid grid;
  CellDims cell;
  /// (rows * H_v, cols * W_v).
  ImageDims resized;
  /// Row-major: (0,0), (0,1), ..., (1,0), ...
  std::vector<CropRegion> regions;
  bool include_global = true;

  /// Number of images fed to the encoder: locals plus the optional global.
  std::size_t image_count() const { return regions.size() + (include_global ? 1 : 0); }

  /// Throws std::invalid_argument when regions do not tile `resized`.
  void validate() const;

  friend bool operator==(const CropPlan&, const CropPlan&) = default;
};

struct CropSet {
  std::vector<Image> locals;
  std::optional<Image> global_image;
  CropPlan plan;
  /// Intermediate grid-resized image the locals were cut from.
  Image resized;
};

/// Grid for an image under `config`: the adaptive argmax, or the fixed grid.
Grid resolve_grid(const ImageDims& image, const CropConfig& config);

CropPlan plan_crops(const ImageDims& image, const CropConfig& config);

/// Resizes to plan.resized, cuts along the region boundaries, and resizes the
/// original image to one cell for the global slot.
CropSet execute_plan(const Image& image, const CropPlan& plan);

/// Pastes locals back row-major. Exact inverse of the cutting step.
Image reassemble(const CropSet& crops);

}  // namespace vsl
