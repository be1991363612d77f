#include "vsl/cropper.hpp"

#include <stdexcept>
#include <string>

namespace vsl {

void CropPlan::validate() const {
  vsl::validate(source);
  vsl::validate(cell);
  if (grid.rows < 1 || grid.cols < 1) {
    throw std::invalid_argument("crop plan grid must be positive");
  }
  if (resized.height != grid.rows * cell.height || resized.width != grid.cols * cell.width) {
    throw std::invalid_argument("crop plan resized dims do not match grid * cell");
  }
  if (regions.size() != static_cast<std::size_t>(grid.cells())) {
    throw std::invalid_argument("crop plan has " + std::to_string(regions.size()) +
                                " regions for grid " + to_string(grid));
  }
  std::size_t k = 0;
  for (int i = 0; i < grid.rows; ++i) {
    for (int j = 0; j < grid.cols; ++j, ++k) {
      const CropRegion& r = regions[k];
      if (r.row != i || r.col != j || r.x != j * cell.width || r.y != i * cell.height ||
          r.width != cell.width || r.height != cell.height) {
        throw std::invalid_argument("crop plan region " + std::to_string(k) +
                                    " is not the row-major cell (" + std::to_string(i) + "," +
                                    std::to_string(j) + ")");
      }
    }
  }
}

Grid resolve_grid(const ImageDims& image, const CropConfig& config) {
  config.validate();
  validate(image);
  if (!config.adaptive) return *config.fixed_grid;
  return select_grid(image, config).grid;
}

CropPlan plan_crops(const ImageDims& image, const CropConfig& config) {
  CropPlan plan;
  plan.source = image;
  plan.grid = resolve_grid(image, config);
  plan.cell = config.cell;
  plan.resized = {plan.grid.rows * config.cell.height, plan.grid.cols * config.cell.width};
  plan.include_global = config.include_global;
  plan.regions.reserve(static_cast<std::size_t>(plan.grid.cells()));
  for (int i = 0; i < plan.grid.rows; ++i) {
    for (int j = 0; j < plan.grid.cols; ++j) {
      plan.regions.push_back({i, j, j * config.cell.width, i * config.cell.height,
                              config.cell.width, config.cell.height});
    }
  }
  return plan;
}

CropSet execute_plan(const Image& image, const CropPlan& plan) {
  plan.validate();
  if (image.dims() != plan.source) {
    throw std::invalid_argument("execute_plan: image is " + std::to_string(image.height()) + "x" +
                                std::to_string(image.width()) + " but plan expects " +
                                std::to_string(plan.source.height) + "x" +
                                std::to_string(plan.source.width));
  }
  CropSet out;
  out.plan = plan;
  out.resized = resize_bilinear(image, plan.resized);
  out.locals.reserve(plan.regions.size());
  for (const CropRegion& r : plan.regions) {
    out.locals.push_back(crop_region(out.resized, r.x, r.y, r.width, r.height));
  }
  if (plan.include_global) {
    out.global_image = resize_bilinear(image, {plan.cell.height, plan.cell.width});
  }
  return out;
}

Image reassemble(const CropSet& crops) {
  crops.plan.validate();
  if (crops.locals.size() != crops.plan.regions.size()) {
    throw std::invalid_argument("reassemble: " + std::to_string(crops.locals.size()) +
                                " locals for " + std::to_string(crops.plan.regions.size()) +
                                " regions");
  }
  Image out(crops.plan.resized.height, crops.plan.resized.width);
  for (std::size_t k = 0; k < crops.locals.size(); ++k) {
    const CropRegion& r = crops.plan.regions[k];
    const Image& local = crops.locals[k];
    if (local.height() != r.height || local.width() != r.width) {
      throw std::invalid_argument("reassemble: local " + std::to_string(k) +
                                  " does not match its region");
    }
    paste(out, local, r.x, r.y);
  }
  return out;
}

}  // namespace vsl
