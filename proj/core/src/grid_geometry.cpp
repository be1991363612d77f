#include "vsl/grid_geometry.hpp"

#include <algorithm>
#include <charconv>
#include <stdexcept>

namespace vsl {

bool canonical_less(const Grid& a, const Grid& b) {
  if (a.cells() != b.cells()) return a.cells() < b.cells();
  if (a.rows != b.rows) return a.rows < b.rows;
  return a.cols < b.cols;
}

void validate(const ImageDims& dims) {
  if (dims.height < 1 || dims.width < 1) {
    throw std::invalid_argument("image dims must be positive, got " +
                                std::to_string(dims.height) + "x" + std::to_string(dims.width));
  }
}

void validate(const CellDims& dims) {
  if (dims.height < 1 || dims.width < 1) {
    throw std::invalid_argument("cell dims must be positive, got " +
                                std::to_string(dims.height) + "x" + std::to_string(dims.width));
  }
}

void CropConfig::validate() const {
  if (max_cells < 1) {
    throw std::invalid_argument("max_cells must be >= 1");
  }
  vsl::validate(cell);
  if (!adaptive) {
    if (!fixed_grid) {
      throw std::invalid_argument("fixed-grid mode requires a grid");
    }
    if (fixed_grid->rows < 1 || fixed_grid->cols < 1) {
      throw std::invalid_argument("fixed grid must have positive rows and cols");
    }
    if (fixed_grid->cells() > max_cells) {
      throw std::invalid_argument("fixed grid " + to_string(*fixed_grid) + " exceeds max_cells " +
                                  std::to_string(max_cells));
    }
  }
}

std::vector<Grid> enumerate_grids(int max_cells) {
  if (max_cells < 1) {
    throw std::invalid_argument("enumerate_grids: max_cells must be >= 1");
  }
  std::vector<Grid> grids;
  for (int rows = 1; rows <= max_cells; ++rows) {
    for (int cols = 1; rows * cols <= max_cells; ++cols) {
      grids.push_back({rows, cols});
    }
  }
  std::sort(grids.begin(), grids.end(), canonical_less);
  return grids;
}

double centered_iou(Extent a, Extent b) {
  if (!(a.height > 0.0) || !(a.width > 0.0) || !(b.height > 0.0) || !(b.width > 0.0)) {
    throw std::invalid_argument("centered_iou: dimensions must be positive");
  }
  const double inter = std::min(a.height, b.height) * std::min(a.width, b.width);
  const double uni = a.height * a.width + b.height * b.width - inter;
  return inter / uni;
}

double score_rr(const ImageDims& image, const Grid& grid, const CellDims& cell) {
  validate(image);
  validate(cell);
  return centered_iou({static_cast<double>(image.height), static_cast<double>(image.width)},
                      {static_cast<double>(grid.rows) * cell.height,
                       static_cast<double>(grid.cols) * cell.width});
}

double score_ra(const ImageDims& image, const Grid& grid) {
  validate(image);
  const double cols = grid.cols;
  const double scaled_height = cols * image.height / image.width;
  return centered_iou({scaled_height, cols}, {static_cast<double>(grid.rows), cols});
}

ScoredGrid score_grid(const ImageDims& image, const Grid& grid, const CellDims& cell) {
  ScoredGrid s;
  s.grid = grid;
  s.score_rr = score_rr(image, grid, cell);
  s.score_ra = score_ra(image, grid);
  s.total = s.score_rr + s.score_ra;
  return s;
}

ScoredGrid select_grid(const ImageDims& image, const CropConfig& config) {
  config.validate();
  validate(image);
  if (!config.adaptive) {
    throw std::invalid_argument("select_grid: config is in fixed-grid mode");
  }
  std::optional<ScoredGrid> best;
  // Strict '>' keeps the first maximum in canonical order.
  for (const Grid& g : enumerate_grids(config.max_cells)) {
    ScoredGrid s = score_grid(image, g, config.cell);
    if (!best || s.total > best->total) best = s;
  }
  return *best;
}

Grid parse_grid(std::string_view text) {
  const auto sep = text.find_first_of("xX*");
  auto fail = [&]() -> Grid {
    throw std::invalid_argument("grid must look like RxC, got '" + std::string(text) + "'");
  };
  if (sep == std::string_view::npos) return fail();
  Grid g;
  const auto rows_part = text.substr(0, sep);
  const auto cols_part = text.substr(sep + 1);
  auto r = std::from_chars(rows_part.data(), rows_part.data() + rows_part.size(), g.rows);
  auto c = std::from_chars(cols_part.data(), cols_part.data() + cols_part.size(), g.cols);
  if (r.ec != std::errc{} || r.ptr != rows_part.data() + rows_part.size() || c.ec != std::errc{} ||
      c.ptr != cols_part.data() + cols_part.size() || g.rows < 1 || g.cols < 1) {
    return fail();
  }
  return g;
}

std::string to_string(const Grid& grid) {
  return std::to_string(grid.rows) + "x" + std::to_string(grid.cols);
}

}  // namespace vsl
