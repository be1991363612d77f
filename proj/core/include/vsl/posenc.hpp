#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <span>
#include <vector>

#include "vsl/cropper.hpp"

namespace vsl {

/// Row and column embedding tables for crop positions.
///
/// Index 0 of each table is reserved for the global image; a local image at
/// 0-based cell (i, j) uses row index i + 1 and column index j + 1.
class PositionTables {
 public:
  PositionTables() = default;
  /// Zero-filled tables with rows 0..max_rows and cols 0..max_cols.
  PositionTables(int max_rows, int max_cols, int dim);

  int max_rows() const { return max_rows_; }
  int max_cols() const { return max_cols_; }
  int dim() const { return dim_; }
  std::size_t row_count() const { return static_cast<std::size_t>(max_rows_) + 1; }
  std::size_t col_count() const { return static_cast<std::size_t>(max_cols_) + 1; }

  std::span<const float> row_embedding(int index) const;
  std::span<const float> col_embedding(int index) const;
  std::span<float> row_embedding(int index);
  std::span<float> col_embedding(int index);

 private:
  int max_rows_ = 0;
  int max_cols_ = 0;
  int dim_ = 0;
  std::vector<float> rows_;
  std::vector<float> cols_;
};

/// N x N_q x d_l features, one N_q-query block per image.
class FeatureBlock {
 public:
  FeatureBlock() = default;
  FeatureBlock(std::size_t images, std::size_t queries, std::size_t dim);

  std::size_t images() const { return images_; }
  std::size_t queries() const { return queries_; }
  std::size_t dim() const { return dim_; }

  std::span<const float> vector(std::size_t image, std::size_t query) const;
  std::span<float> vector(std::size_t image, std::size_t query);
  std::span<const float> data() const { return data_; }
  std::span<float> data() { return data_; }

  friend bool operator==(const FeatureBlock&, const FeatureBlock&) = default;

 private:
  std::size_t images_ = 0;
  std::size_t queries_ = 0;
  std::size_t dim_ = 0;
  std::vector<float> data_;
};

/// (N * N_q) x d_l row-major matrix; row k * N_q + q holds image k, query q.
struct FlatFeatures {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<float> data;

  friend bool operator==(const FlatFeatures&, const FlatFeatures&) = default;
};

/// Tables drawn from normal(0, 0.02), deterministic per seed.
PositionTables build_position_tables(int max_rows, int max_cols, int dim, std::uint64_t seed);

/// Adds row + col embeddings of each image's cell to all of its query
/// vectors. Feature slots follow plan order: locals row-major, global last.
FeatureBlock encode_positions(const FeatureBlock& features, const CropPlan& plan,
                              const PositionTables& tables);

FlatFeatures flatten_sequence(const FeatureBlock& features);
FeatureBlock unflatten_sequence(const FlatFeatures& flat, std::size_t queries);

// Binary dump: 16-byte header of two little-endian u64 (rows, cols), then
// rows * cols little-endian IEEE-754 float32 values, row-major.
void write_flat_features(const FlatFeatures& flat, std::ostream& out);
void write_flat_features(const FlatFeatures& flat, const std::filesystem::path& path);
FlatFeatures read_flat_features(std::istream& in);
FlatFeatures read_flat_features(const std::filesystem::path& path);

}  // namespace vsl
