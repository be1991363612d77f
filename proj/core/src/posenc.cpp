#include "vsl/posenc.hpp"

#include <array>
#include <bit>
#include <fstream>
#include <stdexcept>
#include <string>

#include "vsl/errors.hpp"
#include "vsl/random.hpp"

namespace vsl {

PositionTables::PositionTables(int max_rows, int max_cols, int dim)
    : max_rows_(max_rows), max_cols_(max_cols), dim_(dim) {
  if (max_rows < 1 || max_cols < 1 || dim < 1) {
    throw std::invalid_argument("position tables need max_rows, max_cols, dim >= 1");
  }
  rows_.assign(row_count() * static_cast<std::size_t>(dim), 0.0f);
  cols_.assign(col_count() * static_cast<std::size_t>(dim), 0.0f);
}

namespace {

void check_index(int index, int max, const char* which) {
  if (index < 0 || index > max) {
    throw std::invalid_argument(std::string(which) + " embedding index " + std::to_string(index) +
                                " outside [0, " + std::to_string(max) + "]");
  }
}

}  // namespace

std::span<const float> PositionTables::row_embedding(int index) const {
  check_index(index, max_rows_, "row");
  return std::span<const float>(rows_).subspan(static_cast<std::size_t>(index) * dim_, dim_);
}

std::span<const float> PositionTables::col_embedding(int index) const {
  check_index(index, max_cols_, "col");
  return std::span<const float>(cols_).subspan(static_cast<std::size_t>(index) * dim_, dim_);
}

std::span<float> PositionTables::row_embedding(int index) {
  check_index(index, max_rows_, "row");
  return std::span<float>(rows_).subspan(static_cast<std::size_t>(index) * dim_, dim_);
}

std::span<float> PositionTables::col_embedding(int index) {
  check_index(index, max_cols_, "col");
  return std::span<float>(cols_).subspan(static_cast<std::size_t>(index) * dim_, dim_);
}

FeatureBlock::FeatureBlock(std::size_t images, std::size_t queries, std::size_t dim)
    : images_(images), queries_(queries), dim_(dim) {
  if (images == 0 || queries == 0 || dim == 0) {
    throw std::invalid_argument("feature block dims must be >= 1");
  }
  data_.assign(images * queries * dim, 0.0f);
}

std::span<const float> FeatureBlock::vector(std::size_t image, std::size_t query) const {
  return std::span<const float>(data_).subspan((image * queries_ + query) * dim_, dim_);
}

std::span<float> FeatureBlock::vector(std::size_t image, std::size_t query) {
  return std::span<float>(data_).subspan((image * queries_ + query) * dim_, dim_);
}

PositionTables build_position_tables(int max_rows, int max_cols, int dim, std::uint64_t seed) {
  PositionTables tables(max_rows, max_cols, dim);
  Rng rng(seed);
  for (int i = 0; i <= max_rows; ++i) {
    for (float& v : tables.row_embedding(i)) v = static_cast<float>(rng.normal(0.0, 0.02));
  }
  for (int j = 0; j <= max_cols; ++j) {
    for (float& v : tables.col_embedding(j)) v = static_cast<float>(rng.normal(0.0, 0.02));
  }
  return tables;
}

FeatureBlock encode_positions(const FeatureBlock& features, const CropPlan& plan,
                              const PositionTables& tables) {
  plan.validate();
  if (features.images() != plan.image_count()) {
    throw std::invalid_argument("encode_positions: " + std::to_string(features.images()) +
                                " feature blocks for " + std::to_string(plan.image_count()) +
                                " images");
  }
  if (features.dim() != static_cast<std::size_t>(tables.dim())) {
    throw std::invalid_argument("encode_positions: feature dim " + std::to_string(features.dim()) +
                                " != table dim " + std::to_string(tables.dim()));
  }
  if (plan.grid.rows > tables.max_rows() || plan.grid.cols > tables.max_cols()) {
    throw std::invalid_argument("encode_positions: grid " + to_string(plan.grid) +
                                " exceeds table bounds");
  }

  FeatureBlock out = features;
  std::vector<float> offset(features.dim());
  auto add_offset = [&](std::size_t image, int row_index, int col_index) {
    const auto row = tables.row_embedding(row_index);
    const auto col = tables.col_embedding(col_index);
    for (std::size_t d = 0; d < offset.size(); ++d) offset[d] = row[d] + col[d];
    for (std::size_t q = 0; q < out.queries(); ++q) {
      auto v = out.vector(image, q);
      for (std::size_t d = 0; d < v.size(); ++d) v[d] += offset[d];
    }
  };
  for (std::size_t k = 0; k < plan.regions.size(); ++k) {
    add_offset(k, plan.regions[k].row + 1, plan.regions[k].col + 1);
  }
  if (plan.include_global) add_offset(plan.regions.size(), 0, 0);
  return out;
}

FlatFeatures flatten_sequence(const FeatureBlock& features) {
  FlatFeatures flat;
  flat.rows = features.images() * features.queries();
  flat.cols = features.dim();
  flat.data.assign(features.data().begin(), features.data().end());
  return flat;
}

FeatureBlock unflatten_sequence(const FlatFeatures& flat, std::size_t queries) {
  if (queries == 0 || flat.rows % queries != 0) {
    throw std::invalid_argument("unflatten_sequence: " + std::to_string(flat.rows) +
                                " rows not divisible by " + std::to_string(queries) + " queries");
  }
  if (flat.data.size() != flat.rows * flat.cols) {
    throw std::invalid_argument("unflatten_sequence: data size mismatch");
  }
  FeatureBlock block(flat.rows / queries, queries, flat.cols);
  std::copy(flat.data.begin(), flat.data.end(), block.data().begin());
  return block;
}

namespace {

void put_u64(std::ostream& out, std::uint64_t v) {
  std::array<char, 8> b;
  for (int i = 0; i < 8; ++i) b[i] = static_cast<char>((v >> (8 * i)) & 0xFF);
  out.write(b.data(), b.size());
}

std::uint64_t get_u64(std::istream& in) {
  std::array<unsigned char, 8> b;
  if (!in.read(reinterpret_cast<char*>(b.data()), b.size())) {
    throw IoError("flat features: truncated header");
  }
  std::uint64_t v = 0;
  for (int i = 7; i >= 0; --i) v = (v << 8) | b[i];
  return v;
}

}  // namespace

void write_flat_features(const FlatFeatures& flat, std::ostream& out) {
  if (flat.data.size() != flat.rows * flat.cols) {
    throw std::invalid_argument("write_flat_features: data size mismatch");
  }
  put_u64(out, flat.rows);
  put_u64(out, flat.cols);
  std::vector<char> bytes(flat.data.size() * 4);
  for (std::size_t i = 0; i < flat.data.size(); ++i) {
    const auto bits = std::bit_cast<std::uint32_t>(flat.data[i]);
    for (int b = 0; b < 4; ++b) bytes[i * 4 + b] = static_cast<char>((bits >> (8 * b)) & 0xFF);
  }
  out.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
  if (!out) throw IoError("flat features: write failed");
}

void write_flat_features(const FlatFeatures& flat, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  write_flat_features(flat, out);
}

FlatFeatures read_flat_features(std::istream& in) {
  FlatFeatures flat;
  flat.rows = get_u64(in);
  flat.cols = get_u64(in);
  const std::uint64_t count = flat.rows * flat.cols;
  if (flat.cols != 0 && count / flat.cols != flat.rows) {
    throw IoError("flat features: header overflows");
  }
  std::vector<unsigned char> bytes(count * 4);
  if (!in.read(reinterpret_cast<char*>(bytes.data()), static_cast<std::streamsize>(bytes.size()))) {
    throw IoError("flat features: truncated payload");
  }
  flat.data.resize(count);
  for (std::size_t i = 0; i < count; ++i) {
    std::uint32_t bits = 0;
    for (int b = 3; b >= 0; --b) bits = (bits << 8) | bytes[i * 4 + b];
    flat.data[i] = std::bit_cast<float>(bits);
  }
  return flat;
}

FlatFeatures read_flat_features(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  return read_flat_features(in);
}

}  // namespace vsl
