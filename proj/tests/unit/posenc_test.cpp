#include "vsl/posenc.hpp"

#include <gtest/gtest.h>

#include <random>
#include <sstream>

namespace vsl {
namespace {

FeatureBlock random_block(std::size_t n, std::size_t q, std::size_t d, std::uint64_t seed) {
  FeatureBlock b(n, q, d);
  std::mt19937_64 gen(seed);
  std::normal_distribution<float> dist(0.0f, 1.0f);
  for (float& v : b.data()) v = dist(gen);
  return b;
}

// Dyadic values with few significant bits, so float sums are exact.
FeatureBlock dyadic_block(std::size_t n, std::size_t q, std::size_t d, std::uint64_t seed) {
  FeatureBlock b(n, q, d);
  std::mt19937_64 gen(seed);
  for (float& v : b.data()) v = static_cast<float>(static_cast<int>(gen() % 2048) - 1024) / 256.0f;
  return b;
}

PositionTables dyadic_tables(int rows, int cols, int d, std::uint64_t seed) {
  PositionTables t(rows, cols, d);
  std::mt19937_64 gen(seed);
  for (int i = 0; i <= rows; ++i)
    for (float& v : t.row_embedding(i)) v = static_cast<float>(static_cast<int>(gen() % 64) - 32) / 64.0f;
  for (int j = 0; j <= cols; ++j)
    for (float& v : t.col_embedding(j)) v = static_cast<float>(static_cast<int>(gen() % 64) - 32) / 64.0f;
  return t;
}

CropPlan plan_for(int rows, int cols, bool global = true) {
  CropConfig c;
  c.adaptive = false;
  c.fixed_grid = Grid{rows, cols};
  c.include_global = global;
  return plan_crops({rows * 224, cols * 224}, c);
}

TEST(PositionTables, DeterministicPerSeed) {
  const auto a = build_position_tables(4, 5, 64, 7);
  const auto b = build_position_tables(4, 5, 64, 7);
  const auto c = build_position_tables(4, 5, 64, 8);
  for (int i = 0; i <= 4; ++i) {
    EXPECT_TRUE(std::ranges::equal(a.row_embedding(i), b.row_embedding(i)));
  }
  EXPECT_FALSE(std::ranges::equal(a.row_embedding(1), c.row_embedding(1)));
}

TEST(PositionTables, ShapesIncludeReservedIndex) {
  const auto t = build_position_tables(4, 20, 1024, 1);
  EXPECT_EQ(t.row_count(), 5u);
  EXPECT_EQ(t.col_count(), 21u);
  EXPECT_EQ(t.row_embedding(0).size(), 1024u);
  EXPECT_THROW(t.row_embedding(5), std::invalid_argument);
  EXPECT_THROW(build_position_tables(0, 1, 1, 1), std::invalid_argument);
  EXPECT_THROW(build_position_tables(1, 1, 0, 1), std::invalid_argument);
}

TEST(PositionTables, InitializerScale) {
  const auto t = build_position_tables(20, 20, 1024, 3);
  double sum = 0.0;
  double sq = 0.0;
  std::size_t n = 0;
  for (int i = 0; i <= 20; ++i) {
    for (float v : t.row_embedding(i)) {
      sum += v;
      sq += double(v) * v;
      ++n;
    }
  }
  const double mean = sum / n;
  const double sd = std::sqrt(sq / n - mean * mean);
  EXPECT_NEAR(mean, 0.0, 0.002);
  EXPECT_NEAR(sd, 0.02, 0.001);
}

TEST(EncodePositions, ZeroTablesAreIdentity) {
  const CropPlan plan = plan_for(2, 3);
  const FeatureBlock in = random_block(plan.image_count(), 65, 32, 1);
  const PositionTables zero(4, 5, 32);
  EXPECT_EQ(encode_positions(in, plan, zero), in);
}

TEST(EncodePositions, HandComputedSingleCell) {
  const CropPlan plan = plan_for(1, 1, false);
  PositionTables t(1, 1, 2);
  t.row_embedding(1)[0] = 1.0f;
  t.col_embedding(1)[1] = 1.0f;
  const FeatureBlock out = encode_positions(FeatureBlock(1, 4, 2), plan, t);
  for (std::size_t q = 0; q < 4; ++q) {
    EXPECT_EQ(out.vector(0, q)[0], 1.0f);
    EXPECT_EQ(out.vector(0, q)[1], 1.0f);
  }
}

TEST(EncodePositions, TwoByTwoPlusGlobalFullSize) {
  const CropPlan plan = plan_for(2, 2);
  const auto tables = build_position_tables(20, 20, 1024, 5);
  const FeatureBlock out = encode_positions(FeatureBlock(5, 65, 1024), plan, tables);
  EXPECT_EQ(out.images(), 5u);
  EXPECT_EQ(out.queries(), 65u);
  EXPECT_EQ(out.dim(), 1024u);
}

TEST(EncodePositions, RowPlusColDecomposition) {
  const CropPlan plan = plan_for(3, 4);
  const auto tables = build_position_tables(5, 5, 16, 9);
  const FeatureBlock in = random_block(plan.image_count(), 3, 16, 2);
  const FeatureBlock out = encode_positions(in, plan, tables);
  for (std::size_t k = 0; k < plan.image_count(); ++k) {
    const bool global = k == plan.regions.size();
    const int ri = global ? 0 : plan.regions[k].row + 1;
    const int ci = global ? 0 : plan.regions[k].col + 1;
    for (std::size_t q = 0; q < 3; ++q) {
      for (std::size_t d = 0; d < 16; ++d) {
        const float e = tables.row_embedding(ri)[d] + tables.col_embedding(ci)[d];
        ASSERT_EQ(out.vector(k, q)[d], in.vector(k, q)[d] + e);
      }
    }
  }
}

TEST(EncodePositions, SameOffsetForEveryQuery) {
  const CropPlan plan = plan_for(4, 5);
  const PositionTables tables = dyadic_tables(5, 5, 24, 4);
  const FeatureBlock in = dyadic_block(plan.image_count(), 65, 24, 5);
  const FeatureBlock out = encode_positions(in, plan, tables);
  for (std::size_t k = 0; k < out.images(); ++k) {
    for (std::size_t q = 1; q < out.queries(); ++q) {
      for (std::size_t d = 0; d < out.dim(); ++d) {
        ASSERT_EQ(out.vector(k, q)[d] - in.vector(k, q)[d], out.vector(k, 0)[d] - in.vector(k, 0)[d]);
      }
    }
  }
}

TEST(EncodePositions, SharedRowAndColumnComponents) {
  const CropPlan plan = plan_for(2, 2, false);
  PositionTables rows_only = dyadic_tables(2, 2, 8, 1);
  for (int j = 0; j <= 2; ++j)
    for (float& v : rows_only.col_embedding(j)) v = 0.0f;
  const FeatureBlock out = encode_positions(FeatureBlock(4, 1, 8), plan, rows_only);
  // Cells (0,0) and (0,1) share a row; (1,0) and (1,1) share a row.
  EXPECT_TRUE(std::ranges::equal(out.vector(0, 0), out.vector(1, 0)));
  EXPECT_TRUE(std::ranges::equal(out.vector(2, 0), out.vector(3, 0)));
  EXPECT_FALSE(std::ranges::equal(out.vector(0, 0), out.vector(2, 0)));
}

TEST(EncodePositions, GlobalUsesReservedIndex) {
  const CropPlan plan = plan_for(1, 1);
  PositionTables t(1, 1, 1);
  t.row_embedding(0)[0] = 5.0f;
  t.col_embedding(0)[0] = 0.5f;
  t.row_embedding(1)[0] = 1.0f;
  const FeatureBlock out = encode_positions(FeatureBlock(2, 1, 1), plan, t);
  EXPECT_EQ(out.vector(0, 0)[0], 1.0f);
  EXPECT_EQ(out.vector(1, 0)[0], 5.5f);
}

TEST(EncodePositions, Errors) {
  const CropPlan plan = plan_for(3, 3);
  const auto tables = build_position_tables(2, 5, 8, 1);
  EXPECT_THROW(encode_positions(FeatureBlock(10, 1, 8), plan, tables), std::invalid_argument);
  EXPECT_THROW(encode_positions(FeatureBlock(9, 1, 8), plan, tables), std::invalid_argument);
  const auto wide = build_position_tables(5, 5, 8, 1);
  EXPECT_THROW(encode_positions(FeatureBlock(10, 1, 4), plan, wide), std::invalid_argument);
}

TEST(FlattenSequence, LayoutAndRoundTrip) {
  const FeatureBlock single = random_block(1, 65, 8, 1);
  const FlatFeatures f1 = flatten_sequence(single);
  EXPECT_EQ(f1.rows, 65u);
  for (std::size_t q = 0; q < 65; ++q) EXPECT_EQ(f1.data[q * 8 + 3], single.vector(0, q)[3]);

  const FeatureBlock five = random_block(5, 65, 16, 2);
  const FlatFeatures f5 = flatten_sequence(five);
  EXPECT_EQ(f5.rows, 325u);
  EXPECT_EQ(f5.cols, 16u);
  EXPECT_EQ(f5.data[(3 * 65 + 7) * 16 + 2], five.vector(3, 7)[2]);
  EXPECT_EQ(unflatten_sequence(f5, 65), five);
  EXPECT_THROW(unflatten_sequence(f5, 64), std::invalid_argument);
}

TEST(FlatFeaturesDump, HeaderAndLittleEndianPayload) {
  FlatFeatures f;
  f.rows = 1;
  f.cols = 2;
  f.data = {1.0f, -2.5f};
  std::stringstream ss;
  write_flat_features(f, ss);
  const std::string bytes = ss.str();
  ASSERT_EQ(bytes.size(), 16u + 8u);
  EXPECT_EQ(bytes[0], 1);
  EXPECT_EQ(bytes[8], 2);
  for (int i = 1; i < 8; ++i) EXPECT_EQ(bytes[i], 0);
  // 1.0f = 0x3F800000, little-endian.
  EXPECT_EQ(static_cast<unsigned char>(bytes[16]), 0x00);
  EXPECT_EQ(static_cast<unsigned char>(bytes[19]), 0x3F);
  EXPECT_EQ(static_cast<unsigned char>(bytes[18]), 0x80);
  EXPECT_EQ(read_flat_features(ss), f);
}

TEST(FlatFeaturesDump, RoundTripRandom) {
  const FlatFeatures f = flatten_sequence(random_block(21, 65, 64, 3));
  std::stringstream ss;
  write_flat_features(f, ss);
  EXPECT_EQ(read_flat_features(ss), f);
  std::stringstream truncated(ss.str().substr(0, 40));
  EXPECT_ANY_THROW(read_flat_features(truncated));
}

}  // namespace
}  // namespace vsl
