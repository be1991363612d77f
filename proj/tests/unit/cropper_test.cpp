#include "vsl/cropper.hpp"

#include <gtest/gtest.h>

#include <fstream>
#include <random>

#include "json.hpp"

namespace vsl {
namespace {

Image noise(int h, int w, std::uint64_t seed) {
  std::mt19937_64 gen(seed);
  std::vector<std::uint8_t> px(static_cast<std::size_t>(h) * w * 3);
  for (auto& p : px) p = static_cast<std::uint8_t>(gen() & 0xFF);
  return Image(h, w, std::move(px));
}

CropConfig fixed(int rows, int cols) {
  CropConfig c;
  c.adaptive = false;
  c.fixed_grid = Grid{rows, cols};
  return c;
}

void expect_exact_tiling(const CropPlan& plan) {
  long long area = 0;
  std::vector<int> cover(static_cast<std::size_t>(plan.resized.height) * plan.resized.width, 0);
  for (const CropRegion& r : plan.regions) {
    area += static_cast<long long>(r.width) * r.height;
    for (int y = r.y; y < r.y + r.height; ++y) {
      for (int x = r.x; x < r.x + r.width; ++x) ++cover[static_cast<std::size_t>(y) * plan.resized.width + x];
    }
  }
  EXPECT_EQ(area, static_cast<long long>(plan.resized.height) * plan.resized.width);
  for (int c : cover) ASSERT_EQ(c, 1);
}

TEST(PlanCrops, TwoByTwo) {
  const CropPlan plan = plan_crops({448, 448}, CropConfig{});
  EXPECT_EQ(plan.grid, (Grid{2, 2}));
  ASSERT_EQ(plan.regions.size(), 4u);
  const std::vector<std::pair<int, int>> yx = {{0, 0}, {0, 224}, {224, 0}, {224, 224}};
  for (std::size_t k = 0; k < 4; ++k) {
    EXPECT_EQ(plan.regions[k].y, yx[k].first);
    EXPECT_EQ(plan.regions[k].x, yx[k].second);
    EXPECT_EQ(plan.regions[k].width, 224);
    EXPECT_EQ(plan.regions[k].height, 224);
  }
  EXPECT_TRUE(plan.include_global);
  EXPECT_EQ(plan.image_count(), 5u);
  expect_exact_tiling(plan);
}

TEST(PlanCrops, IdentityGrid) {
  const CropPlan plan = plan_crops({224, 224}, CropConfig{});
  EXPECT_EQ(plan.grid, (Grid{1, 1}));
  ASSERT_EQ(plan.regions.size(), 1u);
  EXPECT_EQ(plan.regions[0], (CropRegion{0, 0, 0, 0, 224, 224}));
  EXPECT_EQ(plan.resized, (ImageDims{224, 224}));
}

TEST(PlanCrops, GoldenGridsFromOracleFile) {
  std::ifstream in(std::string(VSL_FIXTURES_DIR) + "/golden/grid_selection.json");
  ASSERT_TRUE(in);
  const auto cases = nlohmann::json::parse(in);
  ASSERT_FALSE(cases.empty());
  for (const auto& c : cases) {
    CropConfig cfg;
    cfg.max_cells = c["max_cells"];
    const CropPlan plan = plan_crops({c["height"], c["width"]}, cfg);
    EXPECT_EQ(plan.grid, (Grid{c["rows"], c["cols"]})) << c.dump();
    EXPECT_EQ(plan.resized, (ImageDims{c["resized_height"], c["resized_width"]}));
    EXPECT_NEAR(select_grid({c["height"], c["width"]}, cfg).total, c["total"].get<double>(), 1e-12);
    expect_exact_tiling(plan);
  }
}

TEST(PlanCrops, FixedGridIgnoresAspect) {
  for (ImageDims d : {ImageDims{100, 1000}, ImageDims{1000, 100}, ImageDims{224, 224}}) {
    const CropPlan plan = plan_crops(d, fixed(3, 3));
    EXPECT_EQ(plan.grid, (Grid{3, 3}));
    EXPECT_EQ(plan.regions.size(), 9u);
  }
}

TEST(PlanCrops, InvalidConfig) {
  CropConfig c;
  c.adaptive = false;
  EXPECT_THROW(plan_crops({10, 10}, c), std::invalid_argument);
  EXPECT_THROW(plan_crops({0, 10}, CropConfig{}), std::invalid_argument);
}

TEST(PlanCrops, NoGlobal) {
  CropConfig c;
  c.include_global = false;
  const CropPlan plan = plan_crops({448, 448}, c);
  EXPECT_EQ(plan.image_count(), 4u);
}

TEST(ExecutePlan, ConstantColorEverywhere) {
  Image img(333, 517);
  for (int y = 0; y < img.height(); ++y)
    for (int x = 0; x < img.width(); ++x) {
      img.at(y, x, 0) = 10;
      img.at(y, x, 1) = 200;
      img.at(y, x, 2) = 99;
    }
  const CropSet set = execute_plan(img, plan_crops(img.dims(), CropConfig{}));
  auto check = [](const Image& im) {
    for (int y = 0; y < im.height(); ++y)
      for (int x = 0; x < im.width(); ++x) {
        ASSERT_EQ(im.at(y, x, 0), 10);
        ASSERT_EQ(im.at(y, x, 1), 200);
        ASSERT_EQ(im.at(y, x, 2), 99);
      }
  };
  for (const Image& l : set.locals) check(l);
  ASSERT_TRUE(set.global_image.has_value());
  check(*set.global_image);
}

TEST(ExecutePlan, PreSizedImageIsCutWithoutResampling) {
  const Image img = noise(448, 672, 17);
  const CropPlan plan = plan_crops(img.dims(), fixed(2, 3));
  const CropSet set = execute_plan(img, plan);
  EXPECT_EQ(set.resized, img);
  EXPECT_EQ(reassemble(set), img);
  // Top-left pixel of local (1, 2) is source pixel (224, 448).
  EXPECT_EQ(set.locals[5].at(0, 0, 1), img.at(224, 448, 1));
}

TEST(ExecutePlan, CountsAndDims) {
  const Image img = noise(321, 123, 2);
  const CropPlan plan = plan_crops(img.dims(), CropConfig{});
  const CropSet set = execute_plan(img, plan);
  EXPECT_EQ(set.locals.size(), plan.regions.size());
  for (const Image& l : set.locals) EXPECT_EQ(l.dims(), (ImageDims{224, 224}));
  EXPECT_EQ(set.global_image->dims(), (ImageDims{224, 224}));
  EXPECT_EQ(set.resized.dims(), plan.resized);
}

TEST(ExecutePlan, GlobalComesFromOriginalImage) {
  const Image img = noise(300, 500, 8);
  const CropSet set = execute_plan(img, plan_crops(img.dims(), CropConfig{}));
  EXPECT_EQ(*set.global_image, resize_bilinear(img, {224, 224}));
}

TEST(ExecutePlan, DimMismatch) {
  const Image img = noise(100, 100, 1);
  const CropPlan plan = plan_crops({200, 100}, CropConfig{});
  EXPECT_THROW(execute_plan(img, plan), std::invalid_argument);
}

TEST(Reassemble, RandomRoundTrips) {
  std::mt19937_64 gen(99);
  for (int i = 0; i < 20; ++i) {
    const int h = 1 + static_cast<int>(gen() % 900);
    const int w = 1 + static_cast<int>(gen() % 900);
    const int rows = 1 + static_cast<int>(gen() % 4);
    const int cols = 1 + static_cast<int>(gen() % 5);
    const Image img = noise(h, w, gen());
    const CropSet set = execute_plan(img, plan_crops(img.dims(), fixed(rows, cols)));
    EXPECT_EQ(reassemble(set), set.resized);
  }
}

TEST(Reassemble, SingleCellReturnsTheLocal) {
  const Image img = noise(224, 224, 3);
  const CropSet set = execute_plan(img, plan_crops(img.dims(), CropConfig{}));
  EXPECT_EQ(reassemble(set), set.locals.front());
}

TEST(Reassemble, InconsistentPlan) {
  const Image img = noise(448, 448, 3);
  CropSet set = execute_plan(img, plan_crops(img.dims(), CropConfig{}));
  set.locals.pop_back();
  EXPECT_THROW(reassemble(set), std::invalid_argument);
  CropSet bad = execute_plan(img, plan_crops(img.dims(), CropConfig{}));
  bad.plan.regions[1].x += 1;
  EXPECT_THROW(reassemble(bad), std::invalid_argument);
}

}  // namespace
}  // namespace vsl
