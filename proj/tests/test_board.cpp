#include <gtest/gtest.h>

#include <algorithm>
#include <variant>

#include "looptiles/board.hpp"
#include "looptiles/wire.hpp"

using namespace looptiles;

namespace {

Configuration zeros(int rows, int cols, BoundaryMode mode = BoundaryMode::Torus) {
  return Configuration(Dims{rows, cols}, mode, TilePolicy::Free);
}

}  // namespace

TEST(Board, TorusGlueWrapsAround) {
  const auto c = zeros(4, 4);
  EXPECT_EQ(std::get<GlobalPoint>(glue(c, {1, 3, Point::Rt})), (GlobalPoint{1, 0, Point::Lu}));
  EXPECT_EQ(std::get<GlobalPoint>(glue(c, {3, 2, Point::Bl})), (GlobalPoint{0, 2, Point::Tl}));
  EXPECT_EQ(std::get<GlobalPoint>(glue(c, {2, 2, Point::Rb})), (GlobalPoint{2, 3, Point::Ll}));
  EXPECT_EQ(std::get<GlobalPoint>(glue(c, {0, 1, Point::Tr})), (GlobalPoint{3, 1, Point::Br}));
}

TEST(Board, TorusGlueIsAnInvolution) {
  for (Dims d : {Dims{4, 4}, Dims{1, 1}, Dims{3, 5}, Dims{2, 1}}) {
    const auto c = zeros(d.rows, d.cols);
    for (int r = 0; r < d.rows; ++r) {
      for (int col = 0; col < d.cols; ++col) {
        for (int p = 0; p < 8; ++p) {
          const GlobalPoint gp{r, col, static_cast<Point>(p)};
          const auto once = std::get<GlobalPoint>(glue(c, gp));
          EXPECT_EQ(std::get<GlobalPoint>(glue(c, once)), gp);
          EXPECT_NE(side_of(once.point), side_of(gp.point));
        }
      }
    }
  }
}

TEST(Board, CappedBorderJoinsTheSidesTwoPoints) {
  const auto c = zeros(4, 4, BoundaryMode::Capped);
  EXPECT_EQ(std::get<EdgeCap>(glue(c, {0, 0, Point::Lu})).other, (GlobalPoint{0, 0, Point::Ll}));
  EXPECT_EQ(std::get<EdgeCap>(glue(c, {3, 1, Point::Br})).other, (GlobalPoint{3, 1, Point::Bl}));
  // Interior edges glue as on the torus.
  EXPECT_EQ(std::get<GlobalPoint>(glue(c, {1, 1, Point::Rt})), (GlobalPoint{1, 2, Point::Lu}));
  int caps = 0;
  for (int r = 0; r < 4; ++r)
    for (int col = 0; col < 4; ++col)
      for (int p = 0; p < 8; ++p)
        caps += std::holds_alternative<EdgeCap>(glue(c, {r, col, static_cast<Point>(p)}));
  EXPECT_EQ(caps, 2 * cap_count(c));  // each cap seen from both of its points
  EXPECT_EQ(cap_count(c), 16);
}

TEST(Board, ParsesGridText) {
  const auto c = parse_grid("0000\n0000\n0000\n0000");
  EXPECT_EQ(c.rows(), 4);
  EXPECT_EQ(c.cols(), 4);
  EXPECT_EQ(c.mode(), BoundaryMode::Torus);
  EXPECT_EQ(c.total_crossings(), 0);

  const auto one = parse_grid("8000\n0000\n0000\n0000\n");
  EXPECT_EQ(one.at(0, 0), TileCode(0b1000));
  EXPECT_EQ(one.total_crossings(), 1);

  const auto hdr = parse_grid("mode=capped policy=free\nF0\n0a\n");
  EXPECT_EQ(hdr.mode(), BoundaryMode::Capped);
  EXPECT_EQ(hdr.at(1, 1), TileCode(10));
}

TEST(Board, ParseErrorsAreDistinct) {
  auto kind_of = [](const std::string& text, ParseDefaults d = {}) {
    try {
      parse_grid(text, d);
    } catch (const ConfigError& e) {
      return e.kind();
    }
    ADD_FAILURE() << "no error for " << text;
    return ConfigError::Kind::Malformed;
  };
  using K = ConfigError::Kind;
  EXPECT_EQ(kind_of("00\n0G"), K::MalformedDigit);
  EXPECT_EQ(kind_of("000\n00"), K::RaggedRows);
  EXPECT_EQ(kind_of("\n\n"), K::EmptyGrid);
  EXPECT_EQ(kind_of("mode=sphere\n00"), K::BadHeader);
  EXPECT_EQ(kind_of("00\n00", {BoundaryMode::Torus, TilePolicy::DistinctSixteen}),
            K::WrongCellCount);
  EXPECT_EQ(kind_of("policy=distinct\n0123\n4567\n89AB\nCDEE"), K::DuplicateCode);
}

TEST(Board, StructuredFormMatchesGrid) {
  const auto c = parse_grid("policy=distinct\n0123\n4567\n89AB\nCDEF");
  const json j = config_to_json(c);
  EXPECT_EQ(j["rows"], 4);
  EXPECT_EQ(j["policy"], "distinct");
  EXPECT_EQ(j["codes"][3][3], 15);
  EXPECT_EQ(config_from_json(j), c);
  EXPECT_EQ(parse_config(j.dump()), c);

  json bad = j;
  bad["codes"][0][0] = 16;
  EXPECT_THROW(config_from_json(bad), ConfigError);
  bad = j;
  bad["codes"][0][0] = 1;  // duplicate of cell (0,1)
  try {
    config_from_json(bad);
    FAIL();
  } catch (const ConfigError& e) {
    EXPECT_TRUE(e.is_policy_violation());
  }
}

TEST(Board, SerializationRoundTrips) {
  for (std::uint64_t seed = 0; seed < 200; ++seed) {
    const Dims d{1 + static_cast<int>(seed % 5), 1 + static_cast<int>(seed / 5 % 6)};
    const auto mode = seed % 3 ? BoundaryMode::Torus : BoundaryMode::Capped;
    const auto c = random_config(d, TilePolicy::Free, seed, mode);
    EXPECT_EQ(parse_config(serialize_config(c)), c);
    EXPECT_EQ(config_from_json(config_to_json(c)), c);
    const auto dc = random_config({4, 4}, TilePolicy::DistinctSixteen, seed);
    EXPECT_EQ(parse_config(serialize_config(dc)), dc);
  }
}

TEST(Board, RandomConfigs) {
  const auto a = random_config({4, 4}, TilePolicy::DistinctSixteen, 42);
  auto codes = a.codes();
  std::sort(codes.begin(), codes.end());
  for (int v = 0; v < 16; ++v) EXPECT_EQ(codes[v], TileCode(v));
  EXPECT_EQ(a, random_config({4, 4}, TilePolicy::DistinctSixteen, 42));
  EXPECT_NE(a, random_config({4, 4}, TilePolicy::DistinctSixteen, 43));

  const auto f = random_config({2, 2}, TilePolicy::Free, 7);
  EXPECT_EQ(f.codes().size(), 4u);
  EXPECT_EQ(f, random_config({2, 2}, TilePolicy::Free, 7));
  EXPECT_THROW(random_config({2, 2}, TilePolicy::DistinctSixteen, 1), ConfigError);
}

TEST(Board, RejectsNonPositiveDims) {
  EXPECT_THROW(Configuration(Dims{0, 4}, BoundaryMode::Torus, TilePolicy::Free), ConfigError);
}
