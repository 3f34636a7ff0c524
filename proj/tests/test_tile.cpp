#include <gtest/gtest.h>

#include <set>
#include <utility>

#include "looptiles/tile.hpp"

using namespace looptiles;

namespace {

using Pair = std::pair<Point, Point>;

std::set<Pair> as_set(const Matching& m) {
  std::set<Pair> out;
  for (auto p : m.pairs()) out.insert(p);
  return out;
}

Pair ordered(Point a, Point b) { return index_of(a) < index_of(b) ? Pair{a, b} : Pair{b, a}; }

// Oracle: relabel each base arc's endpoints through the side swaps instead of
// composing permutations.
std::set<Pair> relabelled_base(TileCode code) {
  auto swap = [code](Point p) { return code.crossed(side_of(p)) ? sibling(p) : p; };
  std::set<Pair> out;
  for (auto [a, b] : base_matching().pairs()) out.insert(ordered(swap(a), swap(b)));
  return out;
}

bool adjacent_sides(Side a, Side b) {
  const int d = (static_cast<int>(a) - static_cast<int>(b) + 4) % 4;
  return d == 1 || d == 3;
}

}  // namespace

TEST(TileCore, BaseMatchingIsFourCornerArcs) {
  const Matching m = base_matching();
  EXPECT_EQ(m(Point::Lu), Point::Tl);
  EXPECT_EQ(m(Point::Bl), Point::Ll);
  EXPECT_EQ(m(Point::Tr), Point::Rt);
  EXPECT_EQ(m(Point::Rb), Point::Br);
  for (int i = 0; i < 8; ++i) {
    const auto p = static_cast<Point>(i);
    if (side_of(p) == Side::Left) {
      EXPECT_NE(side_of(m(p)), Side::Right);
    }
  }
}

TEST(TileCore, LeftCrossedMatching) {
  const std::set<Pair> expected{ordered(Point::Lu, Point::Bl), ordered(Point::Ll, Point::Tl),
                                ordered(Point::Tr, Point::Rt), ordered(Point::Rb, Point::Br)};
  EXPECT_EQ(as_set(tile_matching(TileCode(0b1000))), expected);
  EXPECT_EQ(relabelled_base(TileCode(0b1000)), expected);
}

TEST(TileCore, FullyCrossedMatching) {
  const std::set<Pair> expected{ordered(Point::Lu, Point::Br), ordered(Point::Ll, Point::Tr),
                                ordered(Point::Tl, Point::Rb), ordered(Point::Rt, Point::Bl)};
  EXPECT_EQ(as_set(tile_matching(TileCode(0b1111))), expected);
}

TEST(TileCore, MatchingAgreesWithRelabellingOracle) {
  for (int v = 0; v < 16; ++v) {
    EXPECT_EQ(as_set(tile_matching(TileCode(v))), relabelled_base(TileCode(v))) << v;
  }
}

TEST(TileCore, EveryMatchingIsAQuarterTurnInvolution) {
  for (int v = 0; v < 16; ++v) {
    const Matching& m = kMatchings[v];
    for (int i = 0; i < 8; ++i) {
      const auto p = static_cast<Point>(i);
      EXPECT_NE(m(p), p);
      EXPECT_EQ(m(m(p)), p);
      EXPECT_TRUE(adjacent_sides(side_of(p), side_of(m(p)))) << v << " " << point_name(p);
    }
  }
}

TEST(TileCore, MatchingsArePairwiseDistinct) {
  std::set<std::set<Pair>> seen;
  for (int v = 0; v < 16; ++v) seen.insert(as_set(kMatchings[v]));
  EXPECT_EQ(seen.size(), 16u);
}

TEST(TileCore, ToggleChangesOnlyThePairsAtThatSide) {
  for (int v = 0; v < 16; ++v) {
    for (Side s : kSides) {
      const Matching& a = kMatchings[v];
      const Matching& b = kMatchings[TileCode(v).toggled(s).value()];
      int changed = 0;
      for (auto pr : a.pairs()) {
        if (!as_set(b).count(pr)) {
          ++changed;
          EXPECT_TRUE(side_of(pr.first) == s || side_of(pr.second) == s);
        }
      }
      EXPECT_EQ(changed, 2) << v << " " << side_name(s);
    }
  }
}

TEST(TileCore, CrossingCounts) {
  EXPECT_EQ(crossing_count(TileCode(0b0000)), 0);
  EXPECT_EQ(crossing_count(TileCode(0b1111)), 4);
  EXPECT_EQ(crossing_count(TileCode(0b1010)), 2);
  int total = 0;
  for (int v = 0; v < 16; ++v) total += crossing_count(TileCode(v));
  EXPECT_EQ(total, 32);
}

TEST(TileCore, RightOfWayTable) {
  EXPECT_EQ(over_point(Side::Bottom), Point::Br);
  EXPECT_EQ(over_point(Side::Left), Point::Ll);
  EXPECT_EQ(over_point(Side::Top), Point::Tl);
  EXPECT_EQ(over_point(Side::Right), Point::Rt);
  for (Side s : kSides) EXPECT_EQ(side_of(over_point(s)), s);
}

TEST(TileCore, CodeBitsAndText) {
  const TileCode c(0b1000);
  EXPECT_TRUE(c.crossed(Side::Left));
  EXPECT_FALSE(c.crossed(Side::Bottom));
  EXPECT_EQ(c.hex(), '8');
  EXPECT_EQ(c.binary(), "1000");
  EXPECT_EQ(TileCode::from_hex('f'), TileCode(15));
  EXPECT_EQ(TileCode::from_binary("0101"), TileCode(5));
  EXPECT_EQ(TileCode(0b0001).binary(), "0001");
  EXPECT_THROW(TileCode::from_hex('g'), std::invalid_argument);
  EXPECT_THROW(TileCode::from_binary("012"), std::invalid_argument);
  EXPECT_THROW(TileCode(16), std::out_of_range);
  for (int v = 0; v < 16; ++v) {
    EXPECT_EQ(TileCode::from_hex(TileCode(v).hex()), TileCode(v));
    EXPECT_EQ(TileCode::from_binary(TileCode(v).binary()), TileCode(v));
    EXPECT_EQ(v, 8 * TileCode(v).crossed(Side::Left) + 4 * TileCode(v).crossed(Side::Top) +
                     2 * TileCode(v).crossed(Side::Right) + TileCode(v).crossed(Side::Bottom));
  }
}

TEST(TileCore, SideParsing) {
  EXPECT_EQ(parse_side("Left"), Side::Left);
  EXPECT_EQ(parse_side("bottom"), Side::Bottom);
  EXPECT_EQ(parse_side("T"), Side::Top);
  EXPECT_EQ(parse_side("r"), Side::Right);
  EXPECT_THROW(parse_side("middle"), std::invalid_argument);
}
