#include <gtest/gtest.h>

#include <algorithm>
#include <set>

#include "looptiles/verifier.hpp"
#include "looptiles/wire.hpp"

using namespace looptiles;

namespace {

Configuration free_grid(const char* text) { return parse_grid(text, {BoundaryMode::Torus, TilePolicy::Free}); }

SuiteOptions with_toggles() {
  SuiteOptions o;
  o.toggles = true;
  return o;
}

}  // namespace

TEST(Verifier, ParityOnExamples) {
  EXPECT_EQ(verify_parity(free_grid("0000\n0000\n0000\n0000")), CheckStatus::Pass);
  EXPECT_EQ(verify_parity(free_grid("8000\n0000\n0000\n0000")), CheckStatus::Pass);
  EXPECT_EQ(verify_parity(free_grid("000\n000\n000")), CheckStatus::Skipped);
}

TEST(Verifier, ToggleExamples) {
  const auto zero = free_grid("0000\n0000\n0000\n0000");
  const auto t = toggle_side(zero, 0, 0, Side::Left);
  EXPECT_EQ(t.config.at(0, 0), TileCode(0b1000));
  EXPECT_EQ(t.loops_before, 16);
  EXPECT_EQ(t.loops_after, 15);
  EXPECT_EQ(t.delta_loops, -1);
  EXPECT_EQ(t.delta_crossings, 1);

  const auto back = toggle_side(t.config, 0, 0, Side::Left);
  EXPECT_EQ(back.config, zero);
  EXPECT_EQ(back.delta_loops, 1);
  EXPECT_EQ(back.delta_crossings, -1);

  EXPECT_THROW(toggle_side(zero, 4, 0, Side::Top), std::out_of_range);
}

TEST(Verifier, ToggleOnDistinctInputGivesFreeResult) {
  const auto c = random_config({4, 4}, TilePolicy::DistinctSixteen, 3);
  const auto t = toggle_side(c, 1, 2, Side::Bottom);
  EXPECT_EQ(t.config.policy(), TilePolicy::Free);
  EXPECT_EQ(t.config.at(1, 2), c.at(1, 2).toggled(Side::Bottom));
}

TEST(Verifier, DoubleToggleIsIdentity) {
  for (std::uint64_t seed = 0; seed < 100; ++seed) {
    const auto c = random_config({4, 4}, TilePolicy::Free, seed);
    const int r = static_cast<int>(seed % 4), col = static_cast<int>(seed / 4 % 4);
    const Side s = kSides[seed % 4];
    const auto once = toggle_side(c, r, col, s);
    const auto twice = toggle_side(once.config, r, col, s);
    EXPECT_EQ(twice.config, c);
    EXPECT_EQ(once.delta_loops, -twice.delta_loops);
    EXPECT_TRUE(once.delta_loops == 1 || once.delta_loops == -1);
  }
}

TEST(Verifier, AllZeroPassesEveryCheck) {
  const auto r = run_suite(free_grid("0000\n0000\n0000\n0000"), with_toggles());
  EXPECT_TRUE(r.ok());
  for (auto name : kCheckNames) {
    const auto want = name == "distinct_corollary" ? CheckStatus::Skipped : CheckStatus::Pass;
    EXPECT_EQ(r.status(std::string(name)), want) << name;
  }
}

TEST(Verifier, DistinctConfigsPassEveryCheck) {
  const auto r = run_random_suite({4, 4}, TilePolicy::DistinctSixteen, 500, 11, with_toggles());
  EXPECT_TRUE(r.ok());
  EXPECT_EQ(r.configs, 500);
  for (auto name : kCheckNames) EXPECT_EQ(r.status(std::string(name)), CheckStatus::Pass) << name;
  EXPECT_TRUE(r.counterexamples.empty());
}

TEST(Verifier, OddBoardGatesParityChecks) {
  const auto r = run_suite(random_config({3, 3}, TilePolicy::Free, 4), with_toggles());
  for (auto name : {"parity", "mod4", "checkerboard", "four_color", "toggle_delta", "distinct_corollary"}) {
    EXPECT_EQ(r.status(name), CheckStatus::Skipped) << name;
  }
  for (auto name : {"partition", "weave", "bipartite", "balancing", "loop_bound"}) {
    EXPECT_EQ(r.status(name), CheckStatus::Pass) << name;
  }
}

TEST(Verifier, CappedRunsPartitionOnly) {
  const auto c = random_config({3, 4}, TilePolicy::Free, 9, BoundaryMode::Capped);
  const auto r = run_suite(c);
  EXPECT_EQ(r.status("partition"), CheckStatus::Pass);
  EXPECT_EQ(r.status("weave"), CheckStatus::Skipped);
}

TEST(Verifier, OneByOneOracle) {
  const auto r = exhaustive_oracle({1, 1}, TilePolicy::Free, kDefaultOracleBudget, with_toggles(), 1);
  EXPECT_EQ(r.configs, 16);
  EXPECT_EQ(r.status("parity"), CheckStatus::Skipped);
  EXPECT_EQ(r.status("partition"), CheckStatus::Pass);
  EXPECT_TRUE(r.ok());
}

TEST(Verifier, OracleBudget) {
  EXPECT_THROW(exhaustive_oracle({4, 4}, TilePolicy::Free), BudgetExceeded);
  EXPECT_THROW(exhaustive_oracle({2, 2}, TilePolicy::DistinctSixteen), BudgetExceeded);
  EXPECT_THROW(exhaustive_oracle({2, 2}, TilePolicy::Free, 1000), BudgetExceeded);
}

TEST(Verifier, CounterexamplesAreCappedAndSorted) {
  VerificationReport r;
  r.cap = 3;
  for (int i = 9; i >= 0; --i) {
    Counterexample cx;
    cx.check = "parity";
    cx.config = std::to_string(i);
    cx.loop_index = -1;
    r.record_counterexample(cx);
  }
  Counterexample other;
  other.check = "weave";
  other.config = "x";
  r.record_counterexample(other);
  ASSERT_EQ(r.counterexamples.size(), 4u);
  EXPECT_EQ(r.counterexamples[0].config, "0");
  EXPECT_EQ(r.counterexamples[2].config, "2");
  EXPECT_EQ(r.counterexamples[3].check, "weave");
  EXPECT_TRUE(std::is_sorted(r.counterexamples.begin(), r.counterexamples.end()));
}

TEST(Verifier, MergeAddsTallies) {
  VerificationReport a = run_suite(free_grid("00\n00"));
  const VerificationReport b = run_suite(free_grid("80\n00"));
  a.merge(b);
  EXPECT_EQ(a.configs, 2);
  EXPECT_EQ(a.checks["parity"].evaluated, 2);
  EXPECT_EQ(a.loop_count_hist[4], 1);
  EXPECT_EQ(a.loop_count_hist[3], 1);
}

TEST(Verifier, ResultIndependentOfThreadCount) {
  const auto one = run_random_suite({4, 4}, TilePolicy::Free, 3000, 77, {}, 1);
  const auto four = run_random_suite({4, 4}, TilePolicy::Free, 3000, 77, {}, 4);
  EXPECT_EQ(verification_to_json(one).dump(), verification_to_json(four).dump());
  const auto o1 = exhaustive_oracle({1, 2}, TilePolicy::Free, kDefaultOracleBudget, {}, 1);
  const auto o3 = exhaustive_oracle({1, 2}, TilePolicy::Free, kDefaultOracleBudget, {}, 3);
  EXPECT_EQ(verification_to_json(o1).dump(), verification_to_json(o3).dump());
}

// Every free 2x2 grid: loop-count parity against an independent count of the
// crossing bits, and the toggle property.
TEST(Verifier, TwoByTwoExhaustive) {
  const auto r = exhaustive_oracle({2, 2}, TilePolicy::Free, kDefaultOracleBudget, with_toggles());
  EXPECT_EQ(r.configs, 65536);
  EXPECT_TRUE(r.ok()) << verification_to_json(r).dump(2);
  EXPECT_EQ(r.checks.at("toggle_delta").evaluated, 65536);
  std::int64_t per_length = 0;
  for (auto [len, n] : r.length_hist) {
    EXPECT_EQ(len % 4, 0);
    per_length += static_cast<std::int64_t>(len) * n;
  }
  EXPECT_EQ(per_length, 65536 * 16);
}
