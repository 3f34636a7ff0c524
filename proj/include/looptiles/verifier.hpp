#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <tuple>
#include <vector>

#include "looptiles/board.hpp"
#include "looptiles/tracer.hpp"

namespace looptiles {

// ---------------------------------------------------------------------------
// Single-side toggles

struct ToggleResult {
  Configuration config;
  int loops_before = 0;
  int loops_after = 0;
  int delta_loops = 0;
  int delta_crossings = 0;
};

/// Flips one side bit. A distinct-policy input yields a free-policy result,
/// since the flipped code necessarily duplicates another tile.
inline ToggleResult toggle_side(const Configuration& config, int row, int col, Side side) {
  if (row < 0 || row >= config.rows() || col < 0 || col >= config.cols()) {
    throw std::out_of_range("toggle cell outside the board");
  }
  Configuration next = config.policy() == TilePolicy::DistinctSixteen
                           ? config.with_policy(TilePolicy::Free)
                           : config;
  const TileCode before = config.at(row, col);
  next.set(row, col, before.toggled(side));
  ToggleResult r{next, count_loops(config), count_loops(next), 0, 0};
  r.delta_loops = r.loops_after - r.loops_before;
  r.delta_crossings = before.crossed(side) ? -1 : 1;
  return r;
}

// ---------------------------------------------------------------------------
// Reports

enum class CheckStatus : std::uint8_t { Pass, Fail, Skipped };

inline std::string_view status_name(CheckStatus s) {
  switch (s) {
    case CheckStatus::Pass: return "pass";
    case CheckStatus::Fail: return "fail";
    case CheckStatus::Skipped: return "skipped";
  }
  return "?";
}

struct Counterexample {
  std::string check;
  std::string config;  // serialize_grid() text
  int loop_index = -1;  // -1 when the failure is configuration-wide
  std::string detail;
  std::optional<std::uint64_t> seed;

  auto key() const { return std::tie(check, config, loop_index, detail); }
  friend bool operator<(const Counterexample& a, const Counterexample& b) {
    return a.key() < b.key();
  }
  friend bool operator==(const Counterexample& a, const Counterexample& b) {
    return a.key() == b.key() && a.seed == b.seed;
  }
};

struct CheckTally {
  std::int64_t evaluated = 0;  // configurations on which the check ran
  std::int64_t failures = 0;
  std::int64_t skipped = 0;

  CheckStatus status() const {
    if (failures > 0) return CheckStatus::Fail;
    if (evaluated > 0) return CheckStatus::Pass;
    return CheckStatus::Skipped;
  }
};

inline constexpr std::array<std::string_view, 13> kCheckNames{
    "partition",   "loop_bound", "torus_loop_bound", "parity",    "mod4",
    "checkerboard", "four_color", "weave",           "bipartite", "balancing",
    "solved_balancing", "distinct_corollary", "toggle_delta"};

struct VerificationReport {
  std::map<std::string, CheckTally> checks;
  std::int64_t configs = 0;
  std::int64_t loops = 0;
  std::int64_t crossings = 0;
  std::vector<Counterexample> counterexamples;  // sorted, at most `cap` per check
  std::size_t cap = 10;

  // Distributions, filled by every run.
  std::map<int, std::int64_t> loop_count_hist;
  std::map<int, std::int64_t> length_hist;

  bool ok() const {
    for (const auto& [name, t] : checks) {
      if (t.failures > 0) return false;
    }
    return true;
  }

  CheckStatus status(const std::string& check) const {
    auto it = checks.find(check);
    return it == checks.end() ? CheckStatus::Skipped : it->second.status();
  }

  std::int64_t failures() const {
    std::int64_t n = 0;
    for (const auto& [name, t] : checks) n += t.failures;
    return n;
  }

  void record_counterexample(Counterexample cx) {
    auto pos = std::lower_bound(counterexamples.begin(), counterexamples.end(), cx);
    counterexamples.insert(pos, std::move(cx));
    trim();
  }

  void merge(const VerificationReport& other) {
    for (const auto& [name, t] : other.checks) {
      auto& mine = checks[name];
      mine.evaluated += t.evaluated;
      mine.failures += t.failures;
      mine.skipped += t.skipped;
    }
    configs += other.configs;
    loops += other.loops;
    crossings += other.crossings;
    for (auto [k, v] : other.loop_count_hist) loop_count_hist[k] += v;
    for (auto [k, v] : other.length_hist) length_hist[k] += v;
    std::vector<Counterexample> all;
    std::merge(counterexamples.begin(), counterexamples.end(), other.counterexamples.begin(),
               other.counterexamples.end(), std::back_inserter(all));
    counterexamples = std::move(all);
    trim();
  }

 private:
  // Keeps the canonically smallest `cap` counterexamples of each check, which
  // makes merged reports independent of how work was split.
  void trim() {
    std::map<std::string, std::size_t> per_check;
    std::vector<Counterexample> kept;
    for (auto& cx : counterexamples) {
      if (per_check[cx.check]++ < cap) kept.push_back(std::move(cx));
    }
    counterexamples = std::move(kept);
  }
};

struct SuiteOptions {
  bool toggles = false;  // also run the single-side toggle property (64x slower)
  std::size_t counterexample_cap = 10;
  std::optional<std::uint64_t> seed;  // recorded with counterexamples
};

namespace detail {

class SuiteRun {
 public:
  SuiteRun(const Configuration& config, const SuiteOptions& opts, VerificationReport& report)
      : config_(config), opts_(opts), report_(report) {}

  void skip(std::string_view check) { report_.checks[std::string(check)].skipped++; }

  /// Marks `check` as evaluated on this configuration; records a failure if !ok.
  void result(std::string_view check, bool ok, int loop_index = -1, std::string detail = {}) {
    auto& t = report_.checks[std::string(check)];
    if (!ok) {
      if (!failed_.count(std::string(check))) t.failures++;
      failed_[std::string(check)] = true;
      report_.record_counterexample(
          {std::string(check), serialize_grid(config_), loop_index, std::move(detail), opts_.seed});
    }
  }
  void evaluated(std::string_view check) { report_.checks[std::string(check)].evaluated++; }

 private:
  const Configuration& config_;
  const SuiteOptions& opts_;
  VerificationReport& report_;
  std::map<std::string, bool> failed_;
};

inline bool checkerboard_ok(const Loop& loop, const Dims& dims, bool even, std::string& why) {
  const auto& arcs = loop.arcs;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    if (arcs[i].orientation == arcs[(i + 1) % arcs.size()].orientation) {
      why = "entry orientation repeats at arc " + std::to_string(i);
      return false;
    }
  }
  if (!even) return true;
  // H entries sit on one colour of the checkerboard, V entries on the other.
  const int offset = (arcs[0].row + arcs[0].col + (arcs[0].orientation == Orientation::H ? 0 : 1)) & 1;
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    const int expect = (arcs[i].row + arcs[i].col + offset) & 1;
    const int got = arcs[i].orientation == Orientation::H ? 0 : 1;
    if (expect != got) {
      why = "cell (" + std::to_string(arcs[i].row) + "," + std::to_string(arcs[i].col) +
            ") entered against the loop's checkerboard";
      return false;
    }
  }
  (void)dims;
  return true;
}

inline bool four_color_ok(const Loop& loop, const Dims& dims, std::string& why) {
  const auto seq = color_sequence(loop, dims);
  if (seq.size() % 4 != 0) {
    why = "length " + std::to_string(seq.size()) + " not a multiple of 4";
    return false;
  }
  std::array<bool, 4> seen{};
  for (std::size_t i = 0; i < 4; ++i) {
    if (seen[static_cast<std::size_t>(seq[i])]) {
      why = "first four cells repeat a class";
      return false;
    }
    seen[static_cast<std::size_t>(seq[i])] = true;
  }
  for (std::size_t i = 4; i < seq.size(); ++i) {
    if (seq[i] != seq[i - 4]) {
      why = "class order breaks at arc " + std::to_string(i);
      return false;
    }
  }
  return true;
}

}  // namespace detail

/// Runs every applicable invariant check on one configuration and adds the
/// outcome to `report`.
inline void run_suite_into(const Configuration& config, const SuiteOptions& opts,
                           VerificationReport& report) {
  report.cap = opts.counterexample_cap;
  const LoopSet set = trace(config);
  const Dims& dims = set.dims;
  const bool torus = config.mode() == BoundaryMode::Torus;
  const bool even_torus = torus && dims.even();
  detail::SuiteRun run(config, opts, report);

  report.configs++;
  report.loops += static_cast<std::int64_t>(set.loops.size());
  report.crossings += set.total_crossings;
  report.loop_count_hist[static_cast<int>(set.loops.size())]++;
  for (const auto& l : set.loops) report.length_hist[l.length()]++;

  // Partition: each strand-end exactly once, lengths sum to the arc count.
  {
    run.evaluated("partition");
    std::vector<int> hits(static_cast<std::size_t>(dims.cells() * kPointsPerTile), 0);
    int sum = 0;
    for (const auto& l : set.loops) {
      sum += l.length();
      for (const auto& a : l.arcs) {
        hits[static_cast<std::size_t>(detail::point_id(dims.cols, a.row, a.col, a.entry))]++;
        hits[static_cast<std::size_t>(detail::point_id(dims.cols, a.row, a.col, a.exit))]++;
      }
    }
    const bool each_once = std::all_of(hits.begin(), hits.end(), [](int h) { return h == 1; });
    run.result("partition", each_once && sum == set.total_arcs, -1,
               "lengths sum to " + std::to_string(sum) + " of " + std::to_string(set.total_arcs));
  }

  if (!torus) {
    for (auto name : kCheckNames) {
      if (name != "partition") run.skip(name);
    }
    return;
  }

  const int n_loops = static_cast<int>(set.loops.size());
  const int torus_arcs = 4 * dims.cells();

  // Loops are at least 4 arcs long once both dimensions are >= 2; a 1-wide
  // torus admits 2-arc loops.
  if (dims.rows >= 2 && dims.cols >= 2) {
    run.evaluated("loop_bound");
    run.result("loop_bound", n_loops <= torus_arcs / 4, -1, std::to_string(n_loops) + " loops");
  } else {
    run.skip("loop_bound");
  }

  {
    run.evaluated("torus_loop_bound");
    int torus_loops = 0;
    for (const auto& l : set.loops) torus_loops += classify(l, dims) == LoopClass::TorusLoop;
    const int bound = torus_arcs / (2 * std::min(dims.rows, dims.cols));
    run.result("torus_loop_bound", torus_loops <= bound, -1,
               std::to_string(torus_loops) + " torus loops, bound " + std::to_string(bound));
  }

  if (even_torus) {
    run.evaluated("parity");
    run.result("parity", (n_loops - set.total_crossings) % 2 == 0, -1,
               std::to_string(n_loops) + " loops vs " + std::to_string(set.total_crossings) +
                   " crossings");
    run.evaluated("mod4");
    run.evaluated("checkerboard");
    run.evaluated("four_color");
  } else {
    run.skip("parity");
    run.skip("mod4");
    run.skip("checkerboard");
    run.skip("four_color");
  }
  run.evaluated("weave");
  run.evaluated("bipartite");
  run.evaluated("balancing");
  run.evaluated("solved_balancing");

  std::map<Crossing, std::pair<int, int>> crossing_visits;  // (over, under)
  for (int i = 0; i < n_loops; ++i) {
    const Loop& l = set.loops[static_cast<std::size_t>(i)];
    std::string why;
    if (even_torus) {
      run.result("mod4", l.length() % 4 == 0, i, "length " + std::to_string(l.length()));
      if (!detail::checkerboard_ok(l, dims, true, why)) run.result("checkerboard", false, i, why);
      if (!detail::four_color_ok(l, dims, why)) run.result("four_color", false, i, why);
    }
    const auto weave = weave_sequence(l);
    if (!alternates_cyclically(weave)) {
      run.result("weave", false, i, "over/under repeats along the loop");
    }
    for (const auto& step : weave) {
      auto& v = crossing_visits[step.crossing];
      (step.layer == Layer::Over ? v.first : v.second)++;
    }
    const ArcTally& t = l.tally;
    if (!t.bipartite_ok()) run.result("bipartite", false, i, "A+C+B'+D' != A'+C'+B+D");
    const Winding w = winding(l, dims);
    if (w.planar()) {
      if (!t.balancing_ok()) run.result("balancing", false, i, "planar loop unbalanced");
      if (l.net_deflection == 0 && !t.solved_balancing_ok()) {
        std::string counts;
        for (int k = 0; k < 8; ++k) {
          counts += std::string(kArcTypeNames[static_cast<std::size_t>(k)]) + "=" +
                    std::to_string(t.counts[static_cast<std::size_t>(k)]) + " ";
        }
        run.result("solved_balancing", false, i, "zero-deflection planar loop: " + counts);
      }
    }
  }
  {
    int visited_crossings = 0;
    for (const auto& [c, v] : crossing_visits) {
      ++visited_crossings;
      if (v.first != 1 || v.second != 1) {
        run.result("weave", false, -1,
                   "crossing (" + std::to_string(c.row) + "," + std::to_string(c.col) + "," +
                       side_letter(c.side) + ") visited " + std::to_string(v.first) +
                       " over / " + std::to_string(v.second) + " under");
      }
    }
    if (visited_crossings != set.total_crossings) {
      run.result("weave", false, -1, "not every crossing visited");
    }
  }

  if (config.policy() == TilePolicy::DistinctSixteen && even_torus) {
    run.evaluated("distinct_corollary");
    run.result("distinct_corollary", n_loops % 2 == 0 && set.longest() < torus_arcs, -1,
               std::to_string(n_loops) + " loops, longest " + std::to_string(set.longest()));
  } else {
    run.skip("distinct_corollary");
  }

  if (opts.toggles && even_torus) {
    run.evaluated("toggle_delta");
    const int base = n_loops;
    Configuration scratch = config.with_policy(TilePolicy::Free);
    for (int r = 0; r < dims.rows; ++r) {
      for (int c = 0; c < dims.cols; ++c) {
        const TileCode code = config.at(r, c);
        for (Side s : kSides) {
          scratch.set(r, c, code.toggled(s));
          const int delta = count_loops(scratch) - base;
          if (delta != 1 && delta != -1) {
            run.result("toggle_delta", false, -1,
                       "toggle (" + std::to_string(r) + "," + std::to_string(c) + "," +
                           side_letter(s) + ") changed loops by " + std::to_string(delta));
          }
        }
        scratch.set(r, c, code);
      }
    }
  } else {
    run.skip("toggle_delta");
  }
}

inline VerificationReport run_suite(const Configuration& config, const SuiteOptions& opts = {}) {
  VerificationReport report;
  report.cap = opts.counterexample_cap;
  run_suite_into(config, opts, report);
  return report;
}

namespace detail {

/// Splits [0, count) into contiguous chunks, one per worker, and merges the
/// partial reports in chunk order.
template <typename MakeConfig>
VerificationReport parallel_suite(std::int64_t count, const SuiteOptions& opts, unsigned threads,
                                  MakeConfig make) {
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::int64_t>(threads, std::max<std::int64_t>(count, 1)));
  std::vector<VerificationReport> parts(threads);
  std::vector<std::thread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&, t] {
      const std::int64_t lo = count * t / threads;
      const std::int64_t hi = count * (t + 1) / threads;
      parts[t].cap = opts.counterexample_cap;
      for (std::int64_t i = lo; i < hi; ++i) {
        SuiteOptions local = opts;
        std::optional<Configuration> config = make(i, local);
        if (config) run_suite_into(*config, local, parts[t]);
      }
    });
  }
  for (auto& w : workers) w.join();
  VerificationReport total;
  total.cap = opts.counterexample_cap;
  for (const auto& p : parts) total.merge(p);
  return total;
}

}  // namespace detail

/// Seeded random configurations; configuration i uses seed `seed + i`.
inline VerificationReport run_random_suite(Dims dims, TilePolicy policy, std::int64_t count,
                                           std::uint64_t seed, SuiteOptions opts = {},
                                           unsigned threads = 0) {
  if (policy == TilePolicy::DistinctSixteen && dims.cells() != 16) {
    throw ConfigError(ConfigError::Kind::WrongCellCount, "distinct policy needs 16 cells");
  }
  return detail::parallel_suite(count, opts, threads,
                                [&](std::int64_t i, SuiteOptions& local) {
                                  const std::uint64_t s = seed + static_cast<std::uint64_t>(i);
                                  local.seed = s;
                                  return std::optional<Configuration>(random_config(dims, policy, s));
                                });
}

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::int64_t kDefaultOracleBudget = std::int64_t{1} << 20;

/// Every configuration of the given board, each run through the suite.
/// Free policy enumerates 16^cells grids in lexicographic (row-major, first
/// cell most significant) order.
inline VerificationReport exhaustive_oracle(Dims dims, TilePolicy policy,
                                            std::int64_t budget = kDefaultOracleBudget,
                                            SuiteOptions opts = {}, unsigned threads = 0) {
  if (dims.rows < 1 || dims.cols < 1) throw ConfigError(ConfigError::Kind::BadDims, "bad dims");
  if (policy == TilePolicy::DistinctSixteen) {
    throw BudgetExceeded("distinct-16 space (16! configurations) exceeds any oracle budget");
  }
  const int cells = dims.cells();
  if (cells * 4 >= 62 || (std::int64_t{1} << (4 * cells)) > budget) {
    throw BudgetExceeded("16^" + std::to_string(cells) + " configurations exceed budget " +
                         std::to_string(budget));
  }
  const std::int64_t total = std::int64_t{1} << (4 * cells);
  return detail::parallel_suite(total, opts, threads, [&](std::int64_t index, SuiteOptions&) {
    std::vector<TileCode> codes(static_cast<std::size_t>(cells));
    for (int k = cells - 1; k >= 0; --k) {
      codes[static_cast<std::size_t>(k)] = TileCode(static_cast<int>(index & 15));
      index >>= 4;
    }
    return std::optional<Configuration>(
        Configuration(dims, BoundaryMode::Torus, TilePolicy::Free, std::move(codes)));
  });
}

/// Parity of one configuration.
inline CheckStatus verify_parity(const Configuration& config) {
  if (config.mode() != BoundaryMode::Torus || !config.dims().even()) return CheckStatus::Skipped;
  return (count_loops(config) - config.total_crossings()) % 2 == 0 ? CheckStatus::Pass
                                                                   : CheckStatus::Fail;
}

}  // namespace looptiles
