#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "looptiles/board.hpp"
#include "looptiles/tracer.hpp"

namespace looptiles {

enum class Objective : std::uint8_t { MaxLoopCount, MinLoopCount, MaxLongestLoop, MaxTorusLoops };

inline std::string_view objective_name(Objective o) {
  switch (o) {
    case Objective::MaxLoopCount: return "max-loops";
    case Objective::MinLoopCount: return "min-loops";
    case Objective::MaxLongestLoop: return "max-longest";
    case Objective::MaxTorusLoops: return "max-torus";
  }
  return "?";
}

inline Objective parse_objective(std::string_view s) {
  for (auto o : {Objective::MaxLoopCount, Objective::MinLoopCount, Objective::MaxLongestLoop,
                 Objective::MaxTorusLoops}) {
    if (s == objective_name(o)) return o;
  }
  throw std::invalid_argument("unknown objective '" + std::string(s) + "'");
}

inline int torus_loop_count(const LoopSet& set) {
  int n = 0;
  for (const auto& l : set.loops) n += classify(l, set.dims) == LoopClass::TorusLoop;
  return n;
}

/// The objective's natural value: a loop count or a loop length.
inline int score(Objective o, const LoopSet& set) {
  switch (o) {
    case Objective::MaxLoopCount:
    case Objective::MinLoopCount: return static_cast<int>(set.loops.size());
    case Objective::MaxLongestLoop: return set.longest();
    case Objective::MaxTorusLoops: return torus_loop_count(set);
  }
  return 0;
}

constexpr bool maximizes(Objective o) { return o != Objective::MinLoopCount; }

/// Best value the objective can possibly reach on a 4-arcs-per-tile torus.
/// Searches stop as soon as it is reached.
inline int objective_limit(Objective o, Dims dims, TilePolicy policy) {
  const int arcs = 4 * dims.cells();
  // Distinct tiles carry 32 crossings, so the loop count is even.
  const bool even_loops = policy == TilePolicy::DistinctSixteen && dims.even();
  switch (o) {
    case Objective::MaxLoopCount: return dims.rows >= 2 && dims.cols >= 2 ? arcs / 4 : arcs / 2;
    case Objective::MinLoopCount: return even_loops ? 2 : 1;
    case Objective::MaxLongestLoop: return even_loops ? arcs - 4 : arcs;
    case Objective::MaxTorusLoops: return arcs / (2 * std::min(dims.rows, dims.cols));
  }
  return 0;
}

struct SearchResult {
  Configuration best_config;
  int best_score = 0;
  std::int64_t evaluations = 0;
  std::uint64_t seed = 0;
  Objective objective = Objective::MaxLoopCount;
  std::vector<int> restart_best;        // best value reached by each restart
  std::vector<std::int64_t> restart_evals;
  int improvements = 0;                 // strict improvements of the running best, all restarts
};

struct SearchParams {
  TilePolicy policy = TilePolicy::DistinctSixteen;
  Objective objective = Objective::MaxLoopCount;
  std::int64_t budget = 100000;  // evaluations in total, split across restarts
  int restarts = 8;
  std::uint64_t seed = 1;
  Dims dims{4, 4};
  unsigned threads = 0;
};

namespace detail {

// Fitness used for acceptance. The first component is the objective (signed
// so larger is better); the second breaks plateaus without changing what is
// reported.
struct Fitness {
  int primary = 0;
  int secondary = 0;
  friend auto operator<=>(const Fitness&, const Fitness&) = default;
};

inline Fitness fitness(Objective o, const LoopSet& set) {
  const int value = score(o, set);
  int sumsq = 0;
  for (const auto& l : set.loops) sumsq += l.length() * l.length();
  switch (o) {
    case Objective::MaxLoopCount: return {value, -sumsq};
    case Objective::MinLoopCount: return {-value, sumsq};
    case Objective::MaxLongestLoop: return {value, sumsq};
    case Objective::MaxTorusLoops: {
      // Prefer many short loops overall, which is how torus loops appear.
      return {value, static_cast<int>(set.loops.size())};
    }
  }
  return {value, 0};
}

struct RestartOutcome {
  Configuration best;
  Fitness best_fit;
  std::int64_t evals = 0;
  int improvements = 0;
};

inline std::uint64_t restart_seed(std::uint64_t seed, int restart) {
  // splitmix64 step keeps restarts decorrelated for adjacent seeds.
  std::uint64_t z = seed + 0x9E3779B97F4A7C15ull * static_cast<std::uint64_t>(restart + 1);
  z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ull;
  z = (z ^ (z >> 27)) * 0x94D049BB133111EBull;
  return z ^ (z >> 31);
}

inline RestartOutcome climb(const SearchParams& p, int restart, std::int64_t budget) {
  Rng rng(restart_seed(p.seed, restart));
  Configuration current = random_config(p.dims, p.policy, rng());
  Fitness cur_fit = fitness(p.objective, trace(current));
  RestartOutcome out{current, cur_fit, 1, 0};
  const int limit = objective_limit(p.objective, p.dims, p.policy);
  const int target = maximizes(p.objective) ? limit : -limit;
  const int cells = p.dims.cells();

  while (out.evals < budget && out.best_fit.primary < target) {
    Configuration next = current;
    const bool toggle = p.policy == TilePolicy::Free && (rng() & 1);
    if (toggle) {
      const int cell = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(cells)));
      const Side side = kSides[uniform_below(rng, 4)];
      next.set(cell, next.at(cell).toggled(side));
    } else {
      const int a = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(cells)));
      int b = static_cast<int>(uniform_below(rng, static_cast<std::uint64_t>(cells - 1)));
      if (b >= a) ++b;
      next.swap_cells(a, b);
    }
    const Fitness f = fitness(p.objective, trace(next));
    ++out.evals;
    if (f >= cur_fit) {  // sideways moves allowed
      current = std::move(next);
      cur_fit = f;
      if (f.primary > out.best_fit.primary ||
          (f.primary == out.best_fit.primary && f > out.best_fit)) {
        if (f.primary > out.best_fit.primary) ++out.improvements;
        out.best = current;
        out.best_fit = f;
      }
    }
  }
  return out;
}

}  // namespace detail

/// Hill climbing with sideways moves and independent random restarts.
/// Neighbourhood: swap two cells; free policy also toggles single side bits.
inline SearchResult local_search(const SearchParams& p) {
  if (p.restarts < 1) throw std::invalid_argument("restarts must be at least 1");
  if (p.budget < 0) throw std::invalid_argument("budget must be non-negative");
  if (p.dims.cells() < 2) throw std::invalid_argument("search needs at least two cells");
  if (p.policy == TilePolicy::DistinctSixteen && p.dims.cells() != 16) {
    throw ConfigError(ConfigError::Kind::WrongCellCount, "distinct policy needs 16 cells");
  }

  std::vector<std::int64_t> shares(static_cast<std::size_t>(p.restarts));
  for (int r = 0; r < p.restarts; ++r) {
    shares[static_cast<std::size_t>(r)] = p.budget / p.restarts + (r < p.budget % p.restarts ? 1 : 0);
  }
  // The first restart always evaluates at least its starting configuration.
  shares[0] = std::max<std::int64_t>(shares[0], 1);

  std::vector<detail::RestartOutcome> outcomes(static_cast<std::size_t>(p.restarts));
  unsigned threads = p.threads ? p.threads : std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(p.restarts));
  std::vector<std::thread> workers;
  for (unsigned t = 0; t < threads; ++t) {
    workers.emplace_back([&, t] {
      for (int r = static_cast<int>(t); r < p.restarts; r += static_cast<int>(threads)) {
        const auto i = static_cast<std::size_t>(r);
        if (shares[i] > 0) outcomes[i] = detail::climb(p, r, shares[i]);
      }
    });
  }
  for (auto& w : workers) w.join();

  SearchResult result;
  result.seed = p.seed;
  result.objective = p.objective;
  const detail::RestartOutcome* best = nullptr;
  for (const auto& o : outcomes) {
    if (o.evals == 0) continue;
    result.evaluations += o.evals;
    result.improvements += o.improvements;
    result.restart_best.push_back(maximizes(p.objective) ? o.best_fit.primary
                                                         : -o.best_fit.primary);
    result.restart_evals.push_back(o.evals);
    if (!best || o.best_fit.primary > best->best_fit.primary ||
        (o.best_fit.primary == best->best_fit.primary &&
         grid_rows(o.best) < grid_rows(best->best))) {
      best = &o;
    }
  }
  result.best_config = best->best;
  result.best_score = score(p.objective, trace(best->best));
  return result;
}

// ---------------------------------------------------------------------------
// Gray-code tori

struct GrayEnumeration {
  std::vector<Configuration> configs;  // every placement, sorted by grid text
  std::int64_t raw_count = 0;
  std::int64_t up_to_translation = 0;
};

inline bool one_bit_apart(int a, int b) { return std::popcount(unsigned(a ^ b)) == 1; }

inline Configuration translate(const Configuration& c, int dr, int dc) {
  Configuration out = c;
  for (int r = 0; r < c.rows(); ++r) {
    for (int col = 0; col < c.cols(); ++col) {
      out.set((r + dr) % c.rows(), (col + dc) % c.cols(), c.at(r, col));
    }
  }
  return out;
}

namespace detail {

inline void sort_unique(std::vector<Configuration>& v) {
  std::sort(v.begin(), v.end(), [](const Configuration& a, const Configuration& b) {
    return grid_rows(a) < grid_rows(b);
  });
  v.erase(std::unique(v.begin(), v.end()), v.end());
}

inline Configuration from_grid(const std::array<int, 16>& g) {
  std::vector<TileCode> codes;
  for (int v : g) codes.emplace_back(v);
  return Configuration(Dims{4, 4}, BoundaryMode::Torus, TilePolicy::DistinctSixteen,
                       std::move(codes));
}

}  // namespace detail

/// All placements of the sixteen codes on the 4x4 torus in which every pair of
/// neighbouring tiles, wraparound included, differs in exactly one bit.
/// Code 0 is pinned to (0,0) during the search; the remaining placements are
/// its torus translations.
inline GrayEnumeration enumerate_gray(Dims dims) {
  if (dims.rows != 4 || dims.cols != 4) {
    throw std::invalid_argument("gray enumeration supports the 4x4 torus only");
  }
  std::vector<Configuration> pinned;
  std::array<int, 16> grid{};
  unsigned used = 1;
  grid[0] = 0;
  auto fits = [&](int cell, int v) {
    const int r = cell / 4;
    const int c = cell % 4;
    if (c > 0 && !one_bit_apart(grid[cell - 1], v)) return false;
    if (c == 3 && !one_bit_apart(grid[cell - 3], v)) return false;
    if (r > 0 && !one_bit_apart(grid[cell - 4], v)) return false;
    if (r == 3 && !one_bit_apart(grid[c], v)) return false;
    return true;
  };
  auto place = [&](auto&& self, int cell) -> void {
    if (cell == 16) {
      pinned.push_back(detail::from_grid(grid));
      return;
    }
    for (int v = 1; v < 16; ++v) {
      if ((used >> v) & 1 || !fits(cell, v)) continue;
      grid[static_cast<std::size_t>(cell)] = v;
      used |= 1u << v;
      self(self, cell + 1);
      used &= ~(1u << v);
    }
  };
  place(place, 1);

  GrayEnumeration out;
  out.up_to_translation = static_cast<std::int64_t>(pinned.size());
  for (const auto& c : pinned) {
    for (int dr = 0; dr < 4; ++dr) {
      for (int dc = 0; dc < 4; ++dc) out.configs.push_back(translate(c, dr, dc));
    }
  }
  detail::sort_unique(out.configs);
  out.raw_count = static_cast<std::int64_t>(out.configs.size());
  return out;
}

// ---------------------------------------------------------------------------
// Pandiagonal magic squares over 0..15

inline constexpr int kMagicSum = 30;

/// True when all rows, columns and the eight broken diagonals sum to 30.
inline bool is_pandiagonal(const Configuration& c) {
  if (c.rows() != 4 || c.cols() != 4) return false;
  auto v = [&](int r, int col) { return c.at(((r % 4) + 4) % 4, ((col % 4) + 4) % 4).value(); };
  for (int i = 0; i < 4; ++i) {
    int row = 0, col = 0, diag = 0, anti = 0;
    for (int k = 0; k < 4; ++k) {
      row += v(i, k);
      col += v(k, i);
      diag += v(k, i + k);
      anti += v(k, i - k);
    }
    if (row != kMagicSum || col != kMagicSum || diag != kMagicSum || anti != kMagicSum) {
      return false;
    }
  }
  return true;
}

/// Backtracking with propagation over the sixteen lines (rows, columns and
/// broken diagonals): a line with three cells placed forces the fourth.
inline std::vector<Configuration> enumerate_pandiagonal() {
  std::array<std::array<int, 4>, 16> lines{};
  for (int i = 0; i < 4; ++i) {
    for (int k = 0; k < 4; ++k) {
      lines[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] = i * 4 + k;
      lines[static_cast<std::size_t>(4 + i)][static_cast<std::size_t>(k)] = k * 4 + i;
      lines[static_cast<std::size_t>(8 + i)][static_cast<std::size_t>(k)] = k * 4 + (i + k) % 4;
      lines[static_cast<std::size_t>(12 + i)][static_cast<std::size_t>(k)] = k * 4 + (i - k + 4) % 4;
    }
  }
  std::array<std::vector<int>, 16> lines_of;
  for (int l = 0; l < 16; ++l) {
    for (int cell : lines[static_cast<std::size_t>(l)]) lines_of[static_cast<std::size_t>(cell)].push_back(l);
  }

  std::vector<Configuration> out;
  std::array<int, 16> g{};
  g.fill(-1);
  std::array<int, 16> sum{};
  std::array<int, 16> filled{};
  unsigned used = 0;

  auto place = [&](int cell, int v) {
    if (v < 0 || v > 15 || ((used >> v) & 1)) return false;
    for (int l : lines_of[static_cast<std::size_t>(cell)]) {
      const auto li = static_cast<std::size_t>(l);
      const int s = sum[li] + v;
      if (s > kMagicSum || (filled[li] == 3 && s != kMagicSum)) return false;
    }
    g[static_cast<std::size_t>(cell)] = v;
    used |= 1u << v;
    for (int l : lines_of[static_cast<std::size_t>(cell)]) {
      sum[static_cast<std::size_t>(l)] += v;
      filled[static_cast<std::size_t>(l)]++;
    }
    return true;
  };
  auto unplace = [&](int cell) {
    const int v = g[static_cast<std::size_t>(cell)];
    for (int l : lines_of[static_cast<std::size_t>(cell)]) {
      sum[static_cast<std::size_t>(l)] -= v;
      filled[static_cast<std::size_t>(l)]--;
    }
    used &= ~(1u << v);
    g[static_cast<std::size_t>(cell)] = -1;
  };

  auto search = [&](auto&& self) -> void {
    for (int l = 0; l < 16; ++l) {
      if (filled[static_cast<std::size_t>(l)] != 3) continue;
      int cell = -1;
      for (int c : lines[static_cast<std::size_t>(l)]) {
        if (g[static_cast<std::size_t>(c)] < 0) cell = c;
      }
      if (place(cell, kMagicSum - sum[static_cast<std::size_t>(l)])) {
        self(self);
        unplace(cell);
      }
      return;
    }
    const auto it = std::find(g.begin(), g.end(), -1);
    if (it == g.end()) {
      out.push_back(detail::from_grid(g));
      return;
    }
    const int cell = static_cast<int>(it - g.begin());
    for (int v = 0; v < 16; ++v) {
      if (place(cell, v)) {
        self(self);
        unplace(cell);
      }
    }
  };
  search(search);
  detail::sort_unique(out);
  return out;
}

// ---------------------------------------------------------------------------
// Sampling

struct Distribution {
  std::int64_t samples = 0;
  std::map<int, std::int64_t> loop_count;
  std::map<int, std::int64_t> length;              // per loop
  std::map<std::vector<int>, std::int64_t> shapes;  // sorted length multiset per config
};

inline void add_sample(Distribution& d, const LoopSet& set) {
  d.samples++;
  d.loop_count[static_cast<int>(set.loops.size())]++;
  std::vector<int> shape;
  for (const auto& l : set.loops) {
    d.length[l.length()]++;
    shape.push_back(l.length());
  }
  std::sort(shape.begin(), shape.end(), std::greater<>());
  d.shapes[shape]++;
}

inline Distribution distribution_scan(Dims dims, TilePolicy policy, std::int64_t samples,
                                      std::uint64_t seed) {
  Distribution d;
  for (std::int64_t i = 0; i < samples; ++i) {
    add_sample(d, trace(random_config(dims, policy, seed + static_cast<std::uint64_t>(i))));
  }
  return d;
}

}  // namespace looptiles
