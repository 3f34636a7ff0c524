#pragma once

#include <array>
#include <algorithm>
#include <cassert>
#include <cstdint>
#include <stdexcept>
#include <string_view>
#include <utility>
#include <vector>

#include "looptiles/board.hpp"
#include "looptiles/tile.hpp"

namespace looptiles {

enum class Orientation : std::uint8_t { H, V };

// Side midpoints in half-tile units, y pointing down.
inline constexpr std::array<std::array<int, 2>, 4> kSideMid{{{0, 1}, {1, 0}, {2, 1}, {1, 2}}};
// Outward normals per side.
inline constexpr std::array<std::array<int, 2>, 4> kSideNormal{{{-1, 0}, {0, -1}, {1, 0}, {0, 1}}};

struct DirectedArc {
  int row = 0;
  int col = 0;
  TileCode code;
  Point entry = Point::Lu;
  Point exit = Point::Tl;
  int dx = 0;  // half-tile units, always +-1
  int dy = 0;
  Orientation orientation = Orientation::H;
  int turn = 0;  // +90 clockwise on screen, -90 counterclockwise

  static DirectedArc make(int row, int col, TileCode code, Point entry, Point exit) {
    DirectedArc a;
    a.row = row;
    a.col = col;
    a.code = code;
    a.entry = entry;
    a.exit = exit;
    const int se = static_cast<int>(side_of(entry));
    const int sx = static_cast<int>(side_of(exit));
    a.dx = kSideMid[sx][0] - kSideMid[se][0];
    a.dy = kSideMid[sx][1] - kSideMid[se][1];
    a.orientation = is_horizontal_entry(side_of(entry)) ? Orientation::H : Orientation::V;
    const int in_x = -kSideNormal[se][0];
    const int in_y = -kSideNormal[se][1];
    const int cross = in_x * kSideNormal[sx][1] - in_y * kSideNormal[sx][0];
    a.turn = cross > 0 ? 90 : -90;
    return a;
  }
};

// ---------------------------------------------------------------------------
// Arc types. Letters by displacement signs and entry orientation:
//   (+,+,H)=A  (+,+,V)=A'  (+,-,V)=B  (+,-,H)=B'
//   (-,-,H)=C  (-,-,V)=C'  (-,+,V)=D  (-,+,H)=D'
// Unprimed arcs turn clockwise, primed counterclockwise.

enum class ArcType : std::uint8_t { A, Ap, B, Bp, C, Cp, D, Dp };

inline constexpr std::array<std::string_view, 8> kArcTypeNames{"A", "A'", "B", "B'",
                                                               "C", "C'", "D", "D'"};

constexpr ArcType classify_arc(int dx, int dy, Orientation o) {
  const bool h = o == Orientation::H;
  if (dx > 0 && dy > 0) return h ? ArcType::A : ArcType::Ap;
  if (dx > 0 && dy < 0) return h ? ArcType::Bp : ArcType::B;
  if (dx < 0 && dy < 0) return h ? ArcType::C : ArcType::Cp;
  return h ? ArcType::Dp : ArcType::D;
}

constexpr ArcType classify_arc(const DirectedArc& a) { return classify_arc(a.dx, a.dy, a.orientation); }

constexpr bool is_primed(ArcType t) { return static_cast<int>(t) & 1; }

struct ArcTally {
  std::array<int, 8> counts{};

  int operator[](ArcType t) const { return counts[static_cast<int>(t)]; }
  int& operator[](ArcType t) { return counts[static_cast<int>(t)]; }

  int total() const {
    int n = 0;
    for (int c : counts) n += c;
    return n;
  }

  /// A+C+B'+D' = A'+C'+B+D (H-entered arcs balance V-entered arcs).
  bool bipartite_ok() const {
    const auto& t = *this;
    return t[ArcType::A] + t[ArcType::C] + t[ArcType::Bp] + t[ArcType::Dp] ==
           t[ArcType::Ap] + t[ArcType::Cp] + t[ArcType::B] + t[ArcType::D];
  }
  bool zero_deflection() const {
    const auto& t = *this;
    return t[ArcType::A] + t[ArcType::B] + t[ArcType::C] + t[ArcType::D] ==
           t[ArcType::Ap] + t[ArcType::Bp] + t[ArcType::Cp] + t[ArcType::Dp];
  }
  /// x and y balance, required of every loop with winding (0,0).
  bool balancing_ok() const {
    const auto& t = *this;
    const bool x = t[ArcType::A] + t[ArcType::Ap] + t[ArcType::B] + t[ArcType::Bp] ==
                   t[ArcType::C] + t[ArcType::Cp] + t[ArcType::D] + t[ArcType::Dp];
    const bool y = t[ArcType::A] + t[ArcType::Ap] + t[ArcType::D] + t[ArcType::Dp] ==
                   t[ArcType::B] + t[ArcType::Bp] + t[ArcType::C] + t[ArcType::Cp];
    return x && y;
  }
  /// A=A'=C=C' and B=B'=D=D'.
  bool solved_balancing_ok() const {
    const auto& t = *this;
    const int a = t[ArcType::A];
    const int b = t[ArcType::B];
    return t[ArcType::Ap] == a && t[ArcType::C] == a && t[ArcType::Cp] == a &&
           t[ArcType::Bp] == b && t[ArcType::D] == b && t[ArcType::Dp] == b;
  }

  /// Tally of the same loop traversed backwards: A<->C', C<->A', B<->D', D<->B'.
  ArcTally reversed() const {
    ArcTally r;
    auto map = [&](ArcType from, ArcType to) { r[to] = (*this)[from]; };
    map(ArcType::A, ArcType::Cp);
    map(ArcType::Cp, ArcType::A);
    map(ArcType::C, ArcType::Ap);
    map(ArcType::Ap, ArcType::C);
    map(ArcType::B, ArcType::Dp);
    map(ArcType::Dp, ArcType::B);
    map(ArcType::D, ArcType::Bp);
    map(ArcType::Bp, ArcType::D);
    return r;
  }

  friend bool operator==(const ArcTally&, const ArcTally&) = default;
};

// ---------------------------------------------------------------------------

/// The intersection at a crossed side of one tile.
struct Crossing {
  int row = 0;
  int col = 0;
  Side side = Side::Left;

  GlobalPoint over_end() const { return {row, col, over_point(side)}; }
  GlobalPoint under_end() const { return {row, col, sibling(over_point(side))}; }

  friend bool operator==(const Crossing&, const Crossing&) = default;
  friend auto operator<=>(const Crossing& a, const Crossing& b) {
    if (auto c = a.row <=> b.row; c != 0) return c;
    if (auto c = a.col <=> b.col; c != 0) return c;
    return a.side <=> b.side;
  }
};

enum class Layer : std::uint8_t { Over, Under };

struct WeaveStep {
  Crossing crossing;
  Layer layer = Layer::Over;
  friend bool operator==(const WeaveStep&, const WeaveStep&) = default;
};

struct Winding {
  int wx = 0;
  int wy = 0;
  bool planar() const { return wx == 0 && wy == 0; }
  friend bool operator==(const Winding&, const Winding&) = default;
};

enum class LoopClass : std::uint8_t { Planar, TorusLoop };

struct Loop {
  std::vector<DirectedArc> arcs;
  int caps = 0;       // capped mode only
  int sum_dx = 0;     // half-tile units
  int sum_dy = 0;
  int net_deflection = 0;
  ArcTally tally;

  int length() const { return static_cast<int>(arcs.size()) + caps; }
};

struct LoopSet {
  Dims dims;
  BoundaryMode mode = BoundaryMode::Torus;
  std::vector<Loop> loops;
  int total_arcs = 0;
  int total_crossings = 0;

  int longest() const {
    int best = 0;
    for (const auto& l : loops) best = std::max(best, l.length());
    return best;
  }
};

namespace detail {

inline int point_id(int cols, int row, int col, Point p) {
  return ((row * cols + col) << 3) | index_of(p);
}

/// Next entry point after leaving the tile at `gp`; counts caps in capped mode.
inline GlobalPoint advance(const Configuration& config, const GlobalPoint& gp, int& caps) {
  auto g = glue(config, gp);
  if (auto* cap = std::get_if<EdgeCap>(&g)) {
    ++caps;
    return cap->other;
  }
  return std::get<GlobalPoint>(g);
}

}  // namespace detail

/// Partition of every strand-end into closed loops. Loops are ordered by their
/// smallest (row, col, point) strand-end and each begins by entering the tile there.
inline LoopSet trace(const Configuration& config) {
  const int rows = config.rows();
  const int cols = config.cols();
  const int n_points = rows * cols * kPointsPerTile;
  std::vector<std::uint8_t> visited(static_cast<std::size_t>(n_points), 0);

  LoopSet out;
  out.dims = config.dims();
  out.mode = config.mode();
  out.total_crossings = config.total_crossings();
  out.total_arcs = 4 * rows * cols + cap_count(config);

  for (int start = 0; start < n_points; ++start) {
    if (visited[static_cast<std::size_t>(start)]) continue;
    Loop loop;
    GlobalPoint at{(start >> 3) / cols, (start >> 3) % cols, static_cast<Point>(start & 7)};
    do {
      const TileCode code = config.at(at.row, at.col);
      const Point exit = kMatchings[code.value()](at.point);
      visited[static_cast<std::size_t>(detail::point_id(cols, at.row, at.col, at.point))] = 1;
      visited[static_cast<std::size_t>(detail::point_id(cols, at.row, at.col, exit))] = 1;
      DirectedArc arc = DirectedArc::make(at.row, at.col, code, at.point, exit);
      loop.sum_dx += arc.dx;
      loop.sum_dy += arc.dy;
      loop.net_deflection += arc.turn;
      loop.tally[classify_arc(arc)] += 1;
      loop.arcs.push_back(arc);
      at = detail::advance(config, GlobalPoint{at.row, at.col, exit}, loop.caps);
    } while (detail::point_id(cols, at.row, at.col, at.point) != start);
    out.loops.push_back(std::move(loop));
  }
  return out;
}

/// Loop count only; no per-loop data is built.
inline int count_loops(const Configuration& config) {
  const int cols = config.cols();
  const int n_points = config.rows() * cols * kPointsPerTile;
  std::vector<std::uint8_t> visited(static_cast<std::size_t>(n_points), 0);
  int loops = 0;
  int caps = 0;
  for (int start = 0; start < n_points; ++start) {
    if (visited[static_cast<std::size_t>(start)]) continue;
    ++loops;
    GlobalPoint at{(start >> 3) / cols, (start >> 3) % cols, static_cast<Point>(start & 7)};
    int id = start;
    do {
      const Point exit = kMatchings[config.at(at.row, at.col).value()](at.point);
      visited[static_cast<std::size_t>(id)] = 1;
      visited[static_cast<std::size_t>(detail::point_id(cols, at.row, at.col, exit))] = 1;
      at = detail::advance(config, GlobalPoint{at.row, at.col, exit}, caps);
      id = detail::point_id(cols, at.row, at.col, at.point);
    } while (id != start);
  }
  return loops;
}

/// Torus-mode winding numbers. Non-integral windings mean the tracer is broken.
inline Winding winding(const Loop& loop, const Dims& dims) {
  assert(loop.sum_dx % (2 * dims.cols) == 0 && loop.sum_dy % (2 * dims.rows) == 0);
  return Winding{loop.sum_dx / (2 * dims.cols), loop.sum_dy / (2 * dims.rows)};
}

inline LoopClass classify(const Loop& loop, const Dims& dims) {
  return winding(loop, dims).planar() ? LoopClass::Planar : LoopClass::TorusLoop;
}

inline const ArcTally& arc_tally(const Loop& loop) { return loop.tally; }
inline int net_deflection(const Loop& loop) { return loop.net_deflection; }

/// Cell class as 2*(row mod 2) + (col mod 2).
using CellClass = int;

inline std::vector<CellClass> color_sequence(const Loop& loop, const Dims& dims) {
  if (!dims.even()) {
    throw std::invalid_argument("color sequence needs even board dimensions");
  }
  std::vector<CellClass> seq;
  seq.reserve(loop.arcs.size());
  for (const auto& a : loop.arcs) seq.push_back(2 * (a.row % 2) + (a.col % 2));
  return seq;
}

/// Crossings met along the loop: entry-side crossing, then exit-side crossing, per arc.
inline std::vector<WeaveStep> weave_sequence(const Loop& loop) {
  std::vector<WeaveStep> seq;
  for (const auto& a : loop.arcs) {
    for (Point p : {a.entry, a.exit}) {
      const Side s = side_of(p);
      if (a.code.crossed(s)) {
        seq.push_back({Crossing{a.row, a.col, s}, is_over_point(p) ? Layer::Over : Layer::Under});
      }
    }
  }
  return seq;
}

inline bool alternates_cyclically(const std::vector<WeaveStep>& seq) {
  const std::size_t n = seq.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (seq[i].layer == seq[(i + 1) % n].layer) return false;
  }
  return true;
}

/// Tile cells visited by the loop, in order (repeats kept).
inline std::vector<std::pair<int, int>> cells_visited(const Loop& loop) {
  std::vector<std::pair<int, int>> out;
  out.reserve(loop.arcs.size());
  for (const auto& a : loop.arcs) out.emplace_back(a.row, a.col);
  return out;
}

}  // namespace looptiles
