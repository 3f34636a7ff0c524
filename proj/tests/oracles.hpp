#pragma once

// Independent reference implementations shared by the unit tests and the
// acceptance binary. None of them reuse the library's search or trace code.

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <numeric>
#include <variant>
#include <vector>

#include "looptiles/board.hpp"

namespace looptiles::oracle {

using Row = std::array<int, 4>;

inline bool adjacent_codes(int a, int b) { return std::popcount(unsigned(a ^ b)) == 1; }

// Oracle: union-find over strand-ends, joining tile pairs and board glue.
// Returns sorted loop lengths (arcs + caps).
inline std::vector<int> flood_fill_lengths(const Configuration& c) {
  const int n = c.rows() * c.cols() * 8;
  std::vector<int> parent(static_cast<std::size_t>(n));
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  auto id = [&](int r, int col, Point p) { return (r * c.cols() + col) * 8 + index_of(p); };
  std::vector<int> caps_at(static_cast<std::size_t>(n), 0);
  for (int r = 0; r < c.rows(); ++r) {
    for (int col = 0; col < c.cols(); ++col) {
      for (auto [a, b] : kMatchings[c.at(r, col).value()].pairs()) {
        parent[find(id(r, col, a))] = find(id(r, col, b));
      }
      for (int p = 0; p < 8; ++p) {
        const GlobalPoint gp{r, col, static_cast<Point>(p)};
        const auto g = glue(c, gp);
        if (const auto* cap = std::get_if<EdgeCap>(&g)) {
          parent[find(id(r, col, gp.point))] = find(id(cap->other.row, cap->other.col, cap->other.point));
          if (slot_of(gp.point) == Slot::First) caps_at[id(r, col, gp.point)] = 1;
        } else {
          const auto& o = std::get<GlobalPoint>(g);
          parent[find(id(r, col, gp.point))] = find(id(o.row, o.col, o.point));
        }
      }
    }
  }
  std::vector<int> points(static_cast<std::size_t>(n), 0), caps(static_cast<std::size_t>(n), 0);
  for (int i = 0; i < n; ++i) {
    points[find(i)]++;
    caps[find(i)] += caps_at[i];
  }
  std::vector<int> lengths;
  for (int i = 0; i < n; ++i) {
    if (points[i]) lengths.push_back(points[i] / 2 + caps[i]);
  }
  std::sort(lengths.begin(), lengths.end());
  return lengths;
}


inline unsigned mask_of(const Row& r) {
  unsigned m = 0;
  for (int v : r) m |= 1u << v;
  return m;
}

// Oracle: every cyclic one-bit row, then every 4-tuple of pairwise disjoint rows
// whose vertical neighbours (wraparound included) differ in one bit.
inline std::int64_t gray_brute_force() {
  std::vector<Row> rows;
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b)
      for (int c = 0; c < 16; ++c)
        for (int d = 0; d < 16; ++d) {
          const Row r{a, b, c, d};
          if (std::popcount(mask_of(r)) != 4) continue;
          if (adjacent_codes(a, b) && adjacent_codes(b, c) && adjacent_codes(c, d) && adjacent_codes(d, a)) {
            rows.push_back(r);
          }
        }
  auto stacks = [](const Row& top, const Row& below) {
    for (int k = 0; k < 4; ++k)
      if (!adjacent_codes(top[k], below[k])) return false;
    return (mask_of(top) & mask_of(below)) == 0;
  };
  std::int64_t n = 0;
  for (const auto& r0 : rows)
    for (const auto& r1 : rows)
      if (stacks(r0, r1))
        for (const auto& r2 : rows)
          if (stacks(r1, r2) && (mask_of(r0) & mask_of(r2)) == 0)
            for (const auto& r3 : rows)
              if (stacks(r2, r3) && stacks(r3, r0) && (mask_of(r1) & mask_of(r3)) == 0) ++n;
  return n;
}

// Oracle: every ordered row of four distinct values summing to 30, then every
// stack of three disjoint rows with the fourth row forced by the column sums,
// then all eight broken diagonals.
inline std::int64_t pandiagonal_brute_force() {
  std::vector<Row> rows;
  for (int a = 0; a < 16; ++a)
    for (int b = 0; b < 16; ++b)
      for (int c = 0; c < 16; ++c) {
        const int d = 30 - a - b - c;
        if (d < 0 || d > 15) continue;
        const Row r{a, b, c, d};
        if (std::popcount(mask_of(r)) == 4) rows.push_back(r);
      }
  std::int64_t n = 0;
  for (const auto& r0 : rows)
    for (const auto& r1 : rows) {
      if (mask_of(r0) & mask_of(r1)) continue;
      for (const auto& r2 : rows) {
        if ((mask_of(r0) | mask_of(r1)) & mask_of(r2)) continue;
        Row r3{};
        bool fits = true;
        for (int k = 0; k < 4; ++k) {
          r3[k] = 30 - r0[k] - r1[k] - r2[k];
          if (r3[k] < 0 || r3[k] > 15) fits = false;
        }
        if (!fits || (mask_of(r0) | mask_of(r1) | mask_of(r2) | mask_of(r3)) != 0xFFFF) continue;
        if (r3[0] + r3[1] + r3[2] + r3[3] != 30) continue;
        const std::array<Row, 4> g{r0, r1, r2, r3};
        bool diag = true;
        for (int i = 0; i < 4 && diag; ++i) {
          int s = 0, t = 0;
          for (int k = 0; k < 4; ++k) {
            s += g[k][(i + k) % 4];
            t += g[k][(i - k + 4) % 4];
          }
          diag = s == 30 && t == 30;
        }
        n += diag;
      }
    }
  return n;
}

}  // namespace looptiles::oracle
