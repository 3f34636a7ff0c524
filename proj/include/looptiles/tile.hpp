#pragma once

#include <array>
#include <bit>
#include <cctype>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace looptiles {

// Clockwise from the left side; this is also the digit order of a tile code.
enum class Side : std::uint8_t { Left = 0, Top = 1, Right = 2, Bottom = 3 };

inline constexpr std::array<Side, 4> kSides{Side::Left, Side::Top, Side::Right,
                                            Side::Bottom};

enum class Slot : std::uint8_t { First = 0, Second = 1 };

// The eight attachment points of a tile, two per side.
//   Left   = {Lu upper, Ll lower}
//   Top    = {Tl left,  Tr right}
//   Right  = {Rt top,   Rb bottom}
//   Bottom = {Bl left,  Br right}
// The enumerator value is 2*side + slot.
enum class Point : std::uint8_t { Lu, Ll, Tl, Tr, Rt, Rb, Bl, Br };

inline constexpr int kPointsPerTile = 8;

constexpr Side side_of(Point p) { return static_cast<Side>(static_cast<int>(p) >> 1); }
constexpr Slot slot_of(Point p) { return static_cast<Slot>(static_cast<int>(p) & 1); }
constexpr Point make_point(Side s, Slot slot) {
  return static_cast<Point>(2 * static_cast<int>(s) + static_cast<int>(slot));
}
/// The other point on the same side.
constexpr Point sibling(Point p) { return static_cast<Point>(static_cast<int>(p) ^ 1); }
constexpr int index_of(Point p) { return static_cast<int>(p); }

constexpr bool is_horizontal_entry(Side s) { return s == Side::Left || s == Side::Right; }

constexpr std::string_view side_name(Side s) {
  constexpr std::array<std::string_view, 4> names{"Left", "Top", "Right", "Bottom"};
  return names[static_cast<int>(s)];
}

constexpr char side_letter(Side s) { return "LTRB"[static_cast<int>(s)]; }

/// Accepts "Left"/"left"/"L"/"l" and so on.
inline Side parse_side(std::string_view text) {
  std::string lower(text);
  for (auto& ch : lower) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
  for (Side s : kSides) {
    std::string name(side_name(s));
    for (auto& ch : name) ch = static_cast<char>(std::tolower(static_cast<unsigned char>(ch)));
    if (lower == name || lower == std::string(1, name[0])) return s;
  }
  throw std::invalid_argument("unknown side '" + std::string(text) + "'");
}

constexpr std::string_view point_name(Point p) {
  constexpr std::array<std::string_view, 8> names{"Lu", "Ll", "Tl", "Tr",
                                                  "Rt", "Rb", "Bl", "Br"};
  return names[index_of(p)];
}

/// 4-bit crossing pattern of one tile. Left is the most significant bit.
class TileCode {
 public:
  constexpr TileCode() = default;
  constexpr explicit TileCode(int value) : value_(static_cast<std::uint8_t>(value)) {
    if (value < 0 || value > 15) throw std::out_of_range("tile code must be in 0..15");
  }

  constexpr int value() const { return value_; }

  constexpr bool crossed(Side s) const {
    return (value_ >> (3 - static_cast<int>(s))) & 1;
  }
  constexpr TileCode toggled(Side s) const {
    return TileCode(value_ ^ (1 << (3 - static_cast<int>(s))));
  }

  char hex() const { return "0123456789ABCDEF"[value_]; }
  std::string binary() const {
    std::string out(4, '0');
    for (Side s : kSides) out[static_cast<int>(s)] = crossed(s) ? '1' : '0';
    return out;
  }

  static TileCode from_hex(char ch) {
    if (ch >= '0' && ch <= '9') return TileCode(ch - '0');
    if (ch >= 'A' && ch <= 'F') return TileCode(ch - 'A' + 10);
    if (ch >= 'a' && ch <= 'f') return TileCode(ch - 'a' + 10);
    throw std::invalid_argument(std::string("not a hex tile digit: '") + ch + "'");
  }
  static TileCode from_binary(std::string_view bits) {
    if (bits.size() != 4) throw std::invalid_argument("binary tile code needs 4 digits");
    int v = 0;
    for (char ch : bits) {
      if (ch != '0' && ch != '1') throw std::invalid_argument("binary tile code digit must be 0/1");
      v = (v << 1) | (ch - '0');
    }
    return TileCode(v);
  }

  friend constexpr bool operator==(TileCode, TileCode) = default;
  friend constexpr auto operator<=>(TileCode, TileCode) = default;

 private:
  std::uint8_t value_ = 0;
};

/// One crossing per crossed side.
constexpr int crossing_count(TileCode code) { return std::popcount(unsigned(code.value())); }

/// Fixed-point-free involution on the eight points of a tile.
struct Matching {
  std::array<Point, 8> partner{};

  constexpr Point operator()(Point p) const { return partner[index_of(p)]; }
  friend constexpr bool operator==(const Matching&, const Matching&) = default;

  /// The four arcs as (lower index, higher index) pairs, ordered by first point.
  constexpr std::array<std::pair<Point, Point>, 4> pairs() const {
    std::array<std::pair<Point, Point>, 4> out{};
    int n = 0;
    for (int i = 0; i < 8; ++i) {
      auto p = static_cast<Point>(i);
      if (index_of(partner[i]) > i) out[n++] = {p, partner[i]};
    }
    return out;
  }
};

/// Uncrossed tile: four corner arcs.
constexpr Matching base_matching() {
  Matching m;
  auto join = [&m](Point a, Point b) {
    m.partner[index_of(a)] = b;
    m.partner[index_of(b)] = a;
  };
  join(Point::Lu, Point::Tl);
  join(Point::Tr, Point::Rt);
  join(Point::Rb, Point::Br);
  join(Point::Bl, Point::Ll);
  return m;
}

/// Conjugates the base matching by the swap of each crossed side's two points.
constexpr Matching tile_matching(TileCode code) {
  const Matching base = base_matching();
  auto swap = [code](Point p) { return code.crossed(side_of(p)) ? sibling(p) : p; };
  Matching m;
  for (int i = 0; i < 8; ++i) {
    auto p = static_cast<Point>(i);
    m.partner[i] = swap(base(swap(p)));
  }
  return m;
}

inline constexpr std::array<Matching, 16> kMatchings = [] {
  std::array<Matching, 16> table{};
  for (int v = 0; v < 16; ++v) table[v] = tile_matching(TileCode(v));
  return table;
}();

/// Right of way: facing into the tile from `side`, the right-hand point's arc is on top.
constexpr Point over_point(Side side) {
  switch (side) {
    case Side::Left: return Point::Ll;
    case Side::Top: return Point::Tl;
    case Side::Right: return Point::Rt;
    case Side::Bottom: return Point::Br;
  }
  return Point::Lu;
}

constexpr bool is_over_point(Point p) { return over_point(side_of(p)) == p; }

}  // namespace looptiles
