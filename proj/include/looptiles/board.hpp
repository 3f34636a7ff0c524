#pragma once

#include <array>
#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "looptiles/tile.hpp"

namespace looptiles {

struct Dims {
  int rows = 4;
  int cols = 4;

  int cells() const { return rows * cols; }
  bool even() const { return rows % 2 == 0 && cols % 2 == 0; }
  friend bool operator==(const Dims&, const Dims&) = default;
};

enum class BoundaryMode : std::uint8_t { Torus, Capped };
enum class TilePolicy : std::uint8_t { DistinctSixteen, Free };

inline std::string_view mode_name(BoundaryMode m) {
  return m == BoundaryMode::Torus ? "torus" : "capped";
}
inline std::string_view policy_name(TilePolicy p) {
  return p == TilePolicy::DistinctSixteen ? "distinct" : "free";
}

class ConfigError : public std::runtime_error {
 public:
  enum class Kind {
    MalformedDigit,
    RaggedRows,
    EmptyGrid,
    BadHeader,
    BadDims,
    WrongCellCount,  // DistinctSixteen needs exactly 16 cells
    DuplicateCode,   // DistinctSixteen uses each code once
    Malformed,       // structured form unreadable
  };

  ConfigError(Kind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  Kind kind() const { return kind_; }
  bool is_policy_violation() const {
    return kind_ == Kind::WrongCellCount || kind_ == Kind::DuplicateCode;
  }

 private:
  Kind kind_;
};

inline BoundaryMode parse_mode(std::string_view s) {
  if (s == "torus") return BoundaryMode::Torus;
  if (s == "capped") return BoundaryMode::Capped;
  throw ConfigError(ConfigError::Kind::BadHeader, "unknown mode '" + std::string(s) + "'");
}
inline TilePolicy parse_policy(std::string_view s) {
  if (s == "distinct") return TilePolicy::DistinctSixteen;
  if (s == "free") return TilePolicy::Free;
  throw ConfigError(ConfigError::Kind::BadHeader, "unknown policy '" + std::string(s) + "'");
}

class Configuration {
 public:
  Configuration() : Configuration(Dims{}, BoundaryMode::Torus, TilePolicy::Free) {}
  Configuration(Dims dims, BoundaryMode mode, TilePolicy policy)
      : dims_(dims), mode_(mode), policy_(policy) {
    if (dims.rows < 1 || dims.cols < 1) {
      throw ConfigError(ConfigError::Kind::BadDims, "board dimensions must be positive");
    }
    codes_.assign(static_cast<std::size_t>(dims.cells()), TileCode(0));
  }
  Configuration(Dims dims, BoundaryMode mode, TilePolicy policy, std::vector<TileCode> codes)
      : Configuration(dims, mode, policy) {
    if (codes.size() != codes_.size()) {
      throw ConfigError(ConfigError::Kind::RaggedRows, "code count does not match dimensions");
    }
    codes_ = std::move(codes);
    validate();
  }

  const Dims& dims() const { return dims_; }
  int rows() const { return dims_.rows; }
  int cols() const { return dims_.cols; }
  BoundaryMode mode() const { return mode_; }
  TilePolicy policy() const { return policy_; }
  const std::vector<TileCode>& codes() const { return codes_; }

  TileCode at(int row, int col) const { return codes_[index(row, col)]; }
  TileCode at(int cell) const { return codes_[static_cast<std::size_t>(cell)]; }

  /// Unchecked against policy; call validate() when the result must satisfy it.
  void set(int row, int col, TileCode code) { codes_[index(row, col)] = code; }
  void set(int cell, TileCode code) { codes_[static_cast<std::size_t>(cell)] = code; }
  void swap_cells(int a, int b) {
    std::swap(codes_[static_cast<std::size_t>(a)], codes_[static_cast<std::size_t>(b)]);
  }

  Configuration with_policy(TilePolicy p) const {
    Configuration c = *this;
    c.policy_ = p;
    c.validate();
    return c;
  }
  Configuration with_mode(BoundaryMode m) const {
    Configuration c = *this;
    c.mode_ = m;
    return c;
  }

  int total_crossings() const {
    int n = 0;
    for (TileCode c : codes_) n += crossing_count(c);
    return n;
  }

  void validate() const {
    if (policy_ != TilePolicy::DistinctSixteen) return;
    if (dims_.cells() != 16) {
      throw ConfigError(ConfigError::Kind::WrongCellCount,
                        "distinct policy needs 16 cells, board has " +
                            std::to_string(dims_.cells()));
    }
    std::array<int, 16> seen{};
    for (TileCode c : codes_) {
      if (seen[c.value()]++) {
        throw ConfigError(ConfigError::Kind::DuplicateCode,
                          std::string("distinct policy: code ") + c.hex() + " used twice");
      }
    }
  }

  friend bool operator==(const Configuration&, const Configuration&) = default;

 private:
  std::size_t index(int row, int col) const {
    return static_cast<std::size_t>(row * dims_.cols + col);
  }

  Dims dims_;
  BoundaryMode mode_;
  TilePolicy policy_;
  std::vector<TileCode> codes_;
};

// ---------------------------------------------------------------------------
// Gluing

struct GlobalPoint {
  int row = 0;
  int col = 0;
  Point point = Point::Lu;
  friend bool operator==(const GlobalPoint&, const GlobalPoint&) = default;
};

/// Border side in capped mode: the strand continues through an external cap into `other`.
struct EdgeCap {
  GlobalPoint other;
  friend bool operator==(const EdgeCap&, const EdgeCap&) = default;
};

using GlueResult = std::variant<GlobalPoint, EdgeCap>;

inline GlueResult glue(const Configuration& config, const GlobalPoint& gp) {
  const int rows = config.rows();
  const int cols = config.cols();
  int r = gp.row;
  int c = gp.col;
  Point target = gp.point;
  bool border = false;
  switch (gp.point) {
    case Point::Rt: target = Point::Lu; border = c + 1 == cols; c = (c + 1) % cols; break;
    case Point::Rb: target = Point::Ll; border = c + 1 == cols; c = (c + 1) % cols; break;
    case Point::Lu: target = Point::Rt; border = c == 0; c = (c + cols - 1) % cols; break;
    case Point::Ll: target = Point::Rb; border = c == 0; c = (c + cols - 1) % cols; break;
    case Point::Bl: target = Point::Tl; border = r + 1 == rows; r = (r + 1) % rows; break;
    case Point::Br: target = Point::Tr; border = r + 1 == rows; r = (r + 1) % rows; break;
    case Point::Tl: target = Point::Bl; border = r == 0; r = (r + rows - 1) % rows; break;
    case Point::Tr: target = Point::Br; border = r == 0; r = (r + rows - 1) % rows; break;
  }
  if (border && config.mode() == BoundaryMode::Capped) {
    return EdgeCap{GlobalPoint{gp.row, gp.col, sibling(gp.point)}};
  }
  return GlobalPoint{r, c, target};
}

/// Number of external caps in capped mode (one per border side), zero on a torus.
inline int cap_count(const Configuration& config) {
  if (config.mode() != BoundaryMode::Capped) return 0;
  return 2 * config.rows() + 2 * config.cols();
}

// ---------------------------------------------------------------------------
// Text form: optional header "mode=torus|capped policy=distinct|free", then
// one line of hex digits per row.

struct ParseDefaults {
  BoundaryMode mode = BoundaryMode::Torus;
  TilePolicy policy = TilePolicy::Free;
};

inline Configuration parse_grid(std::string_view text, ParseDefaults defaults = {}) {
  BoundaryMode mode = defaults.mode;
  TilePolicy policy = defaults.policy;
  std::vector<std::string> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ' || line.back() == '\t')) {
      line.pop_back();
    }
    std::size_t lead = line.find_first_not_of(" \t");
    line = lead == std::string::npos ? std::string() : line.substr(lead);
    if (line.empty() || line[0] == '#') continue;
    if (first && line.find('=') != std::string::npos) {
      std::istringstream hs(line);
      std::string tok;
      while (hs >> tok) {
        auto eq = tok.find('=');
        if (eq == std::string::npos) {
          throw ConfigError(ConfigError::Kind::BadHeader, "header token without '=': " + tok);
        }
        auto key = tok.substr(0, eq);
        auto val = tok.substr(eq + 1);
        if (key == "mode") mode = parse_mode(val);
        else if (key == "policy") policy = parse_policy(val);
        else throw ConfigError(ConfigError::Kind::BadHeader, "unknown header key '" + key + "'");
      }
      first = false;
      continue;
    }
    first = false;
    rows.push_back(line);
  }
  if (rows.empty()) throw ConfigError(ConfigError::Kind::EmptyGrid, "no grid rows");
  const std::size_t width = rows.front().size();
  std::vector<TileCode> codes;
  for (std::size_t r = 0; r < rows.size(); ++r) {
    if (rows[r].size() != width) {
      throw ConfigError(ConfigError::Kind::RaggedRows,
                        "row " + std::to_string(r) + " has " + std::to_string(rows[r].size()) +
                            " cells, expected " + std::to_string(width));
    }
    for (std::size_t c = 0; c < width; ++c) {
      try {
        codes.push_back(TileCode::from_hex(rows[r][c]));
      } catch (const std::invalid_argument&) {
        throw ConfigError(ConfigError::Kind::MalformedDigit,
                          "bad tile digit '" + std::string(1, rows[r][c]) + "' at row " +
                              std::to_string(r) + ", col " + std::to_string(c));
      }
    }
  }
  return Configuration(Dims{static_cast<int>(rows.size()), static_cast<int>(width)}, mode,
                       policy, std::move(codes));
}

/// Grid rows only, no header, no trailing newline. Used as the canonical sort key.
inline std::string grid_rows(const Configuration& config) {
  std::string out;
  for (int r = 0; r < config.rows(); ++r) {
    if (r) out += '\n';
    for (int c = 0; c < config.cols(); ++c) out += config.at(r, c).hex();
  }
  return out;
}

inline std::string serialize_grid(const Configuration& config) {
  std::string out = "mode=";
  out += mode_name(config.mode());
  out += " policy=";
  out += policy_name(config.policy());
  out += '\n';
  out += grid_rows(config);
  out += '\n';
  return out;
}

// ---------------------------------------------------------------------------
// Seeded generation

using Rng = std::mt19937_64;

/// Uniform integer in [0, n) by rejection; stable across standard libraries.
inline std::uint64_t uniform_below(Rng& rng, std::uint64_t n) {
  const std::uint64_t limit = Rng::max() - (Rng::max() % n);
  std::uint64_t x;
  do {
    x = rng();
  } while (x >= limit);
  return x % n;
}

inline void shuffle_codes(std::vector<TileCode>& codes, Rng& rng) {
  for (std::size_t i = codes.size(); i > 1; --i) {
    std::swap(codes[i - 1], codes[uniform_below(rng, i)]);
  }
}

inline Configuration random_config(Dims dims, TilePolicy policy, std::uint64_t seed,
                                   BoundaryMode mode = BoundaryMode::Torus) {
  Rng rng(seed);
  std::vector<TileCode> codes;
  if (policy == TilePolicy::DistinctSixteen) {
    if (dims.cells() != 16) {
      throw ConfigError(ConfigError::Kind::WrongCellCount, "distinct policy needs 16 cells");
    }
    for (int v = 0; v < 16; ++v) codes.emplace_back(v);
    shuffle_codes(codes, rng);
  } else {
    for (int i = 0; i < dims.cells(); ++i) {
      codes.emplace_back(static_cast<int>(uniform_below(rng, 16)));
    }
  }
  return Configuration(dims, mode, policy, std::move(codes));
}

}  // namespace looptiles
