#pragma once

#include <array>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>
#include <vector>

#include "looptiles/board.hpp"
#include "looptiles/tracer.hpp"

namespace looptiles {

struct RenderOptions {
  double tile_size = 96.0;  // px
  bool show_loops_colored = true;
  bool show_weave = true;
  bool show_labels = false;
  bool show_grid = true;
};

inline constexpr std::array<const char*, 12> kLoopPalette{
    "#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b",
    "#e377c2", "#17becf", "#bcbd22", "#7f7f7f", "#393b79", "#ad494a"};

namespace geom {

struct Vec {
  double x = 0;
  double y = 0;
};

inline Vec operator+(Vec a, Vec b) { return {a.x + b.x, a.y + b.y}; }
inline Vec operator-(Vec a, Vec b) { return {a.x - b.x, a.y - b.y}; }
inline Vec operator*(double k, Vec a) { return {k * a.x, k * a.y}; }
inline double norm(Vec a) { return std::hypot(a.x, a.y); }

/// Attachment point in unit tile coordinates (y down); side points sit at 1/3 and 2/3.
inline Vec point_pos(Point p) {
  constexpr double a = 1.0 / 3.0;
  constexpr double b = 2.0 / 3.0;
  switch (p) {
    case Point::Lu: return {0, a};
    case Point::Ll: return {0, b};
    case Point::Tl: return {a, 0};
    case Point::Tr: return {b, 0};
    case Point::Rt: return {1, a};
    case Point::Rb: return {1, b};
    case Point::Bl: return {a, 1};
    case Point::Br: return {b, 1};
  }
  return {};
}

/// Quarter ellipse centred on the tile corner shared by the two sides it joins.
/// at(0) is the endpoint on the vertical side, at(pi/2) the one on the horizontal side.
struct QuarterArc {
  Vec corner;
  double rx = 0;  // along the horizontal side
  double ry = 0;  // along the vertical side
  double ux = 1;  // into the tile from the corner
  double uy = 1;

  Vec at(double t) const {
    return {corner.x + ux * rx * std::sin(t), corner.y + uy * ry * std::cos(t)};
  }
  /// Implicit form: negative inside the ellipse, positive outside.
  double implicit(Vec p) const {
    const double ex = (p.x - corner.x) / rx;
    const double ey = (p.y - corner.y) / ry;
    return ex * ex + ey * ey - 1.0;
  }
};

inline QuarterArc quarter_arc(Point p, Point q) {
  if (!is_horizontal_entry(side_of(p))) std::swap(p, q);  // p on Left/Right, q on Top/Bottom
  const Vec pp = point_pos(p);
  const Vec qp = point_pos(q);
  const Vec corner{pp.x, qp.y};
  QuarterArc arc;
  arc.corner = corner;
  arc.rx = std::abs(qp.x - corner.x);
  arc.ry = std::abs(pp.y - corner.y);
  arc.ux = corner.x == 0 ? 1 : -1;
  arc.uy = corner.y == 0 ? 1 : -1;
  return arc;
}

inline constexpr double kHalfPi = 1.5707963267948966;

/// Parameter on `a` where it meets `b`, if they cross inside the tile.
inline std::optional<double> crossing_param(const QuarterArc& a, const QuarterArc& b) {
  constexpr int kSteps = 256;
  double prev_t = 0;
  double prev_f = b.implicit(a.at(0));
  for (int i = 1; i <= kSteps; ++i) {
    const double t = kHalfPi * i / kSteps;
    const double f = b.implicit(a.at(t));
    if ((prev_f < 0) != (f < 0)) {
      double lo = prev_t, hi = t;
      for (int k = 0; k < 60; ++k) {
        const double mid = 0.5 * (lo + hi);
        ((b.implicit(a.at(mid)) < 0) == (prev_f < 0) ? lo : hi) = mid;
      }
      const Vec hit = a.at(0.5 * (lo + hi));
      // Only the quadrant of b's ellipse that lies in the tile is drawn.
      const double sx = (hit.x - b.corner.x) * b.ux;
      const double sy = (hit.y - b.corner.y) * b.uy;
      if (sx >= -1e-12 && sy >= -1e-12) return 0.5 * (lo + hi);
    }
    prev_t = t;
    prev_f = f;
  }
  return std::nullopt;
}

/// Parameter where the distance from at(t) to `x` first reaches `dist`, walking
/// from `from` towards `to`.
inline double param_at_distance(const QuarterArc& a, Vec x, double from, double to, double dist) {
  double lo = from, hi = to;
  if (norm(a.at(to) - x) < dist) return to;
  for (int k = 0; k < 60; ++k) {
    const double mid = 0.5 * (lo + hi);
    (norm(a.at(mid) - x) < dist ? lo : hi) = mid;
  }
  return 0.5 * (lo + hi);
}

}  // namespace geom

namespace detail {

inline std::string fmt(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", std::abs(v) < 5e-4 ? 0.0 : v);
  return buf;
}

}  // namespace detail

/// Deterministic SVG of a configuration. Tile arcs are quarter ellipses; at
/// each crossing the under strand is cut by a fixed-width gap.
inline std::string render_svg(const Configuration& config, const RenderOptions& opt = {}) {
  using detail::fmt;
  using geom::Vec;
  const double s = opt.tile_size > 0 ? opt.tile_size : 96.0;
  const bool capped = config.mode() == BoundaryMode::Capped;
  const double margin = capped ? s / 4 : 0;
  const double width = config.cols() * s + 2 * margin;
  const double height = config.rows() * s + 2 * margin;
  const double stroke = s * 0.05;
  const double gap_half = s * 0.07;  // half-length of the cut in the under strand

  const LoopSet set = trace(config);
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" + fmt(width) +
         "\" height=\"" + fmt(height) + "\" viewBox=\"0 0 " + fmt(width) + " " + fmt(height) +
         "\">\n";
  out += "<rect class=\"background\" x=\"0\" y=\"0\" width=\"" + fmt(width) + "\" height=\"" +
         fmt(height) + "\" fill=\"#ffffff\"/>\n";

  auto to_px = [&](int row, int col, Vec p) {
    return Vec{margin + (col + p.x) * s, margin + (row + p.y) * s};
  };

  if (opt.show_grid) {
    out += "<g class=\"grid\" stroke=\"#cccccc\" stroke-width=\"1\">\n";
    for (int r = 0; r <= config.rows(); ++r) {
      out += "<line x1=\"" + fmt(margin) + "\" y1=\"" + fmt(margin + r * s) + "\" x2=\"" +
             fmt(margin + config.cols() * s) + "\" y2=\"" + fmt(margin + r * s) + "\"/>\n";
    }
    for (int c = 0; c <= config.cols(); ++c) {
      out += "<line x1=\"" + fmt(margin + c * s) + "\" y1=\"" + fmt(margin) + "\" x2=\"" +
             fmt(margin + c * s) + "\" y2=\"" + fmt(margin + config.rows() * s) + "\"/>\n";
    }
    out += "</g>\n";
  }

  std::vector<std::string> gaps;
  out += "<g class=\"arcs\" fill=\"none\" stroke-width=\"" + fmt(stroke) +
         "\" stroke-linecap=\"round\">\n";
  for (std::size_t li = 0; li < set.loops.size(); ++li) {
    const Loop& loop = set.loops[li];
    const char* color = opt.show_loops_colored ? kLoopPalette[li % kLoopPalette.size()] : "#000000";
    for (const DirectedArc& a : loop.arcs) {
      const geom::QuarterArc q = geom::quarter_arc(a.entry, a.exit);
      // Parameter interval(s) to draw, in increasing t.
      std::vector<std::pair<double, double>> pieces{{0.0, geom::kHalfPi}};
      if (opt.show_weave) {
        for (Point end : {a.entry, a.exit}) {
          const Side side = side_of(end);
          if (!a.code.crossed(side) || is_over_point(end)) continue;
          const Matching& m = kMatchings[a.code.value()];
          const Point other = sibling(end);
          const geom::QuarterArc over = geom::quarter_arc(other, m(other));
          const auto t = geom::crossing_param(q, over);
          if (!t) continue;
          const Vec x = q.at(*t);
          const double t0 = geom::param_at_distance(q, x, *t, 0.0, gap_half / s);
          const double t1 = geom::param_at_distance(q, x, *t, geom::kHalfPi, gap_half / s);
          pieces = {{0.0, t0}, {t1, geom::kHalfPi}};
          const Vec px = to_px(a.row, a.col, x);
          gaps.push_back("<circle class=\"gap gap-" + std::to_string(a.row) + "-" +
                         std::to_string(a.col) + "-" + side_letter(side) + "\" cx=\"" +
                         fmt(px.x) + "\" cy=\"" + fmt(px.y) + "\" r=\"" + fmt(gap_half) +
                         "\" fill=\"none\" stroke=\"none\"/>\n");
        }
      }
      // The tile geometry runs from the vertical-side end to the horizontal-side end.
      const bool sweep_cw = [&] {
        const Vec s0 = q.at(0) - q.corner;
        const Vec s1 = q.at(geom::kHalfPi) - q.corner;
        return s0.x * s1.y - s0.y * s1.x > 0;
      }();
      std::string d;
      for (auto [lo, hi] : pieces) {
        if (hi - lo < 1e-9) continue;
        const Vec p0 = to_px(a.row, a.col, q.at(lo));
        const Vec p1 = to_px(a.row, a.col, q.at(hi));
        if (!d.empty()) d += ' ';
        d += "M" + fmt(p0.x) + "," + fmt(p0.y) + " A" + fmt(q.rx * s) + "," + fmt(q.ry * s) +
             " 0 0 " + (sweep_cw ? "1 " : "0 ") + fmt(p1.x) + "," + fmt(p1.y);
      }
      out += "<path class=\"arc a-" + std::to_string(a.row) + "-" + std::to_string(a.col) + "-" +
             std::string(point_name(a.entry)) + "\" data-loop=\"" + std::to_string(li) +
             "\" stroke=\"" + color + "\" d=\"" + d + "\"/>\n";
    }
  }

  // External caps of the edge-loop variant, drawn in the margin.
  if (capped) {
    for (int r = 0; r < config.rows(); ++r) {
      for (int c = 0; c < config.cols(); ++c) {
        for (Side side : kSides) {
          const bool border = (side == Side::Left && c == 0) ||
                              (side == Side::Right && c == config.cols() - 1) ||
                              (side == Side::Top && r == 0) ||
                              (side == Side::Bottom && r == config.rows() - 1);
          if (!border) continue;
          const Point first = make_point(side, Slot::First);
          const Vec p0 = to_px(r, c, geom::point_pos(first));
          const Vec p1 = to_px(r, c, geom::point_pos(sibling(first)));
          const double radius = s / 6;
          // Bulge outwards: Top and Right caps sweep clockwise from the first point.
          const bool cw = side == Side::Top || side == Side::Right;
          out += "<path class=\"cap cap-" + std::to_string(r) + "-" + std::to_string(c) + "-" +
                 side_letter(side) + "\" stroke=\"#000000\" d=\"M" + fmt(p0.x) + "," +
                 fmt(p0.y) + " A" + fmt(radius) + "," + fmt(radius) + " 0 0 " +
                 (cw ? "1 " : "0 ") + fmt(p1.x) + "," + fmt(p1.y) + "\"/>\n";
        }
      }
    }
  }
  out += "</g>\n";

  if (opt.show_weave) {
    out += "<g class=\"gaps\">\n";
    for (const auto& g : gaps) out += g;
    out += "</g>\n";
  }

  if (opt.show_labels) {
    out += "<g class=\"labels\" font-family=\"monospace\" font-size=\"" + fmt(s / 6) +
           "\" fill=\"#555555\" text-anchor=\"middle\">\n";
    for (int r = 0; r < config.rows(); ++r) {
      for (int c = 0; c < config.cols(); ++c) {
        const Vec p = to_px(r, c, {0.5, 0.56});
        out += "<text x=\"" + fmt(p.x) + "\" y=\"" + fmt(p.y) + "\">" + config.at(r, c).hex() +
               "</text>\n";
      }
    }
    out += "</g>\n";
  }
  out += "</svg>\n";
  return out;
}

}  // namespace looptiles
