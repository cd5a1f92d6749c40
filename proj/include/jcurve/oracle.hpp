#pragma once

// Raster approximation of the distance field, complement components and
// level-set contours. Shares only primitive types with the exact modules.

#include <algorithm>
#include <array>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <deque>
#include <limits>
#include <ostream>
#include <span>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "jcurve/error.hpp"
#include "jcurve/geometry.hpp"

namespace jcurve::oracle {

inline constexpr std::size_t kCellBudget = 4'000'000;
inline constexpr double kCertifyDepth = 3.0;  // in cells

// Distance from p to the nearest source point: square root of the smallest
// squared distance. Grid values are produced by exactly this expression.
inline double brute_distance(Point p, std::span<const Point> source) {
  double best = std::numeric_limits<double>::infinity();
  for (const Point& q : source) {
    const double dx = p.x - q.x;
    const double dy = p.y - q.y;
    best = std::min(best, dx * dx + dy * dy);
  }
  return std::sqrt(best);
}

struct DistanceGrid {
  Point origin;  // lower-left corner of cell (0, 0)
  double h = 0.0;
  std::size_t width = 0;
  std::size_t height = 0;
  double epsilon = 0.0;
  std::vector<Point> source;
  std::vector<double> values;      // row-major, at cell centres
  std::vector<std::uint8_t> band;  // 1 where |value - epsilon| <= h*sqrt(2)/2

  std::size_t index(std::size_t i, std::size_t j) const { return j * width + i; }
  Point center(std::size_t i, std::size_t j) const {
    return {origin.x + (static_cast<double>(i) + 0.5) * h,
            origin.y + (static_cast<double>(j) + 0.5) * h};
  }
  double value(std::size_t i, std::size_t j) const { return values[index(i, j)]; }
  // Cell whose square contains p, clamped to the grid.
  std::pair<std::size_t, std::size_t> locate(Point p) const {
    auto clamp = [](double t, std::size_t n) {
      const double c = std::floor(t);
      if (c < 0) return std::size_t{0};
      return std::min(static_cast<std::size_t>(c), n - 1);
    };
    return {clamp((p.x - origin.x) / h, width), clamp((p.y - origin.y) / h, height)};
  }
  bool uncertain(std::size_t i, std::size_t j) const { return band[index(i, j)] != 0; }
  std::size_t cells() const { return width * height; }
};

namespace detail {

struct Box {
  Point lo{std::numeric_limits<double>::infinity(), std::numeric_limits<double>::infinity()};
  Point hi{-std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};

  void add(Point p) {
    lo = {std::min(lo.x, p.x), std::min(lo.y, p.y)};
    hi = {std::max(hi.x, p.x), std::max(hi.y, p.y)};
  }
};

inline Box input_box(std::span<const Point> source, std::span<const Point> extra) {
  Box b;
  for (const Point& p : source) b.add(p);
  for (const Point& p : extra) b.add(p);
  return b;
}

// Cell centres sit on the lattice h*Z, covering [lo - margin, hi + margin].
inline double first_centre(double lo, double margin, double h) {
  return std::floor((lo - margin) / h);
}

inline std::size_t cells_along(double lo, double hi, double margin, double h) {
  return static_cast<std::size_t>(std::ceil((hi + margin) / h) - first_centre(lo, margin, h)) + 1;
}

}  // namespace detail

// Default resolution epsilon/50, coarsened until the grid fits the budget.
inline double default_cell_size(std::span<const Point> source, double epsilon,
                                std::span<const Point> extra = {}) {
  const auto box = detail::input_box(source, extra);
  double h = epsilon / 50.0;
  for (;;) {
    const double margin = epsilon + 4.0 * h;
    const auto w = detail::cells_along(box.lo.x, box.hi.x, margin, h);
    const auto ht = detail::cells_along(box.lo.y, box.hi.y, margin, h);
    if (static_cast<double>(w) * static_cast<double>(ht) <= static_cast<double>(kCellBudget)) {
      return h;
    }
    h *= 1.25;
  }
}

// Grid over the bounding box of source and extra points, expanded by
// epsilon + 4h on every side.
inline DistanceGrid build_distance_grid(std::span<const Point> source, double epsilon, double h,
                                        std::span<const Point> extra = {}) {
  if (source.empty()) throw Error(ErrorCode::EmptyInput, "distance grid of an empty set");
  if (!(h > 0) || !(epsilon > 0)) {
    throw Error(ErrorCode::InvalidArgument, "cell size and epsilon must be positive");
  }
  const auto box = detail::input_box(source, extra);
  const double margin = epsilon + 4.0 * h;
  DistanceGrid g;
  g.h = h;
  g.epsilon = epsilon;
  g.width = detail::cells_along(box.lo.x, box.hi.x, margin, h);
  g.height = detail::cells_along(box.lo.y, box.hi.y, margin, h);
  if (static_cast<double>(g.width) * static_cast<double>(g.height) >
      static_cast<double>(kCellBudget)) {
    throw Error(ErrorCode::CellBudgetExceeded,
                std::to_string(g.width) + "x" + std::to_string(g.height) + " cells exceed " +
                    std::to_string(kCellBudget));
  }
  g.origin = {(detail::first_centre(box.lo.x, margin, h) - 0.5) * h,
              (detail::first_centre(box.lo.y, margin, h) - 0.5) * h};
  g.source.assign(source.begin(), source.end());
  g.values.resize(g.cells());
  g.band.resize(g.cells());
  const double band = h * std::sqrt(2.0) / 2.0;
  for (std::size_t j = 0; j < g.height; ++j) {
    for (std::size_t i = 0; i < g.width; ++i) {
      const double v = brute_distance(g.center(i, j), g.source);
      g.values[g.index(i, j)] = v;
      g.band[g.index(i, j)] = std::abs(v - epsilon) <= band ? 1 : 0;
    }
  }
  return g;
}

struct ComponentMap {
  static constexpr int kExcluded = -1;
  std::vector<int> labels;  // per cell; kExcluded for covered or uncertain cells
  std::vector<bool> unbounded;
  std::size_t width = 0;
  std::size_t height = 0;

  std::size_t count() const { return unbounded.size(); }
  std::size_t bounded_count() const {
    return static_cast<std::size_t>(std::count(unbounded.begin(), unbounded.end(), false));
  }
  int label(std::size_t i, std::size_t j) const { return labels[j * width + i]; }
};

// 4-connected components of the certain cells farther than epsilon.
inline ComponentMap grid_components(const DistanceGrid& g, double epsilon) {
  ComponentMap m;
  m.width = g.width;
  m.height = g.height;
  m.labels.assign(g.cells(), ComponentMap::kExcluded);
  std::vector<bool> open(g.cells());
  for (std::size_t k = 0; k < g.cells(); ++k) open[k] = g.values[k] > epsilon && !g.band[k];

  std::deque<std::size_t> queue;
  for (std::size_t start = 0; start < g.cells(); ++start) {
    if (!open[start] || m.labels[start] != ComponentMap::kExcluded) continue;
    const int label = static_cast<int>(m.unbounded.size());
    bool touches_border = false;
    m.labels[start] = label;
    queue.push_back(start);
    while (!queue.empty()) {
      const std::size_t k = queue.front();
      queue.pop_front();
      const std::size_t i = k % g.width;
      const std::size_t j = k / g.width;
      if (i == 0 || j == 0 || i + 1 == g.width || j + 1 == g.height) touches_border = true;
      auto visit = [&](std::size_t n) {
        if (open[n] && m.labels[n] == ComponentMap::kExcluded) {
          m.labels[n] = label;
          queue.push_back(n);
        }
      };
      if (i > 0) visit(k - 1);
      if (i + 1 < g.width) visit(k + 1);
      if (j > 0) visit(k - g.width);
      if (j + 1 < g.height) visit(k + g.width);
    }
    m.unbounded.push_back(touches_border);
  }

  // Slivers cut off near sharp boundary corners by the band never reach
  // deep into the complement; only components with a cell beyond
  // epsilon + kCertifyDepth*h are kept.
  std::vector<double> deepest(m.unbounded.size(), -std::numeric_limits<double>::infinity());
  for (std::size_t k = 0; k < g.cells(); ++k) {
    if (m.labels[k] != ComponentMap::kExcluded) {
      auto& d = deepest[static_cast<std::size_t>(m.labels[k])];
      d = std::max(d, g.values[k]);
    }
  }
  std::vector<int> relabel(m.unbounded.size(), ComponentMap::kExcluded);
  std::vector<bool> kept;
  for (std::size_t c = 0; c < m.unbounded.size(); ++c) {
    if (deepest[c] > epsilon + kCertifyDepth * g.h) {
      relabel[c] = static_cast<int>(kept.size());
      kept.push_back(m.unbounded[c]);
    }
  }
  for (int& l : m.labels) {
    if (l != ComponentMap::kExcluded) l = relabel[static_cast<std::size_t>(l)];
  }
  m.unbounded = std::move(kept);
  return m;
}

// Closed polyline; the last vertex connects back to the first.
using Polyline = std::vector<Point>;

// Marching squares over cell centres for the region value <= epsilon, with
// linear interpolation along edges. Saddles are decided by the exact
// distance at the square centre.
inline std::vector<Polyline> grid_boundary(const DistanceGrid& g, double epsilon) {
  std::vector<Polyline> loops;
  if (g.width < 2 || g.height < 2) return loops;
  const std::size_t W = g.width;
  auto inside = [&](std::size_t i, std::size_t j) { return g.value(i, j) <= epsilon; };
  // Edge ids: horizontal (i,j)-(i+1,j) -> 2*(j*W+i); vertical (i,j)-(i,j+1) -> +1.
  auto h_edge = [&](std::size_t i, std::size_t j) { return 2 * (j * W + i); };
  auto v_edge = [&](std::size_t i, std::size_t j) { return 2 * (j * W + i) + 1; };
  auto edge_point = [&](std::size_t edge) {
    const std::size_t cell = edge / 2;
    const std::size_t i = cell % W;
    const std::size_t j = cell / W;
    const std::size_t i1 = (edge % 2 == 0) ? i + 1 : i;
    const std::size_t j1 = (edge % 2 == 0) ? j : j + 1;
    const double v0 = g.value(i, j);
    const double v1 = g.value(i1, j1);
    const double t = (epsilon - v0) / (v1 - v0);
    const Point p0 = g.center(i, j);
    const Point p1 = g.center(i1, j1);
    return p0 + t * (p1 - p0);
  };

  std::vector<std::array<std::size_t, 2>> segments;
  for (std::size_t j = 0; j + 1 < g.height; ++j) {
    for (std::size_t i = 0; i + 1 < W; ++i) {
      const int code = (inside(i, j) ? 1 : 0) | (inside(i + 1, j) ? 2 : 0) |
                       (inside(i + 1, j + 1) ? 4 : 0) | (inside(i, j + 1) ? 8 : 0);
      if (code == 0 || code == 15) continue;
      const std::size_t e0 = h_edge(i, j);       // bottom
      const std::size_t e1 = v_edge(i + 1, j);   // right
      const std::size_t e2 = h_edge(i, j + 1);   // top
      const std::size_t e3 = v_edge(i, j);       // left
      auto add = [&](std::size_t a, std::size_t b) { segments.push_back({a, b}); };
      bool centre_inside = false;
      if (code == 5 || code == 10) {
        const Point c = g.center(i, j) + Point{0.5 * g.h, 0.5 * g.h};
        centre_inside = brute_distance(c, g.source) <= epsilon;
      }
      switch (code) {
        case 1: case 14: add(e3, e0); break;
        case 2: case 13: add(e0, e1); break;
        case 3: case 12: add(e3, e1); break;
        case 4: case 11: add(e1, e2); break;
        case 6: case 9: add(e0, e2); break;
        case 7: case 8: add(e2, e3); break;
        case 5:
          if (centre_inside) { add(e0, e1); add(e2, e3); } else { add(e3, e0); add(e1, e2); }
          break;
        case 10:
          if (centre_inside) { add(e3, e0); add(e1, e2); } else { add(e0, e1); add(e2, e3); }
          break;
        default: break;
      }
    }
  }

  std::unordered_map<std::size_t, std::array<std::size_t, 2>> incident;
  constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();
  for (std::size_t s = 0; s < segments.size(); ++s) {
    for (const std::size_t e : segments[s]) {
      auto [it, fresh] = incident.try_emplace(e, std::array<std::size_t, 2>{kNone, kNone});
      (it->second[0] == kNone ? it->second[0] : it->second[1]) = s;
    }
  }
  std::vector<bool> used(segments.size(), false);
  for (std::size_t s0 = 0; s0 < segments.size(); ++s0) {
    if (used[s0]) continue;
    Polyline loop;
    std::size_t s = s0;
    std::size_t at = segments[s0][0];
    while (s != kNone && !used[s]) {
      used[s] = true;
      loop.push_back(edge_point(at));
      at = segments[s][0] == at ? segments[s][1] : segments[s][0];
      const auto& inc = incident.at(at);
      s = inc[0] == s ? inc[1] : inc[0];
    }
    loops.push_back(std::move(loop));
  }
  return loops;
}

namespace detail {

inline double point_segment_distance(Point p, Point a, Point b) {
  const Point ab = b - a;
  const double len2 = dot(ab, ab);
  double t = len2 > 0 ? dot(p - a, ab) / len2 : 0.0;
  t = std::clamp(t, 0.0, 1.0);
  return distance(p, a + t * ab);
}

inline double distance_to_polyline(Point p, const Polyline& line) {
  double best = std::numeric_limits<double>::infinity();
  const std::size_t n = line.size();
  for (std::size_t k = 0; k < n; ++k) {
    best = std::min(best, point_segment_distance(p, line[k], line[(k + 1) % n]));
  }
  return best;
}

}  // namespace detail

// Symmetric Hausdorff distance between an arc cycle and a closed polyline,
// from 1024 samples per arc and every polyline vertex.
inline double compare_curves(const ArcCycle& c, const Polyline& line) {
  if (c.arcs.empty() || line.empty()) throw Error(ErrorCode::InvalidArgument, "empty curve");
  constexpr std::size_t kSamples = 1024;
  double forward = 0.0;
  for (const Arc& a : c.arcs) {
    for (std::size_t k = 0; k < kSamples; ++k) {
      const Point p = a.point_at(static_cast<double>(k) / static_cast<double>(kSamples - 1));
      forward = std::max(forward, detail::distance_to_polyline(p, line));
    }
  }
  double backward = 0.0;
  for (const Point& p : line) backward = std::max(backward, distance_to_cycle(p, c));
  return std::max(forward, backward);
}

// Plain-text grey map (P2) of the distance field, black at distance 0 and
// white at 2*epsilon and beyond. Row 0 of the image is the top of the grid.
inline void write_pgm(std::ostream& out, const DistanceGrid& g) {
  out << "P2\n" << g.width << ' ' << g.height << "\n255\n";
  for (std::size_t r = 0; r < g.height; ++r) {
    const std::size_t j = g.height - 1 - r;
    for (std::size_t i = 0; i < g.width; ++i) {
      const double v = std::min(1.0, g.value(i, j) / (2.0 * g.epsilon));
      out << static_cast<int>(std::lround(v * 255.0)) << (i + 1 == g.width ? '\n' : ' ');
    }
  }
}

}  // namespace jcurve::oracle
