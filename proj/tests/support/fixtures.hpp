#pragma once

// Shared fixtures, seeded instance generators and brute-force reference
// computations for the test suites. Nothing here calls into offset or
// separation.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <random>
#include <vector>

#include "jcurve/geometry.hpp"

namespace jcurve::testing {

inline std::vector<Point> regular_polygon(std::size_t k, double radius, Point c = {0, 0}) {
  std::vector<Point> pts;
  for (std::size_t i = 0; i < k; ++i) {
    const double a = kTwoPi * static_cast<double>(i) / static_cast<double>(k);
    pts.push_back({c.x + radius * std::cos(a), c.y + radius * std::sin(a)});
  }
  return pts;
}

// Counterclockwise arc of a circle from angle `from` to `to`, sampled with
// chord length at most `spacing`; the endpoints are supplied exactly.
inline std::vector<Point> sampled_arc(Point c, double radius, double from, double to, double spacing,
                                      Point first, Point last) {
  const double length = radius * (to - from);
  const auto segments = static_cast<std::size_t>(std::ceil(length / spacing));
  std::vector<Point> pts{first};
  for (std::size_t k = 1; k < segments; ++k) {
    const double a = from + (to - from) * static_cast<double>(k) / static_cast<double>(segments);
    pts.push_back({c.x + radius * std::cos(a), c.y + radius * std::sin(a)});
  }
  pts.push_back(last);
  return pts;
}

// Two points at exactly 2*epsilon (epsilon = 1).
inline std::vector<Point> tangent_pair() { return {{0, 0}, {2, 0}}; }

// Ring of points on a circle of radius 2 with a chord gap of exactly 2
// (epsilon = 1): the disks at the gap ends touch. B straddles the chord.
struct BisectorFixture {
  double epsilon = 1.0;
  std::vector<Point> A;
  std::vector<Point> B;
};

inline BisectorFixture bisector_fixture() {
  BisectorFixture f;
  const double s3 = std::sqrt(3.0);
  const Point p{s3, 1.0};
  const Point q{s3, -1.0};
  f.A = sampled_arc({0, 0}, 2.0, kPi / 6.0, kTwoPi - kPi / 6.0, 0.05, p, q);
  const double offset = 0.125;  // min(delta/2, epsilon) with delta = epsilon/4
  f.B = {{s3 - offset, 0.0}, {s3 + offset, 0.0}};
  return f;
}

// B is the longer arc of the unit circle between points a radius apart; A is
// the centre and its mirror image across the chord.
struct ArcChordFixture {
  std::vector<Point> A;
  std::vector<Point> B;
};

inline ArcChordFixture arc_chord_fixture() {
  ArcChordFixture f;
  const double s3 = std::sqrt(3.0);
  const Point p{s3 / 2.0, 0.5};
  const Point q{s3 / 2.0, -0.5};
  f.B = sampled_arc({0, 0}, 1.0, kPi / 6.0, kTwoPi - kPi / 6.0, 0.05, p, q);
  f.A = {{0.0, 0.0}, {s3, 0.0}};
  return f;
}

// ---- brute-force references -------------------------------------------

inline double brute_set_distance(const std::vector<Point>& A, const std::vector<Point>& B) {
  double best = std::numeric_limits<double>::infinity();
  for (const Point& a : A) {
    for (const Point& b : B) best = std::min(best, std::hypot(a.x - b.x, a.y - b.y));
  }
  return best;
}

inline double brute_rho(Point p, const std::vector<Point>& A) {
  double best = std::numeric_limits<double>::infinity();
  for (const Point& a : A) best = std::min(best, std::hypot(p.x - a.x, p.y - a.y));
  return best;
}

// Transitive closure of the strict proximity relation by repeated boolean
// matrix squaring.
inline std::vector<std::vector<bool>> proximity_closure(const std::vector<Point>& pts, double delta) {
  const std::size_t n = pts.size();
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      r[i][j] = i == j || std::hypot(pts[i].x - pts[j].x, pts[i].y - pts[j].y) < delta;
    }
  }
  for (std::size_t step = 1; step < n; step *= 2) {
    auto next = r;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        if (next[i][j]) continue;
        for (std::size_t k = 0; k < n; ++k) {
          if (r[i][k] && r[k][j]) {
            next[i][j] = true;
            break;
          }
        }
      }
    }
    r = std::move(next);
  }
  return r;
}

// Minimum over dense samples of an arc given by centre, radius and angles.
inline double sampled_arc_distance(Point p, Point c, double r, double from, double sweep,
                                   std::size_t samples) {
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t k = 0; k < samples; ++k) {
    const double a = from + sweep * static_cast<double>(k) / static_cast<double>(samples - 1);
    best = std::min(best, std::hypot(p.x - c.x - r * std::cos(a), p.y - c.y - r * std::sin(a)));
  }
  return best;
}

// ---- seeded instance generation ---------------------------------------

using Rng = std::mt19937_64;

inline double uniform(Rng& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Pair distances within `band` of 2*epsilon make pinches the raster oracle
// cannot certify.
inline bool clear_of_tangency(const std::vector<Point>& pts, Point cand, double epsilon, double band) {
  for (const Point& p : pts) {
    if (std::abs(std::hypot(p.x - cand.x, p.y - cand.y) - 2.0 * epsilon) < band) return false;
  }
  return true;
}

// Random 2*epsilon-chained cluster grown by steps from existing points,
// confined to [lo, hi]^2. Returns an empty vector when growth stalls.
inline std::vector<Point> chained_cluster(Rng& rng, std::size_t n, double epsilon, double band,
                                          Point start, double lo = 0.0, double hi = 10.0,
                                          double min_step = 0.1, double max_step = 1.75) {
  std::vector<Point> pts{start};
  int stalls = 0;
  while (pts.size() < n) {
    if (++stalls > 20000) return {};
    const Point base = pts[std::uniform_int_distribution<std::size_t>(0, pts.size() - 1)(rng)];
    const double ang = uniform(rng, 0.0, kTwoPi);
    const double step = uniform(rng, min_step * epsilon, max_step * epsilon);
    const Point cand{base.x + step * std::cos(ang), base.y + step * std::sin(ang)};
    if (cand.x < lo || cand.x > hi || cand.y < lo || cand.y > hi) continue;
    if (!clear_of_tangency(pts, cand, epsilon, band)) continue;
    pts.push_back(cand);
  }
  return pts;
}

}  // namespace jcurve::testing
