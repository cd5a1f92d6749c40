#pragma once

#include <algorithm>
#include <cmath>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <limits>
#include <optional>
#include <random>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "jcurve/error.hpp"
#include "jcurve/tolerance.hpp"

namespace jcurve {

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

struct Point {
  double x = 0.0;
  double y = 0.0;

  friend constexpr bool operator==(const Point&, const Point&) = default;
  friend constexpr auto operator<=>(const Point& a, const Point& b) {
    if (auto c = a.x <=> b.x; c != 0) return c;
    return a.y <=> b.y;
  }

  friend constexpr Point operator+(Point a, Point b) { return {a.x + b.x, a.y + b.y}; }
  friend constexpr Point operator-(Point a, Point b) { return {a.x - b.x, a.y - b.y}; }
  friend constexpr Point operator*(double s, Point a) { return {s * a.x, s * a.y}; }

  bool finite() const { return std::isfinite(x) && std::isfinite(y); }
};

inline double dot(Point a, Point b) { return a.x * b.x + a.y * b.y; }
inline double norm(Point a) { return std::hypot(a.x, a.y); }
inline double distance(Point a, Point b) { return std::hypot(a.x - b.x, a.y - b.y); }

// Angle mapped into [0, 2pi).
inline double canonical_angle(double a) {
  double r = std::fmod(a, kTwoPi);
  if (r < 0) r += kTwoPi;
  if (r >= kTwoPi) r = 0.0;
  return r;
}

inline double polar_angle(Point center, Point p) {
  return canonical_angle(std::atan2(p.y - center.y, p.x - center.x));
}

inline Point on_circle(Point center, double radius, double angle) {
  return {center.x + radius * std::cos(angle), center.y + radius * std::sin(angle)};
}

// Finite, exactly-deduplicated set of plane points in lexicographic order.
class PointSet {
 public:
  PointSet() = default;

  explicit PointSet(std::vector<Point> points) : points_(std::move(points)) {
    if (points_.empty()) throw Error(ErrorCode::EmptyInput, "point set is empty");
    for (const Point& p : points_) {
      if (!p.finite()) throw Error(ErrorCode::ValidationError, "point coordinates must be finite");
    }
    std::sort(points_.begin(), points_.end());
    const auto before = points_.size();
    points_.erase(std::unique(points_.begin(), points_.end()), points_.end());
    duplicates_removed_ = before - points_.size();
  }

  std::size_t size() const { return points_.size(); }
  bool empty() const { return points_.empty(); }
  const Point& operator[](std::size_t i) const { return points_[i]; }
  std::span<const Point> points() const { return points_; }
  auto begin() const { return points_.begin(); }
  auto end() const { return points_.end(); }
  std::size_t duplicates_removed() const { return duplicates_removed_; }

  friend bool operator==(const PointSet& a, const PointSet& b) { return a.points_ == b.points_; }

 private:
  std::vector<Point> points_;
  std::size_t duplicates_removed_ = 0;
};

// Distance from p to the nearest point of the set.
inline double distance_to_set(Point p, std::span<const Point> set) {
  double best = std::numeric_limits<double>::infinity();
  for (const Point& q : set) best = std::min(best, distance(p, q));
  return best;
}

struct Circle {
  Point center;
  double radius = 0.0;
};

struct CircleIntersection {
  std::vector<Point> points;  // lexicographic order
  bool tangent = false;
};

// All common points of two circles. Tangency (internal or external) within
// tol.isect yields exactly one point.
inline CircleIntersection circle_circle_intersections(const Circle& c1, const Circle& c2,
                                                      const TolerancePolicy& tol) {
  if (!(c1.radius > 0) || !(c2.radius > 0)) {
    throw Error(ErrorCode::InvalidArgument, "circle radii must be positive");
  }
  const Point delta = c2.center - c1.center;
  const double d = norm(delta);
  const double r1 = c1.radius;
  const double r2 = c2.radius;
  if (d <= tol.isect && std::abs(r1 - r2) <= tol.isect) {
    throw Error(ErrorCode::IdenticalCircles, "circles coincide");
  }
  CircleIntersection out;
  if (d <= tol.isect) return out;  // concentric, different radii

  const Point u = (1.0 / d) * delta;
  const double outer_gap = d - (r1 + r2);
  const double inner_gap = d - std::abs(r1 - r2);
  if (std::abs(outer_gap) <= tol.isect) {
    out.tangent = true;
    out.points.push_back(c1.center + r1 * u);
    return out;
  }
  if (std::abs(inner_gap) <= tol.isect) {
    out.tangent = true;
    out.points.push_back(r1 >= r2 ? c1.center + r1 * u : c1.center - r1 * u);
    return out;
  }
  if (outer_gap > 0 || inner_gap < 0) return out;

  const double a = (d * d + r1 * r1 - r2 * r2) / (2.0 * d);
  const double h = std::sqrt(std::max(0.0, r1 * r1 - a * a));
  const Point base = c1.center + a * u;
  const Point perp{-u.y, u.x};
  out.points.push_back(base + h * perp);
  out.points.push_back(base - h * perp);
  std::sort(out.points.begin(), out.points.end());
  return out;
}

// Circular arc of a circle centred at a source point. Stored counterclockwise
// from start_angle to end_angle; `ccw` is the traversal direction within a
// cycle.
struct Arc {
  std::size_t center_index = 0;
  Point center;
  double radius = 0.0;
  double start_angle = 0.0;
  double end_angle = 0.0;
  bool full_circle = false;
  bool ccw = true;
  Point start_point;
  Point end_point;

  static Arc from_angles(std::size_t index, Point center, double radius, double start,
                         double end) {
    Arc a;
    a.center_index = index;
    a.center = center;
    a.radius = radius;
    a.start_angle = canonical_angle(start);
    a.end_angle = canonical_angle(end);
    a.start_point = on_circle(center, radius, a.start_angle);
    a.end_point = on_circle(center, radius, a.end_angle);
    return a;
  }

  static Arc full(std::size_t index, Point center, double radius, double start = 0.0) {
    Arc a = from_angles(index, center, radius, start, start);
    a.full_circle = true;
    a.end_point = a.start_point;
    return a;
  }

  // Counterclockwise angular extent in (0, 2pi].
  double sweep() const {
    if (full_circle) return kTwoPi;
    const double s = canonical_angle(end_angle - start_angle);
    return s == 0.0 ? kTwoPi : s;
  }

  // Angular offset of `angle` measured counterclockwise from start_angle.
  double offset_of(double angle) const { return canonical_angle(angle - start_angle); }

  bool contains_angle(double angle, double slack = 0.0) const {
    if (full_circle) return true;
    const double off = offset_of(angle);
    return off <= sweep() + slack || off >= kTwoPi - slack;
  }

  // Point at parameter t in [0,1] along the stored (counterclockwise) direction.
  Point point_at(double t) const { return on_circle(center, radius, start_angle + t * sweep()); }

  Point traversal_start() const { return ccw ? start_point : end_point; }
  Point traversal_end() const { return ccw ? end_point : start_point; }
};

inline double point_to_arc_distance(Point p, const Arc& a) {
  const Point v = p - a.center;
  const double r = norm(v);
  if (r == 0.0) return a.radius;
  if (a.contains_angle(polar_angle(a.center, p))) return std::abs(r - a.radius);
  return std::min(distance(p, a.start_point), distance(p, a.end_point));
}

enum class CycleKind { Outer, Hole };

inline std::string_view to_string(CycleKind k) { return k == CycleKind::Outer ? "outer" : "hole"; }

// Closed chain of arcs. Outer cycles run counterclockwise, holes clockwise;
// the covered region is always on the left.
struct ArcCycle {
  std::vector<Arc> arcs;
  CycleKind kind = CycleKind::Outer;
  Point canonical_key;

  // Smallest traversal-start point, or the centre for a lone full circle.
  static Point key_of(std::span<const Arc> arcs) {
    if (arcs.size() == 1 && arcs.front().full_circle) return arcs.front().center;
    Point best = arcs.front().traversal_start();
    for (const Arc& a : arcs) best = std::min(best, a.traversal_start());
    return best;
  }

  // Rotates the arc list so the arc starting at the canonical key comes first.
  static ArcCycle make(std::vector<Arc> arcs, CycleKind kind) {
    if (arcs.empty()) throw Error(ErrorCode::InvalidArgument, "cycle needs at least one arc");
    ArcCycle c;
    c.canonical_key = key_of(arcs);
    if (!(arcs.size() == 1 && arcs.front().full_circle)) {
      auto first = std::find_if(arcs.begin(), arcs.end(), [&](const Arc& a) {
        return a.traversal_start() == c.canonical_key;
      });
      std::rotate(arcs.begin(), first, arcs.end());
    }
    c.arcs = std::move(arcs);
    c.kind = kind;
    return c;
  }

  double max_radius() const {
    double r = 0.0;
    for (const Arc& a : arcs) r = std::max(r, a.radius);
    return r;
  }
};

// Signed area enclosed by the cycle (Green's theorem, exact for arcs).
inline double signed_area(const ArcCycle& c) {
  double twice = 0.0;
  for (const Arc& a : c.arcs) {
    const double s = a.sweep();
    const double t0 = a.start_angle;
    const double t1 = a.start_angle + s;
    double term = a.radius * a.radius * s +
                  a.radius * (a.center.x * (std::sin(t1) - std::sin(t0)) -
                              a.center.y * (std::cos(t1) - std::cos(t0)));
    twice += a.ccw ? term : -term;
  }
  return 0.5 * twice;
}

inline double distance_to_cycle(Point p, const ArcCycle& c) {
  double best = std::numeric_limits<double>::infinity();
  for (const Arc& a : c.arcs) best = std::min(best, point_to_arc_distance(p, a));
  return best;
}

enum class Side { Inside, Outside, OnCurve };

inline std::string_view to_string(Side s) {
  switch (s) {
    case Side::Inside: return "inside";
    case Side::Outside: return "outside";
    case Side::OnCurve: return "on_curve";
  }
  return "unknown";
}

namespace detail {

inline bool near_curve(Point p, const ArcCycle& c, const TolerancePolicy& tol) {
  for (const Arc& a : c.arcs) {
    const double slack = tol.dist_slack(a.radius);
    // |p - centre| - r bounds the arc distance from below; skip the trig
    // when that bound already clears the slack.
    if (std::abs(distance(p, a.center) - a.radius) > slack) continue;
    if (point_to_arc_distance(p, a) <= slack) return true;
  }
  return false;
}

// Crossings of the ray p + t*dir (t > 0, dir unit) with one arc, or nullopt
// when the ray grazes the circle or passes through an arc endpoint.
inline std::optional<int> ray_arc_crossings(Point p, Point dir, const Arc& a) {
  const double guard = 1e-9 * (1.0 + a.radius);
  const Point o = p - a.center;
  const double b = dot(dir, o);
  const double c = dot(o, o) - a.radius * a.radius;
  const double disc = b * b - c;
  if (disc < -2.0 * a.radius * guard) return 0;
  if (std::abs(disc) <= 2.0 * a.radius * guard + guard * guard) return std::nullopt;
  const double root = std::sqrt(disc);
  int hits = 0;
  for (const double t : {-b - root, -b + root}) {
    if (t < -guard) continue;
    const Point h = p + t * dir;
    if (!a.full_circle &&
        (distance(h, a.start_point) <= guard || distance(h, a.end_point) <= guard)) {
      return std::nullopt;
    }
    if (a.contains_angle(polar_angle(a.center, h))) {
      if (t <= guard) return std::nullopt;
      ++hits;
    }
  }
  return hits;
}

// Deterministic ray direction for retry `attempt`: integer-slope vector drawn
// from a seeded generator, then normalised.
inline Point ray_direction(std::uint64_t seed, int attempt) {
  std::mt19937_64 gen(seed + 0x9e3779b97f4a7c15ULL * static_cast<std::uint64_t>(attempt + 1));
  std::uniform_int_distribution<int> pick(-4096, 4096);
  int dx = 0;
  int dy = 0;
  while (dx == 0 || dy == 0) {
    dx = pick(gen);
    dy = pick(gen);
  }
  const double len = std::hypot(static_cast<double>(dx), static_cast<double>(dy));
  return {dx / len, dy / len};
}

inline constexpr int kMaxRayRetries = 32;

// Crossing parity with an explicit attempt index; nullopt on a degenerate ray.
inline std::optional<bool> odd_crossings(Point p, const ArcCycle& c, Point dir) {
  int total = 0;
  for (const Arc& a : c.arcs) {
    const auto hits = ray_arc_crossings(p, dir, a);
    if (!hits) return std::nullopt;
    total += *hits;
  }
  return (total % 2) == 1;
}

}  // namespace detail

// Membership of p in the bounded (Inside) or unbounded (Outside) face of c.
inline Side point_in_cycle(Point p, const ArcCycle& c, const TolerancePolicy& tol,
                           int first_attempt = 0) {
  if (detail::near_curve(p, c, tol)) return Side::OnCurve;
  for (int attempt = 0; attempt < detail::kMaxRayRetries; ++attempt) {
    const Point dir = detail::ray_direction(tol.seed, first_attempt + attempt);
    if (const auto odd = detail::odd_crossings(p, c, dir)) {
      return *odd ? Side::Inside : Side::Outside;
    }
  }
  throw Error(ErrorCode::RobustnessExhausted,
              "ray casting degenerate after " + std::to_string(detail::kMaxRayRetries) +
                  " retries");
}

struct SimplicityViolation {
  std::size_t first = 0;
  std::size_t second = 0;
  Point where;
};

struct SimplicityReport {
  bool simple = true;
  std::vector<SimplicityViolation> violations;
};

namespace detail {

// Intersection points of two arcs (including shared endpoints).
inline std::vector<Point> arc_arc_intersections(const Arc& a, const Arc& b,
                                                const TolerancePolicy& tol) {
  std::vector<Point> out;
  const bool same_circle =
      distance(a.center, b.center) <= tol.isect && std::abs(a.radius - b.radius) <= tol.isect;
  if (same_circle) {
    // Overlap of angular intervals on one circle.
    const double slack = tol.isect / a.radius;
    if (a.full_circle || b.full_circle) {
      out.push_back(a.full_circle ? b.point_at(0.5) : a.point_at(0.5));
      return out;
    }
    const double b_start = a.offset_of(b.start_angle);
    const double b_end = b_start + b.sweep();
    const double a_sweep = a.sweep();
    for (const double shift : {0.0, kTwoPi, -kTwoPi}) {
      const double lo = std::max(0.0, b_start + shift);
      const double hi = std::min(a_sweep, b_end + shift);
      // A positive-length overlap reports its midpoint, which is never a weld.
      if (hi >= lo - slack) {
        out.push_back(on_circle(a.center, a.radius, a.start_angle + 0.5 * (lo + hi)));
      }
    }
    return out;
  }
  const auto isect =
      circle_circle_intersections({a.center, a.radius}, {b.center, b.radius}, tol);
  for (const Point& p : isect.points) {
    const double slack_a = tol.isect / a.radius;
    const double slack_b = tol.isect / b.radius;
    if (a.contains_angle(polar_angle(a.center, p), slack_a) &&
        b.contains_angle(polar_angle(b.center, p), slack_b)) {
      out.push_back(p);
    }
  }
  return out;
}

}  // namespace detail

// Verifies that the chain is closed and free of self-contact: weld points
// distinct, full circles only as singleton cycles, non-adjacent arcs
// disjoint, adjacent arcs meeting only at their shared weld.
inline SimplicityReport cycle_is_simple(const ArcCycle& c, const TolerancePolicy& tol) {
  const std::size_t n = c.arcs.size();
  if (n == 0) throw Error(ErrorCode::InvalidArgument, "empty cycle");
  for (std::size_t k = 0; k < n; ++k) {
    const Arc& cur = c.arcs[k];
    const Arc& next = c.arcs[(k + 1) % n];
    if (distance(cur.traversal_end(), next.traversal_start()) > tol.join) {
      throw Error(ErrorCode::NotClosed, "arc " + std::to_string(k) + " does not weld to arc " +
                                            std::to_string((k + 1) % n));
    }
  }
  SimplicityReport report;
  auto flag = [&](std::size_t i, std::size_t j, Point where) {
    report.simple = false;
    report.violations.push_back({i, j, where});
  };
  if (n == 1) return report;

  for (std::size_t i = 0; i < n; ++i) {
    if (c.arcs[i].full_circle) flag(i, i, c.arcs[i].traversal_start());
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Point wi = c.arcs[i].traversal_start();
      const Point wj = c.arcs[j].traversal_start();
      if (distance(wi, wj) <= tol.join) flag(i, j, wi);
    }
  }
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const Arc& a = c.arcs[i];
      const Arc& b = c.arcs[j];
      // Welds this pair legitimately shares.
      std::vector<Point> allowed;
      if (j == i + 1) allowed.push_back(b.traversal_start());
      if (i == 0 && j == n - 1) allowed.push_back(a.traversal_start());
      const double weld_slack = std::max(tol.join, 1e-9 * (1.0 + std::max(a.radius, b.radius)));
      for (const Point& p : detail::arc_arc_intersections(a, b, tol)) {
        const bool is_weld = std::any_of(allowed.begin(), allowed.end(),
                                         [&](Point w) { return distance(p, w) <= weld_slack; });
        if (!is_weld) flag(i, j, p);
      }
    }
  }
  return report;
}

}  // namespace jcurve
