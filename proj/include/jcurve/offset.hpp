#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "jcurve/error.hpp"
#include "jcurve/geometry.hpp"
#include "jcurve/tolerance.hpp"

namespace jcurve {

// Boundary of the union of closed epsilon-disks around a point set, as closed
// arc cycles in canonical order.
struct OffsetBoundary {
  double epsilon = 0.0;
  PointSet source;
  std::vector<ArcCycle> cycles;
  std::vector<std::size_t> arcs_per_source;  // contributing arcs per source point
  std::size_t isolated_tangencies = 0;       // pinch points buried inside the union
};

namespace detail {

struct OffsetVertex {
  Point p;
  std::size_t i = 0;
  std::size_t j = 0;
  bool tangent = false;
};

struct RawArc {
  std::size_t circle = 0;
  std::optional<std::size_t> from;  // vertex ids; empty for isolated circles
  std::optional<std::size_t> to;
  double start_angle = 0.0;
  double end_angle = 0.0;
};

// Splits a closed walk wherever it revisits a vertex, so each resulting
// cycle passes any pinch point once.
inline std::vector<std::vector<std::size_t>> split_at_repeats(
    const std::vector<std::size_t>& walk, const std::vector<RawArc>& arcs) {
  std::vector<std::vector<std::size_t>> loops;
  std::vector<std::size_t> path;
  std::map<std::size_t, std::size_t> position;  // vertex -> index in path
  for (const std::size_t a : walk) {
    const std::size_t v = *arcs[a].from;
    if (auto it = position.find(v); it != position.end()) {
      const std::size_t begin = it->second;
      loops.emplace_back(path.begin() + static_cast<std::ptrdiff_t>(begin), path.end());
      for (std::size_t k = begin; k < path.size(); ++k) position.erase(*arcs[path[k]].from);
      path.resize(begin);
    }
    position[v] = path.size();
    path.push_back(a);
  }
  if (!path.empty()) loops.push_back(std::move(path));
  return loops;
}

inline bool cycle_less(const ArcCycle& a, const ArcCycle& b) {
  if (a.canonical_key != b.canonical_key) return a.canonical_key < b.canonical_key;
  if (a.kind != b.kind) return a.kind == CycleKind::Outer;
  if (a.arcs.size() != b.arcs.size()) return a.arcs.size() < b.arcs.size();
  return std::abs(signed_area(a)) > std::abs(signed_area(b));
}

}  // namespace detail

inline OffsetBoundary offset_boundary(const PointSet& A, double epsilon,
                                      const TolerancePolicy& tol = {}) {
  if (A.empty()) throw Error(ErrorCode::EmptyInput, "offset of an empty set");
  if (!(epsilon > 0) || !std::isfinite(epsilon)) {
    throw Error(ErrorCode::InvalidArgument, "epsilon must be positive and finite");
  }
  const std::size_t n = A.size();

  // Circles whose centre coincides (within isect) with an earlier one add
  // nothing to the union.
  std::vector<bool> shadowed(n, false);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i < j && !shadowed[j]; ++i) {
      if (!shadowed[i] && distance(A[i], A[j]) <= tol.isect) shadowed[j] = true;
    }
  }

  std::vector<detail::OffsetVertex> vertices;
  std::vector<std::vector<std::pair<double, std::size_t>>> on_circle_vertices(n);
  std::vector<std::vector<std::size_t>> neighbours(n);
  const double reach = 2.0 * epsilon + tol.isect;
  for (std::size_t i = 0; i < n; ++i) {
    if (shadowed[i]) continue;
    for (std::size_t j = i + 1; j < n; ++j) {
      if (shadowed[j] || distance(A[i], A[j]) > reach) continue;
      neighbours[i].push_back(j);
      neighbours[j].push_back(i);
      const auto x = circle_circle_intersections({A[i], epsilon}, {A[j], epsilon}, tol);
      for (const Point& p : x.points) {
        const std::size_t id = vertices.size();
        vertices.push_back({p, i, j, x.tangent});
        on_circle_vertices[i].emplace_back(polar_angle(A[i], p), id);
        on_circle_vertices[j].emplace_back(polar_angle(A[j], p), id);
      }
    }
  }

  auto other_circle = [&](std::size_t vertex, std::size_t circle) {
    return vertices[vertex].i == circle ? vertices[vertex].j : vertices[vertex].i;
  };

  std::vector<detail::RawArc> raw;
  const double inside_radius = epsilon - tol.dist_slack(epsilon);
  for (std::size_t i = 0; i < n; ++i) {
    if (shadowed[i]) continue;
    auto& around = on_circle_vertices[i];
    if (around.empty()) {
      raw.push_back({i, std::nullopt, std::nullopt, 0.0, 0.0});
      continue;
    }
    std::sort(around.begin(), around.end());
    const std::size_t m = around.size();
    if (m > 1) {
      for (std::size_t k = 0; k < m; ++k) {
        const auto& [a0, v0] = around[k];
        const auto& [a1, v1] = around[(k + 1) % m];
        if (distance(vertices[v0].p, vertices[v1].p) <= tol.isect) {
          const std::size_t j0 = other_circle(v0, i);
          const std::size_t j1 = other_circle(v1, i);
          if (j0 != j1) {
            throw Error(ErrorCode::ToleranceCollapse,
                        "intersection points of circles " + std::to_string(i) + "/" +
                            std::to_string(j0) + " and " + std::to_string(i) + "/" +
                            std::to_string(j1) + " coincide");
          }
        }
      }
    }
    for (std::size_t k = 0; k < m; ++k) {
      const auto& [a0, v0] = around[k];
      const auto& [a1, v1] = around[(k + 1) % m];
      const double sweep = m == 1 ? kTwoPi : canonical_angle(a1 - a0);
      const Point mid = on_circle(A[i], epsilon, a0 + 0.5 * sweep);
      const bool covered = std::any_of(neighbours[i].begin(), neighbours[i].end(), [&](std::size_t j) {
        return distance(mid, A[j]) < inside_radius;
      });
      if (!covered) raw.push_back({i, v0, v1, a0, a1});
    }
  }

  OffsetBoundary out;
  out.epsilon = epsilon;
  out.source = A;
  out.arcs_per_source.assign(n, 0);
  for (const auto& r : raw) ++out.arcs_per_source[r.circle];

  std::vector<std::vector<std::size_t>> leaving(vertices.size());
  std::vector<std::vector<std::size_t>> arriving(vertices.size());
  for (std::size_t a = 0; a < raw.size(); ++a) {
    if (!raw[a].from) continue;
    leaving[*raw[a].from].push_back(a);
    arriving[*raw[a].to].push_back(a);
  }
  std::vector<std::size_t> successor(raw.size(), std::numeric_limits<std::size_t>::max());
  for (std::size_t v = 0; v < vertices.size(); ++v) {
    if (leaving[v].size() != arriving[v].size()) {
      throw Error(ErrorCode::ToleranceFailure,
                  "unbalanced boundary vertex at (" + std::to_string(vertices[v].p.x) + ", " +
                      std::to_string(vertices[v].p.y) + ")");
    }
    if (leaving[v].empty() && vertices[v].tangent) ++out.isolated_tangencies;
    for (std::size_t k = 0; k < arriving[v].size(); ++k) successor[arriving[v][k]] = leaving[v][k];
  }

  auto make_arc = [&](const detail::RawArc& r) {
    if (!r.from) return Arc::full(r.circle, A[r.circle], epsilon);
    Arc arc;
    arc.center_index = r.circle;
    arc.center = A[r.circle];
    arc.radius = epsilon;
    arc.start_angle = r.start_angle;
    arc.end_angle = r.end_angle;
    arc.start_point = vertices[*r.from].p;
    arc.end_point = vertices[*r.to].p;
    arc.full_circle = *r.from == *r.to;
    return arc;
  };

  std::vector<bool> used(raw.size(), false);
  for (std::size_t a = 0; a < raw.size(); ++a) {
    if (used[a]) continue;
    if (!raw[a].from) {
      used[a] = true;
      out.cycles.push_back(ArcCycle::make({make_arc(raw[a])}, CycleKind::Outer));
      continue;
    }
    std::vector<std::size_t> walk;
    for (std::size_t cur = a; !used[cur]; cur = successor[cur]) {
      used[cur] = true;
      walk.push_back(cur);
    }
    for (const auto& loop : detail::split_at_repeats(walk, raw)) {
      std::vector<Arc> arcs;
      arcs.reserve(loop.size());
      for (const std::size_t k : loop) arcs.push_back(make_arc(raw[k]));
      if (arcs.size() == 1) arcs.front().full_circle = true;
      ArcCycle cycle = ArcCycle::make(std::move(arcs), CycleKind::Outer);
      cycle.kind = signed_area(cycle) > 0 ? CycleKind::Outer : CycleKind::Hole;
      out.cycles.push_back(std::move(cycle));
    }
  }
  std::sort(out.cycles.begin(), out.cycles.end(), detail::cycle_less);
  return out;
}

struct Face {
  std::size_t id = 0;
  bool bounded = false;
  std::optional<std::size_t> boundary;  // enclosing hole cycle of a bounded face
  std::vector<std::size_t> inner;       // outer cycles directly inside the face
};

// Nesting forest of the cycles plus the complement faces they bound. Face 0
// is the unbounded face; every hole cycle bounds one further face.
struct FaceGraph {
  std::vector<Face> faces;
  std::vector<std::optional<std::size_t>> parent;  // per cycle
  std::vector<std::size_t> depth;                  // per cycle
  std::vector<std::optional<std::size_t>> face_of_hole;

  static constexpr std::size_t kUnbounded = 0;

  // Number of cycles bounding a face.
  std::size_t boundary_count(std::size_t face) const {
    return faces[face].inner.size() + (faces[face].boundary ? 1 : 0);
  }
};

namespace detail {

inline constexpr int kRepresentativeAttempts = 8;

inline Point representative(const ArcCycle& c, int attempt) {
  static constexpr double kFractions[] = {0.5, 0.25, 0.75, 0.375, 0.625, 0.125, 0.875, 0.4375};
  const Arc& a = c.arcs[static_cast<std::size_t>(attempt) % c.arcs.size()];
  return a.point_at(kFractions[attempt % 8]);
}

}  // namespace detail

inline FaceGraph face_graph(const OffsetBoundary& ob, const TolerancePolicy& tol = {}) {
  const std::size_t n = ob.cycles.size();
  // contains[outer][inner]
  std::vector<std::vector<bool>> contains(n, std::vector<bool>(n, false));
  for (std::size_t c = 0; c < n; ++c) {
    bool resolved = false;
    for (int attempt = 0; attempt < detail::kRepresentativeAttempts && !resolved; ++attempt) {
      const Point rep = detail::representative(ob.cycles[c], attempt);
      resolved = true;
      for (std::size_t d = 0; d < n && resolved; ++d) {
        if (d == c) continue;
        const Side s = point_in_cycle(rep, ob.cycles[d], tol);
        if (s == Side::OnCurve) resolved = false;
        contains[d][c] = s == Side::Inside;
      }
    }
    if (!resolved) {
      throw Error(ErrorCode::AmbiguousNesting,
                  "no representative of cycle " + std::to_string(c) + " clears the other cycles");
    }
  }

  FaceGraph fg;
  fg.parent.assign(n, std::nullopt);
  fg.depth.assign(n, 0);
  fg.face_of_hole.assign(n, std::nullopt);
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t d = 0; d < n; ++d) fg.depth[c] += contains[d][c] ? 1 : 0;
  }
  for (std::size_t c = 0; c < n; ++c) {
    for (std::size_t d = 0; d < n; ++d) {
      if (!contains[d][c]) continue;
      if (!fg.parent[c] || fg.depth[d] > fg.depth[*fg.parent[c]]) fg.parent[c] = d;
    }
  }

  fg.faces.push_back({FaceGraph::kUnbounded, false, std::nullopt, {}});
  for (std::size_t c = 0; c < n; ++c) {
    if (ob.cycles[c].kind != CycleKind::Hole) continue;
    fg.face_of_hole[c] = fg.faces.size();
    fg.faces.push_back({fg.faces.size(), true, c, {}});
  }
  for (std::size_t c = 0; c < n; ++c) {
    if (ob.cycles[c].kind != CycleKind::Outer) continue;
    std::size_t face = FaceGraph::kUnbounded;
    if (fg.parent[c] && fg.face_of_hole[*fg.parent[c]]) face = *fg.face_of_hole[*fg.parent[c]];
    fg.faces[face].inner.push_back(c);
  }
  return fg;
}

// Face of the complement of the closed epsilon-neighbourhood containing q.
inline std::size_t face_of_point(Point q, const FaceGraph& fg, const OffsetBoundary& ob,
                                 const TolerancePolicy& tol = {}) {
  const double rho = distance_to_set(q, ob.source.points());
  if (rho <= ob.epsilon + tol.dist_slack(ob.epsilon)) {
    throw Error(ErrorCode::NotInComplement,
                "point lies within epsilon of the source set (distance " + std::to_string(rho) +
                    ")");
  }
  std::optional<std::size_t> innermost;
  for (std::size_t c = 0; c < ob.cycles.size(); ++c) {
    const Side s = point_in_cycle(q, ob.cycles[c], tol);
    if (s == Side::OnCurve) throw Error(ErrorCode::OnBoundary, "point lies on a boundary cycle");
    if (s == Side::Inside && (!innermost || fg.depth[c] > fg.depth[*innermost])) innermost = c;
  }
  if (!innermost) return FaceGraph::kUnbounded;
  if (const auto face = fg.face_of_hole[*innermost]) return *face;
  throw Error(ErrorCode::NotInComplement, "point is enclosed by an outer cycle");
}

}  // namespace jcurve
