#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "jcurve/chained.hpp"
#include "jcurve/error.hpp"
#include "jcurve/geometry.hpp"
#include "jcurve/offset.hpp"
#include "jcurve/tolerance.hpp"

namespace jcurve {

struct SeparationResult {
  ArcCycle curve;
  Side side_of_A = Side::Inside;
  Side side_of_B = Side::Outside;
  double epsilon = 0.0;
  double dist_curve_A = 0.0;
  double dist_curve_B = 0.0;
  bool face_bounded = false;  // whether B's complement face is bounded
  HypothesisReport hypothesis;
};

struct MidwayResult {
  ArcCycle curve;
  double rho_AB = 0.0;
  double achieved_dist_A = 0.0;
  double achieved_dist_B = 0.0;
  SeparationResult separation;
};

class BSpansMultipleFacesError : public Error {
 public:
  explicit BSpansMultipleFacesError(std::vector<std::size_t> faces)
      : Error(ErrorCode::BSpansMultipleFaces, describe(faces)), faces_(std::move(faces)) {}

  // Face id per point of B, in B's canonical order.
  const std::vector<std::size_t>& faces() const { return faces_; }

 private:
  static std::string describe(const std::vector<std::size_t>& faces) {
    std::string s = "points of B lie in different complement faces: [";
    for (std::size_t k = 0; k < faces.size(); ++k) {
      if (k) s += ", ";
      s += std::to_string(faces[k]);
    }
    return s + "]";
  }

  std::vector<std::size_t> faces_;
};

// Minimum exact distance between the points of a set and the arcs of a curve.
inline double curve_set_distance(const ArcCycle& c, const PointSet& S) {
  double best = std::numeric_limits<double>::infinity();
  for (const Point& p : S) best = std::min(best, distance_to_cycle(p, c));
  return best;
}

// Worst deviation of sampled curve points from the epsilon level set of M.
inline double level_set_deviation(const ArcCycle& c, const PointSet& M, double epsilon,
                                   std::size_t samples_per_arc = 256) {
  double worst = 0.0;
  for (const Arc& a : c.arcs) {
    for (std::size_t k = 0; k < samples_per_arc; ++k) {
      const double t = static_cast<double>(k) / static_cast<double>(samples_per_arc - 1);
      const double rho = distance_to_set(a.point_at(t), M.points());
      worst = std::max(worst, std::abs(rho - epsilon));
    }
  }
  return worst;
}

inline ArcCycle outer_curve(const PointSet& A, double epsilon, const TolerancePolicy& tol = {}) {
  if (!(epsilon > 0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  auto partition = chained_components(A, 2.0 * epsilon);
  if (partition.blocks.size() != 1) throw NotChainedError(std::move(partition));
  const OffsetBoundary ob = offset_boundary(A, epsilon, tol);
  const ArcCycle* outer = nullptr;
  for (const ArcCycle& c : ob.cycles) {
    if (c.kind != CycleKind::Outer) continue;
    if (outer) throw Error(ErrorCode::ToleranceFailure, "chained set produced several outer cycles");
    outer = &c;
  }
  if (!outer) throw Error(ErrorCode::ToleranceFailure, "no outer cycle");
  for (const Point& p : A) {
    if (point_in_cycle(p, *outer, tol) != Side::Inside) {
      throw Error(ErrorCode::ToleranceFailure, "source point not enclosed by the outer cycle");
    }
  }
  return *outer;
}

// Boundary of the complement face of the closed epsilon-neighbourhood of A
// that contains B. With `force`, unmet hypotheses are not rejected up front
// and the geometric obstruction is reported instead.
inline SeparationResult separating_curve(const PointSet& A, const PointSet& B, double epsilon,
                                         const TolerancePolicy& tol = {}, bool force = false) {
  HypothesisReport report = check_hypotheses(A, B, epsilon);
  if (!report.ok() && !force) throw HypothesisViolationError(std::move(report));

  const OffsetBoundary ob = offset_boundary(A, epsilon, tol);
  const FaceGraph fg = face_graph(ob, tol);
  std::vector<std::size_t> faces;
  faces.reserve(B.size());
  for (const Point& b : B) faces.push_back(face_of_point(b, fg, ob, tol));
  for (const std::size_t f : faces) {
    if (f != faces.front()) throw BSpansMultipleFacesError(faces);
  }
  const Face& face = fg.faces[faces.front()];
  if (fg.boundary_count(face.id) != 1) {
    throw Error(ErrorCode::FaceBoundaryNotSingleCycle,
                "face " + std::to_string(face.id) + " is bounded by " +
                    std::to_string(fg.boundary_count(face.id)) + " cycles");
  }
  const std::size_t cycle = face.boundary ? *face.boundary : face.inner.front();

  SeparationResult r;
  r.curve = ob.cycles[cycle];
  r.epsilon = epsilon;
  r.face_bounded = face.bounded;
  r.side_of_A = point_in_cycle(A[0], r.curve, tol);
  r.side_of_B = point_in_cycle(B[0], r.curve, tol);
  r.dist_curve_A = curve_set_distance(r.curve, A);
  r.dist_curve_B = curve_set_distance(r.curve, B);
  r.hypothesis = std::move(report);
  return r;
}

inline const char* const kMidwayViolationA = "A not ρ(A,B)-chained";
inline const char* const kMidwayViolationB = "B not ρ(A,B)-chained";

// Separating curve at epsilon = rho(A,B)/2, equidistant from both sets.
inline MidwayResult midway_curve(const PointSet& A, const PointSet& B,
                                 const TolerancePolicy& tol = {}) {
  const double rho = set_distance(A, B);
  if (rho == 0.0) throw Error(ErrorCode::ZeroDistance, "sets share a point");
  HypothesisReport report;
  report.rho_AB = rho;
  report.epsilon = 0.5 * rho;
  report.rho_exceeds_epsilon = true;
  report.A_chained_at = is_chained(A, rho);
  report.B_chained_at = is_chained(B, rho);
  if (!report.A_chained_at) report.violations.emplace_back(kMidwayViolationA);
  if (!report.B_chained_at) report.violations.emplace_back(kMidwayViolationB);
  if (!report.ok()) throw HypothesisViolationError(std::move(report));

  MidwayResult m;
  m.separation = separating_curve(A, B, 0.5 * rho, tol);
  m.curve = m.separation.curve;
  m.rho_AB = rho;
  m.achieved_dist_A = m.separation.dist_curve_A;
  m.achieved_dist_B = m.separation.dist_curve_B;
  const double slack = tol.dist_slack(rho);
  if (std::abs(m.achieved_dist_A - 0.5 * rho) > slack ||
      std::abs(m.achieved_dist_B - 0.5 * rho) > slack) {
    throw Error(ErrorCode::ToleranceFailure, "midway curve misses rho/2 equidistance");
  }
  return m;
}

struct PairSeparation {
  std::size_t first = 0;   // block index playing A
  std::size_t second = 0;  // block index playing B
  std::optional<SeparationResult> result;
  std::optional<ErrorCode> error;
  std::string message;
};

struct ComponentSeparation {
  ChainPartition partition;
  std::vector<PairSeparation> pairs;  // ordered by (first, second)
};

// Separates every pair of 2*epsilon-chained blocks of M by a curve lying on
// the epsilon level set of M. Failures are recorded per pair.
inline ComponentSeparation separate_components(const PointSet& M, double epsilon,
                                               const TolerancePolicy& tol = {}) {
  if (!(epsilon > 0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  ComponentSeparation out;
  out.partition = chained_components(M, 2.0 * epsilon);
  const auto& blocks = out.partition.blocks;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    for (std::size_t j = i + 1; j < blocks.size(); ++j) {
      PairSeparation pair;
      pair.first = i;
      pair.second = j;
      try {
        SeparationResult r = separating_curve(blocks[i], blocks[j], epsilon, tol);
        if (level_set_deviation(r.curve, M, epsilon) > tol.dist_slack(epsilon)) {
          throw Error(ErrorCode::ToleranceFailure, "curve leaves the epsilon level set of M");
        }
        pair.result = std::move(r);
      } catch (const Error& e) {
        pair.error = e.code();
        pair.message = e.what();
      }
      out.pairs.push_back(std::move(pair));
    }
  }
  return out;
}

// A simple closed curve on the epsilon level set of any nonempty M: the outer
// boundary of the first 2*epsilon-chained block.
inline ArcCycle some_simple_closed_curve(const PointSet& M, double epsilon,
                                         const TolerancePolicy& tol = {}) {
  if (!(epsilon > 0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  const ChainPartition partition = chained_components(M, 2.0 * epsilon);
  ArcCycle c = outer_curve(partition.blocks.front(), epsilon, tol);
  if (level_set_deviation(c, M, epsilon) > tol.dist_slack(epsilon)) {
    throw Error(ErrorCode::ToleranceFailure, "curve leaves the epsilon level set of M");
  }
  return c;
}

struct SeparationCheck {
  bool pass = false;
  std::vector<Side> sides_A;
  std::vector<Side> sides_B;
  double min_dist_A = 0.0;
  double min_dist_B = 0.0;
};

inline SeparationCheck verify_separation(const ArcCycle& curve, const PointSet& A,
                                         const PointSet& B, const TolerancePolicy& tol = {}) {
  SeparationCheck v;
  for (const Point& p : A) v.sides_A.push_back(point_in_cycle(p, curve, tol));
  for (const Point& p : B) v.sides_B.push_back(point_in_cycle(p, curve, tol));
  v.min_dist_A = curve_set_distance(curve, A);
  v.min_dist_B = curve_set_distance(curve, B);
  auto uniform = [](const std::vector<Side>& s) -> std::optional<Side> {
    for (const Side x : s) {
      if (x == Side::OnCurve || x != s.front()) return std::nullopt;
    }
    return s.front();
  };
  const auto a = uniform(v.sides_A);
  const auto b = uniform(v.sides_B);
  v.pass = a && b && *a != *b;
  return v;
}

}  // namespace jcurve
