#pragma once

#include <cstddef>
#include <limits>
#include <numeric>
#include <string>
#include <vector>

#include "jcurve/error.hpp"
#include "jcurve/geometry.hpp"

namespace jcurve {

struct ClosestPair {
  double distance = std::numeric_limits<double>::infinity();
  std::size_t a = 0;  // index into the first set
  std::size_t b = 0;  // index into the second set
};

// Exhaustive minimum over all pairs; ties resolve to the first pair in
// (a, b) index order.
inline ClosestPair closest_pair(const PointSet& A, const PointSet& B) {
  ClosestPair best;
  for (std::size_t i = 0; i < A.size(); ++i) {
    for (std::size_t j = 0; j < B.size(); ++j) {
      const double d = distance(A[i], B[j]);
      if (d < best.distance) best = {d, i, j};
    }
  }
  return best;
}

inline double set_distance(const PointSet& A, const PointSet& B) {
  return closest_pair(A, B).distance;
}

struct ChainPartition {
  double threshold = 0.0;
  std::vector<PointSet> blocks;        // ordered by smallest point
  std::vector<std::size_t> block_of;   // input index -> block index
};

namespace detail {

class DisjointSets {
 public:
  explicit DisjointSets(std::size_t n) : parent_(n) { std::iota(parent_.begin(), parent_.end(), 0); }

  std::size_t find(std::size_t x) {
    while (parent_[x] != x) {
      parent_[x] = parent_[parent_[x]];
      x = parent_[x];
    }
    return x;
  }

  void unite(std::size_t a, std::size_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (b < a) std::swap(a, b);
    parent_[b] = a;  // smallest index stays the root
  }

 private:
  std::vector<std::size_t> parent_;
};

}  // namespace detail

// Components of the graph joining points at distance strictly below delta.
// Comparison is exact: a pair at exactly delta is not joined.
inline ChainPartition chained_components(const PointSet& M, double delta) {
  if (!(delta > 0)) throw Error(ErrorCode::InvalidArgument, "chain threshold must be positive");
  const std::size_t n = M.size();
  detail::DisjointSets sets(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (distance(M[i], M[j]) < delta) sets.unite(i, j);
    }
  }
  ChainPartition out;
  out.threshold = delta;
  out.block_of.assign(n, 0);
  // M is sorted, so numbering roots by first appearance orders blocks by
  // their smallest point.
  std::vector<std::size_t> block_of_root(n, std::numeric_limits<std::size_t>::max());
  std::vector<std::vector<Point>> members;
  for (std::size_t i = 0; i < n; ++i) {
    const std::size_t root = sets.find(i);
    if (block_of_root[root] == std::numeric_limits<std::size_t>::max()) {
      block_of_root[root] = members.size();
      members.emplace_back();
    }
    out.block_of[i] = block_of_root[root];
    members[out.block_of[i]].push_back(M[i]);
  }
  out.blocks.reserve(members.size());
  for (auto& m : members) out.blocks.emplace_back(std::move(m));
  return out;
}

inline bool is_chained(const PointSet& A, double delta) {
  return chained_components(A, delta).blocks.size() == 1;
}

inline const char* const kViolationRho = "ρ(A,B) ≤ ε";
inline const char* const kViolationA = "A not 2ε-chained";
inline const char* const kViolationB = "B not 2(ρ(A,B)−ε)-chained";

// Preconditions of the separation construction, as data.
struct HypothesisReport {
  double epsilon = 0.0;
  double rho_AB = 0.0;
  bool rho_exceeds_epsilon = false;
  bool A_chained_at = false;  // threshold 2*epsilon
  bool B_chained_at = false;  // threshold 2*(rho_AB - epsilon)
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

inline HypothesisReport check_hypotheses(const PointSet& A, const PointSet& B, double epsilon) {
  if (!(epsilon > 0)) throw Error(ErrorCode::InvalidArgument, "epsilon must be positive");
  HypothesisReport r;
  r.epsilon = epsilon;
  r.rho_AB = set_distance(A, B);
  r.rho_exceeds_epsilon = r.rho_AB > epsilon;
  r.A_chained_at = is_chained(A, 2.0 * epsilon);
  if (r.rho_exceeds_epsilon) r.B_chained_at = is_chained(B, 2.0 * (r.rho_AB - epsilon));
  if (!r.rho_exceeds_epsilon) r.violations.emplace_back(kViolationRho);
  if (!r.A_chained_at) r.violations.emplace_back(kViolationA);
  if (r.rho_exceeds_epsilon && !r.B_chained_at) r.violations.emplace_back(kViolationB);
  return r;
}

class NotChainedError : public Error {
 public:
  explicit NotChainedError(ChainPartition partition)
      : Error(ErrorCode::NotChained,
              "set splits into " + std::to_string(partition.blocks.size()) +
                  " blocks at threshold " + std::to_string(partition.threshold)),
        partition_(std::move(partition)) {}

  const ChainPartition& partition() const { return partition_; }

 private:
  ChainPartition partition_;
};

class HypothesisViolationError : public Error {
 public:
  explicit HypothesisViolationError(HypothesisReport report)
      : Error(ErrorCode::HypothesisViolation, join(report.violations)),
        report_(std::move(report)) {}

  const HypothesisReport& report() const { return report_; }

 private:
  static std::string join(const std::vector<std::string>& items) {
    std::string s;
    for (const auto& v : items) {
      if (!s.empty()) s += "; ";
      s += v;
    }
    return s;
  }

  HypothesisReport report_;
};

}  // namespace jcurve
