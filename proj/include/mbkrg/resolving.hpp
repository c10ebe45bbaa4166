#pragma once

#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mbkrg/graph.hpp"
#include "mbkrg/vertex_set.hpp"

namespace mbkrg {

/// Distance-k view of a graph, precomputed as level masks: level(u, d) holds
/// every vertex at truncated distance d from u, for d = 0..k+1.
///
/// This is the hot object of the library. Resolving checks are partition
/// refinements over these masks, so a check costs O(|S| * blocks * (k+2))
/// word operations.
class TruncatedMetric {
 public:
  TruncatedMetric(const DistanceMatrix& dm, int k);

  int order() const { return n_; }
  int k() const { return k_; }
  int distance(int u, int v) const { return distance_[index(u, v)]; }
  VertexSet level(int u, int d) const {
    return levels_[static_cast<std::size_t>(u) * static_cast<std::size_t>(k_ + 2) +
                   static_cast<std::size_t>(d)];
  }

  /// R_k{x, y}: vertices whose truncated distance tells x and y apart.
  VertexSet resolvers(int x, int y) const;

  /// True iff the truncated code map of `landmarks` is injective.
  bool resolves(VertexSet landmarks) const;

  /// Some pair with equal codes, or nothing when `landmarks` resolves.
  std::optional<std::pair<int, int>> unresolved_pair(VertexSet landmarks) const;

 private:
  std::size_t index(int u, int v) const {
    return static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) + static_cast<std::size_t>(v);
  }

  int n_;
  int k_;
  std::vector<int> distance_;
  std::vector<VertexSet> levels_;
};

/// Partition of V(G) into classes of equal truncated code. Refining with an
/// extra landmark never merges blocks; the partition is discrete exactly when
/// the landmarks form a distance-k resolving set.
///
/// Holds a pointer to the metric, which must outlive the partition.
class ResolutionPartition {
 public:
  explicit ResolutionPartition(const TruncatedMetric& metric);

  void refine(int landmark);
  void refine(VertexSet landmarks);

  bool discrete() const;
  int block_count() const { return static_cast<int>(blocks_.size()); }
  const std::vector<VertexSet>& blocks() const { return blocks_; }
  const std::vector<int>& landmarks() const { return landmarks_; }
  int k() const { return metric_->k(); }

  /// Two vertices sharing the first non-singleton block, if any.
  std::optional<std::pair<int, int>> unresolved_pair() const;

 private:
  const TruncatedMetric* metric_;
  std::vector<VertexSet> blocks_;
  std::vector<int> landmarks_;
};

/// (d_k(v, u_1), ..., d_k(v, u_a)) in landmark order.
std::vector<int> code_vector(const DistanceMatrix& dm, int k, std::span<const int> landmarks,
                             int v);

struct ResolvingVerdict {
  bool resolving = false;
  std::optional<std::pair<int, int>> witness;  // an unresolved pair when !resolving
};

ResolvingVerdict is_resolving(const DistanceMatrix& dm, int k, VertexSet landmarks);

VertexSet pair_resolver_set(const DistanceMatrix& dm, int k, int x, int y);

struct MetricDimension {
  int dimension = 0;
  std::vector<int> basis;  // lexicographically least minimum resolving set
};

inline constexpr int kDefaultDimensionCap = 32;

/// Exact dim_k(G) by cardinality-ordered subset search, starting at the twin
/// lower bound. Throws SizeCapExceeded above `max_vertices`.
MetricDimension metric_dimension_k(const DistanceMatrix& dm, int k,
                                   int max_vertices = kDefaultDimensionCap);

// ---------------------------------------------------------------------------
// Pair systems.

enum class PairKind { Pairing, QuasiPairing };

struct PairSystem {
  std::vector<std::pair<int, int>> pairs;
  PairKind kind = PairKind::Pairing;
  std::optional<int> witness;

  VertexSet support() const;
};

enum class PairClassification { Pairing, QuasiPairing, Neither };

struct PairCheck {
  PairClassification classification = PairClassification::Neither;
  /// Every vertex outside the pairs that completes all transversals, ascending.
  /// Populated only for quasi-pairings; the first entry is the reported witness.
  std::vector<int> witnesses;
  std::optional<int> witness() const {
    return witnesses.empty() ? std::nullopt : std::optional<int>(witnesses.front());
  }
};

inline constexpr int kMaxTransversalBits = 20;

/// Classifies `ps` by enumerating all 2^|pairs| transversals. The quasi-pairing
/// test reads the quantifiers as: one fixed outside vertex v completes every
/// transversal Z into a resolving Z + v. Throws PairsOverlap, AlphaCapExceeded.
PairCheck check_pair_system(const DistanceMatrix& dm, int k, const PairSystem& ps);

/// Every transversal of `pairs` plus `extra` resolves iff each pair {x, y} of
/// vertices has `extra` in R_k{x, y} or some pair contained in R_k{x, y}. This
/// is the closed-form test the certificate search relies on.
bool covers_all_transversals(const TruncatedMetric& metric,
                             std::span<const std::pair<int, int>> pairs, VertexSet extra = 0);

// ---------------------------------------------------------------------------
// Cycle gaps.

/// Gap sizes of a landmark set on the cycle u_0 u_1 ... u_{n-1} u_0. gaps[i]
/// counts the non-landmarks strictly between landmarks[i] and landmarks[i+1]
/// (cyclically).
struct GapProfile {
  int cycle_order = 0;
  std::vector<int> landmarks;
  std::vector<int> gaps;

  static GapProfile from_landmarks(int cycle_order, std::vector<int> landmarks);
};

/// The sufficient gap conditions for S to be distance-k resolving on C_n:
/// every gap has at most 2k+1 vertices with at most one reaching 2k+1, and a
/// gap of at least k+1 vertices has neighboring gaps of at most k.
/// Throws CycleTooSmall when n < 2k+3.
bool cycle_gap_check(const GapProfile& gp, int k);

}  // namespace mbkrg
