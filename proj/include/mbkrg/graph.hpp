#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mbkrg/vertex_set.hpp"

namespace mbkrg {

using Edge = std::pair<int, int>;

/// Immutable simple connected undirected graph on vertices 0..n-1.
///
/// Construction validates the edge list: loops and out-of-range endpoints are
/// rejected, repeated edges are folded (and counted), and a disconnected
/// result is an error. Optional labels give vertices readable names.
class Graph {
 public:
  Graph(int n, std::span<const Edge> edges, std::vector<std::string> labels = {});

  int order() const { return n_; }
  std::size_t size() const { return edges_.size(); }

  /// Normalized edge list: each edge as (min, max), sorted, without repeats.
  const std::vector<Edge>& edges() const { return edges_; }

  VertexSet neighbors(int v) const { return adjacency_[static_cast<std::size_t>(v)]; }
  int degree(int v) const { return cardinality(neighbors(v)); }
  bool adjacent(int u, int v) const { return contains(neighbors(u), v); }
  VertexSet vertices() const { return full_set(n_); }

  bool has_labels() const { return !labels_.empty(); }
  const std::vector<std::string>& labels() const { return labels_; }
  /// Display name: the label when present, otherwise the decimal id.
  std::string label(int v) const;
  /// Vertex id carrying `name`, or -1.
  int find_label(const std::string& name) const;

  /// Number of repeated edges folded away during construction.
  std::size_t duplicate_edges() const { return duplicates_; }

  friend bool operator==(const Graph& a, const Graph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_ && a.labels_ == b.labels_;
  }

 private:
  int n_;
  std::vector<Edge> edges_;
  std::vector<VertexSet> adjacency_;
  std::vector<std::string> labels_;
  std::size_t duplicates_ = 0;
};

Graph build_graph(int n, std::span<const Edge> edges, std::vector<std::string> labels = {});

/// Dense all-pairs hop counts with the diameter cached.
class DistanceMatrix {
 public:
  DistanceMatrix(int n, std::vector<int> dist);

  int order() const { return n_; }
  int diameter() const { return diameter_; }
  int at(int u, int v) const {
    return dist_[static_cast<std::size_t>(u) * static_cast<std::size_t>(n_) +
                 static_cast<std::size_t>(v)];
  }

 private:
  int n_;
  int diameter_ = 0;
  std::vector<int> dist_;
};

DistanceMatrix all_pairs_distances(const Graph& g);

/// Throws BadParameters unless k >= 1.
void require_positive_k(int k);

/// min(d(u, v), k + 1).
int truncated_distance(const DistanceMatrix& dm, int k, int u, int v);

enum class TwinKind { Singleton, Clique, Independent };

struct TwinClass {
  std::vector<int> members;
  VertexSet mask = 0;
  TwinKind kind = TwinKind::Singleton;

  int size() const { return static_cast<int>(members.size()); }
};

/// Classes of the relation N(u) - {w} = N(w) - {u}, ordered by least member.
struct TwinPartition {
  std::vector<TwinClass> classes;
  std::vector<int> class_of;

  /// Sum over classes of (|class| - 1): every resolving set meets each class
  /// in all but at most one vertex.
  int resolving_lower_bound() const;
};

TwinPartition twin_partition(const Graph& g);

}  // namespace mbkrg
