#include "mbkrg/graph.hpp"

#include <algorithm>
#include <queue>

#include "mbkrg/error.hpp"

namespace mbkrg {

Graph::Graph(int n, std::span<const Edge> edges, std::vector<std::string> labels)
    : n_(n), labels_(std::move(labels)) {
  if (n < 1) throw Error(ErrorCode::BadParameters, "graph needs at least one vertex");
  if (n > kMaxVertices) {
    throw Error(ErrorCode::TooManyVertices,
                "order " + std::to_string(n) + " exceeds " + std::to_string(kMaxVertices));
  }
  if (!labels_.empty() && labels_.size() != static_cast<std::size_t>(n)) {
    throw Error(ErrorCode::BadParameters, "label count does not match vertex count");
  }

  adjacency_.assign(static_cast<std::size_t>(n), 0);
  for (auto [u, v] : edges) {
    if (u < 0 || u >= n || v < 0 || v >= n) {
      throw Error(ErrorCode::VertexOutOfRange,
                  "edge " + std::to_string(u) + "-" + std::to_string(v));
    }
    if (u == v) throw Error(ErrorCode::LoopEdge, "loop at vertex " + std::to_string(u));
    if (contains(adjacency_[static_cast<std::size_t>(u)], v)) {
      ++duplicates_;
      continue;
    }
    adjacency_[static_cast<std::size_t>(u)] |= singleton(v);
    adjacency_[static_cast<std::size_t>(v)] |= singleton(u);
    edges_.emplace_back(std::min(u, v), std::max(u, v));
  }
  std::sort(edges_.begin(), edges_.end());

  // Connectivity by frontier expansion over the masks.
  VertexSet seen = singleton(0);
  VertexSet frontier = seen;
  while (frontier != 0) {
    VertexSet next = 0;
    for_each_vertex(frontier, [&](int v) { next |= adjacency_[static_cast<std::size_t>(v)]; });
    frontier = next & ~seen;
    seen |= next;
  }
  if (seen != full_set(n)) {
    throw Error(ErrorCode::Disconnected,
                std::to_string(n - cardinality(seen)) + " vertices unreachable from vertex 0");
  }
}

std::string Graph::label(int v) const {
  return labels_.empty() ? std::to_string(v) : labels_[static_cast<std::size_t>(v)];
}

int Graph::find_label(const std::string& name) const {
  auto it = std::find(labels_.begin(), labels_.end(), name);
  return it == labels_.end() ? -1 : static_cast<int>(it - labels_.begin());
}

Graph build_graph(int n, std::span<const Edge> edges, std::vector<std::string> labels) {
  return Graph(n, edges, std::move(labels));
}

DistanceMatrix::DistanceMatrix(int n, std::vector<int> dist) : n_(n), dist_(std::move(dist)) {
  diameter_ = dist_.empty() ? 0 : *std::max_element(dist_.begin(), dist_.end());
}

DistanceMatrix all_pairs_distances(const Graph& g) {
  const int n = g.order();
  std::vector<int> dist(static_cast<std::size_t>(n) * static_cast<std::size_t>(n), -1);
  std::queue<int> queue;
  for (int source = 0; source < n; ++source) {
    int* row = dist.data() + static_cast<std::size_t>(source) * static_cast<std::size_t>(n);
    row[source] = 0;
    queue.push(source);
    while (!queue.empty()) {
      const int u = queue.front();
      queue.pop();
      for_each_vertex(g.neighbors(u), [&](int w) {
        if (row[w] < 0) {
          row[w] = row[u] + 1;
          queue.push(w);
        }
      });
    }
  }
  return DistanceMatrix(n, std::move(dist));
}

void require_positive_k(int k) {
  if (k < 1) throw Error(ErrorCode::BadParameters, "k must be a positive integer");
}

int truncated_distance(const DistanceMatrix& dm, int k, int u, int v) {
  require_positive_k(k);
  return std::min(dm.at(u, v), k + 1);
}

int TwinPartition::resolving_lower_bound() const {
  int bound = 0;
  for (const auto& c : classes) bound += c.size() - 1;
  return bound;
}

TwinPartition twin_partition(const Graph& g) {
  const int n = g.order();
  TwinPartition tp;
  tp.class_of.assign(static_cast<std::size_t>(n), -1);
  for (int u = 0; u < n; ++u) {
    if (tp.class_of[static_cast<std::size_t>(u)] >= 0) continue;
    TwinClass cls;
    cls.members.push_back(u);
    cls.mask = singleton(u);
    for (int w = u + 1; w < n; ++w) {
      if (tp.class_of[static_cast<std::size_t>(w)] >= 0) continue;
      if ((g.neighbors(u) & ~singleton(w)) == (g.neighbors(w) & ~singleton(u))) {
        cls.members.push_back(w);
        cls.mask |= singleton(w);
      }
    }
    if (cls.members.size() > 1) {
      cls.kind = g.adjacent(cls.members[0], cls.members[1]) ? TwinKind::Clique
                                                            : TwinKind::Independent;
    }
    const int id = static_cast<int>(tp.classes.size());
    for (int m : cls.members) tp.class_of[static_cast<std::size_t>(m)] = id;
    tp.classes.push_back(std::move(cls));
  }
  return tp;
}

}  // namespace mbkrg
