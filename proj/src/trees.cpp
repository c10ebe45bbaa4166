#include <algorithm>
#include <functional>
#include <set>
#include <string>

#include "mbkrg/error.hpp"
#include "mbkrg/families.hpp"

namespace mbkrg {

TreeProfile classify_tree(const Graph& g) {
  const int n = g.order();
  if (g.size() != static_cast<std::size_t>(n - 1)) {
    throw Error(ErrorCode::NotATree, "connected graph with " + std::to_string(g.size()) +
                                         " edges on " + std::to_string(n) + " vertices");
  }
  const DistanceMatrix dm = all_pairs_distances(g);
  TreeProfile tp;
  tp.terminal_degree.assign(static_cast<std::size_t>(n), 0);

  std::vector<int> majors;
  for (int v = 0; v < n; ++v) {
    if (g.degree(v) == 1) tp.leaves.push_back(v);
    if (g.degree(v) == 2) tp.has_degree_two_vertex = true;
    if (g.degree(v) >= 3) majors.push_back(v);
  }
  tp.is_path = majors.empty();

  // A leaf is terminal for the unique strictly closest major vertex.
  for (int leaf : tp.leaves) {
    int best = -1;
    bool unique = false;
    for (int m : majors) {
      if (best < 0 || dm.at(leaf, m) < dm.at(leaf, best)) {
        best = m;
        unique = true;
      } else if (dm.at(leaf, m) == dm.at(leaf, best)) {
        unique = false;
      }
    }
    if (best >= 0 && unique) ++tp.terminal_degree[static_cast<std::size_t>(best)];
  }

  for (int m : majors) {
    const int ter = tp.terminal_degree[static_cast<std::size_t>(m)];
    switch (ter) {
      case 0: tp.has_terminal_degree_zero_major = true; break;
      case 1: tp.m1.push_back(m); break;
      case 2: tp.m2.push_back(m); break;
      case 3: tp.m3.push_back(m); break;
      default: tp.m4.push_back(m); break;
    }
  }
  return tp;
}

Symbol predict_tree_outcome(const TreeProfile& tp, int k) {
  require_positive_k(k);
  if (!tp.eligible()) {
    throw Error(ErrorCode::HypothesesViolated,
                tp.is_path ? "tree is a path"
                           : "tree has a degree-two vertex or a major vertex of terminal degree 0");
  }
  const auto m2 = tp.m2.size();
  const auto m3 = tp.m3.size();
  const auto m4 = tp.m4.size();
  if (m4 >= 1 || m3 >= 2) return Symbol::B;
  if (m3 == 1) {
    if (k >= 2) return Symbol::N;
    return m2 >= 2 ? Symbol::B : Symbol::N;
  }
  if (k >= 2 && m2 >= 1) return Symbol::M;
  if (k == 1) {
    if (m2 >= 4) return Symbol::B;
    if (m2 == 3) return Symbol::N;
    if (m2 == 2) return Symbol::M;
  }
  throw Error(ErrorCode::NotCovered, "tree profile outside the case table");
}

namespace {

using Adjacency = std::vector<std::vector<int>>;

std::string encode(const Adjacency& adj, int v, int parent) {
  std::vector<std::string> parts;
  for (int w : adj[static_cast<std::size_t>(v)]) {
    if (w != parent) parts.push_back(encode(adj, w, v));
  }
  std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (const auto& p : parts) out += p;
  return out + ")";
}

std::vector<int> centers(const Adjacency& adj) {
  const int n = static_cast<int>(adj.size());
  if (n <= 2) {
    std::vector<int> all(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) all[static_cast<std::size_t>(i)] = i;
    return all;
  }
  std::vector<int> degree(static_cast<std::size_t>(n));
  std::vector<int> layer;
  for (int v = 0; v < n; ++v) {
    degree[static_cast<std::size_t>(v)] = static_cast<int>(adj[static_cast<std::size_t>(v)].size());
    if (degree[static_cast<std::size_t>(v)] == 1) layer.push_back(v);
  }
  int remaining = n;
  while (remaining > 2) {
    remaining -= static_cast<int>(layer.size());
    std::vector<int> next;
    for (int leaf : layer) {
      for (int w : adj[static_cast<std::size_t>(leaf)]) {
        if (--degree[static_cast<std::size_t>(w)] == 1) next.push_back(w);
      }
    }
    layer = std::move(next);
  }
  return layer;
}

// Parent array of the tree relabeled by preorder from a canonical root,
// children visited in order of their subtree encodings. Isomorphic trees get
// identical arrays.
std::vector<int> canonical_parents(const Adjacency& adj) {
  const std::vector<int> c = centers(adj);
  int root = c.front();
  if (c.size() == 2 && encode(adj, c[1], c[0]) < encode(adj, c[0], c[1])) root = c[1];

  std::vector<int> parents;
  std::function<void(int, int, int)> visit = [&](int v, int parent, int parent_label) {
    const int label = static_cast<int>(parents.size());
    parents.push_back(parent_label);
    std::vector<std::pair<std::string, int>> kids;
    for (int w : adj[static_cast<std::size_t>(v)]) {
      if (w != parent) kids.emplace_back(encode(adj, w, v), w);
    }
    std::sort(kids.begin(), kids.end());
    for (const auto& [code, w] : kids) visit(w, v, label);
  };
  visit(root, -1, -1);
  return parents;
}

Adjacency from_parents(const std::vector<int>& parents) {
  Adjacency adj(parents.size());
  for (std::size_t v = 1; v < parents.size(); ++v) {
    adj[v].push_back(parents[v]);
    adj[static_cast<std::size_t>(parents[v])].push_back(static_cast<int>(v));
  }
  return adj;
}

}  // namespace

std::vector<Graph> free_trees(int n) {
  if (n < 1) throw Error(ErrorCode::BadParameters, "tree order must be positive");
  std::set<std::vector<int>> level{{-1}};
  for (int order = 2; order <= n; ++order) {
    std::set<std::vector<int>> next;
    for (const auto& parents : level) {
      for (int attach = 0; attach < order - 1; ++attach) {
        std::vector<int> grown = parents;
        grown.push_back(attach);
        next.insert(canonical_parents(from_parents(grown)));
      }
    }
    level = std::move(next);
  }
  std::vector<Graph> out;
  out.reserve(level.size());
  for (const auto& parents : level) {
    std::vector<Edge> edges;
    for (std::size_t v = 1; v < parents.size(); ++v) edges.emplace_back(parents[v], static_cast<int>(v));
    out.emplace_back(n, edges);
  }
  return out;
}

Graph random_connected_graph(int n, double p, std::mt19937_64& rng) {
  if (n < 1 || n > kMaxVertices) throw Error(ErrorCode::BadParameters, "random graph order");
  std::bernoulli_distribution coin(p);
  while (true) {
    std::vector<Edge> edges;
    std::vector<VertexSet> adj(static_cast<std::size_t>(n), 0);
    for (int u = 0; u < n; ++u) {
      for (int v = u + 1; v < n; ++v) {
        if (!coin(rng)) continue;
        edges.emplace_back(u, v);
        adj[static_cast<std::size_t>(u)] |= singleton(v);
        adj[static_cast<std::size_t>(v)] |= singleton(u);
      }
    }
    VertexSet seen = singleton(0);
    VertexSet frontier = seen;
    while (frontier != 0) {
      VertexSet next = 0;
      for_each_vertex(frontier, [&](int v) { next |= adj[static_cast<std::size_t>(v)]; });
      frontier = next & ~seen;
      seen |= next;
    }
    if (seen == full_set(n)) return Graph(n, edges);
  }
}

}  // namespace mbkrg
