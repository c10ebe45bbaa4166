#pragma once

#include <bit>
#include <cstdint>
#include <span>
#include <vector>

namespace mbkrg {

/// A set of vertices of a graph with at most 64 vertices, one bit per id.
using VertexSet = std::uint64_t;

inline constexpr int kMaxVertices = 64;

constexpr VertexSet singleton(int v) { return VertexSet{1} << v; }

constexpr bool contains(VertexSet s, int v) { return (s >> v) & 1U; }

constexpr int cardinality(VertexSet s) { return std::popcount(s); }

constexpr VertexSet full_set(int n) {
  return n >= 64 ? ~VertexSet{0} : (VertexSet{1} << n) - 1;
}

constexpr bool is_subset(VertexSet a, VertexSet b) { return (a & ~b) == 0; }

/// Calls f(v) for each member in increasing order.
template <typename F>
constexpr void for_each_vertex(VertexSet s, F&& f) {
  while (s != 0) {
    const int v = std::countr_zero(s);
    s &= s - 1;
    f(v);
  }
}

inline std::vector<int> to_vector(VertexSet s) {
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(cardinality(s)));
  for_each_vertex(s, [&](int v) { out.push_back(v); });
  return out;
}

inline VertexSet from_vertices(std::span<const int> vs) {
  VertexSet s = 0;
  for (int v : vs) s |= singleton(v);
  return s;
}

}  // namespace mbkrg
