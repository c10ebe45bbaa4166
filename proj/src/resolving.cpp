#include "mbkrg/resolving.hpp"

#include <algorithm>
#include <array>

#include "mbkrg/error.hpp"

namespace mbkrg {

TruncatedMetric::TruncatedMetric(const DistanceMatrix& dm, int k) : n_(dm.order()), k_(k) {
  require_positive_k(k);
  distance_.resize(static_cast<std::size_t>(n_) * static_cast<std::size_t>(n_));
  levels_.assign(static_cast<std::size_t>(n_) * static_cast<std::size_t>(k_ + 2), 0);
  for (int u = 0; u < n_; ++u) {
    for (int v = 0; v < n_; ++v) {
      const int d = std::min(dm.at(u, v), k_ + 1);
      distance_[index(u, v)] = d;
      levels_[static_cast<std::size_t>(u) * static_cast<std::size_t>(k_ + 2) +
              static_cast<std::size_t>(d)] |= singleton(v);
    }
  }
}

VertexSet TruncatedMetric::resolvers(int x, int y) const {
  VertexSet out = 0;
  for (int z = 0; z < n_; ++z) {
    if (distance(x, z) != distance(y, z)) out |= singleton(z);
  }
  return out;
}

namespace {

// Splits every block of `in` by truncated distance to `u`, keeping only the
// non-singleton pieces. Returns the number of pieces written to `out`.
int split_blocks(const TruncatedMetric& metric, int u, const VertexSet* in, int count,
                 VertexSet* out) {
  int written = 0;
  const int top = metric.k() + 1;
  for (int i = 0; i < count; ++i) {
    VertexSet rest = in[i];
    for (int d = 0; d <= top && rest != 0; ++d) {
      const VertexSet part = rest & metric.level(u, d);
      rest &= ~part;
      if (cardinality(part) > 1) out[written++] = part;
    }
  }
  return written;
}

}  // namespace

bool TruncatedMetric::resolves(VertexSet landmarks) const {
  if (n_ == 1) return true;
  // At most n/2 non-singleton blocks can coexist.
  std::array<VertexSet, kMaxVertices / 2> a{};
  std::array<VertexSet, kMaxVertices / 2> b{};
  a[0] = full_set(n_);
  int count = 1;
  VertexSet* cur = a.data();
  VertexSet* next = b.data();
  while (landmarks != 0) {
    const int u = std::countr_zero(landmarks);
    landmarks &= landmarks - 1;
    count = split_blocks(*this, u, cur, count, next);
    if (count == 0) return true;
    std::swap(cur, next);
  }
  return false;
}

std::optional<std::pair<int, int>> TruncatedMetric::unresolved_pair(VertexSet landmarks) const {
  ResolutionPartition partition(*this);
  partition.refine(landmarks);
  return partition.unresolved_pair();
}

ResolutionPartition::ResolutionPartition(const TruncatedMetric& metric) : metric_(&metric) {
  if (metric.order() > 1) blocks_.push_back(full_set(metric.order()));
}

void ResolutionPartition::refine(int landmark) {
  landmarks_.push_back(landmark);
  std::vector<VertexSet> next(blocks_.size() * static_cast<std::size_t>(metric_->k() + 2));
  const int count = split_blocks(*metric_, landmark, blocks_.data(),
                                 static_cast<int>(blocks_.size()), next.data());
  next.resize(static_cast<std::size_t>(count));
  blocks_ = std::move(next);
}

void ResolutionPartition::refine(VertexSet landmarks) {
  for_each_vertex(landmarks, [&](int v) { refine(v); });
}

bool ResolutionPartition::discrete() const { return blocks_.empty(); }

std::optional<std::pair<int, int>> ResolutionPartition::unresolved_pair() const {
  if (blocks_.empty()) return std::nullopt;
  const VertexSet b = blocks_.front();
  const int x = std::countr_zero(b);
  const int y = std::countr_zero(b & (b - 1));
  return std::make_pair(x, y);
}

std::vector<int> code_vector(const DistanceMatrix& dm, int k, std::span<const int> landmarks,
                             int v) {
  require_positive_k(k);
  if (landmarks.empty()) throw Error(ErrorCode::EmptyLandmarkSet, "code of an empty landmark list");
  std::vector<int> code;
  code.reserve(landmarks.size());
  for (int u : landmarks) code.push_back(std::min(dm.at(v, u), k + 1));
  return code;
}

ResolvingVerdict is_resolving(const DistanceMatrix& dm, int k, VertexSet landmarks) {
  const TruncatedMetric metric(dm, k);
  ResolutionPartition partition(metric);
  partition.refine(landmarks);
  return {partition.discrete(), partition.unresolved_pair()};
}

VertexSet pair_resolver_set(const DistanceMatrix& dm, int k, int x, int y) {
  if (x == y) throw Error(ErrorCode::SameVertex, "resolver set of a vertex with itself");
  return TruncatedMetric(dm, k).resolvers(x, y);
}

// ---------------------------------------------------------------------------
// Metric dimension.

namespace {

class DimensionSearch {
 public:
  explicit DimensionSearch(const TruncatedMetric& metric)
      : metric_(metric), n_(metric.order()), resolvers_(static_cast<std::size_t>(n_ * n_)) {
    for (int x = 0; x < n_; ++x) {
      for (int y = x + 1; y < n_; ++y) {
        const VertexSet r = metric.resolvers(x, y);
        resolvers_[static_cast<std::size_t>(x * n_ + y)] = r;
        resolvers_[static_cast<std::size_t>(y * n_ + x)] = r;
      }
    }
  }

  // Twins are exactly the pairs resolved by nobody but themselves.
  int twin_lower_bound() const {
    int bound = 0;
    VertexSet seen = 0;
    for (int x = 0; x < n_; ++x) {
      if (contains(seen, x)) continue;
      int size = 1;
      for (int y = x + 1; y < n_; ++y) {
        if (resolver(x, y) == (singleton(x) | singleton(y))) {
          seen |= singleton(y);
          ++size;
        }
      }
      bound += size - 1;
    }
    return bound;
  }

  std::optional<std::vector<int>> find(int size) {
    chosen_.clear();
    std::vector<VertexSet> blocks;
    if (n_ > 1) blocks.push_back(full_set(n_));
    if (search(0, size, blocks)) return chosen_;
    return std::nullopt;
  }

 private:
  VertexSet resolver(int x, int y) const {
    return resolvers_[static_cast<std::size_t>(x * n_ + y)];
  }

  // False when some block cannot be fully split by `picks` landmarks drawn
  // from `candidates`: either a pair in it has no candidate resolver, or the
  // block outgrows the (k+2)^picks pieces the picks can produce.
  bool feasible(const std::vector<VertexSet>& blocks, VertexSet candidates, int picks) const {
    long long capacity = 1;
    for (int i = 0; i < picks && capacity < n_; ++i) capacity *= metric_.k() + 2;
    for (VertexSet b : blocks) {
      if (cardinality(b) > capacity) return false;
      const std::vector<int> members = to_vector(b);
      for (std::size_t i = 0; i < members.size(); ++i) {
        for (std::size_t j = i + 1; j < members.size(); ++j) {
          if ((resolver(members[i], members[j]) & candidates) == 0) return false;
        }
      }
    }
    return true;
  }

  bool search(int start, int remaining, const std::vector<VertexSet>& blocks) {
    if (blocks.empty()) return true;
    if (remaining == 0) return false;
    if (!feasible(blocks, full_set(n_) & ~full_set(start), remaining)) return false;
    std::vector<VertexSet> next(blocks.size() * static_cast<std::size_t>(metric_.k() + 2));
    for (int u = start; u <= n_ - remaining; ++u) {
      const int count =
          split_blocks(metric_, u, blocks.data(), static_cast<int>(blocks.size()), next.data());
      chosen_.push_back(u);
      if (search(u + 1, remaining - 1,
                 std::vector<VertexSet>(next.begin(), next.begin() + count))) {
        return true;
      }
      chosen_.pop_back();
    }
    return false;
  }

  const TruncatedMetric& metric_;
  int n_;
  std::vector<VertexSet> resolvers_;
  std::vector<int> chosen_;
};

}  // namespace

MetricDimension metric_dimension_k(const DistanceMatrix& dm, int k, int max_vertices) {
  require_positive_k(k);
  if (dm.order() > max_vertices) {
    throw Error(ErrorCode::SizeCapExceeded,
                "dimension search limited to " + std::to_string(max_vertices) + " vertices");
  }
  const TruncatedMetric metric(dm, k);
  DimensionSearch search(metric);
  for (int size = search.twin_lower_bound(); size <= dm.order(); ++size) {
    if (auto basis = search.find(size)) return {size, std::move(*basis)};
  }
  // V(G) always resolves, so the loop returns.
  return {dm.order(), to_vector(full_set(dm.order()))};
}

// ---------------------------------------------------------------------------
// Pair systems.

VertexSet PairSystem::support() const {
  VertexSet s = 0;
  for (auto [u, w] : pairs) s |= singleton(u) | singleton(w);
  return s;
}

namespace {

void validate_pairs(int n, const PairSystem& ps) {
  VertexSet used = 0;
  for (auto [u, w] : ps.pairs) {
    if (u < 0 || u >= n || w < 0 || w >= n) {
      throw Error(ErrorCode::VertexOutOfRange,
                  "pair " + std::to_string(u) + "-" + std::to_string(w));
    }
    if (u == w || contains(used, u) || contains(used, w)) {
      throw Error(ErrorCode::PairsOverlap,
                  "pair " + std::to_string(u) + "-" + std::to_string(w) + " reuses a vertex");
    }
    used |= singleton(u) | singleton(w);
  }
  if (ps.witness && contains(used, *ps.witness)) {
    throw Error(ErrorCode::PairsOverlap, "witness lies inside the pairs");
  }
  if (ps.pairs.size() > static_cast<std::size_t>(kMaxTransversalBits)) {
    throw Error(ErrorCode::AlphaCapExceeded,
                std::to_string(ps.pairs.size()) + " pairs exceed the transversal cap of " +
                    std::to_string(kMaxTransversalBits));
  }
}

}  // namespace

PairCheck check_pair_system(const DistanceMatrix& dm, int k, const PairSystem& ps) {
  validate_pairs(dm.order(), ps);
  const TruncatedMetric metric(dm, k);
  const std::size_t alpha = ps.pairs.size();
  const std::uint64_t transversal_count = std::uint64_t{1} << alpha;

  auto transversal = [&](std::uint64_t choice) {
    VertexSet z = 0;
    for (std::size_t i = 0; i < alpha; ++i) {
      z |= singleton((choice >> i) & 1U ? ps.pairs[i].second : ps.pairs[i].first);
    }
    return z;
  };

  bool all_resolve = true;
  bool none_resolve = true;
  for (std::uint64_t c = 0; c < transversal_count; ++c) {
    const bool ok = metric.resolves(transversal(c));
    all_resolve = all_resolve && ok;
    none_resolve = none_resolve && !ok;
  }

  PairCheck result;
  if (all_resolve) {
    result.classification = PairClassification::Pairing;
    return result;
  }
  if (!none_resolve) return result;

  const VertexSet outside = full_set(dm.order()) & ~ps.support();
  for_each_vertex(outside, [&](int v) {
    for (std::uint64_t c = 0; c < transversal_count; ++c) {
      if (!metric.resolves(transversal(c) | singleton(v))) return;
    }
    result.witnesses.push_back(v);
  });
  if (!result.witnesses.empty()) result.classification = PairClassification::QuasiPairing;
  return result;
}

bool covers_all_transversals(const TruncatedMetric& metric,
                             std::span<const std::pair<int, int>> pairs, VertexSet extra) {
  const int n = metric.order();
  for (int x = 0; x < n; ++x) {
    for (int y = x + 1; y < n; ++y) {
      const VertexSet r = metric.resolvers(x, y);
      if ((r & extra) != 0) continue;
      const bool covered = std::any_of(pairs.begin(), pairs.end(), [&](const auto& p) {
        return is_subset(singleton(p.first) | singleton(p.second), r);
      });
      if (!covered) return false;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Cycle gaps.

GapProfile GapProfile::from_landmarks(int cycle_order, std::vector<int> landmarks) {
  if (cycle_order < 3) throw Error(ErrorCode::BadParameters, "cycle needs at least 3 vertices");
  std::sort(landmarks.begin(), landmarks.end());
  landmarks.erase(std::unique(landmarks.begin(), landmarks.end()), landmarks.end());
  for (int v : landmarks) {
    if (v < 0 || v >= cycle_order) {
      throw Error(ErrorCode::VertexOutOfRange, "landmark " + std::to_string(v));
    }
  }
  GapProfile gp;
  gp.cycle_order = cycle_order;
  gp.landmarks = std::move(landmarks);
  const std::size_t m = gp.landmarks.size();
  for (std::size_t i = 0; i < m; ++i) {
    const int cur = gp.landmarks[i];
    const int next = gp.landmarks[(i + 1) % m];
    gp.gaps.push_back((next - cur - 1 + cycle_order) % cycle_order);
  }
  return gp;
}

bool cycle_gap_check(const GapProfile& gp, int k) {
  require_positive_k(k);
  if (gp.cycle_order < 2 * k + 3) {
    throw Error(ErrorCode::CycleTooSmall, "gap conditions need n >= 2k+3");
  }
  const std::size_t m = gp.gaps.size();
  if (m == 0) return false;

  int widest = 0;
  for (int g : gp.gaps) {
    if (g > 2 * k + 1) return false;
    if (g == 2 * k + 1) ++widest;
  }
  if (widest > 1) return false;

  for (std::size_t i = 0; i < m; ++i) {
    if (gp.gaps[i] < k + 1) continue;
    if (gp.gaps[(i + m - 1) % m] > k || gp.gaps[(i + 1) % m] > k) return false;
  }
  return true;
}

}  // namespace mbkrg
