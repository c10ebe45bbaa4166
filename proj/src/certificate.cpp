#include <algorithm>

#include "mbkrg/game.hpp"

namespace mbkrg {

std::string to_string(CertificateKind kind) {
  switch (kind) {
    case CertificateKind::ForcedB: return "forcedB";
    case CertificateKind::MCertified: return "Mcertified";
    case CertificateKind::MOrN: return "MorN";
  }
  return "?";
}

bool consistent(const Certificate& cert, Symbol symbol) {
  switch (cert.kind) {
    case CertificateKind::ForcedB: return symbol == Symbol::B;
    case CertificateKind::MCertified: return symbol == Symbol::M;
    case CertificateKind::MOrN: return symbol != Symbol::B;
  }
  return false;
}

namespace {

// Searches for disjoint pairs such that every vertex pair {x, y} either has a
// resolver in `extra` or has some chosen pair inside R_k{x, y}. Branches on the
// uncovered constraint with the fewest free resolvers.
class PairCoverSearch {
 public:
  PairCoverSearch(const TruncatedMetric& metric, std::uint64_t budget) : budget_(budget) {
    const int n = metric.order();
    for (int x = 0; x < n; ++x) {
      for (int y = x + 1; y < n; ++y) constraints_.push_back(metric.resolvers(x, y));
    }
  }

  std::optional<std::vector<std::pair<int, int>>> find(VertexSet extra) {
    chosen_.clear();
    std::vector<VertexSet> open;
    for (VertexSet r : constraints_) {
      if ((r & extra) == 0) open.push_back(r);
    }
    if (search(open, extra)) return chosen_;
    return std::nullopt;
  }

  bool exhausted() const { return budget_ == 0; }

 private:
  bool search(const std::vector<VertexSet>& open, VertexSet used) {
    if (open.empty()) return true;
    if (budget_ == 0) return false;
    --budget_;

    std::size_t pick = 0;
    int fewest = 65;
    for (std::size_t i = 0; i < open.size(); ++i) {
      const int free = cardinality(open[i] & ~used);
      if (free < fewest) {
        fewest = free;
        pick = i;
      }
    }
    if (fewest < 2) return false;

    const std::vector<int> options = to_vector(open[pick] & ~used);
    for (std::size_t i = 0; i < options.size(); ++i) {
      for (std::size_t j = i + 1; j < options.size(); ++j) {
        const VertexSet pair = singleton(options[i]) | singleton(options[j]);
        std::vector<VertexSet> rest;
        rest.reserve(open.size());
        for (VertexSet r : open) {
          if (!is_subset(pair, r)) rest.push_back(r);
        }
        chosen_.emplace_back(options[i], options[j]);
        if (search(rest, used | pair)) return true;
        chosen_.pop_back();
        if (budget_ == 0) return false;
      }
    }
    return false;
  }

  std::uint64_t budget_;
  std::vector<VertexSet> constraints_;
  std::vector<std::pair<int, int>> chosen_;
};

// The definition of a quasi-pairing asks that no transversal resolves on its
// own; a cover completed by a witness does not imply that.
bool every_transversal_fails(const TruncatedMetric& metric,
                             const std::vector<std::pair<int, int>>& pairs) {
  if (pairs.size() > static_cast<std::size_t>(kMaxTransversalBits)) return false;
  for (std::uint32_t choice = 0; choice < (std::uint32_t{1} << pairs.size()); ++choice) {
    VertexSet z = 0;
    for (std::size_t i = 0; i < pairs.size(); ++i) {
      z |= singleton(((choice >> i) & 1U) ? pairs[i].second : pairs[i].first);
    }
    if (metric.resolves(z)) return false;
  }
  return true;
}

}  // namespace

std::optional<Certificate> certificate_fast_path(const Graph& g, const DistanceMatrix& dm, int k,
                                                 std::uint64_t search_budget) {
  const int n = g.order();
  const TwinPartition tp = twin_partition(g);
  int triples = 0;
  for (const TwinClass& cls : tp.classes) {
    if (cls.size() >= 4) {
      return Certificate{CertificateKind::ForcedB,
                         "twin class of size " + std::to_string(cls.size()), {}, {}};
    }
    if (cls.size() == 3) ++triples;
  }
  if (n >= 4 && triples >= 2) {
    return Certificate{CertificateKind::ForcedB, "two twin classes of size 3", {}, {}};
  }

  const int dim = metric_dimension_k(dm, k, kHardVertexCap).dimension;
  if (dim >= (n + 1) / 2 + 1) {
    return Certificate{CertificateKind::ForcedB,
                       "dim_k = " + std::to_string(dim) + " exceeds ceil(n/2)", {}, {}};
  }

  const TruncatedMetric metric(dm, k);
  PairCoverSearch pairing(metric, search_budget);
  if (auto pairs = pairing.find(0)) {
    return Certificate{CertificateKind::MCertified, "pairing distance-k resolving set",
                       std::move(*pairs), {}};
  }
  for (int v = 0; v < n; ++v) {
    PairCoverSearch quasi(metric, search_budget);
    auto pairs = quasi.find(singleton(v));
    if (pairs && every_transversal_fails(metric, *pairs)) {
      return Certificate{CertificateKind::MOrN, "quasi-pairing completed by " + g.label(v),
                         std::move(*pairs), v};
    }
  }
  return std::nullopt;
}

}  // namespace mbkrg
