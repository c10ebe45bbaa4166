#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "mbkrg/error.hpp"
#include "mbkrg/families.hpp"
#include "mbkrg/resolving.hpp"

using namespace mbkrg;

namespace {

struct Fixture {
  Graph g;
  DistanceMatrix dm;
  explicit Fixture(const FamilySpec& spec)
      : g(gen_family(spec).graph), dm(all_pairs_distances(g)) {}
  explicit Fixture(Graph graph) : g(std::move(graph)), dm(all_pairs_distances(g)) {}
  int id(const std::string& name) const {
    const int v = g.find_label(name);
    REQUIRE(v >= 0);
    return v;
  }
};

int trunc(const DistanceMatrix& dm, int k, int u, int v) { return std::min(dm.at(u, v), k + 1); }

// Resolving by direct comparison of full code vectors.
bool resolves_directly(const DistanceMatrix& dm, int k, VertexSet s) {
  const int n = dm.order();
  std::set<std::vector<int>> codes;
  for (int v = 0; v < n; ++v) {
    std::vector<int> code;
    for (int w = 0; w < n; ++w) {
      if ((s >> w) & 1U) code.push_back(trunc(dm, k, v, w));
    }
    codes.insert(code);
  }
  return static_cast<int>(codes.size()) == n;
}

// Smallest resolving subset, lexicographically least among equal sizes.
std::pair<int, std::vector<int>> dimension_directly(const DistanceMatrix& dm, int k) {
  const int n = dm.order();
  for (int size = 0; size <= n; ++size) {
    std::vector<int> pick(static_cast<std::size_t>(size));
    for (int i = 0; i < size; ++i) pick[static_cast<std::size_t>(i)] = i;
    while (true) {
      VertexSet s = 0;
      for (int v : pick) s |= VertexSet{1} << v;
      if (resolves_directly(dm, k, s)) return {size, pick};
      int i = size - 1;
      while (i >= 0 && pick[static_cast<std::size_t>(i)] == n - size + i) --i;
      if (i < 0) break;
      ++pick[static_cast<std::size_t>(i)];
      for (int j = i + 1; j < size; ++j) {
        pick[static_cast<std::size_t>(j)] = pick[static_cast<std::size_t>(j - 1)] + 1;
      }
    }
  }
  return {n, {}};
}

ErrorCode error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::ParseError;
}

VertexSet set_of(std::initializer_list<int> vs) {
  VertexSet s = 0;
  for (int v : vs) s |= VertexSet{1} << v;
  return s;
}

}  // namespace

TEST_CASE("code vectors") {
  const Fixture c4({"cycle", {4}});
  const std::vector<int> s{0, 1};
  CHECK(code_vector(c4.dm, 1, s, 2) == std::vector<int>{2, 1});
  CHECK(code_vector(c4.dm, 1, s, 1) == std::vector<int>{1, 0});

  const Fixture p4({"path", {4}});
  const std::vector<int> first{0};
  CHECK(code_vector(p4.dm, 1, first, 2) == std::vector<int>{2});
  CHECK(code_vector(p4.dm, 1, first, 3) == std::vector<int>{2});
  CHECK(error_of([&] { code_vector(p4.dm, 1, std::vector<int>{}, 0); }) ==
        ErrorCode::EmptyLandmarkSet);
}

TEST_CASE("resolving sets from the worked examples") {
  const Fixture c4({"cycle", {4}});
  for (int k = 1; k <= 3; ++k) {
    // One vertex from each antipodal pair resolves; an antipodal pair does not.
    CHECK(is_resolving(c4.dm, k, set_of({0, 1})).resolving);
    CHECK_FALSE(is_resolving(c4.dm, k, set_of({0, 2})).resolving);
    CHECK(is_resolving(c4.dm, k, full_set(4)).resolving);
  }

  const Fixture d({"thm_d", {}});
  const auto verdict =
      is_resolving(d.dm, 1, set_of({d.id("l1"), d.id("l2"), d.id("l3")}));
  CHECK_FALSE(verdict.resolving);
  REQUIRE(verdict.witness);
  const std::set<int> primes{d.id("l1'"), d.id("l2'"), d.id("l3'")};
  CHECK(primes.count(verdict.witness->first) == 1);
  CHECK(primes.count(verdict.witness->second) == 1);
}

TEST_CASE("pair resolver sets") {
  const Fixture d({"thm_d", {}});
  CHECK(pair_resolver_set(d.dm, 1, d.id("l1'"), d.id("l2'")) ==
        set_of({d.id("v1"), d.id("l1'"), d.id("v2"), d.id("l2'")}));
  CHECK(pair_resolver_set(d.dm, 1, d.id("l1'"), d.id("l3'")) ==
        set_of({d.id("v1"), d.id("l1'"), d.id("v3"), d.id("l3'")}));
  CHECK(error_of([&] { pair_resolver_set(d.dm, 1, 2, 2); }) == ErrorCode::SameVertex);

  const Fixture f({"fig1", {2}});
  for (int i : {1, 2}) {
    const std::string l = "l" + std::to_string(i) + "'";
    const std::string s = "s" + std::to_string(i) + "'";
    const std::string x = "x" + std::to_string(i);
    CHECK(pair_resolver_set(f.dm, 1, f.id(l), f.id(s)) == set_of({f.id(l), f.id(s), f.id(x)}));
    CHECK(pair_resolver_set(f.dm, 2, f.id(l), f.id(s)) ==
          set_of({f.id(l), f.id(s), f.id(x), f.id("y")}));
    const VertexSet r3 = set_of({f.id(l), f.id(s), f.id(x), f.id("y"), f.id("z")});
    for (int k = 3; k <= 5; ++k) CHECK(is_subset(r3, pair_resolver_set(f.dm, k, f.id(l), f.id(s))));
  }
}

TEST_CASE("metric dimension of the worked examples") {
  const Fixture d({"thm_d", {}});
  CHECK(metric_dimension_k(d.dm, 1).dimension == 5);
  for (int n = 2; n <= 7; ++n) {
    const Fixture kn({"complete", {n}});
    CHECK(metric_dimension_k(kn.dm, 1).dimension == n - 1);
    CHECK(metric_dimension_k(kn.dm, 3).dimension == n - 1);
  }
  const Fixture pet({"petersen", {}});
  for (int k = 1; k <= 3; ++k) {
    const auto oracle = dimension_directly(pet.dm, k);
    CHECK(oracle.first == 3);
    const MetricDimension md = metric_dimension_k(pet.dm, k);
    CHECK(md.dimension == 3);
    CHECK(md.basis == oracle.second);
  }
  const Fixture big({"cycle", {40}});
  CHECK(error_of([&] { metric_dimension_k(big.dm, 1); }) == ErrorCode::SizeCapExceeded);
}

TEST_CASE("pair systems from the worked examples") {
  const Fixture c4({"cycle", {4}});
  PairSystem cyc;
  cyc.pairs = {{0, 2}, {1, 3}};
  for (int k = 1; k <= 3; ++k) {
    CHECK(check_pair_system(c4.dm, k, cyc).classification == PairClassification::Pairing);
  }

  const Fixture a({"thm_a", {3}});
  PairSystem pa;
  pa.pairs = {{a.id("l2"), a.id("l3")}, {a.id("s1"), a.id("l1")}};
  for (int k = 1; k <= 3; ++k) {
    CHECK(check_pair_system(a.dm, k, pa).classification == PairClassification::Pairing);
  }

  for (int alpha : {4, 5}) {
    const Fixture b({"thm_b", {alpha}});
    PairSystem pb;
    pb.pairs = {{b.id("l" + std::to_string(alpha)), b.id("l" + std::to_string(alpha - 1))}};
    for (int i = 1; i <= alpha - 3; ++i) {
      pb.pairs.emplace_back(b.id("s" + std::to_string(i)), b.id("l" + std::to_string(i)));
    }
    const int witness = b.id("l" + std::to_string(alpha - 2));
    for (int k = 1; k <= 3; ++k) {
      const PairCheck pc = check_pair_system(b.dm, k, pb);
      CHECK(pc.classification == PairClassification::QuasiPairing);
      CHECK(std::find(pc.witnesses.begin(), pc.witnesses.end(), witness) != pc.witnesses.end());
      CHECK(std::is_sorted(pc.witnesses.begin(), pc.witnesses.end()));
    }
  }
}

TEST_CASE("pair system errors") {
  const Fixture c6({"cycle", {6}});
  PairSystem overlap;
  overlap.pairs = {{0, 1}, {1, 2}};
  CHECK(error_of([&] { check_pair_system(c6.dm, 1, overlap); }) == ErrorCode::PairsOverlap);
  PairSystem self;
  self.pairs = {{3, 3}};
  CHECK(error_of([&] { check_pair_system(c6.dm, 1, self); }) == ErrorCode::PairsOverlap);
  PairSystem outside;
  outside.pairs = {{0, 9}};
  CHECK(error_of([&] { check_pair_system(c6.dm, 1, outside); }) == ErrorCode::VertexOutOfRange);

  const Fixture p({"path", {44}});
  PairSystem many;
  for (int i = 0; i < 21; ++i) many.pairs.emplace_back(2 * i, 2 * i + 1);
  CHECK(error_of([&] { check_pair_system(p.dm, 1, many); }) == ErrorCode::AlphaCapExceeded);
}

TEST_CASE("cycle gap conditions") {
  const GapProfile c5 = GapProfile::from_landmarks(5, {0, 2});
  CHECK(c5.gaps == std::vector<int>{1, 2});
  CHECK(cycle_gap_check(c5, 1));
  const Fixture cyc5({"cycle", {5}});
  CHECK(is_resolving(cyc5.dm, 1, set_of({0, 2})).resolving);

  const GapProfile c9 = GapProfile::from_landmarks(9, {0});
  CHECK(c9.gaps == std::vector<int>{8});
  CHECK_FALSE(cycle_gap_check(c9, 1));

  const GapProfile c7 = GapProfile::from_landmarks(7, {0, 4});
  CHECK(c7.gaps == std::vector<int>{3, 2});
  CHECK_FALSE(cycle_gap_check(c7, 1));

  CHECK(error_of([] { cycle_gap_check(GapProfile::from_landmarks(4, {0}), 1); }) ==
        ErrorCode::CycleTooSmall);
}

TEST_CASE("gap profiles account for every vertex") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 300; ++trial) {
    const int n = 3 + trial % 13;
    std::vector<int> s;
    for (int v = 0; v < n; ++v) {
      if (rng() % 3 == 0) s.push_back(v);
    }
    if (s.empty()) s.push_back(static_cast<int>(rng() % static_cast<unsigned>(n)));
    const GapProfile gp = GapProfile::from_landmarks(n, s);
    int total = static_cast<int>(gp.landmarks.size());
    for (int g : gp.gaps) total += g;
    CHECK(total == n);
    CHECK(gp.gaps.size() == gp.landmarks.size());
  }
}

TEST_CASE("gap conditions are sufficient on cycles") {
  std::mt19937_64 rng(5);
  int fired = 0;
  for (int trial = 0; trial < 2000; ++trial) {
    const int k = 1 + trial % 3;
    const int n = 2 * k + 3 + static_cast<int>(rng() % static_cast<unsigned>(15 - 2 * k - 2));
    std::vector<int> s;
    for (int v = 0; v < n; ++v) {
      if (rng() % 3 == 0) s.push_back(v);
    }
    if (s.empty()) continue;
    if (!cycle_gap_check(GapProfile::from_landmarks(n, s), k)) continue;
    ++fired;
    const Fixture c(gen_family({"cycle", {n}}).graph);
    CHECK(resolves_directly(c.dm, k, from_vertices(s)));
  }
  CHECK(fired > 50);
}

TEST_CASE("partition refinement agrees with code injectivity, n <= 7") {
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 1 + trial % 7;
    const Fixture f(random_connected_graph(n, 0.25 + 0.05 * (trial % 10), rng));
    for (int k = 1; k <= std::max(1, f.dm.diameter()); ++k) {
      const TruncatedMetric metric(f.dm, k);
      for (VertexSet s = 0; s <= full_set(n); ++s) {
        const bool direct = resolves_directly(f.dm, k, s);
        CHECK(is_resolving(f.dm, k, s).resolving == direct);
        CHECK(metric.resolves(s) == direct);
        ResolutionPartition part(metric);
        part.refine(s);
        CHECK(part.discrete() == direct);
      }
    }
  }
}

TEST_CASE("monotonicity, twin hitting and pair resolver characterization") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 80; ++trial) {
    const int n = 2 + trial % 7;
    const Fixture f(random_connected_graph(n, 0.4, rng));
    const TwinPartition twins = twin_partition(f.g);
    const int top = std::max(1, f.dm.diameter());
    for (int k = 1; k <= top; ++k) {
      const TruncatedMetric metric(f.dm, k);
      for (int x = 0; x < n; ++x) {
        for (int y = x + 1; y < n; ++y) {
          VertexSet want = 0;
          for (int z = 0; z < n; ++z) {
            if (trunc(f.dm, k, x, z) != trunc(f.dm, k, y, z)) want |= VertexSet{1} << z;
          }
          CHECK(pair_resolver_set(f.dm, k, x, y) == want);
        }
      }
      for (VertexSet s = 0; s <= full_set(n); ++s) {
        const bool res = metric.resolves(s);
        bool hits_all = true;
        for (int x = 0; x < n; ++x) {
          for (int y = x + 1; y < n; ++y) hits_all = hits_all && (metric.resolvers(x, y) & s);
        }
        CHECK(res == hits_all);
        if (!res) continue;
        for (int v = 0; v < n; ++v) CHECK(metric.resolves(s | (VertexSet{1} << v)));
        if (k < top) CHECK(is_resolving(f.dm, k + 1, s).resolving);
        for (const TwinClass& c : twins.classes) CHECK(cardinality(c.mask & ~s) <= 1);
      }
    }
  }
}

TEST_CASE("refinement never merges blocks") {
  const Fixture f({"petersen", {}});
  const TruncatedMetric metric(f.dm, 1);
  ResolutionPartition part(metric);
  // Only non-singleton blocks are kept, so the count can shrink; each new
  // block must sit inside an old one.
  for (int v : {0, 5, 7, 3}) {
    const std::vector<VertexSet> before = part.blocks();
    part.refine(v);
    for (VertexSet b : part.blocks()) {
      CHECK(std::any_of(before.begin(), before.end(),
                        [&](VertexSet old) { return (b & ~old) == 0; }));
    }
  }
}

TEST_CASE("dim_k agrees with exhaustive search and is monotone in k") {
  std::mt19937_64 rng(29);
  for (int trial = 0; trial < 60; ++trial) {
    const int n = 1 + trial % 8;
    const Fixture f(random_connected_graph(n, 0.35, rng));
    int prev = n;
    for (int k = 1; k <= std::max(1, f.dm.diameter()); ++k) {
      const auto oracle = dimension_directly(f.dm, k);
      const MetricDimension md = metric_dimension_k(f.dm, k);
      CHECK(md.dimension == oracle.first);
      CHECK(md.basis == oracle.second);
      CHECK(md.dimension <= prev);
      prev = md.dimension;
    }
  }
}

TEST_CASE("transversal cover test agrees with enumeration") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 150; ++trial) {
    const int n = 4 + trial % 6;
    const Fixture f(random_connected_graph(n, 0.35, rng));
    const int k = 1 + trial % 2;
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::shuffle(order.begin(), order.end(), rng);
    PairSystem ps;
    const int pairs = 1 + static_cast<int>(rng() % static_cast<unsigned>(n / 2));
    for (int i = 0; i < pairs; ++i) {
      ps.pairs.emplace_back(order[static_cast<std::size_t>(2 * i)],
                            order[static_cast<std::size_t>(2 * i + 1)]);
    }
    const TruncatedMetric metric(f.dm, k);
    bool every = true;
    for (unsigned choice = 0; choice < (1U << pairs); ++choice) {
      VertexSet z = 0;
      for (int i = 0; i < pairs; ++i) {
        const auto [u, w] = ps.pairs[static_cast<std::size_t>(i)];
        z |= VertexSet{1} << (((choice >> i) & 1U) ? w : u);
      }
      every = every && resolves_directly(f.dm, k, z);
    }
    CHECK(covers_all_transversals(metric, ps.pairs) == every);
    const PairCheck pc = check_pair_system(f.dm, k, ps);
    CHECK((pc.classification == PairClassification::Pairing) == every);
  }
}
