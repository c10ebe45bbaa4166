#include "mbkrg/families.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "mbkrg/error.hpp"
#include "mbkrg/resolving.hpp"

namespace mbkrg {

namespace {

[[noreturn]] void bad(const FamilySpec& spec, const std::string& why) {
  throw Error(ErrorCode::BadParameters, spec.describe() + ": " + why);
}

int param(const FamilySpec& spec, std::size_t i, int minimum) {
  if (spec.params.size() <= i) bad(spec, "missing parameter");
  const int value = spec.params[i];
  if (value < minimum) bad(spec, "parameter must be at least " + std::to_string(minimum));
  return value;
}

void expect_params(const FamilySpec& spec, std::size_t count) {
  if (spec.params.size() != count) {
    bad(spec, "expects " + std::to_string(count) + " parameter(s)");
  }
}

std::string idx(const std::string& stem, int i, const std::string& primes = "") {
  return stem + std::to_string(i) + primes;
}

Permutation identity(int n) {
  Permutation p(static_cast<std::size_t>(n));
  std::iota(p.begin(), p.end(), 0);
  return p;
}

// Rotation and reflection of vertices 0..m-1 arranged on a cycle; vertices
// from m on stay fixed.
std::vector<Permutation> dihedral(int m, int n) {
  Permutation rot = identity(n);
  Permutation ref = identity(n);
  for (int i = 0; i < m; ++i) {
    rot[static_cast<std::size_t>(i)] = (i + 1) % m;
    ref[static_cast<std::size_t>(i)] = (m - i) % m;
  }
  return {rot, ref};
}

struct Builder {
  std::vector<Edge> edges;
  std::vector<std::string> labels;

  int add(std::string label) {
    labels.push_back(std::move(label));
    return static_cast<int>(labels.size()) - 1;
  }
  void join(int u, int v) { edges.emplace_back(u, v); }

  Graph build() { return Graph(static_cast<int>(labels.size()), edges, labels); }
};

Graph make_multipartite(const std::vector<int>& parts) {
  Builder b;
  std::vector<std::vector<int>> ids(parts.size());
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (int j = 1; j <= parts[i]; ++j) {
      ids[i].push_back(b.add("p" + std::to_string(i + 1) + "_" + std::to_string(j)));
    }
  }
  for (std::size_t i = 0; i < parts.size(); ++i) {
    for (std::size_t j = i + 1; j < parts.size(); ++j) {
      for (int u : ids[i]) {
        for (int v : ids[j]) b.join(u, v);
      }
    }
  }
  return b.build();
}

// Subdivided star: center, `arms` paths v - s_i - l_i, and `direct` leaves.
Graph make_spider(int alpha, int subdivided) {
  Builder b;
  const int v = b.add("v");
  for (int i = 1; i <= alpha; ++i) b.add(idx("l", i));
  for (int i = 1; i <= subdivided; ++i) {
    const int s = b.add(idx("s", i));
    b.join(v, s);
    b.join(s, i);
  }
  for (int i = subdivided + 1; i <= alpha; ++i) b.join(v, i);
  return b.build();
}

// Spine v_1..v_a with leaves l_i, l_i' on every spine vertex, and l_a'' on
// v_a when `third_leaf` is set.
Graph make_caterpillar(int alpha, bool third_leaf) {
  Builder b;
  for (int i = 1; i <= alpha; ++i) b.add(idx("v", i));
  for (int i = 1; i <= alpha; ++i) b.join(b.add(idx("l", i)), i - 1);
  for (int i = 1; i <= alpha; ++i) b.join(b.add(idx("l", i, "'")), i - 1);
  for (int i = 1; i < alpha; ++i) b.join(i - 1, i);
  if (third_leaf) b.join(b.add(idx("l", alpha, "''")), alpha - 1);
  return b.build();
}

Graph make_fig1(int alpha) {
  Builder b;
  std::vector<int> x(static_cast<std::size_t>(alpha));
  std::vector<int> v(static_cast<std::size_t>(alpha));
  for (int i = 1; i <= alpha; ++i) {
    const int vi = b.add(idx("v", i));
    const int li = b.add(idx("l", i));
    const int lp = b.add(idx("l", i, "'"));
    const int si = b.add(idx("s", i));
    const int sp = b.add(idx("s", i, "'"));
    const int xi = b.add(idx("x", i));
    for (int leaf : {li, lp, si, sp}) b.join(vi, leaf);
    b.join(si, xi);
    b.join(sp, xi);
    v[static_cast<std::size_t>(i - 1)] = vi;
    x[static_cast<std::size_t>(i - 1)] = xi;
  }
  const int y = b.add("y");
  const int z = b.add("z");
  for (int i = 0; i + 1 < alpha; ++i) {
    b.join(v[static_cast<std::size_t>(i)], v[static_cast<std::size_t>(i + 1)]);
  }
  for (int xi : x) b.join(xi, y);
  b.join(y, z);
  return b.build();
}

// Reverses a caterpillar-like layout where block i (0-based) of every layer
// maps to block (a-1-i).
Permutation spine_reversal(int n, int alpha, const std::vector<int>& layer_starts, int width) {
  Permutation p = identity(n);
  for (int start : layer_starts) {
    for (int i = 0; i < alpha; ++i) {
      for (int w = 0; w < width; ++w) {
        p[static_cast<std::size_t>(start + i * width + w)] = start + (alpha - 1 - i) * width + w;
      }
    }
  }
  return p;
}

std::vector<int> parse_parts(const FamilySpec& spec) {
  if (spec.params.size() < 2) bad(spec, "needs at least two parts");
  for (int a : spec.params) {
    if (a < 1) bad(spec, "parts must be non-empty");
  }
  return spec.params;
}

}  // namespace

std::string FamilySpec::describe() const {
  std::ostringstream out;
  out << family;
  for (int p : params) out << ' ' << p;
  return out.str();
}

std::vector<std::string> family_names() {
  return {"path",  "cycle", "complete", "star",  "multipartite", "wheel", "petersen",
          "thm_a", "thm_b", "thm_d",    "thm_e", "thm_f",        "fig1"};
}

FamilyGraph gen_family(const FamilySpec& spec) {
  const std::string& f = spec.family;
  if (f == "path") {
    expect_params(spec, 1);
    const int n = param(spec, 0, 1);
    Builder b;
    for (int i = 1; i <= n; ++i) b.add(idx("u", i));
    for (int i = 0; i + 1 < n; ++i) b.join(i, i + 1);
    Permutation flip = identity(n);
    std::reverse(flip.begin(), flip.end());
    return {b.build(), {flip}};
  }
  if (f == "cycle") {
    expect_params(spec, 1);
    const int n = param(spec, 0, 3);
    Builder b;
    for (int i = 1; i <= n; ++i) b.add(idx("u", i));
    for (int i = 0; i < n; ++i) b.join(i, (i + 1) % n);
    return {b.build(), dihedral(n, n)};
  }
  if (f == "complete") {
    expect_params(spec, 1);
    const int n = param(spec, 0, 1);
    Builder b;
    for (int i = 1; i <= n; ++i) b.add(idx("u", i));
    for (int i = 0; i < n; ++i) {
      for (int j = i + 1; j < n; ++j) b.join(i, j);
    }
    Graph g = b.build();
    auto gens = twin_swap_generators(g);
    return {std::move(g), std::move(gens)};
  }
  if (f == "star") {
    expect_params(spec, 1);
    const int beta = param(spec, 0, 1);
    Builder b;
    const int c = b.add("c");
    for (int i = 1; i <= beta; ++i) b.join(c, b.add(idx("l", i)));
    Graph g = b.build();
    auto gens = twin_swap_generators(g);
    return {std::move(g), std::move(gens)};
  }
  if (f == "multipartite") {
    Graph g = make_multipartite(parse_parts(spec));
    auto gens = twin_swap_generators(g);
    return {std::move(g), std::move(gens)};
  }
  if (f == "wheel") {
    expect_params(spec, 1);
    const int n = param(spec, 0, 3);
    Builder b;
    for (int i = 1; i <= n; ++i) b.add(idx("u", i));
    const int hub = b.add("v");
    for (int i = 0; i < n; ++i) {
      b.join(i, (i + 1) % n);
      b.join(i, hub);
    }
    return {b.build(), dihedral(n, n + 1)};
  }
  if (f == "petersen") {
    expect_params(spec, 0);
    Builder b;
    for (int i = 1; i <= 5; ++i) b.add(idx("o", i));
    for (int i = 1; i <= 5; ++i) b.add(idx("i", i));
    for (int i = 0; i < 5; ++i) {
      b.join(i, (i + 1) % 5);
      b.join(i, i + 5);
      b.join(i + 5, (i + 2) % 5 + 5);
    }
    Permutation rot = identity(10);
    Permutation ref = identity(10);
    for (int i = 0; i < 5; ++i) {
      rot[static_cast<std::size_t>(i)] = (i + 1) % 5;
      rot[static_cast<std::size_t>(i + 5)] = (i + 1) % 5 + 5;
      ref[static_cast<std::size_t>(i)] = (5 - i) % 5;
      ref[static_cast<std::size_t>(i + 5)] = (5 - i) % 5 + 5;
    }
    return {b.build(), {rot, ref}};
  }
  if (f == "thm_a" || f == "thm_b") {
    expect_params(spec, 1);
    const bool a = f == "thm_a";
    const int alpha = param(spec, 0, a ? 3 : 4);
    const int arms = alpha - (a ? 2 : 3);
    Graph g = make_spider(alpha, arms);
    auto gens = twin_swap_generators(g);
    if (arms >= 2) {
      // Rotate the subdivided arms: l_i -> l_{i+1}, s_i -> s_{i+1}.
      Permutation p = identity(g.order());
      for (int i = 0; i < arms; ++i) {
        p[static_cast<std::size_t>(1 + i)] = 1 + (i + 1) % arms;
        p[static_cast<std::size_t>(alpha + 1 + i)] = alpha + 1 + (i + 1) % arms;
      }
      gens.push_back(std::move(p));
    }
    return {std::move(g), std::move(gens)};
  }
  if (f == "thm_d") {
    expect_params(spec, 0);
    Graph g = make_caterpillar(3, false);
    auto gens = twin_swap_generators(g);
    gens.push_back(spine_reversal(g.order(), 3, {0, 3, 6}, 1));
    return {std::move(g), std::move(gens)};
  }
  if (f == "thm_e") {
    expect_params(spec, 1);
    Graph g = make_caterpillar(param(spec, 0, 3), true);
    auto gens = twin_swap_generators(g);
    return {std::move(g), std::move(gens)};
  }
  if (f == "thm_f") {
    expect_params(spec, 1);
    const int alpha = param(spec, 0, 4);
    Graph g = make_caterpillar(alpha, false);
    auto gens = twin_swap_generators(g);
    gens.push_back(spine_reversal(g.order(), alpha, {0, alpha, 2 * alpha}, 1));
    return {std::move(g), std::move(gens)};
  }
  if (f == "fig1") {
    expect_params(spec, 1);
    const int alpha = param(spec, 0, 2);
    Graph g = make_fig1(alpha);
    verify_fig1_structure(g, alpha);
    auto gens = twin_swap_generators(g);
    gens.push_back(spine_reversal(g.order(), alpha, {0}, 6));
    return {std::move(g), std::move(gens)};
  }
  throw Error(ErrorCode::BadParameters, "unknown family '" + f + "'");
}

void verify_fig1_structure(const Graph& g, int alpha) {
  const DistanceMatrix dm = all_pairs_distances(g);
  const TwinPartition tp = twin_partition(g);
  auto id = [&](const std::string& name) {
    const int v = g.find_label(name);
    if (v < 0) throw std::logic_error("fig1 graph lacks vertex " + name);
    return v;
  };
  auto fail = [](const std::string& what) { throw std::logic_error("fig1 structure: " + what); };

  std::vector<int> base;
  for (int i = 1; i <= alpha; ++i) {
    base.push_back(id(idx("l", i)));
    base.push_back(id(idx("s", i)));
  }
  const int y = id("y");
  const int z = id("z");
  const int top_k = std::max(3, dm.diameter());

  for (int i = 1; i <= alpha; ++i) {
    const int l = id(idx("l", i));
    const int lp = id(idx("l", i, "'"));
    const int s = id(idx("s", i));
    const int sp = id(idx("s", i, "'"));
    const int x = id(idx("x", i));
    auto same_class = [&](int a, int b) {
      return tp.class_of[static_cast<std::size_t>(a)] == tp.class_of[static_cast<std::size_t>(b)];
    };
    if (!same_class(l, lp) || !same_class(s, sp)) fail("missing twin pair in branch " + std::to_string(i));

    const VertexSet core = singleton(lp) | singleton(sp) | singleton(x);
    for (int k = 1; k <= top_k; ++k) {
      // Long spines let s' reach far s_j through y faster once k >= 4.
      if (k <= 3 && code_vector(dm, k, base, lp) != code_vector(dm, k, base, sp)) {
        fail("l'/s' codes differ against the l/s base at k=" + std::to_string(k));
      }
      const VertexSet r = pair_resolver_set(dm, k, lp, sp);
      if (k == 1 && r != core) fail("R_1{l', s'} mismatch");
      if (k == 2 && r != (core | singleton(y))) fail("R_2{l', s'} mismatch");
      if (k >= 3 && !is_subset(core | singleton(y) | singleton(z), r)) fail("R_k{l', s'} too small");
    }
  }
}

// ---------------------------------------------------------------------------
// Predictions.

bool Prediction::admits(Symbol s) const {
  return std::find(symbols.begin(), symbols.end(), s) != symbols.end();
}

namespace {

Symbol multipartite_outcome(const std::vector<int>& parts) {
  const int s = static_cast<int>(std::count(parts.begin(), parts.end(), 1));
  const int threes = static_cast<int>(std::count(parts.begin(), parts.end(), 3));
  const bool any_four = std::any_of(parts.begin(), parts.end(), [](int a) { return a >= 4; });
  if (s >= 4 || any_four || (s == 3 && threes >= 1) || threes >= 2) return Symbol::B;
  if (s == 3 || threes == 1) return Symbol::N;
  return Symbol::M;
}

// Part sizes for the families that are complete multipartite graphs.
std::optional<std::vector<int>> as_multipartite(const FamilySpec& spec) {
  if (spec.family == "multipartite") return parse_parts(spec);
  if (spec.family == "complete" && !spec.params.empty() && spec.params[0] >= 2) {
    return std::vector<int>(static_cast<std::size_t>(spec.params[0]), 1);
  }
  if (spec.family == "star" && !spec.params.empty() && spec.params[0] >= 1) {
    return std::vector<int>{1, spec.params[0]};
  }
  if (spec.family == "cycle" && spec.params.size() == 1 && spec.params[0] == 3) {
    return std::vector<int>{1, 1, 1};
  }
  return std::nullopt;
}

[[noreturn]] void not_covered(const FamilySpec& spec, int k) {
  throw Error(ErrorCode::NotCovered,
              "no closed form for " + spec.describe() + " at k=" + std::to_string(k));
}

}  // namespace

Prediction predict_outcome(const FamilySpec& spec, int k) {
  require_positive_k(k);
  gen_family(spec);  // validates parameters
  const std::string& f = spec.family;
  if (auto parts = as_multipartite(spec)) return {{multipartite_outcome(*parts)}};
  if (f == "cycle") {
    const int n = spec.params[0];
    if (n % 2 == 0 || k >= 2 || n <= 9) return {{Symbol::M}};
    not_covered(spec, k);  // odd n >= 11 at k = 1 is only conjectured
  }
  if (f == "wheel") {
    const int n = spec.params[0];
    if (n == 3) return {{Symbol::B}};
    if (n <= 7 || n % 2 == 0) return {{Symbol::M}};
    return {{Symbol::M, Symbol::N}};
  }
  if (f == "petersen" || f == "thm_a") return {{Symbol::M}};
  if (f == "thm_b") return {{Symbol::N}};
  if (f == "thm_d") return {{k == 1 ? Symbol::N : Symbol::M}};
  if (f == "thm_e") return {{k == 1 ? Symbol::B : Symbol::N}};
  if (f == "thm_f") return {{k == 1 ? Symbol::B : Symbol::M}};
  if (f == "fig1") return {{k == 1 ? Symbol::B : k == 2 ? Symbol::N : Symbol::M}};
  not_covered(spec, k);
}

PredictedCounts predict_counts(const FamilySpec& spec, int k) {
  PredictedCounts pc;
  if (spec.family == "petersen") {
    pc.mrk = pc.mprime_rk = CountClaim{CountClaim::Kind::Fixed, 3};
    return pc;
  }
  const auto parts = as_multipartite(spec);
  if (!parts) return pc;
  const CountClaim dim{CountClaim::Kind::Dimension, 0};
  const CountClaim two{CountClaim::Kind::Fixed, 2};
  switch (predict_outcome(spec, k).symbols.front()) {
    case Symbol::M: pc.mrk = pc.mprime_rk = dim; break;
    case Symbol::B: pc.brk = pc.bprime_rk = two; break;
    case Symbol::N: pc.nrk = dim; pc.nprime_rk = two; break;
  }
  return pc;
}

}  // namespace mbkrg
