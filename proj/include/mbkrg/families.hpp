#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "mbkrg/game.hpp"
#include "mbkrg/graph.hpp"

namespace mbkrg {

/// A named graph family with its integer parameters.
///
/// Families and labelings (ids are 0-based; labels are 1-based like the
/// usual v_i notation):
///   path n          u1..un = 0..n-1
///   cycle n         u1..un = 0..n-1, u_i ~ u_{i+1}, un ~ u1
///   complete n      u1..un
///   star b          center c = 0, leaves l1..lb = 1..b
///   multipartite a1 a2 ...   part i, member j labelled p{i}_{j}, parts in order
///   wheel n         rim u1..un = 0..n-1, hub v = n
///   petersen        outer o1..o5 = 0..4, inner i1..i5 = 5..9, o_i ~ i_i,
///                   inner edges i_j ~ i_{j+2}
///   thm_a a (a>=3)  center v = 0, leaves l1..la = 1..a, s_i = a+i for
///                   i <= a-2 on the v-l_i path; l_{a-1}, l_a adjacent to v
///   thm_b a (a>=4)  as thm_a but only l1..l_{a-3} subdivided
///   thm_d           spine v1 v2 v3 = 0..2, leaves l_i = 3..5, l_i' = 6..8
///   thm_e a (a>=3)  spine v_i = 0..a-1, l_i = a..2a-1, l_i' = 2a..3a-1,
///                   l_a'' = 3a
///   thm_f a (a>=4)  spine v_i = 0..a-1, l_i = a..2a-1, l_i' = 2a..3a-1
///   fig1 a (a>=2)   branch i occupies 6(i-1)..6(i-1)+5 as v_i, l_i, l_i',
///                   s_i, s_i', x_i; then y = 6a, z = 6a+1. v_i ~ v_{i+1};
///                   v_i ~ l_i, l_i', s_i, s_i'; x_i ~ s_i, s_i', y; y ~ z
struct FamilySpec {
  std::string family;
  std::vector<int> params;

  std::string describe() const;
};

struct FamilyGraph {
  Graph graph;
  /// Automorphism generators where the family has easy symmetries.
  std::vector<Permutation> automorphisms;
};

std::vector<std::string> family_names();

/// Throws BadParameters for unknown families or parameters out of range.
FamilyGraph gen_family(const FamilySpec& spec);

/// Checks the structural facts the double-jump argument uses on a generated
/// fig1 graph: twin pairs {l_i, l_i'} and {s_i, s_i'}, equal codes of l_i' and
/// s_i' against all l_j, s_j, and R_1, R_2, R_3 of {l_i', s_i'}. Throws
/// std::logic_error when one fails.
void verify_fig1_structure(const Graph& g, int alpha);

/// Closed-form outcome claims. `symbols` holds one symbol for an exact claim
/// and two for the odd-wheel {M, N} claim.
struct Prediction {
  std::vector<Symbol> symbols;

  bool exact() const { return symbols.size() == 1; }
  bool admits(Symbol s) const;
};

/// Throws NotCovered where no closed form exists (paths, the conjectured odd
/// cycles with n >= 11 at k = 1, unknown families).
Prediction predict_outcome(const FamilySpec& spec, int k);

/// A count claim: a fixed number, or "equals dim(G)".
struct CountClaim {
  enum class Kind { Fixed, Dimension } kind = Kind::Fixed;
  int value = 0;
};

struct PredictedCounts {
  std::optional<CountClaim> mrk, mprime_rk, brk, bprime_rk, nrk, nprime_rk;
};

/// Known move counts: Petersen and complete multipartite graphs. Empty for
/// other families.
PredictedCounts predict_counts(const FamilySpec& spec, int k);

// ---------------------------------------------------------------------------
// Trees.

struct TreeProfile {
  std::vector<int> leaves;
  /// Terminal degree per vertex; zero for non-major vertices.
  std::vector<int> terminal_degree;
  std::vector<int> m1, m2, m3, m4;  // exterior majors with ter = 1, 2, 3, >= 4
  bool is_path = false;
  bool has_degree_two_vertex = false;
  bool has_terminal_degree_zero_major = false;

  /// Satisfies the hypotheses of the trees outcome table.
  bool eligible() const {
    return !is_path && !has_degree_two_vertex && !has_terminal_degree_zero_major;
  }
};

/// Throws NotATree.
TreeProfile classify_tree(const Graph& g);

/// Case table for trees without degree-two vertices or terminal-degree-zero
/// majors. Throws HypothesesViolated for ineligible profiles.
Symbol predict_tree_outcome(const TreeProfile& tp, int k);

/// All free trees on n vertices, one per isomorphism class, each relabeled by
/// its canonical parent array.
std::vector<Graph> free_trees(int n);

/// Connected G(n, p) sample, redrawn until connected.
Graph random_connected_graph(int n, double p, std::mt19937_64& rng);

}  // namespace mbkrg
