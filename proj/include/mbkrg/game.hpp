#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mbkrg/graph.hpp"
#include "mbkrg/resolving.hpp"
#include "mbkrg/vertex_set.hpp"

namespace mbkrg {

enum class Player : std::uint8_t { Maker, Breaker };

constexpr Player opponent(Player p) {
  return p == Player::Maker ? Player::Breaker : Player::Maker;
}

/// Game outcome ordered B < N < M.
enum class Symbol : int { B = -1, N = 0, M = 1 };

char to_char(Symbol s);
int to_int(Symbol s);
Symbol symbol_from_char(char c);
std::string to_string(Player p);

/// Claimed vertices of both players plus who opened the game. The player to
/// move follows from the parity of the claimed count (nobody passes).
struct GamePosition {
  VertexSet maker = 0;
  VertexSet breaker = 0;
  Player first = Player::Maker;

  int moves_made() const { return cardinality(maker) + cardinality(breaker); }
  Player to_move() const { return moves_made() % 2 == 0 ? first : opponent(first); }
  /// Disjoint sets whose sizes match alternating play from `first`.
  bool valid() const;
};

struct Outcome {
  Symbol symbol = Symbol::B;
  Player m_game_winner = Player::Breaker;  // Maker opens
  Player b_game_winner = Player::Breaker;  // Breaker opens
};

/// Combines the winners of the two games. Maker winning only as second player
/// is impossible and raises std::logic_error.
Outcome combine(Player m_game_winner, Player b_game_winner);

enum class CountKind { Mrk, MprimeRk, Brk, BprimeRk, Nrk, NprimeRk };

/// Optimal winner move counts. Only the fields matching the outcome are set:
/// M sets mrk/mprime_rk, B sets brk/bprime_rk, N sets nrk (Maker, M-game) and
/// nprime_rk (Breaker, B-game).
struct MoveCounts {
  std::optional<int> mrk, mprime_rk, brk, bprime_rk, nrk, nprime_rk;

  /// Throws UndefinedForLoser when the requested count is not defined.
  int require(CountKind kind) const;

  friend bool operator==(const MoveCounts&, const MoveCounts&) = default;
};

using Permutation = std::vector<int>;

enum class MoveOrdering {
  Natural,     // ascending vertex id
  Reverse,     // descending vertex id
  TwinDegree,  // large twin classes first, then high degree
};

struct SolverOptions {
  int max_vertices = 18;
  /// Lifts max_vertices to the hard limit of 32.
  bool force = false;
  int threads = 1;
  /// Dense positional tables are used while 3^n fits this many one-byte cells.
  std::size_t table_budget = std::size_t{1} << 26;
  MoveOrdering ordering = MoveOrdering::TwinDegree;
  /// Automorphism generators; when non-empty, positions are canonicalized
  /// under the generated group before table lookups.
  std::vector<Permutation> automorphisms;
  bool dead_set_cache = true;
  /// Declares Breaker the winner once Maker cannot reach dim_k(G) vertices.
  bool dimension_prune = true;
};

inline constexpr int kHardVertexCap = 32;

struct SolverStats {
  std::uint64_t nodes = 0;
  std::uint64_t table_hits = 0;
  std::uint64_t resolving_checks = 0;
  std::uint64_t dead_cache_hits = 0;
  std::size_t table_entries = 0;
  bool dense_table = false;
  std::size_t group_order = 1;
};

/// Exhaustive solver for the Maker-Breaker distance-k resolving game on one
/// graph and one k. Results are memoized across calls on the same solver.
class GameSolver {
 public:
  GameSolver(const Graph& g, const DistanceMatrix& dm, int k, SolverOptions options = {});
  ~GameSolver();
  GameSolver(const GameSolver&) = delete;
  GameSolver& operator=(const GameSolver&) = delete;

  /// Winner under optimal play from `pos`.
  Player winner(const GamePosition& pos);

  /// Solves both empty-board games.
  Outcome outcome();

  /// Counts for the games in `out`, which must match this solver's outcome.
  MoveCounts move_counts(const Outcome& out);

  /// Moves the winner from `pos` still needs: the winner picks the fastest
  /// win-preserving line, the loser the longest delay. Only the winner's
  /// moves are counted. Maker is done once his set resolves; Breaker once
  /// the unclaimed-plus-Maker vertices no longer resolve.
  int winning_move_count(const GamePosition& pos);

  SolverStats stats() const;
  const TruncatedMetric& metric() const;
  int k() const;

 private:
  struct Impl;
  std::unique_ptr<Impl> impl_;
};

Player winner(const Graph& g, const DistanceMatrix& dm, int k, const GamePosition& pos,
              const SolverOptions& options = {});
Outcome outcome(const Graph& g, const DistanceMatrix& dm, int k,
                const SolverOptions& options = {});
MoveCounts move_counts(const Graph& g, const DistanceMatrix& dm, int k, const Outcome& out,
                       const SolverOptions& options = {});

struct Jump {
  int k = 0;
  Symbol from = Symbol::B;
  Symbol to = Symbol::B;

  friend bool operator==(const Jump&, const Jump&) = default;
};

/// Outcomes for k = 1..max(1, diam-1) and every k where the symbol changes.
struct JumpReport {
  std::vector<std::pair<int, Outcome>> outcomes;
  std::vector<Jump> jumps;
};

JumpReport jump_report(const Graph& g, const DistanceMatrix& dm,
                       const SolverOptions& options = {});

/// The largest k worth solving: beyond diam-1 truncation changes nothing.
int max_meaningful_k(const DistanceMatrix& dm);

/// Checks that `generators` are automorphisms of `g`; throws BadParameters.
void validate_automorphisms(const Graph& g, const std::vector<Permutation>& generators);

/// Swaps of two members of a twin class; always automorphisms.
std::vector<Permutation> twin_swap_generators(const Graph& g);

// ---------------------------------------------------------------------------
// Certificates.

enum class CertificateKind { ForcedB, MCertified, MOrN };

std::string to_string(CertificateKind kind);

struct Certificate {
  CertificateKind kind = CertificateKind::ForcedB;
  std::string reason;
  std::vector<std::pair<int, int>> pairs;  // pairing or quasi-pairing system
  std::optional<int> witness;              // quasi-pairing completion vertex
};

inline constexpr std::uint64_t kDefaultCertificateBudget = 200000;

/// Cheap structural verdicts: ForcedB from twin classes or a large dim_k,
/// MCertified from a pairing set, MOrN from a quasi-pairing set. The pair
/// search is exact but bounded by `search_budget` nodes, so absence of a
/// certificate proves nothing.
std::optional<Certificate> certificate_fast_path(const Graph& g, const DistanceMatrix& dm, int k,
                                                 std::uint64_t search_budget =
                                                     kDefaultCertificateBudget);

/// Whether a solved symbol is compatible with the certificate.
bool consistent(const Certificate& cert, Symbol symbol);

}  // namespace mbkrg
