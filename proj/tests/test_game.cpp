#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <map>
#include <random>
#include <set>

#include "mbkrg/error.hpp"
#include "mbkrg/families.hpp"
#include "mbkrg/game.hpp"

using namespace mbkrg;

namespace {

struct Fixture {
  FamilyGraph fg;
  DistanceMatrix dm;
  explicit Fixture(const FamilySpec& spec) : fg(gen_family(spec)), dm(all_pairs_distances(fg.graph)) {}
  explicit Fixture(Graph g) : fg{std::move(g), {}}, dm(all_pairs_distances(fg.graph)) {}
  const Graph& g() const { return fg.graph; }
};

ErrorCode error_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::ParseError;
}

// Plain memoized minimax over (maker, breaker), written against the
// definitions only: code vectors for resolving, alternate moves, no pruning.
class Oracle {
 public:
  Oracle(const DistanceMatrix& dm, int k) : dm_(dm), k_(k), n_(dm.order()) {}

  bool resolves(VertexSet s) const {
    std::set<std::vector<int>> codes;
    for (int v = 0; v < n_; ++v) {
      std::vector<int> code;
      for (int w = 0; w < n_; ++w) {
        if ((s >> w) & 1U) code.push_back(std::min(dm_.at(v, w), k_ + 1));
      }
      codes.insert(code);
    }
    return static_cast<int>(codes.size()) == n_;
  }

  Player winner(VertexSet m, VertexSet b, Player to_move) {
    if (resolves(m)) return Player::Maker;
    if (!resolves(full_set(n_) & ~b)) return Player::Breaker;
    const auto key = std::make_tuple(m, b, to_move);
    if (auto it = wins_.find(key); it != wins_.end()) return it->second;
    Player result = opponent(to_move);
    for (int v = 0; v < n_; ++v) {
      const VertexSet bit = VertexSet{1} << v;
      if ((m | b) & bit) continue;
      const Player w = to_move == Player::Maker ? winner(m | bit, b, Player::Breaker)
                                                : winner(m, b | bit, Player::Maker);
      if (w == to_move) {
        result = to_move;
        break;
      }
    }
    wins_[key] = result;
    return result;
  }

  // Winner's moves until the winner's own goal holds; winner fastest among
  // win-preserving moves, loser slowest.
  int count(VertexSet m, VertexSet b, Player to_move, Player w) {
    if (w == Player::Maker && resolves(m)) return 0;
    if (w == Player::Breaker && !resolves(full_set(n_) & ~b)) return 0;
    const auto key = std::make_tuple(m, b, to_move, w);
    if (auto it = counts_.find(key); it != counts_.end()) return it->second;
    int best = to_move == w ? 1 << 20 : -1;
    for (int v = 0; v < n_; ++v) {
      const VertexSet bit = VertexSet{1} << v;
      if ((m | b) & bit) continue;
      const VertexSet m2 = to_move == Player::Maker ? m | bit : m;
      const VertexSet b2 = to_move == Player::Breaker ? b | bit : b;
      const Player next = opponent(to_move);
      if (to_move == w) {
        if (winner(m2, b2, next) != w) continue;
        best = std::min(best, 1 + count(m2, b2, next, w));
      } else {
        best = std::max(best, count(m2, b2, next, w));
      }
    }
    counts_[key] = best;
    return best;
  }

 private:
  const DistanceMatrix& dm_;
  int k_;
  int n_;
  std::map<std::tuple<VertexSet, VertexSet, Player>, Player> wins_;
  std::map<std::tuple<VertexSet, VertexSet, Player, Player>, int> counts_;
};

Player solve(const Fixture& f, int k, Player first, SolverOptions o = {}) {
  return winner(f.g(), f.dm, k, GamePosition{0, 0, first}, o);
}

}  // namespace

TEST_CASE("winners from the worked examples") {
  const Fixture star({"star", {4}});
  for (int k = 1; k <= 3; ++k) CHECK(solve(star, k, Player::Maker) == Player::Breaker);

  const Fixture c5({"cycle", {5}});
  CHECK(solve(c5, 1, Player::Breaker) == Player::Maker);

  const Fixture pet({"petersen", {}});
  const MetricDimension md = metric_dimension_k(pet.dm, 1);
  GamePosition pos{from_vertices(md.basis), 0, Player::Maker};
  // Pad Breaker so the position is reachable with Breaker to move.
  for (int v = 0; cardinality(pos.breaker) < cardinality(pos.maker); ++v) {
    if (!contains(pos.maker, v)) pos.breaker |= singleton(v);
  }
  REQUIRE(pos.valid());
  CHECK(winner(pet.g(), pet.dm, 1, pos) == Player::Maker);
}

TEST_CASE("position validity") {
  CHECK(GamePosition{0b1, 0, Player::Maker}.valid());
  CHECK_FALSE(GamePosition{0b1, 0, Player::Breaker}.valid());
  CHECK_FALSE(GamePosition{0b11, 0b1, Player::Maker}.valid());
  CHECK(GamePosition{0b01, 0b10, Player::Breaker}.valid());
  CHECK(GamePosition{0b01, 0b10, Player::Breaker}.to_move() == Player::Breaker);
  const Fixture c4({"cycle", {4}});
  CHECK(error_of([&] { winner(c4.g(), c4.dm, 1, GamePosition{0b11, 0, Player::Maker}); }) ==
        ErrorCode::BadParameters);
}

TEST_CASE("outcomes from the worked examples") {
  const Fixture pet({"petersen", {}});
  CHECK(outcome(pet.g(), pet.dm, 1).symbol == Symbol::M);
  CHECK(outcome(pet.g(), pet.dm, 2).symbol == Symbol::M);
  const Fixture c3({"cycle", {3}});
  for (int k = 1; k <= 3; ++k) {
    const Outcome o = outcome(c3.g(), c3.dm, k);
    CHECK(o.symbol == Symbol::N);
    CHECK(o.m_game_winner == Player::Maker);
    CHECK(o.b_game_winner == Player::Breaker);
  }
  const Fixture c9({"cycle", {9}});
  CHECK(outcome(c9.g(), c9.dm, 1).symbol == Symbol::M);
}

TEST_CASE("combining game winners") {
  CHECK(combine(Player::Maker, Player::Maker).symbol == Symbol::M);
  CHECK(combine(Player::Breaker, Player::Breaker).symbol == Symbol::B);
  CHECK(combine(Player::Maker, Player::Breaker).symbol == Symbol::N);
  CHECK_THROWS_AS(combine(Player::Breaker, Player::Maker), std::logic_error);
  CHECK(to_int(Symbol::B) == -1);
  CHECK(to_int(Symbol::N) == 0);
  CHECK(to_int(Symbol::M) == 1);
  CHECK(symbol_from_char('N') == Symbol::N);
}

TEST_CASE("move counts from the worked examples") {
  const Fixture pet({"petersen", {}});
  for (int k = 1; k <= 2; ++k) {
    const MoveCounts mc = move_counts(pet.g(), pet.dm, k, outcome(pet.g(), pet.dm, k));
    CHECK(mc.require(CountKind::Mrk) == 3);
    CHECK(mc.require(CountKind::MprimeRk) == 3);
    CHECK(error_of([&] { mc.require(CountKind::Brk); }) == ErrorCode::UndefinedForLoser);
  }

  const Fixture star({"star", {4}});
  for (int k = 1; k <= 2; ++k) {
    const MoveCounts mc = move_counts(star.g(), star.dm, k, outcome(star.g(), star.dm, k));
    CHECK(mc.require(CountKind::Brk) == 2);
    CHECK(mc.require(CountKind::BprimeRk) == 2);
    CHECK_FALSE(mc.mrk);
  }

  const Fixture k22({"multipartite", {2, 2}});
  const int dim = metric_dimension_k(k22.dm, 1).dimension;
  CHECK(dim == 2);
  const MoveCounts mc = move_counts(k22.g(), k22.dm, 1, outcome(k22.g(), k22.dm, 1));
  CHECK(mc.mrk == dim);
  CHECK(mc.mprime_rk == dim);

  const Fixture c3({"cycle", {3}});
  const MoveCounts nc = move_counts(c3.g(), c3.dm, 1, outcome(c3.g(), c3.dm, 1));
  CHECK(nc.nrk);
  CHECK(nc.nprime_rk);
  CHECK_FALSE(nc.mrk);
  CHECK_FALSE(nc.brk);

  const Outcome wrong = combine(Player::Breaker, Player::Breaker);
  CHECK_THROWS(move_counts(pet.g(), pet.dm, 1, wrong));
}

TEST_CASE("jump reports") {
  const Fixture fig({"fig1", {2}});
  const JumpReport jr = jump_report(fig.g(), fig.dm);
  REQUIRE(jr.outcomes.size() == 4);
  CHECK(jr.outcomes[0].second.symbol == Symbol::B);
  CHECK(jr.outcomes[1].second.symbol == Symbol::N);
  CHECK(jr.outcomes[2].second.symbol == Symbol::M);
  CHECK(jr.outcomes[3].second.symbol == Symbol::M);
  CHECK(jr.jumps == std::vector<Jump>{{2, Symbol::B, Symbol::N}, {3, Symbol::N, Symbol::M}});

  const Fixture f({"thm_f", {4}});
  CHECK(jump_report(f.g(), f.dm).jumps == std::vector<Jump>{{2, Symbol::B, Symbol::M}});

  const Fixture pet({"petersen", {}});
  const JumpReport pj = jump_report(pet.g(), pet.dm);
  REQUIRE(pj.outcomes.size() == 1);
  CHECK(pj.outcomes[0].first == 1);
  CHECK(pj.outcomes[0].second.symbol == Symbol::M);
  CHECK(pj.jumps.empty());

  const Fixture k4({"complete", {4}});
  const JumpReport kj = jump_report(k4.g(), k4.dm);
  CHECK(kj.outcomes.size() == 1);
  CHECK(kj.jumps.empty());
}

TEST_CASE("certificates from the worked examples") {
  const Fixture star({"star", {4}});
  const Fixture a({"thm_a", {3}});
  const Fixture b({"thm_b", {4}});
  for (int k = 1; k <= 3; ++k) {
    const auto cs = certificate_fast_path(star.g(), star.dm, k);
    REQUIRE(cs);
    CHECK(cs->kind == CertificateKind::ForcedB);
    const auto ca = certificate_fast_path(a.g(), a.dm, k);
    REQUIRE(ca);
    CHECK(ca->kind == CertificateKind::MCertified);
    const auto cb = certificate_fast_path(b.g(), b.dm, k);
    REQUIRE(cb);
    CHECK(cb->kind == CertificateKind::MOrN);
    REQUIRE(cb->witness);
  }
  CHECK(to_string(CertificateKind::ForcedB) == "forcedB");
  CHECK(to_string(CertificateKind::MCertified) == "Mcertified");
  CHECK(to_string(CertificateKind::MOrN) == "MorN");
  Certificate c;
  c.kind = CertificateKind::MOrN;
  CHECK(consistent(c, Symbol::M));
  CHECK(consistent(c, Symbol::N));
  CHECK_FALSE(consistent(c, Symbol::B));
}

TEST_CASE("certificate pairs really are pairings") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 150; ++trial) {
    const Fixture f(random_connected_graph(4 + trial % 5, 0.3, rng));
    for (int k = 1; k <= std::max(1, f.dm.diameter() - 1); ++k) {
      const auto cert = certificate_fast_path(f.g(), f.dm, k);
      if (!cert || cert->kind == CertificateKind::ForcedB) continue;
      PairSystem ps;
      ps.pairs = cert->pairs;
      const PairCheck pc = check_pair_system(f.dm, k, ps);
      if (cert->kind == CertificateKind::MCertified) {
        CHECK(pc.classification == PairClassification::Pairing);
      } else {
        REQUIRE(cert->witness);
        CHECK(pc.classification == PairClassification::QuasiPairing);
        CHECK(std::find(pc.witnesses.begin(), pc.witnesses.end(), *cert->witness) !=
              pc.witnesses.end());
      }
      CHECK(consistent(*cert, outcome(f.g(), f.dm, k).symbol));
    }
  }
}

TEST_CASE("size caps") {
  const Fixture c19({"cycle", {19}});
  CHECK(error_of([&] { GameSolver s(c19.g(), c19.dm, 1); }) == ErrorCode::SizeCapExceeded);
  SolverOptions forced;
  forced.force = true;
  CHECK_NOTHROW(GameSolver(c19.g(), c19.dm, 1, forced));
  const Fixture c33({"cycle", {33}});
  CHECK(error_of([&] { GameSolver s(c33.g(), c33.dm, 1, forced); }) == ErrorCode::SizeCapExceeded);
  SolverOptions small;
  small.max_vertices = 4;
  const Fixture c5({"cycle", {5}});
  CHECK(error_of([&] { GameSolver s(c5.g(), c5.dm, 1, small); }) == ErrorCode::SizeCapExceeded);
  CHECK_THROWS_AS(GameSolver(c5.g(), c5.dm, 0), Error);
}

TEST_CASE("solver agrees with plain minimax on winners and counts") {
  std::mt19937_64 rng(43);
  for (int trial = 0; trial < 120; ++trial) {
    const int n = 1 + trial % 7;
    const Fixture f(random_connected_graph(n, 0.2 + 0.1 * (trial % 6), rng));
    for (int k = 1; k <= std::max(1, f.dm.diameter()); ++k) {
      Oracle oracle(f.dm, k);
      GameSolver solver(f.g(), f.dm, k);
      const Player mw = oracle.winner(0, 0, Player::Maker);
      const Player bw = oracle.winner(0, 0, Player::Breaker);
      CHECK(solver.winner(GamePosition{0, 0, Player::Maker}) == mw);
      CHECK(solver.winner(GamePosition{0, 0, Player::Breaker}) == bw);
      const Outcome out = solver.outcome();
      const MoveCounts mc = solver.move_counts(out);
      const int m_count = oracle.count(0, 0, Player::Maker, mw);
      const int b_count = oracle.count(0, 0, Player::Breaker, bw);
      switch (out.symbol) {
        case Symbol::M:
          CHECK(mc.mrk == m_count);
          CHECK(mc.mprime_rk == b_count);
          break;
        case Symbol::B:
          CHECK(mc.brk == m_count);
          CHECK(mc.bprime_rk == b_count);
          break;
        case Symbol::N:
          CHECK(mc.nrk == m_count);
          CHECK(mc.nprime_rk == b_count);
          break;
      }
      // A few mid-game positions as well.
      for (int probe = 0; probe < 4; ++probe) {
        GamePosition pos{0, 0, probe % 2 ? Player::Breaker : Player::Maker};
        for (int step = 0; step < n / 2; ++step) {
          const VertexSet free = full_set(n) & ~(pos.maker | pos.breaker);
          if (!free) break;
          const auto options = to_vector(free);
          const int v = options[rng() % options.size()];
          if (pos.to_move() == Player::Maker) {
            pos.maker |= singleton(v);
          } else {
            pos.breaker |= singleton(v);
          }
        }
        CHECK(solver.winner(pos) == oracle.winner(pos.maker, pos.breaker, pos.to_move()));
      }
    }
  }
}

TEST_CASE("solver configuration never changes results") {
  std::mt19937_64 rng(47);
  std::vector<Fixture> cases;
  for (int i = 0; i < 40; ++i) cases.emplace_back(random_connected_graph(4 + i % 5, 0.3, rng));
  cases.emplace_back(FamilySpec{"cycle", {8}});
  cases.emplace_back(FamilySpec{"wheel", {7}});
  cases.emplace_back(FamilySpec{"thm_d", {}});

  for (const Fixture& f : cases) {
    for (int k = 1; k <= std::max(1, f.dm.diameter() - 1); ++k) {
      GameSolver reference(f.g(), f.dm, k);
      const Outcome want = reference.outcome();
      const MoveCounts want_counts = reference.move_counts(want);

      std::vector<SolverOptions> variants(8);
      variants[0].ordering = MoveOrdering::Natural;
      variants[1].ordering = MoveOrdering::Reverse;
      variants[2].table_budget = 1;  // forces the hash table
      variants[3].threads = 4;
      variants[4].automorphisms = f.fg.automorphisms;
      for (auto& p : twin_swap_generators(f.g())) variants[4].automorphisms.push_back(p);
      variants[5].dead_set_cache = false;
      variants[6].dimension_prune = false;
      variants[7].threads = 3;
      variants[7].ordering = MoveOrdering::Reverse;
      variants[7].table_budget = 1;
      for (const SolverOptions& o : variants) {
        GameSolver s(f.g(), f.dm, k, o);
        const Outcome got = s.outcome();
        CHECK(got.symbol == want.symbol);
        CHECK(got.m_game_winner == want.m_game_winner);
        CHECK(got.b_game_winner == want.b_game_winner);
        CHECK(s.move_counts(got) == want_counts);
      }
      GameSolver hashed(f.g(), f.dm, k, variants[2]);
      hashed.outcome();
      CHECK_FALSE(hashed.stats().dense_table);
    }
  }
}

TEST_CASE("automorphism generators are validated") {
  const Fixture c5({"cycle", {5}});
  CHECK_NOTHROW(validate_automorphisms(c5.g(), c5.fg.automorphisms));
  CHECK(error_of([&] { validate_automorphisms(c5.g(), {{1, 0, 2, 3, 4}}); }) ==
        ErrorCode::BadParameters);
  CHECK(error_of([&] { validate_automorphisms(c5.g(), {{0, 1, 2}}); }) == ErrorCode::BadParameters);
  SolverOptions o;
  o.automorphisms = c5.fg.automorphisms;
  GameSolver s(c5.g(), c5.dm, 1, o);
  s.outcome();
  CHECK(s.stats().group_order == 10);
}

TEST_CASE("stabilization beyond diam - 1 and extra-move consistency") {
  std::mt19937_64 rng(53);
  for (int trial = 0; trial < 60; ++trial) {
    const Fixture f(random_connected_graph(2 + trial % 7, 0.3, rng));
    const int top = max_meaningful_k(f.dm);
    CHECK(top == std::max(1, f.dm.diameter() - 1));
    const Symbol at_top = outcome(f.g(), f.dm, top).symbol;
    CHECK(outcome(f.g(), f.dm, top + 1).symbol == at_top);
    CHECK(outcome(f.g(), f.dm, top + 3).symbol == at_top);
  }
}
