#include "mbkrg/game.hpp"

#include <algorithm>
#include <atomic>
#include <limits>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

#include "mbkrg/error.hpp"
#include "mbkrg/position_table.hpp"

namespace mbkrg {

char to_char(Symbol s) {
  switch (s) {
    case Symbol::B: return 'B';
    case Symbol::N: return 'N';
    case Symbol::M: return 'M';
  }
  return '?';
}

int to_int(Symbol s) { return static_cast<int>(s); }

Symbol symbol_from_char(char c) {
  switch (c) {
    case 'B': return Symbol::B;
    case 'N': return Symbol::N;
    case 'M': return Symbol::M;
    default: throw Error(ErrorCode::ParseError, std::string("unknown outcome symbol ") + c);
  }
}

std::string to_string(Player p) { return p == Player::Maker ? "Maker" : "Breaker"; }

bool GamePosition::valid() const {
  if ((maker & breaker) != 0) return false;
  const int lead = first == Player::Maker ? cardinality(maker) - cardinality(breaker)
                                          : cardinality(breaker) - cardinality(maker);
  return lead == 0 || lead == 1;
}

Outcome combine(Player m_game_winner, Player b_game_winner) {
  Outcome out{Symbol::N, m_game_winner, b_game_winner};
  if (m_game_winner == Player::Maker && b_game_winner == Player::Maker) {
    out.symbol = Symbol::M;
  } else if (m_game_winner == Player::Breaker && b_game_winner == Player::Breaker) {
    out.symbol = Symbol::B;
  } else if (m_game_winner == Player::Breaker) {
    throw std::logic_error("Maker wins only as second player; extra-move property violated");
  }
  return out;
}

int MoveCounts::require(CountKind kind) const {
  const std::optional<int>* slot = nullptr;
  const char* name = "";
  switch (kind) {
    case CountKind::Mrk: slot = &mrk; name = "mrk"; break;
    case CountKind::MprimeRk: slot = &mprime_rk; name = "mprime_rk"; break;
    case CountKind::Brk: slot = &brk; name = "brk"; break;
    case CountKind::BprimeRk: slot = &bprime_rk; name = "bprime_rk"; break;
    case CountKind::Nrk: slot = &nrk; name = "nrk"; break;
    case CountKind::NprimeRk: slot = &nprime_rk; name = "nprime_rk"; break;
  }
  if (!slot->has_value()) {
    throw Error(ErrorCode::UndefinedForLoser,
                std::string(name) + " is not defined for this outcome");
  }
  return **slot;
}

void validate_automorphisms(const Graph& g, const std::vector<Permutation>& generators) {
  const int n = g.order();
  for (const Permutation& p : generators) {
    if (p.size() != static_cast<std::size_t>(n)) {
      throw Error(ErrorCode::BadParameters, "automorphism has the wrong length");
    }
    VertexSet image = 0;
    for (int v : p) {
      if (v < 0 || v >= n) throw Error(ErrorCode::BadParameters, "automorphism out of range");
      image |= singleton(v);
    }
    if (image != g.vertices()) throw Error(ErrorCode::BadParameters, "not a permutation");
    for (auto [u, v] : g.edges()) {
      if (!g.adjacent(p[static_cast<std::size_t>(u)], p[static_cast<std::size_t>(v)])) {
        throw Error(ErrorCode::BadParameters, "permutation does not preserve edges");
      }
    }
  }
}

std::vector<Permutation> twin_swap_generators(const Graph& g) {
  std::vector<Permutation> gens;
  const TwinPartition tp = twin_partition(g);
  for (const TwinClass& cls : tp.classes) {
    for (std::size_t i = 0; i + 1 < cls.members.size(); ++i) {
      Permutation p(static_cast<std::size_t>(g.order()));
      std::iota(p.begin(), p.end(), 0);
      std::swap(p[static_cast<std::size_t>(cls.members[i])],
                p[static_cast<std::size_t>(cls.members[i + 1])]);
      gens.push_back(std::move(p));
    }
  }
  return gens;
}

int max_meaningful_k(const DistanceMatrix& dm) { return std::max(1, dm.diameter() - 1); }

// ---------------------------------------------------------------------------

namespace {

constexpr std::uint8_t kMakerWins = 1;
constexpr std::uint8_t kBreakerWins = 2;
constexpr std::size_t kMaxDeadSets = 64;
constexpr std::size_t kMaxGroupOrder = 1024;

VertexSet apply(const Permutation& p, VertexSet s) {
  VertexSet out = 0;
  for_each_vertex(s, [&](int v) { out |= singleton(p[static_cast<std::size_t>(v)]); });
  return out;
}

// Closure of the generators, truncated at kMaxGroupOrder elements. Any set of
// automorphisms gives a sound canonical form; the truncation only loses
// sharing.
std::vector<Permutation> generate_group(int n, const std::vector<Permutation>& generators) {
  Permutation identity(static_cast<std::size_t>(n));
  std::iota(identity.begin(), identity.end(), 0);
  std::set<Permutation> seen{identity};
  std::vector<Permutation> group{identity};
  for (std::size_t head = 0; head < group.size() && group.size() < kMaxGroupOrder; ++head) {
    for (const Permutation& gen : generators) {
      Permutation next(static_cast<std::size_t>(n));
      for (int v = 0; v < n; ++v) {
        next[static_cast<std::size_t>(v)] =
            gen[static_cast<std::size_t>(group[head][static_cast<std::size_t>(v)])];
      }
      if (seen.insert(next).second) {
        group.push_back(std::move(next));
        if (group.size() >= kMaxGroupOrder) break;
      }
    }
  }
  return group;
}

// Per-thread scratch: counters and the store of minimal dead Breaker sets.
struct SearchContext {
  std::uint64_t nodes = 0;
  std::uint64_t table_hits = 0;
  std::uint64_t resolving_checks = 0;
  std::uint64_t dead_cache_hits = 0;
  std::vector<VertexSet> dead_sets;
  std::size_t dead_cursor = 0;
};

}  // namespace

struct GameSolver::Impl {
  const Graph& graph;
  TruncatedMetric metric;
  SolverOptions options;
  int n;
  VertexSet all;
  std::vector<int> order;
  std::vector<Permutation> group;
  int dimension = -1;

  // Indexed by first player: [0] Maker opens, [1] Breaker opens.
  std::unique_ptr<PositionTable> wins[2];
  std::unique_ptr<PositionTable> counts[2];

  std::atomic<std::uint64_t> nodes{0}, table_hits{0}, resolving_checks{0}, dead_cache_hits{0};

  Impl(const Graph& g, const DistanceMatrix& dm, int k, SolverOptions opts)
      : graph(g), metric(dm, k), options(std::move(opts)), n(g.order()), all(g.vertices()) {
    const int cap = options.force ? kHardVertexCap : std::min(options.max_vertices, kHardVertexCap);
    if (n > cap) {
      throw Error(ErrorCode::SizeCapExceeded, "order " + std::to_string(n) + " exceeds solver cap " +
                                                  std::to_string(cap));
    }
    order.resize(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    if (options.ordering == MoveOrdering::Reverse) {
      std::reverse(order.begin(), order.end());
    } else if (options.ordering == MoveOrdering::TwinDegree) {
      const TwinPartition tp = twin_partition(g);
      auto class_size = [&](int v) {
        return tp.classes[static_cast<std::size_t>(tp.class_of[static_cast<std::size_t>(v)])].size();
      };
      std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
        if (class_size(a) != class_size(b)) return class_size(a) > class_size(b);
        return g.degree(a) > g.degree(b);
      });
    }
    if (!options.automorphisms.empty()) {
      validate_automorphisms(g, options.automorphisms);
      group = generate_group(n, options.automorphisms);
    }
    if (options.dimension_prune) dimension = metric_dimension_k(dm, k, kHardVertexCap).dimension;
  }

  static int slot(Player first) { return first == Player::Maker ? 0 : 1; }

  PositionTable& win_table(Player first) {
    auto& t = wins[slot(first)];
    if (!t) t = make_position_table(n, options.table_budget);
    return *t;
  }

  PositionTable& count_table(Player first) {
    auto& t = counts[slot(first)];
    if (!t) t = make_position_table(n, options.table_budget);
    return *t;
  }

  std::pair<VertexSet, VertexSet> canonical(VertexSet m, VertexSet b) const {
    if (group.empty()) return {m, b};
    std::pair<VertexSet, VertexSet> best{m, b};
    for (const Permutation& p : group) {
      const std::pair<VertexSet, VertexSet> image{apply(p, m), apply(p, b)};
      if (image < best) best = image;
    }
    return best;
  }

  bool maker_done(VertexSet m, SearchContext& ctx) const {
    ++ctx.resolving_checks;
    return metric.resolves(m);
  }

  // Breaker is done once the vertices she has not claimed no longer resolve.
  // Such sets are upward closed, so minimal examples are cached.
  bool breaker_done(VertexSet b, SearchContext& ctx) const {
    if (options.dead_set_cache) {
      for (VertexSet d : ctx.dead_sets) {
        if (is_subset(d, b)) {
          ++ctx.dead_cache_hits;
          return true;
        }
      }
    }
    ++ctx.resolving_checks;
    if (metric.resolves(all & ~b)) return false;
    if (options.dead_set_cache) {
      VertexSet minimal = b;
      for_each_vertex(b, [&](int v) {
        const VertexSet smaller = minimal & ~singleton(v);
        ++ctx.resolving_checks;
        if (!metric.resolves(all & ~smaller)) minimal = smaller;
      });
      if (ctx.dead_sets.size() < kMaxDeadSets) {
        ctx.dead_sets.push_back(minimal);
      } else {
        ctx.dead_sets[ctx.dead_cursor] = minimal;
        ctx.dead_cursor = (ctx.dead_cursor + 1) % kMaxDeadSets;
      }
    }
    return true;
  }

  static bool maker_to_move(VertexSet m, VertexSet b, Player first) {
    return GamePosition{m, b, first}.to_move() == Player::Maker;
  }

  bool maker_wins(VertexSet m, VertexSet b, Player first, SearchContext& ctx) {
    ++ctx.nodes;
    PositionTable& table = win_table(first);
    const auto [cm, cb] = canonical(m, b);
    if (const std::uint8_t cached = table.load(cm, cb)) {
      ++ctx.table_hits;
      return cached == kMakerWins;
    }
    const bool result = evaluate(m, b, first, ctx);
    table.store(cm, cb, result ? kMakerWins : kBreakerWins);
    return result;
  }

  bool evaluate(VertexSet m, VertexSet b, Player first, SearchContext& ctx) {
    if (maker_done(m, ctx)) return true;
    if (breaker_done(b, ctx)) return false;
    const VertexSet free = all & ~(m | b);
    const bool maker_turn = maker_to_move(m, b, first);
    if (dimension >= 0) {
      const int unclaimed = cardinality(free);
      const int maker_moves_left = maker_turn ? (unclaimed + 1) / 2 : unclaimed / 2;
      if (cardinality(m) + maker_moves_left < dimension) return false;
    }
    for (int v : order) {
      if (!contains(free, v)) continue;
      if (maker_turn) {
        if (maker_wins(m | singleton(v), b, first, ctx)) return true;
      } else {
        if (!maker_wins(m, b | singleton(v), first, ctx)) return false;
      }
    }
    return !maker_turn;
  }

  // Root split across threads. Workers share the tables; a decisive child
  // stops the others from starting new subtrees.
  bool maker_wins_parallel(VertexSet m, VertexSet b, Player first) {
    SearchContext root_ctx;
    const auto [cm, cb] = canonical(m, b);
    PositionTable& table = win_table(first);
    if (const std::uint8_t cached = table.load(cm, cb)) {
      merge(root_ctx);
      return cached == kMakerWins;
    }
    const bool maker_already = maker_done(m, root_ctx);
    const bool breaker_already = !maker_already && breaker_done(b, root_ctx);
    merge(root_ctx);
    if (maker_already || breaker_already) return maker_already;

    const bool maker_turn = maker_to_move(m, b, first);
    std::vector<int> moves;
    for (int v : order) {
      if (contains(all & ~(m | b), v)) moves.push_back(v);
    }
    std::atomic<std::size_t> next{0};
    std::atomic<bool> decided{false};
    auto worker = [&] {
      SearchContext ctx;
      for (std::size_t i = next++; i < moves.size() && !decided.load(); i = next++) {
        const VertexSet v = singleton(moves[i]);
        const bool maker_child = maker_turn ? maker_wins(m | v, b, first, ctx)
                                            : maker_wins(m, b | v, first, ctx);
        if (maker_child == maker_turn) decided = true;
      }
      merge(ctx);
    };
    const int threads = std::max(1, std::min<int>(options.threads, static_cast<int>(moves.size())));
    std::vector<std::jthread> pool;
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    pool.clear();

    const bool result = decided.load() ? maker_turn : !maker_turn;
    table.store(cm, cb, result ? kMakerWins : kBreakerWins);
    return result;
  }

  void merge(SearchContext& ctx) {
    nodes += ctx.nodes;
    table_hits += ctx.table_hits;
    resolving_checks += ctx.resolving_checks;
    dead_cache_hits += ctx.dead_cache_hits;
    ctx = SearchContext{};
  }

  bool solve(const GamePosition& pos) {
    if (!pos.valid()) throw Error(ErrorCode::BadParameters, "invalid game position");
    if ((pos.maker | pos.breaker) & ~all) {
      throw Error(ErrorCode::VertexOutOfRange, "position uses vertices outside the graph");
    }
    if (options.threads > 1) return maker_wins_parallel(pos.maker, pos.breaker, pos.first);
    SearchContext ctx;
    const bool r = maker_wins(pos.maker, pos.breaker, pos.first, ctx);
    merge(ctx);
    return r;
  }

  // Minimax count of the winner's moves; see GameSolver::winning_move_count.
  int count(VertexSet m, VertexSet b, Player first, Player winner, SearchContext& ctx) {
    if (winner == Player::Maker ? maker_done(m, ctx) : breaker_done(b, ctx)) return 0;
    PositionTable& table = count_table(first);
    const auto [cm, cb] = canonical(m, b);
    if (const std::uint8_t cached = table.load(cm, cb)) {
      ++ctx.table_hits;
      return cached - 1;
    }
    ++ctx.nodes;
    const VertexSet free = all & ~(m | b);
    const bool maker_turn = maker_to_move(m, b, first);
    const bool winner_turn = maker_turn == (winner == Player::Maker);
    int best = winner_turn ? std::numeric_limits<int>::max() : 0;
    for (int v : order) {
      if (!contains(free, v)) continue;
      const VertexSet cm2 = maker_turn ? m | singleton(v) : m;
      const VertexSet cb2 = maker_turn ? b : b | singleton(v);
      if (winner_turn) {
        const bool keeps_win = maker_wins(cm2, cb2, first, ctx) == (winner == Player::Maker);
        if (!keeps_win) continue;
        best = std::min(best, 1 + count(cm2, cb2, first, winner, ctx));
        if (best == 1) break;
      } else {
        best = std::max(best, count(cm2, cb2, first, winner, ctx));
      }
    }
    if (best == std::numeric_limits<int>::max()) {
      throw std::logic_error("winner has no win-preserving move");
    }
    table.store(cm, cb, static_cast<std::uint8_t>(best + 1));
    return best;
  }
};

GameSolver::GameSolver(const Graph& g, const DistanceMatrix& dm, int k, SolverOptions options)
    : impl_(std::make_unique<Impl>(g, dm, k, std::move(options))) {}

GameSolver::~GameSolver() = default;

Player GameSolver::winner(const GamePosition& pos) {
  return impl_->solve(pos) ? Player::Maker : Player::Breaker;
}

Outcome GameSolver::outcome() {
  const Player m_game = winner(GamePosition{0, 0, Player::Maker});
  const Player b_game = winner(GamePosition{0, 0, Player::Breaker});
  return combine(m_game, b_game);
}

int GameSolver::winning_move_count(const GamePosition& pos) {
  const Player w = winner(pos);
  SearchContext ctx;
  const int c = impl_->count(pos.maker, pos.breaker, pos.first, w, ctx);
  impl_->merge(ctx);
  return c;
}

MoveCounts GameSolver::move_counts(const Outcome& out) {
  const Outcome solved = outcome();
  if (solved.m_game_winner != out.m_game_winner || solved.b_game_winner != out.b_game_winner) {
    throw Error(ErrorCode::BadParameters, "outcome does not belong to this graph and k");
  }
  const int m_game = winning_move_count(GamePosition{0, 0, Player::Maker});
  const int b_game = winning_move_count(GamePosition{0, 0, Player::Breaker});
  MoveCounts mc;
  switch (out.symbol) {
    case Symbol::M: mc.mrk = m_game; mc.mprime_rk = b_game; break;
    case Symbol::B: mc.brk = m_game; mc.bprime_rk = b_game; break;
    case Symbol::N: mc.nrk = m_game; mc.nprime_rk = b_game; break;
  }
  return mc;
}

SolverStats GameSolver::stats() const {
  SolverStats s;
  s.nodes = impl_->nodes.load();
  s.table_hits = impl_->table_hits.load();
  s.resolving_checks = impl_->resolving_checks.load();
  s.dead_cache_hits = impl_->dead_cache_hits.load();
  for (const auto* tables : {&impl_->wins, &impl_->counts}) {
    for (const auto& t : *tables) {
      if (!t) continue;
      s.table_entries += t->entries();
      s.dense_table = t->dense();
    }
  }
  s.group_order = std::max<std::size_t>(1, impl_->group.size());
  return s;
}

const TruncatedMetric& GameSolver::metric() const { return impl_->metric; }

int GameSolver::k() const { return impl_->metric.k(); }

Player winner(const Graph& g, const DistanceMatrix& dm, int k, const GamePosition& pos,
              const SolverOptions& options) {
  return GameSolver(g, dm, k, options).winner(pos);
}

Outcome outcome(const Graph& g, const DistanceMatrix& dm, int k, const SolverOptions& options) {
  return GameSolver(g, dm, k, options).outcome();
}

MoveCounts move_counts(const Graph& g, const DistanceMatrix& dm, int k, const Outcome& out,
                       const SolverOptions& options) {
  return GameSolver(g, dm, k, options).move_counts(out);
}

JumpReport jump_report(const Graph& g, const DistanceMatrix& dm, const SolverOptions& options) {
  JumpReport report;
  for (int k = 1; k <= max_meaningful_k(dm); ++k) {
    const Outcome out = outcome(g, dm, k, options);
    if (!report.outcomes.empty()) {
      const Symbol prev = report.outcomes.back().second.symbol;
      if (to_int(out.symbol) < to_int(prev)) {
        throw std::logic_error("outcome decreased in k at k=" + std::to_string(k));
      }
      if (out.symbol != prev) report.jumps.push_back({k, prev, out.symbol});
    }
    report.outcomes.emplace_back(k, out);
  }
  return report;
}

}  // namespace mbkrg
