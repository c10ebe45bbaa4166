#include <chrono>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "mbkrg/error.hpp"
#include "mbkrg/families.hpp"
#include "mbkrg/game.hpp"
#include "mbkrg/io.hpp"
#include "mbkrg/resolving.hpp"
#include "mbkrg/verify.hpp"

using namespace mbkrg;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kFailed = 1, kUsage = 2, kTooLarge = 3 };

std::optional<long> env_number(const char* name) {
  const char* raw = std::getenv(name);
  if (!raw || !*raw) return std::nullopt;
  char* end = nullptr;
  const long v = std::strtol(raw, &end, 10);
  if (*end != '\0' || v <= 0) throw Error(ErrorCode::BadParameters, std::string(name) + " must be a positive integer");
  return v;
}

std::vector<int> parse_int_list(const std::string& text) {
  std::vector<int> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    if (item.empty()) continue;
    try {
      std::size_t used = 0;
      out.push_back(std::stoi(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw Error(ErrorCode::ParseError, "not an integer list: " + text);
    }
  }
  return out;
}

std::vector<std::pair<int, int>> parse_pairs(const std::string& text) {
  std::vector<std::pair<int, int>> out;
  std::stringstream in(text);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto dash = item.find('-');
    if (dash == std::string::npos) throw Error(ErrorCode::ParseError, "pair must look like u-v: " + item);
    const auto a = parse_int_list(item.substr(0, dash));
    const auto b = parse_int_list(item.substr(dash + 1));
    if (a.size() != 1 || b.size() != 1) throw Error(ErrorCode::ParseError, "pair must look like u-v: " + item);
    out.emplace_back(a[0], b[0]);
  }
  return out;
}

// Graph given on the command line, either by family or by file.
struct GraphSource {
  std::string family;
  int n = 0;
  int alpha = 0;
  int beta = 0;
  std::string parts;
  std::string file;

  void add_options(CLI::App* cmd) {
    cmd->add_option("--family", family, "Family name")->check(CLI::IsMember(family_names()));
    cmd->add_option("--n", n, "Order parameter (path, cycle, complete, wheel)");
    cmd->add_option("--alpha", alpha, "Size parameter (thm_a, thm_b, thm_e, thm_f, fig1)");
    cmd->add_option("--beta", beta, "Leaf count (star)");
    cmd->add_option("--parts", parts, "Part sizes, comma separated (multipartite)");
    cmd->add_option("--file", file, "Graph file (text or JSON)");
  }

  FamilySpec spec() const {
    FamilySpec s{family, {}};
    if (family == "multipartite") {
      s.params = parse_int_list(parts);
    } else if (family == "star") {
      s.params = {beta};
    } else if (family == "path" || family == "cycle" || family == "complete" || family == "wheel") {
      s.params = {n};
    } else if (family != "petersen" && family != "thm_d") {
      s.params = {alpha};
    }
    return s;
  }

  struct Loaded {
    Graph graph;
    std::vector<Permutation> automorphisms;
    std::string descriptor;
  };

  Loaded load() const {
    if (family.empty() == file.empty()) {
      throw Error(ErrorCode::BadParameters, "give exactly one of --family or --file");
    }
    if (!file.empty()) {
      Graph g = read_graph_file(file);
      std::string d = "file:" + graph_digest(g);
      return {std::move(g), {}, std::move(d)};
    }
    const FamilySpec s = spec();
    FamilyGraph fg = gen_family(s);
    return {std::move(fg.graph), std::move(fg.automorphisms), s.describe()};
  }
};

struct SolverKnobs {
  int threads = 0;
  int max_n = 0;
  long tt_entries = 0;
  bool force = false;
  bool symmetry = false;

  void add_options(CLI::App* cmd) {
    cmd->add_option("--threads", threads, "Worker threads (env MBKRG_THREADS)");
    cmd->add_option("--max-n", max_n, "Refuse graphs above this order (env MBKRG_MAX_N)");
    cmd->add_option("--tt-entries", tt_entries,
                    "Position table budget in entries (env MBKRG_TT_ENTRIES)");
    cmd->add_flag("--force", force, "Allow orders up to the hard cap");
    cmd->add_flag("--symmetry", symmetry, "Canonicalize positions under known automorphisms");
  }

  SolverOptions options(const Graph& g, const std::vector<Permutation>& family_autos) const {
    SolverOptions o;
    if (auto v = env_number("MBKRG_THREADS")) o.threads = static_cast<int>(*v);
    if (auto v = env_number("MBKRG_MAX_N")) o.max_vertices = static_cast<int>(*v);
    if (auto v = env_number("MBKRG_TT_ENTRIES")) o.table_budget = static_cast<std::size_t>(*v);
    if (threads > 0) o.threads = threads;
    if (max_n > 0) o.max_vertices = max_n;
    if (tt_entries > 0) o.table_budget = static_cast<std::size_t>(tt_entries);
    o.force = force;
    if (symmetry) {
      o.automorphisms = family_autos;
      for (auto& p : twin_swap_generators(g)) o.automorphisms.push_back(std::move(p));
    }
    return o;
  }
};

void print(const json& j) { std::cout << j.dump(2) << '\n'; }

json vertex_list(const Graph& g, const std::vector<int>& vs) {
  json out = json::array();
  for (int v : vs) out.push_back(g.has_labels() ? json(g.label(v)) : json(v));
  return out;
}

// ---------------------------------------------------------------------------

struct GenArgs {
  std::string family;
  std::vector<int> params;
  std::string output;
};

int run_gen(const GenArgs& a) {
  const FamilySpec spec{a.family, a.params};
  const FamilyGraph fg = gen_family(spec);
  std::vector<std::string> header{
      "family " + spec.describe(),
      "order " + std::to_string(fg.graph.order()) + ", edges " + std::to_string(fg.graph.size()),
      "labels follow as #@label lines; ids are 0-based"};
  if (a.output.empty() || a.output == "-") {
    std::cout << to_text(fg.graph, header);
  } else {
    write_graph_file(a.output, fg.graph, header);
  }
  return kOk;
}

struct SolveArgs {
  GraphSource source;
  SolverKnobs knobs;
  std::string k = "1";
  std::string game = "both";
  bool counts = false;
  bool certificates = false;
};

SolveReport solve_one(const GraphSource::Loaded& src, const DistanceMatrix& dm, int k,
                      const SolveArgs& a, const SolverOptions& so) {
  const auto t0 = std::chrono::steady_clock::now();
  GameSolver solver(src.graph, dm, k, so);
  SolveReport r;
  r.graph = src.descriptor;
  r.order = src.graph.order();
  r.k = k;
  r.outcome = solver.outcome();
  if (a.counts) r.counts = solver.move_counts(r.outcome);
  if (a.certificates) r.certificate = certificate_fast_path(src.graph, dm, k);
  r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  r.stats = solver.stats();
  return r;
}

json single_game(const GraphSource::Loaded& src, const DistanceMatrix& dm, int k,
                 const SolveArgs& a, const SolverOptions& so) {
  const auto t0 = std::chrono::steady_clock::now();
  GameSolver solver(src.graph, dm, k, so);
  const Player first = a.game == "m" ? Player::Maker : Player::Breaker;
  const GamePosition start{0, 0, first};
  json j;
  j["graph"] = src.descriptor;
  j["n"] = src.graph.order();
  j["k"] = k;
  j["game"] = a.game;
  j["winner"] = to_string(solver.winner(start));
  if (a.counts) j["count"] = solver.winning_move_count(start);
  j["timing"] = {{"seconds", std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count()}};
  j["stats"] = {{"nodes", solver.stats().nodes}, {"table_entries", solver.stats().table_entries}};
  return j;
}

int run_solve(const SolveArgs& a) {
  const auto src = a.source.load();
  const DistanceMatrix dm = all_pairs_distances(src.graph);
  const SolverOptions so = a.knobs.options(src.graph, src.automorphisms);

  std::vector<int> ks;
  if (a.k == "all") {
    for (int k = 1; k <= max_meaningful_k(dm); ++k) ks.push_back(k);
  } else {
    const auto parsed = parse_int_list(a.k);
    if (parsed.size() != 1) throw Error(ErrorCode::ParseError, "-k takes a positive integer or 'all'");
    require_positive_k(parsed[0]);
    ks = parsed;
  }

  if (a.game != "both") {
    json out = json::array();
    for (int k : ks) out.push_back(single_game(src, dm, k, a, so));
    print(ks.size() == 1 ? out[0] : out);
    return kOk;
  }

  std::vector<SolveReport> reports;
  for (int k : ks) reports.push_back(solve_one(src, dm, k, a, so));
  if (a.k != "all") {
    print(to_json(reports.front()));
    return kOk;
  }
  JumpReport jr;
  for (const auto& r : reports) {
    if (!jr.outcomes.empty() && jr.outcomes.back().second.symbol != r.outcome.symbol) {
      jr.jumps.push_back({r.k, jr.outcomes.back().second.symbol, r.outcome.symbol});
    }
    jr.outcomes.emplace_back(r.k, r.outcome);
  }
  json out;
  out["reports"] = json::array();
  for (const auto& r : reports) out["reports"].push_back(to_json(r));
  out["jump_report"] = to_json(jr);
  print(out);
  return kOk;
}

struct DimArgs {
  GraphSource source;
  int k = 1;
  int max_n = 0;
};

int run_dim(const DimArgs& a) {
  const auto src = a.source.load();
  const DistanceMatrix dm = all_pairs_distances(src.graph);
  const MetricDimension md =
      metric_dimension_k(dm, a.k, a.max_n > 0 ? a.max_n : kDefaultDimensionCap);
  json j;
  j["graph"] = src.descriptor;
  j["n"] = src.graph.order();
  j["k"] = a.k;
  j["dim"] = md.dimension;
  j["basis"] = md.basis;
  if (src.graph.has_labels()) j["basis_labels"] = vertex_list(src.graph, md.basis);
  print(j);
  return kOk;
}

struct CheckArgs {
  GraphSource source;
  int k = 1;
  std::string set;
  std::string pairs;
  bool twins = false;
  bool gaps = false;
};

int run_check(const CheckArgs& a) {
  const auto src = a.source.load();
  const Graph& g = src.graph;
  const DistanceMatrix dm = all_pairs_distances(g);
  json j;
  j["graph"] = src.descriptor;
  j["n"] = g.order();
  j["k"] = a.k;
  bool any = false;

  if (!a.set.empty()) {
    any = true;
    const std::vector<int> landmarks = parse_int_list(a.set);
    for (int v : landmarks) {
      if (v < 0 || v >= g.order()) throw Error(ErrorCode::VertexOutOfRange, "vertex " + std::to_string(v));
    }
    const ResolvingVerdict verdict = is_resolving(dm, a.k, from_vertices(landmarks));
    json r;
    r["set"] = landmarks;
    r["resolving"] = verdict.resolving;
    if (verdict.witness) r["witness"] = {verdict.witness->first, verdict.witness->second};
    j["resolving"] = r;
    if (a.gaps) {
      const GapProfile gp = GapProfile::from_landmarks(g.order(), landmarks);
      j["gaps"] = {{"gaps", gp.gaps}, {"conditions_hold", cycle_gap_check(gp, a.k)}};
    }
  } else if (a.gaps) {
    throw Error(ErrorCode::BadParameters, "--gaps needs --set");
  }

  if (!a.pairs.empty()) {
    any = true;
    PairSystem ps;
    ps.pairs = parse_pairs(a.pairs);
    const PairCheck pc = check_pair_system(dm, a.k, ps);
    json r;
    r["pairs"] = ps.pairs;
    r["classification"] = pc.classification == PairClassification::Pairing        ? "pairing"
                          : pc.classification == PairClassification::QuasiPairing ? "quasi-pairing"
                                                                                  : "neither";
    if (!pc.witnesses.empty()) r["witnesses"] = pc.witnesses;
    j["pairs"] = r;
  }

  if (a.twins) {
    any = true;
    const TwinPartition tp = twin_partition(g);
    json classes = json::array();
    for (const TwinClass& c : tp.classes) {
      if (c.size() < 2) continue;
      classes.push_back({{"members", c.members},
                         {"size", c.size()},
                         {"kind", c.kind == TwinKind::Clique ? "clique" : "independent"}});
    }
    j["twins"] = {{"classes", classes}, {"lower_bound", tp.resolving_lower_bound()}};
  }

  if (!any) throw Error(ErrorCode::BadParameters, "give --set, --pairs or --twins");
  print(j);
  return kOk;
}

struct VerifyArgs {
  std::string level = "quick";
  std::string report;
  int threads = 0;
  bool inject_fault = false;
};

int run_verify(const VerifyArgs& a) {
  VerifyOptions o;
  o.level = a.level == "full" ? VerifyLevel::Full : VerifyLevel::Quick;
  o.corrupt_predictor = a.inject_fault;
  if (auto v = env_number("MBKRG_THREADS")) o.threads = static_cast<int>(*v);
  if (a.threads > 0) o.threads = a.threads;
  const SuiteResult result = run_verification(o);
  std::cout << render_table(result);
  if (!a.report.empty()) {
    std::ofstream out(a.report);
    if (!out) throw Error(ErrorCode::IOFailure, "cannot write " + a.report);
    out << to_json(result).dump(2) << '\n';
  }
  return result.pass() ? kOk : kFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Maker-Breaker distance-k resolving game toolkit"};
  app.require_subcommand(1);

  GenArgs gen;
  auto* gen_cmd = app.add_subcommand("gen", "Write a family graph as a graph file");
  gen_cmd->add_option("family", gen.family, "Family name")->required()->check(CLI::IsMember(family_names()));
  gen_cmd->add_option("params", gen.params, "Family parameters");
  gen_cmd->add_option("-o,--output", gen.output, "Output path (.json for the structured form)");

  SolveArgs solve;
  auto* solve_cmd = app.add_subcommand("solve", "Solve the game for one k or all k");
  solve.source.add_options(solve_cmd);
  solve.knobs.add_options(solve_cmd);
  solve_cmd->add_option("-k,--k", solve.k, "k, or 'all' for 1..diam-1");
  solve_cmd->add_option("--game", solve.game, "m, b or both")->check(CLI::IsMember({"m", "b", "both"}));
  solve_cmd->add_flag("--counts", solve.counts, "Report optimal move counts");
  solve_cmd->add_flag("--certificates", solve.certificates, "Report structural certificates");

  DimArgs dim;
  auto* dim_cmd = app.add_subcommand("dim", "Compute dim_k and a witness set");
  dim.source.add_options(dim_cmd);
  dim_cmd->add_option("-k,--k", dim.k, "k")->check(CLI::PositiveNumber);
  dim_cmd->add_option("--max-n", dim.max_n, "Refuse graphs above this order");

  CheckArgs chk;
  auto* check_cmd = app.add_subcommand("check", "Check a landmark set, pair system or twin classes");
  chk.source.add_options(check_cmd);
  check_cmd->add_option("-k,--k", chk.k, "k")->check(CLI::PositiveNumber);
  check_cmd->add_option("--set", chk.set, "Landmarks, comma separated");
  check_cmd->add_option("--pairs", chk.pairs, "Pairs like 0-2,1-3");
  check_cmd->add_flag("--twins", chk.twins, "List twin classes");
  check_cmd->add_flag("--gaps", chk.gaps, "Cycle gap conditions for --set");

  VerifyArgs ver;
  auto* verify_cmd = app.add_subcommand("verify-paper", "Run the verification suite");
  verify_cmd->add_option("--level", ver.level, "quick or full")->check(CLI::IsMember({"quick", "full"}));
  verify_cmd->add_option("--report", ver.report, "Write the JSON result here");
  verify_cmd->add_option("--threads", ver.threads, "Solver threads");
  verify_cmd->add_flag("--inject-fault", ver.inject_fault)->group("");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*gen_cmd) return run_gen(gen);
    if (*solve_cmd) return run_solve(solve);
    if (*dim_cmd) return run_dim(dim);
    if (*check_cmd) return run_check(chk);
    if (*verify_cmd) return run_verify(ver);
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return e.code() == ErrorCode::SizeCapExceeded ? kTooLarge : kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kFailed;
  }
  return kUsage;
}
