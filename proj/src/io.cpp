#include "mbkrg/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "mbkrg/error.hpp"

namespace mbkrg {

using nlohmann::json;

namespace {

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw Error(ErrorCode::ParseError, "line " + std::to_string(line) + ": " + what);
}

Graph parse_structured(std::string_view text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
  try {
    const int n = j.at("n").get<int>();
    std::vector<Edge> edges;
    for (const auto& e : j.at("edges")) {
      if (!e.is_array() || e.size() != 2) throw Error(ErrorCode::ParseError, "edge must be [u, v]");
      edges.emplace_back(e[0].get<int>(), e[1].get<int>());
    }
    std::vector<std::string> labels;
    if (j.contains("labels")) labels = j["labels"].get<std::vector<std::string>>();
    return Graph(n, edges, std::move(labels));
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

Graph parse_text(std::string_view text) {
  std::istringstream in{std::string(text)};
  std::string line;
  std::size_t line_no = 0;
  int n = -1;
  std::vector<Edge> edges;
  std::vector<std::pair<int, std::string>> labels;

  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos) continue;
    if (line[first] == '#') {
      if (line.compare(first, 7, "#@label") == 0) {
        std::istringstream fields(line.substr(first + 7));
        int id = -1;
        std::string name;
        if (!(fields >> id >> name)) parse_error(line_no, "malformed label line");
        labels.emplace_back(id, name);
      }
      continue;
    }
    std::istringstream fields(line);
    if (n < 0) {
      std::string tag;
      if (!(fields >> tag >> n) || tag != "n" || n < 1) parse_error(line_no, "expected 'n <N>'");
      continue;
    }
    int u = 0;
    int v = 0;
    std::string extra;
    if (!(fields >> u >> v) || (fields >> extra)) parse_error(line_no, "expected '<u> <v>'");
    if (u < 0 || u >= n || v < 0 || v >= n) parse_error(line_no, "vertex id out of range");
    edges.emplace_back(u, v);
  }
  if (n < 0) throw Error(ErrorCode::ParseError, "missing 'n <N>' line");

  std::vector<std::string> names;
  if (!labels.empty()) {
    names.assign(static_cast<std::size_t>(n), "");
    for (const auto& [id, name] : labels) {
      if (id < 0 || id >= n) throw Error(ErrorCode::ParseError, "label id out of range");
      names[static_cast<std::size_t>(id)] = name;
    }
  }
  return Graph(n, edges, std::move(names));
}

}  // namespace

Graph parse_graph(std::string_view text) {
  const auto first = text.find_first_not_of(" \t\r\n");
  if (first != std::string_view::npos && text[first] == '{') return parse_structured(text);
  return parse_text(text);
}

Graph read_graph_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::IOFailure, "cannot open " + path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

std::string to_text(const Graph& g, const std::vector<std::string>& header) {
  std::ostringstream out;
  for (const auto& h : header) out << "# " << h << '\n';
  if (g.has_labels()) {
    for (int v = 0; v < g.order(); ++v) out << "#@label " << v << ' ' << g.label(v) << '\n';
  }
  out << "n " << g.order() << '\n';
  for (auto [u, v] : g.edges()) out << u << ' ' << v << '\n';
  return out.str();
}

std::string to_structured(const Graph& g) {
  json j;
  j["n"] = g.order();
  j["edges"] = json::array();
  for (auto [u, v] : g.edges()) j["edges"].push_back({u, v});
  if (g.has_labels()) j["labels"] = g.labels();
  return j.dump(2) + "\n";
}

void write_graph_file(const std::filesystem::path& path, const Graph& g,
                      const std::vector<std::string>& header) {
  std::ofstream out(path);
  if (!out) throw Error(ErrorCode::IOFailure, "cannot write " + path.string());
  out << (path.extension() == ".json" ? to_structured(g) : to_text(g, header));
  if (!out) throw Error(ErrorCode::IOFailure, "write failed for " + path.string());
}

std::string graph_digest(const Graph& g) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : to_text(g)) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

// ---------------------------------------------------------------------------
// Reports.

namespace {

json counts_json(const MoveCounts& c) {
  json j = json::object();
  auto put = [&](const char* name, const std::optional<int>& v) {
    if (v) j[name] = *v;
  };
  put("mrk", c.mrk);
  put("mprime_rk", c.mprime_rk);
  put("brk", c.brk);
  put("bprime_rk", c.bprime_rk);
  put("nrk", c.nrk);
  put("nprime_rk", c.nprime_rk);
  return j;
}

MoveCounts counts_from_json(const json& j) {
  MoveCounts c;
  auto get = [&](const char* name, std::optional<int>& v) {
    if (j.contains(name)) v = j[name].get<int>();
  };
  get("mrk", c.mrk);
  get("mprime_rk", c.mprime_rk);
  get("brk", c.brk);
  get("bprime_rk", c.bprime_rk);
  get("nrk", c.nrk);
  get("nprime_rk", c.nprime_rk);
  return c;
}

Player player_from(const std::string& s) {
  if (s == "Maker") return Player::Maker;
  if (s == "Breaker") return Player::Breaker;
  throw Error(ErrorCode::ParseError, "unknown player " + s);
}

CertificateKind certificate_kind_from(const std::string& s) {
  for (auto kind : {CertificateKind::ForcedB, CertificateKind::MCertified, CertificateKind::MOrN}) {
    if (to_string(kind) == s) return kind;
  }
  throw Error(ErrorCode::ParseError, "unknown certificate " + s);
}

json outcome_json(const Outcome& o) {
  return {{"symbol", std::string(1, to_char(o.symbol))},
          {"value", to_int(o.symbol)},
          {"winners", {{"m_game", to_string(o.m_game_winner)}, {"b_game", to_string(o.b_game_winner)}}}};
}

}  // namespace

bool operator==(const SolveReport& a, const SolveReport& b) {
  auto same_cert = [](const std::optional<Certificate>& x, const std::optional<Certificate>& y) {
    if (x.has_value() != y.has_value()) return false;
    if (!x) return true;
    return x->kind == y->kind && x->reason == y->reason && x->pairs == y->pairs &&
           x->witness == y->witness;
  };
  return a.graph == b.graph && a.order == b.order && a.k == b.k &&
         a.outcome.symbol == b.outcome.symbol &&
         a.outcome.m_game_winner == b.outcome.m_game_winner &&
         a.outcome.b_game_winner == b.outcome.b_game_winner && a.counts == b.counts &&
         same_cert(a.certificate, b.certificate) && a.seconds == b.seconds &&
         a.stats.nodes == b.stats.nodes && a.stats.table_hits == b.stats.table_hits &&
         a.stats.resolving_checks == b.stats.resolving_checks &&
         a.stats.dead_cache_hits == b.stats.dead_cache_hits &&
         a.stats.table_entries == b.stats.table_entries &&
         a.stats.dense_table == b.stats.dense_table && a.stats.group_order == b.stats.group_order;
}

json to_json(const SolveReport& r) {
  json j;
  j["graph"] = r.graph;
  j["n"] = r.order;
  j["k"] = r.k;
  const json o = outcome_json(r.outcome);
  j["outcome"] = o["symbol"];
  j["outcome_value"] = o["value"];
  j["winners"] = o["winners"];
  if (r.counts) j["counts"] = counts_json(*r.counts);
  if (r.certificate) {
    json c;
    c["kind"] = to_string(r.certificate->kind);
    c["reason"] = r.certificate->reason;
    c["pairs"] = r.certificate->pairs;
    if (r.certificate->witness) c["witness"] = *r.certificate->witness;
    j["certificate"] = c;
  }
  j["timing"] = {{"seconds", r.seconds}};
  j["stats"] = {{"nodes", r.stats.nodes},
                {"table_hits", r.stats.table_hits},
                {"resolving_checks", r.stats.resolving_checks},
                {"dead_cache_hits", r.stats.dead_cache_hits},
                {"table_entries", r.stats.table_entries},
                {"dense_table", r.stats.dense_table},
                {"group_order", r.stats.group_order}};
  return j;
}

SolveReport solve_report_from_json(const json& j) {
  try {
    SolveReport r;
    r.graph = j.at("graph").get<std::string>();
    r.order = j.at("n").get<int>();
    r.k = j.at("k").get<int>();
    const auto symbol = j.at("outcome").get<std::string>();
    if (symbol.size() != 1) throw Error(ErrorCode::ParseError, "bad outcome symbol");
    r.outcome.symbol = symbol_from_char(symbol[0]);
    if (j.at("outcome_value").get<int>() != to_int(r.outcome.symbol)) {
      throw Error(ErrorCode::ParseError, "outcome value disagrees with symbol");
    }
    r.outcome.m_game_winner = player_from(j.at("winners").at("m_game").get<std::string>());
    r.outcome.b_game_winner = player_from(j.at("winners").at("b_game").get<std::string>());
    if (j.contains("counts")) r.counts = counts_from_json(j["counts"]);
    if (j.contains("certificate")) {
      const json& c = j["certificate"];
      Certificate cert;
      cert.kind = certificate_kind_from(c.at("kind").get<std::string>());
      cert.reason = c.at("reason").get<std::string>();
      cert.pairs = c.at("pairs").get<std::vector<std::pair<int, int>>>();
      if (c.contains("witness")) cert.witness = c["witness"].get<int>();
      r.certificate = cert;
    }
    r.seconds = j.at("timing").at("seconds").get<double>();
    const json& s = j.at("stats");
    r.stats.nodes = s.at("nodes").get<std::uint64_t>();
    r.stats.table_hits = s.at("table_hits").get<std::uint64_t>();
    r.stats.resolving_checks = s.at("resolving_checks").get<std::uint64_t>();
    r.stats.dead_cache_hits = s.at("dead_cache_hits").get<std::uint64_t>();
    r.stats.table_entries = s.at("table_entries").get<std::size_t>();
    r.stats.dense_table = s.at("dense_table").get<bool>();
    r.stats.group_order = s.at("group_order").get<std::size_t>();
    return r;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ParseError, e.what());
  }
}

json to_json(const JumpReport& report) {
  json j;
  j["outcomes"] = json::array();
  for (const auto& [k, o] : report.outcomes) {
    json entry = outcome_json(o);
    entry["k"] = k;
    j["outcomes"].push_back(entry);
  }
  j["jumps"] = json::array();
  for (const Jump& jump : report.jumps) {
    j["jumps"].push_back({{"k", jump.k},
                          {"from", std::string(1, to_char(jump.from))},
                          {"to", std::string(1, to_char(jump.to))}});
  }
  return j;
}

}  // namespace mbkrg
