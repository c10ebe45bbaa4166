#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"
#include "mbkrg/game.hpp"
#include "mbkrg/graph.hpp"

namespace mbkrg {

// Graph files come in two forms.
//
// Text: '#' starts a comment line, the first data line is "n <N>", every
// further data line is "<u> <v>" with 0-based ids. Labels ride along in
// comment lines of the form "#@label <id> <name>", which plain readers skip.
//
// Structured: a JSON object {"n": N, "edges": [[u, v], ...], "labels": [...]}
// with labels optional.

/// Detects the form from the first non-blank character. Throws ParseError
/// (with a line number for text input) or the graph's own validation errors.
Graph parse_graph(std::string_view text);
Graph read_graph_file(const std::filesystem::path& path);

std::string to_text(const Graph& g, const std::vector<std::string>& header = {});
std::string to_structured(const Graph& g);
void write_graph_file(const std::filesystem::path& path, const Graph& g,
                      const std::vector<std::string>& header = {});

/// FNV-1a of the normalized text form, as 16 hex digits.
std::string graph_digest(const Graph& g);

struct SolveReport {
  std::string graph;  // family + params, or "file:<digest>"
  int order = 0;
  int k = 1;
  Outcome outcome;
  std::optional<MoveCounts> counts;
  std::optional<Certificate> certificate;
  double seconds = 0.0;
  SolverStats stats;

  friend bool operator==(const SolveReport&, const SolveReport&);
};

nlohmann::json to_json(const SolveReport& report);
SolveReport solve_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const JumpReport& report);

}  // namespace mbkrg
