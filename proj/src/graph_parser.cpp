#include <algorithm>
#include <fstream>
#include <sstream>

#include "symchaos/graph.hpp"

namespace symchaos {

namespace {

bool valid_id(std::string_view id) {
  if (id.empty()) return false;
  for (char c : id) {
    const bool ok = (c >= 'A' && c <= 'Z') || (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
    if (!ok) return false;
  }
  return true;
}

std::vector<std::string> tokens_of(std::string_view line) {
  std::vector<std::string> out;
  std::istringstream in{std::string(line)};
  std::string tok;
  while (in >> tok) out.push_back(tok);
  return out;
}

}  // namespace

GraphSpec parse_graph(std::string_view text) {
  std::vector<std::string> nodes;
  std::vector<Arc> arcs;
  std::vector<std::size_t> node_lines;
  std::vector<std::size_t> arc_lines;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const std::size_t eol = std::min(text.find('\n', pos), text.size());
    std::string_view line = text.substr(pos, eol - pos);
    pos = eol + 1;
    ++line_no;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    const auto toks = tokens_of(line);
    if (toks.empty()) continue;

    for (std::size_t i = 1; i < toks.size(); ++i) {
      if (!valid_id(toks[i])) throw GraphParseError(line_no, "invalid identifier '" + toks[i] + "'");
    }
    if (toks[0] == "node") {
      if (toks.size() != 2) throw GraphParseError(line_no, "expected 'node <id>'");
      for (std::size_t i = 0; i < nodes.size(); ++i) {
        if (nodes[i] == toks[1]) {
          throw GraphParseError(line_no, "duplicate node id '" + toks[1] + "' (first on line " +
                                             std::to_string(node_lines[i]) + ")");
        }
      }
      nodes.push_back(toks[1]);
      node_lines.push_back(line_no);
    } else if (toks[0] == "arc") {
      if (toks.size() != 4) throw GraphParseError(line_no, "expected 'arc <id> <tail> <head>'");
      for (std::size_t i = 0; i < arcs.size(); ++i) {
        if (arcs[i].id == toks[1]) {
          throw GraphParseError(line_no, "duplicate arc id '" + toks[1] + "' (first on line " +
                                             std::to_string(arc_lines[i]) + ")");
        }
      }
      arcs.push_back({toks[1], toks[2], toks[3]});
      arc_lines.push_back(line_no);
    } else {
      throw GraphParseError(line_no, "unknown directive '" + toks[0] + "'");
    }
  }

  // Endpoints may refer to nodes declared later in the file.
  for (std::size_t i = 0; i < arcs.size(); ++i) {
    for (const auto* end : {&arcs[i].tail, &arcs[i].head}) {
      if (std::find(nodes.begin(), nodes.end(), *end) == nodes.end()) {
        throw GraphParseError(arc_lines[i], "arc '" + arcs[i].id + "' names unknown node '" + *end + "'");
      }
    }
  }
  if (arcs.empty()) throw GraphParseError(line_no, "empty graph: no arcs declared");
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    const bool touched = std::any_of(arcs.begin(), arcs.end(), [&](const Arc& a) {
      return a.tail == nodes[i] || a.head == nodes[i];
    });
    if (!touched) throw GraphParseError(node_lines[i], "node '" + nodes[i] + "' is not on any arc");
  }
  return GraphSpec(std::move(nodes), std::move(arcs));
}

GraphSpec load_graph(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file '" + path.string() + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_graph(buf.str());
}

}  // namespace symchaos
