#pragma once

// Line-based graph files and DOT export.
//
//   # comment
//   node v1 A
//   node v2 B
//   edge v1 v2

#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <vector>

#include "ahn/error.hpp"
#include "ahn/graph.hpp"

namespace ahn {

namespace detail {

inline std::vector<std::pair<std::string, std::size_t>> split_words(std::string_view line) {
  std::vector<std::pair<std::string, std::size_t>> words;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    if (i >= line.size()) break;
    std::size_t start = i;
    while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i]))) ++i;
    words.emplace_back(std::string(line.substr(start, i - start)), start + 1);
  }
  return words;
}

}  // namespace detail

inline LabeledGraph parse_graph(std::string_view text) {
  std::vector<VertexId> vertices;
  std::map<VertexId, Label> labels;
  std::vector<std::pair<VertexId, VertexId>> edges;
  std::vector<std::size_t> edge_lines;

  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    auto words = detail::split_words(line);
    if (words.empty()) continue;
    const auto& [keyword, column] = words.front();
    if (keyword == "node") {
      if (words.size() != 3) throw ParseError("expected: node <id> <label>", line_no, column);
      if (labels.contains(words[1].first))
        throw ParseError("duplicate vertex id " + words[1].first, line_no, words[1].second);
      vertices.push_back(words[1].first);
      labels.emplace(words[1].first, words[2].first);
    } else if (keyword == "edge") {
      if (words.size() != 3) throw ParseError("expected: edge <id> <id>", line_no, column);
      edges.emplace_back(words[1].first, words[2].first);
      edge_lines.push_back(line_no);
    } else {
      throw ParseError("unknown directive '" + keyword + "'", line_no, column);
    }
  }
  for (std::size_t i = 0; i < edges.size(); ++i) {
    const auto& [a, b] = edges[i];
    if (!labels.contains(a)) throw ParseError("edge endpoint " + a + " is not a vertex", edge_lines[i], 1);
    if (!labels.contains(b)) throw ParseError("edge endpoint " + b + " is not a vertex", edge_lines[i], 1);
    if (a == b) throw ParseError("self-loop on vertex " + a, edge_lines[i], 1);
  }
  return validate_graph(vertices, edges, labels);
}

inline std::string format_graph(const LabeledGraph& g) {
  std::ostringstream out;
  for (Vertex v = 0; v < g.size(); ++v) out << "node " << g.id(v) << ' ' << g.label(v) << '\n';
  for (auto [u, v] : g.edges()) out << "edge " << g.id(u) << ' ' << g.id(v) << '\n';
  return out.str();
}

namespace detail {

inline std::string dot_quote(std::string_view s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace detail

inline std::string to_dot(const LabeledGraph& g, std::string_view name = "G") {
  std::ostringstream out;
  out << "graph " << detail::dot_quote(name) << " {\n";
  for (Vertex v = 0; v < g.size(); ++v)
    out << "  " << detail::dot_quote(g.id(v)) << " [label=" << detail::dot_quote(g.label(v))
        << "];\n";
  for (auto [u, v] : g.edges())
    out << "  " << detail::dot_quote(g.id(u)) << " -- " << detail::dot_quote(g.id(v)) << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace ahn
