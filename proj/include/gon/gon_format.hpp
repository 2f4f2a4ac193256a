#pragma once

#include <fstream>
#include <sstream>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <vector>

#include "gon/graph.hpp"

namespace gon {

// Text format, one directive per line:
//   gon <n>        header, required first
//   v <id> <P|L>   vertex
//   e <id> <id>    edge between declared vertices
// Lines starting with '#' and blank lines are ignored.

inline IncidenceGraph parse_gon(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_header = false;
  int n = 0;
  struct VSeen {
    Part part;
  };
  std::unordered_map<std::string, VSeen> seen;
  std::unordered_set<std::string> edge_keys;
  std::vector<std::pair<std::string, Part>> verts;
  std::vector<std::pair<std::string, std::string>> edges;

  auto fail = [&](const std::string& code, const std::string& msg) -> void {
    throw Error(code, "line " + std::to_string(lineno) + ": " + msg);
  };

  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::vector<std::string> tok;
    std::string t;
    while (ls >> t) tok.push_back(t);
    if (tok.empty() || tok[0][0] == '#') continue;

    if (!have_header) {
      if (tok[0] != "gon") fail("BAD_HEADER", "expected 'gon <n>' before any other directive");
      if (tok.size() != 2) fail("BAD_HEADER", "expected 'gon <n>'");
      size_t used = 0;
      try {
        n = std::stoi(tok[1], &used);
      } catch (const std::exception&) {
        fail("BAD_N", "'" + tok[1] + "' is not an integer");
      }
      if (used != tok[1].size()) fail("BAD_N", "'" + tok[1] + "' is not an integer");
      if (n < 3) fail("BAD_N", "gonality must be at least 3, got " + tok[1]);
      have_header = true;
      continue;
    }

    if (tok[0] == "gon") fail("MALFORMED_LINE", "duplicate header");

    if (tok[0] == "v") {
      if (tok.size() != 3) fail("MALFORMED_LINE", "expected 'v <id> <P|L>'");
      if (!valid_vertex_id(tok[1]))
        fail("MALFORMED_LINE", "invalid vertex id '" + tok[1] + "'");
      Part p;
      if (tok[2] == "P")
        p = Part::Point;
      else if (tok[2] == "L")
        p = Part::Line;
      else {
        fail("BAD_PART", "part must be P or L, got '" + tok[2] + "'");
        continue;
      }
      if (!seen.emplace(tok[1], VSeen{p}).second)
        fail("DUPLICATE_VERTEX", "vertex '" + tok[1] + "' already declared");
      verts.emplace_back(tok[1], p);
      continue;
    }

    if (tok[0] == "e") {
      if (tok.size() != 3) fail("MALFORMED_LINE", "expected 'e <id> <id>'");
      auto a = seen.find(tok[1]);
      auto b = seen.find(tok[2]);
      if (a == seen.end()) fail("UNKNOWN_ENDPOINT", "no vertex '" + tok[1] + "'");
      if (b == seen.end()) fail("UNKNOWN_ENDPOINT", "no vertex '" + tok[2] + "'");
      if (tok[1] == tok[2]) fail("SELF_LOOP", "edge from '" + tok[1] + "' to itself");
      if (a->second.part == b->second.part)
        fail("CROSS_PART", "edge '" + tok[1] + "' -- '" + tok[2] + "' joins vertices of the same part");
      std::string key = tok[1] < tok[2] ? tok[1] + "\t" + tok[2] : tok[2] + "\t" + tok[1];
      if (!edge_keys.insert(key).second)
        fail("DUPLICATE_EDGE", "edge '" + tok[1] + "' -- '" + tok[2] + "' already declared");
      edges.emplace_back(tok[1], tok[2]);
      continue;
    }

    fail("MALFORMED_LINE", "unknown directive '" + tok[0] + "'");
  }

  if (!have_header) {
    lineno = lineno == 0 ? 1 : lineno;
    throw Error("BAD_HEADER", "line " + std::to_string(lineno) + ": missing 'gon <n>' header");
  }

  GraphBuilder builder(n);
  for (const auto& [id, p] : verts) builder.add_vertex(id, p);
  for (const auto& [a, b] : edges) builder.add_edge(a, b);
  return builder.build();
}

inline std::string serialize_gon(const IncidenceGraph& g) {
  std::ostringstream out;
  out << "gon " << g.n() << "\n";
  for (const auto& id : g.ids()) out << "v " << id << " " << part_char(g.part(id)) << "\n";
  for (const auto& [a, b] : g.edges()) out << "e " << a << " " << b << "\n";
  return out.str();
}

inline std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("IO", "cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline void write_text_file(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("IO", "cannot write '" + path + "'");
  out << content;
}

}  // namespace gon
