#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gon/completion.hpp"
#include "gon/graph.hpp"
#include "gon/metrics.hpp"
#include "gon/normalize.hpp"
#include "gon/polygon.hpp"

namespace gon {

// A showcase graph together with the named vertex sets and checked claims
// that make it interesting. Everything in `assertions` held when the bundle
// was built, and reverify() can recompute each claim from the graph and the
// distinguished sets alone.
struct Assertion {
  std::string name;
  bool checked = false;
};

struct WitnessBundle {
  IncidenceGraph graph;
  std::map<std::string, std::vector<std::string>> distinguished;
  std::vector<Assertion> assertions;

  const std::vector<std::string>& set(const std::string& name) const {
    auto it = distinguished.find(name);
    if (it == distinguished.end())
      throw Error("BAD_BUNDLE", "no distinguished set named '" + name + "'");
    return it->second;
  }
};

namespace detail {

inline std::string xid(int j) { return "x" + std::to_string(j); }

inline std::string arc_vertex(int i, int k) {
  return "g" + std::to_string(i) + "." + std::to_string(k);
}

// The rotation/swap map of the acl-dcl bundles is determined by the vertex
// naming scheme, so it can be rebuilt from a parsed bundle.
inline std::map<std::string, std::string> acl_dcl_map(const WitnessBundle& b) {
  int n = b.graph.n();
  std::map<std::string, std::string> m;
  if (n % 2 == 1) {
    int len = 2 * n + 2;
    for (int j = 0; j < len; ++j) m[xid(j)] = xid((j + n + 1) % len);
    for (int i = 0; i <= n; ++i)
      for (int k = 1; k <= n - 2; ++k) m[arc_vertex(i, k)] = arc_vertex(i, n - 1 - k);
  } else {
    int len = 2 * n;
    for (int j = 0; j < len; ++j) m[xid(j)] = xid((j + n) % len);
    for (int i = 1; i <= n; ++i) {
      std::string y = "y" + std::to_string(i);
      m[y] = arc_vertex(i, n - 2);
      m[arc_vertex(i, n - 2)] = y;
      for (int k = 1; k < n - 2; ++k) m[arc_vertex(i, k)] = arc_vertex(i, n - 2 - k);
    }
  }
  return m;
}

inline bool is_automorphism(const IncidenceGraph& g,
                            const std::map<std::string, std::string>& m) {
  if (static_cast<int>(m.size()) != g.vertex_count()) return false;
  std::set<std::string> image;
  for (const auto& [src, dst] : m) {
    if (!g.has(src) || !g.has(dst)) return false;
    if (g.part(src) != g.part(dst)) return false;
    if (!image.insert(dst).second) return false;
  }
  for (const auto& [u, w] : g.edges())
    if (!g.adjacent(m.at(u), m.at(w))) return false;
  return true;
}

inline std::vector<std::string> without(const std::vector<std::string>& all,
                                        const std::vector<std::string>& drop) {
  std::set<std::string> gone(drop.begin(), drop.end());
  std::vector<std::string> kept;
  for (const auto& id : all)
    if (!gone.count(id)) kept.push_back(id);
  return kept;
}

inline bool girth_sane(const IncidenceGraph& g) {
  int gi = girth(g);
  return gi == -1 || gi >= 2 * g.n();
}

}  // namespace detail

// -- the acl != dcl configurations -----------------------------------------

inline WitnessBundle acl_dcl_witness(int n) {
  if (n < 3) throw Error("BAD_GONALITY", "gonality must be at least 3");
  WitnessBundle b;
  GraphBuilder gb(n);
  std::vector<std::string> cycle, midpoints, all;

  if (n % 2 == 1) {
    // a (2n+2)-cycle with an arc joining every antipodal-plus-one pair;
    // rotating halfway around maps each arc to itself reversed
    int len = 2 * n + 2;
    for (int j = 0; j < len; ++j) {
      gb.add_vertex(detail::xid(j), j % 2 == 0 ? Part::Point : Part::Line);
      cycle.push_back(detail::xid(j));
    }
    for (int j = 0; j < len; ++j) gb.add_edge(detail::xid(j), detail::xid((j + 1) % len));
    for (int i = 0; i <= n; ++i) {
      std::string prev = detail::xid(i);
      Part p = i % 2 == 0 ? Part::Point : Part::Line;
      for (int k = 1; k <= n - 2; ++k) {
        p = opposite(p);
        gb.add_vertex(detail::arc_vertex(i, k), p);
        gb.add_edge(prev, detail::arc_vertex(i, k));
        prev = detail::arc_vertex(i, k);
      }
      gb.add_edge(prev, detail::xid((i + n + 1) % len));
      midpoints.push_back(detail::arc_vertex(i, (n - 1) / 2));
    }
  } else {
    // a 2n-cycle with a pendant y_i on x_i and the length-(n-1) path from
    // y_i to the opposite vertex x_{i+n}; swapping y_i with the path vertex
    // z_i next to x_{i+n} extends to a half-rotation of the whole bundle
    int len = 2 * n;
    std::vector<std::string> pendants, transfers;
    for (int j = 0; j < len; ++j) {
      gb.add_vertex(detail::xid(j), j % 2 == 0 ? Part::Point : Part::Line);
      cycle.push_back(detail::xid(j));
    }
    for (int j = 0; j < len; ++j) gb.add_edge(detail::xid(j), detail::xid((j + 1) % len));
    for (int i = 1; i <= n; ++i) {
      std::string y = "y" + std::to_string(i);
      Part xpart = i % 2 == 0 ? Part::Point : Part::Line;
      gb.add_vertex(y, opposite(xpart));
      gb.add_edge(detail::xid(i), y);
      pendants.push_back(y);
      std::string prev = y;
      Part q = opposite(xpart);
      for (int k = 1; k <= n - 2; ++k) {
        q = opposite(q);
        gb.add_vertex(detail::arc_vertex(i, k), q);
        gb.add_edge(prev, detail::arc_vertex(i, k));
        prev = detail::arc_vertex(i, k);
      }
      gb.add_edge(prev, detail::xid((i + n) % len));
      transfers.push_back(detail::arc_vertex(i, n - 2));
      midpoints.push_back(detail::arc_vertex(i, (n - 2) / 2));
    }
    b.distinguished["pendants"] = pendants;
    b.distinguished["transfers"] = transfers;
  }

  b.graph = gb.build();
  all = b.graph.ids();
  std::sort(cycle.begin(), cycle.end());
  std::sort(midpoints.begin(), midpoints.end());
  b.distinguished["A"] = cycle;
  b.distinguished["midpoints"] = midpoints;
  b.distinguished["C"] = all;

  auto m = detail::acl_dcl_map(b);
  bool autom = detail::is_automorphism(b.graph, m);
  bool fixes = true;
  for (const auto& id : midpoints)
    if (m.at(id) != id) fixes = false;
  bool moves = true;
  std::set<std::string> aset(cycle.begin(), cycle.end());
  for (const auto& id : cycle) {
    if (m.at(id) == id) moves = false;
    if (!aset.count(m.at(id))) moves = false;
  }
  bool closed = is_closed_over(detail::without(all, midpoints), midpoints, b.graph);
  bool partial = check_partial(b.graph).verdict;

  b.assertions = {{"partial", partial},
                  {"automorphism", autom},
                  {"fixes_midpoints", fixes},
                  {"moves_cycle", moves},
                  {"closed_over_midpoints", closed}};
  for (const auto& a : b.assertions)
    if (!a.checked) throw Error("ASSERTION", "'" + a.name + "' failed at build");
  return b;
}

// -- the non-superstability ladder prefix -----------------------------------

inline WitnessBundle ladder_prefix(int n, int rungs, int stage_budget) {
  if (n < 3) throw Error("BAD_GONALITY", "gonality must be at least 3");
  if (rungs < 0) throw Error("BAD_RUNGS", "rung count cannot be negative");
  if (stage_budget < rungs)
    throw Error("BUDGET", "rung " + std::to_string(stage_budget + 1) +
                              " needs a vertex from completion stage " +
                              std::to_string(stage_budget + 1) +
                              "; raise the stage budget");

  int depth = (n + 1) / 2 - 1;
  CompletionTrace trace = complete(gamma_k(n, n + 3), stage_budget);
  WitnessBundle b;
  std::vector<std::string> seed, rung_ids, joints;
  for (int i = 0; i <= n + 3; ++i) seed.push_back(detail::xid(i));

  GraphBuilder gb = GraphBuilder::from(trace.last());
  IncidenceGraph cur = trace.last();

  auto add_pendant = [&](const std::string& anchor, const std::string& id) {
    gb.add_vertex(id, opposite(cur.part(anchor)));
    gb.add_edge(anchor, id);
  };

  add_pendant(detail::xid(n + 3), "z0");
  joints.push_back("z0");

  std::string prev_joint = "z0";
  for (int i = 1; i <= rungs; ++i) {
    cur = gb.build();

    // a stage-i vertex far enough from the previous stage, and far enough
    // from the previous joint that the connecting path keeps the girth
    std::string y;
    auto from_prev_joint = distances_from(cur, cur.index_of(prev_joint));
    for (const auto& id : cur.ids()) {
      const Provenance& p = cur.provenance(id);
      if (p.kind != Provenance::Kind::Arc || p.stage != i) continue;
      if (std::min(p.pos + 1, n - 2 - p.pos) < depth) continue;
      if (from_prev_joint[cur.index_of(id)] < n - 1) continue;
      y = id;
      break;
    }
    if (y.empty())
      throw Error("BUDGET", "no stage-" + std::to_string(i) +
                                " vertex is deep and far enough for rung " + std::to_string(i));
    rung_ids.push_back(y);

    std::string z = "z" + std::to_string(i);
    add_pendant(y, z);
    joints.push_back(z);

    IncidenceGraph with_z = gb.build();
    int len = with_z.part(prev_joint) == with_z.part(z) ? 0 : 1;
    len = (n - 1) % 2 == len % 2 ? n - 1 : n;
    std::string prev = prev_joint;
    Part p = with_z.part(prev_joint);
    for (int k = 1; k < len; ++k) {
      std::string id = "l" + std::to_string(i) + "." + std::to_string(k);
      p = opposite(p);
      gb.add_vertex(id, p);
      gb.add_edge(prev, id);
      prev = id;
    }
    gb.add_edge(prev, z);
    b.distinguished["lambda" + std::to_string(i)] = [&] {
      std::vector<std::string> ids;
      for (int k = 1; k < len; ++k) ids.push_back("l" + std::to_string(i) + "." + std::to_string(k));
      return ids;
    }();
    prev_joint = z;
  }

  b.graph = gb.build();
  b.distinguished["seed"] = seed;
  b.distinguished["rungs"] = rung_ids;
  b.distinguished["joints"] = joints;

  bool open = is_open(b.graph).open;
  bool over = is_open_over(detail::without(b.graph.ids(), seed), seed, b.graph).open;
  bool girth_ok = detail::girth_sane(b.graph);
  b.assertions = {{"open", open}, {"seed_relatively_open", over}, {"girth", girth_ok}};
  for (int i = 1; i <= rungs; ++i) {
    const auto& lam = b.distinguished["lambda" + std::to_string(i)];
    std::string za = "z" + std::to_string(i - 1), zb = "z" + std::to_string(i);
    bool path_ok = true;
    std::string prev = za;
    for (const auto& id : lam) {
      if (!b.graph.adjacent(prev, id)) path_ok = false;
      prev = id;
    }
    if (!b.graph.adjacent(prev, zb)) path_ok = false;
    bool drop_ok = detail::girth_sane(b.graph.induced(detail::without(b.graph.ids(), lam)));
    b.assertions.push_back({"lambda" + std::to_string(i) + "_endpoints", path_ok});
    b.assertions.push_back({"lambda" + std::to_string(i) + "_removal_sane", drop_ok});
  }
  for (const auto& a : b.assertions)
    if (!a.checked) throw Error("ASSERTION", "'" + a.name + "' failed at build");
  return b;
}

// Seven points, seven lines, three points per line: the smallest thick
// projective plane, handy as a stock weak-but-not-open input.
inline IncidenceGraph fano_plane() {
  GraphBuilder gb(3);
  for (int i = 1; i <= 7; ++i) {
    gb.add_vertex("p" + std::to_string(i), Part::Point);
    gb.add_vertex("l" + std::to_string(i), Part::Line);
  }
  const int lines[7][3] = {{1, 2, 3}, {1, 4, 5}, {1, 6, 7}, {2, 4, 6},
                           {2, 5, 7}, {3, 4, 7}, {3, 5, 6}};
  for (int i = 0; i < 7; ++i)
    for (int j = 0; j < 3; ++j)
      gb.add_edge("l" + std::to_string(i + 1), "p" + std::to_string(lines[i][j]));
  return gb.build();
}

// -- re-verification and serialization --------------------------------------

inline bool reverify(const WitnessBundle& b) {
  const IncidenceGraph& g = b.graph;
  for (const auto& a : b.assertions) {
    bool ok;
    if (a.name == "partial") {
      ok = check_partial(g).verdict;
    } else if (a.name == "automorphism") {
      ok = detail::is_automorphism(g, detail::acl_dcl_map(b));
    } else if (a.name == "fixes_midpoints") {
      auto m = detail::acl_dcl_map(b);
      ok = true;
      for (const auto& id : b.set("midpoints"))
        if (m.at(id) != id) ok = false;
    } else if (a.name == "moves_cycle") {
      auto m = detail::acl_dcl_map(b);
      const auto& cyc = b.set("A");
      std::set<std::string> aset(cyc.begin(), cyc.end());
      ok = true;
      for (const auto& id : cyc)
        if (m.at(id) == id || !aset.count(m.at(id))) ok = false;
    } else if (a.name == "closed_over_midpoints") {
      ok = is_closed_over(detail::without(g.ids(), b.set("midpoints")), b.set("midpoints"), g);
    } else if (a.name == "open") {
      ok = is_open(g).open;
    } else if (a.name == "seed_relatively_open") {
      ok = is_open_over(detail::without(g.ids(), b.set("seed")), b.set("seed"), g).open;
    } else if (a.name == "girth") {
      ok = detail::girth_sane(g);
    } else if (a.name.rfind("lambda", 0) == 0 &&
               a.name.find("_endpoints") != std::string::npos) {
      std::string idx = a.name.substr(6, a.name.size() - 6 - 10);
      const auto& lam = b.set("lambda" + idx);
      std::string prev = "z" + std::to_string(std::stoi(idx) - 1);
      ok = true;
      for (const auto& id : lam) {
        if (!g.adjacent(prev, id)) ok = false;
        prev = id;
      }
      if (!g.adjacent(prev, "z" + idx)) ok = false;
    } else if (a.name.rfind("lambda", 0) == 0 &&
               a.name.find("_removal_sane") != std::string::npos) {
      std::string idx = a.name.substr(6, a.name.size() - 6 - 13);
      ok = detail::girth_sane(g.induced(detail::without(g.ids(), b.set("lambda" + idx))));
    } else {
      throw Error("BAD_BUNDLE", "unknown assertion '" + a.name + "'");
    }
    if (ok != a.checked) return false;
  }
  return true;
}

inline std::string serialize_sets(const WitnessBundle& b) {
  std::ostringstream out;
  for (const auto& [name, ids] : b.distinguished) {
    out << name;
    for (const auto& id : ids) out << " " << id;
    out << "\n";
  }
  return out.str();
}

inline std::string serialize_asserts(const WitnessBundle& b) {
  std::ostringstream out;
  for (const auto& a : b.assertions) out << a.name << " " << (a.checked ? "pass" : "fail") << "\n";
  return out.str();
}

inline WitnessBundle parse_bundle(const std::string& graph_text, const std::string& sets_text,
                                  const std::string& asserts_text) {
  WitnessBundle b;
  b.graph = parse_gon(graph_text);
  std::istringstream sets(sets_text);
  std::string line;
  while (std::getline(sets, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string name, id;
    ls >> name;
    if (name.empty()) throw Error("PARSE", "set line without a name");
    std::vector<std::string> ids;
    while (ls >> id) {
      if (!b.graph.has(id))
        throw Error("PARSE", "set '" + name + "' names unknown vertex '" + id + "'");
      ids.push_back(id);
    }
    b.distinguished[name] = ids;
  }
  std::istringstream asserts(asserts_text);
  while (std::getline(asserts, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string name, verdict;
    ls >> name >> verdict;
    if (verdict != "pass" && verdict != "fail")
      throw Error("PARSE", "assertion '" + name + "' must be pass or fail");
    b.assertions.push_back({name, verdict == "pass"});
  }
  return b;
}

}  // namespace gon
