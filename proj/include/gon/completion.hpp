#pragma once

#include <algorithm>
#include <filesystem>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gon/gon_format.hpp"
#include "gon/graph.hpp"
#include "gon/isomorphism.hpp"
#include "gon/metrics.hpp"
#include "gon/polygon.hpp"

namespace gon {

struct AddedArc {
  std::string a, b;                   // endpoints, a < b
  std::vector<std::string> interior;  // path order from a
};

struct CompletionStage {
  IncidenceGraph snapshot;
  std::vector<AddedArc> arcs;  // empty for stage 0
};

struct CompletionTrace {
  int n = 0;
  std::vector<CompletionStage> stages;  // stages[0] holds the seed and no arcs
  bool complete = false;

  const IncidenceGraph& seed() const { return stages.front().snapshot; }
  const IncidenceGraph& last() const { return stages.back().snapshot; }
};

// next stage number: one past the largest stage recorded in vertex provenance
inline int next_stage_index(const IncidenceGraph& g) {
  int mx = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const Provenance& p = g.provenance(v);
    if (p.kind != Provenance::Kind::Seed) mx = std::max(mx, p.stage);
  }
  return mx + 1;
}

// One round: a clean arc for every unordered pair at distance exactly n+1,
// all distances measured against the input snapshot.
inline std::pair<IncidenceGraph, std::vector<AddedArc>> complete_stage(
    const IncidenceGraph& g, int stage = -1) {
  int gr = girth(g);
  if (gr != -1 && gr < 2 * g.n())
    throw Error("GIRTH", "input girth " + std::to_string(gr) + " is below " +
                             std::to_string(2 * g.n()));
  if (stage < 0) stage = next_stage_index(g);

  const int V = g.vertex_count();
  std::vector<AddedArc> arcs;
  for (int u = 0; u < V; ++u) {
    std::vector<int> dist = distances_from(g, u);
    for (int w = u + 1; w < V; ++w)
      if (dist[w] == g.n() + 1) {
        AddedArc arc;
        arc.a = std::min(g.id_of(u), g.id_of(w));
        arc.b = std::max(g.id_of(u), g.id_of(w));
        arcs.push_back(arc);
      }
  }
  std::sort(arcs.begin(), arcs.end(), [](const AddedArc& l, const AddedArc& r) {
    return std::tie(l.a, l.b) < std::tie(r.a, r.b);
  });

  GraphBuilder b = GraphBuilder::from(g);
  for (auto& arc : arcs) {
    std::string prev = arc.a;
    Part prev_part = g.part(arc.a);
    for (int k = 0; k < g.n() - 2; ++k) {
      std::string id = "s" + std::to_string(stage) + "." + arc.a + "-" + arc.b + "." +
                       std::to_string(k);
      if (g.has(id))
        throw Error("ID_COLLISION", "generated id '" + id + "' already in graph");
      b.add_vertex(id, opposite(prev_part), Provenance::arc(stage, arc.a, arc.b, k));
      b.add_edge(prev, id);
      arc.interior.push_back(id);
      prev = id;
      prev_part = opposite(prev_part);
    }
    b.add_edge(prev, arc.b);
  }
  return {b.build(), arcs};
}

inline CompletionTrace complete(const IncidenceGraph& g, int stages) {
  CompletionTrace t;
  t.n = g.n();
  t.stages.push_back({g, {}});
  for (int s = 0; s < stages; ++s) {
    auto [next, arcs] = complete_stage(t.last());
    if (arcs.empty()) {
      t.complete = true;
      break;
    }
    t.stages.push_back({std::move(next), std::move(arcs)});
  }
  return t;
}

struct ResolveResult {
  CompletionTrace trace;
  std::optional<int> resolved_at;  // nullopt = NOT_RESOLVED
};

// Smallest stage whose snapshot brings every pair of seed vertices within
// distance n. Only a conclusive negative of the non-degeneracy check blocks.
inline ResolveResult complete_until_core_resolved(const IncidenceGraph& g, int max_stages,
                                                  long long budget = 1000000) {
  NondegeneracyReport nd = check_nondegenerate(g, budget);
  if (nd.verdict == Ternary::No)
    throw Error("DEGENERATE_SEED", "seed fails the non-degeneracy check");

  auto seed_pairs_within = [&](const IncidenceGraph& snap) {
    for (const auto& id : g.ids()) {
      std::vector<int> dist = distances_from(snap, snap.index_of(id));
      for (const auto& other : g.ids()) {
        int d = dist[snap.index_of(other)];
        if (d < 0 || d > g.n()) return false;
      }
    }
    return true;
  };

  CompletionTrace t;
  t.n = g.n();
  t.stages.push_back({g, {}});
  if (seed_pairs_within(g)) return {std::move(t), 0};
  for (int s = 1; s <= max_stages; ++s) {
    auto [next, arcs] = complete_stage(t.last());
    if (arcs.empty()) {
      t.complete = true;  // nothing more will ever change
      return {std::move(t), std::nullopt};
    }
    t.stages.push_back({std::move(next), std::move(arcs)});
    if (seed_pairs_within(t.last())) return {std::move(t), s};
  }
  return {std::move(t), std::nullopt};
}

namespace detail {

// closed-walk tolerant: drops a repeated final vertex, checks simplicity
inline std::vector<std::string> normalize_cycle(const GraphPath& cycle) {
  std::vector<std::string> vs = cycle.vertices;
  if (vs.size() >= 2 && vs.front() == vs.back()) vs.pop_back();
  if (vs.size() < 4 || vs.size() % 2 != 0)
    throw Error("BAD_CYCLE", "cycle must have even length at least 4");
  std::set<std::string> seen(vs.begin(), vs.end());
  if (seen.size() != vs.size())
    throw Error("BAD_CYCLE", "cycle revisits a vertex");
  return vs;
}

}  // namespace detail

inline std::string opposite_in_cycle(const GraphPath& cycle, const std::string& x) {
  std::vector<std::string> vs = detail::normalize_cycle(cycle);
  for (size_t i = 0; i < vs.size(); ++i)
    if (vs[i] == x) return vs[(i + vs.size() / 2) % vs.size()];
  throw Error("NOT_ON_CYCLE", "vertex '" + x + "' is not on the cycle");
}

struct TransferResult {
  std::string y_prime;
  IncidenceGraph context;  // the graph y_prime lives in (input, or input plus one stage)
};

// y' is the arc vertex next to the opposite of x on the length-(n-1) path
// from y; building the arc takes at most one completion stage.
inline TransferResult transfer_neighbor(const IncidenceGraph& g, const GraphPath& cycle,
                                        const std::string& x, const std::string& y,
                                        bool allow_build = true) {
  std::vector<std::string> vs = detail::normalize_cycle(cycle);
  if (static_cast<int>(vs.size()) != 2 * g.n())
    throw Error("BAD_CYCLE", "cycle length " + std::to_string(vs.size()) + " is not 2n");
  for (size_t i = 0; i < vs.size(); ++i)
    if (!g.adjacent(vs[i], vs[(i + 1) % vs.size()]))
      throw Error("BAD_CYCLE", "cycle edge " + vs[i] + " " + vs[(i + 1) % vs.size()] +
                                   " missing from graph");
  if (std::find(vs.begin(), vs.end(), y) != vs.end())
    throw Error("Y_ON_CYCLE", "'" + y + "' lies on the cycle");
  if (!g.adjacent(x, y))
    throw Error("NOT_ADJACENT", "'" + y + "' is not a neighbor of '" + x + "'");
  std::string xo = opposite_in_cycle(cycle, x);

  IncidenceGraph ctx = g;
  if (distance(g, y, xo) != g.n() - 1) {
    if (!allow_build)
      throw Error("MISSING_ARC", "no arc from '" + y + "' to '" + xo +
                                     "' and building is disallowed");
    ctx = complete_stage(g).first;
    if (distance(ctx, y, xo) != g.n() - 1)
      throw Error("MISSING_ARC", "one completion stage did not connect '" + y +
                                     "' to '" + xo + "'");
  }

  std::vector<std::string> candidates;
  for (const auto& u : ctx.neighbor_ids(xo))
    if (distance(ctx, y, u) == g.n() - 2) candidates.push_back(u);
  if (candidates.empty())
    throw Error("MISSING_ARC", "no neighbor of '" + xo + "' at distance n-2 from '" + y + "'");
  if (candidates.size() > 1)
    throw Error("AMBIGUOUS", "several neighbors of '" + xo + "' at distance n-2 from '" +
                                 y + "'");
  std::string yp = candidates[0];

  // exchange check: one completion stage over cycle+y and over cycle+y'
  // must give the same graph up to isomorphism
  auto pendant_config = [&](const std::string& anchor, const std::string& leaf,
                            Part leaf_part) {
    GraphBuilder b(g.n());
    for (const auto& id : vs) b.add_vertex(id, g.part(id));
    for (size_t i = 0; i < vs.size(); ++i) b.add_edge(vs[i], vs[(i + 1) % vs.size()]);
    b.add_vertex(leaf, leaf_part);
    b.add_edge(anchor, leaf);
    return b.build();
  };
  IncidenceGraph with_y = complete_stage(pendant_config(x, y, g.part(y))).first;
  IncidenceGraph with_yp =
      complete_stage(pendant_config(xo, "y'", opposite(g.part(xo)))).first;
  if (!isomorphic(with_y, with_yp))
    throw Error("EXCHANGE", "one-stage completions over the two pendants differ");

  return {yp, std::move(ctx)};
}

// Sub-completion generated by A: stage by stage, ambient arcs with both
// endpoints already inside are adopted together with their interiors.
inline CompletionTrace generated_subgon(const CompletionTrace& trace,
                                        const std::vector<std::string>& A) {
  const IncidenceGraph& seed = trace.seed();
  std::set<std::string> inside(A.begin(), A.end());
  for (const auto& id : A)
    if (!seed.has(id))
      throw Error("UNKNOWN_VERTEX", "'" + id + "' is not a seed vertex");
  std::vector<std::string> rest;
  for (const auto& id : seed.ids())
    if (!inside.count(id)) rest.push_back(id);
  if (!is_open_over(rest, A, seed).open)
    throw Error("NOT_STRONGLY_EMBEDDED",
                "the rest of the seed is not open over the selected set");

  CompletionTrace sub;
  sub.n = trace.n;
  sub.complete = trace.complete;
  IncidenceGraph cur = seed.induced(A);
  sub.stages.push_back({cur, {}});
  for (size_t s = 1; s < trace.stages.size(); ++s) {
    const IncidenceGraph& ambient = trace.stages[s].snapshot;
    std::vector<AddedArc> adopted;
    GraphBuilder b = GraphBuilder::from(cur);
    for (const auto& arc : trace.stages[s].arcs) {
      if (!inside.count(arc.a) || !inside.count(arc.b)) continue;
      adopted.push_back(arc);
      std::string prev = arc.a;
      for (const auto& mid : arc.interior) {
        b.add_vertex(mid, ambient.part(mid), ambient.provenance(mid));
        b.add_edge(prev, mid);
        prev = mid;
      }
      b.add_edge(prev, arc.b);
    }
    for (const auto& arc : adopted)
      inside.insert(arc.interior.begin(), arc.interior.end());
    cur = b.build();
    sub.stages.push_back({cur, std::move(adopted)});
  }
  return sub;
}

// On-disk form: stage0.gon, stage1.gon, ... plus arcs.txt
inline void write_trace(const CompletionTrace& t, const std::string& dir) {
  std::filesystem::create_directories(dir);
  for (size_t i = 0; i < t.stages.size(); ++i)
    write_text_file(dir + "/stage" + std::to_string(i) + ".gon",
                    serialize_gon(t.stages[i].snapshot));
  std::string arcs;
  for (size_t i = 1; i < t.stages.size(); ++i) {
    arcs += "stage " + std::to_string(i) + "\n";
    for (const auto& arc : t.stages[i].arcs) {
      arcs += "arc " + arc.a + " " + arc.b + " :";
      for (const auto& mid : arc.interior) arcs += " " + mid;
      arcs += "\n";
    }
  }
  if (t.complete) arcs += "complete\n";
  write_text_file(dir + "/arcs.txt", arcs);
}

inline CompletionTrace read_trace(const std::string& dir) {
  std::vector<IncidenceGraph> snaps;
  for (int i = 0;; ++i) {
    std::string path = dir + "/stage" + std::to_string(i) + ".gon";
    if (!std::filesystem::exists(path)) break;
    snaps.push_back(parse_gon(read_text_file(path)));
  }
  if (snaps.empty()) throw Error("BAD_TRACE", "no stage0.gon in '" + dir + "'");

  CompletionTrace t;
  t.n = snaps[0].n();
  t.stages.push_back({snaps[0], {}});

  std::istringstream in(read_text_file(dir + "/arcs.txt"));
  std::string line;
  int lineno = 0;
  size_t stage = 0;
  std::vector<std::vector<AddedArc>> per_stage(snaps.size());
  bool complete = false;
  while (std::getline(in, line)) {
    ++lineno;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    std::istringstream ls(line);
    std::string word;
    if (!(ls >> word) || word[0] == '#') continue;
    std::string at = "arcs.txt line " + std::to_string(lineno) + ": ";
    if (word == "stage") {
      size_t k;
      if (!(ls >> k) || k != stage + 1 || k >= snaps.size())
        throw Error("BAD_TRACE", at + "stage numbers must step through 1.." +
                                     std::to_string(snaps.size() - 1));
      stage = k;
    } else if (word == "arc") {
      if (stage == 0) throw Error("BAD_TRACE", at + "arc before any stage line");
      AddedArc arc;
      std::string colon;
      if (!(ls >> arc.a >> arc.b >> colon) || colon != ":")
        throw Error("BAD_TRACE", at + "expected 'arc <a> <b> : <interior...>'");
      std::string mid;
      while (ls >> mid) arc.interior.push_back(mid);
      if (static_cast<int>(arc.interior.size()) != t.n - 2)
        throw Error("BAD_TRACE", at + "interior must have n-2 vertices");
      per_stage[stage].push_back(std::move(arc));
    } else if (word == "complete") {
      complete = true;
    } else {
      throw Error("BAD_TRACE", at + "unknown directive '" + word + "'");
    }
  }
  t.complete = complete;

  for (size_t s = 1; s < snaps.size(); ++s) {
    const IncidenceGraph& prev = t.stages.back().snapshot;
    GraphBuilder b = GraphBuilder::from(prev);
    for (const auto& arc : per_stage[s]) {
      if (!prev.has(arc.a) || !prev.has(arc.b) ||
          distance(prev, arc.a, arc.b) != t.n + 1)
        throw Error("BAD_TRACE", "stage " + std::to_string(s) + " arc " + arc.a + " " +
                                     arc.b + ": endpoints not at distance n+1");
      std::string prev_v = arc.a;
      for (size_t k = 0; k < arc.interior.size(); ++k) {
        if (!snaps[s].has(arc.interior[k]))
          throw Error("BAD_TRACE", "stage " + std::to_string(s) + ": interior vertex '" +
                                       arc.interior[k] + "' missing from snapshot");
        b.add_vertex(arc.interior[k], snaps[s].part(arc.interior[k]),
                     Provenance::arc(static_cast<int>(s), arc.a, arc.b,
                                     static_cast<int>(k)));
        b.add_edge(prev_v, arc.interior[k]);
        prev_v = arc.interior[k];
      }
      b.add_edge(prev_v, arc.b);
    }
    IncidenceGraph rebuilt = b.build();
    if (!(rebuilt == snaps[s]))
      throw Error("BAD_TRACE", "stage " + std::to_string(s) +
                                   ".gon does not equal the previous stage plus its arcs");
    t.stages.push_back({std::move(rebuilt), per_stage[s]});
  }
  return t;
}

}  // namespace gon
