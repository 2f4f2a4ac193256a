#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "gon/completion.hpp"
#include "gon/gon_format.hpp"
#include "gon/graph.hpp"
#include "gon/metrics.hpp"
#include "gon/polygon.hpp"
#include "gon/rank.hpp"

namespace gon {

// -- hat-racks ----------------------------------------------------------

struct HatRack {
  int n = 3;
  int spine_length = 0;      // spine x_0 .. x_k
  std::map<int, int> pendants;  // interior spine position -> pendant count

  bool free_ready() const { return spine_length >= n + 3; }

  long long delta() const {
    long long total = n + spine_length - 1;
    for (const auto& [pos, count] : pendants) total += count;
    return total;
  }
};

inline std::string to_string(const HatRack& h) {
  std::ostringstream out;
  out << "hatrack n=" << h.n << " spine=" << h.spine_length;
  for (const auto& [pos, count] : h.pendants) out << " " << pos << ":" << count;
  return out.str();
}

inline IncidenceGraph realize(const HatRack& h) {
  GraphBuilder b(h.n);
  for (int i = 0; i <= h.spine_length; ++i)
    b.add_vertex("x" + std::to_string(i), i % 2 == 0 ? Part::Point : Part::Line);
  for (int i = 0; i < h.spine_length; ++i)
    b.add_edge("x" + std::to_string(i), "x" + std::to_string(i + 1));
  for (const auto& [pos, count] : h.pendants) {
    if (pos < 1 || pos >= h.spine_length)
      throw Error("BAD_POSITION", "pendants must sit on interior spine vertices");
    std::string spine = "x" + std::to_string(pos);
    for (int j = 0; j < count; ++j) {
      std::string id = spine + ".p" + std::to_string(j);
      b.add_vertex(id, pos % 2 == 0 ? Part::Line : Part::Point);
      b.add_edge(spine, id);
    }
  }
  return b.build();
}

namespace detail {

inline bool is_tree(const IncidenceGraph& g) {
  return g.vertex_count() > 0 && is_connected(g) &&
         g.edge_count() == g.vertex_count() - 1;
}

// Lexicographically least vertex sequence among the longest simple paths.
inline std::vector<std::string> tree_longest_path(const IncidenceGraph& g) {
  int best_len = -1;
  std::vector<std::string> best;
  for (int t = 0; t < g.vertex_count(); ++t) {
    std::vector<int> dist(g.vertex_count(), -1), parent(g.vertex_count(), -1);
    std::vector<int> queue = {t};
    dist[t] = 0;
    for (size_t qi = 0; qi < queue.size(); ++qi) {
      int v = queue[qi];
      for (int w : g.neighbors(v))
        if (dist[w] < 0) {
          dist[w] = dist[v] + 1;
          parent[w] = v;
          queue.push_back(w);
        }
    }
    for (int s = 0; s < g.vertex_count(); ++s) {
      if (dist[s] < best_len) continue;
      std::vector<std::string> path;
      for (int v = s; v >= 0; v = parent[v]) path.push_back(g.id_of(v));
      if (dist[s] > best_len || path < best) {
        best_len = dist[s];
        best = path;
      }
    }
  }
  return best;
}

inline std::string fresh_id(const std::set<std::string>& used, std::string base) {
  while (used.count(base)) base += "'";
  return base;
}

}  // namespace detail

// Read a spine-plus-pendants tree back off the graph.
inline HatRack hatrack_from_tree(const IncidenceGraph& g) {
  if (!detail::is_tree(g)) throw Error("NOT_HATRACK", "input is not a tree");
  std::vector<std::string> spine = detail::tree_longest_path(g);
  std::map<std::string, int> position;
  for (size_t i = 0; i < spine.size(); ++i) position[spine[i]] = static_cast<int>(i);
  HatRack h;
  h.n = g.n();
  h.spine_length = static_cast<int>(spine.size()) - 1;
  for (const auto& id : g.ids()) {
    if (position.count(id)) continue;
    if (g.degree(id) != 1)
      throw Error("NOT_HATRACK", "'" + id + "' is more than one step off the spine");
    std::string anchor = g.neighbor_ids(id)[0];
    auto it = position.find(anchor);
    if (it == position.end())
      throw Error("NOT_HATRACK", "'" + id + "' is more than one step off the spine");
    if (it->second == 0 || it->second == h.spine_length)
      throw Error("INTERNAL", "pendant on a spine endpoint despite maximality");
    h.pendants[it->second] += 1;
  }
  return h;
}

// -- free-equivalence certificates --------------------------------------

enum class StepKind { ChangeOrder, PendantHop, ArcIntroduce, ArcRemove };

inline std::string to_string(StepKind k) {
  switch (k) {
    case StepKind::ChangeOrder: return "CHANGE_ORDER";
    case StepKind::PendantHop: return "PENDANT_HOP";
    case StepKind::ArcIntroduce: return "ARC_INTRODUCE";
    default: return "ARC_REMOVE";
  }
}

inline StepKind step_kind_from(const std::string& s) {
  if (s == "CHANGE_ORDER") return StepKind::ChangeOrder;
  if (s == "PENDANT_HOP") return StepKind::PendantHop;
  if (s == "ARC_INTRODUCE") return StepKind::ArcIntroduce;
  if (s == "ARC_REMOVE") return StepKind::ArcRemove;
  throw Error("PARSE", "unknown step kind '" + s + "'");
}

struct EmbeddingEvidence {
  int stages = 0;                           // completion stages applied to the host
  std::map<std::string, std::string> map;   // guest vertex -> host vertex
};

struct CertStep {
  StepKind kind = StepKind::PendantHop;
  IncidenceGraph before, after;
  EmbeddingEvidence fwd;  // after into completed before
  EmbeddingEvidence bwd;  // before into completed after
};

struct FreeEquivalenceCertificate {
  std::vector<CertStep> steps;
};

namespace detail {

inline void check_evidence(const IncidenceGraph& guest, const IncidenceGraph& host_seed,
                           const EmbeddingEvidence& ev, const std::string& label) {
  IncidenceGraph host = ev.stages == 0 ? host_seed : complete(host_seed, ev.stages).last();
  if (ev.map.size() != static_cast<size_t>(guest.vertex_count()))
    throw Error("BAD_CERTIFICATE", label + ": map does not cover the guest");
  std::set<std::string> seen;
  for (const auto& [src, dst] : ev.map) {
    if (!guest.has(src))
      throw Error("BAD_CERTIFICATE", label + ": '" + src + "' is not a guest vertex");
    if (!host.has(dst))
      throw Error("BAD_CERTIFICATE", label + ": '" + dst + "' is not a host vertex");
    if (!seen.insert(dst).second)
      throw Error("BAD_CERTIFICATE", label + ": map is not injective");
    if (guest.part(src) != host.part(dst))
      throw Error("BAD_CERTIFICATE", label + ": part mismatch at '" + src + "'");
  }
  for (const auto& [u, w] : guest.edges())
    if (!host.adjacent(ev.map.at(u), ev.map.at(w)))
      throw Error("BAD_CERTIFICATE", label + ": edge " + u + " " + w + " is not preserved");
}

}  // namespace detail

inline void verify_step(const CertStep& s) {
  if (delta(s.before) != delta(s.after))
    throw Error("BAD_CERTIFICATE", to_string(s.kind) + ": rank changed");
  detail::check_evidence(s.after, s.before, s.fwd, to_string(s.kind) + " forward");
  detail::check_evidence(s.before, s.after, s.bwd, to_string(s.kind) + " backward");
}

inline void verify_certificate(const FreeEquivalenceCertificate& c) {
  for (size_t i = 0; i < c.steps.size(); ++i) {
    verify_step(c.steps[i]);
    if (i + 1 < c.steps.size() && !(c.steps[i].after == c.steps[i + 1].before))
      throw Error("BAD_CERTIFICATE", "steps " + std::to_string(i) + " and " +
                                         std::to_string(i + 1) + " do not chain");
  }
}

inline std::string serialize_certificate(const FreeEquivalenceCertificate& c) {
  std::ostringstream out;
  out << "cert steps " << c.steps.size() << "\n";
  for (const auto& s : c.steps) {
    out << "step " << to_string(s.kind) << "\n";
    out << "before\n" << serialize_gon(s.before) << "endgraph\n";
    out << "after\n" << serialize_gon(s.after) << "endgraph\n";
    out << "forward stages " << s.fwd.stages << "\n";
    for (const auto& [src, dst] : s.fwd.map) out << "fmap " << src << " " << dst << "\n";
    out << "backward stages " << s.bwd.stages << "\n";
    for (const auto& [src, dst] : s.bwd.map) out << "bmap " << src << " " << dst << "\n";
    out << "endstep\n";
  }
  return out.str();
}

inline FreeEquivalenceCertificate parse_certificate(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  auto next_line = [&](std::string& out) {
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty()) continue;
      out = line;
      return true;
    }
    return false;
  };
  std::string head;
  if (!next_line(head) || head.rfind("cert steps ", 0) != 0)
    throw Error("PARSE", "certificate must start with a 'cert steps' line");
  FreeEquivalenceCertificate c;
  std::string cur;
  while (next_line(cur)) {
    if (cur.rfind("step ", 0) != 0) throw Error("PARSE", "expected 'step', got '" + cur + "'");
    CertStep s;
    s.kind = step_kind_from(cur.substr(5));
    auto read_graph = [&](const std::string& tag) {
      std::string intro;
      if (!next_line(intro) || intro != tag)
        throw Error("PARSE", "expected '" + tag + "' block");
      std::ostringstream block;
      while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line == "endgraph") return parse_gon(block.str());
        block << line << "\n";
      }
      throw Error("PARSE", "unterminated '" + tag + "' block");
    };
    s.before = read_graph("before");
    s.after = read_graph("after");
    std::string fw;
    if (!next_line(fw) || fw.rfind("forward stages ", 0) != 0)
      throw Error("PARSE", "expected 'forward stages'");
    s.fwd.stages = std::stoi(fw.substr(15));
    bool saw_backward = false;
    while (next_line(cur)) {
      if (cur == "endstep") break;
      if (cur.rfind("backward stages ", 0) == 0) {
        s.bwd.stages = std::stoi(cur.substr(16));
        saw_backward = true;
        continue;
      }
      std::istringstream ls(cur);
      std::string tag, src, dst;
      ls >> tag >> src >> dst;
      if (tag == "fmap" && !saw_backward)
        s.fwd.map[src] = dst;
      else if (tag == "bmap" && saw_backward)
        s.bwd.map[src] = dst;
      else
        throw Error("PARSE", "unexpected certificate line '" + cur + "'");
    }
    if (!saw_backward) throw Error("PARSE", "step is missing its backward evidence");
    c.steps.push_back(std::move(s));
  }
  return c;
}

// -- path seeds ----------------------------------------------------------

inline IncidenceGraph gamma_k(int n, int k) {
  if (k < 1) throw Error("BAD_LENGTH", "path length must be at least 1");
  GraphBuilder b(n);
  for (int i = 0; i <= k; ++i)
    b.add_vertex("x" + std::to_string(i), i % 2 == 0 ? Part::Point : Part::Line);
  for (int i = 0; i < k; ++i)
    b.add_edge("x" + std::to_string(i), "x" + std::to_string(i + 1));
  return b.build();
}

inline CompletionTrace free_gon(int n, int k, int stages) {
  if (k < n + 3)
    throw Error("SHORT_PATH", "a path of length " + std::to_string(k) +
                                  " completes to a degenerate or thin structure; need at least " +
                                  std::to_string(n + 3));
  return complete(gamma_k(n, k), stages);
}

// -- certified transforms -------------------------------------------------

struct TransformResult {
  IncidenceGraph graph;
  CertStep step;
};

namespace detail {

// The unique neighbor of `anchor` in `host` at the given distance from `ref`.
inline std::optional<std::string> unique_neighbor_at(const IncidenceGraph& host,
                                                     const std::string& anchor,
                                                     const std::string& ref, int dist) {
  if (!host.has(anchor) || !host.has(ref)) return std::nullopt;
  std::vector<std::string> found;
  auto d = distances_from(host, host.index_of(ref));
  for (int w : host.neighbors(host.index_of(anchor)))
    if (d[w] == dist) found.push_back(host.id_of(w));
  if (found.size() != 1) return std::nullopt;
  return found[0];
}

inline EmbeddingEvidence identity_evidence(const IncidenceGraph& g) {
  EmbeddingEvidence ev;
  for (const auto& id : g.ids()) ev.map[id] = id;
  return ev;
}

// Map the interior of the host completion's arc between u and v, positions
// ordered from u, onto the given guest ids.
inline bool map_arc_interior(const IncidenceGraph& host, const std::string& u,
                             const std::string& v, const std::vector<std::string>& guest_ids,
                             std::map<std::string, std::string>& out) {
  std::string lo = std::min(u, v), hi = std::max(u, v);
  int n = host.n();
  std::vector<std::string> by_pos(n - 2);
  int seen = 0;
  for (const auto& id : host.ids()) {
    const Provenance& p = host.provenance(id);
    if (p.kind != Provenance::Kind::Arc || p.a != lo || p.b != hi) continue;
    if (p.pos < 0 || p.pos > n - 3) return false;
    by_pos[p.pos] = id;
    ++seen;
  }
  if (seen != n - 2) return false;
  for (int j = 0; j < n - 2; ++j) {
    const std::string& host_id = u == lo ? by_pos[j] : by_pos[n - 3 - j];
    out[guest_ids[j]] = host_id;
  }
  return true;
}

}  // namespace detail

// Replace a loose end by a fresh pendant on a vertex at distance n+1.
inline TransformResult pendant_hop(const IncidenceGraph& g, const std::string& leaf,
                                   const std::string& anchor, int stage_budget = 2) {
  int n = g.n();
  if (g.degree(leaf) != 1) throw Error("NOT_LOOSE", "'" + leaf + "' is not a loose end");
  if (distance(g, leaf, anchor) != n + 1)
    throw Error("BAD_ANCHOR", "'" + anchor + "' is not at distance " + std::to_string(n + 1) +
                                  " from '" + leaf + "'");
  std::string w = g.neighbor_ids(leaf)[0];

  std::set<std::string> used(g.ids().begin(), g.ids().end());
  std::string fresh = detail::fresh_id(used, leaf + "'");
  std::vector<std::string> keep;
  for (const auto& id : g.ids())
    if (id != leaf) keep.push_back(id);
  GraphBuilder b = GraphBuilder::from(g.induced(keep));
  b.add_vertex(fresh, opposite(g.part(anchor)));
  b.add_edge(anchor, fresh);

  TransformResult r;
  r.graph = b.build();
  r.step.kind = StepKind::PendantHop;
  r.step.before = g;
  r.step.after = r.graph;

  bool fwd_ok = false, bwd_ok = false;
  for (int s = 1; s <= stage_budget && !fwd_ok; ++s) {
    IncidenceGraph host = complete(g, s).last();
    auto img = detail::unique_neighbor_at(host, anchor, leaf, n - 2);
    if (!img) continue;
    r.step.fwd = detail::identity_evidence(r.graph);
    r.step.fwd.map[fresh] = *img;
    r.step.fwd.stages = s;
    fwd_ok = true;
  }
  for (int s = 1; s <= stage_budget && !bwd_ok; ++s) {
    IncidenceGraph host = complete(r.graph, s).last();
    auto img = detail::unique_neighbor_at(host, w, fresh, n - 2);
    if (!img) continue;
    r.step.bwd = detail::identity_evidence(g);
    r.step.bwd.map[leaf] = *img;
    r.step.bwd.stages = s;
    bwd_ok = true;
  }
  if (!fwd_ok || !bwd_ok)
    throw Error("EVIDENCE", "could not build embedding evidence within the stage budget");
  return r;
}

// Attach the clean arc between two vertices at distance n+1.
inline TransformResult introduce_arc(const IncidenceGraph& g, const std::string& u,
                                     const std::string& v, int stage_budget = 2) {
  int n = g.n();
  if (distance(g, u, v) != n + 1)
    throw Error("BAD_PAIR", "'" + u + "' and '" + v + "' are not at distance " +
                                std::to_string(n + 1));
  std::set<std::string> used(g.ids().begin(), g.ids().end());
  std::vector<std::string> interior;
  GraphBuilder b = GraphBuilder::from(g);
  std::string prev = u;
  for (int j = 0; j < n - 2; ++j) {
    std::string id = detail::fresh_id(used, "t" + std::to_string(j));
    used.insert(id);
    interior.push_back(id);
    b.add_vertex(id, j % 2 == 0 ? opposite(g.part(u)) : g.part(u));
    b.add_edge(prev, id);
    prev = id;
  }
  b.add_edge(prev, v);

  TransformResult r;
  r.graph = b.build();
  r.step.kind = StepKind::ArcIntroduce;
  r.step.before = g;
  r.step.after = r.graph;
  r.step.bwd = detail::identity_evidence(g);
  r.step.bwd.stages = 0;

  bool fwd_ok = false;
  for (int s = 1; s <= stage_budget && !fwd_ok; ++s) {
    IncidenceGraph host = complete(g, s).last();
    std::map<std::string, std::string> m;
    if (!detail::map_arc_interior(host, u, v, interior, m)) continue;
    r.step.fwd = detail::identity_evidence(g);
    for (const auto& [src, dst] : m) r.step.fwd.map[src] = dst;
    r.step.fwd.stages = s;
    fwd_ok = true;
  }
  if (!fwd_ok)
    throw Error("EVIDENCE", "could not build embedding evidence within the stage budget");
  return r;
}

// The change-of-order move: pendants hanging on a clean arc hop to the
// opposite side of a cycle through the arc, and the arc goes away.
inline TransformResult change_order_transform(const IncidenceGraph& g, const CleanArc& arc,
                                              const std::vector<std::string>& pendants,
                                              int stage_budget = 2) {
  int n = g.n();
  if (static_cast<int>(arc.interior.size()) != n - 2)
    throw Error("NOT_CLEAN", "arc interior must have " + std::to_string(n - 2) + " vertices");
  std::set<std::string> interior_set(arc.interior.begin(), arc.interior.end());
  std::set<std::string> pendant_set(pendants.begin(), pendants.end());
  std::map<std::string, std::string> anchor_of;
  for (const auto& z : pendants) {
    if (g.degree(z) != 1) throw Error("PENDANT_NOT_LOOSE", "'" + z + "' is not a loose end");
    std::string nb = g.neighbor_ids(z)[0];
    if (!interior_set.count(nb))
      throw Error("PENDANT_OFF_ARC", "'" + z + "' does not hang on the arc");
    anchor_of[z] = nb;
  }
  std::string prev = arc.a;
  for (const auto& i : arc.interior) {
    if (!g.adjacent(prev, i)) throw Error("NOT_CLEAN", "arc path is broken at '" + i + "'");
    prev = i;
  }
  if (!g.adjacent(prev, arc.b)) throw Error("NOT_CLEAN", "arc path is broken at '" + arc.b + "'");
  for (const auto& i : arc.interior) {
    int extra = 0;
    for (const auto& nb : g.neighbor_ids(i))
      if (pendant_set.count(nb)) ++extra;
    if (g.degree(i) - extra != 2)
      throw Error("NOT_CLEAN", "'" + i + "' has attachments beyond the declared pendants");
  }

  std::vector<std::string> core_ids;
  for (const auto& id : g.ids())
    if (!interior_set.count(id) && !pendant_set.count(id)) core_ids.push_back(id);
  IncidenceGraph core = g.induced(core_ids);

  // a 2n-cycle through the arc: complementary path in the core, or after one stage
  std::optional<GraphPath> back_path;
  const IncidenceGraph* context = &g;
  IncidenceGraph staged;
  if (core.has(arc.a) && core.has(arc.b) && distance(core, arc.a, arc.b) == n + 1) {
    back_path = geodesic_witness(core, arc.a, arc.b);
  } else {
    staged = complete_stage(g).first;
    std::vector<std::string> wide;
    for (const auto& id : staged.ids())
      if (!interior_set.count(id) && !pendant_set.count(id)) wide.push_back(id);
    IncidenceGraph residual = staged.induced(wide);
    if (distance(residual, arc.a, arc.b) == n + 1) {
      back_path = geodesic_witness(residual, arc.a, arc.b);
      context = &staged;
    }
  }
  if (!back_path)
    throw Error("NO_CYCLE", "no cycle through the arc is available within one stage");

  GraphPath cycle;
  cycle.vertices.push_back(arc.a);
  for (const auto& i : arc.interior) cycle.vertices.push_back(i);
  cycle.vertices.push_back(arc.b);
  for (size_t i = back_path->vertices.size() - 2; i >= 1; --i)
    cycle.vertices.push_back(back_path->vertices[i]);

  std::set<std::string> core_set(core_ids.begin(), core_ids.end());
  std::set<std::string> used(g.ids().begin(), g.ids().end());
  GraphBuilder b = GraphBuilder::from(core);
  std::map<std::string, std::string> fresh_of, landing_of;
  std::vector<std::string> sorted_pendants = pendants;
  std::sort(sorted_pendants.begin(), sorted_pendants.end());
  for (const auto& z : sorted_pendants) {
    std::string xj = anchor_of[z];
    std::string xo = opposite_in_cycle(cycle, xj);
    if (!core_set.count(xo))
      throw Error("NO_CYCLE", "the opposite of '" + xj + "' lies outside the retained core");
    transfer_neighbor(*context, cycle, xj, z, true);  // exchange sanity lives here
    std::string fresh = detail::fresh_id(used, z + "'");
    used.insert(fresh);
    fresh_of[z] = fresh;
    landing_of[z] = xo;
    b.add_vertex(fresh, opposite(g.part(xo)));
    b.add_edge(xo, fresh);
  }

  TransformResult r;
  r.graph = b.build();
  r.step.kind = pendants.empty() ? StepKind::ArcRemove : StepKind::ChangeOrder;
  r.step.before = g;
  r.step.after = r.graph;

  bool fwd_ok = false, bwd_ok = false;
  for (int s = 1; s <= stage_budget && !fwd_ok; ++s) {
    IncidenceGraph host = complete(g, s).last();
    EmbeddingEvidence ev;
    for (const auto& id : core_ids) ev.map[id] = id;
    bool all = true;
    for (const auto& z : sorted_pendants) {
      auto img = detail::unique_neighbor_at(host, landing_of[z], z, n - 2);
      if (!img || ev.map.count(*img)) {
        all = false;
        break;
      }
      ev.map[fresh_of[z]] = *img;
    }
    if (!all) continue;
    ev.stages = s;
    r.step.fwd = ev;
    fwd_ok = true;
  }
  for (int s = 1; s <= stage_budget && !bwd_ok; ++s) {
    IncidenceGraph host = complete(r.graph, s).last();
    EmbeddingEvidence ev;
    for (const auto& id : core_ids) ev.map[id] = id;
    std::map<std::string, std::string> interior_img;
    if (!detail::map_arc_interior(host, arc.a, arc.b, arc.interior, interior_img)) continue;
    for (const auto& [src, dst] : interior_img) ev.map[src] = dst;
    bool all = true;
    for (const auto& z : sorted_pendants) {
      auto img = detail::unique_neighbor_at(host, ev.map.at(anchor_of[z]), fresh_of[z], n - 2);
      if (!img) {
        all = false;
        break;
      }
      ev.map[z] = *img;
    }
    if (!all) continue;
    ev.stages = s;
    r.step.bwd = ev;
    bwd_ok = true;
  }
  if (!fwd_ok || !bwd_ok)
    throw Error("EVIDENCE", "could not build embedding evidence within the stage budget");
  return r;
}

// -- normalization pipelines ----------------------------------------------

struct HatRackResult {
  HatRack rack;
  FreeEquivalenceCertificate cert;
};

inline HatRackResult tree_to_hatrack(const IncidenceGraph& g, int stage_budget = 2) {
  int n = g.n();
  if (!is_connected(g)) throw Error("DISCONNECTED", "input must be connected");
  if (g.edge_count() != g.vertex_count() - 1)
    throw Error("CYCLIC", "input contains a cycle");
  std::vector<std::string> spine = detail::tree_longest_path(g);
  if (static_cast<int>(spine.size()) - 1 < n + 3)
    throw Error("NO_SPINE",
                "no simple path of length at least " + std::to_string(n + 3));

  HatRackResult out;
  IncidenceGraph cur = g;
  std::set<std::string> spine_set(spine.begin(), spine.end());
  std::vector<std::string> arc_interior;
  std::set<std::string> arc_pendants;

  while (true) {
    std::set<std::string> apparatus(arc_interior.begin(), arc_interior.end());
    apparatus.insert(arc_pendants.begin(), arc_pendants.end());
    std::string far;
    int far_dist = 1;
    for (const auto& id : cur.ids()) {
      if (spine_set.count(id) || apparatus.count(id)) continue;
      int best = -1;
      for (const auto& sp : spine) {
        int d = distance(cur, id, sp);
        if (best < 0 || d < best) best = d;
      }
      if (best > far_dist || (best == far_dist && far_dist >= 2 && id < far)) {
        far = id;
        far_dist = best;
      }
    }
    if (far_dist < 2) break;

    std::string target;
    for (const auto& sp : spine)
      if (distance(cur, far, sp) == n + 1) {
        target = sp;
        break;
      }
    if (target.empty()) {
      if (arc_interior.empty()) {
        TransformResult intro = introduce_arc(cur, spine[0], spine[n + 1], stage_budget);
        std::string prev, at = spine[0];
        for (int j = 0; j < n - 2; ++j) {
          for (const auto& nb : intro.graph.neighbor_ids(at)) {
            if (cur.has(nb) || nb == prev) continue;
            arc_interior.push_back(nb);
            prev = at;
            at = nb;
            break;
          }
        }
        cur = intro.graph;
        out.cert.steps.push_back(std::move(intro.step));
      }
      for (const auto& y : arc_interior)
        if (distance(cur, far, y) == n + 1) {
          target = y;
          break;
        }
      if (target.empty())
        throw Error("NO_ANCHOR", "no vertex at the transfer distance from '" + far + "'");
    }
    TransformResult hop = pendant_hop(cur, far, target, stage_budget);
    std::string landed;
    for (const auto& id : hop.graph.ids())
      if (!cur.has(id)) landed = id;
    if (std::find(arc_interior.begin(), arc_interior.end(), target) != arc_interior.end())
      arc_pendants.insert(landed);
    cur = hop.graph;
    out.cert.steps.push_back(std::move(hop.step));
  }

  if (!arc_interior.empty()) {
    CleanArc arc;
    arc.a = spine[0];
    arc.b = spine[n + 1];
    arc.interior = arc_interior;
    if (arc.b < arc.a) {
      std::swap(arc.a, arc.b);
      std::reverse(arc.interior.begin(), arc.interior.end());
    }
    std::vector<std::string> pend(arc_pendants.begin(), arc_pendants.end());
    TransformResult co = change_order_transform(cur, arc, pend, stage_budget);
    cur = co.graph;
    out.cert.steps.push_back(std::move(co.step));
  }

  out.rack = hatrack_from_tree(cur);
  return out;
}

inline HatRackResult normalize_to_hatrack(const IncidenceGraph& g, int stage_budget = 2) {
  int n = g.n();
  if (!is_connected(g)) throw Error("DISCONNECTED", "input must be connected");
  OpenReport rep = is_open(g);
  if (!rep.open)
    throw Error("NOT_OPEN", "stuck core of " + std::to_string(rep.stuck.size()) + " vertices");

  HatRackResult out;
  IncidenceGraph cur = g;

  while (cur.edge_count() > cur.vertex_count() - 1) {
    OpenReport r = is_open(cur);
    if (!r.open) throw Error("INTERNAL", "openness was lost during normalization");
    int last_arc = -1;
    for (size_t i = 0; i < r.cert.steps.size(); ++i)
      if (r.cert.steps[i].kind == HFStep::Kind::AddCleanArc) last_arc = static_cast<int>(i);
    if (last_arc < 0) throw Error("INTERNAL", "cyclic graph stripped without arc steps");
    const HFStep& arc_step = r.cert.steps[last_arc];
    CleanArc arc;
    arc.a = arc_step.a;
    arc.b = arc_step.b;
    arc.interior = arc_step.interior;
    std::set<std::string> interior_set(arc.interior.begin(), arc.interior.end());
    std::set<std::string> hanging;
    for (size_t i = last_arc + 1; i < r.cert.steps.size(); ++i)
      hanging.insert(r.cert.steps[i].vertex);

    // strands anchored on the retained graph stay where they are; only what
    // hangs off the arc interior has to move before the arc can go
    {
      std::set<std::string> off_arc, seen;
      for (const auto& start : hanging) {
        if (seen.count(start)) continue;
        std::vector<std::string> comp{start};
        seen.insert(start);
        bool on_interior = false;
        for (size_t qi = 0; qi < comp.size(); ++qi)
          for (const auto& nb : cur.neighbor_ids(comp[qi])) {
            if (interior_set.count(nb))
              on_interior = true;
            else if (hanging.count(nb) && seen.insert(nb).second)
              comp.push_back(nb);
          }
        if (on_interior) off_arc.insert(comp.begin(), comp.end());
      }
      hanging = std::move(off_arc);
    }

    // chains hop down until only direct pendants on the interior remain
    while (true) {
      std::string deep;
      int deep_dist = -1;
      for (const auto& z : hanging) {
        if (cur.degree(z) != 1) continue;
        std::string nb = cur.neighbor_ids(z)[0];
        if (!hanging.count(nb)) continue;  // directly on the arc: ready
        int best = -1;
        for (const auto& id : cur.ids()) {
          if (hanging.count(id)) continue;
          int d = distance(cur, z, id);
          if (best < 0 || d < best) best = d;
        }
        if (best > deep_dist || (best == deep_dist && z < deep)) {
          deep = z;
          deep_dist = best;
        }
      }
      if (deep.empty()) break;
      std::string target;
      for (const auto& id : cur.ids()) {
        if (hanging.count(id)) continue;
        if (cur.degree(id) < 2) continue;
        if (distance(cur, deep, id) != n + 1) continue;
        if (target.empty() || id < target) target = id;
      }
      if (target.empty())
        throw Error("NO_HOP_TARGET", "no anchor at the hop distance from '" + deep + "'");
      TransformResult hop = pendant_hop(cur, deep, target, stage_budget);
      std::string landed;
      for (const auto& id : hop.graph.ids())
        if (!cur.has(id)) landed = id;
      hanging.erase(deep);
      if (interior_set.count(target)) hanging.insert(landed);
      cur = hop.graph;
      out.cert.steps.push_back(std::move(hop.step));
    }

    std::vector<std::string> pend(hanging.begin(), hanging.end());
    for (const auto& z : pend)
      if (!interior_set.count(cur.neighbor_ids(z)[0]))
        throw Error("INTERNAL", "a pendant survived flattening away from the arc");
    TransformResult co = change_order_transform(cur, arc, pend, stage_budget);
    cur = co.graph;
    out.cert.steps.push_back(std::move(co.step));
  }

  // a tree that falls short of the rack spine grows by hopping a leaf onto
  // a far vertex whenever that lengthens the longest path; when no hop
  // lengthens directly, a leaf deep off the long path flattens toward it
  // first, which can unlock a lengthening hop on a later round
  for (int round = 0; round < 4 * cur.vertex_count() + 8; ++round) {
    std::vector<std::string> path = detail::tree_longest_path(cur);
    int dia = static_cast<int>(path.size()) - 1;
    if (dia >= n + 3) break;

    std::string leaf, anchor;
    int best_gain = dia;
    for (const auto& z : cur.ids()) {
      if (cur.degree(z) != 1) continue;
      for (const auto& w : cur.ids()) {
        if (w == z || distance(cur, z, w) != n + 1) continue;
        int reach = 0;
        for (const auto& y : cur.ids())
          if (y != z) reach = std::max(reach, distance(cur, w, y));
        if (reach + 1 > best_gain) {
          best_gain = reach + 1;
          leaf = z;
          anchor = w;
        }
      }
    }

    if (leaf.empty()) {
      auto depth_of = [&](const std::string& v) {
        int best = -1;
        for (const auto& w : path) {
          int d = distance(cur, v, w);
          if (best < 0 || d < best) best = d;
        }
        return best;
      };
      for (const auto& z : cur.ids()) {
        if (cur.degree(z) != 1) continue;
        int dz = depth_of(z);
        if (dz < 2) continue;
        for (const auto& w : cur.ids()) {
          if (w == z || distance(cur, z, w) != n + 1) continue;
          if (depth_of(w) + 1 >= dz) continue;
          leaf = z;
          anchor = w;
          break;
        }
        if (!leaf.empty()) break;
      }
    }

    if (leaf.empty()) break;
    TransformResult hop = pendant_hop(cur, leaf, anchor, stage_budget);
    cur = hop.graph;
    out.cert.steps.push_back(std::move(hop.step));
  }

  std::vector<std::string> spine = detail::tree_longest_path(cur);
  if (static_cast<int>(spine.size()) - 1 >= n + 3) {
    HatRackResult tail = tree_to_hatrack(cur, stage_budget);
    for (auto& s : tail.cert.steps) out.cert.steps.push_back(std::move(s));
    out.rack = tail.rack;
  } else {
    out.rack = hatrack_from_tree(cur);
  }
  return out;
}

// -- classification ---------------------------------------------------------

struct Classification {
  long long k = 0;
  bool diagnostic = false;
  std::string statement;
};

inline Classification classify_free(const IncidenceGraph& g, long long budget = 1000000) {
  int n = g.n();
  if (!is_connected(g)) throw Error("DISCONNECTED", "input must be connected");
  if (!is_open(g).open) throw Error("NOT_OPEN", "input has a stuck core");
  Classification c;
  c.k = delta(g) - n + 1;
  if (c.k < n + 3) {
    c.diagnostic = true;
    c.statement = "rank " + std::to_string(delta(g)) + " is below " +
                  std::to_string(2 * n + 2) +
                  ", the least value whose free completion is thick";
    return c;
  }
  if (check_nondegenerate(g, budget).verdict == Ternary::No)
    throw Error("DEGENERATE", "every completion of this input stays degenerate");
  c.statement = "F(A) is isomorphic to the free completion of a length-" +
                std::to_string(c.k) + " path";
  return c;
}

}  // namespace gon
