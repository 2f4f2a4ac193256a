#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "gon/cycles.hpp"
#include "gon/graph.hpp"
#include "gon/metrics.hpp"

namespace gon {

struct CheckFailure {
  std::string axiom;
  std::vector<std::string> witness;
};

struct CheckReport {
  bool verdict = true;
  std::vector<CheckFailure> failures;
};

// -- axiom checks ------------------------------------------------------

inline CheckReport check_partial(const IncidenceGraph& g) {
  CheckReport r;
  if (!is_connected(g)) {
    r.verdict = false;
    std::vector<std::string> comps;
    if (g.vertex_count() > 0) {
      auto d = distances_from(g, 0);
      comps.push_back(g.id_of(0));
      for (int v = 0; v < g.vertex_count(); ++v)
        if (d[v] < 0) {
          comps.push_back(g.id_of(v));
          break;
        }
    }
    r.failures.push_back({"connected", comps});
  }
  int gi = girth(g);
  if (gi >= 0 && gi < 2 * g.n()) {
    r.verdict = false;
    r.failures.push_back({"girth", girth_witness(g).vertices});
  }
  return r;
}

inline CheckReport check_weak(const IncidenceGraph& g) {
  CheckReport r;
  int dia = diameter(g);
  if (dia != g.n()) {
    r.verdict = false;
    std::vector<std::string> wit;
    if (dia > g.n()) {
      for (int v = 0; v < g.vertex_count() && wit.empty(); ++v) {
        auto d = distances_from(g, v);
        for (int w = 0; w < g.vertex_count(); ++w)
          if (d[w] == dia) {
            wit = geodesic_witness(g, g.id_of(v), g.id_of(w)).vertices;
            break;
          }
      }
    }
    r.failures.push_back({"diameter", wit});
  }
  int gi = girth(g);
  if (gi != 2 * g.n()) {
    r.verdict = false;
    r.failures.push_back({"girth", gi >= 0 && gi < 2 * g.n() ? girth_witness(g).vertices
                                                             : std::vector<std::string>{}});
  }
  return r;
}

inline CheckReport check_thick(const IncidenceGraph& g) {
  CheckReport r;
  for (const auto& id : g.ids())
    if (g.degree(id) < 3) {
      r.verdict = false;
      r.failures.push_back({"thickness", {id}});
    }
  return r;
}

struct NondegeneracyReport {
  Ternary verdict = Ternary::No;
  GraphPath witness;  // long geodesic or long cycle
};

inline NondegeneracyReport check_nondegenerate(const IncidenceGraph& g, long long budget) {
  NondegeneracyReport r;
  int n = g.n();
  for (int v = 0; v < g.vertex_count(); ++v) {
    auto d = distances_from(g, v);
    for (int w = 0; w < g.vertex_count(); ++w) {
      if (d[w] >= n + 3) {
        r.verdict = Ternary::Yes;
        r.witness = geodesic_witness(g, g.id_of(v), g.id_of(w));
        return r;
      }
    }
  }
  CycleSearch cs = long_cycle_exists(g, 2 * n + 2, budget);
  r.verdict = cs.found;
  r.witness = cs.cycle;
  return r;
}

// -- loose ends and clean arcs -----------------------------------------

inline std::vector<std::string> loose_ends(const IncidenceGraph& g) {
  std::vector<std::string> out;
  for (const auto& id : g.ids())
    if (g.degree(id) <= 1) out.push_back(id);
  return out;
}

struct CleanArc {
  std::string a;                      // lex-smaller endpoint
  std::vector<std::string> interior;  // ordered from a
  std::string b;

  bool operator<(const CleanArc& o) const {
    return std::tie(a, b, interior) < std::tie(o.a, o.b, o.interior);
  }
  bool operator==(const CleanArc& o) const {
    return a == o.a && b == o.b && interior == o.interior;
  }
};

namespace detail {

// Paths (p_0,...,p_{n-1}) whose interior vertices are all alive, deletable
// and of alive-valency exactly 2. Endpoints only need to be alive.
template <typename AliveFn, typename DeletableFn, typename DegFn>
std::vector<CleanArc> scan_clean_arcs(const IncidenceGraph& g, AliveFn alive,
                                      DeletableFn deletable, DegFn deg) {
  int n = g.n();
  std::set<CleanArc> found;
  std::vector<int> path;
  auto emit = [&]() {
    CleanArc arc;
    arc.a = g.id_of(path.front());
    arc.b = g.id_of(path.back());
    std::vector<std::string> inner;
    for (size_t i = 1; i + 1 < path.size(); ++i) inner.push_back(g.id_of(path[i]));
    if (arc.b < arc.a) {
      std::swap(arc.a, arc.b);
      std::reverse(inner.begin(), inner.end());
    }
    arc.interior = std::move(inner);
    found.insert(std::move(arc));
  };
  auto dfs = [&](auto&& self, int v) -> void {
    if (static_cast<int>(path.size()) == n) {
      emit();
      return;
    }
    bool at_tail = static_cast<int>(path.size()) == n - 1;
    for (int w : g.neighbors(v)) {
      if (!alive(w)) continue;
      if (std::find(path.begin(), path.end(), w) != path.end()) continue;
      if (!at_tail && (!deletable(w) || deg(w) != 2)) continue;
      path.push_back(w);
      self(self, w);
      path.pop_back();
    }
  };
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!alive(v)) continue;
    path = {v};
    dfs(dfs, v);
  }
  return {found.begin(), found.end()};
}

}  // namespace detail

inline std::vector<CleanArc> clean_arcs(const IncidenceGraph& g) {
  auto all = [](int) { return true; };
  auto deg = [&](int v) { return g.degree(v); };
  return detail::scan_clean_arcs(g, all, all, deg);
}

// -- HF certificates ----------------------------------------------------

struct HFStep {
  enum class Kind { AddLooseEnd, AddCleanArc };

  Kind kind = Kind::AddLooseEnd;
  std::string vertex;                // loose end
  std::optional<std::string> attach;
  std::optional<Part> part;          // for detached loose ends; not serialized
  std::string a, b;                  // arc endpoints
  std::vector<std::string> interior;
  bool relative = false;

  static HFStep loose(std::string v, std::optional<std::string> attach,
                      std::optional<Part> part) {
    HFStep s;
    s.kind = Kind::AddLooseEnd;
    s.vertex = std::move(v);
    s.attach = std::move(attach);
    s.part = part;
    return s;
  }

  static HFStep arc(std::string a, std::string b, std::vector<std::string> interior,
                    bool relative) {
    HFStep s;
    s.kind = Kind::AddCleanArc;
    s.a = std::move(a);
    s.b = std::move(b);
    s.interior = std::move(interior);
    s.relative = relative;
    return s;
  }
};

struct HFCertificate {
  int n = 3;
  std::vector<std::string> base;
  std::vector<HFStep> steps;
};

inline std::string serialize_hf_certificate(const HFCertificate& c) {
  std::ostringstream out;
  out << "hfcert " << c.n << " base";
  for (const auto& v : c.base) out << " " << v;
  out << "\n";
  for (const auto& s : c.steps) {
    if (s.kind == HFStep::Kind::AddLooseEnd) {
      out << "loose " << s.vertex;
      if (s.attach) out << " " << *s.attach;
      out << "\n";
    } else {
      out << "arc " << s.a << " " << s.b;
      for (const auto& i : s.interior) out << " " << i;
      if (s.relative) out << " relative";
      out << "\n";
    }
  }
  return out.str();
}

inline HFCertificate parse_hf_certificate(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  HFCertificate cert;
  bool have_header = false;
  auto fail = [&](const std::string& msg) -> void {
    throw Error("BAD_CERT", "line " + std::to_string(lineno) + ": " + msg);
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
      if (tok.size() < 3 || tok[0] != "hfcert" || tok[2] != "base")
        fail("expected 'hfcert <n> base <v...>'");
      try {
        cert.n = std::stoi(tok[1]);
      } catch (const std::exception&) {
        fail("bad gonality '" + tok[1] + "'");
      }
      if (cert.n < 3) fail("gonality must be at least 3");
      cert.base.assign(tok.begin() + 3, tok.end());
      have_header = true;
      continue;
    }
    if (tok[0] == "loose") {
      if (tok.size() < 2 || tok.size() > 3) fail("expected 'loose <v> [<attach>]'");
      cert.steps.push_back(HFStep::loose(
          tok[1], tok.size() == 3 ? std::optional<std::string>(tok[2]) : std::nullopt,
          std::nullopt));
      continue;
    }
    if (tok[0] == "arc") {
      size_t plain = 3 + static_cast<size_t>(cert.n - 2);
      bool relative = false;
      if (tok.size() == plain + 1 && tok.back() == "relative")
        relative = true;
      else if (tok.size() != plain)
        fail("expected 'arc <a> <b> <" + std::to_string(cert.n - 2) + " interior ids> [relative]'");
      cert.steps.push_back(HFStep::arc(
          tok[1], tok[2],
          std::vector<std::string>(tok.begin() + 3, tok.begin() + 3 + (cert.n - 2)), relative));
      continue;
    }
    fail("unknown step '" + tok[0] + "'");
  }
  if (!have_header) throw Error("BAD_CERT", "missing 'hfcert' header");
  return cert;
}

// -- greedy strip -------------------------------------------------------

struct OpenReport {
  bool open = false;
  HFCertificate cert;              // set when open
  std::vector<std::string> stuck;  // set when not open
};

namespace detail {

struct StripState {
  const IncidenceGraph* g;
  std::vector<bool> alive;
  std::vector<bool> protect;
  std::vector<int> deg;

  explicit StripState(const IncidenceGraph& gg) : g(&gg) {
    alive.assign(gg.vertex_count(), false);
    protect.assign(gg.vertex_count(), false);
    deg.assign(gg.vertex_count(), 0);
  }

  void recompute_degrees() {
    for (int v = 0; v < g->vertex_count(); ++v) {
      deg[v] = 0;
      if (!alive[v]) continue;
      for (int w : g->neighbors(v)) deg[v] += alive[w] ? 1 : 0;
    }
  }

  void kill(int v) {
    alive[v] = false;
    for (int w : g->neighbors(v)) deg[w] -= alive[w] ? 1 : 0;
  }

  int alive_distance(int from, int to) const {
    std::vector<int> d(g->vertex_count(), -1);
    d[from] = 0;
    std::vector<int> q{from};
    for (size_t h = 0; h < q.size(); ++h) {
      int u = q[h];
      if (u == to) return d[u];
      for (int w : g->neighbors(u))
        if (alive[w] && d[w] < 0) {
          d[w] = d[u] + 1;
          q.push_back(w);
        }
    }
    return d[to];
  }
};

// One full greedy deconstruction of the non-protected alive vertices.
// Deletions are recorded in deletion order.
inline bool run_strip(StripState& st, std::vector<HFStep>* deletions) {
  const IncidenceGraph& g = *st.g;
  int n = g.n();
  for (;;) {
    bool any_alive = false;
    int loose = -1;
    for (int v = 0; v < g.vertex_count(); ++v) {
      if (!st.alive[v] || st.protect[v]) continue;
      any_alive = true;
      if (st.deg[v] <= 1 && (loose < 0 || g.id_of(v) < g.id_of(loose))) loose = v;
    }
    if (!any_alive) return true;
    if (loose >= 0) {
      std::optional<std::string> attach;
      if (st.deg[loose] == 1)
        for (int w : g.neighbors(loose))
          if (st.alive[w]) attach = g.id_of(w);
      deletions->push_back(
          HFStep::loose(g.id_of(loose), std::move(attach), g.part(loose)));
      st.kill(loose);
      continue;
    }
    auto arcs = scan_clean_arcs(
        g, [&](int v) { return st.alive[v]; },
        [&](int v) { return !st.protect[v]; }, [&](int v) { return st.deg[v]; });
    if (arcs.empty()) return false;
    const CleanArc& pick = arcs.front();
    for (const auto& id : pick.interior) st.kill(g.index_of(id));
    int ia = g.index_of(pick.a), ib = g.index_of(pick.b);
    bool strict = st.alive_distance(ia, ib) == n + 1;
    deletions->push_back(HFStep::arc(pick.a, pick.b, pick.interior, !strict));
  }
}

inline OpenReport strip_report(StripState& st, const std::vector<std::string>& base_ids) {
  const IncidenceGraph& g = *st.g;
  OpenReport rep;
  std::vector<HFStep> deletions;
  if (run_strip(st, &deletions)) {
    rep.open = true;
    rep.cert.n = g.n();
    rep.cert.base = base_ids;
    rep.cert.steps.assign(deletions.rbegin(), deletions.rend());
  } else {
    rep.open = false;
    for (int v = 0; v < g.vertex_count(); ++v)
      if (st.alive[v] && !st.protect[v]) rep.stuck.push_back(g.id_of(v));
  }
  return rep;
}

}  // namespace detail

inline OpenReport is_open(const IncidenceGraph& g) {
  detail::StripState st(g);
  for (int v = 0; v < g.vertex_count(); ++v) st.alive[v] = true;
  st.recompute_degrees();
  return detail::strip_report(st, {});
}

// Strip B down to A inside the induced subgraph on A ∪ B.
inline OpenReport is_open_over(const std::vector<std::string>& B,
                               const std::vector<std::string>& A, const IncidenceGraph& g) {
  detail::StripState st(g);
  for (const auto& id : A) {
    int v = g.index_of(id);
    st.alive[v] = true;
    st.protect[v] = true;
  }
  for (const auto& id : B) {
    int v = g.index_of(id);
    if (st.protect[v]) throw Error("OVERLAP", "'" + id + "' is in both A and B");
    st.alive[v] = true;
  }
  st.recompute_degrees();
  std::vector<std::string> base = A;
  std::sort(base.begin(), base.end());
  return detail::strip_report(st, base);
}

inline bool is_closed_over(const std::vector<std::string>& B, const std::vector<std::string>& A,
                           const IncidenceGraph& g) {
  std::set<std::string> in_b(B.begin(), B.end());
  for (const auto& id : A)
    if (in_b.count(id)) throw Error("OVERLAP", "'" + id + "' is in both A and B");
  if (B.empty()) return false;
  std::vector<std::string> uni;
  uni.insert(uni.end(), A.begin(), A.end());
  uni.insert(uni.end(), B.begin(), B.end());
  IncidenceGraph sub = g.induced(uni);
  for (const auto& id : B)
    if (sub.degree(id) <= 1) return false;
  auto all = [](int) { return true; };
  auto deg = [&](int v) { return sub.degree(v); };
  for (const auto& arc : detail::scan_clean_arcs(sub, all, all, deg)) {
    bool inside_b = true;
    for (const auto& id : arc.interior)
      if (!in_b.count(id)) {
        inside_b = false;
        break;
      }
    if (inside_b) return false;
  }
  return true;
}

// Inclusion-minimal closed sets over A with at most size_cap vertices,
// exhaustively enumerated, smallest first then lexicographic.
inline std::vector<std::vector<std::string>> find_closed_sets(const std::vector<std::string>& A,
                                                              const IncidenceGraph& g,
                                                              int size_cap) {
  std::set<std::string> in_a(A.begin(), A.end());
  std::vector<std::string> cand;
  for (const auto& id : g.ids())
    if (!in_a.count(id)) cand.push_back(id);
  std::vector<std::vector<std::string>> out;
  int m = static_cast<int>(cand.size());
  for (int size = 1; size <= std::min(size_cap, m); ++size) {
    std::vector<int> idx(size);
    for (int i = 0; i < size; ++i) idx[i] = i;
    for (;;) {
      std::vector<std::string> B;
      for (int i : idx) B.push_back(cand[i]);
      bool superset = false;
      for (const auto& prev : out) {
        if (std::includes(B.begin(), B.end(), prev.begin(), prev.end())) {
          superset = true;
          break;
        }
      }
      if (!superset && is_closed_over(B, A, g)) out.push_back(B);
      int i = size - 1;
      while (i >= 0 && idx[i] == m - size + i) --i;
      if (i < 0) break;
      ++idx[i];
      for (int j = i + 1; j < size; ++j) idx[j] = idx[j - 1] + 1;
    }
  }
  return out;
}

// Bounded approximation of the closure operator: alternately absorb every
// closed set found under the size cap and take the geodesic closure, for at
// most `rounds` rounds or until a fixpoint.
inline std::vector<std::string> cl_closure(const std::vector<std::string>& A,
                                           const IncidenceGraph& g, int size_cap, int rounds) {
  std::set<std::string> s(A.begin(), A.end());
  for (int r = 0; r < rounds; ++r) {
    size_t before = s.size();
    std::vector<std::string> sv(s.begin(), s.end());
    for (const auto& B : find_closed_sets(sv, g, size_cap)) s.insert(B.begin(), B.end());
    std::vector<std::string> sv2(s.begin(), s.end());
    for (const auto& v : geodesic_closure(g, sv2)) s.insert(v);
    if (s.size() == before) break;
  }
  return {s.begin(), s.end()};
}

// -- certificate replay --------------------------------------------------

struct VerifyResult {
  bool ok = true;
  int failed_step = -1;  // -1: base/header mismatch, otherwise 0-based step
  std::string reason;
};

inline VerifyResult verify_hf_certificate(const HFCertificate& cert, const IncidenceGraph& base,
                                          const IncidenceGraph& target) {
  VerifyResult res;
  auto fail = [&](int step, const std::string& why) {
    res.ok = false;
    res.failed_step = step;
    res.reason = why;
    return res;
  };
  if (cert.n != base.n() || cert.n != target.n())
    return fail(-1, "gonality mismatch");
  std::vector<std::string> declared = cert.base;
  std::sort(declared.begin(), declared.end());
  if (declared != base.ids()) return fail(-1, "certificate base does not match base graph");

  GraphBuilder cur = GraphBuilder::from(base);
  IncidenceGraph snap = base;
  for (size_t si = 0; si < cert.steps.size(); ++si) {
    const HFStep& s = cert.steps[si];
    int step = static_cast<int>(si);
    try {
      if (s.kind == HFStep::Kind::AddLooseEnd) {
        if (cur.has_vertex(s.vertex)) return fail(step, "vertex '" + s.vertex + "' already present");
        Part p;
        if (s.attach) {
          if (!cur.has_vertex(*s.attach))
            return fail(step, "attach vertex '" + *s.attach + "' missing");
          p = opposite(snap.part(*s.attach));
        } else if (s.part) {
          p = *s.part;
        } else if (target.has(s.vertex)) {
          p = target.part(s.vertex);
        } else {
          return fail(step, "cannot determine part of detached vertex '" + s.vertex + "'");
        }
        cur.add_vertex(s.vertex, p);
        if (s.attach) cur.add_edge(s.vertex, *s.attach);
      } else {
        if (static_cast<int>(s.interior.size()) != cert.n - 2)
          return fail(step, "arc interior must have exactly " + std::to_string(cert.n - 2) +
                                " vertices");
        if (!cur.has_vertex(s.a)) return fail(step, "endpoint '" + s.a + "' missing");
        if (!cur.has_vertex(s.b)) return fail(step, "endpoint '" + s.b + "' missing");
        if (s.a == s.b) return fail(step, "arc endpoints coincide");
        if (!s.relative) {
          int d = distance(snap, s.a, s.b);
          if (d != cert.n + 1)
            return fail(step, "endpoints at distance " + std::to_string(d) + ", expected " +
                                  std::to_string(cert.n + 1));
        }
        Part p = snap.part(s.a);
        std::string prev = s.a;
        for (const auto& iv : s.interior) {
          if (cur.has_vertex(iv)) return fail(step, "interior vertex '" + iv + "' already present");
          p = opposite(p);
          cur.add_vertex(iv, p);
          cur.add_edge(prev, iv);
          prev = iv;
        }
        cur.add_edge(prev, s.b);
      }
    } catch (const Error& e) {
      return fail(step, e.what());
    }
    snap = cur.build();
  }
  if (snap != target) return fail(static_cast<int>(cert.steps.size()), "result differs from target");
  return res;
}

}  // namespace gon
