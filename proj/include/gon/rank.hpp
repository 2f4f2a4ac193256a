#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "gon/graph.hpp"
#include "gon/polygon.hpp"

namespace gon {

// delta(g) = (n-1)|V| - (n-2)|E|
inline long long delta(const IncidenceGraph& g) {
  if (g.vertex_count() > (1 << 30) || g.edge_count() > (1LL << 40))
    throw Error("OVERFLOW", "graph too large for exact delta arithmetic");
  long long a = g.n() - 1, c = g.n() - 2;
  return a * g.vertex_count() - c * static_cast<long long>(g.edge_count());
}

// delta of the subgraph induced on the given vertices
inline long long delta(const IncidenceGraph& g, const std::vector<std::string>& vertices) {
  std::vector<char> in(g.vertex_count(), 0);
  for (const auto& id : vertices) in[g.index_of(id)] = 1;
  long long nv = 0, ne = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (!in[v]) continue;
    ++nv;
    for (int w : g.neighbors(v))
      if (in[w] && w > v) ++ne;
  }
  long long a = g.n() - 1, c = g.n() - 2;
  return a * nv - c * ne;
}

// delta(whole) - delta(induced base), cross-checked against the
// complement formula (n-1)|V\B| - (n-2)(|E(V\B)| + |E(V\B, B)|)
inline long long delta_relative(const IncidenceGraph& whole,
                                const std::vector<std::string>& base) {
  std::vector<char> in_base(whole.vertex_count(), 0);
  for (const auto& id : base) in_base[whole.index_of(id)] = 1;
  std::vector<std::string> base_ids;
  for (int v = 0; v < whole.vertex_count(); ++v)
    if (in_base[v]) base_ids.push_back(whole.id_of(v));
  long long by_definition = delta(whole) - delta(whole, base_ids);

  long long rest = 0, rest_edges = 0, cross = 0;
  for (int v = 0; v < whole.vertex_count(); ++v) {
    if (in_base[v]) continue;
    ++rest;
    for (int w : whole.neighbors(v)) {
      if (in_base[w])
        ++cross;
      else if (w > v)
        ++rest_edges;
    }
  }
  long long a = whole.n() - 1, c = whole.n() - 2;
  long long by_formula = a * rest - c * (rest_edges + cross);
  if (by_definition != by_formula)
    throw Error("INTERNAL", "relative delta formulas disagree");
  return by_definition;
}

// base as a subgraph with its own edge set; each induced edge the base
// omits shifts the result down by (n-2)
inline long long delta_relative(const IncidenceGraph& whole, const IncidenceGraph& base) {
  if (base.n() != whole.n())
    throw Error("BASE_NOT_SUBGRAPH", "gonality mismatch between base and graph");
  for (const auto& id : base.ids())
    if (!whole.has(id) || base.part(id) != whole.part(id))
      throw Error("BASE_NOT_SUBGRAPH", "base vertex '" + id + "' not in graph");
  long long missing = 0;
  {
    IncidenceGraph ind = whole.induced(base.ids());
    for (const auto& [x, y] : base.edges())
      if (!whole.adjacent(x, y))
        throw Error("BASE_NOT_SUBGRAPH", "base edge " + x + " " + y + " not in graph");
    missing = ind.edge_count() - base.edge_count();
  }
  long long by_definition = delta(whole) - delta(base);
  long long by_formula =
      delta_relative(whole, base.ids()) - (whole.n() - 2) * missing;
  if (by_definition != by_formula)
    throw Error("INTERNAL", "relative delta formulas disagree");
  return by_definition;
}

struct DeltaReport {
  // minimal delta(X) - delta(base) over supersets X of the base; 0 when strong
  long long delta = 0;
  std::optional<std::vector<std::string>> relative_to;
  std::optional<std::vector<std::string>> witness;

  bool strong() const { return !witness.has_value(); }
};

namespace detail {

// Shared strength core. The base is a vertex set plus its own delta value,
// so a base carrying fewer edges than the induced subgraph just shifts the
// starting relative delta below zero.
inline DeltaReport n_strong_core(const IncidenceGraph& g,
                                 const std::vector<char>& in_base,
                                 long long base_delta) {
  const int V = g.vertex_count();
  const long long a = g.n() - 1, c = g.n() - 2;

  std::vector<std::string> base_ids;
  for (int v = 0; v < V; ++v)
    if (in_base[v]) base_ids.push_back(g.id_of(v));
  long long rel0 = delta(g, base_ids) - base_delta;

  std::vector<int> comp;
  for (int v = 0; v < V; ++v)
    if (!in_base[v]) comp.push_back(v);
  const int K = static_cast<int>(comp.size());

  long long best = rel0;
  std::vector<int> best_set;

  if (K <= 16) {
    std::vector<uint32_t> adj(K, 0);
    std::vector<int> base_deg(K, 0), pos(V, -1);
    for (int k = 0; k < K; ++k) pos[comp[k]] = k;
    for (int k = 0; k < K; ++k)
      for (int w : g.neighbors(comp[k])) {
        if (in_base[w])
          ++base_deg[k];
        else
          adj[k] |= 1u << pos[w];
      }
    std::vector<long long> rel(size_t(1) << K, rel0);
    for (uint32_t m = 1; m < (1u << K); ++m) {
      int low = __builtin_ctz(m);
      uint32_t restm = m & (m - 1);
      rel[m] = rel[restm] + a - c * (base_deg[low] + __builtin_popcount(adj[low] & restm));
      if (rel[m] < best) {
        best = rel[m];
        best_set.clear();
        for (int k = 0; k < K; ++k)
          if (m >> k & 1) best_set.push_back(comp[k]);
      }
    }
  } else {
    // branch and bound over connected subsets of the complement
    std::vector<int> pos(V, -1);
    for (int k = 0; k < K; ++k) pos[comp[k]] = k;
    std::vector<long long> potential(K);
    for (int k = 0; k < K; ++k)
      potential[k] = std::min<long long>(0, a - c * g.degree(comp[k]));

    std::vector<char> in_set(V, 0), offered(V, 0);
    std::vector<int> cur;
    long long rel = rel0;

    auto bound = [&]() {
      long long s = 0;
      for (int k = 0; k < K; ++k)
        if (!in_set[comp[k]]) s += potential[k];
      return s;
    };

    std::function<void(std::vector<int>)> grow = [&](std::vector<int> ext) {
      while (!ext.empty()) {
        int u = ext.back();
        ext.pop_back();
        int touching = 0;
        for (int w : g.neighbors(u))
          if (in_base[w] || in_set[w]) ++touching;
        long long gain = a - c * touching;
        rel += gain;
        in_set[u] = 1;
        cur.push_back(u);
        if (rel < best) {
          best = rel;
          best_set = cur;
        }
        std::vector<int> newly;
        if (rel + bound() < best) {
          std::vector<int> next = ext;
          for (int w : g.neighbors(u))
            if (pos[w] >= 0 && !in_set[w] && !offered[w]) {
              offered[w] = 1;
              newly.push_back(w);
              next.push_back(w);
            }
          grow(next);
        }
        for (int w : newly) offered[w] = 0;
        in_set[u] = 0;
        cur.pop_back();
        rel -= gain;
      }
    };

    for (int r = 0; r < K; ++r) {
      int v = comp[r];
      int touching = 0;
      for (int w : g.neighbors(v))
        if (in_base[w]) ++touching;
      long long gain = a - c * touching;
      rel += gain;
      in_set[v] = 1;
      cur.push_back(v);
      offered[v] = 1;
      if (rel < best) {
        best = rel;
        best_set = cur;
      }
      std::vector<int> newly;
      if (rel + bound() < best) {
        std::vector<int> ext;
        for (int w : g.neighbors(v))
          if (pos[w] > r && !offered[w]) {
            offered[w] = 1;
            newly.push_back(w);
            ext.push_back(w);
          }
        grow(ext);
      }
      for (int w : newly) offered[w] = 0;
      offered[v] = 0;
      in_set[v] = 0;
      cur.pop_back();
      rel -= gain;
    }
  }

  DeltaReport rep;
  rep.delta = best;
  rep.relative_to = base_ids;
  if (best < 0) {
    // shrink within the X >= base family: try dropping attachment vertices
    std::set<std::string> keep(base_ids.begin(), base_ids.end());
    std::vector<std::string> x = base_ids;
    for (int v : best_set) x.push_back(g.id_of(v));
    std::sort(x.begin(), x.end());
    // cand always contains the whole base, so the base's own delta is the
    // reference value
    auto violates = [&](const std::vector<std::string>& cand) {
      return delta(g, cand) - base_delta < 0;
    };
    bool shrunk = true;
    while (shrunk) {
      shrunk = false;
      for (size_t i = 0; i < x.size(); ++i) {
        if (keep.count(x[i])) continue;
        std::vector<std::string> cand = x;
        cand.erase(cand.begin() + i);
        if (violates(cand)) {
          x = cand;
          shrunk = true;
          break;
        }
      }
    }
    rep.witness = x;
  }
  return rep;
}

}  // namespace detail

// base as a vertex set: the base subgraph is the one induced on it
inline DeltaReport is_n_strong(const std::vector<std::string>& base,
                               const IncidenceGraph& g) {
  std::vector<char> in_base(g.vertex_count(), 0);
  for (const auto& id : base) in_base[g.index_of(id)] = 1;
  std::vector<std::string> ids;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (in_base[v]) ids.push_back(g.id_of(v));
  return detail::n_strong_core(g, in_base, delta(g, ids));
}

// base as a subgraph with its own edge set (may omit edges present in g)
inline DeltaReport is_n_strong(const IncidenceGraph& base, const IncidenceGraph& g) {
  if (base.n() != g.n())
    throw Error("BASE_NOT_SUBGRAPH", "gonality mismatch between base and graph");
  std::vector<char> in_base(g.vertex_count(), 0);
  for (const auto& id : base.ids()) {
    if (!g.has(id))
      throw Error("BASE_NOT_SUBGRAPH", "base vertex '" + id + "' not in graph");
    if (base.part(id) != g.part(id))
      throw Error("BASE_NOT_SUBGRAPH", "base vertex '" + id + "' has the wrong part");
    in_base[g.index_of(id)] = 1;
  }
  for (const auto& [x, y] : base.edges())
    if (!g.adjacent(x, y))
      throw Error("BASE_NOT_SUBGRAPH", "base edge " + x + " " + y + " not in graph");
  return detail::n_strong_core(g, in_base, delta(base));
}

struct ZeroStep {
  enum class Kind { CleanArc, Closed };
  Kind kind;
  std::vector<std::string> added;  // the new vertices of this step, sorted
  std::vector<std::string> upto;   // all vertices after this step, sorted
};

inline const char* to_string(ZeroStep::Kind k) {
  return k == ZeroStep::Kind::CleanArc ? "CLEAN_ARC" : "CLOSED";
}

// Chain base = B_0 < B_1 < ... < B_k = V(g), each step a smallest connected
// zero-extension, classified as a clean arc or a set closed over the front.
inline std::vector<ZeroStep> minimal_zero_decomposition(
    const std::vector<std::string>& base, const IncidenceGraph& g) {
  DeltaReport strength = is_n_strong(base, g);
  if (!strength.strong())
    throw Error("NOT_STRONG", "base is not n-strong in the ambient graph");
  long long rel = delta_relative(g, base);
  if (rel != 0)
    throw Error("NONZERO_DELTA",
                "relative delta over the base is " + std::to_string(rel) + ", not 0");

  const int V = g.vertex_count();
  const long long a = g.n() - 1, c = g.n() - 2;
  std::vector<char> in_front(V, 0);
  for (const auto& id : base) in_front[g.index_of(id)] = 1;

  std::vector<ZeroStep> chain;
  while (true) {
    std::vector<int> comp;
    for (int v = 0; v < V; ++v)
      if (!in_front[v]) comp.push_back(v);
    if (comp.empty()) break;
    const int K = static_cast<int>(comp.size());
    std::vector<int> pos(V, -1);
    for (int k = 0; k < K; ++k) pos[comp[k]] = k;

    size_t best_size = comp.size() + 1;
    std::vector<std::string> best_ids;

    std::vector<char> in_set(V, 0), offered(V, 0);
    std::vector<int> cur;
    long long relv = 0;

    auto consider = [&]() {
      if (relv != 0) return;
      std::vector<std::string> ids;
      for (int v : cur) ids.push_back(g.id_of(v));
      std::sort(ids.begin(), ids.end());
      if (cur.size() < best_size || (cur.size() == best_size && ids < best_ids)) {
        best_size = cur.size();
        best_ids = ids;
      }
    };

    std::function<void(std::vector<int>, int)> grow = [&](std::vector<int> ext, int root) {
      while (!ext.empty()) {
        int u = ext.back();
        ext.pop_back();
        int touching = 0;
        for (int w : g.neighbors(u))
          if (in_front[w] || in_set[w]) ++touching;
        relv += a - c * touching;
        in_set[u] = 1;
        cur.push_back(u);
        consider();
        std::vector<int> newly;
        if (cur.size() < best_size) {
          std::vector<int> next = ext;
          for (int w : g.neighbors(u))
            if (pos[w] > root && !in_set[w] && !offered[w]) {
              offered[w] = 1;
              newly.push_back(w);
              next.push_back(w);
            }
          grow(next, root);
        }
        for (int w : newly) offered[w] = 0;
        in_set[u] = 0;
        cur.pop_back();
        relv -= a - c * touching;
      }
    };

    for (int r = 0; r < K; ++r) {
      int v = comp[r];
      int touching = 0;
      for (int w : g.neighbors(v))
        if (in_front[w]) ++touching;
      relv += a - c * touching;
      in_set[v] = 1;
      cur.push_back(v);
      offered[v] = 1;
      consider();
      std::vector<int> newly;
      if (cur.size() < best_size) {
        std::vector<int> ext;
        for (int w : g.neighbors(v))
          if (pos[w] > r && !offered[w]) {
            offered[w] = 1;
            newly.push_back(w);
            ext.push_back(w);
          }
        grow(ext, r);
      }
      for (int w : newly) offered[w] = 0;
      offered[v] = 0;
      in_set[v] = 0;
      cur.pop_back();
      relv -= a - c * touching;
    }

    if (best_ids.empty())
      throw Error("DICHOTOMY", "no connected zero-extension over the current front");

    std::vector<std::string> front_ids;
    for (int v = 0; v < V; ++v)
      if (in_front[v]) front_ids.push_back(g.id_of(v));
    std::vector<std::string> upto = front_ids;
    upto.insert(upto.end(), best_ids.begin(), best_ids.end());
    std::sort(upto.begin(), upto.end());

    std::set<std::string> front_set(front_ids.begin(), front_ids.end());
    bool is_arc = false;
    IncidenceGraph step_graph = g.induced(upto);
    for (const auto& arc : clean_arcs(step_graph)) {
      std::vector<std::string> interior = arc.interior;
      std::sort(interior.begin(), interior.end());
      if (interior == best_ids && front_set.count(arc.a) && front_set.count(arc.b)) {
        is_arc = true;
        break;
      }
    }

    ZeroStep step;
    step.added = best_ids;
    step.upto = upto;
    if (is_arc) {
      step.kind = ZeroStep::Kind::CleanArc;
    } else if (is_closed_over(best_ids, front_ids, g)) {
      step.kind = ZeroStep::Kind::Closed;
    } else {
      throw Error("DICHOTOMY",
                  "zero-extension step is neither a clean arc nor closed over the front");
    }
    chain.push_back(step);
    for (const auto& id : best_ids) in_front[g.index_of(id)] = 1;
  }
  return chain;
}

}  // namespace gon
