#pragma once

#include <algorithm>
#include <limits>
#include <queue>
#include <set>
#include <string>
#include <vector>

#include "gon/graph.hpp"

namespace gon {

// Unreachable pairs report distance -1; acyclic graphs report girth -1.

inline std::vector<int> distances_from(const IncidenceGraph& g, int src) {
  std::vector<int> d(g.vertex_count(), -1);
  d[src] = 0;
  std::queue<int> q;
  q.push(src);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int w : g.neighbors(u))
      if (d[w] < 0) {
        d[w] = d[u] + 1;
        q.push(w);
      }
  }
  return d;
}

inline int distance(const IncidenceGraph& g, int u, int v) {
  if (u == v) return 0;
  std::vector<int> d(g.vertex_count(), -1);
  d[u] = 0;
  std::queue<int> q;
  q.push(u);
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    for (int w : g.neighbors(x)) {
      if (d[w] >= 0) continue;
      d[w] = d[x] + 1;
      if (w == v) return d[w];
      q.push(w);
    }
  }
  return -1;
}

inline int distance(const IncidenceGraph& g, const std::string& u, const std::string& v) {
  return distance(g, g.index_of(u), g.index_of(v));
}

inline bool is_connected(const IncidenceGraph& g) {
  if (g.vertex_count() == 0) return true;
  const auto d = distances_from(g, 0);
  return std::find(d.begin(), d.end(), -1) == d.end();
}

inline int diameter(const IncidenceGraph& g) {
  int best = 0;
  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto d = distances_from(g, v);
    for (int x : d) {
      if (x < 0) return -1;
      best = std::max(best, x);
    }
  }
  return best;
}

namespace detail {

// BFS from root; every non-tree edge (u, w) yields the cycle length bound
// d[u] + d[w] + 1. The minimum of these bounds over all roots is exact.
inline int girth_from(const IncidenceGraph& g, int root, int* out_u, int* out_w) {
  std::vector<int> d(g.vertex_count(), -1), parent(g.vertex_count(), -1);
  d[root] = 0;
  std::queue<int> q;
  q.push(root);
  int best = std::numeric_limits<int>::max();
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int w : g.neighbors(u)) {
      if (d[w] < 0) {
        d[w] = d[u] + 1;
        parent[w] = u;
        q.push(w);
      } else if (w != parent[u] && u < w) {
        int len = d[u] + d[w] + 1;
        if (len < best) {
          best = len;
          if (out_u) *out_u = u;
          if (out_w) *out_w = w;
        }
      }
    }
  }
  return best == std::numeric_limits<int>::max() ? -1 : best;
}

inline std::vector<int> tree_path_to_root(const std::vector<int>& parent, int v) {
  std::vector<int> path;
  for (int x = v; x != -1; x = parent[x]) path.push_back(x);
  return path;
}

}  // namespace detail

inline int girth(const IncidenceGraph& g) {
  int best = -1;
  for (int r = 0; r < g.vertex_count(); ++r) {
    int c = detail::girth_from(g, r, nullptr, nullptr);
    if (c > 0 && (best < 0 || c < best)) best = c;
  }
  return best;
}

// Closed walk (first vertex repeated at the end) realizing the girth.
// Deterministic: first root and edge in scan order achieving it.
inline GraphPath girth_witness(const IncidenceGraph& g) {
  int target = girth(g);
  if (target < 0) throw Error("ACYCLIC", "graph has no cycle");
  for (int r = 0; r < g.vertex_count(); ++r) {
    std::vector<int> d(g.vertex_count(), -1), parent(g.vertex_count(), -1);
    d[r] = 0;
    std::queue<int> q;
    q.push(r);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int w : g.neighbors(u)) {
        if (d[w] < 0) {
          d[w] = d[u] + 1;
          parent[w] = u;
          q.push(w);
        } else if (w != parent[u] && u < w && d[u] + d[w] + 1 == target) {
          auto pu = detail::tree_path_to_root(parent, u);
          auto pw = detail::tree_path_to_root(parent, w);
          std::vector<bool> on_u(g.vertex_count(), false);
          for (int x : pu) on_u[x] = true;
          int shared = 0;
          for (int x : pw) shared += on_u[x] ? 1 : 0;
          if (shared != 1) continue;  // tree paths overlap: not a simple cycle
          GraphPath cyc;
          for (auto it = pu.rbegin(); it != pu.rend(); ++it) cyc.vertices.push_back(g.id_of(*it));
          for (size_t i = 0; i + 1 < pw.size(); ++i) cyc.vertices.push_back(g.id_of(pw[i]));
          cyc.vertices.push_back(g.id_of(r));
          return cyc;
        }
      }
    }
  }
  throw Error("INTERNAL", "girth witness extraction failed");
}

namespace detail {

inline long long sat_add(long long a, long long b) {
  constexpr long long cap = std::numeric_limits<long long>::max() / 2;
  return std::min(a + b, cap);
}

}  // namespace detail

inline long long geodesic_count(const IncidenceGraph& g, const std::string& su,
                                const std::string& sv) {
  int u = g.index_of(su), v = g.index_of(sv);
  if (u == v) return 1;
  std::vector<int> d(g.vertex_count(), -1);
  std::vector<long long> cnt(g.vertex_count(), 0);
  d[u] = 0;
  cnt[u] = 1;
  std::queue<int> q;
  q.push(u);
  while (!q.empty()) {
    int x = q.front();
    q.pop();
    if (x == v) break;
    for (int w : g.neighbors(x)) {
      if (d[w] < 0) {
        d[w] = d[x] + 1;
        cnt[w] = cnt[x];
        q.push(w);
      } else if (d[w] == d[x] + 1) {
        cnt[w] = detail::sat_add(cnt[w], cnt[x]);
      }
    }
  }
  return d[v] < 0 ? 0 : cnt[v];
}

inline bool geodesic_unique(const IncidenceGraph& g, const std::string& u,
                            const std::string& v) {
  return geodesic_count(g, u, v) == 1;
}

// Least superset of A such that whenever two members are at distance
// 0 < d < n with a unique shortest path, that path's vertices are members too.
inline std::vector<std::string> geodesic_closure(const IncidenceGraph& g,
                                                 const std::vector<std::string>& A);

// Lexicographically least shortest path by id sequence.
inline GraphPath geodesic_witness(const IncidenceGraph& g, const std::string& su,
                                  const std::string& sv) {
  int u = g.index_of(su), v = g.index_of(sv);
  const auto dv = distances_from(g, v);
  if (dv[u] < 0) throw Error("UNREACHABLE", "'" + su + "' and '" + sv + "' are not connected");
  GraphPath p;
  p.vertices.push_back(su);
  int cur = u;
  while (cur != v) {
    int best = -1;
    for (int w : g.neighbors(cur)) {
      if (dv[w] != dv[cur] - 1) continue;
      if (best < 0 || g.id_of(w) < g.id_of(best)) best = w;
    }
    cur = best;
    p.vertices.push_back(g.id_of(cur));
  }
  return p;
}

inline std::vector<std::string> geodesic_closure(const IncidenceGraph& g,
                                                 const std::vector<std::string>& A) {
  std::set<std::string> s(A.begin(), A.end());
  bool grew = true;
  while (grew) {
    grew = false;
    std::vector<std::string> cur(s.begin(), s.end());
    for (size_t i = 0; i < cur.size() && !grew; ++i) {
      for (size_t j = i + 1; j < cur.size() && !grew; ++j) {
        int d = distance(g, cur[i], cur[j]);
        if (d <= 0 || d >= g.n()) continue;
        if (geodesic_count(g, cur[i], cur[j]) != 1) continue;
        for (const auto& v : geodesic_witness(g, cur[i], cur[j]).vertices)
          if (s.insert(v).second) grew = true;
      }
    }
  }
  return {s.begin(), s.end()};
}

}  // namespace gon
