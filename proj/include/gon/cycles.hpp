#pragma once

#include <algorithm>
#include <string>
#include <vector>

#include "gon/graph.hpp"

namespace gon {

enum class Ternary { No, Yes, Unknown };

inline const char* to_string(Ternary t) {
  switch (t) {
    case Ternary::No: return "no";
    case Ternary::Yes: return "yes";
    default: return "unknown";
  }
}

struct CycleSearch {
  Ternary found = Ternary::No;
  GraphPath cycle;            // closed walk, set when found == Yes
  long long expansions = 0;   // DFS nodes expanded
  long long budget = 0;
};

namespace detail {

struct LongCycleCtx {
  const IncidenceGraph* g;
  int min_len;
  long long budget;
  long long expansions = 0;
  bool exhausted = false;
  std::vector<int> path;
  std::vector<bool> used;
  std::vector<int> reach_mark;
  int reach_stamp = 0;
};

// Upper bound check: from `head`, count vertices reachable through unused
// vertices (plus the start). Any extension of the current path stays inside
// that set, so path_edges + reachable_new + 1 bounds every completable cycle.
inline bool can_still_close(LongCycleCtx& c, int head, int start, int* reachable_new) {
  auto& g = *c.g;
  ++c.reach_stamp;
  std::vector<int> stack{head};
  c.reach_mark[head] = c.reach_stamp;
  bool start_seen = false;
  int fresh = 0;
  while (!stack.empty()) {
    int u = stack.back();
    stack.pop_back();
    for (int w : g.neighbors(u)) {
      if (w == start) {
        start_seen = true;
        continue;
      }
      if (c.reach_mark[w] == c.reach_stamp || c.used[w]) continue;
      c.reach_mark[w] = c.reach_stamp;
      ++fresh;
      stack.push_back(w);
    }
  }
  *reachable_new = fresh;
  return start_seen;
}

inline bool long_cycle_dfs(LongCycleCtx& c, int start) {
  auto& g = *c.g;
  int head = c.path.back();
  if (c.expansions >= c.budget) {
    c.exhausted = true;
    return false;
  }
  ++c.expansions;

  int path_edges = static_cast<int>(c.path.size()) - 1;
  int fresh = 0;
  if (!can_still_close(c, head, start, &fresh)) return false;
  if (path_edges + fresh + 1 < c.min_len) return false;

  for (int w : g.neighbors(head)) {
    if (w == start && path_edges + 1 >= c.min_len && path_edges + 1 >= 3) return true;
    if (c.used[w] || w < start) continue;
    c.used[w] = true;
    c.path.push_back(w);
    if (long_cycle_dfs(c, start)) return true;
    c.path.pop_back();
    c.used[w] = false;
  }
  return false;
}

}  // namespace detail

// Does a simple cycle of length >= min_len exist? Yes comes with a witness,
// No is only reported after the search space was fully exhausted within
// budget, otherwise Unknown.
inline CycleSearch long_cycle_exists(const IncidenceGraph& g, int min_len, long long budget) {
  CycleSearch res;
  res.budget = budget;

  // cycles survive repeated removal of vertices of degree <= 1
  std::vector<int> deg(g.vertex_count());
  std::vector<bool> dead(g.vertex_count(), false);
  for (int v = 0; v < g.vertex_count(); ++v) deg[v] = g.degree(v);
  std::vector<int> stack;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (deg[v] <= 1) stack.push_back(v);
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    if (dead[v]) continue;
    dead[v] = true;
    for (int w : g.neighbors(v))
      if (!dead[w] && --deg[w] <= 1) stack.push_back(w);
  }

  detail::LongCycleCtx ctx;
  ctx.g = &g;
  ctx.min_len = min_len;
  ctx.budget = budget;
  ctx.used.assign(g.vertex_count(), false);
  ctx.reach_mark.assign(g.vertex_count(), 0);

  for (int s = 0; s < g.vertex_count(); ++s) {
    if (dead[s]) continue;
    ctx.path = {s};
    for (int v = 0; v < g.vertex_count(); ++v) ctx.used[v] = dead[v];
    ctx.used[s] = true;
    if (detail::long_cycle_dfs(ctx, s)) {
      res.found = Ternary::Yes;
      for (int v : ctx.path) res.cycle.vertices.push_back(g.id_of(v));
      res.cycle.vertices.push_back(g.id_of(s));
      res.expansions = ctx.expansions;
      return res;
    }
    if (ctx.exhausted) break;
  }
  res.expansions = ctx.expansions;
  res.found = ctx.exhausted ? Ternary::Unknown : Ternary::No;
  return res;
}

}  // namespace gon
