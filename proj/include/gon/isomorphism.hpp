#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "gon/graph.hpp"

namespace gon {

namespace detail {

// Iterated neighborhood refinement. Colors start from (part, degree) and are
// re-bucketed by sorted neighbor color multisets until stable. Comparable
// across two graphs because buckets are keyed by the multiset itself.
inline std::vector<int> refine_colors(const IncidenceGraph& a, const IncidenceGraph& b,
                                      std::vector<int>* colors_b) {
  int na = a.vertex_count(), nb = b.vertex_count();
  std::vector<int> ca(na), cb(nb);
  {
    std::map<std::pair<int, int>, int> key;
    auto init = [&](const IncidenceGraph& g, std::vector<int>& c) {
      for (int v = 0; v < g.vertex_count(); ++v) {
        auto k = std::make_pair(g.part(v) == Part::Point ? 0 : 1, g.degree(v));
        auto [it, _] = key.emplace(k, static_cast<int>(key.size()));
        c[v] = it->second;
      }
    };
    init(a, ca);
    init(b, cb);
  }
  for (int round = 0; round < na + nb + 1; ++round) {
    std::map<std::pair<int, std::vector<int>>, int> key;
    auto next = [&](const IncidenceGraph& g, const std::vector<int>& c) {
      std::vector<int> out(g.vertex_count());
      for (int v = 0; v < g.vertex_count(); ++v) {
        std::vector<int> nb_colors;
        for (int w : g.neighbors(v)) nb_colors.push_back(c[w]);
        std::sort(nb_colors.begin(), nb_colors.end());
        auto k = std::make_pair(c[v], std::move(nb_colors));
        auto [it, _] = key.emplace(std::move(k), static_cast<int>(key.size()));
        out[v] = it->second;
      }
      return out;
    };
    std::vector<int> na2 = next(a, ca);
    std::vector<int> nb2 = next(b, cb);
    bool stable = true;
    for (int v = 0; v < na && stable; ++v) stable = na2[v] == ca[v];
    for (int v = 0; v < nb && stable; ++v) stable = nb2[v] == cb[v];
    ca.swap(na2);
    cb.swap(nb2);
    if (stable) break;
  }
  *colors_b = cb;
  return ca;
}

inline bool extend_mapping(const IncidenceGraph& a, const IncidenceGraph& b,
                           const std::vector<int>& ca, const std::vector<int>& cb,
                           const std::vector<int>& order, size_t pos, std::vector<int>& img,
                           std::vector<bool>& taken) {
  if (pos == order.size()) return true;
  int v = order[pos];
  for (int w = 0; w < b.vertex_count(); ++w) {
    if (taken[w] || cb[w] != ca[v]) continue;
    bool ok = true;
    for (int x : a.neighbors(v)) {
      if (img[x] >= 0 && !b.adjacent(img[x], w)) {
        ok = false;
        break;
      }
    }
    // mapped-neighbor check in one direction is enough: edge counts are
    // equal, so a complete map sending edges to edges is an isomorphism
    if (!ok) continue;
    img[v] = w;
    taken[w] = true;
    if (extend_mapping(a, b, ca, cb, order, pos + 1, img, taken)) return true;
    img[v] = -1;
    taken[w] = false;
  }
  return false;
}

}  // namespace detail

// Part- and gonality-respecting graph isomorphism witness, vertex id map
// from a to b. nullopt when the graphs are not isomorphic.
inline std::optional<std::unordered_map<std::string, std::string>> isomorphism_witness(
    const IncidenceGraph& a, const IncidenceGraph& b) {
  if (a.n() != b.n() || a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count())
    return std::nullopt;
  std::vector<int> cb;
  std::vector<int> ca = detail::refine_colors(a, b, &cb);
  std::vector<int> ha = ca, hb = cb;
  std::sort(ha.begin(), ha.end());
  std::sort(hb.begin(), hb.end());
  if (ha != hb) return std::nullopt;

  // match rare colors first
  std::unordered_map<int, int> freq;
  for (int c : ca) ++freq[c];
  std::vector<int> order(a.vertex_count());
  for (int v = 0; v < a.vertex_count(); ++v) order[v] = v;
  std::sort(order.begin(), order.end(), [&](int x, int y) {
    if (freq[ca[x]] != freq[ca[y]]) return freq[ca[x]] < freq[ca[y]];
    return x < y;
  });

  std::vector<int> img(a.vertex_count(), -1);
  std::vector<bool> taken(b.vertex_count(), false);
  if (!detail::extend_mapping(a, b, ca, cb, order, 0, img, taken)) return std::nullopt;

  std::unordered_map<std::string, std::string> out;
  for (int v = 0; v < a.vertex_count(); ++v) out[a.id_of(v)] = b.id_of(img[v]);
  return out;
}

inline bool isomorphic(const IncidenceGraph& a, const IncidenceGraph& b) {
  return isomorphism_witness(a, b).has_value();
}

}  // namespace gon
