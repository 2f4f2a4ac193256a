#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "gon/completion.hpp"
#include "gon/graph.hpp"
#include "gon/metrics.hpp"
#include "gon/polygon.hpp"

namespace gon {

struct AmalgamSpec {
  IncidenceGraph A, B, C;
  std::map<std::string, std::string> into_b, into_c;  // A vertex -> B/C vertex
};

namespace detail {

inline void check_embedding(const IncidenceGraph& a, const IncidenceGraph& target,
                            const std::map<std::string, std::string>& emb,
                            const std::string& side) {
  if (a.n() != target.n())
    throw Error("BAD_EMBEDDING", side + ": gonality mismatch");
  std::set<std::string> image;
  for (const auto& id : a.ids()) {
    auto it = emb.find(id);
    if (it == emb.end())
      throw Error("BAD_EMBEDDING", side + ": no image for vertex '" + id + "'");
    if (!target.has(it->second))
      throw Error("BAD_EMBEDDING",
                  side + ": image vertex '" + it->second + "' does not exist");
    if (!image.insert(it->second).second)
      throw Error("BAD_EMBEDDING", side + ": map is not injective at '" + it->second + "'");
    if (a.part(id) != target.part(it->second))
      throw Error("BAD_EMBEDDING", side + ": part mismatch at '" + id + "'");
  }
  for (const auto& [u, w] : a.edges())
    if (!target.adjacent(emb.at(u), emb.at(w)))
      throw Error("BAD_EMBEDDING",
                  side + ": edge " + u + " " + w + " has no image edge");
  // the image must be an induced copy, not just a homomorphic one
  long long induced_edges = 0;
  for (const auto& [u, w] : target.edges())
    if (image.count(u) && image.count(w)) ++induced_edges;
  if (induced_edges != static_cast<long long>(a.edge_count()))
    throw Error("BAD_EMBEDDING", side + ": image carries extra edges");
}

}  // namespace detail

struct FreeAmalgamResult {
  IncidenceGraph graph;
  bool disconnected;
};

// Pushout carrier: "a.<id>" for the shared part, "b.<id>"/"c.<id>" for the
// rest; no edges between the two private sides.
inline FreeAmalgamResult free_amalgam(const AmalgamSpec& spec) {
  detail::check_embedding(spec.A, spec.B, spec.into_b, "B");
  detail::check_embedding(spec.A, spec.C, spec.into_c, "C");

  std::map<std::string, std::string> from_b, from_c;  // target vertex -> A vertex
  for (const auto& [src, dst] : spec.into_b) from_b[dst] = src;
  for (const auto& [src, dst] : spec.into_c) from_c[dst] = src;

  auto b_name = [&](const std::string& id) {
    auto it = from_b.find(id);
    return it != from_b.end() ? "a." + it->second : "b." + id;
  };
  auto c_name = [&](const std::string& id) {
    auto it = from_c.find(id);
    return it != from_c.end() ? "a." + it->second : "c." + id;
  };

  GraphBuilder out(spec.A.n());
  for (const auto& id : spec.A.ids()) out.add_vertex("a." + id, spec.A.part(id));
  for (const auto& id : spec.B.ids())
    if (!from_b.count(id)) out.add_vertex("b." + id, spec.B.part(id));
  for (const auto& id : spec.C.ids())
    if (!from_c.count(id)) out.add_vertex("c." + id, spec.C.part(id));

  std::set<std::pair<std::string, std::string>> seen;
  auto add_edge = [&](std::string u, std::string w) {
    if (w < u) std::swap(u, w);
    if (seen.emplace(u, w).second) out.add_edge(u, w);
  };
  for (const auto& [u, w] : spec.B.edges()) add_edge(b_name(u), b_name(w));
  for (const auto& [u, w] : spec.C.edges()) add_edge(c_name(u), c_name(w));

  IncidenceGraph g = out.build();
  bool disconnected = g.vertex_count() > 0 && !is_connected(g);
  return {std::move(g), disconnected};
}

struct CanonicalAmalgamResult {
  CompletionTrace trace;
  bool closed_in_b = false;  // geodesic closure of the shared image stays put in B
  bool closed_in_c = false;
  Ternary nondegenerate = Ternary::Unknown;
};

inline CanonicalAmalgamResult canonical_amalgam(const AmalgamSpec& spec, int stages,
                                                long long budget = 1000000) {
  detail::check_embedding(spec.A, spec.B, spec.into_b, "B");
  detail::check_embedding(spec.A, spec.C, spec.into_c, "C");

  auto check_side = [&](const IncidenceGraph& host,
                        const std::map<std::string, std::string>& emb,
                        const std::string& side) {
    std::set<std::string> image;
    for (const auto& [src, dst] : emb) image.insert(dst);
    std::vector<std::string> base(image.begin(), image.end()), rest;
    for (const auto& id : host.ids())
      if (!image.count(id)) rest.push_back(id);
    if (!is_open_over(rest, base, host).open)
      throw Error("NOT_OPEN_OVER", side + ": shared image is not relatively open");
    return geodesic_closure(host, base) == base;
  };
  CanonicalAmalgamResult result;
  result.closed_in_b = check_side(spec.B, spec.into_b, "B");
  result.closed_in_c = check_side(spec.C, spec.into_c, "C");

  FreeAmalgamResult fam = free_amalgam(spec);

  auto side_stays_open = [&](char drop, const std::string& side) {
    std::vector<std::string> base, rest;
    for (const auto& id : fam.graph.ids()) {
      if (id[0] == drop)
        rest.push_back(id);
      else
        base.push_back(id);
    }
    if (!is_open_over(rest, base, fam.graph).open)
      throw Error("AMALGAM_OPENNESS",
                  side + " side lost relative openness in the amalgam");
  };
  side_stays_open('c', "B");
  side_stays_open('b', "C");

  result.trace = complete(fam.graph, stages);
  result.nondegenerate = check_nondegenerate(fam.graph, budget).verdict;
  return result;
}

// No edge may join the two private sides of a registered split.
inline bool is_free_amalgam_inside(const IncidenceGraph& g,
                                   const std::vector<std::string>& A,
                                   const std::vector<std::string>& B,
                                   const std::vector<std::string>& C) {
  std::set<std::string> a_set(A.begin(), A.end()), b_set(B.begin(), B.end()),
      c_set(C.begin(), C.end());
  for (const auto& id : A) (void)g.index_of(id);
  for (const auto& id : B) (void)g.index_of(id);
  for (const auto& id : C) (void)g.index_of(id);
  std::set<std::string> inter;
  for (const auto& id : b_set)
    if (c_set.count(id)) inter.insert(id);
  if (inter != a_set)
    throw Error("BAD_SPLIT", "the shared set must equal the intersection of the sides");
  for (const auto& [u, w] : g.edges()) {
    bool u_b = b_set.count(u) && !a_set.count(u), w_b = b_set.count(w) && !a_set.count(w);
    bool u_c = c_set.count(u) && !a_set.count(u), w_c = c_set.count(w) && !a_set.count(w);
    if ((u_b && w_c) || (u_c && w_b)) return false;
  }
  return true;
}

}  // namespace gon
