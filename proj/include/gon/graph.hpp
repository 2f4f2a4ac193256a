#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <unordered_set>
#include <utility>
#include <vector>

namespace gon {

enum class Part { Point, Line };

inline Part opposite(Part p) { return p == Part::Point ? Part::Line : Part::Point; }
inline char part_char(Part p) { return p == Part::Point ? 'P' : 'L'; }

class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string& msg)
      : std::runtime_error(code + ": " + msg), code_(std::move(code)) {}
  const std::string& code() const { return code_; }

 private:
  std::string code_;
};

// Records how a vertex entered the graph: part of the original seed, interior
// of an arc added at some completion stage, or a loose vertex hung off an
// attach point.
struct Provenance {
  enum class Kind { Seed, Arc, Loose };

  Kind kind = Kind::Seed;
  int stage = 0;
  std::string a, b;  // arc endpoints, lexicographically ordered
  int pos = 0;       // interior position counted from a, 1-based
  std::string attach;

  static Provenance seed() { return {}; }

  static Provenance arc(int stage, std::string ea, std::string eb, int pos) {
    if (eb < ea) std::swap(ea, eb);
    Provenance p;
    p.kind = Kind::Arc;
    p.stage = stage;
    p.a = std::move(ea);
    p.b = std::move(eb);
    p.pos = pos;
    return p;
  }

  static Provenance loose(int stage, std::string attach) {
    Provenance p;
    p.kind = Kind::Loose;
    p.stage = stage;
    p.attach = std::move(attach);
    return p;
  }
};

inline bool valid_vertex_id(const std::string& id) {
  if (id.empty()) return false;
  for (unsigned char c : id)
    if (c < 33 || c > 126) return false;
  return true;
}

class GraphBuilder;

/**
 * Bipartite point-line incidence structure with a gonality parameter n >= 3.
 * Immutable after construction; all mutation goes through GraphBuilder.
 * Vertices are indexed in lexicographic id order.
 */
class IncidenceGraph {
 public:
  IncidenceGraph() = default;

  int n() const { return n_; }
  int vertex_count() const { return static_cast<int>(ids_.size()); }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  const std::vector<std::string>& ids() const { return ids_; }

  bool has(const std::string& id) const { return index_.count(id) > 0; }

  int index_of(const std::string& id) const {
    auto it = index_.find(id);
    if (it == index_.end()) throw Error("UNKNOWN_VERTEX", "no vertex '" + id + "'");
    return it->second;
  }

  const std::string& id_of(int idx) const { return ids_[idx]; }

  Part part(int idx) const { return parts_[idx]; }
  Part part(const std::string& id) const { return parts_[index_of(id)]; }

  const Provenance& provenance(int idx) const { return prov_[idx]; }
  const Provenance& provenance(const std::string& id) const { return prov_[index_of(id)]; }

  int degree(int idx) const { return static_cast<int>(adj_[idx].size()); }
  int degree(const std::string& id) const { return degree(index_of(id)); }

  const std::vector<int>& neighbors(int idx) const { return adj_[idx]; }

  std::vector<std::string> neighbor_ids(const std::string& id) const {
    std::vector<std::string> out;
    for (int v : adj_[index_of(id)]) out.push_back(ids_[v]);
    return out;
  }

  bool adjacent(int u, int v) const {
    const auto& a = adj_[u];
    return std::binary_search(a.begin(), a.end(), v);
  }
  bool adjacent(const std::string& u, const std::string& v) const {
    return adjacent(index_of(u), index_of(v));
  }

  // Index pairs (u, v) with u < v, sorted.
  const std::vector<std::pair<int, int>>& edge_index_pairs() const { return edges_; }

  // Id pairs, lexicographically ordered within each pair and overall.
  std::vector<std::pair<std::string, std::string>> edges() const {
    std::vector<std::pair<std::string, std::string>> out;
    out.reserve(edges_.size());
    for (auto [u, v] : edges_) {
      std::string a = ids_[u], b = ids_[v];
      if (b < a) std::swap(a, b);
      out.emplace_back(std::move(a), std::move(b));
    }
    std::sort(out.begin(), out.end());
    return out;
  }

  // Provenance is bookkeeping, not structure.
  bool operator==(const IncidenceGraph& o) const {
    return n_ == o.n_ && ids_ == o.ids_ && parts_ == o.parts_ && edges() == o.edges();
  }
  bool operator!=(const IncidenceGraph& o) const { return !(*this == o); }

  IncidenceGraph induced(const std::vector<std::string>& keep) const;

 private:
  friend class GraphBuilder;

  int n_ = 3;
  std::vector<std::string> ids_;
  std::vector<Part> parts_;
  std::vector<Provenance> prov_;
  std::vector<std::vector<int>> adj_;
  std::vector<std::pair<int, int>> edges_;
  std::unordered_map<std::string, int> index_;
};

class GraphBuilder {
 public:
  explicit GraphBuilder(int n) : n_(n) {
    if (n < 3) throw Error("BAD_N", "gonality must be at least 3, got " + std::to_string(n));
  }

  static GraphBuilder from(const IncidenceGraph& g) {
    GraphBuilder b(g.n());
    for (int i = 0; i < g.vertex_count(); ++i)
      b.add_vertex(g.id_of(i), g.part(i), g.provenance(i));
    for (auto [u, v] : g.edge_index_pairs()) b.add_edge(g.id_of(u), g.id_of(v));
    return b;
  }

  int n() const { return n_; }

  bool has_vertex(const std::string& id) const { return verts_.count(id) > 0; }

  bool has_edge(const std::string& a, const std::string& b) const {
    return edges_.count(edge_key(a, b)) > 0;
  }

  GraphBuilder& add_vertex(const std::string& id, Part part,
                           Provenance prov = Provenance::seed()) {
    if (!valid_vertex_id(id))
      throw Error("BAD_VERTEX_ID", "'" + id + "' is not a nonempty ASCII id without whitespace");
    if (verts_.count(id)) throw Error("DUPLICATE_VERTEX", "vertex '" + id + "' already present");
    verts_.emplace(id, VertexData{part, std::move(prov)});
    return *this;
  }

  GraphBuilder& add_edge(const std::string& a, const std::string& b) {
    auto ia = verts_.find(a);
    auto ib = verts_.find(b);
    if (ia == verts_.end()) throw Error("UNKNOWN_ENDPOINT", "no vertex '" + a + "'");
    if (ib == verts_.end()) throw Error("UNKNOWN_ENDPOINT", "no vertex '" + b + "'");
    if (a == b) throw Error("SELF_LOOP", "edge from '" + a + "' to itself");
    if (ia->second.part == ib->second.part)
      throw Error("CROSS_PART", "edge '" + a + "' -- '" + b + "' joins two " +
                                    (ia->second.part == Part::Point ? std::string("points")
                                                                    : std::string("lines")));
    if (!edges_.insert(edge_key(a, b)).second)
      throw Error("DUPLICATE_EDGE", "edge '" + a + "' -- '" + b + "' already present");
    return *this;
  }

  GraphBuilder& remove_vertex(const std::string& id) {
    if (!verts_.erase(id)) throw Error("UNKNOWN_VERTEX", "no vertex '" + id + "'");
    for (auto it = edges_.begin(); it != edges_.end();) {
      if (it->first == id || it->second == id)
        it = edges_.erase(it);
      else
        ++it;
    }
    return *this;
  }

  GraphBuilder& remove_edge(const std::string& a, const std::string& b) {
    if (!edges_.erase(edge_key(a, b)))
      throw Error("UNKNOWN_EDGE", "no edge '" + a + "' -- '" + b + "'");
    return *this;
  }

  std::vector<std::string> vertex_ids() const {
    std::vector<std::string> out;
    out.reserve(verts_.size());
    for (const auto& [id, _] : verts_) out.push_back(id);
    std::sort(out.begin(), out.end());
    return out;
  }

  IncidenceGraph build() const {
    IncidenceGraph g;
    g.n_ = n_;
    g.ids_ = vertex_ids();
    g.parts_.reserve(g.ids_.size());
    g.prov_.reserve(g.ids_.size());
    for (int i = 0; i < static_cast<int>(g.ids_.size()); ++i) {
      const auto& vd = verts_.at(g.ids_[i]);
      g.parts_.push_back(vd.part);
      g.prov_.push_back(vd.prov);
      g.index_.emplace(g.ids_[i], i);
    }
    g.adj_.assign(g.ids_.size(), {});
    for (const auto& [a, b] : edges_) {
      int u = g.index_.at(a), v = g.index_.at(b);
      g.adj_[u].push_back(v);
      g.adj_[v].push_back(u);
      g.edges_.emplace_back(std::min(u, v), std::max(u, v));
    }
    for (auto& nb : g.adj_) std::sort(nb.begin(), nb.end());
    std::sort(g.edges_.begin(), g.edges_.end());
    return g;
  }

 private:
  struct VertexData {
    Part part;
    Provenance prov;
  };

  static std::pair<std::string, std::string> edge_key(std::string a, std::string b) {
    if (b < a) std::swap(a, b);
    return {std::move(a), std::move(b)};
  }

  struct PairHash {
    size_t operator()(const std::pair<std::string, std::string>& p) const {
      return std::hash<std::string>{}(p.first) * 1000003u ^ std::hash<std::string>{}(p.second);
    }
  };

  int n_;
  std::unordered_map<std::string, VertexData> verts_;
  std::unordered_set<std::pair<std::string, std::string>, PairHash> edges_;
};

inline IncidenceGraph IncidenceGraph::induced(const std::vector<std::string>& keep) const {
  GraphBuilder b(n_);
  for (const auto& id : keep) b.add_vertex(id, part(id), provenance(id));
  for (auto [u, v] : edges_) {
    const std::string& a = ids_[u];
    const std::string& c = ids_[v];
    if (b.has_vertex(a) && b.has_vertex(c)) b.add_edge(a, c);
  }
  return b.build();
}

// Vertex sequence with consecutive vertices adjacent; length = edge count.
struct GraphPath {
  std::vector<std::string> vertices;
  int length() const { return static_cast<int>(vertices.size()) - 1; }
};

}  // namespace gon
