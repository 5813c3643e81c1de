#pragma once

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "ckalg/base.hpp"

namespace ckalg {

using Json = nlohmann::ordered_json;

/// Finite directed graph E = (E^0, E^1, r, s).  Vertices and edges are kept
/// in lexicographic order of their string ids; every downstream enumeration
/// and report inherits its determinism from this order.
class DirectedGraph {
 public:
  struct Edge {
    std::string id;
    int src = -1;
    int dst = -1;
  };

  DirectedGraph() = default;

  /// Validates and canonicalizes a raw description.  Throws input_error on
  /// duplicate ids or dangling endpoints.  An empty vertex set is accepted
  /// but flagged degenerate; analyses other than validation refuse it.
  static DirectedGraph create(std::vector<std::string> vertex_ids,
                              std::vector<std::tuple<std::string, std::string, std::string>>
                                  edge_triples /* id, src, dst */) {
    DirectedGraph g;
    std::sort(vertex_ids.begin(), vertex_ids.end());
    for (std::size_t i = 0; i + 1 < vertex_ids.size(); ++i) {
      if (vertex_ids[i] == vertex_ids[i + 1])
        throw input_error("duplicate vertex id \"" + vertex_ids[i] + "\"");
    }
    g.vertex_ids_ = std::move(vertex_ids);
    std::sort(edge_triples.begin(), edge_triples.end());
    for (auto& [id, src, dst] : edge_triples) {
      if (!g.edges_.empty() && g.edges_.back().id == id)
        throw input_error("duplicate edge id \"" + id + "\"");
      Edge e;
      e.id = id;
      e.src = g.vertex_index_or(src);
      e.dst = g.vertex_index_or(dst);
      if (e.src < 0) throw input_error("edge \"" + id + "\": dangling endpoint \"" + src + "\"");
      if (e.dst < 0) throw input_error("edge \"" + id + "\": dangling endpoint \"" + dst + "\"");
      g.edges_.push_back(std::move(e));
    }
    g.build_incidence();
    return g;
  }

  static DirectedGraph from_json(const Json& j) {
    if (!j.is_object() || !j.contains("vertices") || !j.contains("edges"))
      throw input_error("graph JSON must be an object with \"vertices\" and \"edges\"");
    std::vector<std::string> vs;
    for (const auto& v : j.at("vertices")) vs.push_back(v.get<std::string>());
    std::vector<std::tuple<std::string, std::string, std::string>> es;
    for (const auto& e : j.at("edges")) {
      es.emplace_back(e.at("id").get<std::string>(), e.at("src").get<std::string>(),
                      e.at("dst").get<std::string>());
    }
    return create(std::move(vs), std::move(es));
  }

  Json to_json() const {
    Json j;
    j["vertices"] = Json::array();
    for (const auto& v : vertex_ids_) j["vertices"].push_back(v);
    j["edges"] = Json::array();
    for (const auto& e : edges_) {
      j["edges"].push_back(
          {{"id", e.id}, {"src", vertex_ids_[e.src]}, {"dst", vertex_ids_[e.dst]}});
    }
    return j;
  }

  std::string to_dot() const {
    std::string s = "digraph E {\n";
    for (const auto& v : vertex_ids_) s += "  \"" + v + "\";\n";
    for (const auto& e : edges_) {
      s += "  \"" + vertex_ids_[e.src] + "\" -> \"" + vertex_ids_[e.dst] + "\" [label=\"" +
           e.id + "\"];\n";
    }
    s += "}\n";
    return s;
  }

  bool degenerate() const { return vertex_ids_.empty(); }
  void require_nondegenerate() const {
    if (degenerate()) throw input_error("degenerate: no analyses available for the empty graph");
  }

  int num_vertices() const { return static_cast<int>(vertex_ids_.size()); }
  int num_edges() const { return static_cast<int>(edges_.size()); }
  const std::string& vertex_id(int v) const { return vertex_ids_[v]; }
  const Edge& edge(int e) const { return edges_[e]; }
  const std::string& edge_id(int e) const { return edges_[e].id; }
  int src(int e) const { return edges_[e].src; }
  int dst(int e) const { return edges_[e].dst; }

  const std::vector<int>& out_edges(int v) const { return out_edges_[v]; }
  const std::vector<int>& in_edges(int v) const { return in_edges_[v]; }

  /// n_v = |r^{-1}(v)|, the number of edges v receives.
  int n_in(int v) const { return static_cast<int>(in_edges_[v].size()); }

  bool is_sink(int v) const { return out_edges_[v].empty(); }
  bool is_source(int v) const { return in_edges_[v].empty(); }

  std::vector<int> sinks() const {
    std::vector<int> r;
    for (int v = 0; v < num_vertices(); ++v)
      if (is_sink(v)) r.push_back(v);
    return r;
  }
  std::vector<int> sources() const {
    std::vector<int> r;
    for (int v = 0; v < num_vertices(); ++v)
      if (is_source(v)) r.push_back(v);
    return r;
  }

  int vertex_index(const std::string& id) const {
    int i = vertex_index_or(id);
    if (i < 0) throw input_error("unknown vertex id \"" + id + "\"");
    return i;
  }
  int edge_index(const std::string& id) const {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), id,
                               [](const Edge& e, const std::string& s) { return e.id < s; });
    if (it == edges_.end() || it->id != id)
      throw input_error("unknown edge id \"" + id + "\"");
    return static_cast<int>(it - edges_.begin());
  }

 private:
  int vertex_index_or(const std::string& id) const {
    auto it = std::lower_bound(vertex_ids_.begin(), vertex_ids_.end(), id);
    if (it == vertex_ids_.end() || *it != id) return -1;
    return static_cast<int>(it - vertex_ids_.begin());
  }

  void build_incidence() {
    out_edges_.assign(vertex_ids_.size(), {});
    in_edges_.assign(vertex_ids_.size(), {});
    for (int e = 0; e < num_edges(); ++e) {
      out_edges_[edges_[e].src].push_back(e);
      in_edges_[edges_[e].dst].push_back(e);
    }
  }

  std::vector<std::string> vertex_ids_;
  std::vector<Edge> edges_;
  std::vector<std::vector<int>> out_edges_;
  std::vector<std::vector<int>> in_edges_;
};

/// Finite edge path; length 0 carries a base vertex with s = r = base.
struct Path {
  std::vector<int> edges;
  int base = -1;  // meaningful only when edges.empty()

  static Path at_vertex(int v) { return Path{{}, v}; }

  int length() const { return static_cast<int>(edges.size()); }
  int source(const DirectedGraph& g) const { return edges.empty() ? base : g.src(edges.front()); }
  int range(const DirectedGraph& g) const { return edges.empty() ? base : g.dst(edges.back()); }

  bool valid(const DirectedGraph& g) const {
    if (edges.empty()) return base >= 0 && base < g.num_vertices();
    for (std::size_t i = 0; i + 1 < edges.size(); ++i)
      if (g.dst(edges[i]) != g.src(edges[i + 1])) return false;
    return true;
  }

  friend bool operator==(const Path& a, const Path& b) {
    if (a.edges.empty() && b.edges.empty()) return a.base == b.base;
    return a.edges == b.edges;
  }
  friend bool operator<(const Path& a, const Path& b) {
    if (a.edges.empty() && b.edges.empty()) return a.base < b.base;
    return a.edges < b.edges;
  }

  std::string label(const DirectedGraph& g) const {
    if (edges.empty()) return "(" + g.vertex_id(base) + ")";
    std::string s = "(";
    for (std::size_t i = 0; i < edges.size(); ++i) {
      if (i) s += ",";
      s += g.edge_id(edges[i]);
    }
    return s + ")";
  }
};

/// All paths of exactly length n, in lexicographic edge order.
inline std::vector<Path> paths_of_length(const DirectedGraph& g, int n) {
  std::vector<Path> cur;
  for (int v = 0; v < g.num_vertices(); ++v) cur.push_back(Path::at_vertex(v));
  for (int step = 0; step < n; ++step) {
    std::vector<Path> next;
    for (const auto& p : cur) {
      for (int e : g.out_edges(p.range(g))) {
        Path q = p;
        q.edges.push_back(e);
        next.push_back(std::move(q));
      }
    }
    cur = std::move(next);
  }
  std::sort(cur.begin(), cur.end());
  return cur;
}

/// Number of paths of length n ending at each vertex.
inline std::vector<long long> path_counts_into(const DirectedGraph& g, int n) {
  std::vector<long long> cnt(g.num_vertices(), 1);
  for (int step = 0; step < n; ++step) {
    std::vector<long long> next(g.num_vertices(), 0);
    for (int e = 0; e < g.num_edges(); ++e) next[g.dst(e)] += cnt[g.src(e)];
    cnt = std::move(next);
  }
  return cnt;
}

// ---------------------------------------------------------------------------
// Loops and conditions (L), (K)
// ---------------------------------------------------------------------------

/// Simple loops: closed paths visiting no vertex twice except the base.
/// Rotations anchored at different base points count as distinct loops.
inline std::vector<Path> simple_loops(const DirectedGraph& g) {
  g.require_nondegenerate();
  std::vector<Path> loops;
  std::vector<int> stack_edges;
  std::set<int> visited;
  auto dfs = [&](auto&& self, int base, int at) -> void {
    for (int e : g.out_edges(at)) {
      int w = g.dst(e);
      if (w == base) {
        loops.push_back(Path{stack_edges, -1});
        loops.back().edges.push_back(e);
      } else if (!visited.count(w)) {
        visited.insert(w);
        stack_edges.push_back(e);
        self(self, base, w);
        stack_edges.pop_back();
        visited.erase(w);
      }
    }
  };
  for (int v = 0; v < g.num_vertices(); ++v) {
    visited = {v};
    dfs(dfs, v, v);
  }
  std::sort(loops.begin(), loops.end());
  return loops;
}

inline bool is_simple_loop(const DirectedGraph& g, const Path& mu) {
  if (mu.edges.empty() || !mu.valid(g)) return false;
  if (mu.source(g) != mu.range(g)) return false;
  std::set<int> seen;
  for (int e : mu.edges) {
    if (!seen.insert(g.src(e)).second) return false;
  }
  return true;
}

/// Standard exit: an edge whose source lies on the loop but which is not one
/// of the loop's edges.
inline bool loop_has_exit(const DirectedGraph& g, const Path& mu) {
  if (!is_simple_loop(g, mu)) throw input_error("loop_has_exit: path is not a simple loop");
  std::set<int> loop_edges(mu.edges.begin(), mu.edges.end());
  for (int e : mu.edges) {
    for (int f : g.out_edges(g.src(e))) {
      if (!loop_edges.count(f)) return true;
    }
  }
  return false;
}

/// Variant exit reading: the loop is connected to a vertex not lying on it.
/// Differs from loop_has_exit exactly on parallel edges between loop
/// vertices; graphs where the two disagree are flagged in reports.
inline bool loop_has_exit_to_outside_vertex(const DirectedGraph& g, const Path& mu) {
  if (!is_simple_loop(g, mu)) throw input_error("path is not a simple loop");
  std::set<int> loop_vertices;
  for (int e : mu.edges) loop_vertices.insert(g.src(e));
  for (int v : loop_vertices) {
    for (int f : g.out_edges(v)) {
      if (!loop_vertices.count(g.dst(f))) return true;
    }
  }
  return false;
}

inline bool condition_L(const DirectedGraph& g) {
  for (const auto& mu : simple_loops(g)) {
    if (!loop_has_exit(g, mu)) return false;
  }
  return true;
}

/// Every vertex bases at least two simple loops or lies on none.
inline bool condition_K(const DirectedGraph& g) {
  std::vector<int> based(g.num_vertices(), 0);
  for (const auto& mu : simple_loops(g)) ++based[mu.source(g)];
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (based[v] == 1) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Hereditary and saturated vertex sets
// ---------------------------------------------------------------------------

using VertexSet = std::set<int>;

inline bool is_hereditary(const DirectedGraph& g, const VertexSet& V) {
  for (int e = 0; e < g.num_edges(); ++e) {
    if (V.count(g.src(e)) && !V.count(g.dst(e))) return false;
  }
  return true;
}

/// Every non-sink all of whose outgoing edges land in V belongs to V.
inline bool is_saturated(const DirectedGraph& g, const VertexSet& V) {
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (g.is_sink(v) || V.count(v)) continue;
    bool feeds_only_V = true;
    for (int e : g.out_edges(v)) {
      if (!V.count(g.dst(e))) { feeds_only_V = false; break; }
    }
    if (feeds_only_V) return false;
  }
  return true;
}

constexpr int kSubsetEnumerationGuard = 20;

/// All hereditary and saturated subsets, in lexicographic order of the
/// canonical vertex indicator.  Always contains the empty set and E^0.
inline std::vector<VertexSet> hereditary_saturated_sets(const DirectedGraph& g) {
  g.require_nondegenerate();
  int n = g.num_vertices();
  if (n > kSubsetEnumerationGuard)
    throw input_error("size guard: subset enumeration needs |E^0| <= " +
                      std::to_string(kSubsetEnumerationGuard));
  std::vector<VertexSet> out;
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    VertexSet V;
    for (int v = 0; v < n; ++v)
      if (mask >> v & 1) V.insert(v);
    if (is_hereditary(g, V) && is_saturated(g, V)) out.push_back(std::move(V));
  }
  std::sort(out.begin(), out.end());
  return out;
}

/// Least hereditary and saturated set containing V; idempotent and monotone.
inline VertexSet saturate(const DirectedGraph& g, VertexSet V) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (int e = 0; e < g.num_edges(); ++e) {
      if (V.count(g.src(e)) && !V.count(g.dst(e))) { V.insert(g.dst(e)); changed = true; }
    }
    for (int v = 0; v < g.num_vertices(); ++v) {
      if (g.is_sink(v) || V.count(v)) continue;
      bool feeds_only_V = true;
      for (int e : g.out_edges(v)) {
        if (!V.count(g.dst(e))) { feeds_only_V = false; break; }
      }
      if (feeds_only_V) { V.insert(v); changed = true; }
    }
  }
  return V;
}

/// E^0 minus the saturation of the sinks; the induced subgraph has no sinks.
inline VertexSet sinkless_part(const DirectedGraph& g) {
  g.require_nondegenerate();
  VertexSet sinks;
  for (int v : g.sinks()) sinks.insert(v);
  VertexSet closure = saturate(g, sinks);
  VertexSet out;
  for (int v = 0; v < g.num_vertices(); ++v)
    if (!closure.count(v)) out.insert(v);
  return out;
}

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

/// A(v,w) = number of edges from v to w, indexed by canonical vertex order.
inline std::vector<std::vector<long long>> adjacency_matrix(const DirectedGraph& g) {
  g.require_nondegenerate();
  std::vector A(g.num_vertices(), std::vector<long long>(g.num_vertices(), 0));
  for (int e = 0; e < g.num_edges(); ++e) ++A[g.src(e)][g.dst(e)];
  return A;
}

/// A_E(e,f) = 1 iff r(e) = s(f), indexed by canonical edge order.
inline std::vector<std::vector<int>> edge_matrix(const DirectedGraph& g) {
  g.require_nondegenerate();
  std::vector M(g.num_edges(), std::vector<int>(g.num_edges(), 0));
  for (int e = 0; e < g.num_edges(); ++e) {
    for (int f = 0; f < g.num_edges(); ++f) {
      if (g.dst(e) == g.src(f)) M[e][f] = 1;
    }
  }
  return M;
}

// ---------------------------------------------------------------------------
// Verdicts
// ---------------------------------------------------------------------------

struct GraphVerdicts {
  bool condition_L = false;
  bool condition_K = false;
  bool simple = false;
  std::size_t gauge_ideal_count = 0;
  bool all_ideals_gauge_invariant = false;
  /// Loops where the standard exit definition and the connected-to-outside
  /// reading disagree (possible with parallel edges between loop vertices).
  std::vector<Path> exit_definition_disagreements;
};

inline GraphVerdicts graph_verdicts(const DirectedGraph& g) {
  g.require_nondegenerate();
  GraphVerdicts r;
  r.condition_L = condition_L(g);
  r.condition_K = condition_K(g);
  auto lattice = hereditary_saturated_sets(g);
  r.gauge_ideal_count = lattice.size();
  r.simple = r.condition_L && lattice.size() == 2;
  if (g.num_vertices() == 0) r.simple = false;
  r.all_ideals_gauge_invariant = r.condition_K;
  for (const auto& mu : simple_loops(g)) {
    if (loop_has_exit(g, mu) != loop_has_exit_to_outside_vertex(g, mu))
      r.exit_definition_disagreements.push_back(mu);
  }
  return r;
}

inline Json vertex_set_to_json(const DirectedGraph& g, const VertexSet& V) {
  Json a = Json::array();
  for (int v : V) a.push_back(g.vertex_id(v));
  return a;
}

}  // namespace ckalg
