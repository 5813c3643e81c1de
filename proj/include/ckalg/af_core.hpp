#pragma once

#include <Eigen/Dense>
#include <Eigen/SVD>
#include <map>
#include <vector>

#include "ckalg/exact_scalar.hpp"
#include "ckalg/graph.hpp"

namespace ckalg {

/// S_mu S_nu*: an equal-length path pair with common range.  Length-0 units
/// are the vertex projections P_v.
struct MatrixUnit {
  Path mu;
  Path nu;

  bool valid(const DirectedGraph& g) const {
    return mu.valid(g) && nu.valid(g) && mu.length() == nu.length() &&
           mu.range(g) == nu.range(g);
  }
  bool diagonal() const { return mu == nu; }

  friend bool operator==(const MatrixUnit& a, const MatrixUnit& b) {
    return a.mu == b.mu && a.nu == b.nu;
  }
  friend bool operator<(const MatrixUnit& a, const MatrixUnit& b) {
    if (a.mu.length() != b.mu.length()) return a.mu.length() < b.mu.length();
    if (!(a.mu == b.mu)) return a.mu < b.mu;
    return a.nu < b.nu;
  }

  std::string label(const DirectedGraph& g) const {
    return mu.label(g) + "*" + nu.label(g);
  }
};

/// Element of the AF core: a finite ExactScalar-combination of matrix units,
/// kept in canonical form at its level L = max unit length.  Canonical form
/// expands every unit whose range is not a sink up to length L via
/// P_v = sum_{s(e)=v} S_e S_e*; sink-rooted units keep their native length.
/// In canonical form two units multiply nontrivially only when the inner
/// paths coincide, which makes multiplication a sparse join.
class AfElement {
 public:
  using Terms = std::map<MatrixUnit, ExactScalar>;

  AfElement() = default;
  explicit AfElement(const DirectedGraph& g) : g_(&g) {}

  static AfElement zero(const DirectedGraph& g) { return AfElement(g); }

  static AfElement vertex_projection(const DirectedGraph& g, int v) {
    AfElement a(g);
    a.add_term(MatrixUnit{Path::at_vertex(v), Path::at_vertex(v)}, 1);
    return a;
  }

  static AfElement identity(const DirectedGraph& g) {
    AfElement a(g);
    for (int v = 0; v < g.num_vertices(); ++v)
      a.add_term(MatrixUnit{Path::at_vertex(v), Path::at_vertex(v)}, 1);
    return a;
  }

  static AfElement from_unit(const DirectedGraph& g, MatrixUnit u, ExactScalar c = 1) {
    if (!u.valid(g)) throw input_error("invalid matrix unit");
    AfElement a(g);
    a.add_term(std::move(u), std::move(c));
    return a;
  }

  /// Adds c * S_mu S_nu* and restores canonical form.
  void add(MatrixUnit u, ExactScalar c) {
    if (!u.valid(*g_)) throw input_error("invalid matrix unit");
    add_term(std::move(u), std::move(c));
  }

  const DirectedGraph& graph() const { return *g_; }
  const Terms& terms() const { return terms_; }
  int level() const { return level_; }
  bool is_zero() const { return terms_.empty(); }

  AfElement& operator+=(const AfElement& o) {
    check_same_graph(o);
    if (o.level_ > level_) embed_in_place(o.level_);
    AfElement rhs = o;
    rhs.embed_in_place(level_);
    for (auto& [u, c] : rhs.terms_) accumulate(u, c);
    return *this;
  }
  AfElement& operator-=(const AfElement& o) { return *this += -o; }

  AfElement operator-() const {
    AfElement r = *this;
    for (auto& [u, c] : r.terms_) c = -c;
    return r;
  }

  friend AfElement operator+(AfElement a, const AfElement& b) { return a += b; }
  friend AfElement operator-(AfElement a, const AfElement& b) { return a -= b; }

  friend AfElement operator*(const ExactScalar& s, AfElement a) {
    if (s.is_zero()) return AfElement::zero(a.graph());
    for (auto& [u, c] : a.terms_) c *= s;
    return a;
  }

  friend AfElement operator*(const AfElement& a, const AfElement& b) {
    a.check_same_graph(b);
    int l = std::max(a.level_, b.level_);
    AfElement x = a, y = b;
    x.embed_in_place(l);
    y.embed_in_place(l);
    // Group y's terms by the left path nu for the inner-product join.
    std::map<Path, std::vector<const std::pair<const MatrixUnit, ExactScalar>*>> by_mu;
    for (const auto& t : y.terms_) by_mu[t.first.mu].push_back(&t);
    AfElement r(a.graph());
    r.level_ = l;
    for (const auto& [u, c] : x.terms_) {
      auto it = by_mu.find(u.nu);
      if (it == by_mu.end()) continue;
      for (const auto* t : it->second) {
        r.accumulate(MatrixUnit{u.mu, t->first.nu}, c * t->second);
      }
    }
    r.shrink_level();
    return r;
  }

  AfElement adjoint() const {
    AfElement r(*g_);
    r.level_ = level_;
    for (const auto& [u, c] : terms_) r.terms_.emplace(MatrixUnit{u.nu, u.mu}, c);
    return r;
  }

  AfElement embed_to_level(int l) const {
    AfElement r = *this;
    if (l < level_) throw input_error("cannot embed below the element's level");
    r.embed_in_place(l);
    return r;
  }

  friend bool operator==(const AfElement& a, const AfElement& b) {
    a.check_same_graph(b);
    int l = std::max(a.level_, b.level_);
    AfElement x = a, y = b;
    x.embed_in_place(l);
    y.embed_in_place(l);
    return x.terms_ == y.terms_;
  }
  friend bool operator!=(const AfElement& a, const AfElement& b) { return !(a == b); }

  /// Max spectral norm over the blocks F_L(v) and the sink blocks F_i(w).
  double operator_norm() const {
    if (terms_.empty()) return 0;
    const DirectedGraph& g = *g_;
    // Block key: (range vertex, unit length); collect the path basis of each.
    std::map<std::pair<int, int>, std::map<Path, int>> block_paths;
    for (const auto& [u, c] : terms_) {
      auto key = std::make_pair(u.mu.range(g), u.mu.length());
      auto& paths = block_paths[key];
      if (!paths.count(u.mu)) { int i = static_cast<int>(paths.size()); paths[u.mu] = i; }
      if (!paths.count(u.nu)) { int i = static_cast<int>(paths.size()); paths[u.nu] = i; }
    }
    double best = 0;
    for (auto& [key, paths] : block_paths) {
      int n = static_cast<int>(paths.size());
      Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
      for (const auto& [u, c] : terms_) {
        if (u.mu.range(g) != key.first || u.mu.length() != key.second) continue;
        m(paths[u.mu], paths[u.nu]) += c.to_double();
      }
      Eigen::JacobiSVD<Eigen::MatrixXd> svd(m);
      best = std::max(best, svd.singularValues().size() ? svd.singularValues()(0) : 0.0);
    }
    return best;
  }

 private:
  void check_same_graph(const AfElement& o) const {
    if (g_ != o.g_) throw input_error("AfElements belong to different graphs");
  }

  void accumulate(const MatrixUnit& u, const ExactScalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(u);
    if (it == terms_.end()) {
      terms_.emplace(u, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  /// Adds one unit and restores canonical form at max(level, |u|).
  void add_term(MatrixUnit u, ExactScalar c) {
    if (u.mu.length() > level_) embed_in_place(u.mu.length());
    // Expand the incoming unit itself up to the current level.
    std::vector<std::pair<MatrixUnit, ExactScalar>> stack{{std::move(u), std::move(c)}};
    while (!stack.empty()) {
      auto [w, s] = std::move(stack.back());
      stack.pop_back();
      int rv = w.mu.range(*g_);
      if (w.mu.length() < level_ && !g_->is_sink(rv)) {
        for (int e : g_->out_edges(rv)) {
          MatrixUnit w2 = w;
          w2.mu.edges.push_back(e);
          w2.nu.edges.push_back(e);
          stack.emplace_back(std::move(w2), s);
        }
      } else {
        accumulate(w, s);
      }
    }
  }

  void embed_in_place(int l) {
    if (l <= level_) return;
    for (int step = level_; step < l; ++step) {
      Terms next;
      for (auto& [u, c] : terms_) {
        int rv = u.mu.range(*g_);
        if (g_->is_sink(rv)) {
          next.emplace(u, c);
          continue;
        }
        for (int e : g_->out_edges(rv)) {
          MatrixUnit u2 = u;
          u2.mu.edges.push_back(e);
          u2.nu.edges.push_back(e);
          next.emplace(std::move(u2), c);
        }
      }
      terms_ = std::move(next);
    }
    level_ = l;
  }

  /// Lowers the level tag when the element no longer has full-length units
  /// (e.g. after cancellation); contents are untouched.
  void shrink_level() {
    int m = 0;
    for (const auto& [u, c] : terms_) m = std::max(m, u.mu.length());
    level_ = m;
  }

  const DirectedGraph* g_ = nullptr;
  Terms terms_;
  int level_ = 0;
};

// ---------------------------------------------------------------------------
// Level bases and dimensions
// ---------------------------------------------------------------------------

/// Canonical basis of F_N: all pairs of length-N paths with common non-sink
/// range, plus native-length pairs into sinks at every length i <= N.
inline std::vector<MatrixUnit> level_basis(const DirectedGraph& g, int n) {
  g.require_nondegenerate();
  std::vector<MatrixUnit> basis;
  for (int len = 0; len <= n; ++len) {
    std::map<int, std::vector<Path>> by_range;
    for (const auto& p : paths_of_length(g, len)) by_range[p.range(g)].push_back(p);
    for (auto& [v, ps] : by_range) {
      if (len < n && !g.is_sink(v)) continue;  // expands upward; not native here
      for (const auto& mu : ps)
        for (const auto& nu : ps) basis.push_back(MatrixUnit{mu, nu});
    }
  }
  std::sort(basis.begin(), basis.end());
  return basis;
}

/// Per-vertex counts m_N(v) = |{mu in E^N : r(mu) = v}|.
inline std::map<int, long long> f_n_dimensions(const DirectedGraph& g, int n) {
  g.require_nondegenerate();
  auto cnt = path_counts_into(g, n);
  std::map<int, long long> r;
  for (int v = 0; v < g.num_vertices(); ++v) r[v] = cnt[v];
  return r;
}

/// dim F_N = sum over non-sinks of m_N(v)^2 plus the sink tails
/// sum_{w sink} sum_{i<=N} m_i(w)^2.
inline long long f_n_total_dimension(const DirectedGraph& g, int n) {
  g.require_nondegenerate();
  long long dim = 0;
  for (int i = 0; i <= n; ++i) {
    auto cnt = path_counts_into(g, i);
    for (int v = 0; v < g.num_vertices(); ++v) {
      if (i == n && !g.is_sink(v)) dim += cnt[v] * cnt[v];  // F_N(v) bricks
      if (g.is_sink(v)) dim += cnt[v] * cnt[v];             // frozen sink summands
    }
  }
  return dim;
}

// ---------------------------------------------------------------------------
// Bratteli diagram
// ---------------------------------------------------------------------------

struct BratteliDiagram {
  struct Node {
    int vertex;        // graph vertex
    int tail_birth;    // -1 for path-part nodes; sink level i for tail nodes
    long long mult;    // matrix size of the summand
  };
  struct Arrow {
    int level;   // between level and level+1
    int from;    // node index at `level`
    int to;      // node index at `level+1`
    long long mult;
  };
  std::vector<std::vector<Node>> levels;
  std::vector<Arrow> arrows;
};

inline BratteliDiagram bratteli_diagram(const DirectedGraph& g, int depth) {
  g.require_nondegenerate();
  if (depth < 0) throw input_error("depth must be >= 0");
  BratteliDiagram d;
  auto A = adjacency_matrix(g);
  for (int lvl = 0; lvl <= depth; ++lvl) {
    auto cnt = path_counts_into(g, lvl);
    std::vector<BratteliDiagram::Node> nodes;
    for (int v = 0; v < g.num_vertices(); ++v) {
      if (cnt[v] > 0) nodes.push_back({v, -1, cnt[v]});
    }
    // Frozen sink summands F_i(w), i < lvl, carried down as tails.
    for (int i = 0; i < lvl; ++i) {
      auto ci = path_counts_into(g, i);
      for (int w : g.sinks()) {
        if (ci[w] > 0) nodes.push_back({w, i, ci[w]});
      }
    }
    d.levels.push_back(std::move(nodes));
  }
  for (int lvl = 0; lvl + 1 <= depth; ++lvl) {
    const auto& cur = d.levels[lvl];
    const auto& nxt = d.levels[lvl + 1];
    for (int i = 0; i < static_cast<int>(cur.size()); ++i) {
      for (int j = 0; j < static_cast<int>(nxt.size()); ++j) {
        long long m = 0;
        if (cur[i].tail_birth >= 0) {
          // A tail node connects only to its own continuation.
          if (nxt[j].tail_birth == cur[i].tail_birth && nxt[j].vertex == cur[i].vertex) m = 1;
        } else if (nxt[j].tail_birth == lvl) {
          // A sink at the path-part freezes into its tail with one arrow.
          if (nxt[j].vertex == cur[i].vertex && g.is_sink(cur[i].vertex)) m = 1;
        } else if (nxt[j].tail_birth < 0) {
          m = A[cur[i].vertex][nxt[j].vertex];
        }
        if (m > 0) d.arrows.push_back({lvl, i, j, m});
      }
    }
  }
  return d;
}

// ---------------------------------------------------------------------------
// Ideals from hereditary saturated sets
// ---------------------------------------------------------------------------

struct IdealBasisReport {
  std::vector<MatrixUnit> basis;   // level-basis units with range in V
  bool closed_under_multiplication = false;
};

/// Basis of the gauge-invariant ideal attached to a hereditary saturated V,
/// at one level, plus a verification that it absorbs products with every
/// level-basis unit on both sides.
inline IdealBasisReport ideal_from_hereditary_saturated(const DirectedGraph& g,
                                                        const VertexSet& V, int level) {
  if (!is_hereditary(g, V) || !is_saturated(g, V))
    throw input_error("vertex set is not hereditary and saturated");
  IdealBasisReport r;
  auto all = level_basis(g, level);
  std::set<MatrixUnit> in_ideal;
  for (const auto& u : all) {
    if (V.count(u.mu.range(g))) {
      r.basis.push_back(u);
      in_ideal.insert(u);
    }
  }
  r.closed_under_multiplication = true;
  for (const auto& u : r.basis) {
    AfElement x = AfElement::from_unit(g, u);
    for (const auto& w : all) {
      AfElement y = AfElement::from_unit(g, w);
      AfElement products[] = {x * y, y * x};
      for (const AfElement& prod : products) {
        for (const auto& [t, c] : prod.terms()) {
          // Products may land at a higher canonical level; membership there
          // still means "range in V" because V is hereditary.
          if (!V.count(t.mu.range(g))) r.closed_under_multiplication = false;
        }
      }
    }
  }
  return r;
}

}  // namespace ckalg
