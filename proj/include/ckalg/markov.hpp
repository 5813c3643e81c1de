#pragma once

#include <variant>

#include "ckalg/af_core.hpp"
#include "ckalg/graph.hpp"
#include "ckalg/lasso.hpp"

namespace ckalg {

// The one-sided topological Markov chain (Omega_E, sigma_E) with sinks:
// points are finite paths ending in a sink (including bare sink vertices)
// and infinite paths; of the latter, the eventually periodic ones are
// representable as lassos, which suffices for every periodic-point and
// tail-class computation here.  Functions live on cylinders.

/// Finite path whose range is a sink; length 0 is a bare sink vertex.
struct SinkPath {
  Path path;

  bool valid(const DirectedGraph& g) const {
    return path.valid(g) && g.is_sink(path.range(g));
  }
  friend bool operator==(const SinkPath& a, const SinkPath& b) { return a.path == b.path; }
  friend bool operator<(const SinkPath& a, const SinkPath& b) { return a.path < b.path; }
};

/// Eventually periodic infinite edge path.
struct EdgeLasso {
  LassoSeq<int> seq;  // symbols are edge indices

  bool valid(const DirectedGraph& g) const {
    if (g.degenerate() || g.num_edges() == 0 || seq.cycle.empty()) return false;
    std::size_t n = seq.prefix.size() + seq.cycle.size() + 1;
    for (std::size_t i = 0; i + 1 < n + seq.cycle.size(); ++i) {
      if (g.dst(seq.at(i)) != g.src(seq.at(i + 1))) return false;
    }
    return true;
  }
  friend bool operator==(const EdgeLasso& a, const EdgeLasso& b) { return a.seq == b.seq; }
  friend bool operator<(const EdgeLasso& a, const EdgeLasso& b) { return a.seq < b.seq; }
};

using OmegaPoint = std::variant<SinkPath, EdgeLasso>;

inline bool omega_point_less(const OmegaPoint& a, const OmegaPoint& b) {
  if (a.index() != b.index()) return a.index() < b.index();
  if (a.index() == 0) return std::get<SinkPath>(a) < std::get<SinkPath>(b);
  return std::get<EdgeLasso>(a) < std::get<EdgeLasso>(b);
}

/// sigma_E drops the first edge; undefined on bare sink vertices.
inline OmegaPoint shift(const DirectedGraph& g, const OmegaPoint& p) {
  if (std::holds_alternative<SinkPath>(p)) {
    const SinkPath& s = std::get<SinkPath>(p);
    if (s.path.length() == 0)
      throw input_error("shift is undefined on bare sink vertices");
    SinkPath r;
    if (s.path.length() == 1) {
      r.path = Path::at_vertex(g.dst(s.path.edges.front()));
    } else {
      r.path.edges.assign(s.path.edges.begin() + 1, s.path.edges.end());
    }
    return r;
  }
  EdgeLasso r = std::get<EdgeLasso>(p);
  r.seq = r.seq.shifted();
  return r;
}

// ---------------------------------------------------------------------------
// Cylinder functions
// ---------------------------------------------------------------------------

/// Locally constant function on Omega_E: an ExactScalar combination of
/// cylinder indicators chi_[mu].  A length-0 path is the vertex cylinder
/// {points starting at v}; when r(mu) is a sink, [mu] is the single point
/// {SinkPath(mu)}.  Canonical form mirrors the AF core's: cylinders with
/// non-sink range expand to the max level via [mu] = disjoint union of
/// [mu e], sink-ended cylinders stay native, so distinct canonical basis
/// cylinders are disjoint.
class CylinderFunction {
 public:
  using Terms = std::map<Path, ExactScalar>;

  CylinderFunction() = default;
  explicit CylinderFunction(const DirectedGraph& g) : g_(&g) {}

  static CylinderFunction zero(const DirectedGraph& g) { return CylinderFunction(g); }

  static CylinderFunction indicator(const DirectedGraph& g, Path mu, ExactScalar c = 1) {
    if (!mu.valid(g)) throw input_error("invalid cylinder path");
    CylinderFunction f(g);
    f.add(std::move(mu), std::move(c));
    return f;
  }

  static CylinderFunction one(const DirectedGraph& g) {
    CylinderFunction f(g);
    for (int v = 0; v < g.num_vertices(); ++v) f.add(Path::at_vertex(v), 1);
    return f;
  }

  const DirectedGraph& graph() const { return *g_; }
  const Terms& terms() const { return terms_; }
  int level() const { return level_; }
  bool is_zero() const { return terms_.empty(); }

  void add(Path mu, ExactScalar c) {
    if (mu.length() > level_) embed_in_place(mu.length());
    std::vector<std::pair<Path, ExactScalar>> stack{{std::move(mu), std::move(c)}};
    while (!stack.empty()) {
      auto [p, s] = std::move(stack.back());
      stack.pop_back();
      int rv = p.range(*g_);
      if (p.length() < level_ && !g_->is_sink(rv)) {
        for (int e : g_->out_edges(rv)) {
          Path q = p;
          q.edges.push_back(e);
          stack.emplace_back(std::move(q), s);
        }
      } else {
        accumulate(p, s);
      }
    }
  }

  CylinderFunction& operator+=(const CylinderFunction& o) {
    check_same_graph(o);
    for (const auto& [p, c] : o.terms_) add(p, c);
    return *this;
  }
  CylinderFunction operator-() const {
    CylinderFunction r = *this;
    for (auto& [p, c] : r.terms_) c = -c;
    return r;
  }
  friend CylinderFunction operator+(CylinderFunction a, const CylinderFunction& b) {
    return a += b;
  }
  friend CylinderFunction operator-(CylinderFunction a, const CylinderFunction& b) {
    return a += -b;
  }

  friend bool operator==(const CylinderFunction& a, const CylinderFunction& b) {
    a.check_same_graph(b);
    CylinderFunction x = a, y = b;
    int l = std::max(x.level_, y.level_);
    x.embed_in_place(l);
    y.embed_in_place(l);
    return x.terms_ == y.terms_;
  }
  friend bool operator!=(const CylinderFunction& a, const CylinderFunction& b) {
    return !(a == b);
  }

  /// Value at a point (sink path or lasso head agreement).
  ExactScalar evaluate(const OmegaPoint& pt) const {
    for (const auto& [p, c] : terms_) {
      if (std::holds_alternative<SinkPath>(pt)) {
        const Path& q = std::get<SinkPath>(pt).path;
        if (is_prefix(p, q)) return c;
      } else {
        const EdgeLasso& l = std::get<EdgeLasso>(pt);
        if (p.length() == 0) {
          if (g_->src(l.seq.at(0)) == p.base) return c;
        } else {
          bool ok = true;
          for (int i = 0; i < p.length(); ++i) {
            if (l.seq.at(i) != p.edges[i]) { ok = false; break; }
          }
          if (ok) return c;
        }
      }
    }
    return 0;
  }

 private:
  bool is_prefix(const Path& p, const Path& q) const {
    if (p.length() == 0) return p.base == q.source(*g_);
    if (p.length() > q.length()) return false;
    for (int i = 0; i < p.length(); ++i) {
      if (p.edges[i] != q.edges[i]) return false;
    }
    return true;
  }

  void check_same_graph(const CylinderFunction& o) const {
    if (g_ != o.g_) throw input_error("cylinder functions over different graphs");
  }

  void accumulate(const Path& p, const ExactScalar& c) {
    if (c.is_zero()) return;
    auto it = terms_.find(p);
    if (it == terms_.end()) {
      terms_.emplace(p, c);
    } else {
      it->second += c;
      if (it->second.is_zero()) terms_.erase(it);
    }
  }

  void embed_in_place(int l) {
    if (l <= level_) return;
    for (int step = level_; step < l; ++step) {
      Terms next;
      for (auto& [p, c] : terms_) {
        int rv = p.range(*g_);
        if (g_->is_sink(rv)) {
          next.emplace(p, c);
          continue;
        }
        for (int e : g_->out_edges(rv)) {
          Path q = p;
          q.edges.push_back(e);
          next.emplace(std::move(q), c);
        }
      }
      terms_ = std::move(next);
    }
    level_ = l;
  }

  const DirectedGraph* g_ = nullptr;
  Terms terms_;
  int level_ = 0;
};

/// Transfer operator H(f)(mu) = average of f over sigma-preimages of mu,
/// zero off sigma(Omega_E) = {mu : s(mu) receives an edge}.  On cylinders:
/// chi_[e nu] -> chi_[nu] / n_{r(e)}; vertex cylinders follow
/// H(chi_[v]) = sum_{e in s^{-1}(v)} chi_[r(e)] / n_{r(e)}, zero for sinks.
inline CylinderFunction transfer_apply(const CylinderFunction& f) {
  const DirectedGraph& g = f.graph();
  CylinderFunction r(g);
  for (const auto& [p, c] : f.terms()) {
    if (p.length() == 0) {
      int v = p.base;
      if (g.is_sink(v)) continue;  // the bare-sink indicator has no preimages
      for (int e : g.out_edges(v)) {
        r.add(Path::at_vertex(g.dst(e)), c * Rational(1, g.n_in(g.dst(e))));
      }
      continue;
    }
    int e = p.edges.front();
    Path tail;
    if (p.length() == 1) {
      tail = Path::at_vertex(g.dst(e));
    } else {
      tail.edges.assign(p.edges.begin() + 1, p.edges.end());
    }
    r.add(std::move(tail), c * Rational(1, g.n_in(g.dst(e))));
  }
  return r;
}

/// f |-> f o sigma_E, the dual picture of phi_E(x) = sum_e S_e x S_e*:
/// chi_[nu] -> sum_{r(e)=s(nu)} chi_[e nu].
inline CylinderFunction dual_endo_apply(const CylinderFunction& f) {
  const DirectedGraph& g = f.graph();
  CylinderFunction r(g);
  for (const auto& [p, c] : f.terms()) {
    int sv = p.source(g);
    for (int e : g.in_edges(sv)) {
      Path q;
      q.edges.push_back(e);
      q.edges.insert(q.edges.end(), p.edges.begin(), p.edges.end());
      r.add(std::move(q), c);
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Tail equivalence (unstable manifolds)
// ---------------------------------------------------------------------------

/// Sink paths are tail equivalent iff they have equal length and the same
/// final sink; lassos iff the sequences eventually coincide index-wise;
/// mixed kinds never are.
inline bool tail_equivalent(const DirectedGraph& g, const OmegaPoint& a, const OmegaPoint& b) {
  if (a.index() != b.index()) return false;
  if (std::holds_alternative<SinkPath>(a)) {
    const Path& p = std::get<SinkPath>(a).path;
    const Path& q = std::get<SinkPath>(b).path;
    return p.length() == q.length() && p.range(g) == q.range(g);
  }
  return eventually_coincide(std::get<EdgeLasso>(a).seq, std::get<EdgeLasso>(b).seq);
}

// ---------------------------------------------------------------------------
// Periodic points and the dichotomy
// ---------------------------------------------------------------------------

/// All points fixed by sigma^n: pure cycles of minimal period dividing n,
/// each rotation a distinct point.
inline std::vector<EdgeLasso> periodic_points(const DirectedGraph& g, int n) {
  g.require_nondegenerate();
  if (n < 1) throw input_error("period bound must be >= 1");
  std::set<EdgeLasso> out;
  for (int d = 1; d <= n; ++d) {
    if (n % d) continue;
    // Closed edge paths of length d via DFS.
    std::vector<int> stack_edges;
    auto dfs = [&](auto&& self, int base, int at, int left) -> void {
      if (left == 0) {
        if (at == base) {
          EdgeLasso l;
          l.seq.cycle = stack_edges;
          l.seq.canonicalize();
          if (static_cast<int>(l.seq.cycle.size()) == d) out.insert(std::move(l));
        }
        return;
      }
      for (int e : g.out_edges(at)) {
        stack_edges.push_back(e);
        self(self, base, g.dst(e), left - 1);
        stack_edges.pop_back();
      }
    };
    for (int v = 0; v < g.num_vertices(); ++v) dfs(dfs, v, v, d);
  }
  return {out.begin(), out.end()};
}

struct DichotomyReport {
  bool branch_uncountable = false;  // branch i: condition (L) holds
  struct ExitlessLoop {
    Path loop;
    EdgeLasso fixed_point;           // the loop traversed forever
    VertexSet ancestors;             // vertices with a path into the loop
    std::vector<long long> forward_path_counts;  // per loop vertex, paths of length |E^0|
    bool multiplicity_one = false;   // certifies the compact-operator ideal
  };
  std::vector<ExitlessLoop> exitless;
};

/// Dynamical dichotomy: with condition (L) every tail class is aperiodic-
/// rich (branch i); otherwise each exitless loop contributes an isolated
/// periodic tail class whose ancestor sub-diagram carries multiplicity-1
/// columns.
inline DichotomyReport dichotomy_report(const DirectedGraph& g) {
  g.require_nondegenerate();
  DichotomyReport rep;
  rep.branch_uncountable = true;
  for (const auto& mu : simple_loops(g)) {
    if (loop_has_exit(g, mu)) continue;
    rep.branch_uncountable = false;
    DichotomyReport::ExitlessLoop item;
    item.loop = mu;
    item.fixed_point.seq.cycle = mu.edges;
    item.fixed_point.seq.canonicalize();

    std::set<int> loop_vertices;
    for (int e : mu.edges) loop_vertices.insert(g.src(e));
    // Ancestors: vertices that reach the loop (including the loop itself).
    std::vector<char> anc(g.num_vertices(), 0);
    for (int v : loop_vertices) anc[v] = 1;
    bool changed = true;
    while (changed) {
      changed = false;
      for (int e = 0; e < g.num_edges(); ++e) {
        if (anc[g.dst(e)] && !anc[g.src(e)]) { anc[g.src(e)] = 1; changed = true; }
      }
    }
    for (int v = 0; v < g.num_vertices(); ++v)
      if (anc[v]) item.ancestors.insert(v);

    // An exitless loop forces a single forward path from each of its
    // vertices at every length: the multiplicity-1 column.
    item.multiplicity_one = true;
    int len = g.num_vertices();
    for (int v : loop_vertices) {
      long long count = 1;
      int at = v;
      for (int step = 0; step < len; ++step) {
        long long branches = static_cast<long long>(g.out_edges(at).size());
        count *= branches;
        at = g.dst(g.out_edges(at).front());
        if (branches != 1) break;
      }
      item.forward_path_counts.push_back(count);
      if (count != 1) item.multiplicity_one = false;
    }
    rep.exitless.push_back(std::move(item));
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Conjugacy with the AF-core diagonal
// ---------------------------------------------------------------------------

/// S_mu S_mu* |-> chi_[mu] on diagonal elements.
inline CylinderFunction diagonal_to_cylinder(const AfElement& a) {
  const DirectedGraph& g = a.graph();
  CylinderFunction f(g);
  for (const auto& [u, c] : a.terms()) {
    if (!u.diagonal())
      throw input_error("diagonal_to_cylinder: element has off-diagonal units");
    f.add(u.mu, c);
  }
  return f;
}

/// phi_E(x) = sum_e S_e x S_e*, the endomorphism dual to the shift.
inline AfElement dual_endo_on_units(const AfElement& a) {
  const DirectedGraph& g = a.graph();
  AfElement r(g);
  for (const auto& [u, c] : a.terms()) {
    if (u.mu.source(g) != u.nu.source(g)) continue;  // S_e hits both sides
    for (int e : g.in_edges(u.mu.source(g))) {
      MatrixUnit w;
      w.mu.edges.push_back(e);
      w.mu.edges.insert(w.mu.edges.end(), u.mu.edges.begin(), u.mu.edges.end());
      w.nu.edges.push_back(e);
      w.nu.edges.insert(w.nu.edges.end(), u.nu.edges.begin(), u.nu.edges.end());
      r.add(std::move(w), c);
    }
  }
  return r;
}

}  // namespace ckalg
