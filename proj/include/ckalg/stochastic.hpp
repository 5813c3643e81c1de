#pragma once

#include <optional>
#include <set>
#include <vector>

#include "ckalg/graph.hpp"

namespace ckalg {

/// Dense square matrix over exact rationals, indexed by canonical vertex
/// order.  No floating point enters this module: "sums to one" is equality.
class RationalMatrix {
 public:
  RationalMatrix() = default;
  explicit RationalMatrix(int n) : n_(n), a_(static_cast<std::size_t>(n) * n, Rational(0)) {}

  static RationalMatrix identity(int n) {
    RationalMatrix m(n);
    for (int i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  int size() const { return n_; }
  Rational& operator()(int i, int j) { return a_[static_cast<std::size_t>(i) * n_ + j]; }
  const Rational& operator()(int i, int j) const {
    return a_[static_cast<std::size_t>(i) * n_ + j];
  }

  friend bool operator==(const RationalMatrix& x, const RationalMatrix& y) {
    return x.n_ == y.n_ && x.a_ == y.a_;
  }

  friend RationalMatrix operator*(const RationalMatrix& x, const RationalMatrix& y) {
    if (x.n_ != y.n_) throw input_error("matrix size mismatch");
    RationalMatrix r(x.n_);
    for (int i = 0; i < x.n_; ++i) {
      for (int k = 0; k < x.n_; ++k) {
        if (x(i, k) == 0) continue;
        for (int j = 0; j < x.n_; ++j) r(i, j) += x(i, k) * y(k, j);
      }
    }
    return r;
  }

  RationalMatrix pow(int n) const {
    RationalMatrix r = identity(n_);
    for (int i = 0; i < n; ++i) r = r * *this;  // sizes are tiny; no fast exponentiation
    return r;
  }

  std::vector<Rational> column_sums() const {
    std::vector<Rational> s(n_, Rational(0));
    for (int i = 0; i < n_; ++i)
      for (int j = 0; j < n_; ++j) s[j] += (*this)(i, j);
    return s;
  }

 private:
  int n_ = 0;
  std::vector<Rational> a_;
};

/// p_{v,w} = A(v,w) / n_w when w receives edges, else a zero column.
inline RationalMatrix quasi_stochastic_matrix(const DirectedGraph& g) {
  g.require_nondegenerate();
  int n = g.num_vertices();
  RationalMatrix p(n);
  for (int e = 0; e < g.num_edges(); ++e) {
    p(g.src(e), g.dst(e)) += Rational(1, g.n_in(g.dst(e)));
  }
  return p;
}

inline bool is_left_quasi_stochastic(const RationalMatrix& p) {
  for (const Rational& s : p.column_sums()) {
    if (s != 0 && s != 1) return false;
  }
  return true;
}

/// Per-vertex sets of lengths of paths starting at a source and ending at the
/// vertex, collected up to the given bound.  unbounded[v] is set when v lies
/// on or past a cycle: such a vertex receives paths of every sufficiently
/// large length, whether or not the cycle sees a source.
struct SourcePathLengths {
  std::vector<std::set<int>> lengths;  // lengths observed up to the bound
  std::vector<char> unbounded;
  int bound = 0;
};

inline SourcePathLengths source_path_lengths(const DirectedGraph& g, int bound) {
  int n = g.num_vertices();
  SourcePathLengths r;
  r.bound = bound;
  r.lengths.assign(n, {});
  r.unbounded.assign(n, 0);

  for (int v : g.sources()) r.lengths[v].insert(0);

  // Bounded BFS layering for the finite part of the length sets.
  std::vector<char> cur(n, 0);
  for (int v : g.sources()) cur[v] = 1;
  for (int len = 1; len <= bound; ++len) {
    std::vector<char> next(n, 0);
    for (int e = 0; e < g.num_edges(); ++e) {
      if (cur[g.src(e)]) next[g.dst(e)] = 1;
    }
    for (int v = 0; v < n; ++v)
      if (next[v]) r.lengths[v].insert(len);
    cur = std::move(next);
  }

  // A vertex on or past any cycle receives arbitrarily long paths: a path of
  // length >= k into v always contains a suffix of length exactly k into v.
  std::vector<char> on_cycle_reached(n, 0);
  for (int v = 0; v < n; ++v) {
    // v lies on a cycle iff v is reachable from one of its successors
    std::vector<char> seen(n, 0);
    std::vector<int> st;
    for (int e : g.out_edges(v))
      if (!seen[g.dst(e)]) { seen[g.dst(e)] = 1; st.push_back(g.dst(e)); }
    while (!st.empty()) {
      int u = st.back();
      st.pop_back();
      for (int e : g.out_edges(u)) {
        int w = g.dst(e);
        if (!seen[w]) { seen[w] = 1; st.push_back(w); }
      }
    }
    if (seen[v]) on_cycle_reached[v] = 1;
  }
  std::vector<int> st2;
  for (int v = 0; v < n; ++v)
    if (on_cycle_reached[v]) st2.push_back(v);
  while (!st2.empty()) {
    int v = st2.back();
    st2.pop_back();
    for (int e : g.out_edges(v)) {
      int w = g.dst(e);
      if (!on_cycle_reached[w]) { on_cycle_reached[w] = 1; st2.push_back(w); }
    }
  }
  for (int v = 0; v < n; ++v) r.unbounded[v] = on_cycle_reached[v];
  return r;
}

struct PowerPartialIsometryReport {
  int n = 0;
  bool matrix_criterion = false;       // P^n left quasi-stochastic
  bool length_criterion = false;       // source-path lengths all < n or all >= n
  bool range_criterion = false;        // no vertex ranges both E^n and short source-paths
  bool is_partial_isometry = false;
};

/// Three independently implemented criteria for "S^n is a partial isometry",
/// asserted to agree; a disagreement means a bug, never bad input.
inline PowerPartialIsometryReport power_partial_isometry_report(const DirectedGraph& g, int n) {
  g.require_nondegenerate();
  if (n < 1) throw input_error("power must be >= 1");
  PowerPartialIsometryReport r;
  r.n = n;

  r.matrix_criterion = is_left_quasi_stochastic(quasi_stochastic_matrix(g).pow(n));

  // Criterion (iii): no vertex both ends a source-path of length < n (which
  // cannot extend backwards to length n) and receives some path of length
  // >= n.  The latter holds exactly when a source-path of length >= n ends
  // there or the vertex sits on or past a cycle.
  // Bound by |E^0| as well as n: a source-path avoiding cycles has length
  // < |E^0|, and cycle-hitting vertices carry the unbounded flag, so this
  // captures every finite length that could certify "some length >= n".
  auto spl = source_path_lengths(g, std::max(n, g.num_vertices()));
  r.length_criterion = true;
  for (int v = 0; v < g.num_vertices(); ++v) {
    bool has_short = false, has_long = spl.unbounded[v];
    for (int len : spl.lengths[v]) (len < n ? has_short : has_long) = true;
    if (has_short && has_long) { r.length_criterion = false; break; }
  }

  // Criterion (iv): no vertex is the range of both a length-n path and a
  // source-path of length k < n.  Computed from scratch with path counts.
  auto into_n = path_counts_into(g, n);
  r.range_criterion = true;
  for (int v = 0; v < g.num_vertices(); ++v) {
    if (into_n[v] == 0) continue;
    bool short_source_path = false;
    for (int len : spl.lengths[v]) {
      if (len < n) { short_source_path = true; break; }
    }
    if (short_source_path) { r.range_criterion = false; break; }
  }

  if (r.matrix_criterion != r.length_criterion || r.matrix_criterion != r.range_criterion) {
    throw consistency_error("partial-isometry criteria disagree at n=" + std::to_string(n));
  }
  r.is_partial_isometry = r.matrix_criterion;
  return r;
}

/// Every power of S is a partial isometry ⟺ every vertex's source-path
/// length set is empty or a singleton.  A source-reachable cycle makes some
/// set infinite, so that alone forces false for the affected vertices.
inline bool all_powers_partial_isometries(const DirectedGraph& g) {
  g.require_nondegenerate();
  auto spl = source_path_lengths(g, g.num_vertices());
  for (int v = 0; v < g.num_vertices(); ++v) {
    std::size_t count = spl.lengths[v].size();
    if (spl.unbounded[v] && !spl.lengths[v].empty()) return false;
    if (spl.unbounded[v] && spl.lengths[v].empty()) continue;  // no source sees v
    if (count > 1) return false;
  }
  return true;
}

}  // namespace ckalg
