#pragma once

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include <nlohmann/json.hpp>

#include "ckalg/base.hpp"
#include "ckalg/lasso.hpp"

namespace ckalg {

using PointSet = std::set<int>;

/// Finite partial dynamical system (M, phi: Delta -> M) with a marked set
/// Y.  Everything is finite discrete, so "closed", "open" and "interior"
/// collapse to plain set conditions; reports state that reduction.
class PartialSystem {
 public:
  static PartialSystem create(std::vector<std::string> point_ids,
                              std::vector<std::string> domain_ids,
                              std::map<std::string, std::string> map_ids,
                              std::vector<std::string> y_ids) {
    PartialSystem s;
    std::sort(point_ids.begin(), point_ids.end());
    for (std::size_t i = 0; i + 1 < point_ids.size(); ++i) {
      if (point_ids[i] == point_ids[i + 1])
        throw input_error("duplicate point id \"" + point_ids[i] + "\"");
    }
    if (point_ids.empty()) throw input_error("a partial system needs at least one point");
    s.ids_ = std::move(point_ids);
    s.phi_.assign(s.ids_.size(), -1);
    for (const auto& d : domain_ids) s.domain_.insert(s.index(d));
    for (const auto& [x, y] : map_ids) {
      int xi = s.index(x);
      if (!s.domain_.count(xi))
        throw input_error("map defined at \"" + x + "\" which is not in the domain");
      s.phi_[xi] = s.index(y);
    }
    for (int x : s.domain_) {
      if (s.phi_[x] < 0)
        throw input_error("map missing at domain point \"" + s.ids_[x] + "\"");
    }
    for (const auto& y : y_ids) s.y_.insert(s.index(y));
    return s;
  }

  static PartialSystem from_json(const nlohmann::ordered_json& j) {
    if (!j.is_object() || !j.contains("points") || !j.contains("domain") ||
        !j.contains("map") || !j.contains("Y"))
      throw input_error("system JSON needs \"points\", \"domain\", \"map\", \"Y\"");
    std::vector<std::string> pts, dom, ys;
    for (const auto& p : j.at("points")) pts.push_back(p.get<std::string>());
    for (const auto& p : j.at("domain")) dom.push_back(p.get<std::string>());
    for (const auto& p : j.at("Y")) ys.push_back(p.get<std::string>());
    std::map<std::string, std::string> mp;
    for (const auto& [k, v] : j.at("map").items()) mp[k] = v.get<std::string>();
    return create(std::move(pts), std::move(dom), std::move(mp), std::move(ys));
  }

  nlohmann::ordered_json to_json() const {
    nlohmann::ordered_json j;
    j["points"] = nlohmann::ordered_json::array();
    for (const auto& p : ids_) j["points"].push_back(p);
    j["domain"] = nlohmann::ordered_json::array();
    for (int x : domain_) j["domain"].push_back(ids_[x]);
    j["map"] = nlohmann::ordered_json::object();
    for (int x : domain_) j["map"][ids_[x]] = ids_[phi_[x]];
    j["Y"] = nlohmann::ordered_json::array();
    for (int x : y_) j["Y"].push_back(ids_[x]);
    return j;
  }

  int size() const { return static_cast<int>(ids_.size()); }
  const std::string& id(int x) const { return ids_[x]; }
  int index(const std::string& s) const {
    auto it = std::lower_bound(ids_.begin(), ids_.end(), s);
    if (it == ids_.end() || *it != s) throw input_error("unknown point id \"" + s + "\"");
    return static_cast<int>(it - ids_.begin());
  }

  const PointSet& domain() const { return domain_; }
  const PointSet& marked() const { return y_; }
  bool in_domain(int x) const { return domain_.count(x) > 0; }
  int apply(int x) const {
    if (!in_domain(x)) throw input_error("phi undefined at \"" + ids_[x] + "\"");
    return phi_[x];
  }

  PointSet image(const PointSet& v) const {
    PointSet r;
    for (int x : v)
      if (in_domain(x)) r.insert(phi_[x]);
    return r;
  }
  PointSet phi_range() const {
    PointSet r;
    for (int x : domain_) r.insert(phi_[x]);
    return r;
  }
  std::vector<int> preimages(int x) const {
    std::vector<int> r;
    for (int y : domain_)
      if (phi_[y] == x) r.push_back(y);
    return r;
  }

  bool well_positioned() const {
    PointSet cover = phi_range();
    for (int x : y_) cover.insert(x);
    return static_cast<int>(cover.size()) == size();
  }
  PointSet well_positioned_gap() const {
    PointSet cover = phi_range();
    for (int x : y_) cover.insert(x);
    PointSet gap;
    for (int x = 0; x < size(); ++x)
      if (!cover.count(x)) gap.insert(x);
    return gap;
  }
  void require_well_positioned() const {
    if (!well_positioned()) {
      std::string msg = "Y together with phi(Delta) does not cover M; uncovered:";
      for (int x : well_positioned_gap()) msg += " " + ids_[x];
      throw input_error(msg);
    }
  }
  bool canonical_Y() const {
    PointSet complement;
    PointSet rng = phi_range();
    for (int x = 0; x < size(); ++x)
      if (!rng.count(x)) complement.insert(x);
    return complement == y_;
  }

  /// Orbit of a phi-periodic point, in traversal order; empty when x is not
  /// periodic (the forward orbit leaves the domain or misses x).
  std::vector<int> periodic_orbit(int x) const {
    std::vector<int> orbit{x};
    int at = x;
    for (int step = 0; step < size(); ++step) {
      if (!in_domain(at)) return {};
      at = phi_[at];
      if (at == x) return orbit;
      orbit.push_back(at);
    }
    return {};
  }

  std::vector<std::vector<int>> periodic_orbits() const {
    std::vector<std::vector<int>> out;
    std::set<int> seen;
    for (int x = 0; x < size(); ++x) {
      if (seen.count(x)) continue;
      auto orb = periodic_orbit(x);
      if (orb.empty()) continue;
      for (int y : orb) seen.insert(y);
      out.push_back(std::move(orb));
    }
    return out;
  }

  bool orbit_has_entrance(const std::vector<int>& orbit) const {
    std::set<int> o(orbit.begin(), orbit.end());
    for (int x : orbit) {
      for (int z : preimages(x)) {
        if (!o.count(z)) return true;
      }
    }
    return false;
  }

 private:
  std::vector<std::string> ids_;
  PointSet domain_;
  std::vector<int> phi_;
  PointSet y_;
};

// ---------------------------------------------------------------------------
// The reversible Y-extension
// ---------------------------------------------------------------------------

/// Backward orbit (x_0, x_1, ..., x_N) with phi(x_n) = x_{n-1}, x_N in Y.
using FinitePoint = std::vector<int>;
/// Eventually periodic backward orbit.
using PointLasso = LassoSeq<int>;
using ExtensionPoint = std::variant<FinitePoint, PointLasso>;

struct ExtensionSpace {
  std::vector<FinitePoint> finite_points;  // length <= depth+1
  std::vector<PointLasso> lassos;          // |prefix| + |cycle| <= depth
  int depth = 0;
  bool extension_finite = false;           // point count stabilizes
  long long stable_point_count = -1;       // meaningful when finite
};

inline bool extension_point_less(const ExtensionPoint& a, const ExtensionPoint& b) {
  if (a.index() != b.index()) return a.index() < b.index();
  if (a.index() == 0) return std::get<FinitePoint>(a) < std::get<FinitePoint>(b);
  return std::get<PointLasso>(a) < std::get<PointLasso>(b);
}

namespace detail {

inline void enumerate_finite_points(const PartialSystem& s, int max_len,
                                    std::vector<FinitePoint>& out) {
  // Walk backward: from x append preimages; stop-markers wherever the
  // current tail lies in Y.
  for (int x0 = 0; x0 < s.size(); ++x0) {
    FinitePoint cur{x0};
    auto dfs = [&](auto&& self) -> void {
      if (s.marked().count(cur.back())) out.push_back(cur);
      if (static_cast<int>(cur.size()) > max_len) return;
      for (int z : s.preimages(cur.back())) {
        cur.push_back(z);
        self(self);
        cur.pop_back();
      }
    };
    dfs(dfs);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
}

// A backward orbit satisfies x_{n-1} = phi(x_n), so every entry is a
// forward iterate of any deeper one; an eventually periodic backward orbit
// is therefore purely periodic.  The lassos of M~ are exactly the rotations
// of backward cycles through phi-periodic orbits.
inline void enumerate_lassos(const PartialSystem& s, int budget,
                             std::vector<PointLasso>& out) {
  std::set<PointLasso> found;
  for (const auto& orbit : s.periodic_orbits()) {
    int p = static_cast<int>(orbit.size());
    if (p > budget) continue;
    for (int rot = 0; rot < p; ++rot) {
      PointLasso l;
      for (int i = 0; i < p; ++i) l.cycle.push_back(orbit[((rot - i) % p + p) % p]);
      l.canonicalize();
      found.insert(std::move(l));
    }
  }
  out.assign(found.begin(), found.end());
}

inline long long count_points(const PartialSystem& s, int depth) {
  std::vector<FinitePoint> fps;
  enumerate_finite_points(s, depth, fps);
  std::vector<PointLasso> ls;
  enumerate_lassos(s, depth, ls);
  return static_cast<long long>(fps.size()) + static_cast<long long>(ls.size());
}

}  // namespace detail

/// Enumerates the reversible Y-extension M~ down to the given depth and
/// decides finiteness by the stabilization test: the point count at depth d
/// equals the count at depth d + |M| only when no backward orbit keeps
/// branching forever.
inline ExtensionSpace reversible_extension(const PartialSystem& s, int depth) {
  s.require_well_positioned();
  if (depth < 0) throw input_error("depth must be >= 0");
  ExtensionSpace es;
  es.depth = depth;
  detail::enumerate_finite_points(s, depth, es.finite_points);
  detail::enumerate_lassos(s, depth, es.lassos);
  int d = std::max(depth, 2 * s.size() + 1);
  long long a = detail::count_points(s, d);
  long long b = detail::count_points(s, d + s.size());
  es.extension_finite = (a == b);
  if (es.extension_finite) es.stable_point_count = a;
  return es;
}

enum class ShiftDirection { forward, backward };

/// phi~ prepends phi(x_0); phi~^{-1} drops x_0.
inline ExtensionPoint extension_shift(const PartialSystem& s, const ExtensionPoint& p,
                                      ShiftDirection dir) {
  if (std::holds_alternative<FinitePoint>(p)) {
    FinitePoint f = std::get<FinitePoint>(p);
    if (dir == ShiftDirection::forward) {
      if (!s.in_domain(f.front()))
        throw input_error("forward shift undefined: head outside the domain");
      f.insert(f.begin(), s.apply(f.front()));
    } else {
      if (f.size() <= 1) throw input_error("backward shift undefined on a length-0 point");
      f.erase(f.begin());
    }
    return f;
  }
  PointLasso l = std::get<PointLasso>(p);
  if (dir == ShiftDirection::forward) {
    int head = l.prefix.empty() ? l.cycle.front() : l.prefix.front();
    if (!s.in_domain(head))
      throw input_error("forward shift undefined: head outside the domain");
    return l.prepended(s.apply(head));
  }
  return l.shifted();
}

inline int extension_head(const ExtensionPoint& p) {
  if (std::holds_alternative<FinitePoint>(p)) return std::get<FinitePoint>(p).front();
  const PointLasso& l = std::get<PointLasso>(p);
  return l.prefix.empty() ? l.cycle.front() : l.prefix.front();
}

// ---------------------------------------------------------------------------
// Topological freeness
// ---------------------------------------------------------------------------

struct FreenessReport {
  bool topologically_free = false;
  std::vector<std::vector<int>> no_entrance_orbits;
};

/// On a finite discrete space only sets with points have interior, so the
/// system is topologically free iff no periodic orbit lacks an entrance.
inline FreenessReport is_topologically_free(const PartialSystem& s) {
  FreenessReport r;
  for (const auto& orbit : s.periodic_orbits()) {
    if (!s.orbit_has_entrance(orbit)) r.no_entrance_orbits.push_back(orbit);
  }
  r.topologically_free = r.no_entrance_orbits.empty();
  return r;
}

inline bool is_top_free_outside_Y(const PartialSystem& s) {
  s.require_well_positioned();
  for (const auto& orbit : s.periodic_orbits()) {
    if (s.orbit_has_entrance(orbit)) continue;
    bool meets_Y = false;
    for (int x : orbit)
      if (s.marked().count(x)) meets_Y = true;
    if (!meets_Y) return false;
  }
  return true;
}

struct PeriodicityCheck {
  std::vector<PointLasso> extension_fixed;  // F~_n: pure cycles of no-entrance orbits
  std::vector<int> base_fixed;              // F_n: their base points
  bool bijective = false;
};

/// Mirrors the freeness transfer between the system and its extension:
/// fixed lassos of phi~^n come exactly from no-entrance orbits of period
/// dividing n, and the head map Phi sends them onto those orbits.
inline PeriodicityCheck extension_periodicity_check(const PartialSystem& s, int n) {
  s.require_well_positioned();
  if (n < 1) throw input_error("period bound must be >= 1");
  PeriodicityCheck r;
  std::set<int> base;
  for (const auto& orbit : s.periodic_orbits()) {
    if (static_cast<int>(orbit.size()) > n || n % static_cast<int>(orbit.size())) continue;
    if (s.orbit_has_entrance(orbit)) continue;
    for (int x : orbit) base.insert(x);
    int p = static_cast<int>(orbit.size());
    for (int rot = 0; rot < p; ++rot) {
      PointLasso l;
      for (int i = 0; i < p; ++i) l.cycle.push_back(orbit[((rot - i) % p + p) % p]);
      l.canonicalize();
      r.extension_fixed.push_back(std::move(l));
    }
  }
  std::sort(r.extension_fixed.begin(), r.extension_fixed.end());
  r.extension_fixed.erase(
      std::unique(r.extension_fixed.begin(), r.extension_fixed.end()),
      r.extension_fixed.end());
  r.base_fixed.assign(base.begin(), base.end());

  // The head map must cover the base fixed set; emptiness must match.
  std::set<int> heads;
  for (const auto& l : r.extension_fixed) heads.insert(l.cycle.front());
  r.bijective = (heads == base) &&
                (r.extension_fixed.empty() == r.base_fixed.empty());
  if (!r.bijective)
    throw consistency_error("periodic-point correspondence failed between M~ and M");
  return r;
}

// ---------------------------------------------------------------------------
// Invariant sets, Y-pairs, lattices
// ---------------------------------------------------------------------------

constexpr int kSystemSubsetGuard = 20;

/// All V with phi(V cap Delta) = V cap phi(Delta).
inline std::vector<PointSet> invariant_sets(const PartialSystem& s) {
  int n = s.size();
  if (n > kSystemSubsetGuard)
    throw input_error("size guard: subset enumeration needs |M| <= " +
                      std::to_string(kSystemSubsetGuard));
  PointSet rng = s.phi_range();
  std::vector<PointSet> out;
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    PointSet v;
    for (int x = 0; x < n; ++x)
      if (mask >> x & 1) v.insert(x);
    PointSet img = s.image(v);
    PointSet v_cap_rng;
    for (int x : v)
      if (rng.count(x)) v_cap_rng.insert(x);
    if (img == v_cap_rng) out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

struct YPair {
  PointSet v;
  PointSet v_prime;
  friend bool operator==(const YPair& a, const YPair& b) {
    return a.v == b.v && a.v_prime == b.v_prime;
  }
  friend bool operator<(const YPair& a, const YPair& b) {
    if (a.v != b.v) return a.v < b.v;
    return a.v_prime < b.v_prime;
  }
};

/// All pairs (V, V') with V positively invariant, V' contained in Y, and
/// V' union phi(V cap Delta) = V.  V' is parametrized as the forced part
/// V minus phi(V cap Delta) plus any subset of the overlap with Y.
inline std::vector<YPair> y_pairs(const PartialSystem& s) {
  s.require_well_positioned();
  int n = s.size();
  if (n > kSystemSubsetGuard)
    throw input_error("size guard: subset enumeration needs |M| <= " +
                      std::to_string(kSystemSubsetGuard));
  std::vector<YPair> out;
  for (std::uint64_t mask = 0; mask < (1ull << n); ++mask) {
    PointSet v;
    for (int x = 0; x < n; ++x)
      if (mask >> x & 1) v.insert(x);
    PointSet img = s.image(v);
    bool invariant = true;
    for (int x : img)
      if (!v.count(x)) { invariant = false; break; }
    if (!invariant) continue;
    PointSet forced, optional;
    bool ok = true;
    for (int x : v) {
      if (!img.count(x)) {
        if (!s.marked().count(x)) { ok = false; break; }  // uncovered, not in Y
        forced.insert(x);
      } else if (s.marked().count(x)) {
        optional.insert(x);
      }
    }
    if (!ok) continue;
    std::vector<int> opts(optional.begin(), optional.end());
    for (std::uint64_t sub = 0; sub < (1ull << opts.size()); ++sub) {
      YPair p;
      p.v = v;
      p.v_prime = forced;
      for (std::size_t i = 0; i < opts.size(); ++i)
        if (sub >> i & 1) p.v_prime.insert(opts[i]);
      out.push_back(std::move(p));
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// ---------------------------------------------------------------------------
// Correspondence between Y-pairs and invariant sub-path-spaces
// ---------------------------------------------------------------------------

struct CorrespondenceReport {
  bool phi_image_matches = true;       // Phi(V~) = V
  bool boundary_matches = true;        // Phi(V~ \ phi~(Delta~)) = V'
  bool invariant = true;               // phi~-invariance on enumerated points
  bool injective = true;
  bool surjective = true;              // round-trip identity
  std::vector<std::string> failures;

  bool all() const {
    return phi_image_matches && boundary_matches && invariant && injective && surjective;
  }
};

/// Builds from each Y-pair (V, V') the sub-path-space V~ (finite points
/// within V ending in V', lassos within V) and checks the lattice
/// correspondence on the depth-enumerable part.  depth >= 2|M| makes the
/// enumeration faithful for every point head.
inline CorrespondenceReport verify_invariance_correspondence(const PartialSystem& s,
                                                             int depth) {
  s.require_well_positioned();
  CorrespondenceReport rep;
  ExtensionSpace all = reversible_extension(s, depth);

  auto build = [&](const YPair& yp) {
    std::vector<ExtensionPoint> pts;
    for (const auto& f : all.finite_points) {
      bool inside = true;
      for (int x : f)
        if (!yp.v.count(x)) { inside = false; break; }
      if (inside && yp.v_prime.count(f.back())) pts.emplace_back(f);
    }
    for (const auto& l : all.lassos) {
      bool inside = true;
      for (int x : l.prefix)
        if (!yp.v.count(x)) { inside = false; break; }
      for (int x : l.cycle)
        if (!yp.v.count(x)) { inside = false; break; }
      if (inside) pts.emplace_back(l);
    }
    std::sort(pts.begin(), pts.end(), extension_point_less);
    return pts;
  };

  auto pairs = y_pairs(s);
  std::vector<std::vector<ExtensionPoint>> spaces;
  for (const auto& yp : pairs) {
    auto pts = build(yp);
    // Phi(V~) = V and the boundary points recover V'.
    PointSet heads, boundary;
    for (const auto& p : pts) {
      heads.insert(extension_head(p));
      if (std::holds_alternative<FinitePoint>(p) && std::get<FinitePoint>(p).size() == 1)
        boundary.insert(extension_head(p));
    }
    if (heads != yp.v) {
      rep.phi_image_matches = false;
      rep.failures.push_back("Phi(V~) != V for a Y-pair");
    }
    if (boundary != yp.v_prime) {
      rep.boundary_matches = false;
      rep.failures.push_back("Phi(V~ \\ phi~(Delta~)) != V'");
    }
    // phi~-invariance on points whose shifts stay depth-representable.
    std::set<std::vector<int>> finite_set;
    std::set<PointLasso> lasso_set;
    for (const auto& p : pts) {
      if (std::holds_alternative<FinitePoint>(p)) finite_set.insert(std::get<FinitePoint>(p));
      else lasso_set.insert(std::get<PointLasso>(p));
    }
    for (const auto& p : pts) {
      int head = extension_head(p);
      if (!s.in_domain(head)) continue;
      ExtensionPoint q = extension_shift(s, p, ShiftDirection::forward);
      bool representable =
          !std::holds_alternative<FinitePoint>(q) ||
          static_cast<int>(std::get<FinitePoint>(q).size()) <= depth + 1;
      if (!representable) continue;
      bool member = std::holds_alternative<FinitePoint>(q)
                        ? finite_set.count(std::get<FinitePoint>(q)) > 0
                        : lasso_set.count(std::get<PointLasso>(q)) > 0;
      if (!member) {
        rep.invariant = false;
        rep.failures.push_back("phi~ leaves a sub-path-space");
      }
    }
    spaces.push_back(std::move(pts));
  }
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    for (std::size_t j = i + 1; j < spaces.size(); ++j) {
      if (spaces[i] == spaces[j]) {
        rep.injective = false;
        rep.failures.push_back("two Y-pairs share one sub-path-space");
      }
    }
  }
  // Surjectivity within the representable family: rebuilding the pair from
  // each space must return the original.
  for (std::size_t i = 0; i < spaces.size(); ++i) {
    PointSet heads, boundary;
    for (const auto& p : spaces[i]) {
      heads.insert(extension_head(p));
      if (std::holds_alternative<FinitePoint>(p) && std::get<FinitePoint>(p).size() == 1)
        boundary.insert(extension_head(p));
    }
    if (!(heads == pairs[i].v && boundary == pairs[i].v_prime)) rep.surjective = false;
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Minimality and simplicity
// ---------------------------------------------------------------------------

struct MinimalityVerdict {
  bool minimal = false;
  enum class Model { none, cyclic_permutation, chain } model = Model::none;
  int n = 0;
  std::string algebra;  // "M_n(C)" or "C(T, M_n(C)) -- not simple"
};

inline MinimalityVerdict classify_minimal(const PartialSystem& s) {
  MinimalityVerdict r;
  auto inv = invariant_sets(s);
  r.minimal = inv.size() == 2;  // only {} and M
  if (!r.minimal) return r;
  r.n = s.size();
  bool total = static_cast<int>(s.domain().size()) == s.size();
  if (total) {
    // Minimal and total on finite M forces one cyclic permutation.
    r.model = MinimalityVerdict::Model::cyclic_permutation;
    r.algebra = "C(T, M_" + std::to_string(r.n) + "(C)) -- not simple";
  } else {
    r.model = MinimalityVerdict::Model::chain;
    r.algebra = "M_" + std::to_string(r.n) + "(C)";
  }
  return r;
}

struct SimplicityVerdict {
  bool simple = false;
  std::string reason;
  std::optional<YPair> witness;
};

inline SimplicityVerdict simplicity_verdict(const PartialSystem& s) {
  s.require_well_positioned();
  SimplicityVerdict r;
  if (!s.canonical_Y()) {
    r.simple = false;
    r.reason = "Y exceeds M \\ phi(Delta): a second Y-pair splits off an ideal";
    YPair w;
    for (int x = 0; x < s.size(); ++x) w.v.insert(x);
    PointSet rng = s.phi_range();
    for (int x = 0; x < s.size(); ++x)
      if (!rng.count(x)) w.v_prime.insert(x);
    r.witness = std::move(w);
    return r;
  }
  auto m = classify_minimal(s);
  if (!m.minimal) {
    r.reason = "not minimal: a nontrivial invariant set exists";
    return r;
  }
  bool whole_periodic_orbit = false;
  for (const auto& orbit : s.periodic_orbits()) {
    if (static_cast<int>(orbit.size()) == s.size()) whole_periodic_orbit = true;
  }
  if (whole_periodic_orbit) {
    r.reason = "M is a single periodic orbit: C(T, M_n(C)) has proper ideals";
    return r;
  }
  r.simple = true;
  r.reason = "minimal and M is not a periodic orbit";
  return r;
}

struct GaugeIdealLattice {
  std::vector<YPair> pairs;  // anti-isomorphic to the gauge-invariant ideals
  bool all_ideals_gauge_invariant = false;  // no phi-periodic points
};

inline GaugeIdealLattice gauge_ideal_lattice(const PartialSystem& s) {
  s.require_well_positioned();
  GaugeIdealLattice r;
  r.pairs = y_pairs(s);
  r.all_ideals_gauge_invariant = s.periodic_orbits().empty();
  return r;
}

}  // namespace ckalg
