#pragma once

#include <numeric>
#include <vector>

#include "ckalg/base.hpp"

namespace ckalg {

/// Eventually periodic sequence prefix . cycle cycle cycle ..., canonical:
/// the cycle has minimal period and the prefix is maximally absorbed into
/// the cycle (no nonempty common suffix of prefix and rotated cycle).
/// Rotations of a pure cycle are distinct sequences.
template <class Sym>
struct LassoSeq {
  std::vector<Sym> prefix;
  std::vector<Sym> cycle;  // nonempty

  void canonicalize() {
    if (cycle.empty()) throw input_error("lasso cycle must be nonempty");
    // Minimal period: cycle = u^k collapses to u.
    for (std::size_t p = 1; p <= cycle.size() / 2; ++p) {
      if (cycle.size() % p) continue;
      bool periodic = true;
      for (std::size_t i = p; i < cycle.size(); ++i) {
        if (!(cycle[i] == cycle[i % p])) { periodic = false; break; }
      }
      if (periodic) { cycle.resize(p); break; }
    }
    // Absorb the prefix tail into the cycle by rotating right.
    while (!prefix.empty() && prefix.back() == cycle.back()) {
      prefix.pop_back();
      cycle.insert(cycle.begin(), cycle.back());
      cycle.pop_back();
    }
  }

  Sym at(std::size_t i) const {
    if (i < prefix.size()) return prefix[i];
    return cycle[(i - prefix.size()) % cycle.size()];
  }

  /// Drops the head symbol (the one-sided shift).
  LassoSeq shifted() const {
    LassoSeq r = *this;
    if (!r.prefix.empty()) {
      r.prefix.erase(r.prefix.begin());
    } else {
      r.cycle.push_back(r.cycle.front());
      r.cycle.erase(r.cycle.begin());
    }
    r.canonicalize();
    return r;
  }

  LassoSeq prepended(Sym s) const {
    LassoSeq r = *this;
    r.prefix.insert(r.prefix.begin(), std::move(s));
    r.canonicalize();
    return r;
  }

  friend bool operator==(const LassoSeq& a, const LassoSeq& b) {
    return a.prefix == b.prefix && a.cycle == b.cycle;
  }
  friend bool operator<(const LassoSeq& a, const LassoSeq& b) {
    if (a.prefix != b.prefix) return a.prefix < b.prefix;
    return a.cycle < b.cycle;
  }
};

/// Same-index eventual coincidence of the two sequences, decided on one
/// common-period window past both prefixes.
template <class Sym>
bool eventually_coincide(const LassoSeq<Sym>& a, const LassoSeq<Sym>& b) {
  std::size_t start = std::max(a.prefix.size(), b.prefix.size());
  std::size_t window = std::lcm(a.cycle.size(), b.cycle.size());
  for (std::size_t i = start; i < start + window; ++i) {
    if (!(a.at(i) == b.at(i))) return false;
  }
  return true;
}

}  // namespace ckalg
