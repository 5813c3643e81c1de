#pragma once

#include <map>

#include "ckalg/exact_scalar.hpp"

namespace ckalg {

/// Incremental exact row reduction over the radical field, with sparse rows
/// keyed by an ordered basis-label type.  Doing the elimination over the
/// field itself (rather than a rational embedding with sqrt(d)-components
/// treated as independent coordinates) gives the true dimension over the
/// reals: x and sqrt(6)*x span the same line here.
template <class Key>
class SpanBasis {
 public:
  using Vector = std::map<Key, ExactScalar>;

  /// Reduces v against the basis in place; the remainder has no pivot in
  /// common with any stored row.
  void reduce(Vector& v) const {
    for (const auto& [pivot, row] : rows_) {
      auto it = v.find(pivot);
      if (it == v.end()) continue;
      ExactScalar c = it->second;  // row is normalized: row[pivot] = 1
      for (const auto& [k, x] : row) {
        auto jt = v.find(k);
        if (jt == v.end()) {
          v.emplace(k, -(c * x));
        } else {
          jt->second -= c * x;
          if (jt->second.is_zero()) v.erase(jt);
        }
      }
    }
  }

  /// Returns true when v enlarged the span.
  bool insert(Vector v) {
    reduce(v);
    if (v.empty()) return false;
    auto pivot_it = v.begin();
    ExactScalar inv = pivot_it->second.inverse();
    for (auto& [k, x] : v) x *= inv;
    Key pivot = pivot_it->first;
    // Back-substitute the new row into the stored ones so that reduce()
    // needs a single pass regardless of insertion order.
    for (auto& [p, row] : rows_) {
      auto it = row.find(pivot);
      if (it == row.end()) continue;
      ExactScalar c = it->second;
      for (const auto& [k, x] : v) {
        auto jt = row.find(k);
        if (jt == row.end()) {
          row.emplace(k, -(c * x));
        } else {
          jt->second -= c * x;
          if (jt->second.is_zero()) row.erase(jt);
        }
      }
    }
    rows_.emplace(std::move(pivot), std::move(v));
    return true;
  }

  bool contains(Vector v) const {
    reduce(v);
    return v.empty();
  }

  std::size_t rank() const { return rows_.size(); }

 private:
  std::map<Key, Vector> rows_;  // pivot -> normalized reduced row
};

}  // namespace ckalg
