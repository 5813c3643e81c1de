#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ckalg/partial_system.hpp"
#include "test_util.hpp"

using namespace ckalg;

namespace {

PartialSystem nbar() {
  return PartialSystem::create({"0", "inf"}, {"0", "inf"},
                               {{"0", "inf"}, {"inf", "inf"}}, {"0"});
}

PartialSystem chain2(std::vector<std::string> y = {"x1"}) {
  return PartialSystem::create({"x1", "x2"}, {"x1"}, {{"x1", "x2"}}, std::move(y));
}

PartialSystem cycle(int n, std::vector<std::string> y = {}) {
  std::vector<std::string> pts;
  std::map<std::string, std::string> mp;
  for (int i = 1; i <= n; ++i) pts.push_back("x" + std::to_string(i));
  for (int i = 1; i <= n; ++i)
    mp["x" + std::to_string(i)] = "x" + std::to_string(i % n + 1);
  auto dom = pts;
  return PartialSystem::create(std::move(pts), std::move(dom), std::move(mp), std::move(y));
}

}  // namespace

TEST_CASE("validation") {
  CHECK_THROWS_AS(PartialSystem::create({"a", "a"}, {}, {}, {}), input_error);
  CHECK_THROWS_AS(PartialSystem::create({}, {}, {}, {}), input_error);
  CHECK_THROWS_AS(PartialSystem::create({"a"}, {"a"}, {}, {}), input_error);
  CHECK_THROWS_AS(PartialSystem::create({"a", "b"}, {"a"}, {{"b", "a"}}, {}), input_error);
  CHECK_THROWS_AS(PartialSystem::create({"a"}, {}, {}, {"z"}), input_error);
}

TEST_CASE("well positioned and canonical Y") {
  CHECK(nbar().well_positioned());
  CHECK(nbar().canonical_Y());
  CHECK(chain2().canonical_Y());
  auto big = chain2({"x1", "x2"});
  CHECK(big.well_positioned());
  CHECK_FALSE(big.canonical_Y());
  auto bad = PartialSystem::create({"a", "b"}, {"a"}, {{"a", "a"}}, {});
  CHECK_FALSE(bad.well_positioned());
  CHECK(bad.well_positioned_gap() == PointSet{bad.index("b")});
  CHECK_THROWS_AS(y_pairs(bad), input_error);
}

TEST_CASE("reversible extension of the nbar system") {
  auto s = nbar();
  auto es = reversible_extension(s, 5);
  CHECK_FALSE(es.extension_finite);
  // One finite point per length: (0), (inf,0), (inf,inf,0), ...
  CHECK(es.finite_points.size() == 6);
  for (const auto& f : es.finite_points) {
    CHECK(f.back() == s.index("0"));
    for (std::size_t i = 0; i + 1 < f.size(); ++i) CHECK(f[i] == s.index("inf"));
  }
  // ... plus the single point at infinity.
  REQUIRE(es.lassos.size() == 1);
  CHECK(es.lassos[0].prefix.empty());
  CHECK(es.lassos[0].cycle == std::vector<int>{s.index("inf")});

  // phi~ is n -> n+1 under the "n = length" reading.
  for (const auto& f : es.finite_points) {
    auto g = extension_shift(s, ExtensionPoint(f), ShiftDirection::forward);
    CHECK(std::get<FinitePoint>(g).size() == f.size() + 1);
  }
  CHECK_THROWS_AS(
      extension_shift(s, ExtensionPoint(FinitePoint{s.index("0")}), ShiftDirection::backward),
      input_error);
}

TEST_CASE("reversible extension of chains and cycles") {
  auto c = chain2();
  auto es = reversible_extension(c, 4);
  CHECK(es.extension_finite);
  CHECK(es.stable_point_count == 2);  // (x1) and (x2, x1)
  CHECK(es.lassos.empty());

  auto cy = cycle(2);
  auto es2 = reversible_extension(cy, 4);
  CHECK(es2.extension_finite);
  CHECK(es2.finite_points.empty());
  CHECK(es2.lassos.size() == 2);  // the two rotations of the backward 2-cycle
}

TEST_CASE("topological freeness") {
  CHECK(is_topologically_free(nbar()).topologically_free);  // entrance at 0
  auto cy = cycle(2);
  auto fr = is_topologically_free(cy);
  CHECK_FALSE(fr.topologically_free);
  CHECK(fr.no_entrance_orbits.size() == 1);
  // Cycle plus an entrance point becomes free.
  auto entered = PartialSystem::create({"x1", "x2", "z"}, {"x1", "x2", "z"},
                                       {{"x1", "x2"}, {"x2", "x1"}, {"z", "x1"}}, {"z"});
  CHECK(is_topologically_free(entered).topologically_free);
}

TEST_CASE("freeness outside Y") {
  CHECK(is_top_free_outside_Y(cycle(2, {"x1"})));
  // Two cycles with Y covering only one: the uncovered one witnesses failure.
  auto s = PartialSystem::create({"a1", "a2", "b1", "b2"}, {"a1", "a2", "b1", "b2"},
                                 {{"a1", "a2"}, {"a2", "a1"}, {"b1", "b2"}, {"b2", "b1"}},
                                 {"a1"});
  CHECK_FALSE(is_top_free_outside_Y(s));
}

TEST_CASE("extension periodicity check") {
  auto cy = cycle(2);
  auto r = extension_periodicity_check(cy, 2);
  CHECK(r.extension_fixed.size() == 2);
  CHECK(r.base_fixed.size() == 2);
  CHECK(extension_periodicity_check(cy, 1).extension_fixed.empty());
  CHECK(extension_periodicity_check(nbar(), 3).extension_fixed.empty());
  CHECK(extension_periodicity_check(chain2(), 2).extension_fixed.empty());
}

TEST_CASE("freeness equals emptiness of all extension fixed sets") {
  std::mt19937 rng(8128);
  for (int it = 0; it < 120; ++it) {
    auto s = testutil::random_system(rng, 6, true);
    if (!s.well_positioned()) continue;
    bool any_fixed = false;
    for (int n = 1; n <= s.size(); ++n) {
      if (!extension_periodicity_check(s, n).extension_fixed.empty()) any_fixed = true;
    }
    CHECK(is_topologically_free(s).topologically_free == !any_fixed);
  }
}

TEST_CASE("invariant sets") {
  auto inv = invariant_sets(nbar());
  REQUIRE(inv.size() == 3);
  CHECK(inv[0].empty());
  CHECK(inv[1].size() == 2);
  CHECK(inv[2] == PointSet{nbar().index("inf")});
  CHECK(invariant_sets(chain2()).size() == 2);  // {x2} fails: phi(empty) != {x2}
  auto ident = PartialSystem::create({"a", "b"}, {"a", "b"}, {{"a", "a"}, {"b", "b"}}, {});
  CHECK(invariant_sets(ident).size() == 4);
}

TEST_CASE("y pairs") {
  auto yp = y_pairs(chain2());
  REQUIRE(yp.size() == 2);
  CHECK(yp[0].v.empty());
  CHECK(yp[1].v.size() == 2);
  CHECK(yp[1].v_prime == PointSet{chain2().index("x1")});

  auto ypn = y_pairs(nbar());
  REQUIRE(ypn.size() == 3);
  CHECK(ypn[0].v.empty());
  CHECK(ypn[1].v_prime == PointSet{nbar().index("0")});
  CHECK(ypn[2].v == PointSet{nbar().index("inf")});
  CHECK(ypn[2].v_prime.empty());

  // phi a bijection with Y = {}: Y-pairs are invariant sets paired with {}.
  auto cy = cycle(3);
  auto ycy = y_pairs(cy);
  for (const auto& p : ycy) CHECK(p.v_prime.empty());
  CHECK(ycy.size() == invariant_sets(cy).size());
}

TEST_CASE("randomized: y-pair oracle and canonical-Y coincidence") {
  std::mt19937 rng(60601);
  for (int it = 0; it < 150; ++it) {
    auto s = testutil::random_system(rng, 8, true);
    if (!s.well_positioned()) continue;

    // Independent oracle: filter every (V, V') pair by the definition.
    std::vector<YPair> naive;
    int n = s.size();
    for (unsigned vm = 0; vm < (1u << n); ++vm) {
      PointSet v;
      for (int x = 0; x < n; ++x)
        if (vm >> x & 1) v.insert(x);
      for (unsigned pm = 0; pm < (1u << n); ++pm) {
        PointSet vp;
        for (int x = 0; x < n; ++x)
          if (pm >> x & 1) vp.insert(x);
        bool vp_in_y = std::all_of(vp.begin(), vp.end(),
                                   [&](int x) { return s.marked().count(x) > 0; });
        PointSet img = s.image(v);
        bool inv = std::all_of(img.begin(), img.end(),
                               [&](int x) { return v.count(x) > 0; });
        PointSet uni = vp;
        uni.insert(img.begin(), img.end());
        if (vp_in_y && inv && uni == v) naive.push_back({v, vp});
      }
    }
    std::sort(naive.begin(), naive.end());
    CHECK(y_pairs(s) == naive);

    if (s.canonical_Y()) {
      std::vector<PointSet> firsts;
      for (const auto& p : y_pairs(s)) firsts.push_back(p.v);
      std::sort(firsts.begin(), firsts.end());
      firsts.erase(std::unique(firsts.begin(), firsts.end()), firsts.end());
      CHECK(firsts == invariant_sets(s));
    }
  }
}

TEST_CASE("invariance correspondence") {
  for (const auto& [name, s] : testutil::corpus_systems()) {
    CAPTURE(name);
    if (!s.well_positioned()) continue;
    CHECK(verify_invariance_correspondence(s, 2 * s.size() + 2).all());
  }
  std::mt19937 rng(271828);
  for (int it = 0; it < 60; ++it) {
    auto s = testutil::random_system(rng, 5, true);
    if (!s.well_positioned()) continue;
    CHECK(verify_invariance_correspondence(s, 2 * s.size() + 2).all());
  }
}

TEST_CASE("minimality") {
  auto mc = classify_minimal(chain2());
  CHECK(mc.minimal);
  CHECK(mc.model == MinimalityVerdict::Model::chain);
  CHECK(mc.algebra == "M_2(C)");

  auto m3 = classify_minimal(cycle(3));
  CHECK(m3.minimal);
  CHECK(m3.model == MinimalityVerdict::Model::cyclic_permutation);

  CHECK_FALSE(classify_minimal(nbar()).minimal);
  auto two_chains = PartialSystem::create({"a1", "a2", "b1", "b2"}, {"a1", "b1"},
                                          {{"a1", "a2"}, {"b1", "b2"}},
                                          {"a1", "b1"});
  CHECK_FALSE(classify_minimal(two_chains).minimal);
}

TEST_CASE("simplicity verdicts") {
  CHECK(simplicity_verdict(chain2()).simple);
  CHECK_FALSE(simplicity_verdict(cycle(3)).simple);
  auto enlarged = simplicity_verdict(chain2({"x1", "x2"}));
  CHECK_FALSE(enlarged.simple);
  REQUIRE(enlarged.witness.has_value());
  CHECK(enlarged.witness->v.size() == 2);
  CHECK(enlarged.witness->v_prime == PointSet{chain2().index("x1")});
  CHECK_FALSE(simplicity_verdict(nbar()).simple);
}

TEST_CASE("gauge ideal lattice") {
  auto gc = gauge_ideal_lattice(chain2());
  CHECK(gc.pairs.size() == 2);
  CHECK(gc.all_ideals_gauge_invariant);  // no periodic points
  auto gn = gauge_ideal_lattice(nbar());
  CHECK(gn.pairs.size() == 3);
  CHECK_FALSE(gn.all_ideals_gauge_invariant);  // inf is fixed
  auto ident = PartialSystem::create({"a", "b"}, {"a", "b"}, {{"a", "a"}, {"b", "b"}}, {});
  CHECK(gauge_ideal_lattice(ident).pairs.size() == 4);  // the power set
}
