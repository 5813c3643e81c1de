#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ckalg/interaction.hpp"
#include "ckalg/markov.hpp"
#include "test_util.hpp"

using namespace ckalg;
using testutil::mk_graph;

TEST_CASE("lasso canonicalization") {
  LassoSeq<int> l{{1, 2}, {3, 3}};
  l.canonicalize();
  CHECK(l.cycle == std::vector<int>{3});
  CHECK(l.prefix == std::vector<int>{1, 2});
  LassoSeq<int> m{{5, 7}, {9, 7}};  // prefix tail absorbs into the cycle
  m.canonicalize();
  CHECK(m.prefix == std::vector<int>{5});
  CHECK(m.cycle == std::vector<int>{7, 9});
  LassoSeq<int> pure{{}, {1, 2, 1, 2}};
  pure.canonicalize();
  CHECK(pure.cycle == std::vector<int>{1, 2});
}

TEST_CASE("shift") {
  auto o1 = testutil::o_n(1);
  OmegaPoint fixed = EdgeLasso{LassoSeq<int>{{}, {0}}};
  CHECK(shift(o1, fixed) == fixed);

  auto chain = testutil::chain_sink();
  OmegaPoint sp = SinkPath{Path{{0}, -1}};
  OmegaPoint bare = SinkPath{Path::at_vertex(chain.vertex_index("v"))};
  CHECK(shift(chain, sp) == bare);
  CHECK_THROWS_AS(shift(chain, bare), input_error);
}

TEST_CASE("transfer operator on cylinders") {
  auto o2 = testutil::o_n(2);
  auto chi_e = CylinderFunction::indicator(o2, Path{{0}, -1});
  auto half_one = transfer_apply(chi_e);
  CylinderFunction expect(o2);
  expect.add(Path::at_vertex(0), Rational(1, 2));
  CHECK(half_one == expect);

  auto chain = testutil::chain_sink();
  // The sink cylinder has no shift preimage with mass: transfer kills it,
  // matching H(P_v) = 0 at sinks.
  auto chi_v = CylinderFunction::indicator(chain, Path::at_vertex(chain.vertex_index("v")));
  CHECK(transfer_apply(chi_v).is_zero());
  auto chi_u = CylinderFunction::indicator(chain, Path::at_vertex(chain.vertex_index("u")));
  CHECK(transfer_apply(chi_u) == chi_v);
}

TEST_CASE("dual endomorphism on cylinders") {
  auto o2 = testutil::o_n(2);
  auto one = CylinderFunction::one(o2);
  CHECK(dual_endo_apply(one) == one);  // chi_e + chi_f refines back to 1
  auto chain = testutil::chain_sink();
  auto chi_v = CylinderFunction::indicator(chain, Path::at_vertex(chain.vertex_index("v")));
  auto chi_a = CylinderFunction::indicator(chain, Path{{0}, -1});
  CHECK(dual_endo_apply(chi_v) == chi_a);
  CHECK(dual_endo_apply(CylinderFunction::zero(o2)).is_zero());
}

TEST_CASE("transfer after dual is the identity on the sigma-image support") {
  for (const auto& [name, g] : testutil::corpus_graphs()) {
    CAPTURE(name);
    for (int len = 0; len <= 2; ++len) {
      for (const auto& mu : paths_of_length(g, len)) {
        if (g.is_source(mu.source(g))) continue;  // outside sigma's image
        auto f = CylinderFunction::indicator(g, mu);
        CHECK(transfer_apply(dual_endo_apply(f)) == f);
      }
    }
  }
}

TEST_CASE("tail equivalence") {
  auto o1 = testutil::o_n(1);
  OmegaPoint a = EdgeLasso{LassoSeq<int>{{}, {0}}};
  OmegaPoint b = EdgeLasso{LassoSeq<int>{{0}, {0}}};  // canonicalizes to a
  CHECK(tail_equivalent(o1, a, b));
  auto o2 = testutil::o_n(2);
  OmegaPoint pe = EdgeLasso{LassoSeq<int>{{}, {0}}};
  OmegaPoint pf = EdgeLasso{LassoSeq<int>{{}, {1}}};
  CHECK_FALSE(tail_equivalent(o2, pe, pf));
  auto chain = testutil::chain_sink();
  OmegaPoint sp = SinkPath{Path{{0}, -1}};
  OmegaPoint bare = SinkPath{Path::at_vertex(chain.vertex_index("v"))};
  CHECK_FALSE(tail_equivalent(chain, sp, bare));  // lengths differ
}

TEST_CASE("tail equivalence is an equivalence relation") {
  std::mt19937 rng(31415);
  auto o2 = testutil::o_n(2);
  auto random_lasso = [&]() {
    LassoSeq<int> l;
    int np = static_cast<int>(rng() % 3);
    for (int i = 0; i < np; ++i) l.prefix.push_back(static_cast<int>(rng() % 2));
    int nc = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < nc; ++i) l.cycle.push_back(static_cast<int>(rng() % 2));
    l.canonicalize();
    return OmegaPoint(EdgeLasso{l});
  };
  std::vector<OmegaPoint> pts;
  for (int i = 0; i < 12; ++i) pts.push_back(random_lasso());
  for (const auto& x : pts) CHECK(tail_equivalent(o2, x, x));
  for (const auto& x : pts)
    for (const auto& y : pts) CHECK(tail_equivalent(o2, x, y) == tail_equivalent(o2, y, x));
  for (const auto& x : pts)
    for (const auto& y : pts)
      for (const auto& z : pts)
        if (tail_equivalent(o2, x, y) && tail_equivalent(o2, y, z))
          CHECK(tail_equivalent(o2, x, z));
}

TEST_CASE("periodic points") {
  auto o1 = testutil::o_n(1);
  CHECK(periodic_points(o1, 5).size() == 1);
  auto o2 = testutil::o_n(2);
  // sigma^2-fixed points: e^inf, f^inf, (ef)^inf, (fe)^inf.
  CHECK(periodic_points(o2, 2).size() == 4);
  CHECK(periodic_points(o2, 1).size() == 2);
  CHECK(periodic_points(testutil::chain_sink(), 3).empty());
  // Counting check: sigma^n-fixed points of O_k number k^n.
  auto o3 = testutil::o_n(3);
  CHECK(periodic_points(o3, 3).size() == 27);
}

TEST_CASE("dichotomy") {
  auto r2 = dichotomy_report(testutil::o_n(2));
  CHECK(r2.branch_uncountable);
  CHECK(r2.exitless.empty());

  auto r1 = dichotomy_report(testutil::o_n(1));
  CHECK_FALSE(r1.branch_uncountable);
  REQUIRE(r1.exitless.size() == 1);
  CHECK(r1.exitless[0].ancestors.size() == 1);  // whole vertex set
  CHECK(r1.exitless[0].multiplicity_one);

  auto le = mk_graph({"v", "w"}, {{"e", "v", "v"}, {"x", "v", "w"}});
  CHECK(dichotomy_report(le).branch_uncountable);

  for (const auto& [name, g] : testutil::corpus_graphs()) {
    CAPTURE(name);
    CHECK(dichotomy_report(g).branch_uncountable == condition_L(g));
  }
}

TEST_CASE("diagonal conjugacy with the AF calculus") {
  for (const auto& [name, g] : testutil::corpus_graphs()) {
    CAPTURE(name);
    for (const auto& u : level_basis(g, 3)) {
      if (!u.diagonal()) continue;
      auto x = AfElement::from_unit(g, u);
      CHECK(diagonal_to_cylinder(apply_H(x)) == transfer_apply(diagonal_to_cylinder(x)));
      CHECK(diagonal_to_cylinder(dual_endo_on_units(x)) ==
            dual_endo_apply(diagonal_to_cylinder(x)));
    }
  }
}
