#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ckalg/interaction.hpp"
#include "test_util.hpp"

using namespace ckalg;
using testutil::mk_graph;

TEST_CASE("V on O_2") {
  auto g = testutil::o_n(2);
  auto v_pv = apply_V(AfElement::vertex_projection(g, 0));
  AfElement expect(g);
  for (int e = 0; e < 2; ++e)
    for (int f = 0; f < 2; ++f)
      expect.add({Path{{e}, -1}, Path{{f}, -1}}, Rational(1, 2));
  CHECK(v_pv == expect);
}

TEST_CASE("V on the chain") {
  auto g = testutil::chain_sink();
  CHECK(apply_V(AfElement::vertex_projection(g, g.vertex_index("u"))).is_zero());
  AfElement saa(g);
  saa.add({Path{{0}, -1}, Path{{0}, -1}}, 1);
  CHECK(apply_V(AfElement::vertex_projection(g, g.vertex_index("v"))) == saa);
}

TEST_CASE("H formulas") {
  auto g = testutil::o_n(2);
  auto pv = AfElement::vertex_projection(g, 0);
  CHECK(apply_H(pv) == pv);
  AfElement u_ef(g);
  u_ef.add({Path{{0}, -1}, Path{{1}, -1}}, 1);
  CHECK(apply_H(u_ef) == Rational(1, 2) * pv);

  auto chain = testutil::chain_sink();
  CHECK(apply_H(AfElement::vertex_projection(chain, chain.vertex_index("v"))).is_zero());
}

TEST_CASE("H(1) and V(1)") {
  auto g = testutil::chain_sink();
  CHECK(h_one(g) == AfElement::vertex_projection(g, g.vertex_index("v")));
  AfElement saa(g);
  saa.add({Path{{0}, -1}, Path{{0}, -1}}, 1);
  CHECK(v_one(g) == saa);
  // V(H(P_v)) = V(1) P_v V(1) on O_2.
  auto o2 = testutil::o_n(2);
  auto pv = AfElement::vertex_projection(o2, 0);
  CHECK(apply_V(apply_H(pv)) == v_one(o2) * pv * v_one(o2));
}

TEST_CASE("axioms and completeness on the corpus") {
  for (const auto& [name, g] : testutil::corpus_graphs()) {
    int depth = (f_n_total_dimension(g, 3) > 200) ? 2 : 3;
    CAPTURE(name);
    auto ax = verify_interaction_axioms(g, depth);
    CHECK(ax.all());
    auto ci = verify_complete_interaction(g, depth);
    CHECK(ci.all());
  }
}

TEST_CASE("csystem classification") {
  CHECK(is_csystem(testutil::o_n(2)).csystem);
  CHECK(is_csystem(testutil::chain_sink()).csystem);
  auto sl = mk_graph({"s", "v"}, {{"a", "s", "v"}, {"e", "v", "v"}});
  auto verdict = is_csystem(sl);
  CHECK_FALSE(verdict.csystem);
  REQUIRE(verdict.witness_vertex.has_value());
  CHECK(*verdict.witness_vertex == sl.vertex_index("v"));
}

TEST_CASE("four csystem criteria agree on corpus and random graphs") {
  for (const auto& [name, g] : testutil::corpus_graphs()) {
    CAPTURE(name);
    CHECK_NOTHROW(csystem_equivalences(g, 3));
  }
  std::mt19937 rng(90125);
  for (int it = 0; it < 40; ++it) {
    auto g = testutil::random_graph(rng, 4, 6);
    if (g.degenerate()) continue;
    // The shortest centrality witness can sit at level |E^0| - 1.
    CHECK_NOTHROW(csystem_equivalences(g, std::max(3, g.num_vertices())));
  }
}

TEST_CASE("H multiplicativity and V(1) centrality") {
  CHECK(is_H_multiplicative(testutil::chain_sink()));
  CHECK_FALSE(is_H_multiplicative(testutil::o_n(2)));
  auto two_loops = mk_graph({"u", "v"}, {{"e", "u", "u"}, {"f", "v", "v"}});
  CHECK(is_H_multiplicative(two_loops));
  for (const auto& [name, g] : testutil::corpus_graphs()) {
    CAPTURE(name);
    CHECK(is_H_multiplicative(g) == v1_central(g, std::max(3, g.num_vertices())));
  }
}

TEST_CASE("quotient graph") {
  auto q = quotient_graph(testutil::o_n(2));
  CHECK(q.num_edges() == 1);
  CHECK(q.edge_id(0) == "e1");
  auto de = mk_graph({"u", "v"}, {{"g", "u", "v"}, {"h", "u", "v"}});
  CHECK(quotient_graph(de).num_edges() == 1);
  auto chain = testutil::chain_sink();
  CHECK(quotient_graph(chain).to_json() == chain.to_json());
}

TEST_CASE("generated subalgebra dimensions") {
  auto o2 = testutil::o_n(2);
  CHECK(generated_subalgebra_dims(o2, 2, SubalgebraSeed::edge) ==
        std::vector<long long>{1, 4, 16});
  CHECK(generated_subalgebra_dims(o2, 2, SubalgebraSeed::vertex) ==
        std::vector<long long>{1, 1, 1});

  auto de = mk_graph({"u", "v"}, {{"g", "u", "v"}, {"h", "u", "v"}});
  auto vdims = generated_subalgebra_dims(de, 1, SubalgebraSeed::vertex);
  CHECK(vdims == std::vector<long long>{2, 2});
  CHECK(vdims[1] < f_n_total_dimension(de, 1));  // strict drop at depth 1

  for (const auto& [name, g] : testutil::corpus_graphs()) {
    CAPTURE(name);
    int depth = (f_n_total_dimension(g, 3) > 100) ? 2 : 3;
    auto ed = generated_subalgebra_dims(g, depth, SubalgebraSeed::edge);
    auto vd = generated_subalgebra_dims(g, depth, SubalgebraSeed::vertex);
    auto q = quotient_graph(g);
    for (int n = 0; n <= depth; ++n) {
      CHECK(ed[n] == f_n_total_dimension(g, n));
      CHECK(vd[n] == f_n_total_dimension(q, n));
    }
  }
}

TEST_CASE("randomized: adjoint symmetry and positivity") {
  std::mt19937 rng(1111);
  for (const auto& [name, g] : testutil::corpus_graphs()) {
    for (int it = 0; it < 10; ++it) {
      auto a = testutil::random_af_element(rng, g, 2, 4);
      CHECK(apply_V(a.adjoint()) == apply_V(a).adjoint());
      CHECK(apply_H(a.adjoint()) == apply_H(a).adjoint());
      // Positivity spot check: b self-adjoint with spectrum in [-m, m],
      // m = ||b||, is positive iff ||m - b|| <= m.  Shift by a rational
      // upper bound for m so the symbolic difference stays exact.
      auto positive = [&](const AfElement& b) {
        CHECK(b == b.adjoint());
        double m = b.operator_norm();
        long long num = static_cast<long long>(std::ceil(m * (1 << 20))) + 1;
        AfElement shifted = ExactScalar(Rational(num, 1 << 20)) * AfElement::identity(g) - b;
        CHECK(shifted.operator_norm() <= static_cast<double>(num) / (1 << 20) + 1e-9);
      };
      positive(apply_V(a.adjoint() * a));
      positive(apply_H(a.adjoint() * a));
    }
  }
}
