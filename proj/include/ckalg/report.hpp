#pragma once

#include <cstdint>
#include <string>

#include "ckalg/af_core.hpp"
#include "ckalg/graph.hpp"
#include "ckalg/interaction.hpp"
#include "ckalg/markov.hpp"
#include "ckalg/partial_system.hpp"
#include "ckalg/stochastic.hpp"

namespace ckalg {

inline constexpr const char* kToolVersion = "0.1.0";

/// FNV-1a, so the input digest is stable across platforms and runs.
inline std::string content_digest(const std::string& bytes) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

inline Json report_header(const std::string& input_bytes) {
  Json j;
  j["tool_version"] = kToolVersion;
  j["input_digest"] = content_digest(input_bytes);
  return j;
}

inline Json path_to_json(const DirectedGraph& g, const Path& p) {
  Json a = Json::array();
  for (int e : p.edges) a.push_back(g.edge_id(e));
  return a;
}

inline Json lasso_to_json(const DirectedGraph& g, const EdgeLasso& l) {
  Json j;
  j["prefix"] = Json::array();
  for (int e : l.seq.prefix) j["prefix"].push_back(g.edge_id(e));
  j["cycle"] = Json::array();
  for (int e : l.seq.cycle) j["cycle"].push_back(g.edge_id(e));
  return j;
}

inline Json af_element_to_json(const AfElement& a) {
  const DirectedGraph& g = a.graph();
  Json arr = Json::array();
  for (const auto& [u, c] : a.terms()) {
    Json t;
    Json mu = Json::array(), nu = Json::array();
    for (int e : u.mu.edges) mu.push_back(g.edge_id(e));
    for (int e : u.nu.edges) nu.push_back(g.edge_id(e));
    if (u.mu.length() == 0) {
      t["vertex"] = g.vertex_id(u.mu.base);
    }
    t["unit"] = Json::array({mu, nu});
    Json coeff = Json::object();
    for (const auto& [d, q] : c.coeffs()) coeff[std::to_string(d)] = rational_to_string(q);
    t["coeff"] = std::move(coeff);
    arr.push_back(std::move(t));
  }
  return arr;
}

// ---------------------------------------------------------------------------

inline Json graph_analyze_report(const DirectedGraph& g) {
  g.require_nondegenerate();
  Json j;
  j["vertices"] = g.num_vertices();
  j["edges"] = g.num_edges();
  Json sinks = Json::array(), sources = Json::array();
  for (int v : g.sinks()) sinks.push_back(g.vertex_id(v));
  for (int v : g.sources()) sources.push_back(g.vertex_id(v));
  j["sinks"] = std::move(sinks);
  j["sources"] = std::move(sources);
  Json nv = Json::object();
  for (int v = 0; v < g.num_vertices(); ++v) j["n_v"][g.vertex_id(v)] = g.n_in(v);

  auto verdicts = graph_verdicts(g);
  j["condition_L"] = verdicts.condition_L;
  j["condition_K"] = verdicts.condition_K;
  j["simple"] = verdicts.simple;
  j["gauge_ideal_count"] = verdicts.gauge_ideal_count;
  j["all_ideals_gauge_invariant"] = verdicts.all_ideals_gauge_invariant;
  j["exit_definition_disagreements"] = Json::array();
  for (const auto& mu : verdicts.exit_definition_disagreements)
    j["exit_definition_disagreements"].push_back(path_to_json(g, mu));

  j["simple_loops"] = Json::array();
  for (const auto& mu : simple_loops(g)) {
    Json l;
    l["edges"] = path_to_json(g, mu);
    l["has_exit"] = loop_has_exit(g, mu);
    j["simple_loops"].push_back(std::move(l));
  }
  j["hereditary_saturated_sets"] = Json::array();
  for (const auto& V : hereditary_saturated_sets(g))
    j["hereditary_saturated_sets"].push_back(vertex_set_to_json(g, V));
  j["sinkless_part"] = vertex_set_to_json(g, sinkless_part(g));

  Json adj = Json::array();
  for (const auto& row : adjacency_matrix(g)) {
    Json r = Json::array();
    for (long long x : row) r.push_back(x);
    adj.push_back(std::move(r));
  }
  j["adjacency_matrix"] = std::move(adj);
  return j;
}

inline Json graph_af_report(const DirectedGraph& g, int depth) {
  Json j;
  j["depth"] = depth;
  j["levels"] = Json::array();
  for (int n = 0; n <= depth; ++n) {
    Json lvl;
    lvl["level"] = n;
    Json per = Json::object();
    for (const auto& [v, m] : f_n_dimensions(g, n)) per[g.vertex_id(v)] = m;
    lvl["path_counts"] = std::move(per);
    lvl["dim_F_N"] = f_n_total_dimension(g, n);
    lvl["basis_units"] = static_cast<long long>(level_basis(g, n).size());
    j["levels"].push_back(std::move(lvl));
  }
  auto d = bratteli_diagram(g, depth);
  Json bd;
  bd["levels"] = Json::array();
  for (const auto& nodes : d.levels) {
    Json lv = Json::array();
    for (const auto& nd : nodes) {
      Json n;
      n["vertex"] = g.vertex_id(nd.vertex);
      n["tail_birth"] = nd.tail_birth;
      n["mult"] = nd.mult;
      lv.push_back(std::move(n));
    }
    bd["levels"].push_back(std::move(lv));
  }
  bd["arrows"] = Json::array();
  for (const auto& a : d.arrows) {
    bd["arrows"].push_back(
        {{"level", a.level}, {"from", a.from}, {"to", a.to}, {"mult", a.mult}});
  }
  j["bratteli"] = std::move(bd);
  return j;
}

inline std::string bratteli_to_dot(const DirectedGraph& g, const BratteliDiagram& d) {
  std::string s = "digraph Bratteli {\n  rankdir=TB;\n";
  for (std::size_t lvl = 0; lvl < d.levels.size(); ++lvl) {
    for (std::size_t i = 0; i < d.levels[lvl].size(); ++i) {
      const auto& nd = d.levels[lvl][i];
      s += "  n" + std::to_string(lvl) + "_" + std::to_string(i) + " [label=\"" +
           g.vertex_id(nd.vertex) +
           (nd.tail_birth >= 0 ? ("@" + std::to_string(nd.tail_birth)) : "") + ":" +
           std::to_string(nd.mult) + "\"];\n";
    }
  }
  for (const auto& a : d.arrows) {
    for (long long k = 0; k < a.mult; ++k) {
      s += "  n" + std::to_string(a.level) + "_" + std::to_string(a.from) + " -> n" +
           std::to_string(a.level + 1) + "_" + std::to_string(a.to) + ";\n";
    }
  }
  s += "}\n";
  return s;
}

inline Json graph_interaction_report(const DirectedGraph& g, int depth) {
  Json j;
  j["depth"] = depth;
  auto ax = verify_interaction_axioms(g, depth);
  j["axioms"] = {{"VHV=V", ax.vhv},
                 {"HVH=H", ax.hvh},
                 {"V_partial_mult", ax.v_partial_mult},
                 {"H_partial_mult", ax.h_partial_mult},
                 {"E_V_idempotent", ax.ev_idempotent},
                 {"E_H_idempotent", ax.eh_idempotent},
                 {"all", ax.all()}};
  auto ci = verify_complete_interaction(g, depth);
  j["complete_interaction"] = {{"E_V_is_V1_compression", ci.ev_is_v1_compression},
                               {"V_image_in_corner_span", ci.v_image_in_corner_span},
                               {"corner_in_V_image_span", ci.corner_in_v_image_span},
                               {"all", ci.all()}};
  auto cs = is_csystem(g);
  j["csystem"] = cs.csystem;
  if (cs.witness_vertex) {
    j["csystem_witness"] = {{"vertex", g.vertex_id(*cs.witness_vertex)},
                            {"source_path_lengths", cs.witness_lengths}};
  }
  j["H_multiplicative"] = is_H_multiplicative(g);
  j["quotient_graph"] = quotient_graph(g).to_json();
  j["edge_seed_dims"] = generated_subalgebra_dims(g, depth, SubalgebraSeed::edge);
  j["vertex_seed_dims"] = generated_subalgebra_dims(g, depth, SubalgebraSeed::vertex);
  Json fdims = Json::array(), qdims = Json::array();
  DirectedGraph q = quotient_graph(g);
  for (int n = 0; n <= depth; ++n) {
    fdims.push_back(f_n_total_dimension(g, n));
    qdims.push_back(f_n_total_dimension(q, n));
  }
  j["dim_F_N"] = std::move(fdims);
  j["dim_F_N_quotient"] = std::move(qdims);
  return j;
}

inline Json graph_stochastic_report(const DirectedGraph& g, int max_power) {
  Json j;
  auto p = quasi_stochastic_matrix(g);
  Json m = Json::array();
  for (int i = 0; i < p.size(); ++i) {
    Json row = Json::array();
    for (int k = 0; k < p.size(); ++k) row.push_back(rational_to_string(p(i, k)));
    m.push_back(std::move(row));
  }
  j["quasi_stochastic_matrix"] = std::move(m);
  j["powers"] = Json::array();
  for (int n = 1; n <= max_power; ++n) {
    auto rep = power_partial_isometry_report(g, n);
    j["powers"].push_back({{"n", n},
                           {"matrix_criterion", rep.matrix_criterion},
                           {"length_criterion", rep.length_criterion},
                           {"range_criterion", rep.range_criterion},
                           {"partial_isometry", rep.is_partial_isometry}});
  }
  j["all_powers_partial_isometries"] = all_powers_partial_isometries(g);
  j["sampled_window"] = max_power;
  return j;
}

inline Json graph_markov_report(const DirectedGraph& g, int n) {
  Json j;
  auto d = dichotomy_report(g);
  j["dichotomy"] = Json::object();
  j["dichotomy"]["branch"] = d.branch_uncountable ? "i" : "ii";
  j["dichotomy"]["exitless_loops"] = Json::array();
  for (const auto& item : d.exitless) {
    Json l;
    l["loop"] = path_to_json(g, item.loop);
    l["fixed_point"] = lasso_to_json(g, item.fixed_point);
    l["ancestors"] = vertex_set_to_json(g, item.ancestors);
    l["forward_path_counts"] = item.forward_path_counts;
    l["multiplicity_one"] = item.multiplicity_one;
    j["dichotomy"]["exitless_loops"].push_back(std::move(l));
  }
  j["periodic_points"] = Json::array();
  for (const auto& l : periodic_points(g, n))
    j["periodic_points"].push_back(lasso_to_json(g, l));
  j["periodic_n"] = n;
  return j;
}

// ---------------------------------------------------------------------------

inline Json point_set_to_json(const PartialSystem& s, const PointSet& v) {
  Json a = Json::array();
  for (int x : v) a.push_back(s.id(x));
  return a;
}

inline Json psys_analyze_report(const PartialSystem& s) {
  Json j;
  j["topology_note"] = "finite discrete space: closed/open/interior are set conditions";
  j["points"] = s.size();
  j["well_positioned"] = s.well_positioned();
  if (!s.well_positioned()) {
    j["uncovered"] = point_set_to_json(s, s.well_positioned_gap());
    return j;
  }
  j["canonical_Y"] = s.canonical_Y();
  j["invariant_sets"] = Json::array();
  for (const auto& v : invariant_sets(s)) j["invariant_sets"].push_back(point_set_to_json(s, v));
  auto fr = is_topologically_free(s);
  j["topologically_free"] = fr.topologically_free;
  j["no_entrance_orbits"] = Json::array();
  for (const auto& orb : fr.no_entrance_orbits) {
    Json o = Json::array();
    for (int x : orb) o.push_back(s.id(x));
    j["no_entrance_orbits"].push_back(std::move(o));
  }
  j["top_free_outside_Y"] = is_top_free_outside_Y(s);
  auto mv = classify_minimal(s);
  j["minimal"] = mv.minimal;
  if (mv.minimal) {
    j["minimal_model"] =
        mv.model == MinimalityVerdict::Model::chain ? "chain" : "cyclic_permutation";
    j["model_algebra"] = mv.algebra;
  }
  auto sv = simplicity_verdict(s);
  j["simple"] = sv.simple;
  j["simplicity_reason"] = sv.reason;
  if (sv.witness) {
    j["witness_y_pair"] = {{"V", point_set_to_json(s, sv.witness->v)},
                           {"V'", point_set_to_json(s, sv.witness->v_prime)}};
  }
  auto gl = gauge_ideal_lattice(s);
  j["gauge_ideal_count"] = gl.pairs.size();
  j["all_ideals_gauge_invariant"] = gl.all_ideals_gauge_invariant;
  return j;
}

inline Json extension_point_to_json(const PartialSystem& s, const ExtensionPoint& p) {
  Json j;
  if (std::holds_alternative<FinitePoint>(p)) {
    Json seq = Json::array();
    for (int x : std::get<FinitePoint>(p)) seq.push_back(s.id(x));
    j["kind"] = "finite";
    j["orbit"] = std::move(seq);
  } else {
    const PointLasso& l = std::get<PointLasso>(p);
    j["kind"] = "lasso";
    j["prefix"] = Json::array();
    for (int x : l.prefix) j["prefix"].push_back(s.id(x));
    j["cycle"] = Json::array();
    for (int x : l.cycle) j["cycle"].push_back(s.id(x));
  }
  return j;
}

inline Json psys_extension_report(const PartialSystem& s, int depth) {
  Json j;
  auto es = reversible_extension(s, depth);
  j["depth"] = depth;
  j["finite"] = es.extension_finite;
  if (es.extension_finite) j["point_count"] = es.stable_point_count;
  j["finite_points"] = Json::array();
  for (const auto& f : es.finite_points)
    j["finite_points"].push_back(extension_point_to_json(s, ExtensionPoint(f)));
  j["lassos"] = Json::array();
  for (const auto& l : es.lassos)
    j["lassos"].push_back(extension_point_to_json(s, ExtensionPoint(l)));
  return j;
}

inline std::string psys_extension_dot(const PartialSystem& s, int depth) {
  auto es = reversible_extension(s, depth);
  std::string out = "digraph Extension {\n";
  auto name = [&](const ExtensionPoint& p) {
    std::string n;
    if (std::holds_alternative<FinitePoint>(p)) {
      for (int x : std::get<FinitePoint>(p)) n += s.id(x) + ".";
    } else {
      const PointLasso& l = std::get<PointLasso>(p);
      for (int x : l.prefix) n += s.id(x) + ".";
      n += "(";
      for (int x : l.cycle) n += s.id(x) + ".";
      n += ")";
    }
    return n;
  };
  std::vector<ExtensionPoint> pts;
  for (const auto& f : es.finite_points) pts.emplace_back(f);
  for (const auto& l : es.lassos) pts.emplace_back(l);
  for (const auto& p : pts) out += "  \"" + name(p) + "\";\n";
  for (const auto& p : pts) {
    int head = extension_head(p);
    if (!s.in_domain(head)) continue;
    ExtensionPoint q = extension_shift(s, p, ShiftDirection::forward);
    if (std::holds_alternative<FinitePoint>(q) &&
        static_cast<int>(std::get<FinitePoint>(q).size()) > depth + 1)
      continue;
    out += "  \"" + name(p) + "\" -> \"" + name(q) + "\";\n";
  }
  out += "}\n";
  return out;
}

inline Json psys_ypairs_report(const PartialSystem& s) {
  Json j;
  j["y_pairs"] = Json::array();
  for (const auto& p : y_pairs(s)) {
    j["y_pairs"].push_back(
        {{"V", point_set_to_json(s, p.v)}, {"V'", point_set_to_json(s, p.v_prime)}});
  }
  j["count"] = j["y_pairs"].size();
  return j;
}

}  // namespace ckalg
