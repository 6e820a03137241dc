// Dynamic operators and graph rewriters. Natural revision is compared
// against an independently constructed relation (direct satisfaction
// recursion, pairwise minimality loops) across the full two-symbol model
// enumeration; the graph-level revision is checked to commute with the
// model-level operator; the induction and relevance checks are frozen to
// their exact instance counts; case-table rewriters are probed for
// match-by-meaning semantics.

#include <catch2/catch_amalgamated.hpp>

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "prefdl/prefdl.hpp"

using namespace prefdl;

namespace {

// Reference satisfaction by structural recursion, one valuation at a time.
bool sat(const PropFormula& f, const SymbolTable& st, Valuation w) {
  switch (f.kind()) {
    case PropKind::Atom: return world_sats(w, *st.index_of(f.atom_name()), st.size());
    case PropKind::Top: return true;
    case PropKind::Bottom: return false;
    case PropKind::Not: return !sat(f.lhs(), st, w);
    case PropKind::And: return sat(f.lhs(), st, w) && sat(f.rhs(), st, w);
    case PropKind::Or: return sat(f.lhs(), st, w) || sat(f.rhs(), st, w);
    case PropKind::Implies: return !sat(f.lhs(), st, w) || sat(f.rhs(), st, w);
    case PropKind::Iff: return sat(f.lhs(), st, w) == sat(f.rhs(), st, w);
  }
  FAIL("unreachable formula kind");
  return false;
}

// Reference natural revision, built with plain loops: find the satisfying
// positions by direct recursion, find the minimal ones pairwise, then apply
// the promotion rule. Returns the expected relation; empty if no world
// satisfies the formula.
std::vector<std::vector<bool>> oracle_revised_relation(const PreferenceModel& m,
                                                       const PropFormula& phi) {
  const std::size_t n = m.size();
  std::vector<bool> satv(n), promoted(n, false);
  bool any = false;
  for (std::size_t i = 0; i < n; ++i) {
    satv[i] = sat(phi, m.symbols(), m.worlds()[i]);
    any = any || satv[i];
  }
  if (!any) return {};
  for (std::size_t i = 0; i < n; ++i) {
    if (!satv[i]) continue;
    bool minimal = true;
    for (std::size_t j = 0; j < n && minimal; ++j) {
      if (satv[j] && m.rel(j, i) && !m.rel(i, j)) minimal = false;
    }
    promoted[i] = minimal;
  }
  std::vector<std::vector<bool>> r(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      r[i][j] = promoted[i] || (!promoted[j] && m.rel(i, j));
    }
  }
  return r;
}

// The chain 11 <= 10 <= 01 <= 00.
PreferenceModel chain_model(const SymbolTable& st) {
  PreferenceModel m =
      PreferenceModel::from_valuation_pairs(st, {3, 2, 1, 0}, {{3, 2}, {2, 1}, {1, 0}});
  m.close_transitive();
  return m;
}

std::vector<Valuation> global_min_worlds(const PreferenceModel& m) {
  std::vector<Valuation> out;
  for (std::size_t pos : min_positions(m, Bitset::ones(m.size())).positions()) {
    out.push_back(m.worlds()[pos]);
  }
  return out;
}

} // namespace

TEST_CASE("natural revision matches the independently built relation everywhere") {
  const SymbolTable st({"p", "q"});
  const std::vector<PropFormula> classes = detail::class_formulas(st);
  for (const PreferenceModel& m : enumerate_models(st)) {
    for (const PropFormula& phi : classes) {
      const std::vector<std::vector<bool>> expect = oracle_revised_relation(m, phi);
      if (expect.empty()) {
        REQUIRE_THROWS_WITH(natural_revision(m, phi),
                            Catch::Matchers::ContainsSubstring("vacuous revision"));
        continue;
      }
      const PreferenceModel got = natural_revision(m, phi);
      REQUIRE(got.same_worlds(m));
      REQUIRE(validate_model(got).ok);
      for (std::size_t i = 0; i < m.size(); ++i) {
        for (std::size_t j = 0; j < m.size(); ++j) {
          INFO("model:\n" << print_model(m) << "formula: " << phi.to_string());
          REQUIRE(got.rel(i, j) == expect[i][j]);
        }
      }
    }
  }
}

TEST_CASE("revising the chain by ~p promotes exactly the best ~p world") {
  const SymbolTable st({"p", "q"});
  const PreferenceModel m = chain_model(st);
  const PropFormula phi = parse_prop("~p", st);
  const PreferenceModel r = natural_revision(m, phi);
  // Positions: 0=11, 1=10, 2=01, 3=00. The best ~p world is 01.
  REQUIRE(global_min_worlds(r) == std::vector<Valuation>{1});
  REQUIRE(r.rel(2, 0));
  REQUIRE(r.rel(2, 1));
  REQUIRE(r.rel(2, 3));
  REQUIRE_FALSE(r.rel(0, 2)); // 01 left everything above it behind
  REQUIRE(r.rel(0, 1));       // the non-promoted part of the order is untouched
  REQUIRE_FALSE(r.rel(1, 0));
  REQUIRE(r.rel(1, 3));

  SECTION("the over-eager mutant promotes all of ~p, not just its best world") {
    const PreferenceModel pa = apply_checked(promote_all_operator(), m, phi);
    REQUIRE_FALSE(r.rel(3, 2));
    REQUIRE(pa.rel(3, 2));
    REQUIRE(global_min_worlds(pa) == std::vector<Valuation>{1, 0});
  }
}

TEST_CASE("operator dispatch and the operator contract") {
  const SymbolTable st({"p", "q"});
  const PreferenceModel m = chain_model(st);
  const OperatorRegistry reg;

  SECTION("the default registry and name clashes") {
    REQUIRE(reg.names() == std::vector<std::string>{"identity", "natural", "promote-all"});
    OperatorRegistry one(identity_operator());
    REQUIRE(one.find("natural") == nullptr);
    REQUIRE_THROWS_WITH(one.add(identity_operator()),
                        Catch::Matchers::ContainsSubstring("already registered"));
  }

  SECTION("dispatch by name") {
    const PropFormula phi = parse_prop("~p", st);
    REQUIRE(apply_operator(reg, "natural", m, phi) == natural_revision(m, phi));
    REQUIRE(apply_operator(reg, "identity", m, phi) == m);
    REQUIRE_THROWS_WITH(apply_operator(reg, "smoosh", m, phi),
                        Catch::Matchers::ContainsSubstring("unknown operator \"smoosh\""));
  }

  SECTION("revision by an unsatisfied formula is refused, naming the formula") {
    const PreferenceModel all_p(st, {3, 2});
    REQUIRE_THROWS_WITH(natural_revision(all_p, parse_prop("~p", st)),
                        Catch::Matchers::ContainsSubstring(
                            "vacuous revision: no world of the model satisfies \"~p\""));
  }

  SECTION("world-set changes and broken relations are rejected") {
    const DynamicOperator dropper{
        "dropper", [](const PreferenceModel& in, const PropFormula&) {
          return restrict_model(in, {in.worlds().front()});
        }};
    REQUIRE_THROWS_WITH(apply_checked(dropper, m, PropFormula::top()),
                        Catch::Matchers::ContainsSubstring("changed the world set"));
    const DynamicOperator breaker{
        "breaker", [](const PreferenceModel& in, const PropFormula&) {
          PreferenceModel out = in;
          out.set_rel(0, 1, true);
          out.set_rel(1, 2, true);
          out.set_rel(0, 2, false);
          return out;
        }};
    REQUIRE_THROWS_WITH(apply_checked(breaker, m, PropFormula::top()),
                        Catch::Matchers::ContainsSubstring("produced an invalid model"));
  }
}

TEST_CASE("graph-level revision commutes with model-level revision") {
  const SymbolTable st({"p", "q"});
  const PropFormula p = PropFormula::atom("p");
  const PropFormula q = PropFormula::atom("q");
  const GroundedPGraph g(PropFormula::top(), PGraph(st, {p, q}, {{0, 1}}));
  const PropFormula psi = PropFormula::neg(p);

  SECTION("the revised graph, node by node") {
    const GroundedPGraph r = natural_revision_graph(g, psi);
    REQUIRE(r.graph().node_count() == 3);
    REQUIRE(r.graph().nodes()[0].to_string() == "q & (T & ~p)");
    REQUIRE(r.graph().nodes()[1].to_string() == "p | q & (T & ~p)");
    REQUIRE(r.graph().nodes()[2].to_string() == "q | q & (T & ~p)");
    REQUIRE(r.graph().edges() ==
            std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {0, 2}, {1, 2}});
    REQUIRE(grounded_induce(r) == natural_revision(grounded_induce(g), psi));
  }

  SECTION("the literal prepend keeps the original nodes and only fixes minima") {
    const GroundedPGraph r = prepend_mu_graph(g, psi);
    REQUIRE(r.graph().nodes()[0].to_string() == "q & (T & ~p)");
    REQUIRE(r.graph().nodes()[1] == p);
    REQUIRE(r.graph().nodes()[2] == q);
    REQUIRE(r.graph().edges() ==
            std::vector<std::pair<std::size_t, std::size_t>>{{0, 1}, {0, 2}, {1, 2}});
    REQUIRE(global_min_worlds(grounded_induce(r)) ==
            global_min_worlds(natural_revision(grounded_induce(g), psi)));
  }

  SECTION("across a pool slice and all revision formulas") {
    const std::vector<GroundedPGraph> pool = grounded_graph_pool(st);
    const std::vector<PropFormula> classes = detail::class_formulas(st);
    for (std::size_t i = 0; i < pool.size(); i += 97) {
      const PreferenceModel m = grounded_induce(pool[i]);
      for (const PropFormula& phi : classes) {
        if ((pool[i].ground_fingerprint() & fingerprint(phi, st)).none()) {
          REQUIRE_THROWS_WITH(natural_revision_graph(pool[i], phi),
                              Catch::Matchers::ContainsSubstring("inconsistent with the grounding"));
          REQUIRE_THROWS_WITH(natural_revision(m, phi),
                              Catch::Matchers::ContainsSubstring("vacuous revision"));
          continue;
        }
        const PreferenceModel via_graph = grounded_induce(natural_revision_graph(pool[i], phi));
        const PreferenceModel via_model = natural_revision(m, phi);
        REQUIRE(via_graph == via_model);
        REQUIRE(global_min_worlds(grounded_induce(prepend_mu_graph(pool[i], phi))) ==
                global_min_worlds(via_model));
      }
    }
  }
}

TEST_CASE("graph pools have their documented sizes") {
  const SymbolTable st({"p", "q"});
  REQUIRE(detail::class_formulas(st).size() == 16);
  REQUIRE(fingerprint(detail::class_formulas(st)[0], st).none()); // the inconsistent class
  REQUIRE(detail::small_graphs(st).size() == 785);
  REQUIRE(plain_graph_pool(st).size() == 1284); // 499 canonical + 785 small
  REQUIRE(grounded_graph_pool(st).size() == 12274);
}

TEST_CASE("induction: rewriters tracked against operators, exhaustively") {
  const SymbolTable st({"p", "q"});

  SECTION("graph revision implements natural revision on every instance") {
    const InductionVerdict v = induction_check(revision_graph_transformation(), natural_operator(), st);
    CHECK(v.holds);
    REQUIRE(v.instances == 196384); // 12274 graphs x 16 classes
    REQUIRE_FALSE(v.witness.has_value());
  }

  SECTION("the identity rewriter implements the identity operator") {
    const InductionVerdict v = induction_check(identity_transformation(true), identity_operator(), st);
    CHECK(v.holds);
    REQUIRE(v.instances == 196384);
  }

  SECTION("mismatched pairs fail with a replayable counterexample") {
    const InductionVerdict v = induction_check(identity_transformation(true), natural_operator(), st);
    REQUIRE_FALSE(v.holds);
    REQUIRE(v.witness.has_value());
    const Witness& w = *v.witness;
    REQUIRE(w.size() == 3);
    REQUIRE(w[0].key == "graph");
    REQUIRE(w[1].key == "model");
    REQUIRE(w[2].key == "formula");
    // Replay: the graph induces the model, but leaving the graph alone does
    // not track the operator on this formula.
    const auto& g = std::get<GroundedPGraph>(w[0].value);
    const auto& m = std::get<PreferenceModel>(w[1].value);
    const auto& phi = std::get<PropFormula>(w[2].value);
    REQUIRE(grounded_induce(g) == m);
    REQUIRE_FALSE(natural_revision(m, phi) == m);
  }
}

TEST_CASE("relevance: rewriters must respect graph equivalence") {
  const SymbolTable st({"p", "q"});

  SECTION("graph revision is relevant") {
    const InductionVerdict v = relevance_check(revision_graph_transformation(), st);
    CHECK(v.holds);
    REQUIRE(v.instances == 140877);
  }

  SECTION("the shape-pair case table is not, and the witness says where") {
    const InductionVerdict builtin = relevance_check(detail::shape_pair_table_transformation(st), st);
    REQUIRE_FALSE(builtin.holds);
    REQUIRE(builtin.instances == 103299);
    REQUIRE(builtin.witness.has_value());
    const Witness& w = *builtin.witness;
    REQUIRE(w.size() == 4);
    REQUIRE(w[0].key == "graph 1");
    REQUIRE(w[1].key == "graph 2");
    REQUIRE(w[2].key == "formula");
    REQUIRE(w[3].key == "rewriting formula");

    SECTION("the same rewriter read from a case-table file gets the same verdict") {
      const GraphTransformation parsed =
          parse_transform_file(std::string(PREFDL_TEST_DATA_DIR) + "/shape_table.pt");
      REQUIRE(parsed.name == "shape-pair-table");
      const InductionVerdict again = relevance_check(parsed, st);
      REQUIRE(again.holds == builtin.holds);
      REQUIRE(again.instances == builtin.instances);
    }
  }
}

TEST_CASE("a relevant rewriter lifts to exactly its operator") {
  const SymbolTable st({"p", "q"});
  const DynamicOperator lifted = operator_from_transformation(revision_graph_transformation());
  REQUIRE(lifted.name == "natural-revision");
  const std::vector<PropFormula> classes = detail::class_formulas(st);
  const std::vector<PreferenceModel> models = enumerate_models(st);
  for (std::size_t i = 0; i < models.size(); i += 13) {
    for (const PropFormula& phi : classes) {
      if (models[i].positions_satisfying(fingerprint(phi, st)).none()) continue;
      REQUIRE(lifted.apply(models[i], phi) == natural_revision(models[i], phi));
    }
  }
}

TEST_CASE("case tables match inputs by meaning, not by spelling") {
  const SymbolTable st({"p", "q"});
  const PropFormula p = PropFormula::atom("p");
  const PropFormula q = PropFormula::atom("q");

  SECTION("fingerprint-equivalent nodes select the case") {
    const GraphTransformation t =
        make_table_transformation("swap", {{PGraph(st, {p}), PGraph(st, {q})}});
    REQUIRE(t.extra_plain.size() == 2);
    const PGraph spelled(st, {parse_prop("p & (p | q)", st)});
    const PGraph out = t.apply_plain(spelled, PropFormula::top());
    REQUIRE(out.node_count() == 1);
    REQUIRE(out.nodes()[0] == q);
  }

  SECTION("priority comparison uses the closure, not the written edges") {
    const PGraph key(st, {p, q, p}, {{0, 1}, {1, 2}});
    const GraphTransformation t =
        make_table_transformation("collapse", {{key, PGraph(st, {p})}});
    const PGraph with_transitive_edge(st, {p, q, p}, {{0, 1}, {1, 2}, {0, 2}});
    REQUIRE(t.apply_plain(with_transitive_edge, PropFormula::top()).node_count() == 1);
    const PGraph different_closure(st, {p, q, p}, {{0, 2}, {1, 2}});
    REQUIRE(t.apply_plain(different_closure, PropFormula::top()).node_count() == 3);
  }

  SECTION("matching is positional and unmatched inputs pass through unchanged") {
    const GraphTransformation t =
        make_table_transformation("swap", {{PGraph(st, {p, q}), PGraph(st, {q})}});
    const PGraph reversed(st, {q, p});
    const PGraph out = t.apply_plain(reversed, PropFormula::top());
    REQUIRE(out.node_count() == 2);
    REQUIRE(out.nodes()[0] == q);
    REQUIRE(out.nodes()[1] == p);
  }

  SECTION("grounded case tables must preserve the grounding") {
    const GroundedPGraph in(p, PGraph(st, {q}));
    const GroundedPGraph out(q, PGraph(st, {q}));
    REQUIRE_THROWS_WITH(
        make_grounded_table_transformation("bad", {{in, out}}),
        Catch::Matchers::ContainsSubstring("changes the grounding"));
    const GroundedPGraph ok_out(parse_prop("p & (q | ~q)", st), PGraph(st, {p}));
    const GraphTransformation t = make_grounded_table_transformation("ok", {{in, ok_out}});
    REQUIRE(t.extra_grounded.size() == 2);
    REQUIRE(t.apply_grounded(in, PropFormula::top()).graph().nodes()[0] == p);
    // A grounded input with a different grounding extension passes through.
    const GroundedPGraph elsewhere(q, PGraph(st, {q}));
    REQUIRE(t.apply_grounded(elsewhere, PropFormula::top()).graph().nodes()[0] == q);
  }
}
