// File formats. Printing is checked against golden stanzas written out by
// hand; parsing is checked as the inverse of printing (exact equality after a
// round trip), against the shipped fixture files, and for its error reporting
// (message text and character offset both frozen). Transformation files are
// exercised end to end, including the failure modes, from a temp directory.

#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <string>
#include <utility>
#include <vector>

#include "prefdl/prefdl.hpp"

using namespace prefdl;

namespace {

const std::string kData = PREFDL_TEST_DATA_DIR;

PreferenceModel chain_model(const SymbolTable& st) {
  PreferenceModel m =
      PreferenceModel::from_valuation_pairs(st, {3, 2, 1, 0}, {{3, 2}, {2, 1}, {1, 0}});
  m.close_transitive();
  return m;
}

template <class Fn>
std::size_t position_of(Fn&& fn) {
  try {
    fn();
  } catch (const ParseError& e) {
    return e.position();
  }
  FAIL("expected a parse error");
  return 0;
}

} // namespace

TEST_CASE("model files print to the golden stanza and parse back exactly") {
  const SymbolTable st({"p", "q"});

  SECTION("the shipped chain fixture") {
    const PreferenceModel m = parse_model_file(kData + "/chain.pm");
    REQUIRE(m == chain_model(st));
    REQUIRE(print_model(m) ==
            "model {\n"
            "  symbols: p q;\n"
            "  worlds: 11 10 01 00;\n"
            "  leq: 11<=10, 11<=01, 11<=00, 10<=01, 10<=00, 01<=00;\n"
            "}\n");
    REQUIRE(parse_model(print_model(m)) == m);
  }

  SECTION("mutual pairs print with a tilde") {
    PreferenceModel m = PreferenceModel::from_valuation_pairs(
        st, {3, 2, 1, 0}, {{3, 2}, {2, 3}, {2, 1}, {1, 0}});
    m.close_transitive();
    REQUIRE(print_model(m) ==
            "model {\n"
            "  symbols: p q;\n"
            "  worlds: 11 10 01 00;\n"
            "  leq: 11~10, 11<=01, 11<=00, 10<=01, 10<=00, 01<=00;\n"
            "}\n");
    REQUIRE(parse_model(print_model(m)) == m);
  }

  SECTION("a single world needs no relation line") {
    const PreferenceModel m(st, {3});
    REQUIRE(print_model(m) == "model {\n  symbols: p q;\n  worlds: 11;\n}\n");
    REQUIRE(parse_model(print_model(m)) == m);
  }

  SECTION("round trips across the enumeration") {
    const std::vector<PreferenceModel> models = enumerate_models(st);
    for (std::size_t i = 0; i < models.size(); i += 7) {
      REQUIRE(parse_model(print_model(models[i])) == models[i]);
    }
  }

  SECTION("comments and loose whitespace are ignored") {
    const PreferenceModel m = parse_model(
        "# chain, covering pairs only\n"
        "model {  symbols:   p q ; # two symbols\n"
        "  worlds: 11 10 01 00;\n"
        "  leq: 11<=10, 10<=01,\n"
        "       01<=00; }\n");
    REQUIRE(m == chain_model(st));
  }
}

TEST_CASE("stanza parse errors name the problem and the character offset") {
  SECTION("model stanzas") {
    REQUIRE(position_of([] { return parse_model("graph { symbols: p; worlds: 1; }"); }) == 0);
    REQUIRE_THROWS_WITH(parse_model("graph { symbols: p; worlds: 1; }"),
                        Catch::Matchers::ContainsSubstring("expected 'model'"));
    REQUIRE(position_of([] { return parse_model("model { symbols: p q; worlds: 1; }"); }) == 30);
    REQUIRE_THROWS_WITH(
        parse_model("model { symbols: p q; worlds: 1; }"),
        Catch::Matchers::ContainsSubstring("expected a world bitstring with one bit per symbol"));
    const std::string strict = "model { symbols: p q; worlds: 11 10; leq: 11<10; }";
    REQUIRE(position_of([&] { return parse_model(strict); }) == 45);
    REQUIRE_THROWS_WITH(parse_model(strict), Catch::Matchers::ContainsSubstring("expected '='"));
    REQUIRE_THROWS_WITH(parse_model(strict),
                        Catch::Matchers::ContainsSubstring("(at offset 45)"));
    const std::string trailing = "model { symbols: p; worlds: 1 0; } x";
    REQUIRE(position_of([&] { return parse_model(trailing); }) == 35);
    REQUIRE_THROWS_WITH(parse_model(trailing),
                        Catch::Matchers::ContainsSubstring("unexpected text after the stanza"));
    REQUIRE_THROWS_WITH(parse_model("model { symbols: p; worlds: 1; leq: 1<=0; }"),
                        Catch::Matchers::ContainsSubstring(
                            "relation pair mentions a world not in the model"));
  }

  SECTION("graph stanzas") {
    const std::string dup = "graph { symbols: p; nodes: n = \"p\", n = \"p\"; }";
    REQUIRE(position_of([&] { return parse_graph(dup); }) == 36);
    REQUIRE_THROWS_WITH(parse_graph(dup),
                        Catch::Matchers::ContainsSubstring("duplicate node label 'n'"));
    const std::string unknown = "graph { symbols: p; nodes: a = \"p\"; edges: a < b; }";
    REQUIRE(position_of([&] { return parse_graph(unknown); }) == 43);
    REQUIRE_THROWS_WITH(parse_graph(unknown),
                        Catch::Matchers::ContainsSubstring("unknown node label 'b'"));
    const std::string broken = "graph { symbols: p; nodes: a = \"p &\"; }";
    REQUIRE(position_of([&] { return parse_graph(broken); }) == 31);
    REQUIRE_THROWS_WITH(parse_graph(broken),
                        Catch::Matchers::ContainsSubstring("in quoted formula:"));
    REQUIRE_THROWS_WITH(parse_graph(broken),
                        Catch::Matchers::ContainsSubstring("(at offset 3)"));
    const std::string unterminated = "graph { symbols: p; ground: \"p; }";
    REQUIRE(position_of([&] { return parse_graph(unterminated); }) == 28);
    REQUIRE_THROWS_WITH(parse_graph(unterminated),
                        Catch::Matchers::ContainsSubstring("unterminated quote"));
  }
}

TEST_CASE("graph files: fixtures, grounding, and print idempotence") {
  const SymbolTable st({"p", "q"});
  const auto [two_atoms, conj_chain, permuted] = detail::shape_pair_graphs(st);

  SECTION("the shipped graph fixtures are the shape pair") {
    const ParsedGraph pa = parse_graph_file(kData + "/two_atoms.pg");
    REQUIRE_FALSE(pa.ground.has_value());
    REQUIRE(print_graph(pa.graph) == print_graph(two_atoms));
    REQUIRE(print_graph(parse_graph_file(kData + "/conj_chain.pg").graph) ==
            print_graph(conj_chain));
    REQUIRE(print_graph(parse_graph_file(kData + "/permuted.pg").graph) ==
            print_graph(permuted));
    REQUIRE_THROWS_WITH(as_grounded(pa),
                        Catch::Matchers::ContainsSubstring(
                            "the graph file has no ground: line but a grounded graph is required"));
  }

  SECTION("the golden ungrounded stanza") {
    REQUIRE(print_graph(two_atoms) ==
            "graph {\n"
            "  symbols: p q;\n"
            "  nodes: n1 = \"p\", n2 = \"q\";\n"
            "  edges: n1 < n2;\n"
            "}\n");
    REQUIRE(print_graph(PGraph(st, {})) == "graph {\n  symbols: p q;\n}\n");
  }

  SECTION("the golden grounded stanza, read back as grounded") {
    const GroundedPGraph g = as_grounded(parse_graph_file(kData + "/grounded_two.pg"));
    REQUIRE(print_grounded_graph(g) ==
            "graph {\n"
            "  symbols: p q;\n"
            "  ground: \"T\";\n"
            "  nodes: n1 = \"p\", n2 = \"q\";\n"
            "  edges: n1 < n2;\n"
            "}\n");
    REQUIRE(grounded_induce(g).worlds() == std::vector<Valuation>{3, 2, 1, 0});
    const GroundedPGraph again = as_grounded(parse_graph(print_grounded_graph(g)));
    REQUIRE(again.ground_fingerprint() == g.ground_fingerprint());
    REQUIRE(graphs_match(again.graph(), g.graph()));
    REQUIRE(print_grounded_graph(again) == print_grounded_graph(g));
  }

  SECTION("printed edges are sorted and deduplicated") {
    const PropFormula p = PropFormula::atom("p");
    const PropFormula q = PropFormula::atom("q");
    const PGraph g(st, {p, q, p}, {{1, 2}, {0, 1}, {1, 2}});
    REQUIRE(print_graph(g) ==
            "graph {\n"
            "  symbols: p q;\n"
            "  nodes: n1 = \"p\", n2 = \"q\", n3 = \"p\";\n"
            "  edges: n1 < n2, n2 < n3;\n"
            "}\n");
    REQUIRE(print_graph(parse_graph(print_graph(g)).graph) == print_graph(g));
  }
}

TEST_CASE("witnesses, reports, verdicts, and criterion lines render to goldens") {
  const SymbolTable st({"p", "q"});
  const auto [two_atoms, conj_chain, permuted] = detail::shape_pair_graphs(st);
  (void)conj_chain;
  (void)permuted;

  SECTION("witness fields: strings inline, formulas quoted, stanzas indented") {
    Witness w;
    w.push_back({"note", std::string("all quiet")});
    w.push_back({"formula", parse_prop("~p", st)});
    w.push_back({"model", PreferenceModel(st, {3})});
    w.push_back({"graph", two_atoms});
    REQUIRE(print_witness(w) ==
            "WITNESS {\n"
            "  note: all quiet;\n"
            "  formula: \"~p\";\n"
            "  model: model {\n"
            "    symbols: p q;\n"
            "    worlds: 11;\n"
            "  };\n"
            "  graph: graph {\n"
            "    symbols: p q;\n"
            "    nodes: n1 = \"p\", n2 = \"q\";\n"
            "    edges: n1 < n2;\n"
            "  };\n"
            "}\n");
  }

  SECTION("grounded graphs and modal formulas in witnesses") {
    const GroundedPGraph g = as_grounded(parse_graph_file(kData + "/grounded_two.pg"));
    Witness w;
    w.push_back({"rewritten graph", g});
    w.push_back({"xi", ModalFormula::atom("p")});
    REQUIRE(print_witness(w) ==
            "WITNESS {\n"
            "  rewritten graph: graph {\n"
            "    symbols: p q;\n"
            "    ground: \"T\";\n"
            "    nodes: n1 = \"p\", n2 = \"q\";\n"
            "    edges: n1 < n2;\n"
            "  };\n"
            "  xi: \"p\";\n"
            "}\n");
  }

  SECTION("postulate reports, with and without a witness") {
    const PreferenceModel m = chain_model(st);
    const PropFormula phi = parse_prop("~p", st);
    REQUIRE(print_report(check_faith(m, phi, natural_revision(m, phi))) ==
            "POSTULATE faith HOLDS instances=1\n");
    REQUIRE(print_report(check_faith(m, phi, m)) ==
            "POSTULATE faith FAILS instances=1\n"
            "WITNESS {\n"
            "  formula: \"~p\";\n"
            "  minima: 01 vs 11;\n"
            "}\n");
  }

  SECTION("labelled verdicts and criterion lines") {
    REQUIRE(print_verdict("induction", InductionVerdict{true, 42, std::nullopt}) ==
            "induction HOLDS instances=42\n");
    InductionVerdict v{false, 7, Witness{{"note", std::string("x")}}};
    REQUIRE(print_verdict("sweep", v) ==
            "sweep FAILS instances=7\nWITNESS {\n  note: x;\n}\n");
    REQUIRE(print_criterion(CriterionResult{3, "mu-minimal-worlds", true, 196384}) ==
            "CRITERION 3 mu-minimal-worlds PASS checked=196384\n");
    REQUIRE(print_criterion(CriterionResult{9, "determinism", false, 2}) ==
            "CRITERION 9 determinism FAIL checked=2\n");
  }
}

TEST_CASE("transformation files wire up the named rule") {
  const SymbolTable st({"p", "q"});

  SECTION("prepend-mu yields the built-in revision rewriting under the file's name") {
    const GraphTransformation t = parse_transform_file(kData + "/prepend.pt");
    REQUIRE(t.name == "graph-revision");
    REQUIRE(t.grounded);
    const GroundedPGraph g = as_grounded(parse_graph_file(kData + "/grounded_two.pg"));
    const PropFormula psi = parse_prop("~p", st);
    REQUIRE(print_grounded_graph(t.apply_grounded(g, psi)) ==
            print_grounded_graph(natural_revision_graph(g, psi)));
  }

  SECTION("the shipped case table rewrites the shape pair as advertised") {
    const GraphTransformation t = parse_transform_file(kData + "/shape_table.pt");
    REQUIRE(t.name == "shape-pair-table");
    REQUIRE_FALSE(t.grounded);
    REQUIRE(t.extra_plain.size() == 4);
    const auto [two_atoms, conj_chain, permuted] = detail::shape_pair_graphs(st);
    const PropFormula top = PropFormula::top();
    REQUIRE(print_graph(t.apply_plain(conj_chain, top)) == print_graph(permuted));
    REQUIRE(print_graph(t.apply_plain(two_atoms, top)) == print_graph(two_atoms));
    // The permuted chain matches no case and passes through untouched.
    REQUIRE(print_graph(t.apply_plain(permuted, top)) == print_graph(permuted));
  }
}

TEST_CASE("transformation files: failure modes, from a scratch directory") {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "prefdl_io_cases";
  fs::remove_all(dir);
  fs::create_directories(dir);
  auto put = [&](const std::string& name, const std::string& text) {
    std::ofstream out(dir / name);
    out << text;
    REQUIRE(out.good());
    return (dir / name).string();
  };
  const std::string plain_pg =
      "graph { symbols: p q; nodes: n1 = \"q\"; }";
  const std::string grounded_p_pg =
      "graph { symbols: p q; ground: \"p\"; nodes: n1 = \"q\"; }";
  put("plain.pg", plain_pg);
  put("grounded_p.pg", grounded_p_pg);
  put("grounded_q.pg", "graph { symbols: p q; ground: \"q\"; nodes: n1 = \"q\"; }");
  put("grounded_p_out.pg", "graph { symbols: p q; ground: \"p\"; nodes: n1 = \"q & q\"; }");
  put("other_symbols.pg", "graph { symbols: a b; nodes: n1 = \"a\"; }");

  SECTION("a plain table refuses grounded cases") {
    const std::string path = put("t.pt",
                                 "transform { name: t; kind: plain; rule: table {\n"
                                 "  grounded_p.pg -> grounded_p.pg;\n"
                                 "}; }");
    REQUIRE_THROWS_WITH(parse_transform_file(path),
                        Catch::Matchers::ContainsSubstring(
                            "a plain table case must not have a ground: line"));
  }

  SECTION("a grounded table requires ground lines and a stable grounding") {
    const std::string missing = put("t.pt",
                                    "transform { name: t; kind: grounded; rule: table {\n"
                                    "  plain.pg -> plain.pg;\n"
                                    "}; }");
    REQUIRE_THROWS_WITH(parse_transform_file(missing),
                        Catch::Matchers::ContainsSubstring("has no ground: line"));
    const std::string reground = put("t2.pt",
                                     "transform { name: t; kind: grounded; rule: table {\n"
                                     "  grounded_p.pg -> grounded_q.pg;\n"
                                     "}; }");
    REQUIRE_THROWS_WITH(parse_transform_file(reground),
                        Catch::Matchers::ContainsSubstring("changes the grounding"));
    const std::string ok = put("t3.pt",
                               "transform { name: t; kind: grounded; rule: table {\n"
                               "  grounded_p.pg -> grounded_p_out.pg;\n"
                               "}; }");
    const GraphTransformation t = parse_transform_file(ok);
    const GroundedPGraph in = as_grounded(parse_graph(grounded_p_pg));
    REQUIRE(t.apply_grounded(in, PropFormula::top()).graph().nodes()[0].to_string() == "q & q");
  }

  SECTION("all case graphs must share one symbol table") {
    const std::string path = put("t.pt",
                                 "transform { name: t; kind: plain; rule: table {\n"
                                 "  plain.pg -> other_symbols.pg;\n"
                                 "}; }");
    REQUIRE_THROWS_WITH(parse_transform_file(path),
                        Catch::Matchers::ContainsSubstring(
                            "table case graphs must all use the same symbol table"));
  }

  SECTION("kind and rule are validated with offsets") {
    REQUIRE_THROWS_WITH(
        parse_transform("transform { name: t; kind: sideways; rule: prepend-mu; }", dir),
        Catch::Matchers::ContainsSubstring("kind must be 'grounded' or 'plain'"));
    REQUIRE_THROWS_WITH(
        parse_transform("transform { name: t; kind: plain; rule: prepend-mu; }", dir),
        Catch::Matchers::ContainsSubstring("rule prepend-mu requires kind: grounded"));
    REQUIRE_THROWS_WITH(
        parse_transform("transform { name: t; kind: plain; rule: shuffle; }", dir),
        Catch::Matchers::ContainsSubstring("rule must be 'prepend-mu' or 'table'"));
  }

  SECTION("an empty table is the identity rewriting") {
    const std::string path =
        put("t.pt", "transform { name: noop; kind: plain; rule: table { }; }");
    const GraphTransformation t = parse_transform_file(path);
    const PGraph g = parse_graph(plain_pg).graph;
    REQUIRE(print_graph(t.apply_plain(g, PropFormula::top())) == print_graph(g));
  }

  SECTION("missing files are reported by path") {
    const std::string path = put("t.pt",
                                 "transform { name: t; kind: plain; rule: table {\n"
                                 "  nope.pg -> nope.pg;\n"
                                 "}; }");
    REQUIRE_THROWS_WITH(parse_transform_file(path),
                        Catch::Matchers::ContainsSubstring("cannot read file: "));
    REQUIRE_THROWS_WITH(read_file((dir / "absent.bin").string()),
                        Catch::Matchers::ContainsSubstring("cannot read file: "));
  }
}
