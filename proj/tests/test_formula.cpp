// Propositional and modal syntax: construction, printing, parsing, and the
// valuation-space fingerprints. The semantic checks compare fingerprints
// against an independent truth-table evaluator that walks the syntax tree
// directly, one valuation at a time.

#include <catch2/catch_amalgamated.hpp>

#include <random>
#include <string>
#include <vector>

#include "prefdl/prefdl.hpp"

using namespace prefdl;

namespace {

// Independent reference semantics: direct structural recursion at a single
// valuation. Shares nothing with fingerprint() except the bit convention of
// world_sats (symbol 0 = most significant of the n low bits).
bool truth_table_sat(const PropFormula& f, const SymbolTable& st, Valuation w) {
  switch (f.kind()) {
    case PropKind::Atom: {
      const auto idx = st.index_of(f.atom_name());
      REQUIRE(idx.has_value());
      return world_sats(w, *idx, st.size());
    }
    case PropKind::Top: return true;
    case PropKind::Bottom: return false;
    case PropKind::Not: return !truth_table_sat(f.lhs(), st, w);
    case PropKind::And:
      return truth_table_sat(f.lhs(), st, w) && truth_table_sat(f.rhs(), st, w);
    case PropKind::Or:
      return truth_table_sat(f.lhs(), st, w) || truth_table_sat(f.rhs(), st, w);
    case PropKind::Implies:
      return !truth_table_sat(f.lhs(), st, w) || truth_table_sat(f.rhs(), st, w);
    case PropKind::Iff:
      return truth_table_sat(f.lhs(), st, w) == truth_table_sat(f.rhs(), st, w);
  }
  FAIL("unreachable formula kind");
  return false;
}

PropFormula random_prop(std::mt19937& rng, const SymbolTable& st, int depth) {
  const int pick = depth <= 0 ? static_cast<int>(rng() % 3) : static_cast<int>(rng() % 8);
  switch (pick) {
    case 0: return PropFormula::atom(st.names()[rng() % st.size()]);
    case 1: return PropFormula::top();
    case 2: return PropFormula::bottom();
    case 3: return PropFormula::neg(random_prop(rng, st, depth - 1));
    case 4:
      return PropFormula::conj(random_prop(rng, st, depth - 1), random_prop(rng, st, depth - 1));
    case 5:
      return PropFormula::disj(random_prop(rng, st, depth - 1), random_prop(rng, st, depth - 1));
    case 6:
      return PropFormula::implies(random_prop(rng, st, depth - 1),
                                  random_prop(rng, st, depth - 1));
    default:
      return PropFormula::iff(random_prop(rng, st, depth - 1), random_prop(rng, st, depth - 1));
  }
}

ModalFormula random_modal(std::mt19937& rng, const SymbolTable& st, int depth) {
  const int pick = depth <= 0 ? static_cast<int>(rng() % 3) : static_cast<int>(rng() % 16);
  switch (pick) {
    case 0: return ModalFormula::atom(st.names()[rng() % st.size()]);
    case 1: return ModalFormula::top();
    case 2: return ModalFormula::bottom();
    case 3: return ModalFormula::neg(random_modal(rng, st, depth - 1));
    case 4:
      return ModalFormula::conj(random_modal(rng, st, depth - 1),
                                random_modal(rng, st, depth - 1));
    case 5:
      return ModalFormula::disj(random_modal(rng, st, depth - 1),
                                random_modal(rng, st, depth - 1));
    case 6:
      return ModalFormula::implies(random_modal(rng, st, depth - 1),
                                   random_modal(rng, st, depth - 1));
    case 7:
      return ModalFormula::iff(random_modal(rng, st, depth - 1),
                               random_modal(rng, st, depth - 1));
    case 8: return ModalFormula::univ(random_modal(rng, st, depth - 1));
    case 9: return ModalFormula::exist(random_modal(rng, st, depth - 1));
    case 10: return ModalFormula::box_leq(random_modal(rng, st, depth - 1));
    case 11: return ModalFormula::dia_leq(random_modal(rng, st, depth - 1));
    case 12: return ModalFormula::box_lt(random_modal(rng, st, depth - 1));
    case 13: return ModalFormula::dia_lt(random_modal(rng, st, depth - 1));
    case 14: return ModalFormula::mu(random_modal(rng, st, depth - 1));
    default:
      return ModalFormula::dyn(rng() % 2 == 0 ? "natural" : "identity",
                               random_prop(rng, st, 2), random_modal(rng, st, depth - 1));
  }
}

} // namespace

TEST_CASE("fingerprints agree with direct truth-table evaluation") {
  const SymbolTable st({"p", "q", "r"});
  std::mt19937 rng(813201);
  for (int trial = 0; trial < 400; ++trial) {
    const PropFormula f = random_prop(rng, st, 5);
    const Bitset fp = fingerprint(f, st);
    REQUIRE(fp.size() == st.world_count());
    for (Valuation w = 0; w < st.world_count(); ++w) {
      INFO("formula: " << f.to_string() << " world: " << world_name(w, st.size()));
      REQUIRE(fp.test(w) == truth_table_sat(f, st, w));
    }
  }
}

TEST_CASE("semantic helpers follow the fingerprints") {
  const SymbolTable st({"p", "q"});
  const PropFormula p = PropFormula::atom("p");
  const PropFormula q = PropFormula::atom("q");

  SECTION("bit conventions: valuation index is the world's binary name") {
    // Valuation 2 over {p, q} is "10": p true, q false.
    REQUIRE(world_name(2, 2) == "10");
    REQUIRE(parse_world_name("10", 2) == 2);
    REQUIRE(world_sats(2, 0, 2));
    REQUIRE_FALSE(world_sats(2, 1, 2));
    // Fingerprint bit i is valuation i; to_string lists bit 0 leftmost.
    REQUIRE(fingerprint(p, st).to_string() == "0011");
    REQUIRE(fingerprint(q, st).to_string() == "0101");
    REQUIRE(atom_fingerprint(0, st) == fingerprint(p, st));
    REQUIRE(fingerprint(PropFormula::top(), st).to_string() == "1111");
    REQUIRE(fingerprint(PropFormula::bottom(), st).to_string() == "0000");
  }

  SECTION("equivalence, entailment, consistency") {
    const PropFormula imp = PropFormula::implies(p, q);
    const PropFormula dis = PropFormula::disj(PropFormula::neg(p), q);
    REQUIRE(equivalent(imp, dis, st));
    REQUIRE_FALSE(equivalent(p, q, st));
    REQUIRE(entails(PropFormula::conj(p, q), p, st));
    REQUIRE_FALSE(entails(p, PropFormula::conj(p, q), st));
    REQUIRE(is_consistent(p, st));
    REQUIRE_FALSE(is_consistent(PropFormula::conj(p, PropFormula::neg(p)), st));
  }

  SECTION("world names reject wrong lengths and digits") {
    REQUIRE_THROWS_AS(parse_world_name("1", 2), DomainError);
    REQUIRE_THROWS_AS(parse_world_name("102", 3), DomainError);
  }
}

TEST_CASE("world, model, and class formulas carve out the advertised sets") {
  const SymbolTable st2({"p", "q"});
  const SymbolTable st3({"p", "q", "r"});

  SECTION("world_formula is true at exactly its world") {
    for (const SymbolTable& st : {st2, st3}) {
      for (Valuation w = 0; w < st.world_count(); ++w) {
        const Bitset fp = fingerprint(world_formula(w, st), st);
        REQUIRE(fp.count() == 1);
        REQUIRE(fp.test(w));
      }
    }
  }

  SECTION("model_formula and class_formula reproduce arbitrary sets") {
    std::mt19937 rng(52);
    for (int trial = 0; trial < 50; ++trial) {
      Bitset want(st3.world_count());
      for (std::size_t v = 0; v < st3.world_count(); ++v) {
        if (rng() % 2 == 0) want.set(v);
      }
      REQUIRE(fingerprint(class_formula(want, st3), st3) == want);
      if (want.any()) {
        REQUIRE(fingerprint(model_formula(worlds_of(want), st3), st3) == want);
        REQUIRE(fingerprint(model_formula(want, st3), st3) == want);
      }
    }
    REQUIRE(class_formula(Bitset(4), st2).kind() == PropKind::Bottom);
    REQUIRE_THROWS_AS(model_formula(std::vector<Valuation>{}, st2), DomainError);
  }

  SECTION("worlds_of lists valuations in descending order") {
    Bitset b(4);
    b.set(0);
    b.set(2);
    b.set(3);
    REQUIRE(worlds_of(b) == std::vector<Valuation>{3, 2, 0});
  }
}

TEST_CASE("printing and reparsing is the identity on syntax trees") {
  const SymbolTable st({"p", "q", "r"});
  std::mt19937 rng(990017);

  SECTION("propositional round trip") {
    for (int trial = 0; trial < 400; ++trial) {
      const PropFormula f = random_prop(rng, st, 5);
      const std::string s = f.to_string();
      INFO("printed: " << s);
      REQUIRE(parse_prop(s, st) == f);
    }
  }

  SECTION("modal round trip, dynamic modality included") {
    for (int trial = 0; trial < 400; ++trial) {
      const ModalFormula f = random_modal(rng, st, 4);
      const std::string s = f.to_string();
      INFO("printed: " << s);
      REQUIRE(parse_modal(s, st) == f);
    }
    const ModalFormula g = parse_modal("[* natural ~p] mu(~p)", st);
    REQUIRE(g.kind() == ModalKind::Dyn);
    REQUIRE(g.op_name() == "natural");
    REQUIRE(g.dyn_arg() == PropFormula::neg(PropFormula::atom("p")));
    REQUIRE(g.lhs().kind() == ModalKind::Mu);
    REQUIRE(g.to_string() == "[* natural ~p] mu(~p)");
  }
}

TEST_CASE("parsing honors precedence and associativity") {
  const SymbolTable st({"p", "q", "r"});
  const PropFormula p = PropFormula::atom("p");
  const PropFormula q = PropFormula::atom("q");
  const PropFormula r = PropFormula::atom("r");

  REQUIRE(parse_prop("p & q | r", st) == PropFormula::disj(PropFormula::conj(p, q), r));
  REQUIRE(parse_prop("p | q & r", st) == PropFormula::disj(p, PropFormula::conj(q, r)));
  REQUIRE(parse_prop("~p & q", st) == PropFormula::conj(PropFormula::neg(p), q));
  REQUIRE(parse_prop("~(p & q)", st) == PropFormula::neg(PropFormula::conj(p, q)));
  // Implication chains to the right, biconditional to the left.
  REQUIRE(parse_prop("p -> q -> r", st) == PropFormula::implies(p, PropFormula::implies(q, r)));
  REQUIRE(parse_prop("p <-> q <-> r", st) == PropFormula::iff(PropFormula::iff(p, q), r));
  // Modal operators bind tighter than any binary connective.
  const ModalFormula mp = ModalFormula::atom("p");
  const ModalFormula mq = ModalFormula::atom("q");
  REQUIRE(parse_modal("A p & q", st) == ModalFormula::conj(ModalFormula::univ(mp), mq));
  REQUIRE(parse_modal("[<=] p | <<> q", st) ==
          ModalFormula::disj(ModalFormula::box_leq(mp), ModalFormula::dia_lt(mq)));
  REQUIRE(parse_modal("~[<] p", st) == ModalFormula::neg(ModalFormula::box_lt(mp)));
  // "mu" is contextual: only an identifier directly before '(' is the operator.
  REQUIRE(parse_modal("mu(p)", st).kind() == ModalKind::Mu);
  const SymbolTable with_mu({"mu", "p"});
  REQUIRE(parse_modal("mu & p", with_mu) ==
          ModalFormula::conj(ModalFormula::atom("mu"), ModalFormula::atom("p")));
}

TEST_CASE("parse errors carry the character offset") {
  const SymbolTable st({"p", "q"});

  auto position_of = [](auto&& thunk) -> std::size_t {
    try {
      thunk();
    } catch (const ParseError& e) {
      REQUIRE(std::string(e.what()).find("at offset") != std::string::npos);
      return e.position();
    }
    FAIL("expected a parse error");
    return 0;
  };

  REQUIRE(position_of([&] { parse_prop("p &", st); }) == 3);
  REQUIRE(position_of([&] { parse_prop("p @ q", st); }) == 2);
  REQUIRE(position_of([&] { parse_prop("x", st); }) == 0);
  REQUIRE(position_of([&] { parse_prop("(p", st); }) == 2);
  REQUIRE(position_of([&] { parse_prop("p q", st); }) == 2);
  REQUIRE(position_of([&] { parse_modal("mu(p", st); }) == 4);
  REQUIRE(position_of([&] { parse_modal("[* ] p", st); }) == 3);
  // The propositional entry point rejects modal-only tokens.
  REQUIRE_THROWS_AS(parse_prop("A p", st), ParseError);
  REQUIRE_THROWS_AS(parse_prop("[<=] p", st), ParseError);
}

TEST_CASE("formula equality is syntactic, not semantic") {
  const PropFormula p = PropFormula::atom("p");
  const PropFormula q = PropFormula::atom("q");
  REQUIRE(PropFormula::conj(p, q) == PropFormula::conj(p, q));
  REQUIRE_FALSE(PropFormula::conj(p, q) == PropFormula::conj(q, p));
  REQUIRE(ModalFormula::dyn("natural", p, ModalFormula::atom("q")) ==
          ModalFormula::dyn("natural", p, ModalFormula::atom("q")));
  REQUIRE_FALSE(ModalFormula::dyn("natural", p, ModalFormula::atom("q")) ==
                ModalFormula::dyn("identity", p, ModalFormula::atom("q")));
}
