#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "prefdl/bitset.hpp"
#include "prefdl/enumerate.hpp"
#include "prefdl/errors.hpp"
#include "prefdl/formula.hpp"
#include "prefdl/model.hpp"
#include "prefdl/pgraph.hpp"
#include "prefdl/semantics.hpp"
#include "prefdl/symbols.hpp"
#include "prefdl/witness.hpp"

namespace prefdl {

// A named model transformer. Operators may only reorder: they never add,
// drop, or revalue worlds (enforced post hoc by apply_operator).
struct DynamicOperator {
  std::string name;
  std::function<PreferenceModel(const PreferenceModel&, const PropFormula&)> apply;
};

// Revision that promotes the most plausible phi-worlds to a single bottom
// cluster and leaves every other pair exactly as it was. Revising by a
// formula holding at no world of the model is an error, not a no-op: with
// nothing to promote, the promoted-set postulate would be unsatisfiable.
inline PreferenceModel natural_revision(const PreferenceModel& m, const PropFormula& phi) {
  const Bitset sat = m.positions_satisfying(fingerprint(phi, m.symbols()));
  if (sat.none()) {
    throw DomainError("vacuous revision: no world of the model satisfies \"" + phi.to_string() +
                      "\"");
  }
  const Bitset b = min_positions(m, sat);
  PreferenceModel r = m;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = 0; j < m.size(); ++j) {
      r.set_rel(i, j, b.test(i) || (!b.test(j) && m.rel(i, j)));
    }
  }
  return r;
}

inline DynamicOperator natural_operator() {
  return {"natural",
          [](const PreferenceModel& m, const PropFormula& phi) { return natural_revision(m, phi); }};
}

inline DynamicOperator identity_operator() {
  return {"identity", [](const PreferenceModel& m, const PropFormula&) { return m; }};
}

// Deliberately over-eager mutant of natural revision: promotes every
// phi-world, not just the most plausible ones. Kept as a built-in because the
// axiom-suite checks use it as a should-fail probe.
inline DynamicOperator promote_all_operator() {
  return {"promote-all", [](const PreferenceModel& m, const PropFormula& phi) {
            const Bitset s = m.positions_satisfying(fingerprint(phi, m.symbols()));
            PreferenceModel r = m;
            for (std::size_t i = 0; i < m.size(); ++i) {
              for (std::size_t j = 0; j < m.size(); ++j) {
                r.set_rel(i, j, s.test(i) || (!s.test(j) && m.rel(i, j)));
              }
            }
            return r;
          }};
}

class OperatorRegistry {
public:
  OperatorRegistry() {
    add(natural_operator());
    add(identity_operator());
    add(promote_all_operator());
  }

  // Registry holding a single operator (no built-ins); used when a check
  // must run against exactly one operator under its own name.
  explicit OperatorRegistry(DynamicOperator only) { add(std::move(only)); }

  void add(DynamicOperator op) {
    if (ops_.count(op.name)) throw DomainError("operator \"" + op.name + "\" already registered");
    ops_.emplace(op.name, std::move(op));
  }

  const DynamicOperator* find(const std::string& name) const {
    const auto it = ops_.find(name);
    return it == ops_.end() ? nullptr : &it->second;
  }

  std::vector<std::string> names() const {
    std::vector<std::string> out;
    out.reserve(ops_.size());
    for (const auto& [k, v] : ops_) out.push_back(k);
    return out;
  }

private:
  std::map<std::string, DynamicOperator> ops_;
};

// Applies one operator and enforces the operator contract on the result:
// worlds and valuation untouched, relation still a preorder.
inline PreferenceModel apply_checked(const DynamicOperator& op, const PreferenceModel& m,
                                     const PropFormula& phi) {
  PreferenceModel out = op.apply(m, phi);
  if (!(out.symbols() == m.symbols()) || !out.same_worlds(m)) {
    throw DomainError("operator \"" + op.name + "\" changed the world set");
  }
  if (const ValidationResult v = validate_model(out); !v.ok) {
    throw DomainError("operator \"" + op.name + "\" produced an invalid model: " + v.message);
  }
  return out;
}

// Dispatches to a registered operator by name, with the same contract checks.
inline PreferenceModel apply_operator(const OperatorRegistry& reg, const std::string& name,
                                      const PreferenceModel& m, const PropFormula& phi) {
  const DynamicOperator* op = reg.find(name);
  if (op == nullptr) throw DomainError("unknown operator \"" + name + "\"");
  return apply_checked(*op, m, phi);
}

// The graph-level counterpart of natural revision. The revised graph keeps
// the grounding, adds the best-psi-worlds formula mu(g, psi) as the unique
// top-priority node, and weakens every original node xi to (xi | mu) with the
// original priorities mirrored. The weakening is what makes the promoted
// worlds one mutual cluster in the induced order: a mu-world satisfies every
// node, so nothing separates two mu-worlds. Keeping the original nodes
// unweakened would leave formerly-incomparable promoted worlds incomparable,
// which the model-level operator does not do.
inline GroundedPGraph natural_revision_graph(const GroundedPGraph& g, const PropFormula& psi) {
  const SymbolTable& st = g.symbols();
  if ((g.ground_fingerprint() & fingerprint(psi, st)).none()) {
    throw DomainError("revision formula \"" + psi.to_string() +
                      "\" is inconsistent with the grounding");
  }
  const PropFormula m = mu(g, psi);
  const std::size_t k = g.graph().node_count();
  std::vector<PropFormula> nodes;
  nodes.reserve(k + 1);
  nodes.push_back(m);
  for (const PropFormula& xi : g.graph().nodes()) nodes.push_back(PropFormula::disj(xi, m));
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  edges.reserve(k + g.graph().edges().size());
  for (std::size_t i = 0; i < k; ++i) edges.emplace_back(0, i + 1);
  for (const auto& [a, b] : g.graph().edges()) edges.emplace_back(a + 1, b + 1);
  return GroundedPGraph(g.ground(), PGraph(st, std::move(nodes), std::move(edges)));
}

// Literal prepend: mu(g, psi) added below the original nodes, which are kept
// verbatim. Induces the same minima as natural_revision_graph but may leave
// promoted worlds mutually incomparable; kept as the reference object for the
// structural condition cross-checks.
inline GroundedPGraph prepend_mu_graph(const GroundedPGraph& g, const PropFormula& psi) {
  const SymbolTable& st = g.symbols();
  if ((g.ground_fingerprint() & fingerprint(psi, st)).none()) {
    throw DomainError("revision formula \"" + psi.to_string() +
                      "\" is inconsistent with the grounding");
  }
  std::vector<PropFormula> nodes;
  nodes.reserve(g.graph().node_count() + 1);
  nodes.push_back(mu(g, psi));
  for (const PropFormula& xi : g.graph().nodes()) nodes.push_back(xi);
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t i = 0; i < g.graph().node_count(); ++i) edges.emplace_back(0, i + 1);
  for (const auto& [a, b] : g.graph().edges()) edges.emplace_back(a + 1, b + 1);
  return GroundedPGraph(g.ground(), PGraph(st, std::move(nodes), std::move(edges)));
}

// A named graph rewriter of one of the two graph kinds. Grounded rewriters
// must preserve the grounding formula's extension. Table-based rewriters
// carry their case-list inputs so sweeps can add them to the candidate pool.
struct GraphTransformation {
  std::string name;
  bool grounded = false;
  std::function<PGraph(const PGraph&, const PropFormula&)> apply_plain;
  std::function<GroundedPGraph(const GroundedPGraph&, const PropFormula&)> apply_grounded;
  std::vector<PGraph> extra_plain;
  std::vector<GroundedPGraph> extra_grounded;
};

inline GraphTransformation revision_graph_transformation() {
  GraphTransformation t;
  t.name = "natural-revision";
  t.grounded = true;
  t.apply_grounded = [](const GroundedPGraph& g, const PropFormula& psi) {
    return natural_revision_graph(g, psi);
  };
  return t;
}

inline GraphTransformation identity_transformation(bool grounded) {
  GraphTransformation t;
  t.name = "identity";
  t.grounded = grounded;
  t.apply_plain = [](const PGraph& g, const PropFormula&) { return g; };
  t.apply_grounded = [](const GroundedPGraph& g, const PropFormula&) { return g; };
  return t;
}

// Structural match used by table rewriters: same symbols, same node count,
// per-position node extensions, and the same priority order.
inline bool graphs_match(const PGraph& a, const PGraph& b) {
  if (!(a.symbols() == b.symbols()) || a.node_count() != b.node_count()) return false;
  for (std::size_t i = 0; i < a.node_count(); ++i) {
    if (!(a.node_fingerprint(i) == b.node_fingerprint(i))) return false;
  }
  return a.same_closure(b);
}

// A rewriter given by an explicit case list; inputs not matching any case are
// returned unchanged. The revision formula plays no role in case selection.
inline GraphTransformation make_table_transformation(
    std::string name, std::vector<std::pair<PGraph, PGraph>> cases) {
  GraphTransformation t;
  t.name = std::move(name);
  t.grounded = false;
  for (const auto& [in, out] : cases) {
    t.extra_plain.push_back(in);
    t.extra_plain.push_back(out);
  }
  auto table = std::make_shared<std::vector<std::pair<PGraph, PGraph>>>(std::move(cases));
  t.apply_plain = [table](const PGraph& g, const PropFormula&) {
    for (const auto& [in, out] : *table) {
      if (graphs_match(g, in)) return out;
    }
    return g;
  };
  return t;
}

inline GraphTransformation make_grounded_table_transformation(
    std::string name, std::vector<std::pair<GroundedPGraph, GroundedPGraph>> cases) {
  for (const auto& [in, out] : cases) {
    if (!(in.ground_fingerprint() == out.ground_fingerprint())) {
      throw DomainError("grounded table case changes the grounding");
    }
  }
  GraphTransformation t;
  t.name = std::move(name);
  t.grounded = true;
  for (const auto& [in, out] : cases) {
    t.extra_grounded.push_back(in);
    t.extra_grounded.push_back(out);
  }
  auto table =
      std::make_shared<std::vector<std::pair<GroundedPGraph, GroundedPGraph>>>(std::move(cases));
  t.apply_grounded = [table](const GroundedPGraph& g, const PropFormula&) {
    for (const auto& [in, out] : *table) {
      if (g.ground_fingerprint() == in.ground_fingerprint() && graphs_match(g.graph(), in.graph())) {
        return out;
      }
    }
    return g;
  };
  return t;
}

namespace detail {

// Compact comparable signature of a model's relation: the per-world
// lower-set bitsets.
inline std::vector<Bitset> relation_signature(const PreferenceModel& m) {
  std::vector<Bitset> sig;
  sig.reserve(m.size());
  for (std::size_t j = 0; j < m.size(); ++j) sig.push_back(m.below(j));
  return sig;
}

// One representative formula per semantic class over the full valuation
// space, in class-bitmask order (index 0 is the inconsistent class).
inline std::vector<PropFormula> class_formulas(const SymbolTable& st) {
  if (st.world_count() >= 63) throw DomainError("semantic class space too large to enumerate");
  const std::size_t classes = std::size_t{1} << st.world_count();
  std::vector<PropFormula> cls;
  cls.reserve(classes);
  for (std::size_t mask = 0; mask < classes; ++mask) {
    Bitset fp(st.world_count());
    for (std::size_t v = 0; v < st.world_count(); ++v) {
      if (mask & (std::size_t{1} << v)) fp.set(v);
    }
    cls.push_back(class_formula(fp, st));
  }
  return cls;
}

// The empty graph, all one-node graphs over the semantic classes, and every
// edge configuration of two-node graphs over class pairs.
inline std::vector<PGraph> small_graphs(const SymbolTable& st) {
  const std::vector<PropFormula> cls = class_formulas(st);
  std::vector<PGraph> out;
  out.emplace_back(st, std::vector<PropFormula>{});
  for (const PropFormula& a : cls) out.emplace_back(st, std::vector<PropFormula>{a});
  using Edges = std::vector<std::pair<std::size_t, std::size_t>>;
  for (const PropFormula& a : cls) {
    for (const PropFormula& b : cls) {
      const std::vector<PropFormula> two{a, b};
      out.emplace_back(st, two, Edges{});
      out.emplace_back(st, two, Edges{{0, 1}});
      out.emplace_back(st, two, Edges{{1, 0}});
    }
  }
  return out;
}

} // namespace detail

// Candidate pool for the bounded sweeps: the canonical graph of every model,
// plus all small graphs (empty, one-node, two-node) over the semantic
// classes.
inline std::vector<PGraph> plain_graph_pool(const SymbolTable& st,
                                            int cap = kDefaultExhaustiveCap) {
  std::vector<PGraph> pool;
  for (const PreferenceModel& m : enumerate_models(st, cap)) pool.push_back(canonical_graph(m));
  for (PGraph& g : detail::small_graphs(st)) pool.push_back(std::move(g));
  return pool;
}

// Grounded pool: every model's canonical graph grounded by that model's
// characteristic formula, plus every small plain graph under every consistent
// class grounding.
inline std::vector<GroundedPGraph> grounded_graph_pool(const SymbolTable& st,
                                                       int cap = kDefaultExhaustiveCap) {
  std::vector<GroundedPGraph> pool;
  for (const PreferenceModel& m : enumerate_models(st, cap)) {
    pool.emplace_back(model_formula(m.worlds(), st), canonical_graph(m));
  }
  const std::vector<PropFormula> cls = detail::class_formulas(st);
  const std::vector<PGraph> small = detail::small_graphs(st);
  for (std::size_t mask = 1; mask < cls.size(); ++mask) {
    for (const PGraph& g : small) pool.emplace_back(cls[mask], g);
  }
  return pool;
}

struct InductionVerdict {
  bool holds = true;
  std::size_t instances = 0;
  std::optional<Witness> witness;
};

// Checks that the rewriter t matches the operator s everywhere: whenever a
// pooled graph induces a model, the rewritten graph must induce the revised
// model. Grounded graphs induce exactly one model; plain graphs induce one
// model per nonempty world subset. Instances where the operator itself
// refuses the formula (e.g. no world satisfies it) are skipped; instances
// where only the rewriter refuses are failures.
inline InductionVerdict induction_check(const GraphTransformation& t, const DynamicOperator& s,
                                        const SymbolTable& st, int cap = kDefaultExhaustiveCap) {
  InductionVerdict v;
  const std::vector<PropFormula> cls = detail::class_formulas(st);
  auto fail = [&](Witness w) {
    v.holds = false;
    v.witness = std::move(w);
  };
  if (t.grounded) {
    std::vector<GroundedPGraph> pool = grounded_graph_pool(st, cap);
    for (const GroundedPGraph& extra : t.extra_grounded) {
      if (!(extra.symbols() == st)) throw DomainError("pool extras use a different symbol table");
      pool.push_back(extra);
    }
    for (const GroundedPGraph& g : pool) {
      const PreferenceModel m = grounded_induce(g);
      for (const PropFormula& phi : cls) {
        ++v.instances;
        PreferenceModel revised(st, m.worlds());
        try {
          revised = s.apply(m, phi);
        } catch (const DomainError&) {
          continue; // operator refuses this formula on this model
        }
        GroundedPGraph g2 = g;
        try {
          g2 = t.apply_grounded(g, phi);
        } catch (const DomainError& e) {
          fail({{"graph", g}, {"model", m}, {"formula", phi},
                {"note", std::string("rewriter refused an instance the operator accepts: ") +
                             e.what()}});
          return v;
        }
        if (!(grounded_induce(g2) == revised)) {
          fail({{"graph", g}, {"model", m}, {"formula", phi}});
          return v;
        }
      }
    }
    return v;
  }
  std::vector<PGraph> pool = plain_graph_pool(st, cap);
  for (const PGraph& extra : t.extra_plain) {
    if (!(extra.symbols() == st)) throw DomainError("pool extras use a different symbol table");
    pool.push_back(extra);
  }
  const std::size_t space = st.world_count();
  for (const PGraph& g : pool) {
    for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << space); ++mask) {
      Bitset ws(space);
      for (std::size_t w = 0; w < space; ++w) {
        if (mask & (std::uint64_t{1} << w)) ws.set(w);
      }
      const PreferenceModel m = induced_order(g, worlds_of(ws));
      for (const PropFormula& phi : cls) {
        ++v.instances;
        PreferenceModel revised(st, m.worlds());
        try {
          revised = s.apply(m, phi);
        } catch (const DomainError&) {
          continue;
        }
        PGraph g2 = g;
        try {
          g2 = t.apply_plain(g, phi);
        } catch (const DomainError& e) {
          fail({{"graph", g}, {"model", m}, {"formula", phi},
                {"note", std::string("rewriter refused an instance the operator accepts: ") +
                             e.what()}});
          return v;
        }
        if (!induces(g2, revised)) {
          fail({{"graph", g}, {"model", m}, {"formula", phi}});
          return v;
        }
      }
    }
  }
  return v;
}

// Checks that the rewriter respects graph equivalence, the precondition for
// it to define any operator on models at all.
//
// Plain graphs: for every formula psi, graphs inducing the same order on the
// psi-worlds must keep doing so after rewriting by any formula phi.
//
// Grounded graphs pin their world set, so equivalence collapses: two grounded
// graphs are interchangeable exactly when they share the grounding's
// extension and induce the same model, and the requirement is that rewriting
// preserves that. The relative-formula quantifier would be vacuous here:
// rewritten orders legitimately differ outside the grounding, and inside it
// they are compared in full.
inline InductionVerdict relevance_check(const GraphTransformation& t, const SymbolTable& st,
                                        int cap = kDefaultExhaustiveCap) {
  InductionVerdict v;
  const std::vector<PropFormula> cls = detail::class_formulas(st);
  const std::size_t classes = cls.size();
  if (t.grounded) {
    std::vector<GroundedPGraph> pool = grounded_graph_pool(st, cap);
    for (const GroundedPGraph& extra : t.extra_grounded) {
      if (!(extra.symbols() == st)) throw DomainError("pool extras use a different symbol table");
      pool.push_back(extra);
    }
    // Group interchangeable graphs: same grounding extension, same model.
    std::map<std::pair<std::string, std::string>, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      std::string rel;
      for (const Bitset& row : detail::relation_signature(grounded_induce(pool[i]))) {
        rel += row.to_string();
        rel += '/';
      }
      groups[{pool[i].ground_fingerprint().to_string(), rel}].push_back(i);
    }
    for (std::size_t c = 0; c < classes; ++c) {
      for (const auto& [key, members] : groups) {
        if (members.size() < 2) continue;
        if ((pool[members[0]].ground_fingerprint() & fingerprint(cls[c], st)).none()) {
          continue; // rewriting by this formula is inapplicable for the whole group
        }
        std::optional<std::vector<Bitset>> head;
        for (std::size_t idx : members) {
          ++v.instances;
          const std::vector<Bitset> sig =
              detail::relation_signature(grounded_induce(t.apply_grounded(pool[idx], cls[c])));
          if (!head) {
            head = sig;
          } else if (!(*head == sig)) {
            v.holds = false;
            v.witness = Witness{{"graph 1", pool[members[0]]},
                                {"graph 2", pool[idx]},
                                {"formula", cls[c]}};
            return v;
          }
        }
      }
    }
    return v;
  }
  std::vector<PGraph> pool = plain_graph_pool(st, cap);
  for (const PGraph& extra : t.extra_plain) {
    if (!(extra.symbols() == st)) throw DomainError("pool extras use a different symbol table");
    pool.push_back(extra);
  }
  const std::size_t space = st.world_count();
  // sig[i][mask]: relation of pool[i]'s induced order on world set `mask`.
  auto signatures = [&](const PGraph& g) {
    std::vector<std::vector<Bitset>> per_mask(classes);
    for (std::uint64_t mask = 1; mask < classes; ++mask) {
      Bitset ws(space);
      for (std::size_t w = 0; w < space; ++w) {
        if (mask & (std::uint64_t{1} << w)) ws.set(w);
      }
      per_mask[mask] = detail::relation_signature(induced_order(g, worlds_of(ws)));
    }
    return per_mask;
  };
  std::vector<std::vector<std::vector<Bitset>>> in_sig;
  in_sig.reserve(pool.size());
  for (const PGraph& g : pool) in_sig.push_back(signatures(g));
  // out_sig[i][c]: signatures of t(pool[i], cls[c]).
  std::vector<std::vector<std::vector<std::vector<Bitset>>>> out_sig(pool.size());
  for (std::size_t i = 0; i < pool.size(); ++i) {
    out_sig[i].reserve(classes);
    for (std::size_t c = 0; c < classes; ++c) {
      out_sig[i].push_back(signatures(t.apply_plain(pool[i], cls[c])));
    }
  }
  for (std::uint64_t psi = 1; psi < classes; ++psi) {
    // Group pool members by their order on the psi-worlds.
    std::map<std::string, std::vector<std::size_t>> groups;
    for (std::size_t i = 0; i < pool.size(); ++i) {
      std::string key;
      for (const Bitset& row : in_sig[i][psi]) {
        key += row.to_string();
        key += '/';
      }
      groups[key].push_back(i);
    }
    for (std::size_t c = 0; c < classes; ++c) {
      for (const auto& [key, members] : groups) {
        if (members.size() < 2) continue;
        const std::vector<Bitset>& head = out_sig[members[0]][c][psi];
        for (std::size_t k = 0; k < members.size(); ++k) {
          ++v.instances;
          if (!(out_sig[members[k]][c][psi] == head)) {
            v.holds = false;
            v.witness = Witness{{"graph 1", pool[members[0]]},
                                {"graph 2", pool[members[k]]},
                                {"formula", cls[psi]},
                                {"rewriting formula", cls[c]}};
            return v;
          }
        }
      }
    }
  }
  return v;
}

// Lifts a graph rewriter to a model operator along canonical graphs: revise
// the canonical graph of the model (grounded by the model's characteristic
// formula when the rewriter is grounded) and take the order the result
// induces on the model's worlds. For relevant rewriters this is exactly the
// operator they induce.
inline DynamicOperator operator_from_transformation(const GraphTransformation& t) {
  if (t.grounded) {
    return {t.name, [t](const PreferenceModel& m, const PropFormula& phi) {
              const GroundedPGraph g(model_formula(m.worlds(), m.symbols()), canonical_graph(m));
              return grounded_induce(t.apply_grounded(g, phi));
            }};
  }
  return {t.name, [t](const PreferenceModel& m, const PropFormula& phi) {
            return induced_order(t.apply_plain(canonical_graph(m), phi), m.worlds());
          }};
}

} // namespace prefdl
