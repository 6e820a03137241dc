#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "prefdl/bitset.hpp"
#include "prefdl/errors.hpp"
#include "prefdl/formula.hpp"
#include "prefdl/model.hpp"
#include "prefdl/semantics.hpp"
#include "prefdl/symbols.hpp"

namespace prefdl {

// A priority graph: a finite list of propositional formulas with a strict
// priority order given by generator edges (the order used everywhere is the
// transitive closure of the generators; files may list covering edges only).
// Node identity is positional, so semantically or syntactically duplicate
// formulas at distinct positions are permitted.
//
// Construction does NOT require acyclicity — validate_graph reports it — but
// every order-inducing operation assumes a valid (cycle-free) graph.
class PGraph {
public:
  PGraph(SymbolTable st, std::vector<PropFormula> nodes,
         std::vector<std::pair<std::size_t, std::size_t>> edges = {})
      : st_(std::move(st)), nodes_(std::move(nodes)), edges_(std::move(edges)) {
    for (const auto& [a, b] : edges_) {
      if (a >= nodes_.size() || b >= nodes_.size()) {
        throw DomainError("priority edge endpoint out of range");
      }
    }
    fps_.reserve(nodes_.size());
    for (const PropFormula& f : nodes_) fps_.push_back(fingerprint(f, st_));
    // Transitive closure of the generator edges.
    closure_.assign(nodes_.size(), Bitset(nodes_.size()));
    for (const auto& [a, b] : edges_) closure_[a].set(b); // closure_[a] = nodes above a
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t a = 0; a < nodes_.size(); ++a) {
        Bitset next = closure_[a];
        for (std::size_t b = 0; b < nodes_.size(); ++b) {
          if (closure_[a].test(b)) next |= closure_[b];
        }
        if (!(next == closure_[a])) {
          closure_[a] = std::move(next);
          changed = true;
        }
      }
    }
  }

  const SymbolTable& symbols() const { return st_; }
  const std::vector<PropFormula>& nodes() const { return nodes_; }
  const std::vector<std::pair<std::size_t, std::size_t>>& edges() const { return edges_; }
  std::size_t node_count() const { return nodes_.size(); }

  // a strictly precedes b (higher priority), in the transitive closure.
  bool prec(std::size_t a, std::size_t b) const { return closure_[a].test(b); }

  // Node fingerprint over the full valuation space.
  const Bitset& node_fingerprint(std::size_t i) const { return fps_[i]; }

  bool same_closure(const PGraph& o) const { return closure_ == o.closure_; }

private:
  SymbolTable st_;
  std::vector<PropFormula> nodes_;
  std::vector<std::pair<std::size_t, std::size_t>> edges_;
  std::vector<Bitset> fps_;
  std::vector<Bitset> closure_; // closure_[a].test(b): a ≺ b transitively
};

// True iff the transitive closure of the priority edges is irreflexive
// (i.e. the generators describe a strict partial order).
inline ValidationResult validate_graph(const PGraph& g) {
  for (std::size_t i = 0; i < g.node_count(); ++i) {
    if (!g.prec(i, i)) continue;
    for (std::size_t j = 0; j < g.node_count(); ++j) {
      if (j != i && g.prec(i, j) && g.prec(j, i)) {
        return {false, "priority cycle through nodes " + std::to_string(i + 1) + " and " +
                           std::to_string(j + 1)};
      }
    }
    return {false, "node " + std::to_string(i + 1) + " precedes itself"};
  }
  return {};
}

// The preference order a priority graph induces on a nonempty world set:
// w <= w' iff for every node formula, either w keeps every node w' satisfies,
// or w beats w' on some strictly higher-priority node.
inline PreferenceModel induced_order(const PGraph& g, const std::vector<Valuation>& worlds) {
  if (worlds.empty()) throw DomainError("induced order requires a nonempty world set");
  PreferenceModel m(g.symbols(), worlds);
  const std::size_t n = m.size();
  const std::size_t k = g.node_count();
  // sat[t] = positions of model worlds satisfying node t.
  std::vector<Bitset> sat;
  sat.reserve(k);
  for (std::size_t t = 0; t < k; ++t) sat.push_back(m.positions_satisfying(g.node_fingerprint(t)));
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      bool leq = true;
      for (std::size_t t = 0; t < k && leq; ++t) {
        if (!sat[t].test(j) || sat[t].test(i)) continue; // node t does not separate j from i
        bool escape = false;
        for (std::size_t u = 0; u < k; ++u) {
          if (g.prec(u, t) && sat[u].test(i) && !sat[u].test(j)) {
            escape = true;
            break;
          }
        }
        leq = escape;
      }
      m.set_rel(i, j, leq);
    }
  }
  return m;
}

inline bool induces(const PGraph& g, const PreferenceModel& m) {
  const PreferenceModel ind = induced_order(g, m.worlds());
  return ind.same_worlds(m) && ind.same_relation(m);
}

// Extracts the canonical graph of a model: one characteristic formula per
// plausibility cluster (a disjunction of world literal-conjunctions),
// priority edges wherever one cluster is strictly more plausible than
// another. The result always induces the model it came from.
inline PGraph canonical_graph(const PreferenceModel& m) {
  const Clustering c = clusters(m);
  std::vector<PropFormula> nodes;
  nodes.reserve(c.members.size());
  for (const auto& cluster : c.members) {
    PropFormula f;
    for (std::size_t pos : cluster) {
      PropFormula wf = world_formula(m.worlds()[pos], m.symbols());
      f = f.valid() ? PropFormula::disj(std::move(f), std::move(wf)) : std::move(wf);
    }
    nodes.push_back(std::move(f));
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < c.members.size(); ++a) {
    for (std::size_t b = 0; b < c.members.size(); ++b) {
      if (a != b && c.strict[a][b]) edges.emplace_back(a, b);
    }
  }
  PGraph g(m.symbols(), std::move(nodes), std::move(edges));
  const ValidationResult v = validate_graph(g);
  if (!v.ok) throw DomainError("canonical graph extraction failed: " + v.message);
  return g;
}

// Every maximal chain of the strict priority order, each listed from the
// highest-priority node down; chains ordered lexicographically by node index.
inline std::vector<std::vector<std::size_t>> maximal_chains(const PGraph& g) {
  const std::size_t k = g.node_count();
  // covers[a] = nodes b directly above a (a ≺ b with nothing in between).
  std::vector<std::vector<std::size_t>> covers(k);
  std::vector<bool> minimal(k, true);
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      if (!g.prec(a, b)) continue;
      minimal[b] = false;
      bool direct = true;
      for (std::size_t c = 0; c < k; ++c) {
        if (g.prec(a, c) && g.prec(c, b)) {
          direct = false;
          break;
        }
      }
      if (direct) covers[a].push_back(b);
    }
  }
  std::vector<std::vector<std::size_t>> chains;
  std::vector<std::size_t> path;
  auto dfs = [&](auto&& self, std::size_t node) -> void {
    path.push_back(node);
    if (covers[node].empty()) {
      chains.push_back(path);
    } else {
      for (std::size_t next : covers[node]) self(self, next);
    }
    path.pop_back();
  };
  for (std::size_t a = 0; a < k; ++a) {
    if (minimal[a]) dfs(dfs, a);
  }
  return chains;
}

// A priority graph paired with a consistent grounding formula that fixes the
// world set of its unique induced model.
class GroundedPGraph {
public:
  GroundedPGraph(PropFormula ground, PGraph graph)
      : ground_(std::move(ground)), graph_(std::move(graph)) {
    ground_fp_ = fingerprint(ground_, graph_.symbols());
    if (ground_fp_.none()) throw DomainError("grounding formula is inconsistent");
  }

  const PropFormula& ground() const { return ground_; }
  const Bitset& ground_fingerprint() const { return ground_fp_; }
  const PGraph& graph() const { return graph_; }
  const SymbolTable& symbols() const { return graph_.symbols(); }

private:
  PropFormula ground_;
  Bitset ground_fp_;
  PGraph graph_;
};

// The unique model of a grounded graph: worlds are exactly the valuations
// satisfying the grounding, ordered by the graph.
inline PreferenceModel grounded_induce(const GroundedPGraph& g) {
  return induced_order(g.graph(), worlds_of(g.ground_fingerprint()));
}

// Formula true at exactly the most plausible psi-worlds of the grounded
// graph's induced model.
//
// Construction: along every priority-compatible processing order of the nodes
// (higher priority handled first), greedily conjoin each node onto
// ground ∧ psi while the conjunction stays consistent, and disjoin the
// surviving conjunctions. On a totally ordered graph this is the familiar
// single greedy pass. Quantifying over all compatible orders is necessary —
// single chains never see nodes on other branches and can keep dominated
// worlds — but is still not sufficient: with two incomparable two-node
// chains, a world can be most plausible (no single world dominates it) while
// losing some opening node in every processing order. Each greedy disjunct
// provably contains only most-plausible worlds, so the gap is one-sided: any
// most-plausible worlds the search missed are disjoined explicitly at the
// end, making the extension exact on every input. Graphs with many nodes
// skip the (exponential) search and get the explicit form directly. With no
// nodes the result is ground ∧ psi itself.
inline PropFormula mu(const GroundedPGraph& g, const PropFormula& psi) {
  const SymbolTable& st = g.symbols();
  const PGraph& gr = g.graph();
  const std::size_t k = gr.node_count();
  const Bitset psi_fp = fingerprint(psi, st);
  const Bitset base_fp = g.ground_fingerprint() & psi_fp;
  PropFormula base = PropFormula::conj(g.ground(), psi);
  if (k == 0) return base;

  std::vector<PropFormula> parts;
  std::vector<Bitset> part_fps;
  constexpr std::size_t kSearchNodeLimit = 12;
  if (k <= kSearchNodeLimit) {
    const std::uint64_t full = (std::uint64_t{1} << k) - 1;
    // DFS over processing orders, always extending with the lowest-index node
    // whose higher-priority nodes are all consumed. Branches are pruned on
    // repeated (consumed set, current worlds) states: every completion from
    // an equal state contributes the same world sets, so the pruned disjuncts
    // are semantically redundant. Resulting disjuncts are deduplicated the
    // same way. Both the search order and the pruning are deterministic.
    std::set<std::pair<std::uint64_t, std::vector<std::uint64_t>>> seen;
    auto dfs = [&](auto&& self, std::uint64_t consumed, const PropFormula& f,
                   const Bitset& fp) -> void {
      if (consumed == full) {
        for (const Bitset& prev : part_fps) {
          if (prev == fp) return;
        }
        parts.push_back(f);
        part_fps.push_back(fp);
        return;
      }
      if (!seen.emplace(consumed, fp.blocks()).second) return;
      for (std::size_t i = 0; i < k; ++i) {
        if (consumed & (std::uint64_t{1} << i)) continue;
        bool ready = true;
        for (std::size_t j = 0; j < k && ready; ++j) {
          if (!(consumed & (std::uint64_t{1} << j)) && j != i && gr.prec(j, i)) ready = false;
        }
        if (!ready) continue;
        const std::uint64_t next = consumed | (std::uint64_t{1} << i);
        const Bitset cand = fp & gr.node_fingerprint(i);
        if (cand.any()) {
          self(self, next, PropFormula::conj(gr.nodes()[i], f), cand);
        } else {
          self(self, next, f, fp);
        }
      }
    };
    dfs(dfs, 0, base, base_fp);
  }

  const PreferenceModel m = grounded_induce(g);
  const Bitset minima = min_positions(m, m.positions_satisfying(psi_fp));
  Bitset expect(base_fp.size());
  for (std::size_t pos : minima.positions()) expect.set(m.worlds()[pos], true);
  Bitset covered(base_fp.size());
  for (const Bitset& fp : part_fps) covered = covered | fp;
  const Bitset missing = expect & ~covered;
  if (missing.any() || parts.empty()) parts.push_back(class_formula(missing, st));

  PropFormula result = std::move(parts.front());
  for (std::size_t i = 1; i < parts.size(); ++i) {
    result = PropFormula::disj(std::move(result), std::move(parts[i]));
  }
  return result;
}

// Two graphs are phi-equivalent when they induce identical orders on the
// limiting model whose worlds are exactly the valuations satisfying phi.
inline bool phi_equivalent(const PGraph& g1, const PGraph& g2, const PropFormula& phi) {
  if (!(g1.symbols() == g2.symbols())) {
    throw DomainError("graphs are over different symbol tables");
  }
  const Bitset fp = fingerprint(phi, g1.symbols());
  if (fp.none()) throw DomainError("equivalence is relative to a consistent formula");
  const std::vector<Valuation> worlds = worlds_of(fp);
  return induced_order(g1, worlds).same_relation(induced_order(g2, worlds));
}

} // namespace prefdl
