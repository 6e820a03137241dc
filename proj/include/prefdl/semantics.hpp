#pragma once

#include <string>
#include <vector>

#include "prefdl/bitset.hpp"
#include "prefdl/errors.hpp"
#include "prefdl/formula.hpp"
#include "prefdl/symbols.hpp"

namespace prefdl {

// Truth-table semantics over the full valuation space of a symbol table.
// The fingerprint of a formula is the bitvector of length 2^n whose bit at
// index w is 1 iff valuation w satisfies the formula; it is the canonical
// semantic identity used by every equivalence test in the engine.

inline Bitset atom_fingerprint(std::size_t symbol_index, const SymbolTable& st) {
  const std::size_t total = st.world_count();
  Bitset out(total);
  for (std::size_t w = 0; w < total; ++w) {
    if (world_sats(static_cast<Valuation>(w), symbol_index, st.size())) {
      out.set(w);
    }
  }
  return out;
}

inline Bitset fingerprint(const PropFormula& f, const SymbolTable& st) {
  const std::size_t total = st.world_count();
  switch (f.kind()) {
    case PropKind::Atom: {
      const auto idx = st.index_of(f.atom_name());
      if (!idx) throw DomainError("formula uses undeclared symbol '" + f.atom_name() + "'");
      return atom_fingerprint(*idx, st);
    }
    case PropKind::Top: return Bitset::ones(total);
    case PropKind::Bottom: return Bitset::zeros(total);
    case PropKind::Not: return ~fingerprint(f.lhs(), st);
    case PropKind::And: return fingerprint(f.lhs(), st) & fingerprint(f.rhs(), st);
    case PropKind::Or: return fingerprint(f.lhs(), st) | fingerprint(f.rhs(), st);
    case PropKind::Implies: return ~fingerprint(f.lhs(), st) | fingerprint(f.rhs(), st);
    case PropKind::Iff: return ~(fingerprint(f.lhs(), st) ^ fingerprint(f.rhs(), st));
  }
  throw DomainError("malformed formula");
}

inline bool equivalent(const PropFormula& f, const PropFormula& g, const SymbolTable& st) {
  return fingerprint(f, st) == fingerprint(g, st);
}

inline bool entails(const PropFormula& f, const PropFormula& g, const SymbolTable& st) {
  return fingerprint(f, st).is_subset_of(fingerprint(g, st));
}

inline bool is_consistent(const PropFormula& f, const SymbolTable& st) {
  return fingerprint(f, st).any();
}

// Conjunction of literals true at exactly the valuation w.
inline PropFormula world_formula(Valuation w, const SymbolTable& st) {
  const std::size_t n = st.size();
  if (n == 0) return PropFormula::top();
  auto literal = [&](std::size_t i) {
    PropFormula a = PropFormula::atom(st.name(i));
    return world_sats(w, i, n) ? a : PropFormula::neg(a);
  };
  PropFormula f = literal(0);
  for (std::size_t i = 1; i < n; ++i) f = PropFormula::conj(std::move(f), literal(i));
  return f;
}

// Valuations in a full-space subset, listed by descending index (the display
// order used throughout: the all-true world prints first).
inline std::vector<Valuation> worlds_of(const Bitset& bits) {
  std::vector<Valuation> out;
  for (std::size_t i = bits.size(); i-- > 0;) {
    if (bits.test(i)) out.push_back(static_cast<Valuation>(i));
  }
  return out;
}

// Characteristic formula of a nonempty world set: the disjunction of the
// world formulas of its members conjoined with the negated world formulas of
// the absent valuations, so its fingerprint is exactly the given set.
inline PropFormula model_formula(const std::vector<Valuation>& worlds, const SymbolTable& st) {
  if (worlds.empty()) throw DomainError("model_formula requires a nonempty world set");
  const std::size_t total = st.world_count();
  Bitset present(total);
  for (Valuation w : worlds) {
    if (w >= total) throw DomainError("world index out of range for symbol table");
    present.set(w);
  }
  PropFormula f;
  for (std::size_t i = total; i-- > 0;) {
    if (!present.test(i)) continue;
    PropFormula wf = world_formula(static_cast<Valuation>(i), st);
    f = f.valid() ? PropFormula::disj(std::move(f), std::move(wf)) : std::move(wf);
  }
  for (std::size_t i = total; i-- > 0;) {
    if (present.test(i)) continue;
    f = PropFormula::conj(
        std::move(f), PropFormula::neg(world_formula(static_cast<Valuation>(i), st)));
  }
  return f;
}

inline PropFormula model_formula(const Bitset& bits, const SymbolTable& st) {
  return model_formula(worlds_of(bits), st);
}

// Compact representative of a semantic class: bottom for the empty class,
// otherwise the plain disjunction of member world formulas (no negated
// conjuncts). Fingerprint is exactly the class.
inline PropFormula class_formula(const Bitset& bits, const SymbolTable& st) {
  if (bits.none()) return PropFormula::bottom();
  PropFormula f;
  for (std::size_t i = bits.size(); i-- > 0;) {
    if (!bits.test(i)) continue;
    PropFormula wf = world_formula(static_cast<Valuation>(i), st);
    f = f.valid() ? PropFormula::disj(std::move(f), std::move(wf)) : std::move(wf);
  }
  return f;
}

} // namespace prefdl
