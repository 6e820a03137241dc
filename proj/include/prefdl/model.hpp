#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "prefdl/bitset.hpp"
#include "prefdl/errors.hpp"
#include "prefdl/semantics.hpp"
#include "prefdl/symbols.hpp"

namespace prefdl {

// A preference model: a nonempty set of worlds (valuations over the symbol
// table — the valuation function is implicit in the world identity) plus a
// reflexive, transitive plausibility relation. Smaller means more plausible.
//
// Worlds are stored by descending valuation index (the all-true world first);
// the relation is stored column-wise: below_[j] is the set of positions i
// with worlds[i] <= worlds[j].
class PreferenceModel {
public:
  // `leq_pairs` lists related position pairs (i, j) meaning worlds[i] <=
  // worlds[j] *after* the given worlds are sorted descending; use
  // from_valuation_pairs for pairs expressed on valuations. Reflexive pairs
  // are always added; no closure is taken here (see close_transitive).
  PreferenceModel(SymbolTable st, std::vector<Valuation> worlds,
                  const std::vector<std::pair<int, int>>& leq_pairs = {})
      : st_(std::move(st)), worlds_(std::move(worlds)) {
    if (worlds_.empty()) throw DomainError("a preference model requires at least one world");
    std::sort(worlds_.begin(), worlds_.end(), std::greater<Valuation>());
    worlds_.erase(std::unique(worlds_.begin(), worlds_.end()), worlds_.end());
    for (Valuation w : worlds_) {
      if (static_cast<std::size_t>(w) >= st_.world_count()) {
        throw DomainError("world " + std::to_string(w) + " out of range for symbol table");
      }
    }
    const std::size_t n = worlds_.size();
    below_.assign(n, Bitset(n));
    for (std::size_t i = 0; i < n; ++i) below_[i].set(i);
    for (const auto& [i, j] : leq_pairs) {
      if (i < 0 || j < 0 || static_cast<std::size_t>(i) >= n ||
          static_cast<std::size_t>(j) >= n) {
        throw DomainError("relation pair position out of range");
      }
      below_[static_cast<std::size_t>(j)].set(static_cast<std::size_t>(i));
    }
  }

  static PreferenceModel from_valuation_pairs(
      SymbolTable st, std::vector<Valuation> worlds,
      const std::vector<std::pair<Valuation, Valuation>>& pairs) {
    PreferenceModel m(std::move(st), std::move(worlds));
    for (const auto& [a, b] : pairs) {
      const int i = m.pos_of(a);
      const int j = m.pos_of(b);
      if (i < 0 || j < 0) throw DomainError("relation pair mentions a world not in the model");
      m.below_[static_cast<std::size_t>(j)].set(static_cast<std::size_t>(i));
    }
    return m;
  }

  const SymbolTable& symbols() const { return st_; }
  const std::vector<Valuation>& worlds() const { return worlds_; }
  std::size_t size() const { return worlds_.size(); }

  // worlds[i] <= worlds[j]?
  bool rel(std::size_t i, std::size_t j) const { return below_[j].test(i); }
  // worlds[i] < worlds[j]?
  bool strict(std::size_t i, std::size_t j) const { return rel(i, j) && !rel(j, i); }

  // Positions i with worlds[i] <= worlds[j].
  const Bitset& below(std::size_t j) const { return below_[j]; }

  Bitset strictly_below(std::size_t j) const {
    Bitset out = below_[j];
    for (std::size_t i = 0; i < worlds_.size(); ++i) {
      if (out.test(i) && rel(j, i)) out.set(i, false);
    }
    return out;
  }

  int pos_of(Valuation w) const {
    for (std::size_t i = 0; i < worlds_.size(); ++i) {
      if (worlds_[i] == w) return static_cast<int>(i);
    }
    return -1;
  }

  void set_rel(std::size_t i, std::size_t j, bool value) { below_[j].set(i, value); }

  // Replace the relation by its reflexive-transitive closure.
  void close_transitive() {
    const std::size_t n = worlds_.size();
    for (std::size_t i = 0; i < n; ++i) below_[i].set(i);
    // below_[j] column form: i <= k and k <= j imply i <= j, i.e. whenever
    // column j contains k, it absorbs column k.
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t j = 0; j < n; ++j) {
        Bitset next = below_[j];
        for (std::size_t k = 0; k < n; ++k) {
          if (below_[j].test(k)) next |= below_[k];
        }
        if (!(next == below_[j])) {
          below_[j] = std::move(next);
          changed = true;
        }
      }
    }
  }

  bool same_worlds(const PreferenceModel& o) const {
    return st_ == o.st_ && worlds_ == o.worlds_;
  }

  bool same_relation(const PreferenceModel& o) const { return below_ == o.below_; }

  bool operator==(const PreferenceModel& o) const {
    return same_worlds(o) && same_relation(o);
  }

  // Positions of worlds in the model satisfying a full-space fingerprint.
  Bitset positions_satisfying(const Bitset& full_space_bits) const {
    Bitset out(worlds_.size());
    for (std::size_t i = 0; i < worlds_.size(); ++i) {
      if (full_space_bits.test(worlds_[i])) out.set(i);
    }
    return out;
  }

private:
  SymbolTable st_;
  std::vector<Valuation> worlds_;
  std::vector<Bitset> below_;
};

struct ValidationResult {
  bool ok = true;
  std::string message;
};

// Checks reflexivity and transitivity, reporting the first violating world
// (reflexivity) or triple (transitivity) by name.
inline ValidationResult validate_model(const PreferenceModel& m) {
  const std::size_t n = m.size();
  const std::size_t ns = m.symbols().size();
  for (std::size_t i = 0; i < n; ++i) {
    if (!m.rel(i, i)) {
      return {false, "relation is not reflexive at world " + world_name(m.worlds()[i], ns)};
    }
  }
  for (std::size_t a = 0; a < n; ++a) {
    for (std::size_t b = 0; b < n; ++b) {
      if (!m.rel(a, b)) continue;
      for (std::size_t c = 0; c < n; ++c) {
        if (m.rel(b, c) && !m.rel(a, c)) {
          return {false, "relation is not transitive: " + world_name(m.worlds()[a], ns) +
                             "<=" + world_name(m.worlds()[b], ns) + " and " +
                             world_name(m.worlds()[b], ns) + "<=" +
                             world_name(m.worlds()[c], ns) + " but not " +
                             world_name(m.worlds()[a], ns) + "<=" +
                             world_name(m.worlds()[c], ns)};
        }
      }
    }
  }
  return {};
}

// Minimal members of a position set: elements with no strictly smaller
// element inside the set. Empty input yields empty output.
inline Bitset min_positions(const PreferenceModel& m, const Bitset& set) {
  Bitset out(m.size());
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (!set.test(i)) continue;
    bool minimal = true;
    for (std::size_t j = 0; j < m.size(); ++j) {
      if (j != i && set.test(j) && m.strict(j, i)) {
        minimal = false;
        break;
      }
    }
    if (minimal) out.set(i);
  }
  return out;
}

// The most plausible worlds among `s` (valuations, which must all belong to
// the model); result listed in the model's world order.
inline std::vector<Valuation> min_worlds(const PreferenceModel& m,
                                         const std::vector<Valuation>& s) {
  Bitset set(m.size());
  for (Valuation w : s) {
    const int p = m.pos_of(w);
    if (p < 0) throw DomainError("min_worlds: world " + std::to_string(w) + " not in model");
    set.set(static_cast<std::size_t>(p));
  }
  const Bitset mins = min_positions(m, set);
  std::vector<Valuation> out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    if (mins.test(i)) out.push_back(m.worlds()[i]);
  }
  return out;
}

struct Clustering {
  // cluster_of[i] = cluster index of world position i; clusters listed by
  // first appearance in world order (descending valuation).
  std::vector<int> cluster_of;
  std::vector<std::vector<std::size_t>> members;
  // strict[a][b] = true iff cluster a is strictly more plausible than b.
  std::vector<std::vector<bool>> strict;
};

// Equivalence classes of mutual plausibility, with the inherited strict
// partial order between classes.
inline Clustering clusters(const PreferenceModel& m) {
  const std::size_t n = m.size();
  Clustering c;
  c.cluster_of.assign(n, -1);
  for (std::size_t i = 0; i < n; ++i) {
    if (c.cluster_of[i] >= 0) continue;
    const int id = static_cast<int>(c.members.size());
    c.members.push_back({});
    for (std::size_t j = i; j < n; ++j) {
      if (c.cluster_of[j] < 0 && m.rel(i, j) && m.rel(j, i)) {
        c.cluster_of[j] = id;
        c.members.back().push_back(j);
      }
    }
  }
  const std::size_t k = c.members.size();
  c.strict.assign(k, std::vector<bool>(k, false));
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      if (a == b) continue;
      c.strict[a][b] = m.strict(c.members[a].front(), c.members[b].front());
    }
  }
  return c;
}

// Submodel on a nonempty subset of the worlds: relation and valuation
// restricted pointwise.
inline PreferenceModel restrict_model(const PreferenceModel& m,
                                      const std::vector<Valuation>& sub) {
  if (sub.empty()) throw DomainError("restriction requires a nonempty world subset");
  std::vector<Valuation> kept = sub;
  std::sort(kept.begin(), kept.end(), std::greater<Valuation>());
  kept.erase(std::unique(kept.begin(), kept.end()), kept.end());
  std::vector<int> old_pos;
  old_pos.reserve(kept.size());
  for (Valuation w : kept) {
    const int p = m.pos_of(w);
    if (p < 0) throw DomainError("restriction world " + std::to_string(w) + " not in model");
    old_pos.push_back(p);
  }
  PreferenceModel out(m.symbols(), kept);
  for (std::size_t i = 0; i < kept.size(); ++i) {
    for (std::size_t j = 0; j < kept.size(); ++j) {
      out.set_rel(i, j,
                  m.rel(static_cast<std::size_t>(old_pos[i]), static_cast<std::size_t>(old_pos[j])));
    }
  }
  return out;
}

} // namespace prefdl
