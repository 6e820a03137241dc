#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "prefdl/errors.hpp"
#include "prefdl/model.hpp"
#include "prefdl/symbols.hpp"

namespace prefdl {

inline constexpr int kDefaultExhaustiveCap = 2;

namespace detail {

inline bool transitive_below(const std::vector<Bitset>& below, std::size_t k) {
  for (std::size_t a = 0; a < k; ++a) {
    for (std::size_t b = 0; b < k; ++b) {
      if (!below[b].test(a)) continue; // a <= b
      for (std::size_t c = 0; c < k; ++c) {
        if (below[c].test(b) && !below[c].test(a)) return false; // b <= c, not a <= c
      }
    }
  }
  return true;
}

} // namespace detail

// Every valid model over the symbol table, exactly once: every nonempty
// world subset paired with every reflexive-transitive relation on it.
// Deterministic order: subsets by ascending bitmask over valuations, then
// candidate relations by ascending off-diagonal bitmask (row-major).
//
// The candidate space is 2^(k(k-1)) per k-world subset, so this is only
// feasible for small signatures; the cap (default 2 symbols) makes the
// contract explicit and the override opt-in.
inline std::vector<PreferenceModel> enumerate_models(const SymbolTable& st,
                                                     int cap = kDefaultExhaustiveCap) {
  if (cap < 0 || st.size() > static_cast<std::size_t>(cap)) {
    throw DomainError("exhaustive enumeration is capped at " + std::to_string(cap) +
                      " symbols (" + std::to_string(st.size()) +
                      " requested); raise the cap explicitly to accept the cost");
  }
  const std::size_t space = st.world_count();
  std::vector<PreferenceModel> out;
  for (std::uint64_t subset = 1; subset < (std::uint64_t{1} << space); ++subset) {
    std::vector<Valuation> worlds;
    for (std::size_t w = space; w-- > 0;) {
      if (subset & (std::uint64_t{1} << w)) worlds.push_back(static_cast<Valuation>(w));
    }
    const std::size_t k = worlds.size();
    const std::size_t offdiag = k * (k - 1);
    std::vector<std::pair<std::size_t, std::size_t>> slots;
    slots.reserve(offdiag);
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        if (i != j) slots.emplace_back(i, j);
      }
    }
    for (std::uint64_t cand = 0; cand < (std::uint64_t{1} << offdiag); ++cand) {
      std::vector<Bitset> below(k, Bitset(k));
      for (std::size_t i = 0; i < k; ++i) below[i].set(i);
      for (std::size_t b = 0; b < offdiag; ++b) {
        if (cand & (std::uint64_t{1} << b)) {
          below[slots[b].second].set(slots[b].first); // worlds[first] <= worlds[second]
        }
      }
      if (!detail::transitive_below(below, k)) continue;
      PreferenceModel m(st, worlds);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) m.set_rel(i, j, below[j].test(i));
      }
      out.push_back(std::move(m));
    }
  }
  return out;
}

// Reproducible random models for signatures beyond the exhaustive cap
// (at most 4 symbols): a random nonempty world subset plus the
// reflexive-transitive closure of a random edge set.
inline std::vector<PreferenceModel> sample_models(const SymbolTable& st, int count,
                                                  std::uint64_t seed) {
  if (st.size() > 4) {
    throw DomainError("sampling mode supports at most 4 symbols");
  }
  const std::size_t space = st.world_count();
  std::mt19937_64 rng(seed);
  std::vector<PreferenceModel> out;
  out.reserve(static_cast<std::size_t>(count));
  for (int s = 0; s < count; ++s) {
    std::uint64_t subset = 0;
    while (subset == 0) {
      subset = rng() & ((std::uint64_t{1} << space) - 1);
    }
    std::vector<Valuation> worlds;
    for (std::size_t w = space; w-- > 0;) {
      if (subset & (std::uint64_t{1} << w)) worlds.push_back(static_cast<Valuation>(w));
    }
    PreferenceModel m(st, worlds);
    const std::size_t k = m.size();
    for (std::size_t i = 0; i < k; ++i) {
      for (std::size_t j = 0; j < k; ++j) {
        if (i != j && rng() % 3 == 0) m.set_rel(i, j, true);
      }
    }
    m.close_transitive();
    out.push_back(std::move(m));
  }
  return out;
}

// All semantic formula classes over the symbol table as full-space
// fingerprints, by ascending subset mask (class 0 is the inconsistent one).
inline std::vector<Bitset> semantic_classes(const SymbolTable& st) {
  const std::size_t space = st.world_count();
  if (space > 20) {
    throw DomainError("semantic class enumeration requires at most 20 worlds");
  }
  std::vector<Bitset> out;
  out.reserve(std::size_t{1} << space);
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << space); ++mask) {
    Bitset b(space);
    for (std::size_t w = 0; w < space; ++w) {
      if (mask & (std::uint64_t{1} << w)) b.set(w);
    }
    out.push_back(std::move(b));
  }
  return out;
}

} // namespace prefdl
