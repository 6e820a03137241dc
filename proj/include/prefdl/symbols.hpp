#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "prefdl/errors.hpp"

namespace prefdl {

// A valuation is an index in [0, 2^n). The first symbol occupies the most
// significant of the n low bits, so the index written in binary (n digits,
// MSB first) is exactly the world's display string: over {p, q}, "10" is the
// world where p holds and q does not, index 2.
using Valuation = std::uint32_t;

inline constexpr std::size_t kMaxSymbols = 16;

// Ordered set of propositional symbols. Canonical order is lexicographic;
// the constructor sorts and rejects duplicates.
class SymbolTable {
public:
  explicit SymbolTable(std::vector<std::string> names) : names_(std::move(names)) {
    if (names_.empty()) throw DomainError("symbol table must contain at least one symbol");
    if (names_.size() > kMaxSymbols)
      throw DomainError("symbol table exceeds " + std::to_string(kMaxSymbols) + " symbols");
    for (const auto& n : names_) {
      if (!valid_name(n)) throw DomainError("invalid symbol name: '" + n + "'");
    }
    std::sort(names_.begin(), names_.end());
    if (std::adjacent_find(names_.begin(), names_.end()) != names_.end())
      throw DomainError("duplicate symbol name");
  }

  static bool valid_name(std::string_view s) {
    if (s.empty() || s[0] < 'a' || s[0] > 'z') return false;
    for (char c : s.substr(1)) {
      const bool ok = (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '_';
      if (!ok) return false;
    }
    return true;
  }

  std::size_t size() const { return names_.size(); }

  const std::string& name(std::size_t i) const { return names_[i]; }

  const std::vector<std::string>& names() const { return names_; }

  std::optional<std::size_t> index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
      if (names_[i] == name) return i;
    return std::nullopt;
  }

  std::size_t world_count() const { return std::size_t{1} << names_.size(); }

  bool operator==(const SymbolTable&) const = default;

private:
  std::vector<std::string> names_;
};

// Truth of symbol `i` at valuation `w` over an n-symbol table.
inline bool world_sats(Valuation w, std::size_t i, std::size_t n) {
  return (w >> (n - 1 - i)) & 1u;
}

// Display string: n characters, leftmost = first symbol.
inline std::string world_name(Valuation w, std::size_t n) {
  std::string s(n, '0');
  for (std::size_t i = 0; i < n; ++i)
    if (world_sats(w, i, n)) s[i] = '1';
  return s;
}

inline Valuation parse_world_name(std::string_view s, std::size_t n) {
  if (s.size() != n)
    throw DomainError("world '" + std::string(s) + "' must have exactly " +
                      std::to_string(n) + " digits");
  Valuation w = 0;
  for (char c : s) {
    if (c != '0' && c != '1')
      throw DomainError("world '" + std::string(s) + "' must consist of 0/1 digits");
    w = static_cast<Valuation>((w << 1) | (c == '1' ? 1u : 0u));
  }
  return w;
}

} // namespace prefdl
