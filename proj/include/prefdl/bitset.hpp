#pragma once

#include <cassert>
#include <cstddef>
#include <cstdint>
#include <string>
#include <vector>

namespace prefdl {

// Fixed-width bit vector. Serves two roles: formula fingerprints (one bit
// per valuation index) and world masks inside a model (one bit per world
// position). All binary operations require equal widths.
class Bitset {
public:
  Bitset() = default;

  explicit Bitset(std::size_t bits) : nbits_(bits), blocks_(block_count(bits), 0) {}

  static Bitset zeros(std::size_t bits) { return Bitset(bits); }

  static Bitset ones(std::size_t bits) {
    Bitset b(bits);
    for (auto& blk : b.blocks_) blk = ~std::uint64_t{0};
    b.trim();
    return b;
  }

  std::size_t size() const { return nbits_; }

  bool test(std::size_t i) const {
    assert(i < nbits_);
    return (blocks_[i >> 6] >> (i & 63)) & 1u;
  }

  void set(std::size_t i, bool value = true) {
    assert(i < nbits_);
    const std::uint64_t mask = std::uint64_t{1} << (i & 63);
    if (value)
      blocks_[i >> 6] |= mask;
    else
      blocks_[i >> 6] &= ~mask;
  }

  bool any() const {
    for (auto blk : blocks_)
      if (blk) return true;
    return false;
  }

  bool none() const { return !any(); }

  bool all() const { return count() == nbits_; }

  std::size_t count() const {
    std::size_t total = 0;
    for (auto blk : blocks_) total += static_cast<std::size_t>(__builtin_popcountll(blk));
    return total;
  }

  Bitset& operator&=(const Bitset& o) {
    assert(nbits_ == o.nbits_);
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] &= o.blocks_[i];
    return *this;
  }

  Bitset& operator|=(const Bitset& o) {
    assert(nbits_ == o.nbits_);
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] |= o.blocks_[i];
    return *this;
  }

  Bitset& operator^=(const Bitset& o) {
    assert(nbits_ == o.nbits_);
    for (std::size_t i = 0; i < blocks_.size(); ++i) blocks_[i] ^= o.blocks_[i];
    return *this;
  }

  friend Bitset operator&(Bitset a, const Bitset& b) { return a &= b; }
  friend Bitset operator|(Bitset a, const Bitset& b) { return a |= b; }
  friend Bitset operator^(Bitset a, const Bitset& b) { return a ^= b; }

  Bitset operator~() const {
    Bitset r(nbits_);
    for (std::size_t i = 0; i < blocks_.size(); ++i) r.blocks_[i] = ~blocks_[i];
    r.trim();
    return r;
  }

  bool is_subset_of(const Bitset& o) const {
    assert(nbits_ == o.nbits_);
    for (std::size_t i = 0; i < blocks_.size(); ++i)
      if (blocks_[i] & ~o.blocks_[i]) return false;
    return true;
  }

  bool operator==(const Bitset&) const = default;

  // Positions of set bits, ascending.
  std::vector<std::size_t> positions() const {
    std::vector<std::size_t> out;
    for (std::size_t i = 0; i < nbits_; ++i)
      if (test(i)) out.push_back(i);
    return out;
  }

  // '0'/'1' characters, index 0 leftmost.
  std::string to_string() const {
    std::string s(nbits_, '0');
    for (std::size_t i = 0; i < nbits_; ++i)
      if (test(i)) s[i] = '1';
    return s;
  }

  const std::vector<std::uint64_t>& blocks() const { return blocks_; }

private:
  static std::size_t block_count(std::size_t bits) { return (bits + 63) / 64; }

  // Bits past nbits_ stay zero so defaulted equality is structural equality.
  void trim() {
    if (nbits_ & 63) blocks_.back() &= (~std::uint64_t{0}) >> (64 - (nbits_ & 63));
  }

  std::size_t nbits_ = 0;
  std::vector<std::uint64_t> blocks_;
};

} // namespace prefdl
