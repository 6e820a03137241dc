#pragma once

#include <cassert>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>

namespace prefdl {

enum class PropKind : std::uint8_t { Atom, Top, Bottom, Not, And, Or, Implies, Iff };

namespace detail {

struct PropNode {
  PropKind kind{};
  std::string atom;
  std::shared_ptr<const PropNode> lhs, rhs;
};

} // namespace detail

// Immutable propositional formula. Copies share structure; equality is
// syntactic. Semantic questions go through fingerprints (semantics.hpp).
class PropFormula {
public:
  PropFormula() = default; // empty handle; only valid as a target of assignment

  static PropFormula atom(std::string name) {
    return make({PropKind::Atom, std::move(name), nullptr, nullptr});
  }
  static PropFormula top() { return leaf(PropKind::Top); }
  static PropFormula bottom() { return leaf(PropKind::Bottom); }
  static PropFormula neg(PropFormula f) { return unary(PropKind::Not, std::move(f)); }
  static PropFormula conj(PropFormula a, PropFormula b) {
    return binary(PropKind::And, std::move(a), std::move(b));
  }
  static PropFormula disj(PropFormula a, PropFormula b) {
    return binary(PropKind::Or, std::move(a), std::move(b));
  }
  static PropFormula implies(PropFormula a, PropFormula b) {
    return binary(PropKind::Implies, std::move(a), std::move(b));
  }
  static PropFormula iff(PropFormula a, PropFormula b) {
    return binary(PropKind::Iff, std::move(a), std::move(b));
  }

  bool valid() const { return node_ != nullptr; }
  PropKind kind() const { return node_->kind; }

  const std::string& atom_name() const {
    assert(kind() == PropKind::Atom);
    return node_->atom;
  }

  PropFormula lhs() const { return PropFormula(node_->lhs); } // Not stores its child here
  PropFormula rhs() const { return PropFormula(node_->rhs); }

  bool operator==(const PropFormula& o) const { return eq(node_.get(), o.node_.get()); }

  // Minimal-parenthesis rendering; reparsing the result reproduces the tree.
  std::string to_string() const {
    std::string out;
    print(out, node_.get(), 1);
    return out;
  }

  const void* id() const { return node_.get(); } // stable identity for memo tables

private:
  explicit PropFormula(std::shared_ptr<const detail::PropNode> n) : node_(std::move(n)) {}

  static PropFormula make(detail::PropNode n) {
    return PropFormula(std::make_shared<const detail::PropNode>(std::move(n)));
  }
  static PropFormula leaf(PropKind k) { return make({k, {}, nullptr, nullptr}); }
  static PropFormula unary(PropKind k, PropFormula a) {
    return make({k, {}, std::move(a.node_), nullptr});
  }
  static PropFormula binary(PropKind k, PropFormula a, PropFormula b) {
    return make({k, {}, std::move(a.node_), std::move(b.node_)});
  }

  static bool eq(const detail::PropNode* a, const detail::PropNode* b) {
    if (a == b) return true;
    if (a == nullptr || b == nullptr) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
      case PropKind::Atom: return a->atom == b->atom;
      case PropKind::Top:
      case PropKind::Bottom: return true;
      case PropKind::Not: return eq(a->lhs.get(), b->lhs.get());
      default: return eq(a->lhs.get(), b->lhs.get()) && eq(a->rhs.get(), b->rhs.get());
    }
  }

  // Precedence levels: <-> 1, -> 2, | 3, & 4, unary and leaves 5.
  // <->, |, & associate to the left; -> associates to the right.
  static int level(PropKind k) {
    switch (k) {
      case PropKind::Iff: return 1;
      case PropKind::Implies: return 2;
      case PropKind::Or: return 3;
      case PropKind::And: return 4;
      default: return 5;
    }
  }

  static void print(std::string& out, const detail::PropNode* n, int min_level) {
    const int lvl = level(n->kind);
    const bool parens = lvl < min_level;
    if (parens) out += '(';
    switch (n->kind) {
      case PropKind::Atom: out += n->atom; break;
      case PropKind::Top: out += 'T'; break;
      case PropKind::Bottom: out += 'F'; break;
      case PropKind::Not:
        out += '~';
        print(out, n->lhs.get(), 5);
        break;
      case PropKind::And:
        print(out, n->lhs.get(), 4);
        out += " & ";
        print(out, n->rhs.get(), 5);
        break;
      case PropKind::Or:
        print(out, n->lhs.get(), 3);
        out += " | ";
        print(out, n->rhs.get(), 4);
        break;
      case PropKind::Implies:
        print(out, n->lhs.get(), 3);
        out += " -> ";
        print(out, n->rhs.get(), 2);
        break;
      case PropKind::Iff:
        print(out, n->lhs.get(), 1);
        out += " <-> ";
        print(out, n->rhs.get(), 2);
        break;
    }
    if (parens) out += ')';
  }

  std::shared_ptr<const detail::PropNode> node_;
};

} // namespace prefdl
