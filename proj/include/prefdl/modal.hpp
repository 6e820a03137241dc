#pragma once

#include <cassert>
#include <cstdint>
#include <memory>
#include <string>
#include <utility>

#include "prefdl/formula.hpp"

namespace prefdl {

// Modal layer on top of the propositional language: global modalities A/E,
// relational boxes and diamonds over the preference order and its strict
// part, the minimality operator mu(.), and a named dynamic modality
// [* op phi] whose argument phi is always purely propositional.
enum class ModalKind : std::uint8_t {
  Atom,
  Top,
  Bottom,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Univ,    // A
  Exist,   // E
  BoxLeq,  // [<=]
  DiaLeq,  // <<=>
  BoxLt,   // [<]
  DiaLt,   // <<>
  Mu,      // mu(.)
  Dyn      // [* op phi] body
};

namespace detail {

struct ModalNode {
  ModalKind kind{};
  std::string atom;    // Atom name, or Dyn operator name
  PropFormula dyn_arg; // Dyn only
  std::shared_ptr<const ModalNode> lhs, rhs;
};

} // namespace detail

class ModalFormula {
public:
  ModalFormula() = default;

  static ModalFormula atom(std::string name) {
    detail::ModalNode n;
    n.kind = ModalKind::Atom;
    n.atom = std::move(name);
    return make(std::move(n));
  }
  static ModalFormula top() { return leaf(ModalKind::Top); }
  static ModalFormula bottom() { return leaf(ModalKind::Bottom); }
  static ModalFormula neg(ModalFormula f) { return unary(ModalKind::Not, std::move(f)); }
  static ModalFormula conj(ModalFormula a, ModalFormula b) {
    return binary(ModalKind::And, std::move(a), std::move(b));
  }
  static ModalFormula disj(ModalFormula a, ModalFormula b) {
    return binary(ModalKind::Or, std::move(a), std::move(b));
  }
  static ModalFormula implies(ModalFormula a, ModalFormula b) {
    return binary(ModalKind::Implies, std::move(a), std::move(b));
  }
  static ModalFormula iff(ModalFormula a, ModalFormula b) {
    return binary(ModalKind::Iff, std::move(a), std::move(b));
  }
  static ModalFormula univ(ModalFormula f) { return unary(ModalKind::Univ, std::move(f)); }
  static ModalFormula exist(ModalFormula f) { return unary(ModalKind::Exist, std::move(f)); }
  static ModalFormula box_leq(ModalFormula f) { return unary(ModalKind::BoxLeq, std::move(f)); }
  static ModalFormula dia_leq(ModalFormula f) { return unary(ModalKind::DiaLeq, std::move(f)); }
  static ModalFormula box_lt(ModalFormula f) { return unary(ModalKind::BoxLt, std::move(f)); }
  static ModalFormula dia_lt(ModalFormula f) { return unary(ModalKind::DiaLt, std::move(f)); }
  static ModalFormula mu(ModalFormula f) { return unary(ModalKind::Mu, std::move(f)); }

  static ModalFormula dyn(std::string op_name, PropFormula argument, ModalFormula body) {
    detail::ModalNode n;
    n.kind = ModalKind::Dyn;
    n.atom = std::move(op_name);
    n.dyn_arg = std::move(argument);
    n.lhs = std::move(body.node_);
    return make(std::move(n));
  }

  // Lift a propositional formula into the modal language.
  static ModalFormula embed(const PropFormula& f) {
    switch (f.kind()) {
      case PropKind::Atom: return atom(f.atom_name());
      case PropKind::Top: return top();
      case PropKind::Bottom: return bottom();
      case PropKind::Not: return neg(embed(f.lhs()));
      case PropKind::And: return conj(embed(f.lhs()), embed(f.rhs()));
      case PropKind::Or: return disj(embed(f.lhs()), embed(f.rhs()));
      case PropKind::Implies: return implies(embed(f.lhs()), embed(f.rhs()));
      case PropKind::Iff: return iff(embed(f.lhs()), embed(f.rhs()));
    }
    return {};
  }

  bool valid() const { return node_ != nullptr; }
  ModalKind kind() const { return node_->kind; }

  const std::string& atom_name() const {
    assert(kind() == ModalKind::Atom);
    return node_->atom;
  }
  const std::string& op_name() const {
    assert(kind() == ModalKind::Dyn);
    return node_->atom;
  }
  const PropFormula& dyn_arg() const {
    assert(kind() == ModalKind::Dyn);
    return node_->dyn_arg;
  }

  ModalFormula lhs() const { return ModalFormula(node_->lhs); } // unary child lives here
  ModalFormula rhs() const { return ModalFormula(node_->rhs); }

  bool operator==(const ModalFormula& o) const { return eq(node_.get(), o.node_.get()); }

  std::string to_string() const {
    std::string out;
    print(out, node_.get(), 1);
    return out;
  }

  const void* id() const { return node_.get(); }

private:
  explicit ModalFormula(std::shared_ptr<const detail::ModalNode> n) : node_(std::move(n)) {}

  static ModalFormula make(detail::ModalNode n) {
    return ModalFormula(std::make_shared<const detail::ModalNode>(std::move(n)));
  }
  static ModalFormula leaf(ModalKind k) {
    detail::ModalNode n;
    n.kind = k;
    return make(std::move(n));
  }
  static ModalFormula unary(ModalKind k, ModalFormula a) {
    detail::ModalNode n;
    n.kind = k;
    n.lhs = std::move(a.node_);
    return make(std::move(n));
  }
  static ModalFormula binary(ModalKind k, ModalFormula a, ModalFormula b) {
    detail::ModalNode n;
    n.kind = k;
    n.lhs = std::move(a.node_);
    n.rhs = std::move(b.node_);
    return make(std::move(n));
  }

  static bool eq(const detail::ModalNode* a, const detail::ModalNode* b) {
    if (a == b) return true;
    if (a == nullptr || b == nullptr) return false;
    if (a->kind != b->kind) return false;
    switch (a->kind) {
      case ModalKind::Atom: return a->atom == b->atom;
      case ModalKind::Top:
      case ModalKind::Bottom: return true;
      case ModalKind::Dyn:
        return a->atom == b->atom && a->dyn_arg == b->dyn_arg && eq(a->lhs.get(), b->lhs.get());
      default: return eq(a->lhs.get(), b->lhs.get()) && eq(a->rhs.get(), b->rhs.get());
    }
  }

  static int level(ModalKind k) {
    switch (k) {
      case ModalKind::Iff: return 1;
      case ModalKind::Implies: return 2;
      case ModalKind::Or: return 3;
      case ModalKind::And: return 4;
      default: return 5;
    }
  }

  static void print(std::string& out, const detail::ModalNode* n, int min_level) {
    const int lvl = level(n->kind);
    const bool parens = lvl < min_level;
    if (parens) out += '(';
    switch (n->kind) {
      case ModalKind::Atom: out += n->atom; break;
      case ModalKind::Top: out += 'T'; break;
      case ModalKind::Bottom: out += 'F'; break;
      case ModalKind::Not:
        out += '~';
        print(out, n->lhs.get(), 5);
        break;
      case ModalKind::And:
        print(out, n->lhs.get(), 4);
        out += " & ";
        print(out, n->rhs.get(), 5);
        break;
      case ModalKind::Or:
        print(out, n->lhs.get(), 3);
        out += " | ";
        print(out, n->rhs.get(), 4);
        break;
      case ModalKind::Implies:
        print(out, n->lhs.get(), 3);
        out += " -> ";
        print(out, n->rhs.get(), 2);
        break;
      case ModalKind::Iff:
        print(out, n->lhs.get(), 1);
        out += " <-> ";
        print(out, n->rhs.get(), 2);
        break;
      case ModalKind::Univ:
        out += "A ";
        print(out, n->lhs.get(), 5);
        break;
      case ModalKind::Exist:
        out += "E ";
        print(out, n->lhs.get(), 5);
        break;
      case ModalKind::BoxLeq:
        out += "[<=] ";
        print(out, n->lhs.get(), 5);
        break;
      case ModalKind::DiaLeq:
        out += "<<=> ";
        print(out, n->lhs.get(), 5);
        break;
      case ModalKind::BoxLt:
        out += "[<] ";
        print(out, n->lhs.get(), 5);
        break;
      case ModalKind::DiaLt:
        out += "<<> ";
        print(out, n->lhs.get(), 5);
        break;
      case ModalKind::Mu:
        out += "mu(";
        print(out, n->lhs.get(), 1);
        out += ')';
        break;
      case ModalKind::Dyn:
        out += "[* ";
        out += n->atom;
        out += ' ';
        out += n->dyn_arg.to_string();
        out += "] ";
        print(out, n->lhs.get(), 5);
        break;
    }
    if (parens) out += ')';
  }

  std::shared_ptr<const detail::ModalNode> node_;
};

} // namespace prefdl
