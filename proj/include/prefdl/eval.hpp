#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include "prefdl/bitset.hpp"
#include "prefdl/dynamics.hpp"
#include "prefdl/errors.hpp"
#include "prefdl/modal.hpp"
#include "prefdl/model.hpp"
#include "prefdl/symbols.hpp"

namespace prefdl {

// Model checker for the modal language over one preference model. Extensions
// are computed bottom-up as position bitsets and memoized by formula node
// identity (the evaluator retains shared ownership of every formula it has
// seen, so node addresses stay valid and unique for its lifetime). Dynamic
// subformulas [* op phi] xi spawn a sub-evaluator on the revised model, cached
// per (operator, argument): since operators never change the world set, a
// position bitset of the revised model reads back directly in this one.
class Evaluator {
public:
  Evaluator(PreferenceModel m, const OperatorRegistry& reg) : m_(std::move(m)), reg_(&reg) {}

  const PreferenceModel& model() const { return m_; }

  // Positions of the model's worlds satisfying f.
  Bitset extension(const ModalFormula& f) {
    if (!f.valid()) throw DomainError("cannot evaluate an empty formula");
    roots_.push_back(f);
    return eval(f);
  }

  bool satisfies_at(std::size_t pos, const ModalFormula& f) {
    if (pos >= m_.size()) throw DomainError("world position out of range");
    return extension(f).test(pos);
  }

  bool satisfies(Valuation w, const ModalFormula& f) {
    const int pos = m_.pos_of(w);
    if (pos < 0) {
      throw DomainError("world " + world_name(w, m_.symbols().size()) + " is not in the model");
    }
    return satisfies_at(static_cast<std::size_t>(pos), f);
  }

private:
  Bitset eval(const ModalFormula& f) {
    if (const auto it = memo_.find(f.id()); it != memo_.end()) return it->second;
    Bitset out = compute(f);
    memo_.emplace(f.id(), out);
    return out;
  }

  Bitset compute(const ModalFormula& f) {
    const std::size_t n = m_.size();
    switch (f.kind()) {
      case ModalKind::Top:
        return Bitset::ones(n);
      case ModalKind::Bottom:
        return Bitset::zeros(n);
      case ModalKind::Atom: {
        const auto idx = m_.symbols().index_of(f.atom_name());
        if (!idx.has_value()) throw DomainError("unknown symbol \"" + f.atom_name() + "\"");
        Bitset out(n);
        for (std::size_t j = 0; j < n; ++j) {
          if (world_sats(m_.worlds()[j], *idx, m_.symbols().size())) out.set(j);
        }
        return out;
      }
      case ModalKind::Not:
        return ~eval(f.lhs());
      case ModalKind::And:
        return eval(f.lhs()) & eval(f.rhs());
      case ModalKind::Or:
        return eval(f.lhs()) | eval(f.rhs());
      case ModalKind::Implies:
        return ~eval(f.lhs()) | eval(f.rhs());
      case ModalKind::Iff:
        return ~(eval(f.lhs()) ^ eval(f.rhs()));
      case ModalKind::Univ: {
        const Bitset e = eval(f.lhs());
        return e.all() ? Bitset::ones(n) : Bitset::zeros(n);
      }
      case ModalKind::Exist: {
        const Bitset e = eval(f.lhs());
        return e.any() ? Bitset::ones(n) : Bitset::zeros(n);
      }
      case ModalKind::BoxLeq: {
        const Bitset e = eval(f.lhs());
        Bitset out(n);
        for (std::size_t j = 0; j < n; ++j) {
          if (m_.below(j).is_subset_of(e)) out.set(j);
        }
        return out;
      }
      case ModalKind::DiaLeq: {
        const Bitset e = eval(f.lhs());
        Bitset out(n);
        for (std::size_t j = 0; j < n; ++j) {
          if ((m_.below(j) & e).any()) out.set(j);
        }
        return out;
      }
      case ModalKind::BoxLt: {
        const Bitset e = eval(f.lhs());
        Bitset out(n);
        for (std::size_t j = 0; j < n; ++j) {
          if (m_.strictly_below(j).is_subset_of(e)) out.set(j);
        }
        return out;
      }
      case ModalKind::DiaLt: {
        const Bitset e = eval(f.lhs());
        Bitset out(n);
        for (std::size_t j = 0; j < n; ++j) {
          if ((m_.strictly_below(j) & e).any()) out.set(j);
        }
        return out;
      }
      case ModalKind::Mu:
        return min_positions(m_, eval(f.lhs()));
      case ModalKind::Dyn: {
        Evaluator& sub = revised(f.op_name(), f.dyn_arg());
        return sub.extension(f.lhs());
      }
    }
    throw DomainError("unhandled formula kind");
  }

  Evaluator& revised(const std::string& op, const PropFormula& arg) {
    const auto key = std::make_pair(op, arg.id());
    if (const auto it = subs_.find(key); it != subs_.end()) return *it->second;
    auto ev = std::make_unique<Evaluator>(apply_operator(*reg_, op, m_, arg), *reg_);
    return *subs_.emplace(key, std::move(ev)).first->second;
  }

  PreferenceModel m_;
  const OperatorRegistry* reg_;
  std::vector<ModalFormula> roots_;
  std::unordered_map<const void*, Bitset> memo_;
  std::map<std::pair<std::string, const void*>, std::unique_ptr<Evaluator>> subs_;
};

} // namespace prefdl
