#pragma once

#include <cctype>
#include <cstddef>
#include <string>
#include <vector>

#include "prefdl/errors.hpp"
#include "prefdl/formula.hpp"
#include "prefdl/modal.hpp"
#include "prefdl/symbols.hpp"

namespace prefdl {

namespace detail {

enum class TokKind {
  End,
  LParen,
  RParen,
  Not,
  And,
  Or,
  Implies,
  Iff,
  Ident,
  TopT,
  BotT,
  UnivA,
  ExistE,
  BoxLeq,
  BoxLt,
  DiaLeq,
  DiaLt,
  StarOpen, // "[*"
  RBracket  // "]"
};

struct Tok {
  TokKind kind{};
  std::string text;
  std::size_t pos{};
};

inline const char* tok_name(TokKind k) {
  switch (k) {
    case TokKind::End: return "end of input";
    case TokKind::LParen: return "'('";
    case TokKind::RParen: return "')'";
    case TokKind::Not: return "'~'";
    case TokKind::And: return "'&'";
    case TokKind::Or: return "'|'";
    case TokKind::Implies: return "'->'";
    case TokKind::Iff: return "'<->'";
    case TokKind::Ident: return "identifier";
    case TokKind::TopT: return "'T'";
    case TokKind::BotT: return "'F'";
    case TokKind::UnivA: return "'A'";
    case TokKind::ExistE: return "'E'";
    case TokKind::BoxLeq: return "'[<=]'";
    case TokKind::BoxLt: return "'[<]'";
    case TokKind::DiaLeq: return "'<<=>'";
    case TokKind::DiaLt: return "'<<>'";
    case TokKind::StarOpen: return "'[*'";
    case TokKind::RBracket: return "']'";
  }
  return "?";
}

inline std::vector<Tok> lex(const std::string& src) {
  std::vector<Tok> out;
  std::size_t i = 0;
  const std::size_t n = src.size();
  auto push = [&](TokKind k, std::size_t pos, std::string text = {}) {
    out.push_back(Tok{k, std::move(text), pos});
  };
  while (i < n) {
    const char c = src[i];
    if (c == ' ' || c == '\t' || c == '\r' || c == '\n') {
      ++i;
      continue;
    }
    const std::size_t pos = i;
    switch (c) {
      case '(': push(TokKind::LParen, pos); ++i; continue;
      case ')': push(TokKind::RParen, pos); ++i; continue;
      case '~': push(TokKind::Not, pos); ++i; continue;
      case '&': push(TokKind::And, pos); ++i; continue;
      case '|': push(TokKind::Or, pos); ++i; continue;
      case ']': push(TokKind::RBracket, pos); ++i; continue;
      case '-':
        if (i + 1 < n && src[i + 1] == '>') {
          push(TokKind::Implies, pos);
          i += 2;
          continue;
        }
        throw ParseError("expected '->'", pos);
      case '<':
        // Longest match among "<<=>", "<<>", "<->".
        if (src.compare(i, 4, "<<=>") == 0) {
          push(TokKind::DiaLeq, pos);
          i += 4;
          continue;
        }
        if (src.compare(i, 3, "<<>") == 0) {
          push(TokKind::DiaLt, pos);
          i += 3;
          continue;
        }
        if (src.compare(i, 3, "<->") == 0) {
          push(TokKind::Iff, pos);
          i += 3;
          continue;
        }
        throw ParseError("expected '<->', '<<=>' or '<<>'", pos);
      case '[':
        if (src.compare(i, 4, "[<=]") == 0) {
          push(TokKind::BoxLeq, pos);
          i += 4;
          continue;
        }
        if (src.compare(i, 3, "[<]") == 0) {
          push(TokKind::BoxLt, pos);
          i += 3;
          continue;
        }
        if (src.compare(i, 2, "[*") == 0) {
          push(TokKind::StarOpen, pos);
          i += 2;
          continue;
        }
        throw ParseError("expected '[<=]', '[<]' or '[*'", pos);
      default: break;
    }
    if (c == 'T') { push(TokKind::TopT, pos); ++i; continue; }
    if (c == 'F') { push(TokKind::BotT, pos); ++i; continue; }
    if (c == 'A') { push(TokKind::UnivA, pos); ++i; continue; }
    if (c == 'E') { push(TokKind::ExistE, pos); ++i; continue; }
    if (c >= 'a' && c <= 'z') {
      std::size_t j = i + 1;
      while (j < n && ((src[j] >= 'a' && src[j] <= 'z') ||
                       (src[j] >= '0' && src[j] <= '9') || src[j] == '_')) {
        ++j;
      }
      push(TokKind::Ident, pos, src.substr(i, j - i));
      i = j;
      continue;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", pos);
  }
  out.push_back(Tok{TokKind::End, {}, n});
  return out;
}

// Recursive-descent parser over the shared token stream. The propositional
// entry point rejects modal tokens; the modal entry point accepts both and
// re-enters the propositional grammar for dynamic-operator arguments.
class Parser {
public:
  Parser(const std::string& src, const SymbolTable& st)
      : toks_(lex(src)), st_(&st) {}

  PropFormula parse_prop_top() {
    PropFormula f = prop_iff();
    expect_end();
    return f;
  }

  ModalFormula parse_modal_top() {
    ModalFormula f = modal_iff();
    expect_end();
    return f;
  }

private:
  const Tok& cur() const { return toks_[idx_]; }
  void advance() { ++idx_; }
  bool accept(TokKind k) {
    if (cur().kind == k) {
      advance();
      return true;
    }
    return false;
  }
  void expect(TokKind k, const char* what) {
    if (!accept(k)) {
      throw ParseError(std::string("expected ") + what + ", found " +
                           tok_name(cur().kind),
                       cur().pos);
    }
  }
  void expect_end() {
    if (cur().kind != TokKind::End) {
      throw ParseError(std::string("unexpected trailing ") + tok_name(cur().kind),
                       cur().pos);
    }
  }

  [[noreturn]] void unexpected(const char* where) {
    throw ParseError(std::string("unexpected ") + tok_name(cur().kind) + " in " +
                         where,
                     cur().pos);
  }

  std::string expect_symbol() {
    if (cur().kind != TokKind::Ident) unexpected("formula");
    const Tok t = cur();
    if (!st_->index_of(t.text).has_value()) {
      throw ParseError("unknown symbol '" + t.text + "'", t.pos);
    }
    advance();
    return t.text;
  }

  // ---- propositional grammar ----
  PropFormula prop_iff() {
    PropFormula f = prop_imp();
    while (cur().kind == TokKind::Iff) {
      advance();
      f = PropFormula::iff(std::move(f), prop_imp());
    }
    return f;
  }
  PropFormula prop_imp() {
    PropFormula f = prop_or();
    if (accept(TokKind::Implies)) {
      return PropFormula::implies(std::move(f), prop_imp());
    }
    return f;
  }
  PropFormula prop_or() {
    PropFormula f = prop_and();
    while (cur().kind == TokKind::Or) {
      advance();
      f = PropFormula::disj(std::move(f), prop_and());
    }
    return f;
  }
  PropFormula prop_and() {
    PropFormula f = prop_unary();
    while (cur().kind == TokKind::And) {
      advance();
      f = PropFormula::conj(std::move(f), prop_unary());
    }
    return f;
  }
  PropFormula prop_unary() {
    if (accept(TokKind::Not)) return PropFormula::neg(prop_unary());
    return prop_primary();
  }
  PropFormula prop_primary() {
    switch (cur().kind) {
      case TokKind::LParen: {
        advance();
        PropFormula f = prop_iff();
        expect(TokKind::RParen, "')'");
        return f;
      }
      case TokKind::TopT: advance(); return PropFormula::top();
      case TokKind::BotT: advance(); return PropFormula::bottom();
      case TokKind::Ident: return PropFormula::atom(expect_symbol());
      default: unexpected("propositional formula");
    }
  }

  // ---- modal grammar ----
  ModalFormula modal_iff() {
    ModalFormula f = modal_imp();
    while (cur().kind == TokKind::Iff) {
      advance();
      f = ModalFormula::iff(std::move(f), modal_imp());
    }
    return f;
  }
  ModalFormula modal_imp() {
    ModalFormula f = modal_or();
    if (accept(TokKind::Implies)) {
      return ModalFormula::implies(std::move(f), modal_imp());
    }
    return f;
  }
  ModalFormula modal_or() {
    ModalFormula f = modal_and();
    while (cur().kind == TokKind::Or) {
      advance();
      f = ModalFormula::disj(std::move(f), modal_and());
    }
    return f;
  }
  ModalFormula modal_and() {
    ModalFormula f = modal_unary();
    while (cur().kind == TokKind::And) {
      advance();
      f = ModalFormula::conj(std::move(f), modal_unary());
    }
    return f;
  }
  ModalFormula modal_unary() {
    switch (cur().kind) {
      case TokKind::Not: advance(); return ModalFormula::neg(modal_unary());
      case TokKind::UnivA: advance(); return ModalFormula::univ(modal_unary());
      case TokKind::ExistE: advance(); return ModalFormula::exist(modal_unary());
      case TokKind::BoxLeq: advance(); return ModalFormula::box_leq(modal_unary());
      case TokKind::DiaLeq: advance(); return ModalFormula::dia_leq(modal_unary());
      case TokKind::BoxLt: advance(); return ModalFormula::box_lt(modal_unary());
      case TokKind::DiaLt: advance(); return ModalFormula::dia_lt(modal_unary());
      case TokKind::StarOpen: {
        advance();
        if (cur().kind != TokKind::Ident) {
          throw ParseError("expected operator name after '[*'", cur().pos);
        }
        std::string op = cur().text;
        advance();
        PropFormula arg = prop_iff();
        expect(TokKind::RBracket, "']'");
        return ModalFormula::dyn(std::move(op), std::move(arg), modal_unary());
      }
      default: break;
    }
    // "mu" is a contextual keyword: an identifier immediately followed by '('.
    if (cur().kind == TokKind::Ident && cur().text == "mu" &&
        toks_[idx_ + 1].kind == TokKind::LParen) {
      advance();
      advance();
      ModalFormula body = modal_iff();
      expect(TokKind::RParen, "')'");
      return ModalFormula::mu(std::move(body));
    }
    return modal_primary();
  }
  ModalFormula modal_primary() {
    switch (cur().kind) {
      case TokKind::LParen: {
        advance();
        ModalFormula f = modal_iff();
        expect(TokKind::RParen, "')'");
        return f;
      }
      case TokKind::TopT: advance(); return ModalFormula::top();
      case TokKind::BotT: advance(); return ModalFormula::bottom();
      case TokKind::Ident: return ModalFormula::atom(expect_symbol());
      default: unexpected("formula");
    }
  }

  std::vector<Tok> toks_;
  const SymbolTable* st_;
  std::size_t idx_ = 0;
};

} // namespace detail

inline PropFormula parse_prop(const std::string& src, const SymbolTable& st) {
  return detail::Parser(src, st).parse_prop_top();
}

inline ModalFormula parse_modal(const std::string& src, const SymbolTable& st) {
  return detail::Parser(src, st).parse_modal_top();
}

} // namespace prefdl
