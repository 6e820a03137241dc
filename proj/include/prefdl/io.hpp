#pragma once

// Text formats. Models and graphs are exchanged as one brace-delimited stanza
// per file; transformation specs name a rewriting rule or an explicit case
// table referencing graph files. Printing is deterministic (worlds descending
// by bitmask, relation pairs by position, edges sorted) and parse(print(x))
// reproduces x up to the stored generator-edge order. `#` starts a comment
// running to the end of the line.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "prefdl/dynamics.hpp"
#include "prefdl/model.hpp"
#include "prefdl/parser.hpp"
#include "prefdl/pgraph.hpp"
#include "prefdl/postulates.hpp"
#include "prefdl/witness.hpp"

namespace prefdl {

// ---------------------------------------------------------------------------
// Printing
// ---------------------------------------------------------------------------

// `model { symbols: p q; worlds: 11 10 01 00; leq: 11<=10; }` over several
// lines. The leq list is the full non-reflexive relation with mutual pairs
// merged to `a~b`; re-parsing (which closes transitively) reproduces the
// relation exactly.
inline std::string print_model(const PreferenceModel& m) {
  const std::size_t ns = m.symbols().size();
  std::string out = "model {\n  symbols:";
  for (const std::string& s : m.symbols().names()) out += " " + s;
  out += ";\n  worlds:";
  for (Valuation w : m.worlds()) out += " " + world_name(w, ns);
  out += ";\n";
  std::vector<std::string> rels;
  for (std::size_t i = 0; i < m.size(); ++i) {
    for (std::size_t j = i + 1; j < m.size(); ++j) {
      const std::string a = world_name(m.worlds()[i], ns);
      const std::string b = world_name(m.worlds()[j], ns);
      if (m.rel(i, j) && m.rel(j, i)) {
        rels.push_back(a + "~" + b);
      } else if (m.rel(i, j)) {
        rels.push_back(a + "<=" + b);
      } else if (m.rel(j, i)) {
        rels.push_back(b + "<=" + a);
      }
    }
  }
  if (!rels.empty()) {
    out += "  leq: ";
    for (std::size_t k = 0; k < rels.size(); ++k) {
      if (k > 0) out += ", ";
      out += rels[k];
    }
    out += ";\n";
  }
  out += "}\n";
  return out;
}

namespace detail {

inline std::string print_graph_body(const PGraph& g, const PropFormula* ground) {
  std::string out = "graph {\n  symbols:";
  for (const std::string& s : g.symbols().names()) out += " " + s;
  out += ";\n";
  if (ground != nullptr) out += "  ground: \"" + ground->to_string() + "\";\n";
  if (g.node_count() > 0) {
    out += "  nodes: ";
    for (std::size_t i = 0; i < g.node_count(); ++i) {
      if (i > 0) out += ", ";
      out += "n" + std::to_string(i + 1) + " = \"" + g.nodes()[i].to_string() + "\"";
    }
    out += ";\n";
  }
  std::vector<std::pair<std::size_t, std::size_t>> es = g.edges();
  std::sort(es.begin(), es.end());
  es.erase(std::unique(es.begin(), es.end()), es.end());
  if (!es.empty()) {
    out += "  edges: ";
    for (std::size_t k = 0; k < es.size(); ++k) {
      if (k > 0) out += ", ";
      out += "n" + std::to_string(es[k].first + 1) + " < n" + std::to_string(es[k].second + 1);
    }
    out += ";\n";
  }
  out += "}\n";
  return out;
}

} // namespace detail

inline std::string print_graph(const PGraph& g) { return detail::print_graph_body(g, nullptr); }

inline std::string print_grounded_graph(const GroundedPGraph& g) {
  const PropFormula& ground = g.ground();
  return detail::print_graph_body(g.graph(), &ground);
}

namespace detail {

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

// Embeds a multi-line stanza as a field value: strip the trailing newline and
// deepen every following line by one level.
inline std::string inline_stanza(std::string s) {
  while (!s.empty() && s.back() == '\n') s.pop_back();
  std::string out;
  for (char c : s) {
    out += c;
    if (c == '\n') out += "  ";
  }
  return out;
}

} // namespace detail

inline std::string print_witness(const Witness& w) {
  std::string out = "WITNESS {\n";
  for (const WitnessField& f : w) {
    out += "  " + f.key + ": ";
    std::visit(detail::Overloaded{
                   [&](const std::string& s) { out += s; },
                   [&](const PropFormula& g) { out += "\"" + g.to_string() + "\""; },
                   [&](const ModalFormula& g) { out += "\"" + g.to_string() + "\""; },
                   [&](const PreferenceModel& m) { out += detail::inline_stanza(print_model(m)); },
                   [&](const PGraph& g) { out += detail::inline_stanza(print_graph(g)); },
                   [&](const GroundedPGraph& g) {
                     out += detail::inline_stanza(print_grounded_graph(g));
                   },
               },
               f.value);
    out += ";\n";
  }
  out += "}\n";
  return out;
}

inline std::string print_report(const PostulateReport& r) {
  std::string out = "POSTULATE " + r.postulate + (r.holds ? " HOLDS" : " FAILS") +
                    " instances=" + std::to_string(r.instances) + "\n";
  if (r.witness) out += print_witness(*r.witness);
  return out;
}

inline std::string print_verdict(const std::string& label, const InductionVerdict& v) {
  std::string out =
      label + (v.holds ? " HOLDS" : " FAILS") + " instances=" + std::to_string(v.instances) + "\n";
  if (v.witness) out += print_witness(*v.witness);
  return out;
}

// ---------------------------------------------------------------------------
// Parsing
// ---------------------------------------------------------------------------

namespace detail {

class StanzaParser {
public:
  explicit StanzaParser(std::string_view text) : t_(text) {}

  void skip() {
    while (p_ < t_.size()) {
      const char c = t_[p_];
      if (c == '#') {
        while (p_ < t_.size() && t_[p_] != '\n') ++p_;
      } else if (std::isspace(static_cast<unsigned char>(c))) {
        ++p_;
      } else {
        break;
      }
    }
  }

  std::size_t pos() {
    skip();
    return p_;
  }

  bool at(char c) {
    skip();
    return p_ < t_.size() && t_[p_] == c;
  }

  bool eat(char c) {
    if (!at(c)) return false;
    ++p_;
    return true;
  }

  void expect(char c) {
    if (!eat(c)) throw ParseError(std::string("expected '") + c + "'", pos());
  }

  void expect_end() {
    skip();
    if (p_ != t_.size()) throw ParseError("unexpected text after the stanza", p_);
  }

  static bool ident_char(char c) {
    return std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '-';
  }

  std::string ident() {
    const std::size_t start = pos();
    while (p_ < t_.size() && ident_char(t_[p_])) ++p_;
    if (p_ == start) throw ParseError("expected a name", start);
    return std::string(t_.substr(start, p_ - start));
  }

  std::string path_token() {
    const std::size_t start = pos();
    while (p_ < t_.size() && (ident_char(t_[p_]) || t_[p_] == '.' || t_[p_] == '/')) ++p_;
    if (p_ == start) throw ParseError("expected a file path", start);
    return std::string(t_.substr(start, p_ - start));
  }

  std::string quoted() {
    skip();
    if (p_ >= t_.size() || t_[p_] != '"') throw ParseError("expected a quoted formula", p_);
    const std::size_t start = ++p_;
    while (p_ < t_.size() && t_[p_] != '"') ++p_;
    if (p_ >= t_.size()) throw ParseError("unterminated quote", start - 1);
    std::string s(t_.substr(start, p_ - start));
    ++p_;
    return s;
  }

  void keyword(const char* kw) {
    const std::size_t at = pos();
    if (ident() != kw) throw ParseError(std::string("expected '") + kw + "'", at);
  }

  // Consumes `kw` if it is the next name; leaves the input untouched otherwise.
  bool peek_keyword(const char* kw) {
    skip();
    std::size_t q = p_;
    while (q < t_.size() && ident_char(t_[q])) ++q;
    if (t_.substr(p_, q - p_) != kw) return false;
    p_ = q;
    return true;
  }

  Valuation world(std::size_t ns) {
    const std::size_t at = pos();
    const std::string s = ident();
    if (s.size() != ns || s.find_first_not_of("01") != std::string::npos) {
      throw ParseError("expected a world bitstring with one bit per symbol", at);
    }
    return parse_world_name(s, ns);
  }

private:
  std::string_view t_;
  std::size_t p_ = 0;
};

inline PropFormula parse_prop_at(const std::string& text, const SymbolTable& st, std::size_t at) {
  try {
    return parse_prop(text, st);
  } catch (const ParseError& e) {
    throw ParseError(std::string("in quoted formula: ") + e.what(), at);
  }
}

inline std::vector<std::string> symbol_list(StanzaParser& p) {
  std::vector<std::string> names;
  while (!p.at(';')) names.push_back(p.ident());
  p.expect(';');
  return names;
}

} // namespace detail

inline PreferenceModel parse_model(const std::string& text) {
  detail::StanzaParser p(text);
  p.keyword("model");
  p.expect('{');
  p.keyword("symbols");
  p.expect(':');
  const SymbolTable st(detail::symbol_list(p));
  p.keyword("worlds");
  p.expect(':');
  std::vector<Valuation> worlds;
  while (!p.at(';')) worlds.push_back(p.world(st.size()));
  p.expect(';');
  std::vector<std::pair<Valuation, Valuation>> pairs;
  if (p.peek_keyword("leq")) {
    p.expect(':');
    while (true) {
      const Valuation a = p.world(st.size());
      if (p.eat('~')) {
        const Valuation b = p.world(st.size());
        pairs.emplace_back(a, b);
        pairs.emplace_back(b, a);
      } else {
        p.expect('<');
        p.expect('=');
        const Valuation b = p.world(st.size());
        pairs.emplace_back(a, b);
      }
      if (!p.eat(',')) break;
    }
    p.expect(';');
  }
  p.expect('}');
  p.expect_end();
  PreferenceModel m = PreferenceModel::from_valuation_pairs(st, std::move(worlds), pairs);
  m.close_transitive();
  return m;
}

// A graph file with or without a `ground:` line.
struct ParsedGraph {
  std::optional<PropFormula> ground;
  PGraph graph;
};

inline ParsedGraph parse_graph(const std::string& text) {
  detail::StanzaParser p(text);
  p.keyword("graph");
  p.expect('{');
  p.keyword("symbols");
  p.expect(':');
  const SymbolTable st(detail::symbol_list(p));
  std::optional<PropFormula> ground;
  if (p.peek_keyword("ground")) {
    p.expect(':');
    const std::size_t at = p.pos();
    ground = detail::parse_prop_at(p.quoted(), st, at);
    p.expect(';');
  }
  std::vector<PropFormula> nodes;
  std::vector<std::string> labels;
  if (p.peek_keyword("nodes")) {
    p.expect(':');
    while (true) {
      const std::size_t lat = p.pos();
      std::string label = p.ident();
      if (std::find(labels.begin(), labels.end(), label) != labels.end()) {
        throw ParseError("duplicate node label '" + label + "'", lat);
      }
      p.expect('=');
      const std::size_t at = p.pos();
      nodes.push_back(detail::parse_prop_at(p.quoted(), st, at));
      labels.push_back(std::move(label));
      if (!p.eat(',')) break;
    }
    p.expect(';');
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  if (p.peek_keyword("edges")) {
    p.expect(':');
    while (true) {
      const std::size_t at = p.pos();
      const std::string a = p.ident();
      p.expect('<');
      const std::string b = p.ident();
      auto idx = [&](const std::string& l) -> std::size_t {
        const auto it = std::find(labels.begin(), labels.end(), l);
        if (it == labels.end()) throw ParseError("unknown node label '" + l + "'", at);
        return static_cast<std::size_t>(it - labels.begin());
      };
      edges.emplace_back(idx(a), idx(b));
      if (!p.eat(',')) break;
    }
    p.expect(';');
  }
  p.expect('}');
  p.expect_end();
  return {std::move(ground), PGraph(st, std::move(nodes), edges)};
}

// Interprets a parsed graph file as a grounded graph; errors when the file
// has no `ground:` line.
inline GroundedPGraph as_grounded(const ParsedGraph& pg) {
  if (!pg.ground) {
    throw DomainError("the graph file has no ground: line but a grounded graph is required");
  }
  return GroundedPGraph(*pg.ground, pg.graph);
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DomainError("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline PreferenceModel parse_model_file(const std::string& path) {
  return parse_model(read_file(path));
}

inline ParsedGraph parse_graph_file(const std::string& path) {
  return parse_graph(read_file(path));
}

// `transform { name: ...; kind: grounded|plain; rule: prepend-mu | table {
// in.pg -> out.pg; ... }; }`. `prepend-mu` names the built-in revision
// rewriting and requires kind grounded; a table lists explicit input/output
// graph cases (paths relative to `base`), matches inputs up to node
// fingerprints and priority closure, and leaves unmatched graphs unchanged,
// so an empty table is the identity rewriting.
inline GraphTransformation parse_transform(const std::string& text,
                                           const std::filesystem::path& base) {
  detail::StanzaParser p(text);
  p.keyword("transform");
  p.expect('{');
  p.keyword("name");
  p.expect(':');
  const std::string name = p.ident();
  p.expect(';');
  p.keyword("kind");
  p.expect(':');
  const std::size_t kat = p.pos();
  const std::string kind = p.ident();
  p.expect(';');
  if (kind != "grounded" && kind != "plain") {
    throw ParseError("kind must be 'grounded' or 'plain'", kat);
  }
  const bool grounded = (kind == "grounded");
  p.keyword("rule");
  p.expect(':');
  const std::size_t rat = p.pos();
  const std::string rule = p.ident();
  GraphTransformation t;
  if (rule == "prepend-mu") {
    if (!grounded) throw ParseError("rule prepend-mu requires kind: grounded", rat);
    t = revision_graph_transformation();
    t.name = name;
    p.expect(';');
  } else if (rule == "table") {
    p.expect('{');
    std::vector<std::pair<ParsedGraph, ParsedGraph>> raw;
    while (!p.at('}')) {
      const std::string in_path = p.path_token();
      p.expect('-');
      p.expect('>');
      const std::string out_path = p.path_token();
      p.expect(';');
      ParsedGraph in = parse_graph_file((base / in_path).string());
      ParsedGraph out = parse_graph_file((base / out_path).string());
      if (!(in.graph.symbols() == out.graph.symbols()) ||
          (!raw.empty() && !(in.graph.symbols() == raw.front().first.graph.symbols()))) {
        throw DomainError("table case graphs must all use the same symbol table");
      }
      raw.emplace_back(std::move(in), std::move(out));
    }
    p.expect('}');
    p.expect(';');
    if (grounded) {
      std::vector<std::pair<GroundedPGraph, GroundedPGraph>> cases;
      for (const auto& [in, out] : raw) cases.emplace_back(as_grounded(in), as_grounded(out));
      t = make_grounded_table_transformation(name, std::move(cases));
    } else {
      std::vector<std::pair<PGraph, PGraph>> cases;
      for (const auto& [in, out] : raw) {
        if (in.ground || out.ground) {
          throw DomainError("a plain table case must not have a ground: line");
        }
        cases.emplace_back(in.graph, out.graph);
      }
      t = make_table_transformation(name, std::move(cases));
    }
  } else {
    throw ParseError("rule must be 'prepend-mu' or 'table'", rat);
  }
  p.expect('}');
  p.expect_end();
  return t;
}

inline GraphTransformation parse_transform_file(const std::string& path) {
  return parse_transform(read_file(path), std::filesystem::path(path).parent_path());
}

} // namespace prefdl
