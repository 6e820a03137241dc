// Command-line front end: one subcommand per library construct, thin bindings
// only. Exit codes: 0 = success / property holds, 1 = a check failed (the
// witness is printed), 2 = usage, parse, or validation error (one-line
// diagnostic on stderr).
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "prefdl/prefdl.hpp"

namespace {

using namespace prefdl;

constexpr int kOk = 0;
constexpr int kCheckFailed = 1;
constexpr int kUsageError = 2;

// Exhaustive sweeps refuse symbol counts above this cap unless the user
// raises it (and accepts the cost) through the environment.
int exhaustive_cap() {
  const char* env = std::getenv("PREFDL_MAX_SYMBOLS");
  if (env == nullptr) return kDefaultExhaustiveCap;
  char* end = nullptr;
  const long v = std::strtol(env, &end, 10);
  if (end == env || *end != '\0' || v < 0 || v > static_cast<long>(kMaxSymbols)) {
    throw DomainError("PREFDL_MAX_SYMBOLS must be an integer between 0 and " +
                      std::to_string(kMaxSymbols));
  }
  return static_cast<int>(v);
}

void require_within_cap(int symbols) {
  const int cap = exhaustive_cap();
  if (symbols > cap) {
    throw DomainError("--symbols " + std::to_string(symbols) +
                      " exceeds the exhaustive cap (" + std::to_string(cap) +
                      "); set PREFDL_MAX_SYMBOLS=" + std::to_string(symbols) +
                      " to accept the cost");
  }
}

SymbolTable generated_symbols(int count) {
  static const std::vector<std::string> pool = {"p", "q", "r", "s", "t", "u", "v", "w"};
  if (count < 0 || static_cast<std::size_t>(count) > pool.size()) {
    throw DomainError("--symbols must be between 0 and " + std::to_string(pool.size()) +
                      " (file-based inputs may name up to " + std::to_string(kMaxSymbols) +
                      " symbols)");
  }
  return SymbolTable(
      std::vector<std::string>(pool.begin(), pool.begin() + static_cast<std::size_t>(count)));
}

OperatorRegistry build_registry(const std::vector<std::string>& transform_paths) {
  OperatorRegistry reg;
  for (const std::string& path : transform_paths) {
    reg.add(operator_from_transformation(parse_transform_file(path)));
  }
  return reg;
}

GraphTransformation builtin_transformation(const std::string& name) {
  if (name == "natural-revision") return revision_graph_transformation();
  if (name == "identity-plain") return identity_transformation(false);
  if (name == "identity-grounded") return identity_transformation(true);
  throw DomainError("unknown built-in transformation \"" + name +
                    "\" (expected natural-revision, identity-plain, or identity-grounded)");
}

GraphTransformation resolve_transformation(const std::string& transform_path,
                                           const std::string& builtin_name) {
  if (!transform_path.empty() && !builtin_name.empty()) {
    throw DomainError("pass either --transform or --builtin, not both");
  }
  if (!transform_path.empty()) return parse_transform_file(transform_path);
  if (!builtin_name.empty()) return builtin_transformation(builtin_name);
  throw DomainError("pass a transformation via --transform FILE or --builtin NAME");
}

const DynamicOperator& find_operator(const OperatorRegistry& reg, const std::string& name) {
  const DynamicOperator* op = reg.find(name);
  if (op == nullptr) throw DomainError("unknown operator \"" + name + "\"");
  return *op;
}

std::string join_stanzas(const std::vector<PreferenceModel>& models) {
  std::string out;
  for (std::size_t i = 0; i < models.size(); ++i) {
    if (i > 0) out += "\n";
    out += print_model(models[i]);
  }
  return out;
}

struct Outcome {
  int code = kOk;
  std::string text;
};

} // namespace

int main(int argc, char** argv) {
  CLI::App app{"Symbolic engine for preference models, priority graphs, and belief revision"};
  app.require_subcommand(1);
  std::string output_path;
  app.add_option("--output", output_path, "Also write the result to this file");

  // --- check-model ---------------------------------------------------------
  auto* cm = app.add_subcommand("check-model", "Parse and validate a model file; print it back");
  std::string cm_file;
  cm->add_option("file", cm_file, "Model file")->required();

  // --- check-graph ---------------------------------------------------------
  auto* cg = app.add_subcommand("check-graph", "Parse and validate a graph file; print it back");
  std::string cg_file;
  cg->add_option("file", cg_file, "Graph file (plain or grounded)")->required();

  // --- induce --------------------------------------------------------------
  auto* in = app.add_subcommand("induce", "Order the worlds of a formula by a plain graph");
  std::string in_graph, in_worlds = "T";
  in->add_option("--graph", in_graph, "Plain graph file")->required();
  in->add_option("--worlds", in_worlds, "Formula whose satisfying valuations become the worlds");

  // --- canonical -----------------------------------------------------------
  auto* ca = app.add_subcommand("canonical", "Extract the canonical graph of a model");
  std::string ca_model;
  ca->add_option("--model", ca_model, "Model file")->required();

  // --- ground-induce -------------------------------------------------------
  auto* gi = app.add_subcommand("ground-induce", "Print the model a grounded graph induces");
  std::string gi_graph;
  gi->add_option("--graph", gi_graph, "Grounded graph file")->required();

  // --- mu ------------------------------------------------------------------
  auto* mucmd = app.add_subcommand("mu", "Formula of the most plausible psi-worlds of a grounded graph");
  std::string mu_graph, mu_psi;
  mucmd->add_option("--graph", mu_graph, "Grounded graph file")->required();
  mucmd->add_option("--psi", mu_psi, "Propositional formula")->required();

  // --- revise --------------------------------------------------------------
  auto* rv = app.add_subcommand("revise", "Revise a model, or rewrite a grounded graph");
  std::string rv_model, rv_graph, rv_phi, rv_operator = "natural";
  std::vector<std::string> rv_transforms;
  rv->add_option("--model", rv_model, "Model file (model-level revision)");
  rv->add_option("--graph", rv_graph, "Graph file (graph-level rewriting)");
  rv->add_option("--phi", rv_phi, "Propositional input formula")->required();
  rv->add_option("--operator", rv_operator, "Operator name (model mode; default natural)");
  rv->add_option("--transform", rv_transforms,
                 "Transformation file: extra operator (model mode) or the rewriting to apply "
                 "(graph mode)");

  // --- eval ----------------------------------------------------------------
  auto* ev = app.add_subcommand("eval", "Evaluate a modal/dynamic formula on a model");
  std::string ev_model, ev_formula, ev_world;
  std::vector<std::string> ev_transforms;
  ev->add_option("--model", ev_model, "Model file")->required();
  ev->add_option("--formula", ev_formula, "Modal formula")->required();
  ev->add_option("--world", ev_world, "Evaluate at this world only (e.g. 10)");
  ev->add_option("--transform", ev_transforms, "Transformation files adding dynamic operators");

  // --- postulate -----------------------------------------------------------
  auto* po = app.add_subcommand("postulate", "Check revision postulates");
  po->require_subcommand(1);
  auto* po_faith = po->add_subcommand("faith", "Promoted worlds are exactly the prior best");
  auto* po_cb = po->add_subcommand("cb", "Order outside the promoted set is untouched");
  std::string pf_model, pf_phi, pf_revised, pf_operator = "natural";
  std::vector<std::string> pf_transforms;
  for (auto* sub : {po_faith, po_cb}) {
    sub->add_option("--model", pf_model, "Model file")->required();
    sub->add_option("--phi", pf_phi, "Input formula")->required();
    sub->add_option("--revised", pf_revised, "Revised model file (default: apply --operator)");
    sub->add_option("--operator", pf_operator, "Operator producing the revised model");
    sub->add_option("--transform", pf_transforms, "Transformation files adding operators");
  }
  auto* po_ax = po->add_subcommand("cb-axioms", "Sweep the reduction axiom schemata");
  int ax_symbols = 2;
  std::size_t ax_depth = 2;
  std::string ax_operator = "natural";
  std::vector<std::string> ax_transforms;
  po_ax->add_option("--symbols", ax_symbols, "Symbol count for the sweep (default 2)");
  po_ax->add_option("--depth", ax_depth, "Connective depth of the swept consequents (default 2)");
  po_ax->add_option("--operator", ax_operator, "Operator under test (default natural)");
  po_ax->add_option("--transform", ax_transforms, "Transformation files adding operators");

  // --- equiv ---------------------------------------------------------------
  auto* eq = app.add_subcommand("equiv", "Do two plain graphs induce the same order on the "
                                         "phi-worlds?");
  std::string eq_g1, eq_g2, eq_phi;
  eq->add_option("--g1", eq_g1, "First plain graph file")->required();
  eq->add_option("--g2", eq_g2, "Second plain graph file")->required();
  eq->add_option("--phi", eq_phi, "World-space formula")->required();

  // --- induction -----------------------------------------------------------
  auto* id = app.add_subcommand("induction", "Does the rewriting perform the operator on every "
                                             "induced model?");
  std::string id_transform, id_builtin, id_operator = "natural";
  int id_symbols = 2;
  id->add_option("--transform", id_transform, "Transformation file");
  id->add_option("--builtin", id_builtin, "Built-in transformation name");
  id->add_option("--operator", id_operator, "Model-level operator to compare against");
  id->add_option("--symbols", id_symbols, "Symbol count for the sweep (default 2)");

  // --- relevance -----------------------------------------------------------
  auto* rl = app.add_subcommand("relevance", "Does the rewriting respect graph equivalence?");
  std::string rl_transform, rl_builtin;
  int rl_symbols = 2;
  rl->add_option("--transform", rl_transform, "Transformation file");
  rl->add_option("--builtin", rl_builtin, "Built-in transformation name");
  rl->add_option("--symbols", rl_symbols, "Symbol count for the sweep (default 2)");

  // --- gap-demo ------------------------------------------------------------
  auto* gd = app.add_subcommand("gap-demo", "Search for a faithful-but-order-disturbing plain "
                                            "rewriting certificate");
  int gd_symbols = 2;
  bool gd_grounded = false;
  gd->add_option("--symbols", gd_symbols, "Symbol count for the search (default 2)");
  gd->add_flag("--grounded", gd_grounded, "Run the search over grounded rewritings instead");

  // --- enumerate -----------------------------------------------------------
  auto* en = app.add_subcommand("enumerate", "List models, model counts, or semantic classes");
  int en_symbols = 2;
  bool en_count = false, en_classes = false;
  int en_sample = 0;
  std::uint64_t en_seed = 0;
  en->add_option("--symbols", en_symbols, "Symbol count (default 2)");
  en->add_flag("--count", en_count, "Print only the number of models");
  en->add_flag("--classes", en_classes, "Print one formula per semantic class");
  en->add_option("--sample", en_sample, "Print this many seeded random models instead");
  en->add_option("--seed", en_seed, "Sampling seed (default 0)");

  // --- verify --------------------------------------------------------------
  auto* vf = app.add_subcommand("verify", "Run the acceptance criteria");
  bool vf_all = false;
  int vf_symbols = 2;
  vf->add_flag("--all", vf_all, "Run every criterion")->required();
  vf->add_option("--symbols", vf_symbols, "Symbol count (default 2)");

  // Let --output (a top-level option) appear after the subcommand name too.
  for (CLI::App* sub : app.get_subcommands([](const CLI::App*) { return true; })) {
    sub->fallthrough();
    for (CLI::App* nested : sub->get_subcommands([](const CLI::App*) { return true; })) {
      nested->fallthrough();
    }
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? kOk : kUsageError;
  }

  Outcome res;
  try {
    if (*cm) {
      const PreferenceModel m = parse_model_file(cm_file);
      if (const ValidationResult v = validate_model(m); !v.ok) throw DomainError(v.message);
      res.text = print_model(m);
    } else if (*cg) {
      const ParsedGraph pg = parse_graph_file(cg_file);
      if (const ValidationResult v = validate_graph(pg.graph); !v.ok) throw DomainError(v.message);
      res.text = pg.ground ? print_grounded_graph(as_grounded(pg)) : print_graph(pg.graph);
    } else if (*in) {
      const ParsedGraph pg = parse_graph_file(in_graph);
      if (pg.ground) {
        throw DomainError("the graph file has a ground: line; use ground-induce");
      }
      const SymbolTable& st = pg.graph.symbols();
      const std::vector<Valuation> worlds = worlds_of(fingerprint(parse_prop(in_worlds, st), st));
      res.text = print_model(induced_order(pg.graph, worlds));
    } else if (*ca) {
      res.text = print_graph(canonical_graph(parse_model_file(ca_model)));
    } else if (*gi) {
      res.text = print_model(grounded_induce(as_grounded(parse_graph_file(gi_graph))));
    } else if (*mucmd) {
      const GroundedPGraph g = as_grounded(parse_graph_file(mu_graph));
      res.text = mu(g, parse_prop(mu_psi, g.symbols())).to_string() + "\n";
    } else if (*rv) {
      if (rv_model.empty() == rv_graph.empty()) {
        throw DomainError("pass exactly one of --model or --graph");
      }
      if (!rv_model.empty()) {
        const PreferenceModel m = parse_model_file(rv_model);
        const OperatorRegistry reg = build_registry(rv_transforms);
        const PropFormula phi = parse_prop(rv_phi, m.symbols());
        res.text = print_model(apply_operator(reg, rv_operator, m, phi));
      } else {
        if (rv_transforms.size() > 1) {
          throw DomainError("graph mode takes at most one --transform");
        }
        const GraphTransformation t = rv_transforms.empty()
                                          ? revision_graph_transformation()
                                          : parse_transform_file(rv_transforms.front());
        const ParsedGraph pg = parse_graph_file(rv_graph);
        if (t.grounded) {
          const GroundedPGraph g = as_grounded(pg);
          const PropFormula phi = parse_prop(rv_phi, g.symbols());
          res.text = print_grounded_graph(t.apply_grounded(g, phi));
        } else {
          if (pg.ground) {
            throw DomainError("transformation \"" + t.name +
                              "\" rewrites plain graphs but the file has a ground: line");
          }
          const PropFormula phi = parse_prop(rv_phi, pg.graph.symbols());
          res.text = print_graph(t.apply_plain(pg.graph, phi));
        }
      }
    } else if (*ev) {
      const PreferenceModel m = parse_model_file(ev_model);
      const OperatorRegistry reg = build_registry(ev_transforms);
      Evaluator evaluator(m, reg);
      const ModalFormula f = parse_modal(ev_formula, m.symbols());
      if (!ev_world.empty()) {
        const int pos = m.pos_of(parse_world_name(ev_world, m.symbols().size()));
        if (pos < 0) throw DomainError("world '" + ev_world + "' is not in the model");
        const bool sat = evaluator.satisfies_at(static_cast<std::size_t>(pos), f);
        res.text = sat ? "true\n" : "false\n";
        res.code = sat ? kOk : kCheckFailed;
      } else {
        for (std::size_t i = 0; i < m.size(); ++i) {
          res.text += world_name(m.worlds()[i], m.symbols().size()) + " " +
                      (evaluator.satisfies_at(i, f) ? "true" : "false") + "\n";
        }
      }
    } else if (*po_faith || *po_cb) {
      const PreferenceModel m = parse_model_file(pf_model);
      const PropFormula phi = parse_prop(pf_phi, m.symbols());
      const PreferenceModel revised =
          pf_revised.empty()
              ? apply_operator(build_registry(pf_transforms), pf_operator, m, phi)
              : parse_model_file(pf_revised);
      const PostulateReport rep =
          *po_faith ? check_faith(m, phi, revised) : check_cb(m, phi, revised);
      res.text = print_report(rep);
      res.code = rep.holds ? kOk : kCheckFailed;
    } else if (*po_ax) {
      require_within_cap(ax_symbols);
      const SymbolTable st = generated_symbols(ax_symbols);
      const OperatorRegistry reg = build_registry(ax_transforms);
      const PostulateReport rep = check_cb2_axioms(find_operator(reg, ax_operator), st, ax_depth,
                                                   static_cast<std::size_t>(ax_symbols));
      res.text = print_report(rep);
      res.code = rep.holds ? kOk : kCheckFailed;
    } else if (*eq) {
      const ParsedGraph g1 = parse_graph_file(eq_g1);
      const ParsedGraph g2 = parse_graph_file(eq_g2);
      if (g1.ground || g2.ground) {
        throw DomainError("equivalence compares plain graphs; compare grounded graphs through "
                          "ground-induce");
      }
      if (!(g1.graph.symbols() == g2.graph.symbols())) {
        throw DomainError("the two graphs declare different symbol tables");
      }
      const PropFormula phi = parse_prop(eq_phi, g1.graph.symbols());
      const bool holds = phi_equivalent(g1.graph, g2.graph, phi);
      res.text = holds ? "HOLDS\n" : "FAILS\n";
      res.code = holds ? kOk : kCheckFailed;
    } else if (*id) {
      require_within_cap(id_symbols);
      const GraphTransformation t = resolve_transformation(id_transform, id_builtin);
      const OperatorRegistry reg;
      const SymbolTable st = generated_symbols(id_symbols);
      const InductionVerdict v = induction_check(t, find_operator(reg, id_operator), st, id_symbols);
      res.text = print_verdict("INDUCTION", v);
      res.code = v.holds ? kOk : kCheckFailed;
    } else if (*rl) {
      require_within_cap(rl_symbols);
      const GraphTransformation t = resolve_transformation(rl_transform, rl_builtin);
      const SymbolTable st = generated_symbols(rl_symbols);
      const InductionVerdict v = relevance_check(t, st, rl_symbols);
      res.text = print_verdict("RELEVANCE", v);
      res.code = v.holds ? kOk : kCheckFailed;
    } else if (*gd) {
      require_within_cap(gd_symbols);
      const SymbolTable st = generated_symbols(gd_symbols);
      const PostulateReport rep =
          demonstrate_plain_graph_gap(st, gd_grounded, static_cast<std::size_t>(gd_symbols));
      res.text = print_report(rep);
      res.code = rep.holds ? kOk : kCheckFailed;
    } else if (*en) {
      const SymbolTable st = generated_symbols(en_symbols);
      if (en_sample > 0) {
        res.text = join_stanzas(sample_models(st, en_sample, en_seed));
      } else if (en_classes) {
        require_within_cap(en_symbols);
        for (const Bitset& bits : semantic_classes(st)) {
          res.text += class_formula(bits, st).to_string() + "\n";
        }
      } else {
        require_within_cap(en_symbols);
        const std::vector<PreferenceModel> models = enumerate_models(st, en_symbols);
        res.text = en_count ? std::to_string(models.size()) + "\n" : join_stanzas(models);
      }
    } else if (*vf) {
      require_within_cap(vf_symbols);
      const SymbolTable st = generated_symbols(vf_symbols);
      bool all_pass = true;
      for (const CriterionResult& c : run_criteria(st)) {
        res.text += print_criterion(c);
        all_pass = all_pass && c.pass;
      }
      res.text += all_pass ? "overall: PASS\n" : "overall: FAIL\n";
      res.code = all_pass ? kOk : kCheckFailed;
    }
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const DomainError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsageError;
  }

  std::cout << res.text;
  if (!output_path.empty()) {
    std::ofstream out(output_path, std::ios::binary);
    if (!out) {
      std::cerr << "error: cannot open output file '" << output_path << "'\n";
      return kUsageError;
    }
    out << res.text;
  }
  return res.code;
}
