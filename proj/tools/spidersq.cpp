// Command-line interface: parse, models, entails, apply, check, derive and
// square. Exit codes: 0 success / holds / valid / found, 1 countermodel /
// invalid / not found, 2 any error.

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "spidersq/dot.hpp"
#include "spidersq/dsl.hpp"
#include "spidersq/greimas.hpp"
#include "spidersq/json_io.hpp"
#include "spidersq/search.hpp"
#include "spidersq/semantics.hpp"

namespace {

using namespace spidersq;

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot read '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path.string() + "'");
  out << text;
}

Document load_document(const std::string& path) { return parse_document(slurp(path)); }

// FILE[:NAME,...] -> (file, names); an empty list means "everything".
std::pair<std::string, std::vector<std::string>> split_spec(const std::string& spec) {
  auto pos = spec.find(':');
  if (pos == std::string::npos) return {spec, {}};
  std::string file = spec.substr(0, pos);
  std::string rest = spec.substr(pos + 1);
  std::vector<std::string> names;
  size_t start = 0;
  for (;;) {
    auto comma = rest.find(',', start);
    std::string n = rest.substr(start, comma == std::string::npos ? std::string::npos
                                                                  : comma - start);
    if (!n.empty()) names.push_back(n);
    if (comma == std::string::npos) break;
    start = comma + 1;
  }
  if (names.empty()) throw std::runtime_error("no names listed in '" + spec + "'");
  return {file, names};
}

CompoundPtr term_or_throw(const Document& doc, const std::string& name,
                          const std::string& file) {
  CompoundPtr t = doc.find_term(name);
  if (!t) throw std::runtime_error("no diagram or compound named '" + name + "' in " + file);
  return t;
}

std::vector<CompoundPtr> terms_from_spec(const std::string& spec) {
  auto [file, names] = split_spec(spec);
  Document doc = load_document(file);
  std::vector<CompoundPtr> out;
  if (names.empty()) {
    for (const auto& d : doc.diagrams) out.push_back(unit(d.diagram));
    for (const auto& c : doc.compounds) out.push_back(c.value);
  } else {
    for (const auto& n : names) out.push_back(term_or_throw(doc, n, file));
  }
  return out;
}

std::vector<UnitaryDiagram> unitaries_from_spec(const std::string& spec) {
  auto [file, names] = split_spec(spec);
  Document doc = load_document(file);
  std::vector<UnitaryDiagram> out;
  if (names.empty()) {
    for (const auto& d : doc.diagrams) out.push_back(d.diagram);
  } else {
    for (const auto& n : names) {
      const UnitaryDiagram* d = doc.find_diagram(n);
      if (!d)
        throw std::runtime_error("no diagram named '" + n + "' in " + file +
                                 " (assertions must be unitary)");
      out.push_back(*d);
    }
  }
  return out;
}

std::string interp_to_string(const Interpretation& I) {
  std::string s = "U={";
  for (int e = 0; e < I.universe; ++e) {
    if (e) s += ",";
    s += "e" + std::to_string(e);
  }
  s += "}";
  for (size_t i = 0; i < I.labels.size(); ++i) {
    s += " " + I.labels[i] + "={";
    bool first = true;
    for (int e = 0; e < I.universe; ++e) {
      if (I.phi[i] >> e & 1u) {
        if (!first) s += ",";
        s += "e" + std::to_string(e);
        first = false;
      }
    }
    s += "}";
  }
  return s;
}

int run_parse(const std::string& file) {
  Document doc = load_document(file);
  std::cout << dump_json(document_to_json(doc));
  return 0;
}

int run_models(const std::string& file, const std::string& name, int size, bool list) {
  Document doc = load_document(file);
  CompoundPtr term = term_or_throw(doc, name, file);
  auto labels = labels_of(term);
  long long n = 0;
  for_each_interpretation(labels, size, [&](const Interpretation& I) {
    if (satisfies(I, term)) {
      ++n;
      if (list) std::cout << interp_to_string(I) << "\n";
    }
    return true;
  });
  std::cout << n << "\n";
  return 0;
}

int run_entails(const std::string& file, const std::string& lhs, const std::string& rhs,
                int bound, bool quiet) {
  Document doc = load_document(file);
  EntailmentVerdict v = entails(term_or_throw(doc, lhs, file), term_or_throw(doc, rhs, file),
                                bound);
  if (v.holds) {
    if (!quiet) std::cout << "holds up to universe size " << bound << "\n";
    return 0;
  }
  std::cout << "countermodel: " << interp_to_string(*v.countermodel) << "\n";
  return 1;
}

int run_apply(const std::string& file, const std::string& name, const std::string& rule_str,
              const std::string& params_text, const std::string& donor_name) {
  Document doc = load_document(file);
  CompoundPtr host = term_or_throw(doc, name, file);
  auto rule = rule_from_name(rule_str);
  if (!rule) throw std::runtime_error("unknown rule '" + rule_str + "'");
  RuleInstance inst = params_from_json(*rule, parse_json(params_text), labels_of(host));
  CompoundPtr result;
  if (*rule == RuleName::Combine || *rule == RuleName::CopySpider) {
    if (donor_name.empty())
      throw std::runtime_error(std::string(rule_name(*rule)) + " needs --donor");
    result = apply_binary(host, inst, term_or_throw(doc, donor_name, file));
  } else {
    if (!donor_name.empty())
      throw std::runtime_error(std::string(rule_name(*rule)) + " does not take --donor");
    result = apply_unary(host, inst);
  }
  std::cout << dump_json(compound_to_json(result));
  return 0;
}

int run_check(const std::string& proof_file, const std::string& premises_spec) {
  ProofPtr proof = proof_from_json(parse_json(slurp(proof_file)));
  std::vector<CompoundPtr> premises;
  if (!premises_spec.empty()) premises = terms_from_spec(premises_spec);
  CheckReport report = check_proof(proof, premises);
  std::cout << dump_json(check_report_to_json(report));
  return report.valid ? 0 : 1;
}

int run_derive(const std::string& premises_spec, const std::string& assert_spec,
               const std::string& goal_spec, int max_depth) {
  SearchConfig cfg;
  cfg.max_depth = max_depth;
  cfg.premises = terms_from_spec(premises_spec);
  if (!assert_spec.empty()) cfg.assertions = unitaries_from_spec(assert_spec);
  auto [goal_file, goal_names] = split_spec(goal_spec);
  if (goal_names.size() != 1)
    throw std::runtime_error("--goal takes exactly one FILE:NAME");
  Document goal_doc = load_document(goal_file);
  CompoundPtr goal = term_or_throw(goal_doc, goal_names[0], goal_file);
  auto proof = derive(cfg, goal);
  if (!proof) {
    std::cerr << "no proof found within depth " << max_depth << "\n";
    return 1;
  }
  std::cout << dump_json(proof_to_json(*proof));
  return 0;
}

int run_square(const std::string& s1, const std::string& s2, const std::string& out_dir,
               int bound, bool quiet) {
  SquareReport r;
  try {
    r = build_square(s1, s2);
  } catch (const GreimasError& e) {
    std::cerr << "square construction failed: " << e.what() << "\n";
    return 1;
  }

  namespace fs = std::filesystem;
  fs::path dir(out_dir);
  fs::create_directories(dir);
  std::vector<std::string> written;
  const auto emit = [&](const std::string& name, const std::string& text) {
    write_file(dir / name, text);
    written.push_back(name);
  };

  Document corners;
  corners.diagrams = {{"d1", r.corners[0]},
                      {"d2", r.corners[1]},
                      {"d3", r.corners[2]},
                      {"d4", r.corners[3]},
                      {"zm", zm_witness()}};
  emit("corners.sd", pretty_print(corners));

  Document metas;
  for (size_t i = 0; i < kMetaTerms.size(); ++i)
    metas.diagrams.push_back({meta_term_name(kMetaTerms[i]), r.meta[i].target});
  emit("meta_terms.sd", pretty_print(metas));

  // Every derivation gets a semantic cross-check at the bound: the premise
  // conjoined with the assertion pool must entail the conclusion.
  const auto entailed = [&](CompoundPtr premise_term,
                            const std::vector<UnitaryDiagram>& assertions,
                            const UnitaryDiagram& goal) {
    CompoundPtr lhs = std::move(premise_term);
    for (const auto& a : assertions) lhs = conj(lhs, unit(a));
    return entails(lhs, unit(goal), bound).holds;
  };
  const auto multiset_json = [](const ProofPtr& proof) {
    Json m = Json::object();
    for (const auto& [name, count] : rule_multiset(proof)) m[name] = count;
    return m;
  };

  Json derivations = Json::array();
  for (int i = 0; i < 4; ++i) {
    const TDerivation& t = r.t[i];
    std::string file = "t" + std::to_string(i + 1) + ".proof.json";
    emit(file, dump_json(proof_to_json(t.proof)));
    Json e;
    e["tag"] = t.tag;
    e["file"] = file;
    e["premise"] = canonical_form(t.premise);
    e["goal"] = canonical_form(t.goal);
    e["depth"] = t.depth;
    e["rules"] = multiset_json(t.proof);
    e["entailed_with_assertions"] = entailed(t.premise, t.assertions, t.goal);
    derivations.push_back(std::move(e));
  }
  for (size_t i = 0; i < kMetaTerms.size(); ++i) {
    const MetaDerivation& m = r.meta[i];
    std::string file = std::string("meta_") + meta_term_name(m.term) + ".proof.json";
    emit(file, dump_json(proof_to_json(m.proof)));
    Json e;
    e["tag"] = "T" + std::to_string(5 + i);
    e["term"] = meta_term_name(m.term);
    e["file"] = file;
    e["premise"] = canonical_form(m.premise);
    e["goal"] = canonical_form(m.target);
    e["depth"] = m.depth;
    e["rules"] = multiset_json(m.proof);
    e["entailed_with_assertions"] = entailed(m.premise, m.assertions, m.target);
    derivations.push_back(std::move(e));
  }

  emit("square.dot", render_dot(r));

  Json summary;
  summary["s1"] = r.s1;
  summary["s2"] = r.s2;
  summary["bound"] = bound;
  Json corners_json;
  corners_json["d1"] = diagram_to_json(r.corners[0]);
  corners_json["d2"] = diagram_to_json(r.corners[1]);
  corners_json["d3"] = diagram_to_json(r.corners[2]);
  corners_json["d4"] = diagram_to_json(r.corners[3]);
  corners_json["zm"] = diagram_to_json(zm_witness());
  corners_json["d6"] = diagram_to_json(r.d6);
  corners_json["d8"] = diagram_to_json(r.d8);
  summary["corners"] = std::move(corners_json);
  summary["derivations"] = std::move(derivations);

  Json relations;
  Json contrariety = Json::array();
  for (int i = 0; i < 4; ++i) {
    Json row = Json::array();
    for (int j = 0; j < 4; ++j) row.push_back(r.contrariety[i][j]);
    contrariety.push_back(std::move(row));
  }
  relations["contrariety"] = std::move(contrariety);
  relations["implication_targets"] = Json::array({"d1", "d2", "d3", "d4", "d6", "d8"});
  Json imp1 = Json::array(), imp2 = Json::array();
  for (int i = 0; i < 6; ++i) {
    imp1.push_back(r.implication1[i]);
    imp2.push_back(r.implication2[i]);
  }
  relations["implication1"] = std::move(imp1);
  relations["implication2"] = std::move(imp2);
  summary["relations"] = std::move(relations);

  emit("summary.json", dump_json(summary));

  if (!quiet)
    for (const auto& name : written) std::cout << "wrote " << (dir / name).string() << "\n";
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"unitary spider diagram proof engine"};
  app.require_subcommand(1);
  bool quiet = false;
  long long seed = 0;
  app.add_flag("--quiet", quiet, "suppress informational output");
  app.add_option("--seed", seed, "accepted and ignored; the engine is deterministic");

  std::string parse_file;
  CLI::App* c_parse = app.add_subcommand("parse", "parse a diagram file, print canonical JSON");
  c_parse->fallthrough();
  c_parse->add_option("file", parse_file, "diagram file")->required();

  std::string models_file, models_name;
  int models_size = 0;
  bool models_list = false;
  CLI::App* c_models = app.add_subcommand("models", "count models at one universe size");
  c_models->fallthrough();
  c_models->add_option("file", models_file, "diagram file")->required();
  c_models->add_option("--name", models_name, "diagram or compound name")->required();
  c_models->add_option("--size", models_size, "universe size")->required();
  c_models->add_flag("--list", models_list, "print each model");

  std::string ent_file, ent_lhs, ent_rhs;
  int ent_bound = 3;
  CLI::App* c_entails = app.add_subcommand("entails", "bounded entailment check");
  c_entails->fallthrough();
  c_entails->add_option("file", ent_file, "diagram file")->required();
  c_entails->add_option("--lhs", ent_lhs, "left-hand name")->required();
  c_entails->add_option("--rhs", ent_rhs, "right-hand name")->required();
  c_entails->add_option("--bound", ent_bound, "maximum universe size (default 3)");

  std::string ap_file, ap_name, ap_rule, ap_params = "{}", ap_donor;
  CLI::App* c_apply = app.add_subcommand("apply", "apply one rule instance");
  c_apply->fallthrough();
  c_apply->add_option("file", ap_file, "diagram file")->required();
  c_apply->add_option("--name", ap_name, "host diagram or compound")->required();
  c_apply->add_option("--rule", ap_rule, "rule name")->required();
  c_apply->add_option("--params", ap_params, "rule parameters as JSON (default {})");
  c_apply->add_option("--donor", ap_donor, "donor diagram for Combine/CopySpider");

  std::string ck_proof, ck_premises;
  CLI::App* c_check = app.add_subcommand("check", "replay and verify a proof tree");
  c_check->fallthrough();
  c_check->add_option("proof", ck_proof, "proof JSON file")->required();
  c_check->add_option("--premises", ck_premises, "FILE[:NAME,...] premise pool");

  std::string dv_premises, dv_assert, dv_goal;
  int dv_depth = 8;
  CLI::App* c_derive = app.add_subcommand("derive", "search for a proof of a goal");
  c_derive->fallthrough();
  c_derive->add_option("--premises", dv_premises, "FILE[:NAME,...]")->required();
  c_derive->add_option("--assert", dv_assert, "FILE[:NAME,...] assertion donors");
  c_derive->add_option("--goal", dv_goal, "FILE:NAME")->required();
  c_derive->add_option("--max-depth", dv_depth, "depth bound (default 8)");

  std::string sq_s1, sq_s2, sq_out;
  int sq_bound = 3;
  CLI::App* c_square = app.add_subcommand("square", "build a semiotic square with proofs");
  c_square->fallthrough();
  c_square->add_option("--s1", sq_s1, "first seme display name")->required();
  c_square->add_option("--s2", sq_s2, "second seme display name")->required();
  c_square->add_option("--out", sq_out, "output directory")->required();
  c_square->add_option("--bound", sq_bound, "semantic cross-check bound (default 3)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*c_parse) return run_parse(parse_file);
    if (*c_models) return run_models(models_file, models_name, models_size, models_list);
    if (*c_entails) return run_entails(ent_file, ent_lhs, ent_rhs, ent_bound, quiet);
    if (*c_apply) return run_apply(ap_file, ap_name, ap_rule, ap_params, ap_donor);
    if (*c_check) return run_check(ck_proof, ck_premises);
    if (*c_derive) return run_derive(dv_premises, dv_assert, dv_goal, dv_depth);
    if (*c_square) return run_square(sq_s1, sq_s2, sq_out, sq_bound, quiet);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return 2;
}
