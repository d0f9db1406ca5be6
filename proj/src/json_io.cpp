#include "spidersq/json_io.hpp"

#include <algorithm>
#include <initializer_list>
#include <map>
#include <set>

namespace spidersq {

namespace {

void require_object(const Json& j, const std::string& where) {
  if (!j.is_object()) throw JsonError(where + " must be an object");
}

void require_keys(const Json& j, const std::string& where,
                  std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        known = true;
        break;
      }
    if (!known) throw JsonError("unknown key '" + it.key() + "' in " + where);
  }
}

const Json& need(const Json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end()) throw JsonError("missing key '" + std::string(key) + "' in " + where);
  return *it;
}

std::string need_string(const Json& j, const char* key, const std::string& where) {
  const Json& v = need(j, key, where);
  if (!v.is_string()) throw JsonError("key '" + std::string(key) + "' in " + where + " must be a string");
  return v.get<std::string>();
}

int optional_int(const Json& j, const char* key, const std::string& where, int fallback) {
  auto it = j.find(key);
  if (it == j.end()) return fallback;
  if (!it->is_number_integer())
    throw JsonError("key '" + std::string(key) + "' in " + where + " must be an integer");
  return it->get<int>();
}

std::vector<std::string> string_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw JsonError(where + " must be an array of strings");
  std::vector<std::string> out;
  for (const auto& v : j) {
    if (!v.is_string()) throw JsonError(where + " must be an array of strings");
    out.push_back(v.get<std::string>());
  }
  return out;
}

std::vector<std::string> ins_names(const std::vector<std::string>& labels, Mask z) {
  std::vector<std::string> out;
  for (size_t i = 0; i < labels.size(); ++i)
    if (z >> i & 1u) out.push_back(labels[i]);
  return out;
}

Json zone_json(const std::vector<std::string>& labels, Mask z) {
  return Json(ins_names(labels, z));
}

Json region_json(const std::vector<std::string>& labels, const Region& r) {
  Json out = Json::array();
  for (Mask z : r) out.push_back(zone_json(labels, z));
  return out;
}

Mask zone_from_json(const Json& j, const std::map<std::string, int>& bit,
                    const std::string& where) {
  Mask z = 0;
  for (const auto& name : string_array(j, where)) {
    auto it = bit.find(name);
    if (it == bit.end()) throw JsonError("unknown label '" + name + "' in " + where);
    Mask m = Mask(1) << it->second;
    if (z & m) throw JsonError("duplicate label '" + name + "' in " + where);
    z |= m;
  }
  return z;
}

Region region_from_json(const Json& j, const std::map<std::string, int>& bit,
                        const std::string& where) {
  if (!j.is_array()) throw JsonError(where + " must be an array of zones");
  Region r;
  for (const auto& v : j) r.push_back(zone_from_json(v, bit, where));
  try {
    return sorted_region(std::move(r), where);
  } catch (const DiagramError& e) {
    throw JsonError(e.what());
  }
}

std::map<std::string, int> label_bits(const std::vector<std::string>& labels) {
  std::map<std::string, int> bit;
  for (size_t i = 0; i < labels.size(); ++i) bit[labels[i]] = static_cast<int>(i);
  return bit;
}

}  // namespace

Json diagram_to_json(const UnitaryDiagram& d0) {
  UnitaryDiagram d = normalized(d0);
  Json j;
  j["labels"] = d.labels;
  Json zones = Json::array();
  for (Mask z : d.zones) {
    Json zj;
    zj["ins"] = zone_json(d.labels, z);
    zj["shaded"] = region_contains(d.shaded, z);
    zones.push_back(std::move(zj));
  }
  j["zones"] = std::move(zones);
  Json spiders = Json::array();
  for (const auto& e : d.spiders) {
    Json sj;
    sj["count"] = e.count;
    sj["habitat"] = region_json(d.labels, e.habitat);
    spiders.push_back(std::move(sj));
  }
  j["spiders"] = std::move(spiders);
  return j;
}

UnitaryDiagram diagram_from_json(const Json& j, const std::string& where) {
  require_object(j, where);
  require_keys(j, where, {"labels", "zones", "spiders"});

  UnitaryDiagram d;
  d.labels = string_array(need(j, "labels", where), where + " labels");
  std::sort(d.labels.begin(), d.labels.end());
  for (size_t i = 1; i < d.labels.size(); ++i)
    if (d.labels[i] == d.labels[i - 1])
      throw JsonError("duplicate label '" + d.labels[i] + "' in " + where);
  if (d.labels.size() > size_t(kMaxLabels)) throw JsonError("too many labels in " + where);
  auto bit = label_bits(d.labels);

  const Json& zones = need(j, "zones", where);
  if (!zones.is_array()) throw JsonError(where + " zones must be an array");
  for (const auto& zj : zones) {
    const std::string zwhere = where + " zone";
    require_object(zj, zwhere);
    require_keys(zj, zwhere, {"ins", "shaded"});
    Mask z = zone_from_json(need(zj, "ins", zwhere), bit, zwhere);
    if (std::find(d.zones.begin(), d.zones.end(), z) != d.zones.end())
      throw JsonError("duplicate zone " + zone_to_string(d.labels, z) + " in " + where);
    d.zones.push_back(z);
    auto it = zj.find("shaded");
    if (it != zj.end()) {
      if (!it->is_boolean()) throw JsonError("'shaded' in " + zwhere + " must be a boolean");
      if (it->get<bool>()) d.shaded.push_back(z);
    }
  }

  auto sit = j.find("spiders");
  if (sit != j.end()) {
    if (!sit->is_array()) throw JsonError(where + " spiders must be an array");
    for (const auto& sj : *sit) {
      const std::string swhere = where + " spider";
      require_object(sj, swhere);
      require_keys(sj, swhere, {"count", "habitat"});
      int count = optional_int(sj, "count", swhere, 1);
      if (count < 1) throw JsonError("spider count in " + where + " must be positive");
      Region habitat = region_from_json(need(sj, "habitat", swhere), bit, swhere + " habitat");
      add_spiders(d, habitat, count);
    }
  }

  d = normalized(d);
  auto violations = validate_unitary(d);
  if (!violations.empty())
    throw JsonError(where + ": " + violations[0].where + ": " + violations[0].detail);
  return d;
}

Json compound_to_json(const CompoundPtr& d) {
  switch (d->kind) {
    case CompoundDiagram::Kind::Unit: return diagram_to_json(d->unit);
    case CompoundDiagram::Kind::Top: return Json{{"op", "top"}};
    case CompoundDiagram::Kind::Bottom: return Json{{"op", "bottom"}};
    case CompoundDiagram::Kind::And:
    case CompoundDiagram::Kind::Or: {
      Json j;
      j["op"] = d->kind == CompoundDiagram::Kind::And ? "and" : "or";
      j["args"] = Json::array({compound_to_json(d->left), compound_to_json(d->right)});
      return j;
    }
  }
  throw JsonError("malformed compound diagram");
}

CompoundPtr compound_from_json(const Json& j, const std::string& where) {
  require_object(j, where);
  if (j.contains("labels")) return unit(diagram_from_json(j, where));
  std::string op = need_string(j, "op", where);
  if (op == "top" || op == "bottom") {
    require_keys(j, where, {"op"});
    return op == "top" ? top() : bottom();
  }
  if (op == "and" || op == "or") {
    require_keys(j, where, {"op", "args"});
    const Json& args = need(j, "args", where);
    if (!args.is_array() || args.size() != 2)
      throw JsonError("'args' in " + where + " must be a two-element array");
    CompoundPtr l = compound_from_json(args[0], where);
    CompoundPtr r = compound_from_json(args[1], where);
    return op == "and" ? conj(l, r) : disj(l, r);
  }
  throw JsonError("unknown op '" + op + "' in " + where);
}

Json expr_to_json(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Ref: return Json{{"op", "ref"}, {"name", e->name}};
    case Expr::Kind::Top: return Json{{"op", "top"}};
    case Expr::Kind::Bottom: return Json{{"op", "bottom"}};
    case Expr::Kind::And:
    case Expr::Kind::Or: {
      Json j;
      j["op"] = e->kind == Expr::Kind::And ? "and" : "or";
      j["args"] = Json::array({expr_to_json(e->left), expr_to_json(e->right)});
      return j;
    }
  }
  throw JsonError("malformed expression");
}

ExprPtr expr_from_json(const Json& j, const std::string& where) {
  require_object(j, where);
  std::string op = need_string(j, "op", where);
  if (op == "ref") {
    require_keys(j, where, {"op", "name"});
    return expr_ref(need_string(j, "name", where));
  }
  if (op == "top" || op == "bottom") {
    require_keys(j, where, {"op"});
    return op == "top" ? expr_top() : expr_bottom();
  }
  if (op == "and" || op == "or") {
    require_keys(j, where, {"op", "args"});
    const Json& args = need(j, "args", where);
    if (!args.is_array() || args.size() != 2)
      throw JsonError("'args' in " + where + " must be a two-element array");
    ExprPtr l = expr_from_json(args[0], where);
    ExprPtr r = expr_from_json(args[1], where);
    return op == "and" ? expr_and(l, r) : expr_or(l, r);
  }
  throw JsonError("unknown op '" + op + "' in " + where);
}

Json document_to_json(const Document& doc) {
  Json j;
  Json diagrams = Json::object();
  for (const auto& d : doc.diagrams) diagrams[d.name] = diagram_to_json(d.diagram);
  j["diagrams"] = std::move(diagrams);
  Json compounds = Json::object();
  for (const auto& c : doc.compounds) compounds[c.name] = expr_to_json(c.expr);
  j["compounds"] = std::move(compounds);
  return j;
}

Document document_from_json(const Json& j) {
  require_object(j, "document");
  require_keys(j, "document", {"diagrams", "compounds"});
  Document doc;
  std::set<std::string> seen;
  auto dit = j.find("diagrams");
  if (dit != j.end()) {
    require_object(*dit, "document diagrams");
    for (auto it = dit->begin(); it != dit->end(); ++it) {
      if (!seen.insert(it.key()).second) throw JsonError("duplicate name '" + it.key() + "'");
      doc.diagrams.push_back({it.key(), diagram_from_json(*it, "diagram " + it.key())});
    }
  }
  auto cit = j.find("compounds");
  if (cit != j.end()) {
    require_object(*cit, "document compounds");
    for (auto it = cit->begin(); it != cit->end(); ++it) {
      if (!seen.insert(it.key()).second) throw JsonError("duplicate name '" + it.key() + "'");
      const std::string item = "compound " + it.key();
      ExprPtr e = expr_from_json(*it, item);
      doc.compounds.push_back({it.key(), e, resolve_expr(doc, e, item)});
    }
  }
  return doc;
}

Json params_to_json(const RuleInstance& inst, const std::vector<std::string>& labels) {
  Json p;
  p["position"] = inst.position;
  switch (inst.rule) {
    case RuleName::Combine:
    case RuleName::IdempotencyIntro:
    case RuleName::IdempotencyElim:
      break;
    case RuleName::ConjElim:
      p["side"] = inst.params.side == 'L' ? "left" : "right";
      if (inst.params.witness) {
        p["witness"] = Json::array({diagram_to_json(inst.params.witness->first),
                                    diagram_to_json(inst.params.witness->second)});
      }
      break;
    case RuleName::SplitSpider:
      p["habitat"] = region_json(labels, inst.params.habitat);
      p["index"] = inst.params.index;
      p["r1"] = region_json(labels, inst.params.r1);
      p["r2"] = region_json(labels, inst.params.r2);
      break;
    case RuleName::AddFeet:
      p["habitat"] = region_json(labels, inst.params.habitat);
      p["index"] = inst.params.index;
      p["zone"] = zone_json(labels, inst.params.zone.value_or(0));
      break;
    case RuleName::EraseSpider:
      p["habitat"] = region_json(labels, inst.params.habitat);
      p["index"] = inst.params.index;
      break;
    case RuleName::CopySpider:
      p["r1"] = region_json(labels, inst.params.r1);
      p["r2"] = region_json(labels, inst.params.r2);
      p["spider"] = region_json(labels, inst.params.spider);
      break;
  }
  return p;
}

RuleInstance params_from_json(RuleName rule, const Json& j,
                              const std::vector<std::string>& labels) {
  const std::string where = std::string(rule_name(rule)) + " params";
  require_object(j, where);
  auto bit = label_bits(labels);

  RuleInstance inst;
  inst.rule = rule;
  auto pit = j.find("position");
  if (pit != j.end()) {
    if (!pit->is_string()) throw JsonError("'position' in " + where + " must be a string");
    inst.position = pit->get<std::string>();
    for (char c : inst.position)
      if (c != 'L' && c != 'R')
        throw JsonError("'position' in " + where + " must consist of 'L'/'R'");
  }

  switch (rule) {
    case RuleName::Combine:
    case RuleName::IdempotencyIntro:
    case RuleName::IdempotencyElim:
      require_keys(j, where, {"position"});
      break;
    case RuleName::ConjElim: {
      require_keys(j, where, {"position", "side", "witness"});
      std::string side = need_string(j, "side", where);
      if (side != "left" && side != "right")
        throw JsonError("'side' in " + where + " must be \"left\" or \"right\"");
      inst.params.side = side == "left" ? 'L' : 'R';
      auto wit = j.find("witness");
      if (wit != j.end()) {
        if (!wit->is_array() || wit->size() != 2)
          throw JsonError("'witness' in " + where + " must be a two-element array");
        inst.params.witness = {diagram_from_json((*wit)[0], where + " witness"),
                               diagram_from_json((*wit)[1], where + " witness")};
      }
      break;
    }
    case RuleName::SplitSpider:
      require_keys(j, where, {"position", "habitat", "index", "r1", "r2"});
      inst.params.habitat = region_from_json(need(j, "habitat", where), bit, where + " habitat");
      inst.params.index = optional_int(j, "index", where, 0);
      inst.params.r1 = region_from_json(need(j, "r1", where), bit, where + " r1");
      inst.params.r2 = region_from_json(need(j, "r2", where), bit, where + " r2");
      break;
    case RuleName::AddFeet:
      require_keys(j, where, {"position", "habitat", "index", "zone"});
      inst.params.habitat = region_from_json(need(j, "habitat", where), bit, where + " habitat");
      inst.params.index = optional_int(j, "index", where, 0);
      inst.params.zone = zone_from_json(need(j, "zone", where), bit, where + " zone");
      break;
    case RuleName::EraseSpider:
      require_keys(j, where, {"position", "habitat", "index"});
      inst.params.habitat = region_from_json(need(j, "habitat", where), bit, where + " habitat");
      inst.params.index = optional_int(j, "index", where, 0);
      break;
    case RuleName::CopySpider:
      require_keys(j, where, {"position", "r1", "r2", "spider"});
      inst.params.r1 = region_from_json(need(j, "r1", where), bit, where + " r1");
      inst.params.r2 = region_from_json(need(j, "r2", where), bit, where + " r2");
      inst.params.spider = region_from_json(need(j, "spider", where), bit, where + " spider");
      break;
  }
  return inst;
}

namespace {

std::vector<std::string> proof_labels(const ProofPtr& p) {
  auto l = labels_of(p->conclusion);
  if (!l.empty()) return l;
  for (const auto& c : p->children) {
    l = proof_labels(c);
    if (!l.empty()) return l;
  }
  return {};
}

Json proof_node_json(const ProofPtr& n, const std::vector<std::string>& labels) {
  Json j;
  j["conclusion"] = compound_to_json(n->conclusion);
  Json just;
  switch (n->kind) {
    case ProofNode::Kind::Premise: just["kind"] = "premise"; break;
    case ProofNode::Kind::Assertion: just["kind"] = "assert"; break;
    case ProofNode::Kind::RuleApp: {
      just["kind"] = "rule";
      just["rule"] = rule_name(n->instance.rule);
      just["params"] = params_to_json(n->instance, labels);
      Json children = Json::array();
      for (const auto& c : n->children) children.push_back(proof_node_json(c, labels));
      just["children"] = std::move(children);
      break;
    }
  }
  j["just"] = std::move(just);
  return j;
}

}  // namespace

Json proof_to_json(const ProofPtr& p) {
  return proof_node_json(p, proof_labels(p));
}

ProofPtr proof_from_json(const Json& j) {
  const std::string where = "proof node";
  require_object(j, where);
  require_keys(j, where, {"conclusion", "just"});
  CompoundPtr conclusion = compound_from_json(need(j, "conclusion", where), where + " conclusion");

  const Json& just = need(j, "just", where);
  require_object(just, where + " just");
  std::string kind = need_string(just, "kind", where + " just");
  if (kind == "premise") {
    require_keys(just, where + " just", {"kind"});
    return premise(conclusion);
  }
  if (kind == "assert") {
    require_keys(just, where + " just", {"kind"});
    return assertion(conclusion);
  }
  if (kind != "rule")
    throw JsonError("unknown kind '" + kind + "' in " + where + " just");

  require_keys(just, where + " just", {"kind", "rule", "params", "children"});
  std::string rname = need_string(just, "rule", where + " just");
  auto rule = rule_from_name(rname);
  if (!rule) throw JsonError("unknown rule '" + rname + "' in " + where);

  const Json& cj = need(just, "children", where + " just");
  if (!cj.is_array() || cj.empty())
    throw JsonError("'children' in " + where + " must be a nonempty array");
  std::vector<ProofPtr> children;
  for (const auto& c : cj) children.push_back(proof_from_json(c));

  std::vector<std::string> labels = labels_of(conclusion);
  if (labels.empty())
    for (const auto& c : children) {
      labels = proof_labels(c);
      if (!labels.empty()) break;
    }
  RuleInstance inst = params_from_json(*rule, need(just, "params", where + " just"), labels);
  return rule_app(conclusion, std::move(inst), std::move(children));
}

Json check_report_to_json(const CheckReport& r) {
  Json j;
  j["valid"] = r.valid;
  j["steps_checked"] = r.steps_checked;
  if (r.first_failure) {
    j["first_failure"] = Json{{"path", r.first_failure->first}, {"reason", r.first_failure->second}};
  } else {
    j["first_failure"] = nullptr;
  }
  Json prem = Json::array();
  for (const auto& p : r.premises_used) prem.push_back(canonical_form(p));
  j["premises_used"] = std::move(prem);
  Json asserts = Json::array();
  for (const auto& a : r.assertions_used) asserts.push_back(canonical_form(a));
  j["assertions_used"] = std::move(asserts);
  return j;
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const std::exception& e) {
    throw JsonError(std::string("invalid JSON: ") + e.what());
  }
}

}  // namespace spidersq
