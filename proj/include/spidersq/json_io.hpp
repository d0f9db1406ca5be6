#pragma once

// JSON interchange for diagrams, documents, rule parameters, proof trees and
// check reports. All loaders are strict: an unknown object key is an error
// naming the key.

#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "spidersq/diagram.hpp"
#include "spidersq/dsl.hpp"
#include "spidersq/proof.hpp"
#include "spidersq/rules.hpp"

namespace spidersq {

using Json = nlohmann::ordered_json;

struct JsonError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// {"labels":[...], "zones":[{"ins":[...],"shaded":bool}...],
//  "spiders":[{"count":n,"habitat":[[...]...]}...]} with every set sorted;
// outs are implicit (label set minus ins).
Json diagram_to_json(const UnitaryDiagram& d);
UnitaryDiagram diagram_from_json(const Json& j, const std::string& where = "diagram");

// A unitary leaf serializes as its DiagramJSON (recognized by the "labels"
// key); Top/Bottom/And/Or as {"op":...} with two-element "args".
Json compound_to_json(const CompoundPtr& d);
CompoundPtr compound_from_json(const Json& j, const std::string& where = "compound");

// Name-reference form used inside documents: {"op":"ref","name":...}.
Json expr_to_json(const ExprPtr& e);
ExprPtr expr_from_json(const Json& j, const std::string& where = "expression");

// {"diagrams":{name: DiagramJSON...}, "compounds":{name: ExprJSON...}}.
Json document_to_json(const Document& doc);
Document document_from_json(const Json& j);

// Rule parameters, including the rewrite position. Zones appear as sorted
// ins-name arrays over `labels`, regions as arrays of zones.
Json params_to_json(const RuleInstance& inst, const std::vector<std::string>& labels);
RuleInstance params_from_json(RuleName rule, const Json& j,
                              const std::vector<std::string>& labels);

// {"conclusion": CompoundJSON, "just": {"kind":"premise"|"assert"|"rule",
//  "rule"?, "params"?, "children"?}}.
Json proof_to_json(const ProofPtr& p);
ProofPtr proof_from_json(const Json& j);

Json check_report_to_json(const CheckReport& r);

// Two-space indent plus trailing newline.
std::string dump_json(const Json& j);
// Wraps the underlying parser's failures in JsonError.
Json parse_json(const std::string& text);

}  // namespace spidersq
