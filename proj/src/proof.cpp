#include "spidersq/proof.hpp"

#include <algorithm>

namespace spidersq {

namespace {
using Kind = CompoundDiagram::Kind;

ProofPtr leaf(ProofNode::Kind k, CompoundPtr conclusion) {
  if (!conclusion) throw DiagramError("proof leaf without a conclusion");
  auto n = std::make_shared<ProofNode>();
  n->kind = k;
  n->conclusion = std::move(conclusion);
  return n;
}
}  // namespace

ProofPtr premise(CompoundPtr conclusion) {
  return leaf(ProofNode::Kind::Premise, std::move(conclusion));
}

ProofPtr assertion(CompoundPtr conclusion) {
  return leaf(ProofNode::Kind::Assertion, std::move(conclusion));
}

ProofPtr rule_app(CompoundPtr conclusion, RuleInstance instance, std::vector<ProofPtr> children) {
  if (!conclusion) throw DiagramError("rule application without a conclusion");
  auto n = std::make_shared<ProofNode>();
  n->kind = ProofNode::Kind::RuleApp;
  n->conclusion = std::move(conclusion);
  n->instance = std::move(instance);
  n->children = std::move(children);
  return n;
}

namespace {

bool is_binary(RuleName r) {
  return r == RuleName::Combine || r == RuleName::CopySpider;
}

struct Checker {
  const std::vector<CompoundPtr>& premises;
  CheckReport report;
  std::vector<std::string> seen_premises, seen_assertions;

  bool fail(const std::string& path, std::string reason) {
    report.first_failure = {path, std::move(reason)};
    return false;
  }

  void record(std::vector<CompoundPtr>& into, std::vector<std::string>& seen,
              const CompoundPtr& d) {
    std::string c = canonical_form(d);
    if (std::find(seen.begin(), seen.end(), c) == seen.end()) {
      seen.push_back(c);
      into.push_back(d);
    }
  }

  // Children first (left to right), then the node itself, so the first
  // failure reported is the leftmost-deepest one.
  bool walk(const ProofPtr& node, const std::string& path) {
    if (!node) return fail(path, "missing proof node");
    for (size_t i = 0; i < node->children.size(); ++i) {
      std::string child_path = path.empty() ? std::to_string(i) : path + "." + std::to_string(i);
      if (!walk(node->children[i], child_path)) return false;
    }
    switch (node->kind) {
      case ProofNode::Kind::Premise: {
        for (const auto& p : premises)
          if (canonically_equal(node->conclusion, p)) {
            record(report.premises_used, seen_premises, node->conclusion);
            return true;
          }
        return fail(path, "premise is not in the allowed pool");
      }
      case ProofNode::Kind::Assertion: {
        if (!node->children.empty()) return fail(path, "assertion leaves take no children");
        if (node->conclusion->kind != Kind::Unit)
          return fail(path, "assertions must be unitary diagrams");
        record(report.assertions_used, seen_assertions, node->conclusion);
        return true;
      }
      case ProofNode::Kind::RuleApp: {
        size_t arity = is_binary(node->instance.rule) ? 2 : 1;
        if (node->children.size() != arity)
          return fail(path, std::string(rule_name(node->instance.rule)) + " takes " +
                                std::to_string(arity) + " subproof(s), found " +
                                std::to_string(node->children.size()));
        CompoundPtr recomputed;
        try {
          const CompoundPtr& host = node->children[0]->conclusion;
          recomputed = arity == 2
                           ? apply_binary(host, node->instance, node->children[1]->conclusion)
                           : apply_unary(host, node->instance);
        } catch (const DiagramError& e) {
          return fail(path, e.what());
        }
        ++report.steps_checked;
        if (!canonically_equal(recomputed, node->conclusion))
          return fail(path, "conclusion does not match the replayed rule application");
        return true;
      }
    }
    return fail(path, "unknown proof node kind");
  }
};

}  // namespace

CheckReport check_proof(const ProofPtr& proof, const std::vector<CompoundPtr>& premises) {
  Checker c{premises, {}, {}, {}};
  c.report.valid = c.walk(proof, "");
  return c.report;
}

std::map<std::string, int> rule_multiset(const ProofPtr& proof) {
  std::map<std::string, int> out;
  if (!proof) return out;
  if (proof->kind == ProofNode::Kind::RuleApp) ++out[rule_display(proof->instance.rule)];
  for (const auto& ch : proof->children)
    for (const auto& [name, count] : rule_multiset(ch)) out[name] += count;
  return out;
}

int proof_depth(const ProofPtr& proof) {
  if (!proof) return 0;
  int deepest = 0;
  for (const auto& ch : proof->children) deepest = std::max(deepest, proof_depth(ch));
  return deepest + (proof->kind == ProofNode::Kind::RuleApp ? 1 : 0);
}

}  // namespace spidersq
