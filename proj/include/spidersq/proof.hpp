#pragma once

// Proof trees and the checker that replays every rule application.

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "spidersq/diagram.hpp"
#include "spidersq/rules.hpp"

namespace spidersq {

struct ProofNode;
using ProofPtr = std::shared_ptr<const ProofNode>;

struct ProofNode {
  enum class Kind { Premise, Assertion, RuleApp };
  Kind kind = Kind::Premise;
  CompoundPtr conclusion;
  RuleInstance instance;          // RuleApp only
  std::vector<ProofPtr> children; // RuleApp: host first, donor second if any
};

ProofPtr premise(CompoundPtr conclusion);
// Assertion leaves carry side conditions taken on trust; they must be
// unitary. The checker reports them separately so a caller can decide
// whether they were admissible.
ProofPtr assertion(CompoundPtr conclusion);
ProofPtr rule_app(CompoundPtr conclusion, RuleInstance instance, std::vector<ProofPtr> children);

struct CheckReport {
  bool valid = false;
  int steps_checked = 0;  // rule applications replayed
  // Path of the first failing node (child indices joined by '.', "" = root,
  // leftmost-deepest first) plus the reason.
  std::optional<std::pair<std::string, std::string>> first_failure;
  std::vector<CompoundPtr> premises_used;    // distinct premise leaves, in traversal order
  std::vector<CompoundPtr> assertions_used;  // distinct assertion leaves, in traversal order
};

// Replays each rule application bottom-up and compares conclusions by
// canonical form. Premise leaves must match one of `premises` canonically.
CheckReport check_proof(const ProofPtr& proof, const std::vector<CompoundPtr>& premises);

// Rule applications per display name ("Idempotency" covers both directions).
std::map<std::string, int> rule_multiset(const ProofPtr& proof);

// Rule applications along the longest root-to-leaf chain.
int proof_depth(const ProofPtr& proof);

}  // namespace spidersq
