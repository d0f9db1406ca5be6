#pragma once

// Breadth-first derivation search over the rule system.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "spidersq/proof.hpp"

namespace spidersq {

struct SearchConfig {
  int max_depth = 8;
  std::vector<CompoundPtr> premises;
  std::vector<UnitaryDiagram> assertions;  // usable only as donors of binary rules
  std::vector<RuleName> rules;             // empty = the full rule set
};

// Layered closure: layer 0 holds the premises; a product joins layer k when
// the host (and the donor, for binary rules) were first derived at layer
// k-1 or earlier, at least one of them exactly at k-1. States are interned
// by canonical form. Enumeration is deterministic: hosts in discovery order,
// positions pre-order, rules in declaration order, donors in discovery order
// followed by the assertion pool. Binary rules take their host from the
// state and their donor from the state's Unit/Top/Bottom roots or the
// assertion pool; an assertion alone is never a proof.
//
// CopySpider instances are enumerated over regions r1 = r2 that are single
// zones or whole habitats of the donor's spiders (the general rule accepts
// any region via explicit parameters).
//
// Two refutation-preserving cuts keep the closure tractable without losing
// any proof:
//  - Every rule product is entailed by the premises and assertions it
//    consumed, so when a universe of size <= 3 separates their conjunction
//    from the goal, no derivation exists at any depth and the search is
//    skipped outright.
//  - IdempotencyIntro products are explored only when the goal itself
//    contains a disjunction; for Or-free goals every proof through an
//    introduced Or(t, t) factors into one that rewrites t directly.
//
// Returns the first proof of `goal` found at the smallest layer, or nullopt.
std::optional<ProofPtr> derive(const SearchConfig& config, const CompoundPtr& goal);

// Canonical form of every diagram derivable within max_depth layers, mapped
// to the first layer it appears in.
std::map<std::string, int> reachable_set(const SearchConfig& config);

}  // namespace spidersq
