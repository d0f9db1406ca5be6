#pragma once

// The eight inference rules, their parameter records, and the deterministic
// enumeration of applicable instances.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "spidersq/diagram.hpp"

namespace spidersq {

struct RuleError : DiagramError {
  using DiagramError::DiagramError;
};

enum class RuleName {
  Combine,
  ConjElim,
  SplitSpider,
  AddFeet,
  EraseSpider,
  CopySpider,
  IdempotencyIntro,
  IdempotencyElim,
};

const char* rule_name(RuleName r);
// Both idempotency directions display as "Idempotency" in rendered output.
const char* rule_display(RuleName r);
std::optional<RuleName> rule_from_name(const std::string& name);

// Alpha diagram: every spider's habitat is a single zone.
bool is_alpha(const UnitaryDiagram& d);

// A spider is addressed by its entry's habitat plus an ordinal below the
// entry's count. Which ordinal is chosen never changes a rule's output.
struct SpiderRef {
  Region habitat;
  int index = 0;
};

// Parameters of one rule application. Only the fields a rule needs are set.
struct RuleParams {
  Region habitat;          // spider address (split / add feet / erase)
  int index = 0;
  std::optional<Mask> zone;  // add feet: the new foot
  Region r1, r2;           // split: the two parts; copy: the host/donor regions
  Region spider;           // copy: habitat of the spider being copied
  char side = 0;           // conj elim: 'L' or 'R'
  std::optional<std::pair<UnitaryDiagram, UnitaryDiagram>> witness;  // unitary conj elim
};

struct RuleInstance {
  RuleName rule = RuleName::Combine;
  std::string position;  // subterm the rule rewrites ("" = root)
  RuleParams params;
};

// -- the rules themselves, in their unitary-level form --

// d0 * d1 on alpha diagrams over one zone set: zones unchanged, shading
// unioned, per-zone spider count the maximum of the two. Yields Bottom when a
// zone shaded in one diagram carries strictly more spiders in the other; Top
// is the identity and Bottom absorbs. Arguments must be Unit/Top/Bottom.
CompoundPtr combine(const CompoundPtr& a, const CompoundPtr& b);

// Projection of a conjunction at a position.
CompoundPtr conj_elim(const CompoundPtr& d, const std::string& position, char side);

// Unitary form: the witness pair must recombine to d; returns the chosen side.
UnitaryDiagram conj_elim_unitary(const UnitaryDiagram& d, const UnitaryDiagram& w0,
                                 const UnitaryDiagram& w1, char side);

// Splits one spider's habitat r into disjoint nonempty r1, r2, producing the
// disjunction of the two narrowed diagrams.
CompoundPtr split_spider(const UnitaryDiagram& d, const SpiderRef& s, const Region& r1,
                         const Region& r2);

// Extends one spider's habitat by a zone it does not yet touch (weakening).
UnitaryDiagram add_feet(const UnitaryDiagram& d, const SpiderRef& s, Mask zone);

// Removes a spider whose habitat touches no shaded zone.
UnitaryDiagram erase_spider(const UnitaryDiagram& d, const SpiderRef& s);

// Copies a spider of d2 into d1 across corresponding regions r1 = r2. The
// copy map is the habitat-class-wise matching of d1's spiders inside r1 to
// d2's inside r2; it must be injective but not surjective, and s (given by
// its habitat) must lie outside its image. Errors name the failing clause:
// (1) r1 contains a shaded zone, (2) a spider has a foot in r1 without being
// contained in it, (3) the matching is not injective-and-non-surjective.
// Returns And(d1 + copied spider, d2).
CompoundPtr copy_spider(const UnitaryDiagram& d1, const UnitaryDiagram& d2, const Region& r1,
                        const Region& r2, const Region& s_habitat);

CompoundPtr idempotency_intro(const CompoundPtr& d, const std::string& position);
CompoundPtr idempotency_elim(const CompoundPtr& d, const std::string& position);

// Applies a unary instance (everything except Combine/CopySpider) at its
// position inside d.
CompoundPtr apply_unary(const CompoundPtr& d, const RuleInstance& inst);

// Applies Combine or CopySpider: the Unit/Top/Bottom subterm of d at the
// instance's position is rewritten using the donor, which must itself be a
// Unit/Top/Bottom compound.
CompoundPtr apply_binary(const CompoundPtr& d, const RuleInstance& inst,
                         const CompoundPtr& donor);

// Every legal unary instance on d, deterministically ordered: positions in
// pre-order; at each position the rules in declaration order; spider entries
// in canonical order (ordinal 0 as the representative); zones and split
// parts in canonical zone order. Split parts are enumerated as (one zone,
// rest of the habitat). Binary instances need a partner diagram and are
// enumerated by the search layer. `filter` keeps only the named rules (empty
// keeps all).
std::vector<RuleInstance> applicable_instances(const CompoundPtr& d,
                                               const std::vector<RuleName>& filter = {});

}  // namespace spidersq
