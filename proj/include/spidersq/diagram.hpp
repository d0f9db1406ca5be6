#pragma once

// Core data model: unitary spider diagrams over a finite label set, and
// compound diagrams built from them with and/or/top/bottom.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

namespace spidersq {

struct DiagramError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A zone is stored as the bitmask of its "ins" labels over the diagram's
// sorted label vector (bit i <-> labels[i]). The "outs" are always the
// complement, so the zone invariants (ins/outs disjoint, union = label set)
// hold by construction. At most 16 labels are supported.
using Mask = std::uint32_t;

// A region: a nonempty set of zones, kept sorted by zone_less.
using Region = std::vector<Mask>;

inline constexpr int kMaxLabels = 16;

// Canonical zone order: lexicographic on the ascending bit-index sequence.
// Labels are stored sorted, so this equals lexicographic order on the sorted
// ins-name lists. The empty (outer) zone always sorts first.
bool zone_less(Mask a, Mask b);
bool region_less(const Region& a, const Region& b);

// Sorts and returns the region; throws DiagramError on a duplicate zone.
Region sorted_region(Region r, const std::string& what);

bool region_contains(const Region& sorted, Mask z);
bool region_subset(const Region& a, const Region& b);   // both sorted
bool region_disjoint(const Region& a, const Region& b); // both sorted
Region region_union(const Region& a, const Region& b);  // both sorted
Region region_minus(const Region& a, const Region& b);  // both sorted

struct SpiderEntry {
  int count = 1;      // how many spiders share this habitat
  Region habitat;     // nonempty set of zones
};

// d = <L, Z, Z*, SI>. Labels are sorted and unique; zones/shaded/habitats may
// be stored in any order (canonical_form sorts copies), but all producers in
// this library keep them sorted.
struct UnitaryDiagram {
  std::vector<std::string> labels;
  std::vector<Mask> zones;
  std::vector<Mask> shaded;
  std::vector<SpiderEntry> spiders;

  Mask full_mask() const { return labels.empty() ? 0 : Mask((1u << labels.size()) - 1); }
  int total_spiders() const;
};

struct Violation {
  std::string where;   // which invariant failed, e.g. "zones.outer"
  std::string detail;
};

std::vector<Violation> validate_unitary(const UnitaryDiagram& d);
bool is_valid(const UnitaryDiagram& d);

// Sorted copy: zones, shading, habitats and spider entries in canonical order.
UnitaryDiagram normalized(const UnitaryDiagram& d);

// Adds count spiders with the given habitat, merging into an existing entry
// with the same habitat so habitats stay pairwise distinct.
void add_spiders(UnitaryDiagram& d, const Region& habitat, int count);

// All subsets of the label set that are not zones of d, in canonical order.
std::vector<Mask> missing_zones(const UnitaryDiagram& d);

std::string zone_to_string(const std::vector<std::string>& labels, Mask z);
std::string region_to_string(const std::vector<std::string>& labels, const Region& r);

// ---- compound diagrams ----

struct CompoundDiagram;
using CompoundPtr = std::shared_ptr<const CompoundDiagram>;

struct CompoundDiagram {
  enum class Kind { Unit, Top, Bottom, And, Or };
  Kind kind = Kind::Top;
  UnitaryDiagram unit;      // Kind::Unit only
  CompoundPtr left, right;  // Kind::And / Kind::Or only
};

CompoundPtr unit(UnitaryDiagram d);
CompoundPtr top();
CompoundPtr bottom();
CompoundPtr conj(CompoundPtr a, CompoundPtr b);
CompoundPtr disj(CompoundPtr a, CompoundPtr b);

bool is_leaf_kind(const CompoundPtr& d);  // Unit, Top or Bottom

// Every Unit leaf of a compound must share one label set; violations cover
// that plus the per-unit checks.
std::vector<Violation> validate_compound(const CompoundPtr& d);

// Label set of the first Unit leaf, or empty if the tree has none.
std::vector<std::string> labels_of(const CompoundPtr& d);

// Canonical forms: order-independent textual keys. Two diagrams are treated
// as equal throughout the engine iff their canonical forms match. And/Or
// children are sorted by their canonical strings, so the connectives are
// commutative under this equality.
std::string canonical_form(const UnitaryDiagram& d);
std::string canonical_form(const CompoundPtr& d);

bool canonically_equal(const UnitaryDiagram& a, const UnitaryDiagram& b);
bool canonically_equal(const CompoundPtr& a, const CompoundPtr& b);

// Positions address subterms: "" is the root, then one 'L'/'R' per And/Or hop.
CompoundPtr subterm_at(const CompoundPtr& d, const std::string& position);
CompoundPtr replace_at(const CompoundPtr& d, const std::string& position, CompoundPtr sub);
std::vector<std::string> positions_preorder(const CompoundPtr& d);

}  // namespace spidersq
