#pragma once

// Bounded model-theoretic semantics: interpretations over small universes,
// satisfaction, enumeration, entailment and model counting.

#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

#include "spidersq/diagram.hpp"

namespace spidersq {

// I = (U, phi). The universe is {0, .., universe-1}; phi maps each label
// (same index space as the diagram's sorted labels) to a subset bitmask of
// the universe. Universes are capped at 20 elements.
struct Interpretation {
  int universe = 0;
  std::vector<std::string> labels;
  std::vector<std::uint32_t> phi;

  std::uint32_t universe_mask() const {
    return universe == 0 ? 0 : std::uint32_t((1u << universe) - 1);
  }
};

// Elements of zone z: inside phi(l) for every ins label, outside for every
// outs label. The empty-ins intersection is the whole universe, so the outer
// zone denotes everything carrying no label.
std::uint32_t zone_denotation(const Interpretation& I, Mask zone);
std::uint32_t region_denotation(const Interpretation& I, const Region& r);

// Satisfaction of a unitary diagram: (a) every missing zone denotes the empty
// set, (b) the spiders (with multiplicity) admit an injective assignment to
// elements of their habitats, and (c) every element of a shaded zone is the
// image of some spider under that same assignment.
bool satisfies(const Interpretation& I, const UnitaryDiagram& d);
bool satisfies(const Interpretation& I, const CompoundPtr& d);

// Deterministic enumeration of all interpretations of `labels` over a fixed
// universe size: a counter in base 2^universe whose most significant digit is
// the first (alphabetically smallest) label, each digit being that label's
// phi as a subset bitmask. Countermodels are reported in this order, smaller
// universes first.
void for_each_interpretation(const std::vector<std::string>& labels, int universe,
                             const std::function<bool(const Interpretation&)>& visit);
std::vector<Interpretation> enumerate_interpretations(const std::vector<std::string>& labels,
                                                      int universe);
// Count of interpretations per universe size: (2^universe)^|labels|.
long long interpretation_count(size_t label_count, int universe);

struct EntailmentVerdict {
  bool holds = false;
  int bound = 0;
  std::optional<Interpretation> countermodel;
};

// Checks lhs |= rhs over every universe size 0..max_universe. Both sides must
// agree on their label sets (Top/Bottom-only trees match anything).
EntailmentVerdict entails(const CompoundPtr& lhs, const CompoundPtr& rhs, int max_universe = 3);

long long count_models(const CompoundPtr& d, int universe);

// Satisfaction bit-vector over all interpretations with universe sizes
// 0..max_universe, concatenated in enumeration order; bit i of word i/64.
// Equal profiles == semantic equivalence at the bound; subset == entailment.
std::vector<std::uint64_t> sat_profile(const CompoundPtr& d,
                                       const std::vector<std::string>& labels,
                                       int max_universe = 3);
bool profile_subset(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b);

}  // namespace spidersq
