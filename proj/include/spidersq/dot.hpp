#pragma once

// Deterministic Graphviz DOT rendering for diagrams, proof trees and square
// reports. The same input always yields byte-identical output.

#include <string>

#include "spidersq/diagram.hpp"
#include "spidersq/greimas.hpp"
#include "spidersq/proof.hpp"

namespace spidersq {

std::string render_dot(const UnitaryDiagram& d, const std::string& name = "diagram");

// One node per subterm: and/or as ellipses, unitary leaves as boxes listing
// zones (shaded marked "*") and spider habitats.
std::string render_dot(const CompoundPtr& d, const std::string& name = "compound");

// Derivation flows upward (rankdir=BT); every edge from a child to its rule
// application is labeled with the rule's display name.
std::string render_dot(const ProofPtr& p);

// Eight corner nodes (d5/d7 restate d2/d4, d6/d8 are the T3/T4 conclusions)
// plus six meta-term nodes. Edge styles: contradiction solid (T1/T2),
// implication dashed (T3/T4), contrariety dotted; meta-term edges T5..T10.
std::string render_dot(const SquareReport& r);

}  // namespace spidersq
