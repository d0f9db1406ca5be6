#pragma once

// The semiotic-square layer: the canonical four-label language, corner
// diagrams, the meta-term targets, their derivations, and the relation
// predicates between corners.

#include <array>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "spidersq/diagram.hpp"
#include "spidersq/proof.hpp"
#include "spidersq/semantics.hpp"

namespace spidersq {

struct GreimasError : DiagramError {
  using DiagramError::DiagramError;
};

// Labels M (middle axis), S1, S2 (the semes), X (the carrier). The six zones
// encode S1, S2 subset M subset X with S1, S2 disjoint; the double-seme zone
// z12 is shaded. The ten remaining label combinations are missing zones.
struct SquareLanguage {
  std::vector<std::string> labels;  // M, S1, S2, X (sorted)
  Mask z0, z12, z1, z2, zM, zX;
  Region zones;  // canonical order: z0, z12, z1, z2, zM, zX
};
const SquareLanguage& square_language();

// The canonical language with no spiders.
UnitaryDiagram square_base();

// d1 = seme 1 present, d2 = its negation diagram, d3 = seme 2, d4 = its
// negation. The negation diagrams carry one spider over {z_other, zX}.
enum class Corner { D1, D2, D3, D4 };
UnitaryDiagram corner(Corner c);

// One spider in zM: the witness that the middle axis is inhabited.
UnitaryDiagram zm_witness();

// Contrariety: both diagrams are single-spider canonical-language diagrams
// with shading exactly {z12} and habitats exactly {z1} and {z2}, either way
// around.
bool contrariety_check(const UnitaryDiagram& a, const UnitaryDiagram& b);

// Denotation of the negation diagram's habitat (z_other union zX) under I,
// which must satisfy the nesting preconditions phi(S1), phi(S2) subset
// phi(M) subset phi(X) with phi(S1), phi(S2) disjoint. i names the negated
// seme (1 or 2).
std::uint32_t negation_denotation(const Interpretation& I, int i);

// Verifies the habitat denotation equals (phi(Sj) minus phi(Si)) union
// (phi(X) minus phi(M) and both semes), and is a strict subset of
// phi(X) minus phi(Si) exactly when phi(M) exceeds the two semes.
bool proposition_check(const Interpretation& I, int i);

// Diagrammatic implication from the negation diagram of seme i: dA must be
// that negation diagram, dB a single-spider diagram whose habitat is exactly
// the other seme's zone, shading {z12} preserved, and dB's habitat strictly
// contained in dA's.
bool implication_check(const UnitaryDiagram& da, const UnitaryDiagram& db, int i);

enum class MetaTerm { S, SBar, PosDeixis, NegDeixis, PosSchema, NegSchema };
inline constexpr std::array<MetaTerm, 6> kMetaTerms = {
    MetaTerm::S,         MetaTerm::SBar,      MetaTerm::PosDeixis,
    MetaTerm::NegDeixis, MetaTerm::PosSchema, MetaTerm::NegSchema};

const char* meta_term_name(MetaTerm t);

// The target diagram of each meta-term (all shaded {z12}, all with a zM
// witness spider).
UnitaryDiagram meta_term_target(MetaTerm t);

// The pair of corners whose conjunction the meta-term is derived from.
std::pair<Corner, Corner> meta_term_pair(MetaTerm t);

// Structural reading of the meta-term shape: shading {z12}, a dedicated zM
// witness entry, and each input corner's habitat covered by some non-witness
// spider of the conclusion.
bool meta_term_shape_ok(MetaTerm t, const UnitaryDiagram& d);

struct MetaDerivation {
  MetaTerm term = MetaTerm::S;
  UnitaryDiagram target;
  CompoundPtr premise;                    // And of the two corners
  std::vector<UnitaryDiagram> assertions; // donor pool used by the search
  ProofPtr proof;                         // checked against the premise
  int depth = 0;
};

// Searches for a machine-checkable derivation of the meta-term target from
// the conjunction of its corner pair, with the zM witness (and, for SBar,
// the determinate corners d1/d3) as assertion donors. Throws GreimasError
// naming the term when no derivation is found or checking fails.
MetaDerivation derive_meta_term(MetaTerm t);

struct TDerivation {
  std::string tag;  // "T1".."T4"
  CompoundPtr premise;
  std::vector<UnitaryDiagram> assertions;
  UnitaryDiagram goal;
  ProofPtr proof;
  int depth = 0;
};

struct SquareReport {
  std::string s1, s2;  // display names of the two semes
  std::array<UnitaryDiagram, 4> corners;
  UnitaryDiagram d6, d8;  // conclusions of T3/T4 (shapes of d3/d1)
  std::array<TDerivation, 4> t;
  std::array<MetaDerivation, 6> meta;
  bool contrariety[4][4] = {};
  // implication_check over d1, d2, d3, d4, d6, d8 with the negation diagram
  // of seme 1 (row 1) and seme 2 (row 2) as antecedent.
  bool implication1[6] = {};
  bool implication2[6] = {};
};

// Full construction: corners, T1-T4 (T1/T2 searched, T3/T4 built as the
// four-step split/combine/erase/idempotency trees and then checked), the six
// meta-term derivations, and the relation matrices. The two display names
// must differ. Throws GreimasError with the failing tag on any failure.
SquareReport build_square(const std::string& s1, const std::string& s2);

}  // namespace spidersq
