#include "spidersq/greimas.hpp"

#include <algorithm>

#include "spidersq/search.hpp"

namespace spidersq {

const SquareLanguage& square_language() {
  static const SquareLanguage L = [] {
    SquareLanguage l;
    l.labels = {"M", "S1", "S2", "X"};
    const Mask M = 1, S1 = 2, S2 = 4, X = 8;
    l.z0 = 0;
    l.z12 = M | S1 | S2 | X;
    l.z1 = M | S1 | X;
    l.z2 = M | S2 | X;
    l.zM = M | X;
    l.zX = X;
    l.zones = {l.z0, l.z12, l.z1, l.z2, l.zM, l.zX};
    return l;
  }();
  return L;
}

UnitaryDiagram square_base() {
  const auto& L = square_language();
  UnitaryDiagram d;
  d.labels = L.labels;
  d.zones = L.zones;
  d.shaded = {L.z12};
  return d;
}

UnitaryDiagram corner(Corner c) {
  const auto& L = square_language();
  UnitaryDiagram d = square_base();
  switch (c) {
    case Corner::D1: add_spiders(d, {L.z1}, 1); break;
    case Corner::D2: add_spiders(d, {L.z2, L.zX}, 1); break;
    case Corner::D3: add_spiders(d, {L.z2}, 1); break;
    case Corner::D4: add_spiders(d, {L.z1, L.zX}, 1); break;
  }
  return d;
}

UnitaryDiagram zm_witness() {
  const auto& L = square_language();
  UnitaryDiagram d = square_base();
  add_spiders(d, {L.zM}, 1);
  return d;
}

namespace {

// Canonical-language diagram with shading exactly {z12} and exactly one
// spider; returns its habitat through `habitat`.
bool single_spider_shape(const UnitaryDiagram& d, Region& habitat) {
  const auto& L = square_language();
  UnitaryDiagram n = normalized(d);
  if (n.labels != L.labels || n.zones != L.zones) return false;
  if (n.shaded != Region{L.z12}) return false;
  if (n.spiders.size() != 1 || n.spiders[0].count != 1) return false;
  habitat = n.spiders[0].habitat;
  return true;
}

void check_seme_index(int i) {
  if (i != 1 && i != 2) throw GreimasError("seme index must be 1 or 2");
}

// phi masks in label order M, S1, S2, X.
struct SquarePhi {
  std::uint32_t M, S1, S2, X;
};

SquarePhi nesting_checked(const Interpretation& I) {
  const auto& L = square_language();
  if (I.labels != L.labels)
    throw GreimasError("interpretation is not over the canonical square language");
  SquarePhi p{I.phi[0], I.phi[1], I.phi[2], I.phi[3]};
  if ((p.S1 & ~p.M) || (p.S2 & ~p.M) || (p.M & ~p.X) || (p.S1 & p.S2))
    throw GreimasError("nesting precondition violated: need phi(S1), phi(S2) disjoint "
                       "subsets of phi(M) inside phi(X)");
  return p;
}

}  // namespace

bool contrariety_check(const UnitaryDiagram& a, const UnitaryDiagram& b) {
  const auto& L = square_language();
  Region ha, hb;
  if (!single_spider_shape(a, ha) || !single_spider_shape(b, hb)) return false;
  return (ha == Region{L.z1} && hb == Region{L.z2}) ||
         (ha == Region{L.z2} && hb == Region{L.z1});
}

std::uint32_t negation_denotation(const Interpretation& I, int i) {
  check_seme_index(i);
  nesting_checked(I);
  const auto& L = square_language();
  Mask zj = i == 1 ? L.z2 : L.z1;
  return region_denotation(I, {zj, L.zX});
}

bool proposition_check(const Interpretation& I, int i) {
  check_seme_index(i);
  SquarePhi p = nesting_checked(I);
  std::uint32_t u = I.universe_mask();
  std::uint32_t si = i == 1 ? p.S1 : p.S2;
  std::uint32_t sj = i == 1 ? p.S2 : p.S1;
  std::uint32_t habitat = negation_denotation(I, i);
  std::uint32_t expected = (sj & ~si & u) | (p.X & ~(p.M | p.S1 | p.S2) & u);
  if (habitat != expected) return false;
  std::uint32_t outside = p.X & ~si & u;
  bool strict = habitat != outside && (habitat & ~outside) == 0;
  bool middle_excess = (p.M & ~(p.S1 | p.S2) & u) != 0;
  return strict == middle_excess;
}

bool implication_check(const UnitaryDiagram& da, const UnitaryDiagram& db, int i) {
  check_seme_index(i);
  const auto& L = square_language();
  Mask zj = i == 1 ? L.z2 : L.z1;
  Region ha, hb;
  if (!single_spider_shape(da, ha)) return false;         // (1) dA is the negation diagram
  if (ha != sorted_region({zj, L.zX}, "implication")) return false;
  if (!single_spider_shape(db, hb)) return false;         // (2) + (3): shape and shading
  if (hb != Region{zj}) return false;                     // habitat normalized to z_other
  return region_subset(hb, ha) && hb != ha;               // (4) strict containment
}

const char* meta_term_name(MetaTerm t) {
  switch (t) {
    case MetaTerm::S: return "S";
    case MetaTerm::SBar: return "Sbar";
    case MetaTerm::PosDeixis: return "PosDeixis";
    case MetaTerm::NegDeixis: return "NegDeixis";
    case MetaTerm::PosSchema: return "PosSchema";
    case MetaTerm::NegSchema: return "NegSchema";
  }
  return "?";
}

UnitaryDiagram meta_term_target(MetaTerm t) {
  const auto& L = square_language();
  UnitaryDiagram d = square_base();
  switch (t) {
    case MetaTerm::S:
      add_spiders(d, {L.z1}, 1);
      add_spiders(d, {L.z2}, 1);
      break;
    case MetaTerm::SBar:
      add_spiders(d, {L.z1, L.zX}, 1);
      add_spiders(d, {L.z2, L.zX}, 1);
      break;
    case MetaTerm::PosDeixis: add_spiders(d, {L.z1, L.zX}, 1); break;
    case MetaTerm::NegDeixis: add_spiders(d, {L.z2, L.zX}, 1); break;
    case MetaTerm::PosSchema:
      add_spiders(d, {L.z1}, 1);
      add_spiders(d, {L.z2, L.zX}, 1);
      break;
    case MetaTerm::NegSchema:
      add_spiders(d, {L.z2}, 1);
      add_spiders(d, {L.z1, L.zX}, 1);
      break;
  }
  add_spiders(d, {L.zM}, 1);
  return d;
}

std::pair<Corner, Corner> meta_term_pair(MetaTerm t) {
  switch (t) {
    case MetaTerm::S: return {Corner::D1, Corner::D3};
    case MetaTerm::SBar: return {Corner::D2, Corner::D4};
    case MetaTerm::PosDeixis: return {Corner::D1, Corner::D4};
    case MetaTerm::NegDeixis: return {Corner::D3, Corner::D2};
    case MetaTerm::PosSchema: return {Corner::D1, Corner::D2};
    case MetaTerm::NegSchema: return {Corner::D3, Corner::D4};
  }
  throw GreimasError("unknown meta-term");
}

bool meta_term_shape_ok(MetaTerm t, const UnitaryDiagram& d) {
  const auto& L = square_language();
  UnitaryDiagram n = normalized(d);
  if (n.labels != L.labels || n.zones != L.zones) return false;
  if (n.shaded != Region{L.z12}) return false;  // clause (4): shading preserved

  const Region zm{L.zM};
  bool witness = false;  // clauses (2)+(3): a dedicated zM entry
  for (const auto& s : n.spiders)
    if (s.habitat == zm) witness = true;
  if (!witness) return false;

  auto [ca, cb] = meta_term_pair(t);
  for (Corner c : {ca, cb}) {  // clause (1): inputs covered by non-witness spiders
    UnitaryDiagram in = normalized(corner(c));
    for (const auto& is : in.spiders) {
      bool covered = false;
      for (const auto& s : n.spiders)
        if (s.habitat != zm && region_subset(is.habitat, s.habitat)) covered = true;
      if (!covered) return false;
    }
  }
  return true;
}

MetaDerivation derive_meta_term(MetaTerm t) {
  auto [ca, cb] = meta_term_pair(t);
  MetaDerivation md;
  md.term = t;
  md.target = meta_term_target(t);
  md.premise = conj(unit(corner(ca)), unit(corner(cb)));
  md.assertions = {zm_witness()};
  if (t == MetaTerm::SBar) {
    // The indeterminate pair alone does not entail the two-footed target;
    // the determinate corners join the donor pool.
    md.assertions.push_back(corner(Corner::D1));
    md.assertions.push_back(corner(Corner::D3));
  }
  SearchConfig cfg;
  cfg.max_depth = 8;
  cfg.premises = {md.premise};
  cfg.assertions = md.assertions;
  auto proof = derive(cfg, unit(md.target));
  if (!proof)
    throw GreimasError(std::string("meta-term derivation failed: ") + meta_term_name(t));
  auto report = check_proof(*proof, {md.premise});
  if (!report.valid)
    throw GreimasError(std::string("meta-term proof did not check: ") + meta_term_name(t));
  md.proof = *proof;
  md.depth = proof_depth(*proof);
  return md;
}

namespace {

TDerivation searched_t(const std::string& tag, Corner prem, Corner goal) {
  TDerivation td;
  td.tag = tag;
  td.premise = unit(corner(prem));
  td.assertions = {corner(goal)};
  td.goal = corner(goal);
  SearchConfig cfg;
  cfg.max_depth = 8;
  cfg.premises = {td.premise};
  cfg.assertions = td.assertions;
  auto proof = derive(cfg, unit(td.goal));
  if (!proof) throw GreimasError("derivation failed: " + tag);
  td.proof = *proof;
  td.depth = proof_depth(*proof);
  return td;
}

// The four-step implication derivations, transcribed: split the two-footed
// spider, combine the determinate disjunct with the asserted corner, erase
// the leftover outer-zone spider, collapse the equal disjuncts.
TDerivation transcribed_t(const std::string& tag, Corner prem, Corner asserted) {
  const auto& L = square_language();
  UnitaryDiagram start = corner(prem);
  UnitaryDiagram donor_d = corner(asserted);
  Mask zj = prem == Corner::D2 ? L.z2 : L.z1;

  TDerivation td;
  td.tag = tag;
  td.premise = unit(start);
  td.assertions = {donor_d};
  td.goal = corner(asserted);

  ProofPtr p = premise(td.premise);

  RuleInstance split{RuleName::SplitSpider, "", {}};
  split.params.habitat = sorted_region({zj, L.zX}, tag);
  split.params.r1 = {zj};
  split.params.r2 = {L.zX};
  CompoundPtr c = apply_unary(td.premise, split);
  p = rule_app(c, split, {p});

  RuleInstance comb{RuleName::Combine, "R", {}};
  CompoundPtr donor = unit(donor_d);
  c = apply_binary(c, comb, donor);
  p = rule_app(c, comb, {p, assertion(donor)});

  RuleInstance erase{RuleName::EraseSpider, "R", {}};
  erase.params.habitat = {L.zX};
  c = apply_unary(c, erase);
  p = rule_app(c, erase, {p});

  RuleInstance idem{RuleName::IdempotencyElim, "", {}};
  c = apply_unary(c, idem);
  p = rule_app(c, idem, {p});

  if (!canonically_equal(c, unit(td.goal)))
    throw GreimasError("transcribed derivation missed its goal: " + tag);
  td.proof = p;
  td.depth = proof_depth(p);
  return td;
}

}  // namespace

SquareReport build_square(const std::string& s1, const std::string& s2) {
  if (s1.empty() || s2.empty()) throw GreimasError("seme names must be nonempty");
  if (s1 == s2) throw GreimasError("the two seme names must differ");

  SquareReport r;
  r.s1 = s1;
  r.s2 = s2;
  r.corners = {corner(Corner::D1), corner(Corner::D2), corner(Corner::D3), corner(Corner::D4)};

  r.t[0] = searched_t("T1", Corner::D1, Corner::D2);
  r.t[1] = searched_t("T2", Corner::D3, Corner::D4);
  r.t[2] = transcribed_t("T3", Corner::D2, Corner::D3);
  r.t[3] = transcribed_t("T4", Corner::D4, Corner::D1);
  r.d6 = r.t[2].goal;
  r.d8 = r.t[3].goal;

  for (size_t i = 0; i < 4; ++i) {
    auto report = check_proof(r.t[i].proof, {r.t[i].premise});
    if (!report.valid) throw GreimasError("derivation did not check: " + r.t[i].tag);
  }

  for (size_t i = 0; i < kMetaTerms.size(); ++i) r.meta[i] = derive_meta_term(kMetaTerms[i]);

  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j)
      r.contrariety[i][j] =
          contrariety_check(r.corners[static_cast<size_t>(i)], r.corners[static_cast<size_t>(j)]);

  const UnitaryDiagram* against[6] = {&r.corners[0], &r.corners[1], &r.corners[2],
                                      &r.corners[3], &r.d6, &r.d8};
  for (int k = 0; k < 6; ++k) {
    r.implication1[k] = implication_check(r.corners[1], *against[k], 1);
    r.implication2[k] = implication_check(r.corners[3], *against[k], 2);
  }
  return r;
}

}  // namespace spidersq
