#include "spidersq/rules.hpp"

#include <algorithm>
#include <map>

namespace spidersq {

const char* rule_name(RuleName r) {
  switch (r) {
    case RuleName::Combine: return "Combine";
    case RuleName::ConjElim: return "ConjElim";
    case RuleName::SplitSpider: return "SplitSpider";
    case RuleName::AddFeet: return "AddFeet";
    case RuleName::EraseSpider: return "EraseSpider";
    case RuleName::CopySpider: return "CopySpider";
    case RuleName::IdempotencyIntro: return "IdempotencyIntro";
    case RuleName::IdempotencyElim: return "IdempotencyElim";
  }
  return "?";
}

const char* rule_display(RuleName r) {
  if (r == RuleName::IdempotencyIntro || r == RuleName::IdempotencyElim) return "Idempotency";
  return rule_name(r);
}

std::optional<RuleName> rule_from_name(const std::string& name) {
  static const std::map<std::string, RuleName> table = {
      {"Combine", RuleName::Combine},
      {"ConjElim", RuleName::ConjElim},
      {"SplitSpider", RuleName::SplitSpider},
      {"AddFeet", RuleName::AddFeet},
      {"EraseSpider", RuleName::EraseSpider},
      {"CopySpider", RuleName::CopySpider},
      {"IdempotencyIntro", RuleName::IdempotencyIntro},
      {"IdempotencyElim", RuleName::IdempotencyElim},
  };
  auto it = table.find(name);
  if (it == table.end()) return std::nullopt;
  return it->second;
}

bool is_alpha(const UnitaryDiagram& d) {
  for (const auto& s : d.spiders)
    if (s.habitat.size() != 1) return false;
  return true;
}

namespace {

using Kind = CompoundDiagram::Kind;

void require_leaf(const CompoundPtr& d, const char* what) {
  if (!d || !is_leaf_kind(d))
    throw RuleError(std::string(what) + " must be a unitary diagram, Top or Bottom");
}

// Index of the entry addressed by `s` in a normalized diagram.
size_t find_entry(const UnitaryDiagram& n, const SpiderRef& s, const char* rule) {
  Region h = s.habitat;
  std::sort(h.begin(), h.end(), zone_less);
  for (size_t i = 0; i < n.spiders.size(); ++i) {
    if (n.spiders[i].habitat == h) {
      if (s.index < 0 || s.index >= n.spiders[i].count)
        throw RuleError(std::string(rule) + ": spider ordinal out of range");
      return i;
    }
  }
  throw RuleError(std::string(rule) + ": no spider with habitat " +
                  region_to_string(n.labels, h));
}

void remove_one(UnitaryDiagram& d, size_t idx) {
  if (--d.spiders[idx].count == 0)
    d.spiders.erase(d.spiders.begin() + static_cast<long>(idx));
}

int zone_count(const UnitaryDiagram& alpha_d, Mask z) {
  for (const auto& s : alpha_d.spiders)
    if (s.habitat.size() == 1 && s.habitat[0] == z) return s.count;
  return 0;
}

}  // namespace

CompoundPtr combine(const CompoundPtr& a, const CompoundPtr& b) {
  require_leaf(a, "combine: each input");
  require_leaf(b, "combine: each input");
  if (a->kind == Kind::Bottom || b->kind == Kind::Bottom) return bottom();
  if (a->kind == Kind::Top) return b;
  if (b->kind == Kind::Top) return a;

  UnitaryDiagram d0 = normalized(a->unit);
  UnitaryDiagram d1 = normalized(b->unit);
  if (d0.labels != d1.labels) throw RuleError("combine: inputs use different label sets");
  if (d0.zones != d1.zones) throw RuleError("combine: inputs have different zone sets");
  if (!is_alpha(d0) || !is_alpha(d1)) throw RuleError("combine: inputs must be alpha diagrams");

  Region sh0 = d0.shaded, sh1 = d1.shaded;
  for (Mask z : d0.zones) {
    int n0 = zone_count(d0, z), n1 = zone_count(d1, z);
    if ((region_contains(sh0, z) && n1 > n0) || (region_contains(sh1, z) && n0 > n1))
      return bottom();
  }

  UnitaryDiagram out;
  out.labels = d0.labels;
  out.zones = d0.zones;
  out.shaded = region_union(sh0, sh1);
  for (Mask z : d0.zones) {
    int n = std::max(zone_count(d0, z), zone_count(d1, z));
    if (n > 0) out.spiders.push_back({n, {z}});
  }
  return unit(std::move(out));
}

CompoundPtr conj_elim(const CompoundPtr& d, const std::string& position, char side) {
  CompoundPtr sub = subterm_at(d, position);
  if (sub->kind != Kind::And)
    throw RuleError("conjunction elimination: subterm is not a conjunction");
  if (side != 'L' && side != 'R')
    throw RuleError("conjunction elimination: side must be 'L' or 'R'");
  return replace_at(d, position, side == 'L' ? sub->left : sub->right);
}

UnitaryDiagram conj_elim_unitary(const UnitaryDiagram& d, const UnitaryDiagram& w0,
                                 const UnitaryDiagram& w1, char side) {
  if (side != 'L' && side != 'R')
    throw RuleError("conjunction elimination: side must be 'L' or 'R'");
  CompoundPtr c = combine(unit(w0), unit(w1));
  if (c->kind != Kind::Unit)
    throw RuleError("conjunction elimination: the witness pair recombines to Bottom");
  if (!canonically_equal(c->unit, d))
    throw RuleError("conjunction elimination: the witness pair does not recombine to the diagram");
  return normalized(side == 'L' ? w0 : w1);
}

CompoundPtr split_spider(const UnitaryDiagram& d, const SpiderRef& s, const Region& r1,
                         const Region& r2) {
  UnitaryDiagram n = normalized(d);
  size_t idx = find_entry(n, s, "split-a-spider");
  Region a = sorted_region(r1, "split-a-spider r1");
  Region b = sorted_region(r2, "split-a-spider r2");
  if (a.empty() || b.empty()) throw RuleError("split-a-spider: both parts must be nonempty");
  if (!region_disjoint(a, b)) throw RuleError("split-a-spider: the parts overlap");
  if (region_union(a, b) != n.spiders[idx].habitat)
    throw RuleError("split-a-spider: the parts do not partition the habitat");

  UnitaryDiagram da = n, db = n;
  remove_one(da, idx);
  add_spiders(da, a, 1);
  remove_one(db, idx);
  add_spiders(db, b, 1);
  return disj(unit(std::move(da)), unit(std::move(db)));
}

UnitaryDiagram add_feet(const UnitaryDiagram& d, const SpiderRef& s, Mask zone) {
  UnitaryDiagram n = normalized(d);
  size_t idx = find_entry(n, s, "add-feet");
  if (!region_contains(n.zones, zone))
    throw RuleError("add-feet: " + zone_to_string(n.labels, zone) + " is not a zone of the diagram");
  if (region_contains(n.spiders[idx].habitat, zone))
    throw RuleError("add-feet: the habitat already touches " + zone_to_string(n.labels, zone));
  Region grown = region_union(n.spiders[idx].habitat, {zone});
  remove_one(n, idx);
  add_spiders(n, grown, 1);
  return n;
}

UnitaryDiagram erase_spider(const UnitaryDiagram& d, const SpiderRef& s) {
  UnitaryDiagram n = normalized(d);
  size_t idx = find_entry(n, s, "erase-a-spider");
  if (!region_disjoint(n.spiders[idx].habitat, n.shaded))
    throw RuleError("erase-a-spider: the habitat touches a shaded zone");
  remove_one(n, idx);
  return n;
}

CompoundPtr copy_spider(const UnitaryDiagram& d1, const UnitaryDiagram& d2, const Region& r1,
                        const Region& r2, const Region& s_habitat) {
  UnitaryDiagram h = normalized(d1);  // host: receives the copy
  UnitaryDiagram g = normalized(d2);  // donor
  if (h.labels != g.labels) throw RuleError("copy-a-spider: diagrams use different label sets");

  Region ra = sorted_region(r1, "copy-a-spider r1");
  Region rb = sorted_region(r2, "copy-a-spider r2");
  if (ra.empty() || rb.empty()) throw RuleError("copy-a-spider: regions must be nonempty");
  for (Mask z : ra)
    if (!region_contains(h.zones, z))
      throw RuleError("copy-a-spider: r1 is not a region of the host");
  for (Mask z : rb)
    if (!region_contains(g.zones, z))
      throw RuleError("copy-a-spider: r2 is not a region of the donor");
  if (ra != rb) throw RuleError("copy-a-spider: the regions do not correspond");

  if (!region_disjoint(ra, h.shaded))
    throw RuleError("copy-a-spider clause (1): r1 contains a shaded zone");

  // Host spiders inside r1 (a foot in r1 forces full containment).
  std::vector<const SpiderEntry*> inside;
  for (const auto& s : h.spiders) {
    if (region_disjoint(s.habitat, ra)) continue;
    if (!region_subset(s.habitat, ra))
      throw RuleError("copy-a-spider clause (2): a spider has a foot in r1 but is not contained in it");
    inside.push_back(&s);
  }

  // Donor spiders inside r2, by habitat.
  std::map<Region, int> donor_classes;
  int donor_total = 0;
  for (const auto& s : g.spiders)
    if (region_subset(s.habitat, rb)) {
      donor_classes[s.habitat] += s.count;
      donor_total += s.count;
    }

  // The habitat-class-wise copy map must be injective but not surjective.
  int host_total = 0;
  for (const auto* s : inside) {
    auto it = donor_classes.find(s->habitat);
    if (it == donor_classes.end() || it->second < s->count)
      throw RuleError("copy-a-spider clause (3): the copy map cannot be made injective");
    host_total += s->count;
  }
  if (donor_total <= host_total)
    throw RuleError("copy-a-spider clause (3): the copy map would be surjective");

  Region sh = sorted_region(s_habitat, "copy-a-spider spider");
  if (!region_subset(sh, rb))
    throw RuleError("copy-a-spider: the chosen spider does not inhabit r2");
  auto donor_it = donor_classes.find(sh);
  if (donor_it == donor_classes.end())
    throw RuleError("copy-a-spider: no donor spider has the chosen habitat");
  int matched = 0;
  for (const auto* s : inside)
    if (s->habitat == sh) matched += s->count;
  if (donor_it->second <= matched)
    throw RuleError("copy-a-spider: the chosen spider lies inside the copy map's image");

  for (Mask z : sh)
    if (!region_contains(h.zones, z))
      throw RuleError("copy-a-spider: the copied habitat has no corresponding region in the host");

  UnitaryDiagram grown = h;
  add_spiders(grown, sh, 1);
  return conj(unit(std::move(grown)), unit(std::move(g)));
}

CompoundPtr idempotency_intro(const CompoundPtr& d, const std::string& position) {
  CompoundPtr sub = subterm_at(d, position);
  return replace_at(d, position, disj(sub, sub));
}

CompoundPtr idempotency_elim(const CompoundPtr& d, const std::string& position) {
  CompoundPtr sub = subterm_at(d, position);
  if (sub->kind != Kind::Or)
    throw RuleError("idempotency: subterm is not a disjunction");
  if (!canonically_equal(sub->left, sub->right))
    throw RuleError("idempotency: the disjuncts differ");
  return replace_at(d, position, sub->left);
}

CompoundPtr apply_unary(const CompoundPtr& d, const RuleInstance& inst) {
  const auto& p = inst.params;
  switch (inst.rule) {
    case RuleName::ConjElim: {
      CompoundPtr sub = subterm_at(d, inst.position);
      if (sub->kind == Kind::And) return conj_elim(d, inst.position, p.side);
      if (sub->kind == Kind::Unit && p.witness) {
        UnitaryDiagram w =
            conj_elim_unitary(sub->unit, p.witness->first, p.witness->second, p.side);
        return replace_at(d, inst.position, unit(std::move(w)));
      }
      throw RuleError("conjunction elimination: subterm is neither a conjunction nor a "
                      "unitary diagram with a decomposition witness");
    }
    case RuleName::SplitSpider: {
      CompoundPtr sub = subterm_at(d, inst.position);
      if (sub->kind != Kind::Unit)
        throw RuleError("split-a-spider: subterm is not a unitary diagram");
      return replace_at(d, inst.position,
                        split_spider(sub->unit, {p.habitat, p.index}, p.r1, p.r2));
    }
    case RuleName::AddFeet: {
      CompoundPtr sub = subterm_at(d, inst.position);
      if (sub->kind != Kind::Unit) throw RuleError("add-feet: subterm is not a unitary diagram");
      if (!p.zone) throw RuleError("add-feet: no foot zone given");
      return replace_at(d, inst.position, unit(add_feet(sub->unit, {p.habitat, p.index}, *p.zone)));
    }
    case RuleName::EraseSpider: {
      CompoundPtr sub = subterm_at(d, inst.position);
      if (sub->kind != Kind::Unit)
        throw RuleError("erase-a-spider: subterm is not a unitary diagram");
      return replace_at(d, inst.position, unit(erase_spider(sub->unit, {p.habitat, p.index})));
    }
    case RuleName::IdempotencyIntro: return idempotency_intro(d, inst.position);
    case RuleName::IdempotencyElim: return idempotency_elim(d, inst.position);
    case RuleName::Combine:
    case RuleName::CopySpider:
      throw RuleError(std::string(rule_name(inst.rule)) + " needs a donor diagram");
  }
  throw RuleError("unreachable rule");
}

CompoundPtr apply_binary(const CompoundPtr& d, const RuleInstance& inst,
                         const CompoundPtr& donor) {
  CompoundPtr sub = subterm_at(d, inst.position);
  switch (inst.rule) {
    case RuleName::Combine:
      return replace_at(d, inst.position, combine(sub, donor));
    case RuleName::CopySpider: {
      if (sub->kind != Kind::Unit)
        throw RuleError("copy-a-spider: subterm is not a unitary diagram");
      require_leaf(donor, "copy-a-spider: donor");
      if (donor->kind != Kind::Unit)
        throw RuleError("copy-a-spider: donor must be a unitary diagram");
      CompoundPtr pair =
          copy_spider(sub->unit, donor->unit, inst.params.r1, inst.params.r2, inst.params.spider);
      return replace_at(d, inst.position, pair->left);
    }
    default:
      throw RuleError(std::string(rule_name(inst.rule)) + " does not take a donor");
  }
}

std::vector<RuleInstance> applicable_instances(const CompoundPtr& d,
                                               const std::vector<RuleName>& filter) {
  if (!d) throw DiagramError("null diagram");
  auto want = [&](RuleName r) {
    return filter.empty() || std::find(filter.begin(), filter.end(), r) != filter.end();
  };
  std::vector<RuleInstance> out;
  for (const std::string& pos : positions_preorder(d)) {
    CompoundPtr sub = subterm_at(d, pos);

    if (want(RuleName::ConjElim) && sub->kind == Kind::And) {
      for (char side : {'L', 'R'}) {
        RuleInstance i{RuleName::ConjElim, pos, {}};
        i.params.side = side;
        out.push_back(std::move(i));
      }
    }
    if (sub->kind == Kind::Unit) {
      UnitaryDiagram n = normalized(sub->unit);
      if (want(RuleName::SplitSpider)) {
        for (const auto& s : n.spiders) {
          if (s.habitat.size() < 2) continue;
          for (Mask z : s.habitat) {
            RuleInstance i{RuleName::SplitSpider, pos, {}};
            i.params.habitat = s.habitat;
            i.params.r1 = {z};
            i.params.r2 = region_minus(s.habitat, {z});
            out.push_back(std::move(i));
          }
        }
      }
      if (want(RuleName::AddFeet)) {
        for (const auto& s : n.spiders) {
          for (Mask z : n.zones) {
            if (region_contains(s.habitat, z)) continue;
            RuleInstance i{RuleName::AddFeet, pos, {}};
            i.params.habitat = s.habitat;
            i.params.zone = z;
            out.push_back(std::move(i));
          }
        }
      }
      if (want(RuleName::EraseSpider)) {
        for (const auto& s : n.spiders) {
          if (!region_disjoint(s.habitat, n.shaded)) continue;
          RuleInstance i{RuleName::EraseSpider, pos, {}};
          i.params.habitat = s.habitat;
          out.push_back(std::move(i));
        }
      }
    }
    if (want(RuleName::IdempotencyIntro))
      out.push_back({RuleName::IdempotencyIntro, pos, {}});
    if (want(RuleName::IdempotencyElim) && sub->kind == Kind::Or &&
        canonically_equal(sub->left, sub->right))
      out.push_back({RuleName::IdempotencyElim, pos, {}});
  }
  return out;
}

}  // namespace spidersq
