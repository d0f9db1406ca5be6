#include "spidersq/semantics.hpp"

#include <algorithm>
#include <bit>
#include <set>

namespace spidersq {

namespace {
constexpr int kMaxUniverse = 20;

void check_interpretation(const Interpretation& I, const std::vector<std::string>& labels) {
  if (I.labels != labels)
    throw DiagramError("interpretation labels do not match the diagram's labels");
  if (I.universe < 0 || I.universe > kMaxUniverse)
    throw DiagramError("universe size out of range");
}
}  // namespace

std::uint32_t zone_denotation(const Interpretation& I, Mask zone) {
  if (I.phi.size() != I.labels.size())
    throw DiagramError("interpretation assigns the wrong number of labels");
  std::uint32_t den = I.universe_mask();
  for (size_t i = 0; i < I.labels.size(); ++i) {
    if (zone & (Mask(1) << i)) den &= I.phi[i];
    else den &= ~I.phi[i];
  }
  return den & I.universe_mask();
}

std::uint32_t region_denotation(const Interpretation& I, const Region& r) {
  std::uint32_t den = 0;
  for (Mask z : r) den |= zone_denotation(I, z);
  return den;
}

namespace {

// Tries to injectively place the remaining spiders (habitat denotation masks)
// into unused elements so every element of `must_cover` ends up used.
bool place_spiders(const std::vector<std::uint32_t>& dens, size_t i, std::uint32_t used,
                   std::uint32_t must_cover) {
  if (i == dens.size()) return (must_cover & ~used) == 0;
  // Elements still needed but reachable by no later spider make this branch
  // hopeless; checking that here would cost more than the tiny universes save.
  std::uint32_t avail = dens[i] & ~used;
  while (avail) {
    std::uint32_t e = avail & (~avail + 1);  // lowest set bit
    avail &= avail - 1;
    if (place_spiders(dens, i + 1, used | e, must_cover)) return true;
  }
  return false;
}

}  // namespace

bool satisfies(const Interpretation& I, const UnitaryDiagram& d) {
  check_interpretation(I, d.labels);

  // Every element lies in exactly one zone-cell: the mask of labels holding
  // it. Missing zones are empty iff every element's cell is a present zone.
  std::set<Mask> present(d.zones.begin(), d.zones.end());
  std::vector<Mask> cell(static_cast<size_t>(I.universe), 0);
  for (int e = 0; e < I.universe; ++e) {
    Mask sig = 0;
    for (size_t i = 0; i < I.labels.size(); ++i)
      if (I.phi[i] & (1u << e)) sig |= Mask(1) << i;
    if (!present.count(sig)) return false;
    cell[static_cast<size_t>(e)] = sig;
  }

  std::uint32_t shaded_elems = 0;
  std::set<Mask> shset(d.shaded.begin(), d.shaded.end());
  for (int e = 0; e < I.universe; ++e)
    if (shset.count(cell[static_cast<size_t>(e)])) shaded_elems |= 1u << e;

  std::vector<std::uint32_t> dens;
  for (const auto& s : d.spiders) {
    std::uint32_t den = region_denotation(I, s.habitat);
    for (int k = 0; k < s.count; ++k) dens.push_back(den);
  }
  if (dens.size() > static_cast<size_t>(I.universe)) return false;

  // Shaded elements no spider can reach can never be covered.
  std::uint32_t reachable = 0;
  for (auto m : dens) reachable |= m;
  if (shaded_elems & ~reachable) return false;

  return place_spiders(dens, 0, 0, shaded_elems);
}

bool satisfies(const Interpretation& I, const CompoundPtr& d) {
  if (!d) throw DiagramError("null diagram");
  switch (d->kind) {
    case CompoundDiagram::Kind::Top: return true;
    case CompoundDiagram::Kind::Bottom: return false;
    case CompoundDiagram::Kind::Unit: return satisfies(I, d->unit);
    case CompoundDiagram::Kind::And:
      return satisfies(I, d->left) && satisfies(I, d->right);
    case CompoundDiagram::Kind::Or:
      return satisfies(I, d->left) || satisfies(I, d->right);
  }
  throw DiagramError("unreachable compound kind");
}

long long interpretation_count(size_t label_count, int universe) {
  long long per = 1ll << universe;  // subsets of the universe
  long long total = 1;
  for (size_t i = 0; i < label_count; ++i) total *= per;
  return total;
}

void for_each_interpretation(const std::vector<std::string>& labels, int universe,
                             const std::function<bool(const Interpretation&)>& visit) {
  if (universe < 0 || universe > kMaxUniverse)
    throw DiagramError("universe size out of range");
  const size_t k = labels.size();
  Interpretation I;
  I.universe = universe;
  I.labels = labels;
  I.phi.assign(k, 0);
  const std::uint32_t per = 1u << universe;
  while (true) {
    if (!visit(I)) return;
    // Advance like a base-2^universe counter, last label fastest.
    size_t i = k;
    while (i > 0) {
      --i;
      if (++I.phi[i] < per) break;
      I.phi[i] = 0;
      if (i == 0) return;
    }
    if (k == 0) return;
  }
}

std::vector<Interpretation> enumerate_interpretations(const std::vector<std::string>& labels,
                                                      int universe) {
  std::vector<Interpretation> out;
  for_each_interpretation(labels, universe, [&](const Interpretation& I) {
    out.push_back(I);
    return true;
  });
  return out;
}

namespace {

std::vector<std::string> common_labels(const CompoundPtr& lhs, const CompoundPtr& rhs) {
  auto la = labels_of(lhs);
  auto lb = labels_of(rhs);
  if (!la.empty() && !lb.empty() && la != lb)
    throw DiagramError("entailment requires both sides to share one label set");
  return la.empty() ? lb : la;
}

}  // namespace

EntailmentVerdict entails(const CompoundPtr& lhs, const CompoundPtr& rhs, int max_universe) {
  auto labels = common_labels(lhs, rhs);
  EntailmentVerdict v;
  v.bound = max_universe;
  for (int u = 0; u <= max_universe; ++u) {
    bool ok = true;
    for_each_interpretation(labels, u, [&](const Interpretation& I) {
      if (satisfies(I, lhs) && !satisfies(I, rhs)) {
        v.countermodel = I;
        ok = false;
        return false;
      }
      return true;
    });
    if (!ok) {
      v.holds = false;
      return v;
    }
  }
  v.holds = true;
  return v;
}

long long count_models(const CompoundPtr& d, int universe) {
  auto labels = labels_of(d);
  long long n = 0;
  for_each_interpretation(labels, universe, [&](const Interpretation& I) {
    if (satisfies(I, d)) ++n;
    return true;
  });
  return n;
}

std::vector<std::uint64_t> sat_profile(const CompoundPtr& d,
                                       const std::vector<std::string>& labels,
                                       int max_universe) {
  auto own = labels_of(d);
  if (!own.empty() && own != labels)
    throw DiagramError("profile labels do not match the diagram's labels");
  long long total = 0;
  for (int u = 0; u <= max_universe; ++u) total += interpretation_count(labels.size(), u);
  std::vector<std::uint64_t> bits(static_cast<size_t>((total + 63) / 64), 0);
  long long idx = 0;
  for (int u = 0; u <= max_universe; ++u) {
    for_each_interpretation(labels, u, [&](const Interpretation& I) {
      if (satisfies(I, d))
        bits[static_cast<size_t>(idx >> 6)] |= std::uint64_t(1) << (idx & 63);
      ++idx;
      return true;
    });
  }
  return bits;
}

bool profile_subset(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  if (a.size() != b.size()) throw DiagramError("profiles of different length");
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

}  // namespace spidersq
