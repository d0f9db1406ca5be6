#include "spidersq/diagram.hpp"

#include <algorithm>
#include <bit>
#include <cctype>
#include <set>
#include <sstream>

namespace spidersq {

bool zone_less(Mask a, Mask b) {
  while (a && b) {
    int ia = std::countr_zero(a);
    int ib = std::countr_zero(b);
    if (ia != ib) return ia < ib;
    a &= a - 1;
    b &= b - 1;
  }
  return a == 0 && b != 0;  // a is a proper prefix of b
}

bool region_less(const Region& a, const Region& b) {
  return std::lexicographical_compare(a.begin(), a.end(), b.begin(), b.end(), zone_less);
}

Region sorted_region(Region r, const std::string& what) {
  std::sort(r.begin(), r.end(), zone_less);
  for (size_t i = 1; i < r.size(); ++i)
    if (r[i] == r[i - 1]) throw DiagramError(what + ": duplicate zone in region");
  return r;
}

bool region_contains(const Region& sorted, Mask z) {
  return std::binary_search(sorted.begin(), sorted.end(), z, zone_less);
}

bool region_subset(const Region& a, const Region& b) {
  return std::includes(b.begin(), b.end(), a.begin(), a.end(), zone_less);
}

bool region_disjoint(const Region& a, const Region& b) {
  size_t i = 0, j = 0;
  while (i < a.size() && j < b.size()) {
    if (a[i] == b[j]) return false;
    if (zone_less(a[i], b[j])) ++i; else ++j;
  }
  return true;
}

Region region_union(const Region& a, const Region& b) {
  Region out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out), zone_less);
  return out;
}

Region region_minus(const Region& a, const Region& b) {
  Region out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out), zone_less);
  return out;
}

int UnitaryDiagram::total_spiders() const {
  int n = 0;
  for (const auto& s : spiders) n += s.count;
  return n;
}

namespace {

bool is_identifier(const std::string& s) {
  if (s.empty()) return false;
  if (!std::isalpha(static_cast<unsigned char>(s[0])) && s[0] != '_') return false;
  for (char c : s)
    if (!std::isalnum(static_cast<unsigned char>(c)) && c != '_') return false;
  return true;
}

bool habitat_less(const SpiderEntry& a, const SpiderEntry& b) {
  return region_less(a.habitat, b.habitat);
}

}  // namespace

std::vector<Violation> validate_unitary(const UnitaryDiagram& d) {
  std::vector<Violation> out;
  auto bad = [&](std::string where, std::string detail) {
    out.push_back({std::move(where), std::move(detail)});
  };

  if (d.labels.size() > kMaxLabels) {
    bad("labels", "more than 16 labels are not supported");
    return out;
  }
  for (const auto& l : d.labels)
    if (!is_identifier(l)) bad("labels", "not an identifier: '" + l + "'");
  for (size_t i = 1; i < d.labels.size(); ++i) {
    if (d.labels[i] == d.labels[i - 1]) bad("labels", "duplicate label: " + d.labels[i]);
    else if (d.labels[i] < d.labels[i - 1]) bad("labels", "labels must be sorted");
  }
  if (!out.empty()) return out;  // masks are meaningless without a sane label set

  const Mask full = d.full_mask();
  std::set<Mask> zset;
  Mask covered = 0;
  for (Mask z : d.zones) {
    if (z & ~full) bad("zones", "zone uses an unknown label bit");
    if (!zset.insert(z).second) bad("zones", "duplicate zone " + zone_to_string(d.labels, z));
    covered |= z;
  }
  if (!zset.count(0)) bad("zones.outer", "the outer zone (empty ins) is missing");
  if (covered != full) {
    for (size_t i = 0; i < d.labels.size(); ++i)
      if (!(covered & (Mask(1) << i)))
        bad("zones.cover", "label " + d.labels[i] + " appears in no zone");
  }

  std::set<Mask> shset;
  for (Mask z : d.shaded) {
    if (!zset.count(z)) bad("shading", "shaded zone is not a zone: " + zone_to_string(d.labels, z));
    if (!shset.insert(z).second) bad("shading", "duplicate shaded zone");
  }

  std::set<Region> habitats;
  for (const auto& s : d.spiders) {
    if (s.count < 1) bad("spiders.count", "spider count must be positive");
    if (s.habitat.empty()) {
      bad("spiders.habitat", "empty habitat");
      continue;
    }
    Region h = s.habitat;
    std::sort(h.begin(), h.end(), zone_less);
    for (size_t i = 1; i < h.size(); ++i)
      if (h[i] == h[i - 1]) bad("spiders.habitat", "duplicate zone in habitat");
    for (Mask z : h)
      if (!zset.count(z))
        bad("spiders.habitat", "habitat zone is not a zone: " + zone_to_string(d.labels, z));
    if (!habitats.insert(h).second)
      bad("spiders.habitat",
          "two entries share the habitat " + region_to_string(d.labels, h));
  }
  return out;
}

bool is_valid(const UnitaryDiagram& d) { return validate_unitary(d).empty(); }

UnitaryDiagram normalized(const UnitaryDiagram& d) {
  UnitaryDiagram n = d;
  std::sort(n.zones.begin(), n.zones.end(), zone_less);
  std::sort(n.shaded.begin(), n.shaded.end(), zone_less);
  for (auto& s : n.spiders) std::sort(s.habitat.begin(), s.habitat.end(), zone_less);
  std::sort(n.spiders.begin(), n.spiders.end(), habitat_less);
  return n;
}

void add_spiders(UnitaryDiagram& d, const Region& habitat, int count) {
  Region h = habitat;
  std::sort(h.begin(), h.end(), zone_less);
  for (auto& s : d.spiders) {
    Region sh = s.habitat;
    std::sort(sh.begin(), sh.end(), zone_less);
    if (sh == h) {
      s.count += count;
      return;
    }
  }
  d.spiders.push_back({count, h});
  std::sort(d.spiders.begin(), d.spiders.end(), habitat_less);
}

std::vector<Mask> missing_zones(const UnitaryDiagram& d) {
  const Mask full = d.full_mask();
  std::set<Mask> present(d.zones.begin(), d.zones.end());
  std::vector<Mask> out;
  for (Mask z = 0; ; ++z) {
    if (!present.count(z)) out.push_back(z);
    if (z == full) break;
  }
  std::sort(out.begin(), out.end(), zone_less);
  return out;
}

std::string zone_to_string(const std::vector<std::string>& labels, Mask z) {
  std::string s = "(";
  bool first = true;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (z & (Mask(1) << i)) {
      if (!first) s += ' ';
      s += labels[i];
      first = false;
    }
  }
  s += ')';
  return s;
}

std::string region_to_string(const std::vector<std::string>& labels, const Region& r) {
  std::string s;
  for (size_t i = 0; i < r.size(); ++i) {
    if (i) s += '+';
    s += zone_to_string(labels, r[i]);
  }
  return s;
}

// ---- compound diagrams ----

CompoundPtr unit(UnitaryDiagram d) {
  auto n = std::make_shared<CompoundDiagram>();
  n->kind = CompoundDiagram::Kind::Unit;
  n->unit = std::move(d);
  return n;
}

CompoundPtr top() {
  auto n = std::make_shared<CompoundDiagram>();
  n->kind = CompoundDiagram::Kind::Top;
  return n;
}

CompoundPtr bottom() {
  auto n = std::make_shared<CompoundDiagram>();
  n->kind = CompoundDiagram::Kind::Bottom;
  return n;
}

static CompoundPtr binary_node(CompoundDiagram::Kind k, CompoundPtr a, CompoundPtr b) {
  if (!a || !b) throw DiagramError("null operand in compound diagram");
  auto n = std::make_shared<CompoundDiagram>();
  n->kind = k;
  n->left = std::move(a);
  n->right = std::move(b);
  return n;
}

CompoundPtr conj(CompoundPtr a, CompoundPtr b) {
  return binary_node(CompoundDiagram::Kind::And, std::move(a), std::move(b));
}

CompoundPtr disj(CompoundPtr a, CompoundPtr b) {
  return binary_node(CompoundDiagram::Kind::Or, std::move(a), std::move(b));
}

bool is_leaf_kind(const CompoundPtr& d) {
  return d->kind == CompoundDiagram::Kind::Unit || d->kind == CompoundDiagram::Kind::Top ||
         d->kind == CompoundDiagram::Kind::Bottom;
}

static void collect_units(const CompoundPtr& d, std::vector<const UnitaryDiagram*>& out) {
  switch (d->kind) {
    case CompoundDiagram::Kind::Unit: out.push_back(&d->unit); break;
    case CompoundDiagram::Kind::And:
    case CompoundDiagram::Kind::Or:
      collect_units(d->left, out);
      collect_units(d->right, out);
      break;
    default: break;
  }
}

std::vector<Violation> validate_compound(const CompoundPtr& d) {
  std::vector<Violation> out;
  if (!d) return {{"compound", "null diagram"}};
  std::vector<const UnitaryDiagram*> units;
  collect_units(d, units);
  for (const auto* u : units) {
    auto v = validate_unitary(*u);
    out.insert(out.end(), v.begin(), v.end());
  }
  for (size_t i = 1; i < units.size(); ++i)
    if (units[i]->labels != units[0]->labels) {
      out.push_back({"compound.labels", "unit leaves carry different label sets"});
      break;
    }
  return out;
}

std::vector<std::string> labels_of(const CompoundPtr& d) {
  std::vector<const UnitaryDiagram*> units;
  collect_units(d, units);
  return units.empty() ? std::vector<std::string>{} : units[0]->labels;
}

std::string canonical_form(const UnitaryDiagram& d) {
  UnitaryDiagram n = normalized(d);
  std::ostringstream os;
  os << "U{L=[";
  for (size_t i = 0; i < n.labels.size(); ++i) os << (i ? "," : "") << n.labels[i];
  os << "];Z=[";
  for (size_t i = 0; i < n.zones.size(); ++i)
    os << (i ? "," : "") << zone_to_string(n.labels, n.zones[i]);
  os << "];Sh=[";
  for (size_t i = 0; i < n.shaded.size(); ++i)
    os << (i ? "," : "") << zone_to_string(n.labels, n.shaded[i]);
  os << "];SI=[";
  for (size_t i = 0; i < n.spiders.size(); ++i)
    os << (i ? "," : "") << n.spiders[i].count << "@" << region_to_string(n.labels, n.spiders[i].habitat);
  os << "]}";
  return os.str();
}

std::string canonical_form(const CompoundPtr& d) {
  if (!d) throw DiagramError("null diagram");
  switch (d->kind) {
    case CompoundDiagram::Kind::Top: return "T";
    case CompoundDiagram::Kind::Bottom: return "F";
    case CompoundDiagram::Kind::Unit: return canonical_form(d->unit);
    case CompoundDiagram::Kind::And:
    case CompoundDiagram::Kind::Or: {
      std::string l = canonical_form(d->left);
      std::string r = canonical_form(d->right);
      if (r < l) std::swap(l, r);
      const char* op = d->kind == CompoundDiagram::Kind::And ? "A" : "O";
      return std::string(op) + "(" + l + "," + r + ")";
    }
  }
  throw DiagramError("unreachable compound kind");
}

bool canonically_equal(const UnitaryDiagram& a, const UnitaryDiagram& b) {
  return canonical_form(a) == canonical_form(b);
}

bool canonically_equal(const CompoundPtr& a, const CompoundPtr& b) {
  return canonical_form(a) == canonical_form(b);
}

CompoundPtr subterm_at(const CompoundPtr& d, const std::string& position) {
  CompoundPtr cur = d;
  for (char c : position) {
    if (!cur || (cur->kind != CompoundDiagram::Kind::And && cur->kind != CompoundDiagram::Kind::Or))
      throw DiagramError("position '" + position + "' does not exist in the diagram");
    if (c == 'L') cur = cur->left;
    else if (c == 'R') cur = cur->right;
    else throw DiagramError("bad position character '" + std::string(1, c) + "'");
  }
  if (!cur) throw DiagramError("position '" + position + "' does not exist in the diagram");
  return cur;
}

CompoundPtr replace_at(const CompoundPtr& d, const std::string& position, CompoundPtr sub) {
  if (position.empty()) return sub;
  if (!d || (d->kind != CompoundDiagram::Kind::And && d->kind != CompoundDiagram::Kind::Or))
    throw DiagramError("position '" + position + "' does not exist in the diagram");
  char c = position[0];
  std::string rest = position.substr(1);
  if (c == 'L')
    return binary_node(d->kind, replace_at(d->left, rest, std::move(sub)), d->right);
  if (c == 'R')
    return binary_node(d->kind, d->left, replace_at(d->right, rest, std::move(sub)));
  throw DiagramError("bad position character '" + std::string(1, c) + "'");
}

static void collect_positions(const CompoundPtr& d, std::string& prefix,
                              std::vector<std::string>& out) {
  out.push_back(prefix);
  if (d->kind == CompoundDiagram::Kind::And || d->kind == CompoundDiagram::Kind::Or) {
    prefix.push_back('L');
    collect_positions(d->left, prefix, out);
    prefix.back() = 'R';
    collect_positions(d->right, prefix, out);
    prefix.pop_back();
  }
}

std::vector<std::string> positions_preorder(const CompoundPtr& d) {
  if (!d) throw DiagramError("null diagram");
  std::vector<std::string> out;
  std::string prefix;
  collect_positions(d, prefix, out);
  return out;
}

}  // namespace spidersq
