#include <doctest.h>

#include <algorithm>

#include "helpers.hpp"
#include "spidersq/diagram.hpp"

using namespace spidersq;
using spidersq::testing::example_ab;
using spidersq::testing::make_diagram;

TEST_CASE("zone order is lexicographic on the bit-index sequence") {
  // Two labels: () < (A) < (A B) < (B).
  CHECK(zone_less(0, 1));
  CHECK(zone_less(1, 3));
  CHECK(zone_less(3, 2));
  CHECK_FALSE(zone_less(2, 3));
  CHECK_FALSE(zone_less(1, 1));
  // The empty zone sorts before everything else.
  for (Mask z = 1; z < 8; ++z) CHECK(zone_less(0, z));

  // Four labels M,S1,S2,X (bits 0..3): the six-zone language order.
  std::vector<Mask> zs = {8, 9, 11, 13, 15, 0};
  std::sort(zs.begin(), zs.end(), zone_less);
  CHECK(zs == std::vector<Mask>{0, 15, 11, 13, 9, 8});
}

TEST_CASE("sorted_region sorts and rejects duplicates") {
  CHECK(sorted_region({2, 0, 1}, "r") == Region{0, 1, 2});
  CHECK_THROWS_AS(sorted_region({1, 1}, "r"), DiagramError);
}

TEST_CASE("region set operations") {
  Region a = {0, 1};
  Region b = {1, 3, 2};
  std::sort(b.begin(), b.end(), zone_less);
  CHECK(region_contains(a, 1));
  CHECK_FALSE(region_contains(a, 2));
  CHECK(region_subset({1}, a));
  CHECK_FALSE(region_subset(a, {1}));
  CHECK(region_disjoint({0}, {1, 2}));
  CHECK_FALSE(region_disjoint(a, b));
  CHECK(region_union(a, b) == Region{0, 1, 3, 2});
  CHECK(region_minus(b, a) == Region{3, 2});
}

TEST_CASE("validate_unitary accepts the A/B example") {
  CHECK(validate_unitary(example_ab()).empty());
  CHECK(is_valid(example_ab()));
}

TEST_CASE("validate_unitary pinpoints broken invariants") {
  auto where_of = [](const UnitaryDiagram& d) {
    auto v = validate_unitary(d);
    REQUIRE_FALSE(v.empty());
    return v[0].where;
  };

  UnitaryDiagram d = example_ab();
  d.labels = {"B", "A"};
  CHECK(where_of(d) == "labels");

  d = example_ab();
  d.zones = {1, 2, 3};  // no outer zone
  d.spiders.clear();
  CHECK(where_of(d) == "zones.outer");

  d = example_ab();
  d.zones = {0, 1};  // B appears in no zone
  d.shaded.clear();
  d.spiders = {{1, {1}}};
  CHECK(where_of(d) == "zones.cover");

  d = example_ab();
  d.zones.push_back(1);
  CHECK(where_of(d) == "zones");

  d = example_ab();
  d.shaded = {2, 2};
  CHECK(where_of(d) == "shading");

  d = example_ab();
  d.shaded = {1, 2};  // fine
  CHECK(validate_unitary(d).empty());

  d = example_ab();
  d.spiders = {{0, {1}}};
  CHECK(where_of(d) == "spiders.count");

  d = example_ab();
  d.spiders = {{1, {}}};
  CHECK(where_of(d) == "spiders.habitat");

  d = example_ab();
  d.spiders = {{1, {1}}, {2, {1}}};  // same habitat twice
  CHECK(where_of(d) == "spiders.habitat");
}

TEST_CASE("normalized sorts zones, shading and habitats") {
  UnitaryDiagram d;
  d.labels = {"A", "B"};
  d.zones = {2, 3, 1, 0};
  d.shaded = {2, 1};
  d.spiders = {{1, {2, 0}}, {1, {1}}};
  UnitaryDiagram n = normalized(d);
  CHECK(n.zones == std::vector<Mask>{0, 1, 3, 2});
  CHECK(n.shaded == std::vector<Mask>{1, 2});
  CHECK(n.spiders.size() == 2);
  CHECK(n.spiders[0].habitat == Region{0, 2});
  CHECK(n.spiders[1].habitat == Region{1});
}

TEST_CASE("add_spiders merges entries with the same habitat") {
  UnitaryDiagram d = example_ab();
  add_spiders(d, {1, 0}, 2);  // same habitat as the existing entry, unsorted
  REQUIRE(d.spiders.size() == 1);
  CHECK(d.spiders[0].count == 3);
  add_spiders(d, {2}, 1);
  CHECK(d.spiders.size() == 2);
  CHECK(d.total_spiders() == 4);
}

TEST_CASE("missing_zones lists absent label combinations in canonical order") {
  CHECK(missing_zones(example_ab()).empty());
  UnitaryDiagram d = make_diagram({"A", "B"}, {0, 1, 2}, {}, {});
  CHECK(missing_zones(d) == std::vector<Mask>{3});
}

TEST_CASE("zone and region rendering") {
  std::vector<std::string> ls = {"A", "B"};
  CHECK(zone_to_string(ls, 0) == "()");
  CHECK(zone_to_string(ls, 3) == "(A B)");
  CHECK(region_to_string(ls, {0, 1}) == "()+(A)");
}

TEST_CASE("canonical form of a unitary diagram is order-independent") {
  UnitaryDiagram a;
  a.labels = {"A"};
  a.zones = {0, 1};
  a.shaded = {1};
  a.spiders = {{1, {0}}};
  CHECK(canonical_form(a) == "U{L=[A];Z=[(),(A)];Sh=[(A)];SI=[1@()]}");

  UnitaryDiagram shuffled = example_ab();
  std::reverse(shuffled.zones.begin(), shuffled.zones.end());
  std::reverse(shuffled.spiders[0].habitat.begin(), shuffled.spiders[0].habitat.end());
  CHECK(canonical_form(shuffled) == canonical_form(example_ab()));
  CHECK(canonically_equal(shuffled, example_ab()));
}

TEST_CASE("compound canonical form: commutative but not associative") {
  CompoundPtr u = unit(example_ab());
  CompoundPtr v = unit(make_diagram({"A", "B"}, {0, 1, 2, 3}, {}, {{1, {2}}}));
  CHECK(canonical_form(top()) == "T");
  CHECK(canonical_form(bottom()) == "F");
  CHECK(canonical_form(conj(u, v)) == canonical_form(conj(v, u)));
  CHECK(canonical_form(disj(u, v)) == canonical_form(disj(v, u)));
  CHECK(canonical_form(conj(u, v)) != canonical_form(disj(u, v)));
  // Different tree shapes stay different even with the same leaves.
  CompoundPtr w = top();
  CHECK(canonical_form(conj(conj(u, v), w)) != canonical_form(conj(u, conj(v, w))));
  CHECK(canonically_equal(conj(u, v), conj(v, u)));
}

TEST_CASE("positions, subterms and replacement") {
  CompoundPtr u = unit(example_ab());
  CompoundPtr t = conj(disj(u, top()), bottom());
  CHECK(positions_preorder(t) ==
        std::vector<std::string>{"", "L", "LL", "LR", "R"});
  CHECK(subterm_at(t, "")->kind == CompoundDiagram::Kind::And);
  CHECK(subterm_at(t, "LL")->kind == CompoundDiagram::Kind::Unit);
  CHECK(subterm_at(t, "R")->kind == CompoundDiagram::Kind::Bottom);
  CHECK_THROWS_AS(subterm_at(t, "RR"), DiagramError);
  CHECK_THROWS_AS(subterm_at(t, "X"), DiagramError);

  CompoundPtr r = replace_at(t, "LR", bottom());
  CHECK(subterm_at(r, "LR")->kind == CompoundDiagram::Kind::Bottom);
  CHECK(subterm_at(r, "LL")->kind == CompoundDiagram::Kind::Unit);  // untouched
  CHECK(canonical_form(replace_at(t, "", top())) == "T");
  CHECK_THROWS_AS(replace_at(u, "L", top()), DiagramError);
}

TEST_CASE("validate_compound flags mixed label sets") {
  CompoundPtr ok = conj(unit(example_ab()), unit(example_ab()));
  CHECK(validate_compound(ok).empty());
  CHECK(labels_of(ok) == std::vector<std::string>{"A", "B"});
  CHECK(labels_of(top()).empty());

  UnitaryDiagram other = make_diagram({"C"}, {0, 1}, {}, {});
  auto v = validate_compound(conj(unit(example_ab()), unit(other)));
  REQUIRE_FALSE(v.empty());
  CHECK(v[0].where == "compound.labels");
}
