#include <doctest.h>

#include <map>
#include <string>

#include "helpers.hpp"
#include "spidersq/proof.hpp"

using namespace spidersq;
using spidersq::testing::example_ab;
using spidersq::testing::make_diagram;

namespace {

RuleInstance add_feet_inst(const std::string& pos, Region habitat, Mask zone) {
  RuleInstance i;
  i.rule = RuleName::AddFeet;
  i.position = pos;
  i.params.habitat = std::move(habitat);
  i.params.zone = zone;
  return i;
}

RuleInstance erase_inst(const std::string& pos, Region habitat) {
  RuleInstance i;
  i.rule = RuleName::EraseSpider;
  i.position = pos;
  i.params.habitat = std::move(habitat);
  return i;
}

}  // namespace

TEST_CASE("a linear proof replays cleanly") {
  CompoundPtr d0 = unit(example_ab());
  UnitaryDiagram wide = add_feet(example_ab(), {{0, 1}, 0}, 3);
  UnitaryDiagram bare = erase_spider(wide, {{0, 1, 3}, 0});

  ProofPtr p0 = premise(d0);
  ProofPtr p1 = rule_app(unit(wide), add_feet_inst("", {0, 1}, 3), {p0});
  ProofPtr p2 = rule_app(unit(bare), erase_inst("", {0, 1, 3}), {p1});

  CheckReport r = check_proof(p2, {d0});
  CHECK(r.valid);
  CHECK(r.steps_checked == 2);
  CHECK_FALSE(r.first_failure.has_value());
  REQUIRE(r.premises_used.size() == 1);
  CHECK(canonically_equal(r.premises_used[0], d0));
  CHECK(r.assertions_used.empty());

  std::map<std::string, int> expect = {{"AddFeet", 1}, {"EraseSpider", 1}};
  CHECK(rule_multiset(p2) == expect);
  CHECK(proof_depth(p2) == 2);
  CHECK(proof_depth(p0) == 0);
}

TEST_CASE("binary steps take the donor as the second child") {
  UnitaryDiagram a = make_diagram({"A"}, {0, 1}, {1}, {});
  UnitaryDiagram b = make_diagram({"A"}, {0, 1}, {}, {{1, {0}}});
  UnitaryDiagram both = make_diagram({"A"}, {0, 1}, {1}, {{1, {0}}});

  ProofPtr root = rule_app(unit(both), {RuleName::Combine, "", {}},
                           {premise(unit(a)), assertion(unit(b))});
  CheckReport r = check_proof(root, {unit(a)});
  CHECK(r.valid);
  CHECK(r.steps_checked == 1);
  REQUIRE(r.assertions_used.size() == 1);
  CHECK(canonically_equal(r.assertions_used[0], unit(b)));

  ProofPtr short_handed = rule_app(unit(both), {RuleName::Combine, "", {}}, {premise(unit(a))});
  CheckReport bad = check_proof(short_handed, {unit(a)});
  CHECK_FALSE(bad.valid);
  REQUIRE(bad.first_failure.has_value());
  CHECK(bad.first_failure->second == "Combine takes 2 subproof(s), found 1");
}

TEST_CASE("premises must come from the allowed pool") {
  CompoundPtr d0 = unit(example_ab());
  CheckReport r = check_proof(premise(d0), {});
  CHECK_FALSE(r.valid);
  REQUIRE(r.first_failure.has_value());
  CHECK(r.first_failure->first == "");
  CHECK(r.first_failure->second == "premise is not in the allowed pool");

  // Pool membership is judged canonically.
  UnitaryDiagram shuffled = example_ab();
  std::reverse(shuffled.zones.begin(), shuffled.zones.end());
  CHECK(check_proof(premise(d0), {unit(shuffled)}).valid);
}

TEST_CASE("assertion leaves must be bare unitary diagrams") {
  CompoundPtr d0 = unit(example_ab());
  CheckReport r = check_proof(assertion(conj(d0, d0)), {});
  CHECK_FALSE(r.valid);
  CHECK(r.first_failure->second == "assertions must be unitary diagrams");

  auto node = std::make_shared<ProofNode>();
  node->kind = ProofNode::Kind::Assertion;
  node->conclusion = d0;
  node->children = {premise(d0)};
  CheckReport withkids = check_proof(node, {d0});
  CHECK_FALSE(withkids.valid);
  CHECK(withkids.first_failure->second == "assertion leaves take no children");
}

TEST_CASE("a corrupted conclusion is caught after the replay") {
  CompoundPtr d0 = unit(example_ab());
  UnitaryDiagram wide = add_feet(example_ab(), {{0, 1}, 0}, 3);
  ProofPtr lying = rule_app(d0, add_feet_inst("", {0, 1}, 3), {premise(d0)});
  CheckReport r = check_proof(lying, {d0});
  CHECK_FALSE(r.valid);
  CHECK(r.steps_checked == 1);
  CHECK(r.first_failure->first == "");
  CHECK(r.first_failure->second == "conclusion does not match the replayed rule application");

  // Rule errors during the replay surface verbatim.
  ProofPtr impossible = rule_app(unit(wide), add_feet_inst("", {0, 1}, 1), {premise(d0)});
  CheckReport e = check_proof(impossible, {d0});
  CHECK_FALSE(e.valid);
  CHECK(e.first_failure->second == "add-feet: the habitat already touches (A)");
}

TEST_CASE("the first failure is the leftmost-deepest one") {
  CompoundPtr d0 = unit(example_ab());
  UnitaryDiagram wide = add_feet(example_ab(), {{0, 1}, 0}, 3);
  UnitaryDiagram bare = erase_spider(wide, {{0, 1, 3}, 0});
  ProofPtr inner = rule_app(unit(wide), add_feet_inst("", {0, 1}, 3), {premise(d0)});
  ProofPtr root = rule_app(unit(bare), erase_inst("", {0, 1, 3}), {inner});

  CheckReport r = check_proof(root, {});  // empty pool: the leaf premise fails
  CHECK_FALSE(r.valid);
  CHECK(r.first_failure->first == "0.0");
  CHECK(r.first_failure->second == "premise is not in the allowed pool");
  CHECK(r.steps_checked == 0);
}

TEST_CASE("repeated leaves are reported once, in traversal order") {
  UnitaryDiagram a = make_diagram({"A"}, {0, 1}, {1}, {});
  UnitaryDiagram b = make_diagram({"A"}, {0, 1}, {}, {{1, {0}}});
  UnitaryDiagram both = make_diagram({"A"}, {0, 1}, {1}, {{1, {0}}});
  ProofPtr left = rule_app(unit(both), {RuleName::Combine, "", {}},
                           {premise(unit(a)), assertion(unit(b))});
  // Reuses the assertion b; a second combine with the same donor is a no-op.
  ProofPtr reuse = rule_app(unit(both), {RuleName::Combine, "", {}},
                            {left, assertion(unit(b))});
  CheckReport r = check_proof(reuse, {unit(a), unit(b)});
  CHECK(r.valid);
  CHECK(r.premises_used.size() == 1);
  CHECK(r.assertions_used.size() == 1);
  CHECK(proof_depth(reuse) == 2);

  ProofPtr flipped = rule_app(unit(both), {RuleName::Combine, "", {}},
                              {premise(unit(b)), assertion(unit(a))});
  CheckReport r2 = check_proof(flipped, {unit(a), unit(b)});
  CHECK(r2.valid);
  REQUIRE(r2.premises_used.size() == 1);
  CHECK(canonically_equal(r2.premises_used[0], unit(b)));
  CHECK(proof_depth(flipped) == 1);
}
