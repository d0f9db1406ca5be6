#include "spidersq/search.hpp"

#include <algorithm>
#include <unordered_map>

#include "spidersq/semantics.hpp"

namespace spidersq {

namespace {

using Kind = CompoundDiagram::Kind;

struct Production {
  bool from_premise = false;
  size_t premise_index = 0;
  RuleInstance inst;
  int host = -1;
  int donor_state = -1;      // index into states
  int donor_assertion = -1;  // index into the assertion pool
};

struct Engine {
  const SearchConfig& cfg;
  std::vector<CompoundPtr> states;
  std::vector<int> layers;
  std::vector<Production> prods;
  std::unordered_map<std::string, int> intern;
  std::vector<int> leaf_roots;  // states whose root is Unit/Top/Bottom, discovery order
  std::vector<CompoundPtr> assertion_units;
  std::string goal_form;
  bool allow_intro = true;
  int found = -1;

  explicit Engine(const SearchConfig& c) : cfg(c) {
    for (const auto& a : cfg.assertions) {
      auto v = validate_unitary(a);
      if (!v.empty())
        throw DiagramError("invalid assertion diagram: " + v[0].where + ": " + v[0].detail);
      assertion_units.push_back(unit(normalized(a)));
    }
  }

  bool want(RuleName r) const {
    return cfg.rules.empty() ||
           std::find(cfg.rules.begin(), cfg.rules.end(), r) != cfg.rules.end();
  }

  // Returns true when the goal was reached.
  bool add_state(CompoundPtr d, int layer, Production p) {
    std::string c = canonical_form(d);
    auto [it, fresh] = intern.try_emplace(c, static_cast<int>(states.size()));
    if (!fresh) return false;
    states.push_back(std::move(d));
    layers.push_back(layer);
    prods.push_back(std::move(p));
    if (is_leaf_kind(states.back())) leaf_roots.push_back(static_cast<int>(states.size()) - 1);
    if (!goal_form.empty() && c == goal_form) {
      found = static_cast<int>(states.size()) - 1;
      return true;
    }
    return false;
  }

  bool seed() {
    for (size_t i = 0; i < cfg.premises.size(); ++i) {
      auto v = validate_compound(cfg.premises[i]);
      if (!v.empty())
        throw DiagramError("invalid premise: " + v[0].where + ": " + v[0].detail);
      Production p;
      p.from_premise = true;
      p.premise_index = i;
      if (add_state(cfg.premises[i], 0, p)) return true;
    }
    return false;
  }

  bool try_product(const CompoundPtr& host_c, const RuleInstance& inst, int layer, int host,
                   int donor_state, int donor_assertion, const CompoundPtr& donor) {
    CompoundPtr out;
    try {
      out = donor ? apply_binary(host_c, inst, donor) : apply_unary(host_c, inst);
    } catch (const RuleError&) {
      return false;
    }
    Production p;
    p.inst = inst;
    p.host = host;
    p.donor_state = donor_state;
    p.donor_assertion = donor_assertion;
    return add_state(std::move(out), layer, std::move(p));
  }

  // Donor enumeration shared by Combine and CopySpider: state leaf-roots in
  // discovery order, then the assertion pool. `host_new` marks hosts first
  // derived in the previous layer; stale host/donor pairs were already tried.
  template <typename Fn>
  bool each_donor(bool host_new, int prev_layer, size_t leaf_count, Fn&& fn) {
    for (size_t di = 0; di < leaf_count; ++di) {
      int ds = leaf_roots[di];
      if (!host_new && layers[static_cast<size_t>(ds)] != prev_layer) continue;
      // fn interns new states, which may reallocate `states`; hold the donor
      // by value so the reference cannot dangle mid-iteration.
      CompoundPtr donor = states[static_cast<size_t>(ds)];
      if (fn(donor, ds, -1)) return true;
    }
    if (host_new)
      for (size_t ai = 0; ai < assertion_units.size(); ++ai)
        if (fn(assertion_units[ai], -1, static_cast<int>(ai))) return true;
    return false;
  }

  bool expand_host(int host, int layer, size_t leaf_count) {
    const int prev = layer - 1;
    const bool host_new = layers[static_cast<size_t>(host)] == prev;
    const CompoundPtr host_c = states[static_cast<size_t>(host)];

    // Unary instances, grouped per position in enumeration order. The two
    // binary rules slot into the rule order around them at each position.
    std::vector<RuleInstance> unary;
    if (host_new) unary = applicable_instances(host_c, cfg.rules);
    size_t ui = 0;

    for (const std::string& pos : positions_preorder(host_c)) {
      CompoundPtr sub = subterm_at(host_c, pos);

      if (want(RuleName::Combine) && is_leaf_kind(sub)) {
        RuleInstance inst{RuleName::Combine, pos, {}};
        if (each_donor(host_new, prev, leaf_count, [&](const CompoundPtr& donor, int ds, int da) {
              if (!is_leaf_kind(donor)) return false;
              return try_product(host_c, inst, layer, host, ds, da, donor);
            }))
          return true;
      }

      // ConjElim, SplitSpider, AddFeet, EraseSpider at this position.
      for (; ui < unary.size() && unary[ui].position == pos &&
             unary[ui].rule < RuleName::CopySpider;
           ++ui)
        if (try_product(host_c, unary[ui], layer, host, -1, -1, nullptr)) return true;

      if (want(RuleName::CopySpider) && sub->kind == Kind::Unit) {
        UnitaryDiagram hostu = normalized(sub->unit);
        if (each_donor(host_new, prev, leaf_count, [&](const CompoundPtr& donor, int ds, int da) {
              if (donor->kind != Kind::Unit) return false;
              UnitaryDiagram donu = normalized(donor->unit);
              // Regions r1 = r2: single zones first, then whole donor habitats.
              std::vector<Region> regions;
              for (Mask z : donu.zones)
                if (region_contains(hostu.zones, z)) regions.push_back({z});
              for (const auto& s : donu.spiders)
                if (s.habitat.size() >= 2) regions.push_back(s.habitat);
              for (const auto& r : regions) {
                for (const auto& s : donu.spiders) {
                  if (!region_subset(s.habitat, r)) continue;
                  RuleInstance inst{RuleName::CopySpider, pos, {}};
                  inst.params.r1 = r;
                  inst.params.r2 = r;
                  inst.params.spider = s.habitat;
                  if (try_product(host_c, inst, layer, host, ds, da, donor)) return true;
                }
              }
              return false;
            }))
          return true;
      }

      // IdempotencyIntro / IdempotencyElim at this position. Introduction is
      // explored only when the goal itself contains a disjunction: any proof
      // of an Or-free goal that introduces Or(t, t) must later collapse it
      // with equal children, and rewriting t directly reaches the same term,
      // so skipping these states loses no proofs.
      for (; ui < unary.size() && unary[ui].position == pos; ++ui) {
        if (!allow_intro && unary[ui].rule == RuleName::IdempotencyIntro) continue;
        if (try_product(host_c, unary[ui], layer, host, -1, -1, nullptr)) return true;
      }
    }
    return false;
  }

  void check_labels() const {
    std::vector<std::string> ref;
    auto meld = [&](const std::vector<std::string>& l) {
      if (l.empty()) return;
      if (ref.empty()) ref = l;
      else if (ref != l)
        throw DiagramError("premises, assertions and goal must share one label set");
    };
    for (const auto& p : cfg.premises) meld(labels_of(p));
    for (const auto& a : cfg.assertions) meld(a.labels);
  }

  // Runs the closure; stops early when the goal shows up.
  void run(const std::string& goal) {
    goal_form = goal;
    allow_intro = goal.empty() || goal.find("O(") != std::string::npos;
    check_labels();
    if (seed()) return;
    for (int layer = 1; layer <= std::max(cfg.max_depth, 0); ++layer) {
      size_t n_states = states.size();
      size_t n_leaves = leaf_roots.size();
      bool grew = false;
      for (size_t host = 0; host < n_states; ++host) {
        size_t before = states.size();
        if (expand_host(static_cast<int>(host), layer, n_leaves)) return;
        grew = grew || states.size() != before;
      }
      if (!grew) return;  // closure reached early
    }
  }

  ProofPtr build(int idx, std::vector<ProofPtr>& memo) const {
    auto& slot = memo[static_cast<size_t>(idx)];
    if (slot) return slot;
    const Production& p = prods[static_cast<size_t>(idx)];
    if (p.from_premise) {
      slot = premise(cfg.premises[p.premise_index]);
      return slot;
    }
    std::vector<ProofPtr> children{build(p.host, memo)};
    if (p.donor_state >= 0) children.push_back(build(p.donor_state, memo));
    else if (p.donor_assertion >= 0)
      children.push_back(assertion(assertion_units[static_cast<size_t>(p.donor_assertion)]));
    slot = rule_app(states[static_cast<size_t>(idx)], p.inst, std::move(children));
    return slot;
  }
};

}  // namespace

std::optional<ProofPtr> derive(const SearchConfig& config, const CompoundPtr& goal) {
  if (!goal) throw DiagramError("null goal");
  auto v = validate_compound(goal);
  if (!v.empty()) throw DiagramError("invalid goal: " + v[0].where + ": " + v[0].detail);
  Engine e(config);
  {
    auto gl = labels_of(goal);
    std::vector<std::string> pl;
    for (const auto& p : config.premises)
      if (pl.empty()) pl = labels_of(p);
    if (!gl.empty() && !pl.empty() && gl != pl)
      throw DiagramError("premises, assertions and goal must share one label set");
  }
  e.check_labels();
  // Soundness gate: every rule product is entailed by the premises and
  // assertions it consumed, so one bounded countermodel refutes derivability
  // at every depth, not just this one. The search runs only when the
  // entailment holds.
  {
    CompoundPtr lhs;
    for (const auto& p : config.premises) lhs = lhs ? conj(lhs, p) : p;
    for (const auto& a : e.assertion_units) lhs = lhs ? conj(lhs, a) : a;
    if (!lhs || !entails(lhs, goal, 3).holds) return std::nullopt;
  }
  e.run(canonical_form(goal));
  if (e.found < 0) return std::nullopt;
  std::vector<ProofPtr> memo(e.states.size());
  return e.build(e.found, memo);
}

std::map<std::string, int> reachable_set(const SearchConfig& config) {
  Engine e(config);
  e.run("");
  std::map<std::string, int> out;
  for (size_t i = 0; i < e.states.size(); ++i)
    out[canonical_form(e.states[i])] = e.layers[i];
  return out;
}

}  // namespace spidersq
