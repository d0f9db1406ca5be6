// Acceptance gate: seven end-to-end checks, one PASS/FAIL line each.
// Exits nonzero if any check fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <unordered_map>
#include <vector>

#include "spidersq/diagram.hpp"
#include "spidersq/dot.hpp"
#include "spidersq/dsl.hpp"
#include "spidersq/fol.hpp"
#include "spidersq/greimas.hpp"
#include "spidersq/json_io.hpp"
#include "spidersq/proof.hpp"
#include "spidersq/rules.hpp"
#include "spidersq/search.hpp"
#include "spidersq/semantics.hpp"

using namespace spidersq;

namespace {

int g_failures = 0;

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

void report(int number, const std::string& label, bool pass, const std::string& detail) {
  std::cout << "criterion " << number << " (" << label << "): " << (pass ? "PASS" : "FAIL")
            << " (" << detail << ")" << std::endl;
  if (!pass) ++g_failures;
}

void run(int number, const std::string& label,
         const std::function<std::string()>& body) {
  try {
    std::string detail = body();
    report(number, label, true, detail);
  } catch (const std::exception& e) {
    report(number, label, false, e.what());
  }
}

struct Failure : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string slurp(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in.good()) throw Failure("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

std::string fmt_seconds(double s) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1fs", s);
  return buf;
}

// ---- profile cache ----

struct ProfileCache {
  std::vector<std::string> labels;
  std::unordered_map<std::string, std::vector<std::uint64_t>> map;

  const std::vector<std::uint64_t>& get(const CompoundPtr& d) {
    std::string key = canonical_form(d);
    auto it = map.find(key);
    if (it != map.end()) return it->second;
    return map.emplace(std::move(key), sat_profile(d, labels, 3)).first->second;
  }
};

bool profiles_equal(const std::vector<std::uint64_t>& a, const std::vector<std::uint64_t>& b) {
  return a == b;
}

bool and_equals(const std::vector<std::uint64_t>& out, const std::vector<std::uint64_t>& a,
                const std::vector<std::uint64_t>& b) {
  if (out.size() != a.size() || a.size() != b.size()) return false;
  for (size_t i = 0; i < out.size(); ++i)
    if (out[i] != (a[i] & b[i])) return false;
  return true;
}

// ---- criterion 1: rule soundness over an exhaustive diagram family ----

std::vector<UnitaryDiagram> two_label_family() {
  const std::vector<std::string> labels = {"A", "B"};
  // Every zone set over {A, B} that contains the outer zone and covers both
  // labels, in canonical zone order (0 < 1 < 3 < 2).
  const std::vector<Region> zone_sets = {
      {0, 3}, {0, 1, 2}, {0, 1, 3}, {0, 3, 2}, {0, 1, 3, 2}};

  std::vector<UnitaryDiagram> family;
  for (const Region& Z : zone_sets) {
    std::vector<Region> habitats;
    for (Mask z : Z) habitats.push_back({z});
    for (size_t i = 0; i < Z.size(); ++i)
      for (size_t j = i + 1; j < Z.size(); ++j) habitats.push_back({Z[i], Z[j]});

    for (std::uint32_t sh_bits = 0; sh_bits < (1u << Z.size()); ++sh_bits) {
      Region shaded;
      for (size_t b = 0; b < Z.size(); ++b)
        if (sh_bits & (1u << b)) shaded.push_back(Z[b]);

      auto emit = [&](std::vector<SpiderEntry> spiders) {
        UnitaryDiagram d;
        d.labels = labels;
        d.zones = Z;
        d.shaded = shaded;
        d.spiders = std::move(spiders);
        family.push_back(normalized(d));
      };

      emit({});
      for (const Region& h : habitats)
        for (int c = 1; c <= 2; ++c) emit({{c, h}});
      for (size_t i = 0; i < habitats.size(); ++i)
        for (size_t j = i + 1; j < habitats.size(); ++j)
          for (int c1 = 1; c1 <= 2; ++c1)
            for (int c2 = 1; c2 <= 2; ++c2)
              emit({{c1, habitats[i]}, {c2, habitats[j]}});
    }
  }
  return family;
}

std::vector<UnitaryDiagram> greimas_fixtures() {
  std::vector<UnitaryDiagram> out;
  for (Corner c : {Corner::D1, Corner::D2, Corner::D3, Corner::D4}) out.push_back(corner(c));
  out.push_back(zm_witness());
  for (MetaTerm t : kMetaTerms) out.push_back(meta_term_target(t));
  return out;
}

struct SoundnessStats {
  long unary = 0, combine = 0, copy = 0, conj_elim = 0, idem_elim = 0;
};

void check_unary_soundness(ProfileCache& cache, const std::vector<UnitaryDiagram>& diagrams,
                           SoundnessStats& st) {
  for (const UnitaryDiagram& d : diagrams) {
    CompoundPtr host = unit(d);
    const auto& pd = cache.get(host);
    for (const RuleInstance& inst : applicable_instances(host)) {
      CompoundPtr out = apply_unary(host, inst);
      const auto& po = cache.get(out);
      bool ok = false;
      switch (inst.rule) {
        case RuleName::SplitSpider:
        case RuleName::IdempotencyIntro:
        case RuleName::IdempotencyElim:
          ok = profiles_equal(pd, po);
          break;
        case RuleName::AddFeet:
        case RuleName::EraseSpider:
          ok = profile_subset(pd, po);
          break;
        default:
          throw Failure("unexpected unary rule on a unitary host");
      }
      if (!ok)
        throw Failure(std::string(rule_name(inst.rule)) + " unsound on " + canonical_form(d));
      ++st.unary;
    }
    // Collapsing a duplicated disjunct is an equivalence as well.
    CompoundPtr doubled = disj(host, host);
    CompoundPtr collapsed = apply_unary(doubled, {RuleName::IdempotencyElim, "", {}});
    if (!profiles_equal(cache.get(doubled), cache.get(collapsed)))
      throw Failure("IdempotencyElim unsound on " + canonical_form(d));
    ++st.idem_elim;
  }
}

void check_combine_soundness(ProfileCache& cache, const std::vector<UnitaryDiagram>& diagrams,
                             SoundnessStats& st) {
  std::map<std::string, std::vector<const UnitaryDiagram*>> alpha_by_zones;
  for (const UnitaryDiagram& d : diagrams)
    if (is_alpha(d)) alpha_by_zones[region_to_string(d.labels, d.zones)].push_back(&d);

  for (const auto& [zones, group] : alpha_by_zones) {
    (void)zones;
    for (const UnitaryDiagram* a : group)
      for (const UnitaryDiagram* b : group) {
        CompoundPtr ua = unit(*a), ub = unit(*b);
        CompoundPtr out = combine(ua, ub);
        if (!and_equals(cache.get(out), cache.get(ua), cache.get(ub)))
          throw Failure("Combine unsound on " + canonical_form(*a) + " * " +
                        canonical_form(*b));
        ++st.combine;
      }
  }
}

void check_copy_soundness(ProfileCache& cache, const std::vector<const UnitaryDiagram*>& hosts,
                          const std::vector<const UnitaryDiagram*>& donors,
                          SoundnessStats& st) {
  for (const UnitaryDiagram* h : hosts) {
    CompoundPtr uh = unit(*h);
    const auto& ph = cache.get(uh);
    for (const UnitaryDiagram* g : donors) {
      if (h->labels != g->labels) continue;
      CompoundPtr ug = unit(*g);
      const auto& pg = cache.get(ug);
      std::vector<Region> regions;
      for (Mask z : g->zones)
        if (region_contains(h->zones, z)) regions.push_back({z});
      for (const auto& s : g->spiders)
        if (s.habitat.size() >= 2) regions.push_back(s.habitat);
      for (const Region& r : regions)
        for (const auto& s : g->spiders) {
          if (!region_subset(s.habitat, r)) continue;
          CompoundPtr out;
          try {
            out = copy_spider(*h, *g, r, r, s.habitat);
          } catch (const RuleError&) {
            continue;  // clause rejected: nothing to verify
          }
          if (!and_equals(cache.get(out), ph, pg))
            throw Failure("CopySpider unsound on " + canonical_form(*h) + " / " +
                          canonical_form(*g));
          ++st.copy;
        }
    }
  }
}

void check_conj_elim_soundness(ProfileCache& cache,
                               const std::vector<const UnitaryDiagram*>& group,
                               SoundnessStats& st) {
  for (const UnitaryDiagram* a : group)
    for (const UnitaryDiagram* b : group) {
      if (a->labels != b->labels) continue;
      CompoundPtr host = conj(unit(*a), unit(*b));
      const auto& ph = cache.get(host);
      for (char side : {'L', 'R'}) {
        CompoundPtr out = conj_elim(host, "", side);
        if (!profile_subset(ph, cache.get(out)))
          throw Failure("ConjElim unsound on " + canonical_form(host));
        ++st.conj_elim;
      }
    }
}

std::string criterion1() {
  auto start = Clock::now();
  ProfileCache ab{{"A", "B"}, {}};
  ProfileCache sq{square_language().labels, {}};

  std::vector<UnitaryDiagram> family = two_label_family();
  if (family.size() != 5044)
    throw Failure("family size " + std::to_string(family.size()) + ", expected 5044");
  std::vector<UnitaryDiagram> greimas = greimas_fixtures();

  SoundnessStats st;
  check_unary_soundness(ab, family, st);
  check_unary_soundness(sq, greimas, st);
  check_combine_soundness(ab, family, st);
  check_combine_soundness(sq, greimas, st);

  // Copy pairs: the full one-entry two-label subfamily plus every pair of
  // six-zone fixtures.
  std::vector<const UnitaryDiagram*> small, all_greimas;
  for (const UnitaryDiagram& d : family)
    if (d.spiders.size() <= 1) small.push_back(&d);
  for (const UnitaryDiagram& d : greimas) all_greimas.push_back(&d);
  check_copy_soundness(ab, small, small, st);
  check_copy_soundness(sq, all_greimas, all_greimas, st);

  // Conjunction elimination: the Venn-free zone set pairs plus the fixtures.
  std::vector<const UnitaryDiagram*> venn2;
  for (const UnitaryDiagram& d : family)
    if (d.zones == Region{0, 3}) venn2.push_back(&d);
  check_conj_elim_soundness(ab, venn2, st);
  check_conj_elim_soundness(sq, all_greimas, st);

  double t = seconds_since(start);
  std::ostringstream os;
  os << family.size() << " diagrams; " << st.unary << " unary, " << st.idem_elim
     << " collapse, " << st.combine << " combine, " << st.copy << " copy, " << st.conj_elim
     << " conj-elim applications all sound; " << fmt_seconds(t);
  if (t >= 60.0) throw Failure("soundness sweep took " + fmt_seconds(t) + ", budget is 60s");
  return os.str();
}

// ---- criterion 2: the worked example against a hand-written sentence ----

std::string criterion2() {
  auto start = Clock::now();
  UnitaryDiagram d;
  d.labels = {"A", "B"};
  d.zones = {0, 1, 3, 2};
  d.shaded = {2};
  d.spiders = {{1, {0, 1}}};
  CompoundPtr ex = unit(d);

  // (forall x. B(x) -> A(x)) and (exists x. (A(x) and not B(x)) or
  // (not A(x) and not B(x))), written out by hand as the oracle.
  FolPtr sentence = f_and(
      {f_forall(0, f_implies(f_pred("B", 0), f_pred("A", 0))),
       f_exists(0, f_or({f_and({f_pred("A", 0), f_not(f_pred("B", 0))}),
                         f_and({f_not(f_pred("A", 0)), f_not(f_pred("B", 0))})}))});

  long checked = 0, mismatches = 0;
  for (int u = 0; u <= 3; ++u)
    for_each_interpretation(d.labels, u, [&](const Interpretation& I) {
      ++checked;
      if (satisfies(I, ex) != eval_fol(sentence, I)) ++mismatches;
      return true;
    });
  if (checked != 85) throw Failure("expected 85 interpretations, saw " + std::to_string(checked));
  if (mismatches != 0) throw Failure(std::to_string(mismatches) + " mismatches");
  return "85 interpretations, 0 mismatches; " + fmt_seconds(seconds_since(start));
}

// ---- criterion 3: the negation habitat denotation, checked three ways ----

std::string criterion3() {
  auto start = Clock::now();
  const SquareLanguage& L = square_language();
  long eligible = 0, failures = 0;
  for (int u = 0; u <= 3; ++u)
    for_each_interpretation(L.labels, u, [&](const Interpretation& I) {
      const std::uint32_t um = I.universe_mask();
      const std::uint32_t M = I.phi[0], S1 = I.phi[1], S2 = I.phi[2], X = I.phi[3];
      if ((S1 & ~M) || (S2 & ~M) || (M & ~X) || (S1 & S2)) return true;  // preconditions
      ++eligible;
      for (int i = 1; i <= 2; ++i) {
        std::uint32_t si = i == 1 ? S1 : S2;
        std::uint32_t sj = i == 1 ? S2 : S1;
        // Raw zone semantics of the two habitat zones.
        std::uint32_t zj = um & M & X & sj & ~si;
        std::uint32_t zx = um & X & ~M & ~S1 & ~S2;
        std::uint32_t habitat = zj | zx;
        // The claimed set identity.
        std::uint32_t expected = (sj & ~si & um) | (X & ~(M | S1 | S2) & um);
        // The library's answer.
        std::uint32_t lib = negation_denotation(I, i);
        bool same = habitat == expected && lib == habitat;
        std::uint32_t outside = X & ~si & um;
        bool strict = habitat != outside && (habitat & ~outside) == 0;
        bool middle_excess = (M & ~(S1 | S2) & um) != 0;
        if (!same || strict != middle_excess || !proposition_check(I, i)) ++failures;
      }
      return true;
    });
  if (failures != 0) throw Failure(std::to_string(failures) + " failures");
  std::ostringstream os;
  os << eligible << " nested interpretations of 4369, both semes agree; "
     << fmt_seconds(seconds_since(start));
  return os.str();
}

// ---- criterion 4: the command-line square construction ----

struct SquareRun {
  std::string dir;
  double elapsed = 0;
};

SquareRun g_run1, g_run2;

SquareRun run_square_cli(const std::string& tag) {
  std::string tmpl = "/tmp/spidersq_accept_" + tag + "_XXXXXX";
  std::vector<char> buf(tmpl.begin(), tmpl.end());
  buf.push_back('\0');
  if (!mkdtemp(buf.data())) throw Failure("mkdtemp failed");
  SquareRun run;
  run.dir = buf.data();
  std::string cmd = std::string(SPIDERSQ_CLI_PATH) + " --quiet square --s1 life --s2 death --out " +
                    run.dir;
  auto start = Clock::now();
  int rc = std::system(cmd.c_str());
  run.elapsed = seconds_since(start);
  if (rc != 0) throw Failure("square command exited with status " + std::to_string(rc));
  return run;
}

std::string criterion4() {
  g_run1 = run_square_cli("a");
  g_run2 = run_square_cli("b");

  struct Expect {
    std::string file;
    CompoundPtr pool;
    UnitaryDiagram conclusion;
  };
  std::vector<Expect> expects = {
      {"t1.proof.json", unit(corner(Corner::D1)), corner(Corner::D2)},
      {"t2.proof.json", unit(corner(Corner::D3)), corner(Corner::D4)},
      {"t3.proof.json", unit(corner(Corner::D2)), corner(Corner::D3)},
      {"t4.proof.json", unit(corner(Corner::D4)), corner(Corner::D1)},
  };
  for (MetaTerm t : kMetaTerms) {
    auto [a, b] = meta_term_pair(t);
    expects.push_back({std::string("meta_") + meta_term_name(t) + ".proof.json",
                       conj(unit(corner(a)), unit(corner(b))), meta_term_target(t)});
  }

  const std::map<std::string, int> t34 = {
      {"Combine", 1}, {"EraseSpider", 1}, {"Idempotency", 1}, {"SplitSpider", 1}};

  int checked = 0;
  for (size_t i = 0; i < expects.size(); ++i) {
    const Expect& e = expects[i];
    ProofPtr p = proof_from_json(parse_json(slurp(g_run1.dir + "/" + e.file)));
    CheckReport r = check_proof(p, {e.pool});
    if (!r.valid)
      throw Failure(e.file + " did not check: " + (r.first_failure ? r.first_failure->second
                                                                   : std::string("?")));
    if (!canonically_equal(p->conclusion, unit(e.conclusion)))
      throw Failure(e.file + " concludes the wrong diagram");
    if (proof_depth(p) > 8)
      throw Failure(e.file + " exceeds depth 8");
    if (i == 2 || i == 3) {
      if (rule_multiset(p) != t34) throw Failure(e.file + " uses the wrong rule multiset");
    }
    if (e.file == "meta_Sbar.proof.json" && rule_multiset(p)["ConjElim"] < 1)
      throw Failure("the Sbar derivation never eliminates the conjunction");
    ++checked;
  }
  if (g_run1.elapsed >= 120.0 || g_run2.elapsed >= 120.0)
    throw Failure("square run took " + fmt_seconds(std::max(g_run1.elapsed, g_run2.elapsed)) +
                  ", budget is 120s");
  std::ostringstream os;
  os << checked << " proof trees check; runs " << fmt_seconds(g_run1.elapsed) << " and "
     << fmt_seconds(g_run2.elapsed);
  return os.str();
}

// ---- criterion 5: the relation predicates ----

std::string criterion5() {
  auto start = Clock::now();
  UnitaryDiagram ds[4] = {corner(Corner::D1), corner(Corner::D2), corner(Corner::D3),
                          corner(Corner::D4)};
  for (int i = 0; i < 4; ++i)
    for (int j = 0; j < 4; ++j) {
      bool expected = (i == 0 && j == 2) || (i == 2 && j == 0);
      if (contrariety_check(ds[i], ds[j]) != expected)
        throw Failure("contrariety wrong at (" + std::to_string(i + 1) + "," +
                      std::to_string(j + 1) + ")");
    }

  // d6 and d8 restate the opposite determinate corners.
  const UnitaryDiagram d6 = corner(Corner::D3), d8 = corner(Corner::D1);
  const UnitaryDiagram* against[6] = {&ds[0], &ds[1], &ds[2], &ds[3], &d6, &d8};
  for (int k = 0; k < 6; ++k) {
    bool want1 = canonically_equal(*against[k], ds[2]);
    bool want2 = canonically_equal(*against[k], ds[0]);
    if (implication_check(ds[1], *against[k], 1) != want1)
      throw Failure("implication from the first negation wrong at index " + std::to_string(k));
    if (implication_check(ds[3], *against[k], 2) != want2)
      throw Failure("implication from the second negation wrong at index " + std::to_string(k));
  }
  return "contrariety and both implication rows exact; " + fmt_seconds(seconds_since(start));
}

// ---- criterion 6: the underivable contrary, search and semantics agreeing ----

std::string criterion6() {
  auto start = Clock::now();
  SearchConfig cfg;
  cfg.max_depth = 8;
  cfg.premises = {unit(corner(Corner::D1))};
  auto proof = derive(cfg, unit(corner(Corner::D3)));
  if (proof.has_value()) throw Failure("found a proof that must not exist");
  auto v = entails(unit(corner(Corner::D1)), unit(corner(Corner::D3)), 3);
  if (v.holds) throw Failure("entailment claimed to hold");
  if (!v.countermodel.has_value()) throw Failure("no countermodel reported");
  if (satisfies(*v.countermodel, unit(corner(Corner::D3))))
    throw Failure("countermodel satisfies the goal");
  if (!satisfies(*v.countermodel, unit(corner(Corner::D1))))
    throw Failure("countermodel misses the premise");
  std::ostringstream os;
  os << "no proof at depth 8, countermodel at size " << v.countermodel->universe << "; "
     << fmt_seconds(seconds_since(start));
  return os.str();
}

// ---- criterion 7: interchange identities and render stability ----

void roundtrip_document(const std::string& name) {
  std::string text = slurp(std::string(SPIDERSQ_FIXTURE_DIR) + "/" + name);
  Document doc = parse_document(text);
  std::string printed = pretty_print(doc);
  Document back = parse_document(printed);
  if (back.diagrams.size() != doc.diagrams.size() ||
      back.compounds.size() != doc.compounds.size())
    throw Failure(name + ": item count changed across pretty-printing");
  for (size_t i = 0; i < doc.diagrams.size(); ++i)
    if (back.diagrams[i].name != doc.diagrams[i].name ||
        !canonically_equal(back.diagrams[i].diagram, doc.diagrams[i].diagram))
      throw Failure(name + ": diagram " + doc.diagrams[i].name + " changed");
  for (size_t i = 0; i < doc.compounds.size(); ++i)
    if (back.compounds[i].name != doc.compounds[i].name ||
        canonical_form(back.compounds[i].value) != canonical_form(doc.compounds[i].value))
      throw Failure(name + ": compound " + doc.compounds[i].name + " changed");
  if (pretty_print(back) != printed) throw Failure(name + ": pretty-printing is not idempotent");

  Json j = document_to_json(doc);
  Document jback = document_from_json(j);
  if (dump_json(document_to_json(jback)) != dump_json(j))
    throw Failure(name + ": JSON round-trip changed the document");
  for (size_t i = 0; i < doc.diagrams.size(); ++i)
    if (!canonically_equal(jback.diagrams[i].diagram, doc.diagrams[i].diagram))
      throw Failure(name + ": JSON round-trip changed diagram " + doc.diagrams[i].name);
}

std::string criterion7() {
  auto start = Clock::now();
  for (const char* name : {"corners.sd", "example1.sd", "meta_terms.sd"})
    roundtrip_document(name);

  std::string t5_text = slurp(std::string(SPIDERSQ_FIXTURE_DIR) + "/t5.proof.json");
  ProofPtr t5 = proof_from_json(parse_json(t5_text));
  Json j = proof_to_json(t5);
  if (dump_json(proof_to_json(proof_from_json(j))) != dump_json(j))
    throw Failure("proof JSON round-trip is not stable");
  CompoundPtr pool = conj(unit(corner(Corner::D1)), unit(corner(Corner::D3)));
  if (!check_proof(t5, {pool}).valid) throw Failure("t5 fixture does not check");

  if (render_dot(t5) != render_dot(t5)) throw Failure("proof DOT differs across two renders");
  UnitaryDiagram d1 = corner(Corner::D1);
  if (render_dot(d1) != render_dot(d1)) throw Failure("diagram DOT differs across two renders");
  if (g_run1.dir.empty() || g_run2.dir.empty())
    throw Failure("square runs unavailable for the DOT comparison");
  if (slurp(g_run1.dir + "/square.dot") != slurp(g_run2.dir + "/square.dot"))
    throw Failure("square DOT differs across two command-line runs");
  return "3 documents and 1 proof round-trip; DOT byte-stable; " +
         fmt_seconds(seconds_since(start));
}

}  // namespace

int main() {
  run(1, "rule soundness", criterion1);
  run(2, "worked example semantics", criterion2);
  run(3, "negation habitat denotation", criterion3);
  run(4, "square construction", criterion4);
  run(5, "relation predicates", criterion5);
  run(6, "underivable contrary", criterion6);
  run(7, "interchange and rendering", criterion7);
  if (g_failures == 0) std::cout << "acceptance: all 7 criteria passed\n";
  else std::cout << "acceptance: " << g_failures << " of 7 criteria FAILED\n";
  return g_failures == 0 ? 0 : 1;
}
