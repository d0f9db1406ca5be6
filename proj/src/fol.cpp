#include "spidersq/fol.hpp"

#include <algorithm>
#include <sstream>

namespace spidersq {

namespace {
FolPtr make(Fol f) { return std::make_shared<Fol>(std::move(f)); }
}  // namespace

FolPtr f_true() {
  Fol f;
  f.kind = Fol::Kind::True;
  return make(std::move(f));
}
FolPtr f_false() {
  Fol f;
  f.kind = Fol::Kind::False;
  return make(std::move(f));
}

FolPtr f_pred(std::string label, int var) {
  Fol f;
  f.kind = Fol::Kind::Pred;
  f.label = std::move(label);
  f.a = var;
  return make(std::move(f));
}

FolPtr f_eq(int a, int b) {
  Fol f;
  f.kind = Fol::Kind::Eq;
  f.a = a;
  f.b = b;
  return make(std::move(f));
}

FolPtr f_not(FolPtr x) {
  Fol f;
  f.kind = Fol::Kind::Not;
  f.kids = {std::move(x)};
  return make(std::move(f));
}

FolPtr f_and(std::vector<FolPtr> xs) {
  if (xs.empty()) return f_true();
  if (xs.size() == 1) return xs[0];
  Fol f;
  f.kind = Fol::Kind::And;
  f.kids = std::move(xs);
  return make(std::move(f));
}

FolPtr f_or(std::vector<FolPtr> xs) {
  if (xs.empty()) return f_false();
  if (xs.size() == 1) return xs[0];
  Fol f;
  f.kind = Fol::Kind::Or;
  f.kids = std::move(xs);
  return make(std::move(f));
}

FolPtr f_implies(FolPtr a, FolPtr b) {
  Fol f;
  f.kind = Fol::Kind::Implies;
  f.kids = {std::move(a), std::move(b)};
  return make(std::move(f));
}

FolPtr f_exists(int var, FolPtr body) {
  Fol f;
  f.kind = Fol::Kind::Exists;
  f.var = var;
  f.kids = {std::move(body)};
  return make(std::move(f));
}

FolPtr f_forall(int var, FolPtr body) {
  Fol f;
  f.kind = Fol::Kind::Forall;
  f.var = var;
  f.kids = {std::move(body)};
  return make(std::move(f));
}

namespace {

// zone formula: conjunction of every ins label applied to x and the negation
// of every outs label.
FolPtr zone_formula(const UnitaryDiagram& d, Mask z, int var) {
  std::vector<FolPtr> parts;
  for (size_t i = 0; i < d.labels.size(); ++i) {
    FolPtr p = f_pred(d.labels[i], var);
    parts.push_back((z & (Mask(1) << i)) ? p : f_not(p));
  }
  return f_and(std::move(parts));
}

}  // namespace

FolPtr to_fol(const UnitaryDiagram& d) {
  UnitaryDiagram n = normalized(d);
  std::vector<FolPtr> outer;

  for (Mask z : missing_zones(n)) outer.push_back(f_forall(0, f_not(zone_formula(n, z, 0))));

  // Spider variables 1..count; 0 stays reserved for the universal variable.
  struct Leg { int var; Region habitat; };
  std::vector<Leg> legs;
  int next = 1;
  for (const auto& s : n.spiders)
    for (int k = 0; k < s.count; ++k) legs.push_back({next++, s.habitat});

  std::vector<FolPtr> body;
  for (size_t i = 0; i < legs.size(); ++i)
    for (size_t j = i + 1; j < legs.size(); ++j)
      body.push_back(f_not(f_eq(legs[i].var, legs[j].var)));
  for (const auto& leg : legs) {
    std::vector<FolPtr> zones;
    for (Mask z : leg.habitat) zones.push_back(zone_formula(n, z, leg.var));
    body.push_back(f_or(std::move(zones)));
  }
  for (Mask z : n.shaded) {
    std::vector<FolPtr> hits;
    for (const auto& leg : legs)
      if (region_contains(leg.habitat, z)) hits.push_back(f_eq(0, leg.var));
    body.push_back(f_forall(0, f_implies(zone_formula(n, z, 0), f_or(std::move(hits)))));
  }

  FolPtr inner = f_and(std::move(body));
  for (auto it = legs.rbegin(); it != legs.rend(); ++it) inner = f_exists(it->var, inner);
  outer.push_back(inner);
  return f_and(std::move(outer));
}

FolPtr to_fol(const CompoundPtr& d) {
  if (!d) throw DiagramError("null diagram");
  switch (d->kind) {
    case CompoundDiagram::Kind::Top: return f_true();
    case CompoundDiagram::Kind::Bottom: return f_false();
    case CompoundDiagram::Kind::Unit: return to_fol(d->unit);
    case CompoundDiagram::Kind::And: return f_and({to_fol(d->left), to_fol(d->right)});
    case CompoundDiagram::Kind::Or: return f_or({to_fol(d->left), to_fol(d->right)});
  }
  throw DiagramError("unreachable compound kind");
}

namespace {

bool eval_rec(const Fol& f, const Interpretation& I, std::vector<int>& env) {
  auto value = [&](int var) {
    if (var < 0 || static_cast<size_t>(var) >= env.size() || env[static_cast<size_t>(var)] < 0)
      throw DiagramError("sentence is not closed: free variable");
    return env[static_cast<size_t>(var)];
  };
  switch (f.kind) {
    case Fol::Kind::True: return true;
    case Fol::Kind::False: return false;
    case Fol::Kind::Pred: {
      auto it = std::find(I.labels.begin(), I.labels.end(), f.label);
      if (it == I.labels.end())
        throw DiagramError("unknown predicate in sentence: " + f.label);
      size_t li = static_cast<size_t>(it - I.labels.begin());
      return (I.phi[li] >> value(f.a)) & 1u;
    }
    case Fol::Kind::Eq: return value(f.a) == value(f.b);
    case Fol::Kind::Not: return !eval_rec(*f.kids[0], I, env);
    case Fol::Kind::And:
      for (const auto& k : f.kids)
        if (!eval_rec(*k, I, env)) return false;
      return true;
    case Fol::Kind::Or:
      for (const auto& k : f.kids)
        if (eval_rec(*k, I, env)) return true;
      return false;
    case Fol::Kind::Implies:
      return !eval_rec(*f.kids[0], I, env) || eval_rec(*f.kids[1], I, env);
    case Fol::Kind::Exists:
    case Fol::Kind::Forall: {
      if (f.var < 0) throw DiagramError("quantifier without a variable");
      if (static_cast<size_t>(f.var) >= env.size()) env.resize(static_cast<size_t>(f.var) + 1, -1);
      bool result = f.kind == Fol::Kind::Forall;
      for (int e = 0; e < I.universe; ++e) {
        env[static_cast<size_t>(f.var)] = e;
        bool v = eval_rec(*f.kids[0], I, env);
        if (f.kind == Fol::Kind::Exists && v) { result = true; break; }
        if (f.kind == Fol::Kind::Forall && !v) { result = false; break; }
      }
      env[static_cast<size_t>(f.var)] = -1;
      return result;
    }
  }
  throw DiagramError("unreachable sentence kind");
}

}  // namespace

bool eval_fol(const FolPtr& f, const Interpretation& I) {
  if (!f) throw DiagramError("null sentence");
  std::vector<int> env;
  return eval_rec(*f, I, env);
}

std::string fol_to_string(const FolPtr& f) {
  if (!f) throw DiagramError("null sentence");
  std::ostringstream os;
  auto walk = [&](auto&& self, const Fol& n) -> void {
    switch (n.kind) {
      case Fol::Kind::True: os << "true"; return;
      case Fol::Kind::False: os << "false"; return;
      case Fol::Kind::Pred: os << n.label << "(x" << n.a << ")"; return;
      case Fol::Kind::Eq: os << "x" << n.a << "=x" << n.b; return;
      case Fol::Kind::Not:
        os << "!";
        self(self, *n.kids[0]);
        return;
      case Fol::Kind::And:
      case Fol::Kind::Or: {
        os << "(";
        const char* op = n.kind == Fol::Kind::And ? " & " : " | ";
        for (size_t i = 0; i < n.kids.size(); ++i) {
          if (i) os << op;
          self(self, *n.kids[i]);
        }
        os << ")";
        return;
      }
      case Fol::Kind::Implies:
        os << "(";
        self(self, *n.kids[0]);
        os << " -> ";
        self(self, *n.kids[1]);
        os << ")";
        return;
      case Fol::Kind::Exists:
      case Fol::Kind::Forall:
        os << (n.kind == Fol::Kind::Exists ? "exists x" : "forall x") << n.var << ". ";
        self(self, *n.kids[0]);
        return;
    }
  };
  walk(walk, *f);
  return os.str();
}

}  // namespace spidersq
