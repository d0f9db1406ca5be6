#pragma once

// First-order sentences with monadic predicates and equality, their finite
// evaluation, and the translation of diagrams into them.

#include <memory>
#include <string>
#include <vector>

#include "spidersq/diagram.hpp"
#include "spidersq/semantics.hpp"

namespace spidersq {

struct Fol;
using FolPtr = std::shared_ptr<const Fol>;

struct Fol {
  enum class Kind { True, False, Pred, Eq, Not, And, Or, Implies, Exists, Forall };
  Kind kind = Kind::True;
  std::string label;        // Pred: predicate name
  int a = -1, b = -1;       // Pred: var a; Eq: vars a, b
  int var = -1;             // Exists/Forall: bound variable
  std::vector<FolPtr> kids; // Not: 1; Implies: 2; And/Or: n-ary; quantifiers: 1
};

FolPtr f_true();
FolPtr f_false();
FolPtr f_pred(std::string label, int var);
FolPtr f_eq(int a, int b);
FolPtr f_not(FolPtr x);
FolPtr f_and(std::vector<FolPtr> xs);   // empty -> True
FolPtr f_or(std::vector<FolPtr> xs);    // empty -> False
FolPtr f_implies(FolPtr a, FolPtr b);
FolPtr f_exists(int var, FolPtr body);
FolPtr f_forall(int var, FolPtr body);

// Translation of a unitary diagram, a conjunction of:
//   (i)  for every missing zone: "forall x, not zone(x)";
//   (ii) existentially quantified, pairwise distinct spider variables, each
//        confined to the disjunction of its habitat's zone formulas;
//   (iii) inside that scope, for every shaded zone: "forall y, zone(y) ->
//        y equals one of the spiders touching the zone" (an empty disjunction
//        when no spider touches it).
// Compounds map Top/Bottom/And/Or to their connectives.
FolPtr to_fol(const UnitaryDiagram& d);
FolPtr to_fol(const CompoundPtr& d);

// Evaluates a closed sentence in a finite interpretation; predicate names
// must appear among I.labels.
bool eval_fol(const FolPtr& f, const Interpretation& I);

std::string fol_to_string(const FolPtr& f);

}  // namespace spidersq
