#pragma once

// Textual diagram language: parser, document model and canonical printer.

#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "spidersq/diagram.hpp"

namespace spidersq {

struct ParseError : std::runtime_error {
  int line = 0;
  int col = 0;
  ParseError(const std::string& msg, int line, int col);
};

// Compound expressions keep the diagram names they were written with so the
// printer can reproduce them; `value` is the resolved tree.
struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind { Ref, Top, Bottom, And, Or };
  Kind kind = Kind::Top;
  std::string name;     // Ref only
  ExprPtr left, right;  // And / Or only
};

ExprPtr expr_ref(std::string name);
ExprPtr expr_top();
ExprPtr expr_bottom();
ExprPtr expr_and(ExprPtr a, ExprPtr b);
ExprPtr expr_or(ExprPtr a, ExprPtr b);

struct NamedDiagram {
  std::string name;
  UnitaryDiagram diagram;
};

struct NamedCompound {
  std::string name;
  ExprPtr expr;
  CompoundPtr value;
};

struct Document {
  std::vector<NamedDiagram> diagrams;
  std::vector<NamedCompound> compounds;

  const UnitaryDiagram* find_diagram(const std::string& name) const;
  const NamedCompound* find_compound(const std::string& name) const;
  // The named diagram as a Unit, or the named compound's value; null when the
  // name is unknown.
  CompoundPtr find_term(const std::string& name) const;
};

// Grammar:
//   document   := item*
//   item       := diagram | compound
//   diagram    := "diagram" NAME "{" "labels:" NAME ("," NAME)* ";"
//                 "zones:" zone ("," zone)* ";" spiderdecl* "}"
//   zone       := "{" NAME* ("|" NAME*)? "}" ("shaded")?
//   spiderdecl := "spider" ("x" INT)? "in" zone ("," zone)* ";"
//   compound   := "compound" NAME "=" expr ";"
//   expr       := NAME | "TOP" | "BOTTOM" | expr "and" expr | expr "or" expr
//                 | "(" expr ")"
// "and" binds tighter than "or"; "#" starts a line comment; "x2" is accepted
// as shorthand for "x 2". A zone's omitted outs are the label set minus the
// ins; explicit outs must complete the partition exactly.
//
// Syntax errors throw ParseError with line/column. Semantic errors (unknown
// label, ins/outs overlap, duplicate zone, habitat zone absent, duplicate or
// unresolved names, mixed label sets in a compound) throw DiagramError
// naming the item.
Document parse_document(const std::string& text);

// Resolves an expression's diagram references against doc and validates label
// consistency. DiagramError on unknown names or mixed label sets; `item`
// names the error context.
CompoundPtr resolve_expr(const Document& doc, const ExprPtr& e, const std::string& item);

// Canonical rendering: labels, zones and habitats in canonical order, shading
// inline, counts as "xN". parse_document(pretty_print(doc)) reproduces doc
// canonically.
std::string pretty_print(const Document& doc);
std::string diagram_text(const std::string& name, const UnitaryDiagram& d);
std::string compound_text(const std::string& name, const ExprPtr& e);
std::string expr_text(const ExprPtr& e);

}  // namespace spidersq
