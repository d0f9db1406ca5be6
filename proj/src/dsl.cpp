#include "spidersq/dsl.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>
#include <sstream>

namespace spidersq {

ParseError::ParseError(const std::string& msg, int line, int col)
    : std::runtime_error(msg + " (line " + std::to_string(line) + ", column " +
                         std::to_string(col) + ")"),
      line(line),
      col(col) {}

ExprPtr expr_ref(std::string name) {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Ref;
  e->name = std::move(name);
  return e;
}

ExprPtr expr_top() {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Top;
  return e;
}

ExprPtr expr_bottom() {
  auto e = std::make_shared<Expr>();
  e->kind = Expr::Kind::Bottom;
  return e;
}

static ExprPtr expr_node(Expr::Kind k, ExprPtr a, ExprPtr b) {
  auto e = std::make_shared<Expr>();
  e->kind = k;
  e->left = std::move(a);
  e->right = std::move(b);
  return e;
}

ExprPtr expr_and(ExprPtr a, ExprPtr b) { return expr_node(Expr::Kind::And, std::move(a), std::move(b)); }
ExprPtr expr_or(ExprPtr a, ExprPtr b) { return expr_node(Expr::Kind::Or, std::move(a), std::move(b)); }

const UnitaryDiagram* Document::find_diagram(const std::string& name) const {
  for (const auto& d : diagrams)
    if (d.name == name) return &d.diagram;
  return nullptr;
}

const NamedCompound* Document::find_compound(const std::string& name) const {
  for (const auto& c : compounds)
    if (c.name == name) return &c;
  return nullptr;
}

CompoundPtr Document::find_term(const std::string& name) const {
  if (const UnitaryDiagram* d = find_diagram(name)) return unit(*d);
  if (const NamedCompound* c = find_compound(name)) return c->value;
  return nullptr;
}

namespace {

enum class Tok { Ident, Int, Punct, End };

struct Token {
  Tok kind = Tok::End;
  std::string text;
  long long value = 0;
  int line = 1, col = 1;
};

struct Lexer {
  const std::string& src;
  size_t pos = 0;
  int line = 1, col = 1;

  explicit Lexer(const std::string& s) : src(s) {}

  void advance() {
    if (src[pos] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
    ++pos;
  }

  Token next() {
    for (;;) {
      while (pos < src.size() && (src[pos] == ' ' || src[pos] == '\t' || src[pos] == '\r' ||
                                  src[pos] == '\n'))
        advance();
      if (pos < src.size() && src[pos] == '#') {
        while (pos < src.size() && src[pos] != '\n') advance();
        continue;
      }
      break;
    }
    Token t;
    t.line = line;
    t.col = col;
    if (pos >= src.size()) return t;
    char c = src[pos];
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      t.kind = Tok::Ident;
      while (pos < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_')) {
        t.text += src[pos];
        advance();
      }
      return t;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      t.kind = Tok::Int;
      while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
        t.text += src[pos];
        advance();
      }
      if (t.text.size() > 9) throw ParseError("integer literal too large", t.line, t.col);
      t.value = std::stoll(t.text);
      return t;
    }
    if (std::string("{},;:|=()").find(c) != std::string::npos) {
      t.kind = Tok::Punct;
      t.text = std::string(1, c);
      advance();
      return t;
    }
    throw ParseError(std::string("unexpected character '") + c + "'", line, col);
  }
};

const std::set<std::string>& reserved() {
  static const std::set<std::string> words = {"diagram", "compound", "labels", "zones",
                                              "spider",  "in",       "and",    "or",
                                              "shaded",  "TOP",      "BOTTOM"};
  return words;
}

struct RawZone {
  std::vector<std::string> ins, outs;
  bool has_outs = false;
  bool shaded = false;
};

struct SpiderDecl {
  int count = 1;
  std::vector<RawZone> habitat;
};

struct RawDiagram {
  std::string name;
  std::vector<std::string> labels;
  std::vector<RawZone> zones;
  std::vector<SpiderDecl> spiders;
};

struct RawCompound {
  std::string name;
  ExprPtr expr;
};

struct Parser {
  Lexer lex;
  Token tok;

  explicit Parser(const std::string& s) : lex(s) { tok = lex.next(); }

  [[noreturn]] void fail(const std::string& msg) const { throw ParseError(msg, tok.line, tok.col); }

  void bump() { tok = lex.next(); }

  bool is_punct(const char* p) const { return tok.kind == Tok::Punct && tok.text == p; }
  bool is_word(const char* s) const { return tok.kind == Tok::Ident && tok.text == s; }

  std::string describe() const {
    if (tok.kind == Tok::End) return "end of input";
    return "'" + tok.text + "'";
  }

  void expect_punct(const char* p) {
    if (!is_punct(p)) fail(std::string("expected '") + p + "', got " + describe());
    bump();
  }

  void expect_word(const char* s) {
    if (!is_word(s)) fail(std::string("expected '") + s + "', got " + describe());
    bump();
  }

  std::string expect_name(const char* what) {
    if (tok.kind != Tok::Ident)
      fail(std::string("expected ") + what + ", got " + describe());
    if (reserved().count(tok.text))
      fail("reserved word '" + tok.text + "' cannot be used as " + what);
    std::string s = tok.text;
    bump();
    return s;
  }

  RawZone parse_zone(bool allow_shaded) {
    RawZone z;
    expect_punct("{");
    while (tok.kind == Tok::Ident) {
      if (reserved().count(tok.text)) fail("reserved word '" + tok.text + "' inside a zone");
      z.ins.push_back(tok.text);
      bump();
    }
    if (is_punct("|")) {
      z.has_outs = true;
      bump();
      while (tok.kind == Tok::Ident) {
        if (reserved().count(tok.text)) fail("reserved word '" + tok.text + "' inside a zone");
        z.outs.push_back(tok.text);
        bump();
      }
    }
    expect_punct("}");
    if (allow_shaded && is_word("shaded")) {
      z.shaded = true;
      bump();
    }
    return z;
  }

  RawDiagram parse_diagram() {
    expect_word("diagram");
    RawDiagram d;
    d.name = expect_name("a diagram name");
    expect_punct("{");
    expect_word("labels");
    expect_punct(":");
    d.labels.push_back(expect_name("a label name"));
    while (is_punct(",")) {
      bump();
      d.labels.push_back(expect_name("a label name"));
    }
    expect_punct(";");
    expect_word("zones");
    expect_punct(":");
    d.zones.push_back(parse_zone(true));
    while (is_punct(",")) {
      bump();
      d.zones.push_back(parse_zone(true));
    }
    expect_punct(";");
    while (is_word("spider")) {
      bump();
      SpiderDecl s;
      if (is_word("x")) {
        bump();
        if (tok.kind != Tok::Int) fail("expected a spider count after 'x', got " + describe());
        if (tok.value < 1) fail("spider count must be positive");
        s.count = static_cast<int>(tok.value);
        bump();
      } else if (tok.kind == Tok::Ident && tok.text.size() > 1 && tok.text[0] == 'x' &&
                 std::all_of(tok.text.begin() + 1, tok.text.end(),
                             [](char c) { return std::isdigit(static_cast<unsigned char>(c)); })) {
        if (tok.text.size() > 10) fail("spider count too large");
        long long v = std::stoll(tok.text.substr(1));
        if (v < 1) fail("spider count must be positive");
        s.count = static_cast<int>(v);
        bump();
      }
      expect_word("in");
      s.habitat.push_back(parse_zone(false));
      while (is_punct(",")) {
        bump();
        s.habitat.push_back(parse_zone(false));
      }
      expect_punct(";");
      d.spiders.push_back(std::move(s));
    }
    expect_punct("}");
    return d;
  }

  ExprPtr parse_atom() {
    if (is_word("TOP")) {
      bump();
      return expr_top();
    }
    if (is_word("BOTTOM")) {
      bump();
      return expr_bottom();
    }
    if (is_punct("(")) {
      bump();
      ExprPtr e = parse_or();
      expect_punct(")");
      return e;
    }
    if (tok.kind == Tok::Ident && !reserved().count(tok.text)) {
      std::string n = tok.text;
      bump();
      return expr_ref(std::move(n));
    }
    fail("expected a diagram name, 'TOP', 'BOTTOM' or '(', got " + describe());
  }

  ExprPtr parse_and() {
    ExprPtr e = parse_atom();
    while (is_word("and")) {
      bump();
      e = expr_and(std::move(e), parse_atom());
    }
    return e;
  }

  ExprPtr parse_or() {
    ExprPtr e = parse_and();
    while (is_word("or")) {
      bump();
      e = expr_or(std::move(e), parse_and());
    }
    return e;
  }

  RawCompound parse_compound() {
    expect_word("compound");
    RawCompound c;
    c.name = expect_name("a compound name");
    expect_punct("=");
    c.expr = parse_or();
    expect_punct(";");
    return c;
  }
};

[[noreturn]] void sem_fail(const std::string& item, const std::string& msg) {
  throw DiagramError(item + ": " + msg);
}

std::string raw_zone_text(const RawZone& z) {
  std::string s = "{";
  for (size_t i = 0; i < z.ins.size(); ++i) s += (i ? " " : "") + z.ins[i];
  if (z.has_outs) {
    s += " |";
    for (const auto& n : z.outs) s += " " + n;
  }
  return s + "}";
}

Mask resolve_zone(const std::string& item, const RawZone& z,
                  const std::map<std::string, int>& bit, Mask full) {
  Mask ins = 0, outs = 0;
  for (const auto& n : z.ins) {
    auto it = bit.find(n);
    if (it == bit.end()) sem_fail(item, "unknown label '" + n + "' in zone " + raw_zone_text(z));
    Mask m = Mask(1) << it->second;
    if (ins & m) sem_fail(item, "duplicate label '" + n + "' in zone " + raw_zone_text(z));
    ins |= m;
  }
  if (z.has_outs) {
    for (const auto& n : z.outs) {
      auto it = bit.find(n);
      if (it == bit.end()) sem_fail(item, "unknown label '" + n + "' in zone " + raw_zone_text(z));
      Mask m = Mask(1) << it->second;
      if (outs & m) sem_fail(item, "duplicate label '" + n + "' in zone " + raw_zone_text(z));
      outs |= m;
    }
    if (ins & outs) sem_fail(item, "ins/outs overlap in zone " + raw_zone_text(z));
    if ((ins | outs) != full)
      sem_fail(item, "ins/outs do not cover the label set in zone " + raw_zone_text(z));
  }
  return ins;
}

UnitaryDiagram build_diagram(const RawDiagram& raw) {
  const std::string item = "diagram " + raw.name;
  UnitaryDiagram d;
  d.labels = raw.labels;
  std::sort(d.labels.begin(), d.labels.end());
  for (size_t i = 1; i < d.labels.size(); ++i)
    if (d.labels[i] == d.labels[i - 1]) sem_fail(item, "duplicate label '" + d.labels[i] + "'");
  if (d.labels.size() > size_t(kMaxLabels)) sem_fail(item, "too many labels");
  std::map<std::string, int> bit;
  for (size_t i = 0; i < d.labels.size(); ++i) bit[d.labels[i]] = static_cast<int>(i);
  const Mask full = d.full_mask();

  for (const auto& rz : raw.zones) {
    Mask z = resolve_zone(item, rz, bit, full);
    if (std::find(d.zones.begin(), d.zones.end(), z) != d.zones.end())
      sem_fail(item, "duplicate zone " + zone_to_string(d.labels, z));
    d.zones.push_back(z);
    if (rz.shaded) d.shaded.push_back(z);
  }

  for (const auto& decl : raw.spiders) {
    Region habitat;
    for (const auto& rz : decl.habitat) {
      Mask z = resolve_zone(item, rz, bit, full);
      if (std::find(d.zones.begin(), d.zones.end(), z) == d.zones.end())
        sem_fail(item, "habitat zone " + zone_to_string(d.labels, z) + " is not a zone of the diagram");
      habitat.push_back(z);
    }
    habitat = sorted_region(std::move(habitat), item + " habitat");
    add_spiders(d, habitat, decl.count);
  }

  d = normalized(d);
  auto violations = validate_unitary(d);
  if (!violations.empty()) sem_fail(item, violations[0].where + ": " + violations[0].detail);
  return d;
}

CompoundPtr resolve_expr_rec(const std::string& item, const ExprPtr& e, const Document& doc) {
  switch (e->kind) {
    case Expr::Kind::Top: return top();
    case Expr::Kind::Bottom: return bottom();
    case Expr::Kind::And:
      return conj(resolve_expr_rec(item, e->left, doc), resolve_expr_rec(item, e->right, doc));
    case Expr::Kind::Or:
      return disj(resolve_expr_rec(item, e->left, doc), resolve_expr_rec(item, e->right, doc));
    case Expr::Kind::Ref: {
      const UnitaryDiagram* d = doc.find_diagram(e->name);
      if (!d) sem_fail(item, "unknown diagram '" + e->name + "'");
      return unit(*d);
    }
  }
  sem_fail(item, "malformed expression");
}

}  // namespace

CompoundPtr resolve_expr(const Document& doc, const ExprPtr& e, const std::string& item) {
  CompoundPtr value = resolve_expr_rec(item, e, doc);
  auto violations = validate_compound(value);
  if (!violations.empty()) sem_fail(item, violations[0].where + ": " + violations[0].detail);
  return value;
}

Document parse_document(const std::string& text) {
  Parser p(text);
  std::vector<RawDiagram> raw_diagrams;
  std::vector<RawCompound> raw_compounds;
  std::vector<std::pair<std::string, bool>> order;  // name, is_diagram (for duplicate checks)
  while (p.tok.kind != Tok::End) {
    if (p.is_word("diagram")) {
      raw_diagrams.push_back(p.parse_diagram());
      order.emplace_back(raw_diagrams.back().name, true);
    } else if (p.is_word("compound")) {
      raw_compounds.push_back(p.parse_compound());
      order.emplace_back(raw_compounds.back().name, false);
    } else {
      p.fail("expected 'diagram' or 'compound', got " + p.describe());
    }
  }

  std::set<std::string> seen;
  for (const auto& [name, is_diagram] : order) {
    (void)is_diagram;
    if (!seen.insert(name).second) throw DiagramError("duplicate name '" + name + "'");
  }

  Document doc;
  for (const auto& raw : raw_diagrams) doc.diagrams.push_back({raw.name, build_diagram(raw)});
  for (const auto& raw : raw_compounds) {
    CompoundPtr value = resolve_expr(doc, raw.expr, "compound " + raw.name);
    doc.compounds.push_back({raw.name, raw.expr, value});
  }
  return doc;
}

static std::string zone_text(const std::vector<std::string>& labels, Mask z) {
  std::string s = "{";
  bool first = true;
  for (size_t i = 0; i < labels.size(); ++i) {
    if (z >> i & 1u) {
      if (!first) s += ' ';
      s += labels[i];
      first = false;
    }
  }
  return s + "}";
}

std::string diagram_text(const std::string& name, const UnitaryDiagram& d0) {
  UnitaryDiagram d = normalized(d0);
  std::ostringstream os;
  os << "diagram " << name << " {\n  labels: ";
  for (size_t i = 0; i < d.labels.size(); ++i) os << (i ? ", " : "") << d.labels[i];
  os << ";\n  zones: ";
  for (size_t i = 0; i < d.zones.size(); ++i) {
    os << (i ? ", " : "") << zone_text(d.labels, d.zones[i]);
    if (region_contains(d.shaded, d.zones[i])) os << " shaded";
  }
  os << ";\n";
  for (const auto& e : d.spiders) {
    os << "  spider ";
    if (e.count > 1) os << "x" << e.count << " ";
    os << "in ";
    for (size_t i = 0; i < e.habitat.size(); ++i)
      os << (i ? ", " : "") << zone_text(d.labels, e.habitat[i]);
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

namespace {

std::string or_text(const ExprPtr& e);

std::string atom_text(const ExprPtr& e) {
  switch (e->kind) {
    case Expr::Kind::Ref: return e->name;
    case Expr::Kind::Top: return "TOP";
    case Expr::Kind::Bottom: return "BOTTOM";
    default: return "(" + or_text(e) + ")";
  }
}

std::string and_text(const ExprPtr& e) {
  if (e->kind == Expr::Kind::Or) return "(" + or_text(e) + ")";
  if (e->kind == Expr::Kind::And) return and_text(e->left) + " and " + atom_text(e->right);
  return atom_text(e);
}

std::string or_text(const ExprPtr& e) {
  if (e->kind == Expr::Kind::Or) return or_text(e->left) + " or " + and_text(e->right);
  return and_text(e);
}

}  // namespace

std::string expr_text(const ExprPtr& e) { return or_text(e); }

std::string compound_text(const std::string& name, const ExprPtr& e) {
  return "compound " + name + " = " + expr_text(e) + ";\n";
}

std::string pretty_print(const Document& doc) {
  std::string out;
  bool first = true;
  for (const auto& d : doc.diagrams) {
    if (!first) out += "\n";
    out += diagram_text(d.name, d.diagram);
    first = false;
  }
  for (const auto& c : doc.compounds) {
    if (!first) out += "\n";
    out += compound_text(c.name, c.expr);
    first = false;
  }
  return out;
}

}  // namespace spidersq
