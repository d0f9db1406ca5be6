#include "spidersq/dot.hpp"

#include <functional>
#include <sstream>

namespace spidersq {

namespace {

std::string dot_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  return out;
}

std::string join_lines(const std::vector<std::string>& lines) {
  std::string out;
  for (size_t i = 0; i < lines.size(); ++i) {
    if (i) out += "\\n";
    out += dot_escape(lines[i]);
  }
  return out;
}

std::vector<std::string> unitary_lines(const std::string& title, const UnitaryDiagram& d0) {
  UnitaryDiagram d = normalized(d0);
  std::vector<std::string> lines;
  if (!title.empty()) lines.push_back(title);
  std::string zl = "zones:";
  for (Mask z : d.zones) {
    zl += " " + zone_to_string(d.labels, z);
    if (region_contains(d.shaded, z)) zl += "*";
  }
  lines.push_back(zl);
  for (const auto& e : d.spiders) {
    std::string sl = "spider";
    if (e.count > 1) sl += " x" + std::to_string(e.count);
    sl += " in " + region_to_string(d.labels, e.habitat);
    lines.push_back(sl);
  }
  return lines;
}

std::string unitary_label(const std::string& title, const UnitaryDiagram& d) {
  return join_lines(unitary_lines(title, d));
}

}  // namespace

std::string render_dot(const UnitaryDiagram& d, const std::string& name) {
  std::ostringstream os;
  os << "digraph \"" << dot_escape(name) << "\" {\n  node [shape=box];\n";
  os << "  n0 [label=\"" << unitary_label(name, d) << "\"];\n";
  os << "}\n";
  return os.str();
}

std::string render_dot(const CompoundPtr& d, const std::string& name) {
  std::ostringstream os;
  os << "digraph \"" << dot_escape(name) << "\" {\n  node [shape=box];\n";
  int counter = 0;
  std::function<int(const CompoundPtr&)> walk = [&](const CompoundPtr& x) -> int {
    int id = counter++;
    switch (x->kind) {
      case CompoundDiagram::Kind::Unit:
        os << "  n" << id << " [label=\"" << unitary_label("", x->unit) << "\"];\n";
        break;
      case CompoundDiagram::Kind::Top:
        os << "  n" << id << " [label=\"TOP\"];\n";
        break;
      case CompoundDiagram::Kind::Bottom:
        os << "  n" << id << " [label=\"BOTTOM\"];\n";
        break;
      case CompoundDiagram::Kind::And:
      case CompoundDiagram::Kind::Or: {
        os << "  n" << id << " [label=\""
           << (x->kind == CompoundDiagram::Kind::And ? "and" : "or") << "\" shape=ellipse];\n";
        int l = walk(x->left);
        int r = walk(x->right);
        os << "  n" << id << " -> n" << l << ";\n";
        os << "  n" << id << " -> n" << r << ";\n";
        break;
      }
    }
    return id;
  };
  walk(d);
  os << "}\n";
  return os.str();
}

std::string render_dot(const ProofPtr& p) {
  std::ostringstream os;
  os << "digraph \"proof\" {\n  rankdir=BT;\n  node [shape=box];\n";
  int counter = 0;
  std::function<int(const ProofPtr&)> walk = [&](const ProofPtr& n) -> int {
    int id = counter++;
    std::string prefix;
    switch (n->kind) {
      case ProofNode::Kind::Premise: prefix = "premise"; break;
      case ProofNode::Kind::Assertion: prefix = "assert"; break;
      case ProofNode::Kind::RuleApp: prefix = rule_display(n->instance.rule); break;
    }
    os << "  p" << id << " [label=\""
       << join_lines({prefix, canonical_form(n->conclusion)}) << "\"];\n";
    for (const auto& c : n->children) {
      int cid = walk(c);
      os << "  p" << cid << " -> p" << id << " [label=\""
         << dot_escape(rule_display(n->instance.rule)) << "\"];\n";
    }
    return id;
  };
  walk(p);
  os << "}\n";
  return os.str();
}

std::string render_dot(const SquareReport& r) {
  std::ostringstream os;
  os << "digraph \"square\" {\n  node [shape=box];\n";
  const auto corner_node = [&](const char* id, const std::string& title,
                               const UnitaryDiagram& d) {
    os << "  " << id << " [label=\"" << unitary_label(title, d) << "\"];\n";
  };
  corner_node("c1", "d1: s1 = " + r.s1, r.corners[0]);
  corner_node("c2", "d2: not s1", r.corners[1]);
  corner_node("c3", "d3: s2 = " + r.s2, r.corners[2]);
  corner_node("c4", "d4: not s2", r.corners[3]);
  corner_node("c5", "d5 = d2", r.corners[1]);
  corner_node("c6", "d6", r.d6);
  corner_node("c7", "d7 = d4", r.corners[3]);
  corner_node("c8", "d8", r.d8);
  for (size_t i = 0; i < kMetaTerms.size(); ++i) {
    os << "  m" << (i + 1) << " [label=\""
       << unitary_label(meta_term_name(kMetaTerms[i]), r.meta[i].target) << "\"];\n";
  }
  os << "  c1 -> c2 [label=\"T1\" style=solid];\n";
  os << "  c3 -> c4 [label=\"T2\" style=solid];\n";
  os << "  c5 -> c6 [label=\"T3\" style=dashed];\n";
  os << "  c7 -> c8 [label=\"T4\" style=dashed];\n";
  os << "  c1 -> c3 [label=\"contrariety\" style=dotted dir=none];\n";
  const auto corner_id = [](Corner c) {
    switch (c) {
      case Corner::D1: return "c1";
      case Corner::D2: return "c2";
      case Corner::D3: return "c3";
      case Corner::D4: return "c4";
    }
    return "c1";
  };
  for (size_t i = 0; i < kMetaTerms.size(); ++i) {
    auto [a, b] = meta_term_pair(kMetaTerms[i]);
    std::string tn = "T" + std::to_string(5 + i);
    os << "  " << corner_id(a) << " -> m" << (i + 1) << " [label=\"" << tn << "\"];\n";
    os << "  " << corner_id(b) << " -> m" << (i + 1) << " [label=\"" << tn << "\"];\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace spidersq
