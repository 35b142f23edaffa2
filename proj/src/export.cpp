#include "mbird/export.hpp"

#include <sstream>

#include "json.hpp"

#include "mbird/error.hpp"

namespace mbird {

GraphFormat parse_graph_format(std::string_view text) {
  if (text == "dot") return GraphFormat::dot;
  if (text == "json") return GraphFormat::json;
  throw ValidationError("invalid format '" + std::string(text) + "' (expected dot or json)");
}

std::string forest_glyphs(const DupForest& f) {
  std::string out;
  for (char c : render_forest(f)) {
    if (c == 'w') {
      out += "○";
    } else if (c == 'b') {
      out += "●";
    } else {
      out.push_back(c);
    }
  }
  return out;
}

namespace {

std::string label_of(const Term& t) { return render_term(t); }
std::string label_of(const DupForest& f) { return render_forest(f); }
std::string dot_label_of(const Term& t) { return render_term(t); }
std::string dot_label_of(const DupForest& f) {
  std::string s = forest_glyphs(f);
  return s.empty() ? "ε" : s;
}

std::string dot_escape(std::string_view s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

nlohmann::json edge_list(const std::vector<Edge>& edges) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& [a, b] : edges) out.push_back({a, b});
  return out;
}

template <class Node>
std::string export_impl(ExploredPoset<Node> g, GraphFormat format, bool hasse_only) {
  if (!g.flags.is_complete) throw ValidationError("cannot export an incomplete exploration");
  if (!g.flags.analyzed && (hasse_only || g.nodes.size() <= kMaxAnalyzedNodes)) g = poset_analysis(std::move(g));
  const std::vector<Edge>& edges = hasse_only ? g.hasse_edges : g.step_edges;

  if (format == GraphFormat::json) {
    nlohmann::ordered_json j;
    nlohmann::json nodes = nlohmann::json::array();
    for (const Node& n : g.nodes) nodes.push_back(label_of(n));
    j["nodes"] = nodes;
    if (!hasse_only) j["step_edges"] = edge_list(g.step_edges);
    j["hasse_edges"] = edge_list(g.hasse_edges);
    j["minimal"] = g.minimal;
    j["maximal"] = g.maximal;
    j["flags"] = {{"is_complete", g.flags.is_complete},
                  {"analyzed", g.flags.analyzed},
                  {"is_acyclic", g.flags.is_acyclic},
                  {"is_lattice", g.flags.is_lattice}};
    return j.dump() + "\n";
  }

  std::ostringstream out;
  out << "digraph poset {\n  rankdir=BT;\n  node [shape=box, fontname=\"monospace\"];\n";
  for (std::size_t v = 0; v < g.nodes.size(); ++v) {
    out << "  n" << v << " [label=\"" << dot_escape(dot_label_of(g.nodes[v])) << "\"];\n";
  }
  for (const auto& [a, b] : edges) out << "  n" << a << " -> n" << b << ";\n";
  out << "}\n";
  return out.str();
}

}  // namespace

std::string export_graph(const ExploredPoset<Term>& g, GraphFormat format, bool hasse_only) {
  return export_impl(g, format, hasse_only);
}

std::string export_graph(const ExploredPoset<DupForest>& g, GraphFormat format, bool hasse_only) {
  return export_impl(g, format, hasse_only);
}

}  // namespace mbird
