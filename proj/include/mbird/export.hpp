#pragma once

// DOT and JSON renderings of explored posets.

#include <string>
#include <string_view>

#include "mbird/forest.hpp"
#include "mbird/poset.hpp"
#include "mbird/term.hpp"

namespace mbird {

enum class GraphFormat { dot, json };

GraphFormat parse_graph_format(std::string_view text);

/// Forest text with ○ and ● in place of w and b.
std::string forest_glyphs(const DupForest& f);

/// Throws ValidationError on an incomplete exploration. With hasse_only
/// the edges are the Hasse diagram; otherwise they are the step edges
/// including self-loops. Unanalysed graphs are analysed first unless they
/// exceed kMaxAnalyzedNodes and only step edges are wanted. JSON carries
/// `nodes`, `step_edges`, `hasse_edges`, `minimal`, `maximal` and `flags`.
std::string export_graph(const ExploredPoset<Term>& g, GraphFormat format, bool hasse_only);
std::string export_graph(const ExploredPoset<DupForest>& g, GraphFormat format, bool hasse_only);

}  // namespace mbird
