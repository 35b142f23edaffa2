#include "mbird/oracle.hpp"

#include <algorithm>

#include "mbird/error.hpp"
#include "mbird/intern.hpp"
#include "mbird/rewrite.hpp"

namespace mbird {

namespace {

std::vector<Edge> proper_edges(const std::vector<Edge>& step_edges) {
  std::vector<Edge> out;
  for (const auto& e : step_edges) {
    if (e.first != e.second) out.push_back(e);
  }
  return out;
}

// Elements and covers of D*(f) without a reachability matrix. A step
// a -> s is a cover unless another successor s' of a lies below s, and
// s' <= s is decided by the forest meet.
OracleCounts stream_counts(const DupForest& root) {
  OracleCounts out;
  InternTable table(1 << 20);
  table.insert(root.code());
  std::uint64_t edges = 0;
  std::uint64_t covers = 0;
  std::string current;
  std::string scratch;
  std::string glb;
  std::vector<std::string> succ;
  for (std::uint32_t id = 0; id < table.size(); ++id) {
    current.assign(table.at(id));
    succ.clear();
    for_each_duplication(current, scratch, [&succ](std::string_view s) { succ.emplace_back(s); });
    std::sort(succ.begin(), succ.end());
    succ.erase(std::unique(succ.begin(), succ.end()), succ.end());
    for (const std::string& s : succ) table.insert(s);
    edges += succ.size();
    for (std::size_t i = 0; i < succ.size(); ++i) {
      bool cover = true;
      for (std::size_t j = 0; j < succ.size() && cover; ++j) {
        if (j == i) continue;
        glb.clear();
        forest_code::meet_into(succ[j], succ[i], glb);
        cover = glb != succ[j];
      }
      covers += cover ? 1 : 0;
    }
  }
  out.elements = static_cast<unsigned long>(table.size());
  out.hasse_edges = static_cast<unsigned long>(covers);
  out.cover_equals_step = covers == edges;
  out.explicit_reachability = false;
  return out;
}

}  // namespace

OracleCounts oracle_upset_counts(const DupForest& f, bool with_intervals) {
  auto g = forest_upset(f, kMaxAnalyzedNodes);
  if (!g.flags.is_complete) {
    throw BudgetExceeded("upset of " + render_forest(f) + " has more than " +
                         std::to_string(kMaxAnalyzedNodes) + " elements");
  }
  Reachability reach(g.nodes.size(), g.step_edges);
  auto covers = reach.covers();
  OracleCounts out;
  out.elements = static_cast<unsigned long>(g.nodes.size());
  out.hasse_edges = static_cast<unsigned long>(covers.size());
  if (with_intervals) out.intervals = BigInt(static_cast<unsigned long>(reach.interval_count()));
  out.cover_equals_step = covers == proper_edges(g.step_edges);
  return out;
}

OracleCounts oracle_poset_counts(std::uint32_t d, bool with_intervals) {
  if (d > kOracleMaxD) {
    throw BudgetExceeded("D*(l_" + std::to_string(d) + ") is beyond the explicit construction range (d <= " +
                         std::to_string(kOracleMaxD) + ")");
  }
  if (with_intervals && d > kOracleIntervalsMaxD) {
    throw ValidationError("interval counting is limited to d <= " + std::to_string(kOracleIntervalsMaxD));
  }
  OracleCounts out = d <= kOracleIntervalsMaxD ? oracle_upset_counts(ladder(d), with_intervals)
                                               : stream_counts(ladder(d));
  out.d = d;
  return out;
}

// ---------------------------------------------------------------------------
// Coefficient maps

namespace {

ExploredPoset<DupForest> complete_upset(const DupForest& f) {
  auto g = forest_upset(f, kMaxAnalyzedNodes);
  if (!g.flags.is_complete) throw BudgetExceeded("upset too large for the oracle");
  return g;
}

}  // namespace

ForestCounts oracle_ni(const DupForest& f) {
  auto g = complete_upset(f);
  std::vector<std::uint64_t> indegree(g.nodes.size(), 0);
  for (const auto& [a, b] : g.step_edges) {
    if (a != b) ++indegree[b];
  }
  ForestCounts out;
  for (std::size_t v = 0; v < g.nodes.size(); ++v) {
    if (indegree[v] > 0) out[render_forest(g.nodes[v])] = indegree[v];
  }
  return out;
}

ForestCounts oracle_ns(const DupForest& f) {
  auto g = complete_upset(f);
  Reachability reach(g.nodes.size(), g.step_edges);
  ForestCounts out;
  for (NodeIndex v = 0; v < g.nodes.size(); ++v) out[render_forest(g.nodes[v])] = reach.down_size(v);
  return out;
}

ForestCounts oracle_md_k(const DupForest& f, std::uint32_t k) {
  if (k == 0) throw ValidationError("k must be at least 1");
  auto g = complete_upset(f);
  Reachability reach(g.nodes.size(), g.step_edges);
  ForestCounts out;
  for (NodeIndex v = 0; v < g.nodes.size(); ++v) {
    // The upset of v inside D*(f) is D*(v) with the same order.
    const std::vector<NodeIndex> up = reach.up_set(v);
    double tuples = 1;
    for (std::uint32_t i = 0; i < k; ++i) tuples *= static_cast<double>(up.size());
    if (tuples > 1e7) throw ValidationError("too many tuples for the meet decomposition oracle");

    std::uint64_t hits = 0;
    std::vector<std::size_t> digits(k, 0);
    for (;;) {
      std::optional<NodeIndex> glb = up[digits[0]];
      for (std::uint32_t i = 1; i < k && glb; ++i) glb = reach.meet(*glb, up[digits[i]]);
      if (glb && *glb == v) ++hits;
      std::uint32_t pos = 0;
      while (pos < k && ++digits[pos] == up.size()) digits[pos++] = 0;
      if (pos == k) break;
    }
    out[render_forest(g.nodes[v])] = hits;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Census

namespace {

Census classify(const std::vector<Term>& terms) {
  Census c;
  for (const Term& t : terms) {
    Extremality e = extremal_by_pattern(t);
    ++c.total;
    c.maximal += e.maximal ? 1 : 0;
    c.minimal += e.minimal ? 1 : 0;
  }
  return c;
}

}  // namespace

Census oracle_extremal_census(std::uint32_t degree) {
  if (degree > 10) throw ValidationError("census by degree is limited to degree 10");
  return classify(all_trees(degree, Term::basic("M")));
}

Census oracle_extremal_census_by_height(std::uint32_t height) {
  if (height > 5) throw ValidationError("census by height is limited to height 5");
  return classify(all_trees_of_height(height, Term::basic("M")));
}

// ---------------------------------------------------------------------------
// Sequences

std::size_t oracle_max_count(Equation e, Indexing indexing, bool large) {
  const std::size_t shift = indexing == Indexing::mockingbird ? 1 : 0;
  switch (e) {
    case Equation::sizes:
    case Equation::edges:
      return (large ? kOracleMaxD : kOracleIntervalsMaxD) + 1 + shift;
    case Equation::intervals:
      return kOracleIntervalsMaxD + 1 + shift;
    case Equation::motzkin:
    case Equation::min:
      return 11;
    case Equation::classes:
      return 6;
  }
  return 0;
}

SequenceTable seq_by_oracle(Equation e, std::size_t count, Indexing indexing, bool large) {
  const std::size_t limit = oracle_max_count(e, indexing, large);
  if (count > limit) {
    throw ValidationError("oracle computes at most " + std::to_string(limit) + " values of " +
                          std::string(equation_name(e)));
  }
  SequenceTable t;
  t.name = std::string(equation_name(e));
  t.indexing = indexing;
  t.method = Method::oracle;
  switch (e) {
    case Equation::motzkin:
    case Equation::min:
      for (std::uint32_t d = 0; d < count; ++d) {
        Census c = oracle_extremal_census(d);
        t.values.emplace_back(static_cast<unsigned long>(e == Equation::motzkin ? c.maximal : c.minimal));
      }
      return t;
    case Equation::classes:
      for (std::uint32_t h = 0; h < count; ++h) {
        t.values.emplace_back(static_cast<unsigned long>(oracle_extremal_census_by_height(h).maximal));
      }
      return t;
    case Equation::sizes:
    case Equation::edges:
    case Equation::intervals:
      break;
  }
  const std::size_t ladder_count = indexing == Indexing::mockingbird && count > 0 ? count - 1 : count;
  std::vector<BigInt> ladder_values;
  for (std::uint32_t d = 0; d < ladder_count; ++d) {
    OracleCounts c = oracle_poset_counts(d, e == Equation::intervals);
    ladder_values.push_back(e == Equation::sizes   ? c.elements
                            : e == Equation::edges ? c.hasse_edges
                                                   : *c.intervals);
  }
  if (indexing == Indexing::mockingbird && count > 0) {
    t.values = to_mockingbird(e, std::move(ladder_values));
  } else {
    t.values = std::move(ladder_values);
  }
  return t;
}

}  // namespace mbird
