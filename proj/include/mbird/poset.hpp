#pragma once

// Explicit finite rewrite graphs and the order-theoretic analysis of them.
//
// Reachability is kept as two bitset matrices (up-sets and down-sets) whose
// bit positions follow a topological order of the nodes. With that layout
// the least element of an up-set intersection, if it exists, is the lowest
// set bit, so the brute-force lattice check is a scan of word-parallel
// kernels. Memory is 2 * n^2 bits; the analysis refuses more than
// kMaxAnalyzedNodes nodes.

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "mbird/error.hpp"
#include "mbird/kernels.hpp"

namespace mbird {

using NodeIndex = std::uint32_t;
using Edge = std::pair<NodeIndex, NodeIndex>;

inline constexpr std::size_t kMaxAnalyzedNodes = 40000;
inline constexpr std::size_t kDefaultBudget = 10'000'000;

struct PosetFlags {
  /// Exploration finished without hitting the node budget.
  bool is_complete = false;
  /// poset_analysis has filled the fields below.
  bool analyzed = false;
  bool is_acyclic = false;
  bool is_lattice = false;
};

/// A finite explored piece of a rewrite graph. Node 0 is the exploration
/// start; indices follow discovery order.
template <class Node>
struct ExploredPoset {
  std::vector<Node> nodes;
  /// Sorted, duplicate-free one-step edges, self-loops included.
  std::vector<Edge> step_edges;
  std::vector<Edge> hasse_edges;
  std::vector<NodeIndex> minimal;
  std::vector<NodeIndex> maximal;
  PosetFlags flags;

  std::size_t self_loop_count() const {
    std::size_t n = 0;
    for (const auto& [a, b] : step_edges) n += a == b ? 1 : 0;
    return n;
  }
  std::size_t proper_edge_count() const { return step_edges.size() - self_loop_count(); }
};

struct OrderAnalysis {
  bool is_acyclic = false;
  bool is_lattice = false;
  std::vector<Edge> hasse_edges;
  std::vector<NodeIndex> minimal;
  std::vector<NodeIndex> maximal;
};

/// Acyclicity ignores self-loops. When acyclic, Hasse edges are the
/// transitive reduction of strict reachability and the lattice property is
/// checked pair by pair. When cyclic, no Hasse edges are produced, the
/// component is not a lattice, and minimal/maximal hold the nodes of source
/// and sink strongly connected components.
OrderAnalysis analyze_order(std::size_t node_count, std::span<const Edge> step_edges);

/// Fills the order fields of an explored poset. Throws ValidationError on
/// an incomplete exploration.
template <class Node>
ExploredPoset<Node> poset_analysis(ExploredPoset<Node> g) {
  if (!g.flags.is_complete) throw ValidationError("poset analysis needs a complete exploration");
  OrderAnalysis a = analyze_order(g.nodes.size(), g.step_edges);
  g.hasse_edges = std::move(a.hasse_edges);
  g.minimal = std::move(a.minimal);
  g.maximal = std::move(a.maximal);
  g.flags.is_acyclic = a.is_acyclic;
  g.flags.is_lattice = a.is_lattice;
  g.flags.analyzed = true;
  return g;
}

/// Reflexive-transitive closure of an acyclic step relation.
class Reachability {
 public:
  /// Throws ValidationError if the relation has a cycle through distinct
  /// nodes or if node_count exceeds kMaxAnalyzedNodes.
  Reachability(std::size_t node_count, std::span<const Edge> step_edges);

  std::size_t size() const { return node_count_; }

  bool leq(NodeIndex a, NodeIndex b) const;
  /// Least upper bound of a and b, if one exists.
  std::optional<NodeIndex> join(NodeIndex a, NodeIndex b) const;
  /// Greatest lower bound of a and b, if one exists.
  std::optional<NodeIndex> meet(NodeIndex a, NodeIndex b) const;

  std::uint64_t up_size(NodeIndex a) const;
  std::uint64_t down_size(NodeIndex a) const;
  /// Nodes b with a <= b, in increasing node-index order.
  std::vector<NodeIndex> up_set(NodeIndex a) const;

  /// Number of pairs (a, b) with a <= b.
  std::uint64_t interval_count() const;
  /// Covering pairs, sorted.
  std::vector<Edge> covers() const;
  /// Every pair has a join and a meet.
  bool is_lattice() const;
  /// Lengths of all maximal chains from `bottom` to any maximal element,
  /// as a sorted duplicate-free list.
  std::vector<std::size_t> maximal_chain_lengths(NodeIndex bottom) const;

  const std::vector<NodeIndex>& topological_order() const { return node_of_rank_; }

 private:
  const kernels::Word* up_row(std::size_t rank) const { return up_.data() + rank * words_; }
  const kernels::Word* down_row(std::size_t rank) const { return down_.data() + rank * words_; }
  bool test(const std::vector<kernels::Word>& m, std::size_t row, std::size_t bit) const {
    return (m[row * words_ + bit / 64] >> (bit % 64)) & 1U;
  }

  std::size_t node_count_ = 0;
  std::size_t words_ = 0;
  std::vector<NodeIndex> rank_of_;
  std::vector<NodeIndex> node_of_rank_;
  /// Distinct non-loop successors, by rank.
  std::vector<std::vector<NodeIndex>> succ_;
  std::vector<kernels::Word> up_;
  std::vector<kernels::Word> down_;
  const kernels::BitKernels* k_;
};

}  // namespace mbird
