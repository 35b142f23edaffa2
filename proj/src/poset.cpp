#include "mbird/poset.hpp"

#include <algorithm>
#include <functional>
#include <queue>
#include <set>

namespace mbird {

namespace {

std::vector<std::vector<NodeIndex>> adjacency(std::size_t n, std::span<const Edge> edges,
                                              bool reverse) {
  std::vector<std::vector<NodeIndex>> adj(n);
  for (const auto& [a, b] : edges) {
    if (a >= n || b >= n) throw ValidationError("edge endpoint out of range");
    if (a == b) continue;
    if (reverse) {
      adj[b].push_back(a);
    } else {
      adj[a].push_back(b);
    }
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return adj;
}

// Kahn's algorithm, smallest available index first. Empty when cyclic.
std::vector<NodeIndex> topological_sort(const std::vector<std::vector<NodeIndex>>& succ) {
  const std::size_t n = succ.size();
  std::vector<std::size_t> indegree(n, 0);
  for (const auto& list : succ) {
    for (NodeIndex b : list) ++indegree[b];
  }
  std::priority_queue<NodeIndex, std::vector<NodeIndex>, std::greater<>> ready;
  for (NodeIndex v = 0; v < n; ++v) {
    if (indegree[v] == 0) ready.push(v);
  }
  std::vector<NodeIndex> order;
  order.reserve(n);
  while (!ready.empty()) {
    NodeIndex v = ready.top();
    ready.pop();
    order.push_back(v);
    for (NodeIndex b : succ[v]) {
      if (--indegree[b] == 0) ready.push(b);
    }
  }
  if (order.size() != n) order.clear();
  return order;
}

// Tarjan's strongly connected components, iterative.
std::vector<std::size_t> scc_ids(const std::vector<std::vector<NodeIndex>>& succ,
                                 std::size_t& count) {
  const std::size_t n = succ.size();
  constexpr std::size_t unvisited = static_cast<std::size_t>(-1);
  std::vector<std::size_t> index(n, unvisited), low(n, 0), comp(n, unvisited);
  std::vector<NodeIndex> stack;
  std::vector<bool> on_stack(n, false);
  std::size_t next_index = 0;
  count = 0;
  for (NodeIndex root = 0; root < n; ++root) {
    if (index[root] != unvisited) continue;
    std::vector<std::pair<NodeIndex, std::size_t>> call{{root, 0}};
    index[root] = low[root] = next_index++;
    stack.push_back(root);
    on_stack[root] = true;
    while (!call.empty()) {
      auto& [v, child] = call.back();
      if (child < succ[v].size()) {
        NodeIndex w = succ[v][child++];
        if (index[w] == unvisited) {
          index[w] = low[w] = next_index++;
          stack.push_back(w);
          on_stack[w] = true;
          call.emplace_back(w, 0);
        } else if (on_stack[w]) {
          low[v] = std::min(low[v], index[w]);
        }
        continue;
      }
      if (low[v] == index[v]) {
        NodeIndex w;
        do {
          w = stack.back();
          stack.pop_back();
          on_stack[w] = false;
          comp[w] = count;
        } while (w != v);
        ++count;
      }
      NodeIndex done = v;
      call.pop_back();
      if (!call.empty()) low[call.back().first] = std::min(low[call.back().first], low[done]);
    }
  }
  return comp;
}

}  // namespace

OrderAnalysis analyze_order(std::size_t node_count, std::span<const Edge> step_edges) {
  OrderAnalysis out;
  auto succ = adjacency(node_count, step_edges, false);
  auto order = topological_sort(succ);
  out.is_acyclic = order.size() == node_count;

  if (!out.is_acyclic) {
    std::size_t count = 0;
    auto comp = scc_ids(succ, count);
    std::vector<bool> has_in(count, false), has_out(count, false);
    for (NodeIndex a = 0; a < node_count; ++a) {
      for (NodeIndex b : succ[a]) {
        if (comp[a] != comp[b]) {
          has_out[comp[a]] = true;
          has_in[comp[b]] = true;
        }
      }
    }
    for (NodeIndex v = 0; v < node_count; ++v) {
      if (!has_in[comp[v]]) out.minimal.push_back(v);
      if (!has_out[comp[v]]) out.maximal.push_back(v);
    }
    return out;
  }

  auto pred = adjacency(node_count, step_edges, true);
  for (NodeIndex v = 0; v < node_count; ++v) {
    if (pred[v].empty()) out.minimal.push_back(v);
    if (succ[v].empty()) out.maximal.push_back(v);
  }
  Reachability reach(node_count, step_edges);
  out.hasse_edges = reach.covers();
  out.is_lattice = reach.is_lattice();
  return out;
}

Reachability::Reachability(std::size_t node_count, std::span<const Edge> step_edges)
    : node_count_(node_count),
      words_((node_count + 63) / 64),
      k_(&kernels::active_kernels()) {
  if (node_count > kMaxAnalyzedNodes) {
    throw ValidationError("reachability matrix limited to " + std::to_string(kMaxAnalyzedNodes) +
                          " nodes, got " + std::to_string(node_count));
  }
  auto succ = adjacency(node_count, step_edges, false);
  node_of_rank_ = topological_sort(succ);
  if (node_of_rank_.size() != node_count) {
    throw ValidationError("step relation has a cycle through distinct nodes");
  }
  rank_of_.assign(node_count, 0);
  for (NodeIndex r = 0; r < node_count; ++r) rank_of_[node_of_rank_[r]] = r;

  succ_.assign(node_count, {});
  std::vector<std::vector<NodeIndex>> pred(node_count);
  for (NodeIndex v = 0; v < node_count; ++v) {
    for (NodeIndex b : succ[v]) {
      succ_[rank_of_[v]].push_back(rank_of_[b]);
      pred[rank_of_[b]].push_back(rank_of_[v]);
    }
  }

  up_.assign(node_count * words_, 0);
  down_.assign(node_count * words_, 0);
  for (std::size_t r = node_count; r-- > 0;) {
    kernels::Word* row = up_.data() + r * words_;
    row[r / 64] |= kernels::Word{1} << (r % 64);
    for (NodeIndex s : succ_[r]) k_->or_into(row, up_row(s), words_);
  }
  for (std::size_t r = 0; r < node_count; ++r) {
    kernels::Word* row = down_.data() + r * words_;
    row[r / 64] |= kernels::Word{1} << (r % 64);
    for (NodeIndex p : pred[r]) k_->or_into(row, down_row(p), words_);
  }
}

bool Reachability::leq(NodeIndex a, NodeIndex b) const {
  return test(up_, rank_of_.at(a), rank_of_.at(b));
}

std::optional<NodeIndex> Reachability::join(NodeIndex a, NodeIndex b) const {
  const auto* ua = up_row(rank_of_.at(a));
  const auto* ub = up_row(rank_of_.at(b));
  std::size_t cand = k_->and_find_first(ua, ub, words_);
  if (cand == kernels::npos || !k_->and_subset(ua, ub, up_row(cand), words_)) return std::nullopt;
  return node_of_rank_[cand];
}

std::optional<NodeIndex> Reachability::meet(NodeIndex a, NodeIndex b) const {
  const auto* da = down_row(rank_of_.at(a));
  const auto* db = down_row(rank_of_.at(b));
  std::size_t cand = k_->and_find_last(da, db, words_);
  if (cand == kernels::npos || !k_->and_subset(da, db, down_row(cand), words_)) return std::nullopt;
  return node_of_rank_[cand];
}

std::uint64_t Reachability::up_size(NodeIndex a) const {
  return k_->popcount(up_row(rank_of_.at(a)), words_);
}

std::uint64_t Reachability::down_size(NodeIndex a) const {
  return k_->popcount(down_row(rank_of_.at(a)), words_);
}

std::vector<NodeIndex> Reachability::up_set(NodeIndex a) const {
  std::vector<NodeIndex> out;
  std::size_t r = rank_of_.at(a);
  for (std::size_t bit = 0; bit < node_count_; ++bit) {
    if (test(up_, r, bit)) out.push_back(node_of_rank_[bit]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t Reachability::interval_count() const {
  return k_->popcount(up_.data(), up_.size());
}

std::vector<Edge> Reachability::covers() const {
  std::vector<Edge> out;
  std::vector<kernels::Word> once(words_), twice(words_);
  for (std::size_t r = 0; r < node_count_; ++r) {
    const auto& succ = succ_[r];
    if (succ.empty()) continue;
    std::fill(once.begin(), once.end(), 0);
    std::fill(twice.begin(), twice.end(), 0);
    // Each successor s reaches itself, so s lies in two rows exactly when
    // another successor also reaches it: then r -> s is not a cover.
    for (NodeIndex s : succ) k_->or_twice(once.data(), twice.data(), up_row(s), words_);
    for (NodeIndex s : succ) {
      if (((twice[s / 64] >> (s % 64)) & 1U) == 0) {
        out.emplace_back(node_of_rank_[r], node_of_rank_[s]);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool Reachability::is_lattice() const {
  if (node_count_ == 0) return true;
  for (std::size_t a = 0; a < node_count_; ++a) {
    for (std::size_t b = a + 1; b < node_count_; ++b) {
      const auto* ua = up_row(a);
      const auto* ub = up_row(b);
      std::size_t lub = k_->and_find_first(ua, ub, words_);
      if (lub == kernels::npos || !k_->and_subset(ua, ub, up_row(lub), words_)) return false;
      const auto* da = down_row(a);
      const auto* db = down_row(b);
      std::size_t glb = k_->and_find_last(da, db, words_);
      if (glb == kernels::npos || !k_->and_subset(da, db, down_row(glb), words_)) return false;
    }
  }
  return true;
}

std::vector<std::size_t> Reachability::maximal_chain_lengths(NodeIndex bottom) const {
  // Lengths of maximal chains starting at each rank, following covers.
  std::vector<std::vector<NodeIndex>> cover_succ(node_count_);
  for (const auto& [a, b] : covers()) cover_succ[rank_of_[a]].push_back(rank_of_[b]);
  std::vector<std::set<std::size_t>> lengths(node_count_);
  for (std::size_t r = node_count_; r-- > 0;) {
    if (cover_succ[r].empty()) {
      lengths[r].insert(0);
      continue;
    }
    for (NodeIndex c : cover_succ[r]) {
      for (std::size_t l : lengths[c]) lengths[r].insert(l + 1);
    }
  }
  const auto& s = lengths[rank_of_.at(bottom)];
  return {s.begin(), s.end()};
}

}  // namespace mbird
