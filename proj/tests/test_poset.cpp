#include "doctest.h"

#include <algorithm>

#include "mbird/error.hpp"
#include "mbird/poset.hpp"
#include "support.hpp"

using namespace mbird;

namespace {

// Random DAG on n nodes whose edges go from a lower to a higher label under
// a random relabelling, plus a few self-loops.
std::vector<Edge> random_dag(std::size_t n, double density) {
  std::vector<NodeIndex> label(n);
  for (NodeIndex i = 0; i < n; ++i) label[i] = i;
  std::shuffle(label.begin(), label.end(), test::rng());
  std::bernoulli_distribution coin(density);
  std::vector<Edge> edges;
  for (NodeIndex a = 0; a < n; ++a) {
    for (NodeIndex b = a + 1; b < n; ++b) {
      if (coin(test::rng())) edges.emplace_back(label[a], label[b]);
    }
    if (coin(test::rng())) edges.emplace_back(label[a], label[a]);
  }
  return edges;
}

using Matrix = std::vector<std::vector<bool>>;

Matrix closure(std::size_t n, const std::vector<Edge>& edges) {
  Matrix r(n, std::vector<bool>(n, false));
  for (std::size_t i = 0; i < n; ++i) r[i][i] = true;
  for (const auto& [a, b] : edges) r[a][b] = true;
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      if (!r[i][k]) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (r[k][j]) r[i][j] = true;
      }
    }
  }
  return r;
}

std::optional<NodeIndex> brute_join(const Matrix& r, NodeIndex a, NodeIndex b) {
  const std::size_t n = r.size();
  for (NodeIndex c = 0; c < n; ++c) {
    if (!r[a][c] || !r[b][c]) continue;
    bool least = true;
    for (NodeIndex d = 0; d < n && least; ++d) {
      if (r[a][d] && r[b][d] && !r[c][d]) least = false;
    }
    if (least) return c;
  }
  return std::nullopt;
}

std::optional<NodeIndex> brute_meet(const Matrix& r, NodeIndex a, NodeIndex b) {
  const std::size_t n = r.size();
  for (NodeIndex c = 0; c < n; ++c) {
    if (!r[c][a] || !r[c][b]) continue;
    bool greatest = true;
    for (NodeIndex d = 0; d < n && greatest; ++d) {
      if (r[d][a] && r[d][b] && !r[d][c]) greatest = false;
    }
    if (greatest) return c;
  }
  return std::nullopt;
}

std::vector<Edge> brute_covers(const Matrix& r) {
  const std::size_t n = r.size();
  std::vector<Edge> out;
  for (NodeIndex a = 0; a < n; ++a) {
    for (NodeIndex b = 0; b < n; ++b) {
      if (a == b || !r[a][b]) continue;
      bool cover = true;
      for (NodeIndex c = 0; c < n && cover; ++c) {
        if (c != a && c != b && r[a][c] && r[c][b]) cover = false;
      }
      if (cover) out.emplace_back(a, b);
    }
  }
  return out;
}

}  // namespace

TEST_CASE("reachability agrees with a brute-force closure") {
  for (int round = 0; round < 60; ++round) {
    const std::size_t n = test::uniform(1, round < 50 ? 40 : 150);
    const auto edges = random_dag(n, round % 3 == 0 ? 0.3 : 0.08);
    const Matrix r = closure(n, edges);
    const Reachability reach(n, edges);

    std::uint64_t intervals = 0;
    bool lattice = true;
    for (NodeIndex a = 0; a < n; ++a) {
      std::uint64_t up = 0, down = 0;
      for (NodeIndex b = 0; b < n; ++b) {
        REQUIRE(reach.leq(a, b) == r[a][b]);
        up += r[a][b] ? 1 : 0;
        down += r[b][a] ? 1 : 0;
        auto j = brute_join(r, a, b);
        auto m = brute_meet(r, a, b);
        REQUIRE(reach.join(a, b) == j);
        REQUIRE(reach.meet(a, b) == m);
        lattice = lattice && j && m;
      }
      CHECK(reach.up_size(a) == up);
      CHECK(reach.down_size(a) == down);
      CHECK(reach.up_set(a).size() == up);
      intervals += up;
    }
    CHECK(reach.interval_count() == intervals);
    CHECK(reach.covers() == brute_covers(r));
    CHECK(reach.is_lattice() == lattice);

    const auto& order = reach.topological_order();
    std::vector<std::size_t> rank(n);
    for (std::size_t i = 0; i < n; ++i) rank[order[i]] = i;
    for (const auto& [a, b] : edges) CHECK(rank[a] <= rank[b]);
  }
}

TEST_CASE("cycles") {
  const std::vector<Edge> cyclic{{0, 1}, {1, 2}, {2, 1}, {2, 3}, {4, 4}};
  CHECK_THROWS_AS(Reachability(5, cyclic), ValidationError);
  OrderAnalysis a = analyze_order(5, cyclic);
  CHECK_FALSE(a.is_acyclic);
  CHECK_FALSE(a.is_lattice);
  CHECK(a.hasse_edges.empty());
  CHECK(a.minimal == std::vector<NodeIndex>{0, 4});
  CHECK(a.maximal == std::vector<NodeIndex>{3, 4});
}

TEST_CASE("analysis of small posets") {
  OrderAnalysis single = analyze_order(1, {});
  CHECK(single.is_acyclic);
  CHECK(single.is_lattice);
  CHECK(single.minimal == std::vector<NodeIndex>{0});

  // Diamond with a redundant edge and loops.
  const std::vector<Edge> diamond{{0, 0}, {0, 1}, {0, 2}, {1, 3}, {2, 3}, {0, 3}, {3, 3}};
  OrderAnalysis d = analyze_order(4, diamond);
  CHECK(d.is_lattice);
  CHECK(d.hasse_edges == std::vector<Edge>{{0, 1}, {0, 2}, {1, 3}, {2, 3}});

  // Two incomparable tops.
  OrderAnalysis v = analyze_order(3, std::vector<Edge>{{0, 1}, {0, 2}});
  CHECK(v.is_acyclic);
  CHECK_FALSE(v.is_lattice);
  CHECK(v.maximal == std::vector<NodeIndex>{1, 2});

  CHECK_THROWS_AS(Reachability(kMaxAnalyzedNodes + 1, {}), ValidationError);
}

TEST_CASE("maximal chain lengths") {
  // 0 -> 1 -> 2 -> 4 and 0 -> 3 -> 4 and 0 -> 5.
  const std::vector<Edge> e{{0, 1}, {1, 2}, {2, 4}, {0, 3}, {3, 4}, {0, 5}};
  Reachability r(6, e);
  CHECK(r.maximal_chain_lengths(0) == std::vector<std::size_t>{1, 2, 3});
}
