#include "doctest.h"

#include <set>

#include "mbird/error.hpp"
#include "mbird/forest.hpp"
#include "support.hpp"

using namespace mbird;

namespace {

DupForest pf(std::string_view text) { return parse_forest(text); }
std::string rf(const DupForest& f) { return render_forest(f); }

std::set<std::string> rendered(const std::vector<DupForest>& fs) {
  std::set<std::string> out;
  for (const DupForest& f : fs) out.insert(rf(f));
  return out;
}

struct Upset {
  ExploredPoset<DupForest> g;
  Reachability reach;
  explicit Upset(const DupForest& f) : g(forest_upset(f)), reach(g.nodes.size(), g.step_edges) {}
};

// Compares the recursive operations with the order on every pair.
void check_against_brute_force(const DupForest& f) {
  Upset u(f);
  REQUIRE(u.g.flags.is_complete);
  const auto& nodes = u.g.nodes;
  std::size_t failures = 0;
  for (NodeIndex a = 0; a < nodes.size(); ++a) {
    for (NodeIndex b = 0; b < nodes.size(); ++b) {
      auto glb = u.reach.meet(a, b);
      auto lub = u.reach.join(a, b);
      const bool ok = glb && lub && meet(nodes[a], nodes[b]) == nodes[*glb] &&
                      join(nodes[a], nodes[b]) == nodes[*lub] &&
                      forest_leq(nodes[a], nodes[b]) == u.reach.leq(a, b);
      if (!ok && failures++ == 0) FAIL_CHECK("pair " << rf(nodes[a]) << " / " << rf(nodes[b]));
    }
  }
  CHECK(failures == 0);
}

// Random white forest of at most 6 nodes whose upset has at most 2000
// elements, so that all pairs can be compared.
DupForest small_random_forest() {
  for (;;) {
    DupForest f = test::random_white_forest(test::uniform(0, 6));
    if (forest_upset(f, 2000).flags.is_complete) return f;
  }
}

}  // namespace

TEST_CASE("parse and render") {
  DupForest f = pf("w(w) w");
  CHECK(f.tree_count() == 2);
  CHECK(f.node_count() == 3);
  CHECK(f.black_count() == 0);
  CHECK(f == DupForest::tree(false, pf("w")) + pf("w"));
  CHECK(pf("b(w w)") == DupForest::tree(true, pf("w w")));
  CHECK(rf(pf("b(b(w w) w)")) == "b(b(w w) w)");
  CHECK(rf(pf("  b( w  w )w ")) == "b(w w) w");
  CHECK(pf("").empty());
  CHECK(rf(DupForest{}).empty());
  CHECK_THROWS_AS(pf("w()"), ParseError);
  CHECK_THROWS_AS(pf("x"), ParseError);
  CHECK_THROWS_AS(pf("w(w"), ParseError);
  CHECK_THROWS_AS(DupForest::from_code(std::string(1, '\x02')), ValidationError);
}

TEST_CASE("ladders and heights") {
  CHECK(ladder(0).empty());
  CHECK(rf(ladder(1)) == "w");
  CHECK(rf(ladder(3)) == "w(w(w))");
  CHECK(forest_height(pf("")) == 0);
  CHECK(forest_height(pf("w(w)")) == 2);
  CHECK(forest_height(pf("b(w w) w")) == 2);
  for (std::uint32_t d = 0; d < 10; ++d) CHECK(forest_height(ladder(d)) == d);
}

TEST_CASE("duplication steps") {
  CHECK(rendered(forest_step_successors(pf("w(w)"))) == std::set<std::string>{"b(w w)", "w(b)"});
  CHECK(forest_step_successors(pf("b(b b)")).empty());
  CHECK(rendered(forest_step_successors(pf("w"))) == std::set<std::string>{"b"});
  CHECK(rendered(forest_step_successors(pf("w w"))) == std::set<std::string>{"b w", "w b"});
}

TEST_CASE("upsets") {
  auto l2 = poset_analysis(forest_upset(ladder(2)));
  CHECK(l2.nodes.size() == 6);
  CHECK(l2.hasse_edges.size() == 7);
  CHECK(l2.flags.is_lattice);
  CHECK(forest_upset(pf("w(w) w")).nodes.size() == 12);
  CHECK(forest_upset(ladder(0)).nodes.size() == 1);
  CHECK(forest_upset(ladder(3)).nodes.size() == 42);
  CHECK(forest_upset(ladder(4)).nodes.size() == 1806);
  CHECK_FALSE(forest_upset(ladder(4), 100).flags.is_complete);
}

TEST_CASE("steps add black nodes and black nodes have even arity") {
  for (int i = 0; i < 50; ++i) {
    auto g = forest_upset(small_random_forest());
    for (const auto& [a, b] : g.step_edges) {
      CHECK(g.nodes[b].black_count() > g.nodes[a].black_count());
    }
    for (const DupForest& f : g.nodes) {
      const std::string& code = f.code();
      for (char c : code) {
        const auto node = static_cast<std::uint8_t>(c);
        if (forest_code::is_black(node)) CHECK(forest_code::children(node) % 2 == 0);
      }
    }
  }
}

TEST_CASE("meet and join examples") {
  CHECK(rf(meet(pf("b(b w)"), pf("b(w b)"))) == "b(w w)");
  CHECK(rf(meet(pf("w(b)"), pf("b(w w)"))) == "w(w)");
  CHECK(rf(join(pf("b(b w)"), pf("b(w b)"))) == "b(b b)");
  CHECK(rf(join(pf("w(b)"), pf("b(w w)"))) == "b(b b)");
  for (const char* text : {"", "w", "b(w w) w", "w(b(w w))"}) {
    CHECK(meet(pf(text), pf(text)) == pf(text));
    CHECK(join(pf(text), pf(text)) == pf(text));
  }
}

TEST_CASE("incompatible forests are rejected") {
  CHECK_THROWS_AS(meet(pf("w"), pf("w w")), IncompatibleError);
  CHECK_THROWS_AS(join(pf("w(w)"), pf("w")), IncompatibleError);
  CHECK_THROWS_AS(meet(pf("b(w)"), pf("w(w)")), IncompatibleError);
  CHECK_THROWS_AS(join(pf("b(w w)"), pf("w")), IncompatibleError);
}

TEST_CASE("meet and join are the lattice operations on ladders up to 4") {
  for (std::uint32_t d = 0; d <= 4; ++d) check_against_brute_force(ladder(d));
}

TEST_CASE("meet and join are the lattice operations on random white forests") {
  for (int i = 0; i < 50; ++i) check_against_brute_force(small_random_forest());
}

TEST_CASE("lattice axioms") {
  for (int i = 0; i < 30; ++i) {
    auto g = forest_upset(i < 3 ? ladder(3) : small_random_forest());
    const auto& n = g.nodes;
    auto pick = [&] { return n[test::uniform(0, static_cast<std::uint32_t>(n.size() - 1))]; };
    for (int j = 0; j < 200; ++j) {
      const DupForest a = pick(), b = pick(), c = pick();
      CHECK(meet(a, join(a, b)) == a);
      CHECK(join(a, meet(a, b)) == a);
      CHECK(meet(a, b) == meet(b, a));
      CHECK(join(a, b) == join(b, a));
      CHECK(meet(meet(a, b), c) == meet(a, meet(b, c)));
      CHECK(join(join(a, b), c) == join(a, join(b, c)));
    }
  }
}

TEST_CASE("order-compatible pairs") {
  auto g = forest_upset(pf("w(w(w)) w"));
  Reachability r(g.nodes.size(), g.step_edges);
  for (NodeIndex a = 0; a < g.nodes.size(); ++a) {
    for (NodeIndex b : r.up_set(a)) {
      CHECK(meet(g.nodes[a], g.nodes[b]) == g.nodes[a]);
      CHECK(join(g.nodes[a], g.nodes[b]) == g.nodes[b]);
    }
  }
}

TEST_CASE("the upset of w(w) w is not graded") {
  auto g = forest_upset(pf("w(w) w"));
  REQUIRE(g.nodes.size() == 12);
  Reachability r(g.nodes.size(), g.step_edges);
  const auto lengths = r.maximal_chain_lengths(0);
  CHECK(lengths.size() > 1);
  CHECK(lengths.front() == 3);
  CHECK(lengths.back() == 4);
}
