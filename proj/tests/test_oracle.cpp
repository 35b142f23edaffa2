#include "doctest.h"

#include <numeric>

#include "mbird/enumerate.hpp"
#include "mbird/error.hpp"
#include "mbird/oracle.hpp"
#include "support.hpp"

using namespace mbird;

namespace {

std::uint64_t sum(const ForestCounts& c) {
  return std::accumulate(c.begin(), c.end(), std::uint64_t{0},
                         [](std::uint64_t acc, const auto& kv) { return acc + kv.second; });
}

}  // namespace

TEST_CASE("poset counts") {
  OracleCounts c3 = oracle_poset_counts(3, true);
  CHECK(c3.elements == 42);
  CHECK(c3.hasse_edges == 97);
  CHECK(c3.intervals == BigInt(371));
  CHECK(c3.cover_equals_step);

  OracleCounts c0 = oracle_poset_counts(0, true);
  CHECK(c0.elements == 1);
  CHECK(c0.hasse_edges == 0);
  CHECK(c0.intervals == BigInt(1));

  OracleCounts c4 = oracle_poset_counts(4, true);
  CHECK(c4.elements == 1806);
  CHECK(c4.hasse_edges == 8287);
  CHECK(c4.intervals == BigInt(144513));
  CHECK(c4.explicit_reachability);

  CHECK_FALSE(oracle_poset_counts(2, false).intervals.has_value());
  CHECK_THROWS_AS(oracle_poset_counts(5, true), ValidationError);
  CHECK_THROWS_AS(oracle_poset_counts(6, false), BudgetExceeded);
}

TEST_CASE("oracle and recurrence agree on the feasible range") {
  auto sizes = seq_by_recurrence(Equation::sizes, 5, Indexing::ladder).values;
  auto edges = seq_by_recurrence(Equation::edges, 5, Indexing::ladder).values;
  auto intervals = seq_by_recurrence(Equation::intervals, 5, Indexing::ladder).values;
  for (std::uint32_t d = 0; d <= kOracleIntervalsMaxD; ++d) {
    OracleCounts c = oracle_poset_counts(d, true);
    CHECK(c.elements == sizes[d]);
    CHECK(c.hasse_edges == edges[d]);
    CHECK(*c.intervals == intervals[d]);
  }
}

TEST_CASE("covers are single steps") {
  for (std::uint32_t d = 0; d <= 4; ++d) CHECK(oracle_upset_counts(ladder(d), false).cover_equals_step);
  std::size_t tested = 0;
  while (tested < 50) {
    const DupForest f = test::random_white_forest(test::uniform(0, 6));
    if (!forest_upset(f, 5000).flags.is_complete) continue;
    INFO(render_forest(f));
    CHECK(oracle_upset_counts(f, false).cover_equals_step);
    ++tested;
  }
}

TEST_CASE("in-degree map") {
  const DupForest f = parse_forest("w(w) w");
  ForestCounts ni = oracle_ni(f);
  CHECK(ni.at("b(b b) b") == 4);
  CHECK(sum(ni) == 20);
  CHECK_FALSE(ni.contains("w(w) w"));
  CHECK(oracle_ni(DupForest{}).empty());
}

TEST_CASE("down-set sizes") {
  const DupForest f = parse_forest("w(w) w");
  ForestCounts ns = oracle_ns(f);
  CHECK(ns.at("b(b b) b") == 12);
  CHECK(sum(ns) == 51);
  CHECK(ns.at("w(w) w") == 1);
  for (std::uint32_t d = 0; d <= 4; ++d) CHECK(sum(oracle_ns(ladder(d))) == interval_family(1, d));
}

TEST_CASE("meet decompositions") {
  ForestCounts md = oracle_md_k(ladder(1), 2);
  CHECK(md == ForestCounts{{"w", 3}, {"b", 1}});

  for (const char* text : {"w(w) w", "w(w(w))"}) {
    for (const auto& [forest, n] : oracle_md_k(parse_forest(text), 1)) CHECK(n == 1);
  }
  CHECK(oracle_md_k(ladder(0), 3) == ForestCounts{{"", 1}});
  CHECK_THROWS_AS(oracle_md_k(ladder(1), 0), ValidationError);
  CHECK_THROWS_AS(oracle_md_k(ladder(4), 3), ValidationError);
}

TEST_CASE("weighted meet decompositions count the interval family") {
  for (std::uint32_t d = 0; d <= 2; ++d) {
    const DupForest l = ladder(d);
    const ForestCounts ns = oracle_ns(l);
    for (std::uint32_t k = 1; k <= 3; ++k) {
      std::uint64_t weighted = 0;
      for (const auto& [forest, n] : oracle_md_k(l, k)) weighted += ns.at(forest) * n;
      INFO("d=" << d << " k=" << k);
      CHECK(weighted == interval_family(k, d));
    }
  }
}

TEST_CASE("extremal census") {
  CHECK(oracle_extremal_census(0) == Census{1, 1, 1});
  CHECK(oracle_extremal_census(3) == Census{5, 2, 4});
  CHECK(oracle_extremal_census(7) == Census{429, 51, 344});
  CHECK_THROWS_AS(oracle_extremal_census(11), ValidationError);
  const std::vector<std::uint64_t> classes{1, 1, 2, 10, 170};
  for (std::uint32_t h = 0; h < classes.size(); ++h) CHECK(oracle_extremal_census_by_height(h).maximal == classes[h]);
}

TEST_CASE("oracle sequences") {
  CHECK(seq_by_oracle(Equation::sizes, 6).values == seq_by_recurrence(Equation::sizes, 6).values);
  CHECK(seq_by_oracle(Equation::intervals, 5, Indexing::ladder).values ==
        seq_by_recurrence(Equation::intervals, 5, Indexing::ladder).values);
  CHECK(seq_by_oracle(Equation::motzkin, 8).values == seq_by_recurrence(Equation::motzkin, 8).values);
  CHECK(seq_by_oracle(Equation::classes, 6).values == seq_by_recurrence(Equation::classes, 6).values);
  CHECK_THROWS_AS(seq_by_oracle(Equation::intervals, 7), ValidationError);
  CHECK(oracle_max_count(Equation::sizes, Indexing::mockingbird, true) == 7);
}
