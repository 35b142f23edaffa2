#pragma once

// Brute-force counts on explicitly constructed posets, used as ground truth
// for the recurrences and series.

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>

#include "mbird/bigint.hpp"
#include "mbird/enumerate.hpp"
#include "mbird/forest.hpp"

namespace mbird {

struct OracleCounts {
  std::uint32_t d = 0;
  BigInt elements;
  BigInt hasse_edges;
  /// Absent when intervals were not requested.
  std::optional<BigInt> intervals;
  bool cover_equals_step = false;
  /// Covers were found with reachability bitsets; otherwise by testing
  /// comparability of sibling successors with the forest meet.
  bool explicit_reachability = true;
};

/// Largest ladder index for which intervals are counted.
inline constexpr std::uint32_t kOracleIntervalsMaxD = 4;
/// Largest ladder index for which elements and edges are counted. D*(l_5)
/// has about 3.3 million elements and is streamed.
inline constexpr std::uint32_t kOracleMaxD = 5;

/// Counts for D*(l_d). Throws ValidationError when intervals are asked for
/// beyond kOracleIntervalsMaxD and BudgetExceeded beyond kOracleMaxD.
OracleCounts oracle_poset_counts(std::uint32_t d, bool with_intervals);

/// Same counts for D*(f) built explicitly; f must have at most
/// kMaxAnalyzedNodes elements above it.
OracleCounts oracle_upset_counts(const DupForest& f, bool with_intervals);

/// Keyed by rendered forest.
using ForestCounts = std::map<std::string, std::uint64_t>;

/// Nonzero in-degrees of the step relation on D*(f).
ForestCounts oracle_ni(const DupForest& f);
/// Size of [f, f′] for every f′ in D*(f).
ForestCounts oracle_ns(const DupForest& f);
/// For every f′ in D*(f), the number of k-tuples of elements of D*(f′)
/// whose greatest lower bound (taken from the explicit order) is f′.
/// Throws ValidationError if more than 10^7 tuples would be enumerated.
ForestCounts oracle_md_k(const DupForest& f, std::uint32_t k);

struct Census {
  std::uint64_t total = 0;
  std::uint64_t maximal = 0;
  std::uint64_t minimal = 0;
  friend bool operator==(const Census&, const Census&) = default;
};

/// Classifies every M-combinator of the given degree (at most 10).
Census oracle_extremal_census(std::uint32_t degree);
/// Classifies every M-combinator of the given height (at most 5).
Census oracle_extremal_census_by_height(std::uint32_t height);

/// Sequence prefix from the oracle. sizes/edges/intervals come from
/// oracle_poset_counts, motzkin/min from the census by degree, classes
/// from the census by height. Throws ValidationError when `count` leaves
/// the feasible range.
SequenceTable seq_by_oracle(Equation e, std::size_t count, Indexing indexing = Indexing::mockingbird,
                            bool large = false);

/// Largest count seq_by_oracle accepts.
std::size_t oracle_max_count(Equation e, Indexing indexing, bool large);

}  // namespace mbird
