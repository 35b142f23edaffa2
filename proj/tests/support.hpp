#pragma once

// Seeded generators shared by the test suites.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mbird/forest.hpp"
#include "mbird/term.hpp"

namespace mbird::test {

inline std::mt19937_64& rng() {
  static std::mt19937_64 gen(20211027);
  return gen;
}

inline std::uint32_t uniform(std::uint32_t lo, std::uint32_t hi) {
  return std::uniform_int_distribution<std::uint32_t>(lo, hi)(rng());
}

/// Uniform split of the application nodes, leaves drawn from `leaves`.
inline Term random_term(std::uint32_t degree, const std::vector<Term>& leaves) {
  if (degree == 0) return leaves[uniform(0, static_cast<std::uint32_t>(leaves.size() - 1))];
  const std::uint32_t left = uniform(0, degree - 1);
  return Term::apply(random_term(left, leaves), random_term(degree - 1 - left, leaves));
}

inline Term random_m_term(std::uint32_t degree) { return random_term(degree, {Term::basic("M")}); }

/// White-only forest with exactly `nodes` nodes.
inline DupForest random_white_forest(std::uint32_t nodes) {
  if (nodes == 0) return {};
  const std::uint32_t first = uniform(1, nodes);
  return DupForest::tree(false, random_white_forest(first - 1)) + random_white_forest(nodes - first);
}

}  // namespace mbird::test
