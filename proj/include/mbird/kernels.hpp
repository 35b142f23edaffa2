#pragma once

// Word-parallel bitset kernels used by reachability, transitive reduction,
// lattice checks and interval counting. A scalar reference variant is always
// available; an AVX2 variant is compiled separately and selected at runtime
// when the CPU supports it. Every variant must produce identical results.

#include <cstddef>
#include <cstdint>
#include <string_view>

namespace mbird::kernels {

using Word = std::uint64_t;

inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

struct BitKernels {
  std::string_view name;
  /// dst |= src
  void (*or_into)(Word* dst, const Word* src, std::size_t words);
  /// twice |= once & src; once |= src. Tracks bits seen in two or more rows.
  void (*or_twice)(Word* once, Word* twice, const Word* src, std::size_t words);
  std::uint64_t (*popcount)(const Word* src, std::size_t words);
  std::uint64_t (*and_popcount)(const Word* a, const Word* b, std::size_t words);
  /// Lowest bit index set in a & b, or npos.
  std::size_t (*and_find_first)(const Word* a, const Word* b, std::size_t words);
  /// Highest bit index set in a & b, or npos.
  std::size_t (*and_find_last)(const Word* a, const Word* b, std::size_t words);
  /// True when (a & b) has no bit outside c.
  bool (*and_subset)(const Word* a, const Word* b, const Word* c, std::size_t words);
};

const BitKernels& scalar_kernels() noexcept;

/// AVX2 variant, or nullptr when it was not compiled in or the CPU lacks
/// AVX2.
const BitKernels* avx2_kernels() noexcept;

/// Variant used by the library. Chosen once: the environment variable
/// MBIRD_KERNELS=scalar|avx2 forces a choice, otherwise the widest supported
/// variant wins.
const BitKernels& active_kernels() noexcept;

}  // namespace mbird::kernels
