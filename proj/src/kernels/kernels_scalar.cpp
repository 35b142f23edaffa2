#include <bit>

#include "mbird/kernels.hpp"

namespace mbird::kernels {

namespace {

void or_into(Word* dst, const Word* src, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) dst[i] |= src[i];
}

void or_twice(Word* once, Word* twice, const Word* src, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) {
    twice[i] |= once[i] & src[i];
    once[i] |= src[i];
  }
}

std::uint64_t popcount(const Word* src, std::size_t words) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < words; ++i) total += std::popcount(src[i]);
  return total;
}

std::uint64_t and_popcount(const Word* a, const Word* b, std::size_t words) {
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < words; ++i) total += std::popcount(a[i] & b[i]);
  return total;
}

std::size_t and_find_first(const Word* a, const Word* b, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) {
    Word w = a[i] & b[i];
    if (w != 0) return i * 64 + static_cast<std::size_t>(std::countr_zero(w));
  }
  return npos;
}

std::size_t and_find_last(const Word* a, const Word* b, std::size_t words) {
  for (std::size_t i = words; i-- > 0;) {
    Word w = a[i] & b[i];
    if (w != 0) return i * 64 + 63 - static_cast<std::size_t>(std::countl_zero(w));
  }
  return npos;
}

bool and_subset(const Word* a, const Word* b, const Word* c, std::size_t words) {
  for (std::size_t i = 0; i < words; ++i) {
    if ((a[i] & b[i] & ~c[i]) != 0) return false;
  }
  return true;
}

}  // namespace

const BitKernels& scalar_kernels() noexcept {
  static const BitKernels k{"scalar",       or_into,        or_twice,      popcount,
                            and_popcount,   and_find_first, and_find_last, and_subset};
  return k;
}

}  // namespace mbird::kernels
