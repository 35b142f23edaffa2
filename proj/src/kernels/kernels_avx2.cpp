// Compiled with -mavx2; only reached through avx2_kernels() after a CPU check.

#include <immintrin.h>

#include <bit>

#include "mbird/kernels.hpp"

namespace mbird::kernels::avx2 {

namespace {

inline __m256i load(const Word* p) {
  return _mm256_loadu_si256(reinterpret_cast<const __m256i*>(p));
}

inline void store(Word* p, __m256i v) {
  _mm256_storeu_si256(reinterpret_cast<__m256i*>(p), v);
}

// Per-64-bit-lane popcount: nibble lookup through vpshufb, then vpsadbw.
inline __m256i popcount_lanes(__m256i v) {
  const __m256i lookup = _mm256_setr_epi8(0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4,
                                          0, 1, 1, 2, 1, 2, 2, 3, 1, 2, 2, 3, 2, 3, 3, 4);
  const __m256i low_mask = _mm256_set1_epi8(0x0f);
  __m256i lo = _mm256_and_si256(v, low_mask);
  __m256i hi = _mm256_and_si256(_mm256_srli_epi16(v, 4), low_mask);
  __m256i counts = _mm256_add_epi8(_mm256_shuffle_epi8(lookup, lo), _mm256_shuffle_epi8(lookup, hi));
  return _mm256_sad_epu8(counts, _mm256_setzero_si256());
}

inline std::uint64_t horizontal_sum(__m256i v) {
  return static_cast<std::uint64_t>(_mm256_extract_epi64(v, 0)) +
         static_cast<std::uint64_t>(_mm256_extract_epi64(v, 1)) +
         static_cast<std::uint64_t>(_mm256_extract_epi64(v, 2)) +
         static_cast<std::uint64_t>(_mm256_extract_epi64(v, 3));
}

void or_into(Word* dst, const Word* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) store(dst + i, _mm256_or_si256(load(dst + i), load(src + i)));
  for (; i < words; ++i) dst[i] |= src[i];
}

void or_twice(Word* once, Word* twice, const Word* src, std::size_t words) {
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    __m256i o = load(once + i);
    __m256i s = load(src + i);
    store(twice + i, _mm256_or_si256(load(twice + i), _mm256_and_si256(o, s)));
    store(once + i, _mm256_or_si256(o, s));
  }
  for (; i < words; ++i) {
    twice[i] |= once[i] & src[i];
    once[i] |= src[i];
  }
}

std::uint64_t popcount(const Word* src, std::size_t words) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) acc = _mm256_add_epi64(acc, popcount_lanes(load(src + i)));
  std::uint64_t total = horizontal_sum(acc);
  for (; i < words; ++i) total += std::popcount(src[i]);
  return total;
}

std::uint64_t and_popcount(const Word* a, const Word* b, std::size_t words) {
  __m256i acc = _mm256_setzero_si256();
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    acc = _mm256_add_epi64(acc, popcount_lanes(_mm256_and_si256(load(a + i), load(b + i))));
  }
  std::uint64_t total = horizontal_sum(acc);
  for (; i < words; ++i) total += std::popcount(a[i] & b[i]);
  return total;
}

std::size_t and_find_first(const Word* a, const Word* b, std::size_t words) {
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    if (!_mm256_testz_si256(load(a + i), load(b + i))) break;
  }
  for (; i < words; ++i) {
    Word w = a[i] & b[i];
    if (w != 0) return i * 64 + static_cast<std::size_t>(std::countr_zero(w));
  }
  return npos;
}

std::size_t and_find_last(const Word* a, const Word* b, std::size_t words) {
  std::size_t i = words;
  while (i >= 4 && _mm256_testz_si256(load(a + i - 4), load(b + i - 4))) i -= 4;
  while (i-- > 0) {
    Word w = a[i] & b[i];
    if (w != 0) return i * 64 + 63 - static_cast<std::size_t>(std::countl_zero(w));
  }
  return npos;
}

bool and_subset(const Word* a, const Word* b, const Word* c, std::size_t words) {
  std::size_t i = 0;
  for (; i + 4 <= words; i += 4) {
    __m256i ab = _mm256_and_si256(load(a + i), load(b + i));
    // testc(c, ab) is 1 iff every bit of ab is set in c.
    if (!_mm256_testc_si256(load(c + i), ab)) return false;
  }
  for (; i < words; ++i) {
    if ((a[i] & b[i] & ~c[i]) != 0) return false;
  }
  return true;
}

}  // namespace

const BitKernels& kernels() noexcept {
  static const BitKernels k{"avx2",         or_into,        or_twice,      popcount,
                            and_popcount,   and_find_first, and_find_last, and_subset};
  return k;
}

}  // namespace mbird::kernels::avx2
