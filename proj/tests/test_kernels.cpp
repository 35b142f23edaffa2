#include "doctest.h"

#include <vector>

#include "mbird/kernels.hpp"
#include "support.hpp"

using namespace mbird::kernels;

namespace {

std::vector<Word> random_words(std::size_t n, int sparsity) {
  std::vector<Word> out(n);
  for (Word& w : out) {
    w = mbird::test::rng()();
    for (int i = 0; i < sparsity; ++i) w &= mbird::test::rng()();
  }
  return out;
}

// Both variants on identical inputs must give identical outputs.
void compare(const BitKernels& a, const BitKernels& b) {
  for (int round = 0; round < 2000; ++round) {
    const std::size_t n = mbird::test::uniform(0, 37);
    const int sparsity = static_cast<int>(mbird::test::uniform(0, 6));
    const auto x = random_words(n, sparsity);
    const auto y = random_words(n, sparsity);
    auto z = random_words(n, sparsity);
    if (round % 5 == 0) {
      for (std::size_t i = 0; i < n; ++i) z[i] |= x[i] & y[i];
    }

    auto d1 = random_words(n, 2);
    auto d2 = d1;
    a.or_into(d1.data(), x.data(), n);
    b.or_into(d2.data(), x.data(), n);
    REQUIRE(d1 == d2);

    auto once1 = random_words(n, 2), twice1 = random_words(n, 3);
    auto once2 = once1, twice2 = twice1;
    a.or_twice(once1.data(), twice1.data(), x.data(), n);
    b.or_twice(once2.data(), twice2.data(), x.data(), n);
    REQUIRE(once1 == once2);
    REQUIRE(twice1 == twice2);

    REQUIRE(a.popcount(x.data(), n) == b.popcount(x.data(), n));
    REQUIRE(a.and_popcount(x.data(), y.data(), n) == b.and_popcount(x.data(), y.data(), n));
    REQUIRE(a.and_find_first(x.data(), y.data(), n) == b.and_find_first(x.data(), y.data(), n));
    REQUIRE(a.and_find_last(x.data(), y.data(), n) == b.and_find_last(x.data(), y.data(), n));
    REQUIRE(a.and_subset(x.data(), y.data(), z.data(), n) == b.and_subset(x.data(), y.data(), z.data(), n));
  }
}

}  // namespace

TEST_CASE("scalar kernels") {
  const BitKernels& k = scalar_kernels();
  std::vector<Word> a{0b1010, 0, 1ULL << 63};
  std::vector<Word> b{0b0110, 0, 1ULL << 63};
  std::vector<Word> c{0b0010, 0, 0};
  CHECK(k.popcount(a.data(), 3) == 3);
  CHECK(k.and_popcount(a.data(), b.data(), 3) == 2);
  CHECK(k.and_find_first(a.data(), b.data(), 3) == 1);
  CHECK(k.and_find_last(a.data(), b.data(), 3) == 191);
  CHECK_FALSE(k.and_subset(a.data(), b.data(), c.data(), 3));
  c[2] = 1ULL << 63;
  CHECK(k.and_subset(a.data(), b.data(), c.data(), 3));
  std::vector<Word> zero(3, 0);
  CHECK(k.and_find_first(a.data(), zero.data(), 3) == npos);
  CHECK(k.and_find_last(a.data(), zero.data(), 3) == npos);

  std::vector<Word> once{0b0011}, twice{0};
  const Word src = 0b0110;
  k.or_twice(once.data(), twice.data(), &src, 1);
  CHECK(once[0] == 0b0111);
  CHECK(twice[0] == 0b0010);
}

TEST_CASE("AVX2 kernels match the scalar reference") {
  const BitKernels* avx2 = avx2_kernels();
  if (avx2 == nullptr) {
    MESSAGE("AVX2 variant unavailable on this machine; equivalence not exercised");
    return;
  }
  compare(scalar_kernels(), *avx2);
}

TEST_CASE("active variant is one of the compiled variants") {
  const BitKernels& active = active_kernels();
  CHECK((&active == &scalar_kernels() || &active == avx2_kernels()));
  MESSAGE("active kernels: " << active.name);
}
