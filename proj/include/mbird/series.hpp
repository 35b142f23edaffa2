#pragma once

// Power series in z truncated at a fixed order N, with exact coefficients.

#include <cstddef>
#include <cstdint>
#include <map>
#include <string_view>
#include <vector>

#include "mbird/bigint.hpp"

namespace mbird {

class TruncSeries {
 public:
  /// The zero series of order N.
  explicit TruncSeries(std::size_t order) : coeffs_(order + 1) {}
  /// Order is coeffs.size() - 1; coeffs must be nonempty.
  explicit TruncSeries(std::vector<BigInt> coeffs);

  static TruncSeries constant(std::size_t order, long value);
  /// The series z (zero when N = 0).
  static TruncSeries z(std::size_t order);

  std::size_t order() const noexcept { return coeffs_.size() - 1; }
  const BigInt& operator[](std::size_t n) const { return coeffs_.at(n); }
  BigInt& operator[](std::size_t n) { return coeffs_.at(n); }
  const std::vector<BigInt>& coefficients() const noexcept { return coeffs_; }

  friend bool operator==(const TruncSeries& a, const TruncSeries& b) { return a.coeffs_ == b.coeffs_; }

 private:
  std::vector<BigInt> coeffs_;
};

enum class SeriesOp { add, sub, mul };

/// Coefficientwise sum or difference, or the Cauchy product truncated at
/// N. Throws ValidationError on unequal orders.
TruncSeries series_arith(SeriesOp op, const TruncSeries& a, const TruncSeries& b);

inline TruncSeries operator+(const TruncSeries& a, const TruncSeries& b) {
  return series_arith(SeriesOp::add, a, b);
}
inline TruncSeries operator-(const TruncSeries& a, const TruncSeries& b) {
  return series_arith(SeriesOp::sub, a, b);
}
inline TruncSeries operator*(const TruncSeries& a, const TruncSeries& b) {
  return series_arith(SeriesOp::mul, a, b);
}

/// Coefficient n is a_n b_n.
TruncSeries hadamard(const TruncSeries& a, const TruncSeries& b);

/// Bilinear extension of z^i ⊞ z^j = z^max(i,j).
TruncSeries max_product(const TruncSeries& a, const TruncSeries& b);

/// a(z^2), truncated at N.
TruncSeries substitute_z2(const TruncSeries& a);

/// z * a, truncated at N.
TruncSeries shift(const TruncSeries& a);

enum class Equation { motzkin, min, classes, sizes, edges, intervals };

/// Throws ValidationError on an unknown name.
Equation parse_equation(std::string_view name);
std::string_view equation_name(Equation e);

/// Solutions F_k of F_k = 1 + z(F_k ⊙ F_k) + z Σ_{i=0..k} C(k,i) F_{k+i}.
/// F_k is kept to order N - ceil(log2 k), which is all that F_1 at order
/// N depends on; k runs up to 2^N.
struct IntervalFamilySolution {
  std::size_t order = 0;
  std::map<std::uint64_t, TruncSeries> family;
  const TruncSeries& f1() const { return family.at(1); }
};

IntervalFamilySolution solve_interval_family(std::size_t order);

/// Unique solution of the named equation at order N, computed by fixpoint
/// iteration from zero. Series are indexed by ladder height for sizes,
/// edges and intervals, by degree for motzkin and min, and by term height
/// for classes. For intervals the result is F_1.
TruncSeries solve_equation(Equation e, std::size_t order);

/// Right-hand side of the equation evaluated at `f` (with `g` the sizes
/// series for edges). A solution is a fixpoint.
TruncSeries equation_rhs(Equation e, const TruncSeries& f, const TruncSeries* g = nullptr);

/// Whether every F_k in the family satisfies its equation to its order.
bool interval_family_is_fixpoint(const IntervalFamilySolution& s);

}  // namespace mbird
