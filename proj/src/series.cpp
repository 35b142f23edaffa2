#include "mbird/series.hpp"

#include <bit>
#include <string>

#include "mbird/error.hpp"

namespace mbird {

TruncSeries::TruncSeries(std::vector<BigInt> coeffs) : coeffs_(std::move(coeffs)) {
  if (coeffs_.empty()) throw ValidationError("a series needs at least one coefficient");
}

TruncSeries TruncSeries::constant(std::size_t order, long value) {
  TruncSeries s(order);
  s[0] = value;
  return s;
}

TruncSeries TruncSeries::z(std::size_t order) {
  TruncSeries s(order);
  if (order >= 1) s[1] = 1;
  return s;
}

namespace {

void require_same_order(const TruncSeries& a, const TruncSeries& b) {
  if (a.order() != b.order()) {
    throw ValidationError("series orders differ (" + std::to_string(a.order()) + " and " +
                          std::to_string(b.order()) + ")");
  }
}

}  // namespace

TruncSeries series_arith(SeriesOp op, const TruncSeries& a, const TruncSeries& b) {
  require_same_order(a, b);
  const std::size_t n = a.order();
  TruncSeries out(n);
  switch (op) {
    case SeriesOp::add:
      for (std::size_t i = 0; i <= n; ++i) out[i] = a[i] + b[i];
      break;
    case SeriesOp::sub:
      for (std::size_t i = 0; i <= n; ++i) out[i] = a[i] - b[i];
      break;
    case SeriesOp::mul:
      for (std::size_t i = 0; i <= n; ++i) {
        if (sgn(a[i]) == 0) continue;
        for (std::size_t j = 0; i + j <= n; ++j) mpz_addmul(out[i + j].get_mpz_t(), a[i].get_mpz_t(), b[j].get_mpz_t());
      }
      break;
  }
  return out;
}

TruncSeries hadamard(const TruncSeries& a, const TruncSeries& b) {
  require_same_order(a, b);
  TruncSeries out(a.order());
  for (std::size_t i = 0; i <= a.order(); ++i) out[i] = a[i] * b[i];
  return out;
}

TruncSeries max_product(const TruncSeries& a, const TruncSeries& b) {
  require_same_order(a, b);
  TruncSeries out(a.order());
  BigInt prefix_a = 0;
  BigInt prefix_b = 0;
  for (std::size_t n = 0; n <= a.order(); ++n) {
    out[n] = a[n] * prefix_b + b[n] * prefix_a + a[n] * b[n];
    prefix_a += a[n];
    prefix_b += b[n];
  }
  return out;
}

TruncSeries substitute_z2(const TruncSeries& a) {
  TruncSeries out(a.order());
  for (std::size_t n = 0; 2 * n <= a.order(); ++n) out[2 * n] = a[n];
  return out;
}

TruncSeries shift(const TruncSeries& a) {
  TruncSeries out(a.order());
  for (std::size_t n = 1; n <= a.order(); ++n) out[n] = a[n - 1];
  return out;
}

Equation parse_equation(std::string_view name) {
  for (Equation e : {Equation::motzkin, Equation::min, Equation::classes, Equation::sizes, Equation::edges,
                     Equation::intervals}) {
    if (equation_name(e) == name) return e;
  }
  throw ValidationError("unknown sequence '" + std::string(name) +
                        "' (expected motzkin, min, classes, sizes, edges or intervals)");
}

std::string_view equation_name(Equation e) {
  switch (e) {
    case Equation::motzkin: return "motzkin";
    case Equation::min: return "min";
    case Equation::classes: return "classes";
    case Equation::sizes: return "sizes";
    case Equation::edges: return "edges";
    case Equation::intervals: return "intervals";
  }
  return "";
}

TruncSeries equation_rhs(Equation e, const TruncSeries& f, const TruncSeries* g) {
  const std::size_t n = f.order();
  const TruncSeries one = TruncSeries::constant(n, 1);
  const TruncSeries z = TruncSeries::z(n);
  switch (e) {
    case Equation::motzkin:
      return one + z + shift(f * f) - shift(f);
    case Equation::min:
      return one + z + shift(f * f) - shift(substitute_z2(f));
    case Equation::classes:
      return one + z + shift(max_product(f, f)) - shift(f);
    case Equation::sizes:
      return one + shift(f) + shift(hadamard(f, f));
    case Equation::edges: {
      if (g == nullptr) throw ValidationError("the edges equation needs the sizes series");
      TruncSeries cross = hadamard(f, *g);
      return shift(f) + shift(*g) + shift(cross + cross);
    }
    case Equation::intervals:
      break;
  }
  throw ValidationError("the intervals equation is a family; use solve_interval_family");
}

TruncSeries solve_equation(Equation e, std::size_t order) {
  if (e == Equation::intervals) return solve_interval_family(order).f1();
  TruncSeries g(order);
  if (e == Equation::edges) g = solve_equation(Equation::sizes, order);
  // Each round fixes at least one more coefficient.
  TruncSeries f(order);
  for (std::size_t round = 0; round <= order; ++round) f = equation_rhs(e, f, &g);
  return f;
}

// ---------------------------------------------------------------------------
// Interval family

namespace {

std::size_t family_order(std::size_t order, std::uint64_t k) {
  const auto depth = static_cast<std::size_t>(std::bit_width(k - 1));  // ceil(log2 k)
  return order - depth;
}

// Σ_{i=1..k} C(k,i) F_{k+i} below z^order. Only those coefficients reach
// F_k after the shift by z.
TruncSeries binomial_tail(const std::map<std::uint64_t, TruncSeries>& family, std::uint64_t k,
                          std::size_t order) {
  TruncSeries sum(order);
  BigInt c = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    c *= k - i + 1;
    mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), i);
    const TruncSeries& other = family.at(k + i);
    for (std::size_t n = 0; n < order; ++n) mpz_addmul(sum[n].get_mpz_t(), c.get_mpz_t(), other[n].get_mpz_t());
  }
  return sum;
}

TruncSeries family_rhs(const TruncSeries& fk, const TruncSeries& tail) {
  // 1 + z (F_k ⊙ F_k + F_k + tail)
  TruncSeries inner = hadamard(fk, fk) + fk + tail;
  TruncSeries out = shift(inner);
  out[0] = 1;
  return out;
}

}  // namespace

IntervalFamilySolution solve_interval_family(std::size_t order) {
  if (order > 16) throw ValidationError("interval family limited to order 16");
  IntervalFamilySolution s;
  s.order = order;
  const std::uint64_t top = std::uint64_t{1} << order;
  for (std::uint64_t k = top; k >= 1; --k) {
    const std::size_t ord = family_order(order, k);
    if (ord == 0) {
      s.family.emplace(k, TruncSeries::constant(0, 1));
      continue;
    }
    // F_{k+i} for i >= 1 are final; iterate on F_k alone.
    const TruncSeries tail = binomial_tail(s.family, k, ord);
    TruncSeries fk(ord);
    for (std::size_t round = 0; round <= ord; ++round) fk = family_rhs(fk, tail);
    s.family.emplace(k, std::move(fk));
  }
  return s;
}

bool interval_family_is_fixpoint(const IntervalFamilySolution& s) {
  for (const auto& [k, fk] : s.family) {
    const std::size_t ord = fk.order();
    if (ord == 0) {
      if (fk[0] != 1) return false;
      continue;
    }
    TruncSeries tail(ord - 1);
    BigInt c = 1;
    for (std::uint64_t i = 1; i <= k; ++i) {
      c *= k - i + 1;
      mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), i);
      const TruncSeries& other = s.family.at(k + i);
      if (other.order() + 1 < ord) return false;
      for (std::size_t n = 0; n < ord; ++n) tail[n] += c * other[n];
    }
    TruncSeries padded(ord);
    for (std::size_t n = 0; n < ord; ++n) padded[n] = tail[n];
    if (family_rhs(fk, padded) != fk) return false;
  }
  return true;
}

}  // namespace mbird
