#pragma once

// The six counting sequences by closed recurrence, b-file comparison, and
// the cross-check of every method against every other.

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "mbird/bigint.hpp"
#include "mbird/series.hpp"

namespace mbird {

/// ladder: value d belongs to D*(l_d). mockingbird: value d belongs to
/// M(d), which is the ladder sequence with the M(0) value prepended. The
/// distinction only applies to sizes, edges and intervals; the other three
/// sequences are indexed by degree or height under both names.
enum class Indexing { ladder, mockingbird };
enum class Method { recurrence, series, oracle, bfile };

Indexing parse_indexing(std::string_view text);
Method parse_method(std::string_view text);
std::string_view indexing_name(Indexing i);
std::string_view method_name(Method m);

struct SequenceTable {
  std::string name;
  std::vector<BigInt> values;
  Indexing indexing = Indexing::mockingbird;
  Method method = Method::recurrence;
  /// Index of values[0].
  std::size_t offset = 0;
};

/// First `count` values, exact.
SequenceTable seq_by_recurrence(Equation e, std::size_t count, Indexing indexing = Indexing::mockingbird);
/// First `count` values read off the fixpoint solution of the equation.
SequenceTable seq_by_series(Equation e, std::size_t count, Indexing indexing = Indexing::mockingbird);

/// Re-indexes a ladder-indexed prefix: prepends the M(0) value for sizes,
/// edges and intervals.
std::vector<BigInt> to_mockingbird(Equation e, std::vector<BigInt> ladder_values);

/// Memo for a_k(d) = a_k(d-1)^2 + Σ_{i=0..k} C(k,i) a_{k+i}(d-1), a_k(0) = 1.
class IntervalFamilyMemo {
 public:
  BigInt value(std::uint64_t k, std::uint32_t d);
  /// Every (k, d) the memo has computed, d >= 1.
  const std::map<std::pair<std::uint64_t, std::uint32_t>, BigInt>& entries() const { return memo_; }

 private:
  std::map<std::pair<std::uint64_t, std::uint32_t>, BigInt> memo_;
};

/// a_k(d) from a process-wide memo; calls are serialized. Throws
/// ValidationError when k = 0.
BigInt interval_family(std::uint64_t k, std::uint32_t d);

/// Reference prefixes of the six sequences, eight values each, in
/// mockingbird indexing.
const std::vector<BigInt>& golden_prefix(Equation e);

/// OEIS b-file: lines `n a(n)` with contiguous increasing n, `#` comments
/// and blank lines ignored. Throws ParseError on malformed or
/// non-contiguous lines.
SequenceTable parse_bfile(std::string_view text, std::string name = "bfile");
SequenceTable load_bfile(const std::filesystem::path& path);

struct CompareReport {
  bool match = true;
  std::optional<std::size_t> first_mismatch;
  std::size_t overlap = 0;
  /// Set when the index ranges do not overlap.
  std::string warning;
};

/// Compares the values on the common index range of the two tables.
CompareReport compare(const SequenceTable& a, const SequenceTable& b);

struct CrosscheckLine {
  std::string sequence;
  std::string check;
  bool ok = true;
  std::string detail;
};

struct CrosscheckReport {
  std::vector<CrosscheckLine> lines;
  bool ok() const;
};

struct CrosscheckOptions {
  /// Also run the streaming D*(l_5) element and edge counts (minutes).
  bool large_oracle = false;
};

/// Recurrence against series up to index max_d, against the oracle on its
/// feasible range, and against the reference prefixes.
CrosscheckReport crosscheck_all(std::size_t max_d, CrosscheckOptions options = {});

/// `{"name": ..., "indexing": ..., "method": ..., "offset": n, "values": ["1", ...]}`
std::string sequence_json(const SequenceTable& t);

}  // namespace mbird
