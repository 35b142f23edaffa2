#include "mbird/enumerate.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "mbird/error.hpp"
#include "mbird/oracle.hpp"

namespace mbird {

Indexing parse_indexing(std::string_view text) {
  if (text == "ladder") return Indexing::ladder;
  if (text == "mockingbird") return Indexing::mockingbird;
  throw ValidationError("invalid indexing '" + std::string(text) + "' (expected ladder or mockingbird)");
}

Method parse_method(std::string_view text) {
  if (text == "recurrence") return Method::recurrence;
  if (text == "series") return Method::series;
  if (text == "oracle") return Method::oracle;
  throw ValidationError("invalid method '" + std::string(text) + "' (expected recurrence, series or oracle)");
}

std::string_view indexing_name(Indexing i) { return i == Indexing::ladder ? "ladder" : "mockingbird"; }

std::string_view method_name(Method m) {
  switch (m) {
    case Method::recurrence: return "recurrence";
    case Method::series: return "series";
    case Method::oracle: return "oracle";
    case Method::bfile: return "bfile";
  }
  return "";
}

namespace {

bool ladder_indexed(Equation e) {
  return e == Equation::sizes || e == Equation::edges || e == Equation::intervals;
}

// The value for M(0), which is isomorphic to M(1) = D*(l_0).
BigInt m0_value(Equation e) { return e == Equation::edges ? 0 : 1; }

std::size_t ladder_count(Equation e, std::size_t count, Indexing indexing) {
  if (!ladder_indexed(e) || indexing == Indexing::ladder) return count;
  return count == 0 ? 0 : count - 1;
}

SequenceTable finish(Equation e, std::vector<BigInt> values, std::size_t count, Indexing indexing, Method m) {
  SequenceTable t;
  t.name = std::string(equation_name(e));
  t.indexing = indexing;
  t.method = m;
  if (indexing == Indexing::mockingbird && count > 0) values = to_mockingbird(e, std::move(values));
  values.resize(std::min(values.size(), count));
  t.values = std::move(values);
  return t;
}

std::vector<BigInt> sizes_ladder(std::size_t n) {
  std::vector<BigInt> a;
  for (std::size_t d = 0; d < n; ++d) a.push_back(d == 0 ? BigInt(1) : a[d - 1] + a[d - 1] * a[d - 1]);
  return a;
}

std::vector<BigInt> recurrence_values(Equation e, std::size_t n) {
  std::vector<BigInt> a;
  switch (e) {
    case Equation::motzkin:
      for (std::size_t d = 0; d < n; ++d) {
        if (d < 2) {
          a.emplace_back(1);
          continue;
        }
        BigInt v = 0;
        for (std::size_t i = 0; i < d; ++i) v += a[i] * a[d - 1 - i];
        a.push_back(v - a[d - 1]);
      }
      break;
    case Equation::min:
      for (std::size_t d = 0; d < n; ++d) {
        if (d < 2) {
          a.emplace_back(1);
          continue;
        }
        BigInt b = 0;
        for (std::size_t i = 0; i <= d - 1; ++i) b += a[i] * a[d - 1 - i];
        if (d % 2 == 1) b -= a[(d - 1) / 2];
        a.push_back(b);
      }
      break;
    case Equation::classes: {
      BigInt prefix = 0;  // Σ_{i=1..h-1} a(i-1)
      for (std::size_t h = 0; h < n; ++h) {
        if (h < 2) {
          a.emplace_back(1);
          continue;
        }
        prefix += a[h - 2];
        const BigInt& p = a[h - 1];
        a.push_back(p * p - p + 2 * p * prefix);
      }
      break;
    }
    case Equation::sizes:
      a = sizes_ladder(n);
      break;
    case Equation::edges: {
      std::vector<BigInt> b = sizes_ladder(n);
      for (std::size_t d = 0; d < n; ++d) {
        a.push_back(d == 0 ? BigInt(0) : a[d - 1] + b[d - 1] + 2 * a[d - 1] * b[d - 1]);
      }
      break;
    }
    case Equation::intervals:
      for (std::uint32_t d = 0; d < n; ++d) a.push_back(interval_family(1, d));
      break;
  }
  return a;
}

}  // namespace

std::vector<BigInt> to_mockingbird(Equation e, std::vector<BigInt> ladder_values) {
  if (!ladder_indexed(e)) return ladder_values;
  ladder_values.insert(ladder_values.begin(), m0_value(e));
  return ladder_values;
}

SequenceTable seq_by_recurrence(Equation e, std::size_t count, Indexing indexing) {
  if (count == 0) throw ValidationError("count must be at least 1");
  return finish(e, recurrence_values(e, ladder_count(e, count, indexing)), count, indexing,
                Method::recurrence);
}

SequenceTable seq_by_series(Equation e, std::size_t count, Indexing indexing) {
  if (count == 0) throw ValidationError("count must be at least 1");
  const std::size_t n = ladder_count(e, count, indexing);
  std::vector<BigInt> values;
  if (n > 0) values = solve_equation(e, n - 1).coefficients();
  return finish(e, std::move(values), count, indexing, Method::series);
}

// ---------------------------------------------------------------------------
// Catalytic family

BigInt IntervalFamilyMemo::value(std::uint64_t k, std::uint32_t d) {
  if (k == 0) throw ValidationError("a_k needs k >= 1");
  if (d == 0) return 1;
  auto key = std::make_pair(k, d);
  if (auto it = memo_.find(key); it != memo_.end()) return it->second;
  BigInt prev = value(k, d - 1);
  BigInt v = prev * prev;
  BigInt c = 1;
  for (std::uint64_t i = 0; i <= k; ++i) {
    if (i > 0) {
      c *= k - i + 1;
      mpz_divexact_ui(c.get_mpz_t(), c.get_mpz_t(), i);
    }
    const BigInt other = value(k + i, d - 1);
    mpz_addmul(v.get_mpz_t(), c.get_mpz_t(), other.get_mpz_t());
  }
  memo_.emplace(key, v);
  return v;
}

BigInt interval_family(std::uint64_t k, std::uint32_t d) {
  static std::mutex mutex;
  static IntervalFamilyMemo memo;
  std::lock_guard<std::mutex> lock(mutex);
  return memo.value(k, d);
}

// ---------------------------------------------------------------------------
// Golden prefixes

const std::vector<BigInt>& golden_prefix(Equation e) {
  auto make = [](std::initializer_list<const char*> digits) {
    std::vector<BigInt> v;
    for (const char* s : digits) v.emplace_back(s, 10);
    return v;
  };
  static const std::map<Equation, std::vector<BigInt>> prefixes{
      {Equation::sizes, make({"1", "1", "2", "6", "42", "1806", "3263442", "10650056950806"})},
      {Equation::edges, make({"0", "0", "1", "7", "97", "8287", "29942737", "195432804247687"})},
      {Equation::intervals,
       make({"1", "1", "3", "17", "371", "144513", "20932611523", "438176621806663544657"})},
      {Equation::motzkin, make({"1", "1", "1", "2", "4", "9", "21", "51"})},
      {Equation::min, make({"1", "1", "2", "4", "12", "34", "108", "344"})},
      {Equation::classes,
       make({"1", "1", "2", "10", "170", "33490", "1133870930", "1285739648704587610"})},
  };
  return prefixes.at(e);
}

// ---------------------------------------------------------------------------
// b-files

SequenceTable parse_bfile(std::string_view text, std::string name) {
  SequenceTable t;
  t.name = std::move(name);
  t.method = Method::bfile;
  std::size_t line_no = 0;
  std::optional<std::size_t> next;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (auto hash = line.find('#'); hash != std::string::npos) line.resize(hash);
    std::istringstream fields(line);
    std::string index_text, value_text, extra;
    if (!(fields >> index_text)) continue;
    auto fail = [&](const std::string& what) {
      throw ParseError(ParseError::Kind::syntax, line_no, "b-file line " + std::to_string(line_no) + ": " + what);
    };
    if (!(fields >> value_text) || (fields >> extra)) fail("expected 'n a(n)'");
    std::size_t index = 0;
    auto [ptr, ec] = std::from_chars(index_text.data(), index_text.data() + index_text.size(), index);
    if (ec != std::errc() || ptr != index_text.data() + index_text.size()) fail("bad index");
    BigInt value;
    if (value.set_str(value_text, 10) != 0) fail("bad value");
    if (!next) {
      t.offset = index;
    } else if (index != *next) {
      fail("index " + std::to_string(index) + " does not follow " + std::to_string(*next - 1));
    }
    next = index + 1;
    t.values.push_back(std::move(value));
  }
  return t;
}

SequenceTable load_bfile(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot read " + path.string());
  std::ostringstream text;
  text << in.rdbuf();
  return parse_bfile(text.str(), path.filename().string());
}

CompareReport compare(const SequenceTable& a, const SequenceTable& b) {
  CompareReport r;
  const std::size_t lo = std::max(a.offset, b.offset);
  const std::size_t hi = std::min(a.offset + a.values.size(), b.offset + b.values.size());
  if (lo >= hi) {
    r.warning = "the two sequences share no index; match is vacuous";
    return r;
  }
  r.overlap = hi - lo;
  for (std::size_t n = lo; n < hi; ++n) {
    if (a.values[n - a.offset] != b.values[n - b.offset]) {
      r.match = false;
      r.first_mismatch = n;
      break;
    }
  }
  return r;
}

// ---------------------------------------------------------------------------
// Cross-check

bool CrosscheckReport::ok() const {
  return std::all_of(lines.begin(), lines.end(), [](const CrosscheckLine& l) { return l.ok; });
}

namespace {

CrosscheckLine check_line(std::string sequence, std::string check, const SequenceTable& a,
                          const SequenceTable& b) {
  CrosscheckLine line{std::move(sequence), std::move(check), true, ""};
  CompareReport r = compare(a, b);
  line.ok = r.match && r.overlap > 0;
  if (r.first_mismatch) {
    const std::size_t n = *r.first_mismatch;
    line.detail = "index " + std::to_string(n) + ": " + to_decimal(a.values[n - a.offset]) + " vs " +
                  to_decimal(b.values[n - b.offset]);
  } else if (r.overlap == 0) {
    line.detail = r.warning;
  } else {
    line.detail = "indices " + std::to_string(std::max(a.offset, b.offset)) + ".." +
                  std::to_string(std::max(a.offset, b.offset) + r.overlap - 1);
  }
  return line;
}

}  // namespace

CrosscheckReport crosscheck_all(std::size_t max_d, CrosscheckOptions options) {
  CrosscheckReport report;
  for (Equation e : {Equation::motzkin, Equation::min, Equation::classes, Equation::sizes, Equation::edges,
                     Equation::intervals}) {
    const std::string name(equation_name(e));
    SequenceTable rec = seq_by_recurrence(e, std::max<std::size_t>(max_d + 1, 8));
    SequenceTable ser = seq_by_series(e, max_d + 1);
    report.lines.push_back(check_line(name, "recurrence = series", rec, ser));

    SequenceTable golden{name, golden_prefix(e), Indexing::mockingbird, Method::recurrence, 0};
    report.lines.push_back(check_line(name, "recurrence = reference prefix", rec, golden));

    const std::size_t oracle_count = oracle_max_count(e, Indexing::mockingbird, options.large_oracle);
    SequenceTable orc = seq_by_oracle(e, oracle_count,
                                      Indexing::mockingbird, options.large_oracle);
    report.lines.push_back(check_line(name, "recurrence = oracle", rec, orc));
  }
  return report;
}

std::string sequence_json(const SequenceTable& t) {
  nlohmann::ordered_json j;
  j["name"] = t.name;
  j["indexing"] = std::string(indexing_name(t.indexing));
  j["method"] = std::string(method_name(t.method));
  j["offset"] = t.offset;
  nlohmann::json values = nlohmann::json::array();
  for (const BigInt& v : t.values) values.push_back(to_decimal(v));
  j["values"] = values;
  return j.dump();
}

}  // namespace mbird
