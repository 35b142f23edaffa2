#include "doctest.h"

#include <algorithm>
#include <numeric>
#include <set>

#include "mbird/bridge.hpp"
#include "mbird/error.hpp"
#include "mbird/rewrite.hpp"
#include "support.hpp"

using namespace mbird;

namespace {

const Alphabet kM{"M"};
Term pm(std::string_view text) { return parse_term(text, kM); }
std::string fr(std::string_view text) { return render_forest(fr_map(pm(text))); }

std::string code_text(std::string_view code) {
  std::string out;
  for (char c : code) out.push_back(static_cast<char>('0' + c));
  return out;
}

}  // namespace

TEST_CASE("fr examples") {
  CHECK(fr("M").empty());
  CHECK(fr("MM").empty());
  CHECK(fr("x1").empty());
  CHECK(fr("Mx1") == "w");
  CHECK(fr("M(MM)") == "w");
  CHECK(fr("M(M(MM))") == "w(w)");
  CHECK(fr("x2(M(MM))") == "w");
  CHECK(fr("M(MM)(M(MM))") == "w w");
  CHECK(fr("M(Mx2(M(Mx1)))(x1(MM))(M(Mx3)(x2x2))") == "w(w w(w)) w(w)");
  CHECK_THROWS_AS(fr_map(parse_term("KM", Alphabet{"K", "M"})), ValidationError);
}

TEST_CASE("right combs") {
  CHECK(right_comb(0) == pm("M"));
  CHECK(right_comb(2) == pm("M(MM)"));
  CHECK(right_comb(4) == pm("M(M(M(MM)))"));
  for (std::uint32_t d = 1; d < 12; ++d) CHECK(fr_map(right_comb(d)) == ladder(d - 1));
}

TEST_CASE("fr images are white") {
  const std::vector<Term> leaves{Term::basic("M"), Term::basic("M"), Term::variable(1), Term::variable(2)};
  for (int i = 0; i < 10000; ++i) {
    REQUIRE(fr_map(test::random_term(test::uniform(0, 16), leaves)).black_count() == 0);
  }
}

TEST_CASE("term codes") {
  const Term t = pm("M(MM)(M(M(MM)))");
  const std::string code = mterm_code::encode(t);
  CHECK(code_text(code) == "1101001010100");
  CHECK(mterm_code::decode(code) == t);
  std::string back;
  mterm_code::unpack(mterm_code::pack(code), back);
  CHECK(back == code);
  CHECK_THROWS_AS(mterm_code::encode(parse_term("Mx1", kM)), ValidationError);
  CHECK_THROWS_AS(mterm_code::decode(std::string(1, mterm_code::kApp)), ValidationError);

  std::string marked = code;
  marked[0] = mterm_code::kMarkedApp;
  mterm_code::unpack_marked(mterm_code::pack_marked(marked), back);
  CHECK(back == marked);
  CHECK(mterm_code::pack(marked) == mterm_code::pack(code));
  CHECK(mterm_code::decode(marked) == t);
}

TEST_CASE("codes agree with the term operations on random M-terms") {
  std::string scratch, image;
  for (int i = 0; i < 2000; ++i) {
    const Term t = test::random_m_term(test::uniform(0, 14));
    const std::string code = mterm_code::encode(t);
    std::string back;
    mterm_code::unpack(mterm_code::pack(code), back);
    REQUIRE(back == code);

    image.clear();
    mterm_code::fr_into(code, image);
    REQUIRE(image == fr_map(t).code());

    std::set<std::string> from_codes;
    mterm_code::for_each_step(code, scratch, [&](std::string_view s) {
      REQUIRE(std::count(s.begin(), s.end(), mterm_code::kMarkedApp) == 1);
      from_codes.insert(render_term(mterm_code::decode(s)));
    });
    std::set<std::string> from_terms;
    for (const Term& s : step_successors(builtin_system("M"), t)) {
      if (!(s == t)) from_terms.insert(render_term(s));
    }
    REQUIRE(from_codes == from_terms);
  }
}

TEST_CASE("marked applications map to black nodes") {
  // M(M(MM)) -> marked (M(MM))(M(MM)) -> b(w w).
  std::string code = mterm_code::encode(pm("M(M(MM))"));
  std::string scratch;
  std::vector<std::string> images;
  mterm_code::for_each_step(code, scratch, [&](std::string_view s) {
    std::string out;
    mterm_code::fr_into(s, out);
    images.push_back(render_forest(DupForest::from_code(out)));
  });
  std::sort(images.begin(), images.end());
  CHECK(images == std::vector<std::string>{"b(w w)", "w(b)"});

  std::string bad = mterm_code::encode(pm("MM"));
  bad[0] = mterm_code::kMarkedApp;
  std::string out;
  CHECK_THROWS_AS(mterm_code::fr_into(bad, out), ValidationError);
}

TEST_CASE("isomorphism examples") {
  IsoReport r3 = verify_fr_isomorphism(pm("M(M(MM))"));
  CHECK(r3.isomorphic);
  CHECK(r3.method == IsoMethod::marked_fr);
  CHECK(r3.term_count == 6);
  CHECK(r3.forest_count == 6);
  CHECK(r3.covers_compared);
  CHECK(r3.term_covers == 7);
  CHECK(r3.forest_covers == 7);

  IsoReport r0 = verify_fr_isomorphism(pm("M"));
  CHECK(r0.isomorphic);
  CHECK(r0.term_count == 1);
  CHECK(r0.forest_count == 1);

  IsoReport r5 = verify_fr_isomorphism(right_comb(5));
  CHECK(r5.isomorphic);
  CHECK(r5.term_count == 1806);
  CHECK(r5.forest_count == 1806);
  CHECK(r5.term_covers == 8287);

  CHECK_THROWS_AS(verify_fr_isomorphism(right_comb(5), 100), BudgetExceeded);
  CHECK_THROWS_AS(verify_fr_isomorphism(pm("Mx1")), ValidationError);
}

TEST_CASE("isomorphism on every M-combinator of degree at most 5") {
  for (std::uint32_t d = 0; d <= 5; ++d) {
    for (const Term& t : all_trees(d, Term::basic("M"))) {
      IsoReport r = verify_fr_isomorphism(t);
      INFO(render_term(t) << ": " << r.details);
      REQUIRE(r.isomorphic);
      CHECK(r.method == IsoMethod::marked_fr);
      CHECK(r.term_count == r.forest_count);
      CHECK(r.term_covers == r.forest_covers);
    }
  }
}

TEST_CASE("M(d) and the ladder upsets have equal sizes") {
  const std::vector<std::uint64_t> sizes{1, 2, 6, 42, 1806};
  for (std::uint32_t d = 1; d <= 5; ++d) {
    IsoReport r = verify_fr_isomorphism(right_comb(d));
    CHECK(r.term_count == sizes[d - 1]);
    CHECK(r.forest_count == forest_upset(ladder(d - 1)).nodes.size());
  }
}

TEST_CASE("digraph isomorphism") {
  // Random DAG and a relabelled copy.
  for (int round = 0; round < 50; ++round) {
    const std::size_t n = test::uniform(1, 60);
    std::vector<Edge> a;
    for (NodeIndex i = 0; i < n; ++i) {
      for (NodeIndex j = i + 1; j < n; ++j) {
        if (test::uniform(0, 9) == 0) a.emplace_back(i, j);
      }
    }
    std::vector<NodeIndex> p(n);
    std::iota(p.begin(), p.end(), 0);
    std::shuffle(p.begin(), p.end(), test::rng());
    std::vector<Edge> b;
    for (const auto& [x, y] : a) b.emplace_back(p[x], p[y]);
    std::shuffle(b.begin(), b.end(), test::rng());

    auto found = digraph_isomorphism(n, a, n, b);
    REQUIRE(found.has_value());
    std::set<Edge> eb(b.begin(), b.end());
    for (const auto& [x, y] : a) CHECK(eb.contains({(*found)[x], (*found)[y]}));

    if (!a.empty()) {
      std::vector<Edge> c = b;
      c.pop_back();
      CHECK_FALSE(digraph_isomorphism(n, a, n, c).has_value());
    }
  }

  // A directed 6-cycle and two 3-cycles defeat colour refinement.
  const std::vector<Edge> c6{{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}};
  const std::vector<Edge> c33{{0, 1}, {1, 2}, {2, 0}, {3, 4}, {4, 5}, {5, 3}};
  CHECK_FALSE(digraph_isomorphism(6, c6, 6, c33).has_value());
  CHECK(digraph_isomorphism(6, c6, 6, c6).has_value());
  CHECK_FALSE(digraph_isomorphism(3, {}, 4, {}).has_value());
  CHECK(digraph_isomorphism(0, {}, 0, {}).has_value());

  // Twenty disjoint 3-cycles against a 60-cycle needs more than one step.
  std::vector<Edge> many, ring;
  for (NodeIndex i = 0; i < 60; ++i) {
    many.emplace_back(i, i % 3 == 2 ? i - 2 : i + 1);
    ring.emplace_back(i, (i + 1) % 60);
  }
  CHECK_THROWS_AS(digraph_isomorphism(60, many, 60, ring, 5), BudgetExceeded);
}
