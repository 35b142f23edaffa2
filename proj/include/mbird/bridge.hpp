#pragma once

// Translation of M-terms into white duplicative forests and verification
// that it carries the rewrite order of a term onto the duplication order of
// its image.

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "mbird/forest.hpp"
#include "mbird/poset.hpp"
#include "mbird/term.hpp"

namespace mbird {

/// fr(x_i) = fr(M) = fr(MM) = ε, fr(M x_i) = ○, fr(M(t t′)) = ○(fr(t t′)),
/// fr(x_i t) = fr(t), fr((t t′) t″) = fr(t t′) ⊔ fr(t″). Throws
/// ValidationError on combinators other than M.
DupForest fr_map(const Term& t);

/// r_0 = M, r_d = M r_{d-1}.
Term right_comb(std::uint32_t d);

/// Compact form of variable-free M-terms for large explorations: the
/// preorder node sequence with 0 for M, 1 for an application and 2 for a
/// marked application. A step M s -> s s marks the new application; marks
/// never change which subterms are redexes, since the left child of a
/// marked application is never M.
namespace mterm_code {

inline constexpr char kM = 0;
inline constexpr char kApp = 1;
inline constexpr char kMarkedApp = 2;

/// Unmarked code of `t`.
std::string encode(const Term& t);
/// Marks are dropped.
Term decode(std::string_view code);

/// One bit per node, low bit first, marks dropped; the code is
/// self-delimiting so padding is harmless. Two codes of the same term pack
/// identically.
std::string pack(std::string_view code);
void unpack(std::string_view packed, std::string& code);
/// Two bits per node, marks kept.
std::string pack_marked(std::string_view code);
void unpack_marked(std::string_view packed, std::string& code);

/// Appends a forest code to `out`: fr on unmarked codes, extended by
/// sending a marked application (u u′) to ●(fr(u u′)). Throws
/// ValidationError on a marked application whose left child is M.
void fr_into(std::string_view code, std::string& out);

/// Calls `emit(code)` for each redex M s of `code` with the code of the
/// term obtained by rewriting it to the marked application s s. Self-loops
/// (s = M) are skipped.
template <class Emit>
void for_each_step(std::string_view code, std::string& scratch, Emit&& emit);

/// One past the last node of the subterm starting at `pos`.
inline std::size_t subterm_end(std::string_view code, std::size_t pos) {
  std::size_t open = 1;
  while (open > 0) {
    if (code[pos++] != kM) {
      ++open;
    } else {
      --open;
    }
  }
  return pos;
}

template <class Emit>
void for_each_step(std::string_view code, std::string& scratch, Emit&& emit) {
  for (std::size_t pos = 0; pos + 1 < code.size(); ++pos) {
    if (code[pos] == kM || code[pos + 1] != kM) continue;
    const std::size_t arg = pos + 2;
    if (code[arg] == kM) continue;
    const std::size_t end = subterm_end(code, arg);
    const std::string_view s = code.substr(arg, end - arg);
    scratch.assign(code.substr(0, pos));
    scratch.push_back(kMarkedApp);
    scratch.append(s);
    scratch.append(s);
    scratch.append(code.substr(end));
    emit(std::string_view(scratch));
  }
}

}  // namespace mterm_code

/// marked_fr: fr extended to marked terms is a bijection carrying steps
/// onto duplications. hasse_isomorphism: found by graph search instead.
enum class IsoMethod { marked_fr, hasse_isomorphism, none };

struct IsoReport {
  std::uint64_t term_count = 0;
  std::uint64_t forest_count = 0;
  /// Every term of the upset is reached with a single marking.
  bool marks_consistent = false;
  /// Distinct terms have distinct images.
  bool image_injective = false;
  /// For every term u, the image sends the proper successors of u onto the
  /// duplication successors of the image of u.
  bool steps_correspond = false;
  bool cover_preserving = false;
  /// Covers were computed on both sides and compared edge by edge. Above
  /// kMaxAnalyzedNodes they follow from steps_correspond instead.
  bool covers_compared = false;
  std::optional<std::uint64_t> term_covers;
  std::optional<std::uint64_t> forest_covers;
  IsoMethod method = IsoMethod::none;
  bool isomorphic = false;
  std::string details;
};

std::string_view iso_method_name(IsoMethod m);

/// Explores the upset of `t` and D*(fr(t)) and checks that fr, extended to
/// the marked terms reached from `t`, is an isomorphism. Otherwise searches
/// for an isomorphism of the two Hasse diagrams when both have at most
/// kMaxAnalyzedNodes elements. Throws ValidationError unless `t` is an
/// M-combinator and BudgetExceeded if either side has more than `budget`
/// elements.
IsoReport verify_fr_isomorphism(const Term& t, std::size_t budget = kDefaultBudget);

/// A bijection p with (a, b) in edges_a iff (p[a], p[b]) in edges_b, found
/// by colour refinement and backtracking; nullopt if none exists. Throws
/// BudgetExceeded after `search_budget` backtracking steps.
std::optional<std::vector<NodeIndex>> digraph_isomorphism(std::size_t n_a, std::span<const Edge> edges_a,
                                                          std::size_t n_b, std::span<const Edge> edges_b,
                                                          std::uint64_t search_budget = 10'000'000);

}  // namespace mbird
