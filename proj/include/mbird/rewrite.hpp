#pragma once

// Combinatory logic systems: one rewrite rule `C x1 ... xn -> t_C` per basic
// combinator, applied anywhere inside a term (context closure).

#include <cstddef>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "mbird/poset.hpp"
#include "mbird/term.hpp"

namespace mbird {

struct Rule {
  std::string name;
  std::uint32_t order = 1;
  Term rhs;
};

class CLSystem {
 public:
  /// Validates and adds a rule: order >= 1, rhs free of basic combinators,
  /// variables in rhs at most `order`, name not yet defined, alphabet stays
  /// prefix-free.
  void add_rule(std::string name, std::uint32_t order, Term rhs);

  const Rule* find(std::string_view name) const;
  /// Rules sorted by name.
  std::vector<const Rule*> rules() const;
  Alphabet alphabet() const;
  bool empty() const { return rules_.empty(); }

  /// Rules whose rhs omits one of x1..xn. Their inverse steps are not
  /// finitely enumerable.
  std::vector<std::string> erasing_rules() const;

 private:
  std::map<std::string, Rule, std::less<>> rules_;
};

/// Parses a system description. `builtin:M`, `builtin:I`, `builtin:K`,
/// `builtin:S` and `builtin:KS` name the built-in systems; anything else is
/// a list of lines `NAME ORDER := RHS` with `#` comments.
CLSystem load_system(std::string_view text);

CLSystem builtin_system(std::string_view name);

/// Terms reachable in exactly one step, duplicate-free, sorted by full
/// rendering. Includes `t` itself when some redex rewrites to itself.
std::vector<Term> step_successors(const CLSystem& sys, const Term& t);

/// Terms s with s => t, duplicate-free, sorted by full rendering. Erasing
/// rules contribute nothing (see CLSystem::erasing_rules).
std::vector<Term> step_predecessors(const CLSystem& sys, const Term& t);

enum class Direction { up, equivalence_class };

Direction parse_direction(std::string_view text);

struct ExploreOptions {
  std::size_t budget = kDefaultBudget;
};

/// Breadth-first closure from `t`. `up` follows successors only; the
/// class direction follows successors and predecessors. When the budget is
/// hit the partial graph is returned with is_complete = false. Class
/// exploration of a system with erasing rules is never complete.
ExploredPoset<Term> explore_component(const CLSystem& sys, const Term& t, Direction direction,
                                      ExploreOptions options = {});

/// Whether each combinator is hierarchical: every x_i (i <= n) occurs in
/// t_C, and only at depth n + 1 - i.
std::map<std::string, bool> is_hierarchical(const CLSystem& sys);

struct ConfluenceReport {
  enum class Verdict { all_joinable, failure, inconclusive };
  Verdict verdict = Verdict::all_joinable;
  std::size_t pairs_checked = 0;
  std::size_t pairs_joined = 0;
  /// Common upper bound for each joined pair, in pair order.
  std::vector<Term> joins;
  /// The first pair that could not be joined, if any.
  std::optional<std::pair<Term, Term>> first_unjoined;
};

/// For every pair of distinct successors of `t`, searches forward from
/// both (alternating breadth-first layers) for a common upper bound. A pair
/// fails only if both forward closures are exhausted without meeting; the
/// search is inconclusive if join_budget nodes are visited first.
ConfluenceReport local_confluence_probe(const CLSystem& sys, const Term& t,
                                        std::size_t join_budget = 100000);

struct Extremality {
  bool maximal = false;
  bool minimal = false;
  friend bool operator==(const Extremality&, const Extremality&) = default;
};

/// Extremality of a combinator over M from the avoided patterns M(x1 x2)
/// and (x1 x2)(x1 x2). Throws ValidationError on variables or combinators
/// other than M.
Extremality extremal_by_pattern(const Term& t);

/// Extremality from the rewrite graph: maximal iff every successor is t,
/// minimal iff every predecessor is t.
Extremality extremal_by_steps(const CLSystem& sys, const Term& t);

/// Leftmost-outermost rewrite sequence starting at `t`, skipping redexes
/// that rewrite to the same term. Stops at a term whose only steps are
/// self-loops or after `max_steps` steps. The first element is `t`.
std::vector<Term> reduce_chain(const CLSystem& sys, const Term& t, std::size_t max_steps);

}  // namespace mbird
