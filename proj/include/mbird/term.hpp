#pragma once

// Terms of combinatory logic: binary application trees whose leaves are
// basic combinators or variables x1, x2, ...
//
// A Term is an immutable handle on a shared node. Copies are cheap and
// subterms are shared between a term and everything rewritten from it.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace mbird {

enum class TermKind : std::uint8_t { variable, basic, application };

/// Set of combinator names a parser accepts. Must be prefix-free so that
/// juxtaposed names tokenize uniquely.
using Alphabet = std::set<std::string, std::less<>>;

class Term {
 public:
  /// Leaf `x<index>`; index must be at least 1.
  static Term variable(std::uint32_t index);
  /// Leaf naming a basic combinator.
  static Term basic(std::string_view name);
  static Term apply(Term left, Term right);

  TermKind kind() const noexcept;
  bool is_variable() const noexcept { return kind() == TermKind::variable; }
  bool is_basic() const noexcept { return kind() == TermKind::basic; }
  bool is_application() const noexcept { return kind() == TermKind::application; }

  std::uint32_t variable_index() const noexcept;
  /// Leaf text: the combinator name or `x<index>`. Empty for applications.
  std::string_view label() const noexcept;
  const Term& left() const noexcept;
  const Term& right() const noexcept;

  std::uint64_t hash() const noexcept;
  /// Number of application nodes.
  std::uint32_t degree() const noexcept;
  /// Maximal number of application ancestors of a leaf.
  std::uint32_t height() const noexcept;
  /// Largest variable index occurring in the term, 0 if none.
  std::uint32_t max_variable() const noexcept;
  /// True when some leaf is a basic combinator.
  bool has_basic() const noexcept;

  /// Identity of the underlying node; equal ids imply equal terms.
  const void* id() const noexcept { return node_.get(); }

  friend bool operator==(const Term& a, const Term& b);

 private:
  struct Node;

  Term() = default;
  explicit Term(std::shared_ptr<const Node> node) : node_(std::move(node)) {}

  std::shared_ptr<const Node> node_;

};

struct Term::Node {
  std::uint64_t hash = 0;
  std::uint32_t degree = 0;
  std::uint32_t height = 0;
  std::uint32_t var = 0;
  std::uint32_t max_var = 0;
  TermKind kind = TermKind::basic;
  bool has_basic = false;
  Term left;
  Term right;
  std::shared_ptr<const std::string> label;
};

inline TermKind Term::kind() const noexcept { return node_->kind; }
inline std::uint32_t Term::variable_index() const noexcept { return node_->var; }
inline std::string_view Term::label() const noexcept {
  return node_->label ? std::string_view(*node_->label) : std::string_view();
}
inline const Term& Term::left() const noexcept { return node_->left; }
inline const Term& Term::right() const noexcept { return node_->right; }
inline std::uint64_t Term::hash() const noexcept { return node_->hash; }
inline std::uint32_t Term::degree() const noexcept { return node_->degree; }
inline std::uint32_t Term::height() const noexcept { return node_->height; }
inline std::uint32_t Term::max_variable() const noexcept { return node_->max_var; }
inline bool Term::has_basic() const noexcept { return node_->has_basic; }

struct TermHash {
  std::size_t operator()(const Term& t) const noexcept {
    return static_cast<std::size_t>(t.hash());
  }
};

struct TermMetrics {
  std::uint32_t degree = 0;
  std::uint32_t height = 0;
  friend bool operator==(const TermMetrics&, const TermMetrics&) = default;
};

TermMetrics term_metrics(const Term& t);

/// Parses `term := atom+` (left-associative), `atom := NAME | x DIGITS |
/// ( term )`. Whitespace between tokens is ignored. Names are matched
/// greedily against `alphabet`. Throws ParseError.
Term parse_term(std::string_view text, const Alphabet& alphabet);

/// Throws ParseError(bad_alphabet) unless every name is a valid identifier
/// and no name is a proper prefix of another.
void validate_alphabet(const Alphabet& alphabet);

enum class RenderStyle { concise, full };

/// Concise style drops the parentheses implied by left associativity;
/// full style parenthesizes every application as `(L R)`.
std::string render_term(const Term& t, RenderStyle style = RenderStyle::concise);

/// Three-way comparison of the full-style renderings of two terms,
/// without materializing either string.
std::strong_ordering compare_full_render(const Term& a, const Term& b);

struct FullRenderLess {
  bool operator()(const Term& a, const Term& b) const {
    return compare_full_render(a, b) < 0;
  }
};

/// Simultaneous substitution of args[i-1] for x_i; variables beyond
/// args.size() are kept.
Term compose(const Term& t, std::span<const Term> args);

/// Pattern-variable assignment produced by a successful match.
using Substitution = std::map<std::uint32_t, Term>;

/// Matches `pattern` against the whole of `subject`. Repeated pattern
/// variables must bind equal subterms. Extends `bindings` on success;
/// leaves it in an unspecified state on failure.
bool match_term(const Term& pattern, const Term& subject, Substitution& bindings);

struct FactorWitness {
  /// Path from the root to the matched subterm, one of 'l'/'r' per step.
  std::string path;
  Substitution bindings;
};

/// First subterm of `t` in pre-order matching `pattern`, if any.
std::optional<FactorWitness> find_factor(const Term& t, const Term& pattern);

inline bool contains_factor(const Term& t, const Term& pattern) {
  return find_factor(t, pattern).has_value();
}

/// Subterm of `t` at a path produced by find_factor.
Term subterm_at(const Term& t, std::string_view path);

/// Copy of `t` with the subterm at `path` replaced by `replacement`.
Term replace_at(const Term& t, std::string_view path, const Term& replacement);

/// All binary trees with `degree` application nodes and every leaf equal
/// to `leaf`, in a fixed deterministic order (Catalan(degree) terms).
std::vector<Term> all_trees(std::uint32_t degree, const Term& leaf);

/// All binary trees of height exactly `height` over a single leaf.
std::vector<Term> all_trees_of_height(std::uint32_t height, const Term& leaf);

}  // namespace mbird

template <>
struct std::hash<mbird::Term> {
  std::size_t operator()(const mbird::Term& t) const noexcept {
    return static_cast<std::size_t>(t.hash());
  }
};
