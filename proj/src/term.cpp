#include "mbird/term.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <utility>

#include "mbird/error.hpp"

namespace mbird {

namespace {

constexpr std::uint64_t mix(std::uint64_t x) {
  x ^= x >> 30;
  x *= 0xbf58476d1ce4e5b9ULL;
  x ^= x >> 27;
  x *= 0x94d049bb133111ebULL;
  x ^= x >> 31;
  return x;
}

std::uint64_t hash_text(std::string_view s) {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (unsigned char c : s) {
    h ^= c;
    h *= 0x100000001b3ULL;
  }
  return mix(h);
}

bool is_name_char(char c) {
  return std::isalnum(static_cast<unsigned char>(c)) != 0 || c == '_';
}

}  // namespace

Term Term::variable(std::uint32_t index) {
  if (index == 0) throw ValidationError("variable index must be at least 1");
  auto node = std::make_shared<Node>();
  node->kind = TermKind::variable;
  node->var = index;
  node->max_var = index;
  node->label = std::make_shared<const std::string>("x" + std::to_string(index));
  node->hash = mix(0x9e3779b97f4a7c15ULL + index);
  return Term(std::move(node));
}

Term Term::basic(std::string_view name) {
  if (name.empty() || !std::isupper(static_cast<unsigned char>(name.front())) ||
      !std::all_of(name.begin(), name.end(), is_name_char)) {
    throw ValidationError("invalid combinator name '" + std::string(name) + "'");
  }
  auto node = std::make_shared<Node>();
  node->kind = TermKind::basic;
  node->has_basic = true;
  node->label = std::make_shared<const std::string>(name);
  node->hash = hash_text(name);
  return Term(std::move(node));
}

Term Term::apply(Term left, Term right) {
  auto node = std::make_shared<Node>();
  node->kind = TermKind::application;
  node->degree = 1 + left.degree() + right.degree();
  node->height = 1 + std::max(left.height(), right.height());
  node->max_var = std::max(left.max_variable(), right.max_variable());
  node->has_basic = left.has_basic() || right.has_basic();
  node->hash = mix(left.hash() * 31 + mix(right.hash() ^ 0x5851f42d4c957f2dULL));
  node->left = std::move(left);
  node->right = std::move(right);
  return Term(std::move(node));
}

bool operator==(const Term& a, const Term& b) {
  if (a.node_ == b.node_) return true;
  if (a.hash() != b.hash() || a.kind() != b.kind() || a.degree() != b.degree()) return false;
  switch (a.kind()) {
    case TermKind::variable:
      return a.variable_index() == b.variable_index();
    case TermKind::basic:
      return a.label() == b.label();
    case TermKind::application:
      return a.left() == b.left() && a.right() == b.right();
  }
  return false;
}

TermMetrics term_metrics(const Term& t) { return {t.degree(), t.height()}; }

// ---------------------------------------------------------------------------
// Parsing

void validate_alphabet(const Alphabet& alphabet) {
  for (const auto& name : alphabet) {
    if (name.empty() || !std::isupper(static_cast<unsigned char>(name.front())) ||
        !std::all_of(name.begin(), name.end(), is_name_char)) {
      throw ParseError(ParseError::Kind::bad_alphabet, 0,
                       "invalid combinator name '" + name + "'");
    }
  }
  // In a sorted set a proper prefix sorts immediately before some name it
  // prefixes, so checking neighbours suffices.
  for (auto it = alphabet.begin(); it != alphabet.end(); ++it) {
    auto next = std::next(it);
    if (next != alphabet.end() && next->starts_with(*it)) {
      throw ParseError(ParseError::Kind::bad_alphabet, 0,
                       "combinator name '" + *it + "' is a prefix of '" + *next + "'");
    }
  }
}

namespace {

class TermParser {
 public:
  TermParser(std::string_view text, const Alphabet& alphabet)
      : text_(text), alphabet_(alphabet) {}

  Term parse() {
    skip_space();
    Term t = parse_sequence();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character '" + std::string(1, text_[pos_]) + "'");
    return t;
  }

 private:
  [[noreturn]] void fail(const std::string& message,
                         ParseError::Kind kind = ParseError::Kind::syntax) const {
    throw ParseError(kind, pos_, message);
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool at_atom_start() const {
    if (pos_ >= text_.size()) return false;
    char c = text_[pos_];
    return c == '(' || c == 'x' || std::isupper(static_cast<unsigned char>(c));
  }

  Term parse_sequence() {
    if (!at_atom_start()) {
      fail(pos_ < text_.size() ? "expected a term" : "unexpected end of input");
    }
    Term acc = parse_atom();
    for (skip_space(); at_atom_start(); skip_space()) {
      acc = Term::apply(std::move(acc), parse_atom());
    }
    return acc;
  }

  Term parse_atom() {
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      skip_space();
      Term inner = parse_sequence();
      skip_space();
      if (pos_ >= text_.size() || text_[pos_] != ')') fail("expected ')'");
      ++pos_;
      return inner;
    }
    if (c == 'x') {
      std::size_t start = ++pos_;
      while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
      if (start == pos_) fail("expected digits after 'x'");
      std::uint32_t index = 0;
      auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, index);
      if (ec != std::errc()) {
        pos_ = start;
        fail("variable index out of range");
      }
      if (index == 0) {
        pos_ = start;
        fail("variable index must be at least 1", ParseError::Kind::zero_variable);
      }
      return Term::variable(index);
    }
    // Longest alphabet name that is a prefix of the remaining input. The
    // alphabet is prefix-free, so at most one name can match.
    std::string_view rest = text_.substr(pos_);
    for (std::size_t len = 1; len <= rest.size() && is_name_char(rest[len - 1]); ++len) {
      auto it = alphabet_.find(rest.substr(0, len));
      if (it != alphabet_.end()) {
        pos_ += len;
        return Term::basic(*it);
      }
    }
    std::size_t len = 1;
    while (len < rest.size() && is_name_char(rest[len])) ++len;
    fail("unknown combinator '" + std::string(rest.substr(0, len)) + "'",
         ParseError::Kind::unknown_combinator);
  }

  std::string_view text_;
  const Alphabet& alphabet_;
  std::size_t pos_ = 0;
};

}  // namespace

Term parse_term(std::string_view text, const Alphabet& alphabet) {
  validate_alphabet(alphabet);
  return TermParser(text, alphabet).parse();
}

// ---------------------------------------------------------------------------
// Rendering

namespace {

void render_full(const Term& t, std::string& out) {
  if (!t.is_application()) {
    out += t.label();
    return;
  }
  out += '(';
  render_full(t.left(), out);
  out += ' ';
  render_full(t.right(), out);
  out += ')';
}

void render_concise(const Term& t, std::string& out) {
  if (!t.is_application()) {
    out += t.label();
    return;
  }
  render_concise(t.left(), out);
  if (t.right().is_application()) {
    out += '(';
    render_concise(t.right(), out);
    out += ')';
  } else {
    out += t.right().label();
  }
}

// Emits the characters of a full rendering one at a time.
class FullRenderCursor {
 public:
  explicit FullRenderCursor(const Term& t) { stack_.push_back(Frame{&t, {}}); }

  bool done() const { return stack_.empty(); }

  // When the next output is a whole subterm, returns it.
  const Term* pending_term() const {
    return stack_.empty() ? nullptr : stack_.back().term;
  }

  void skip_term() { stack_.pop_back(); }

  char next() {
    for (;;) {
      Frame& top = stack_.back();
      if (top.term == nullptr) {
        char c = top.text.front();
        top.text.remove_prefix(1);
        if (top.text.empty()) stack_.pop_back();
        return c;
      }
      const Term* t = top.term;
      stack_.pop_back();
      if (t->is_application()) {
        stack_.push_back(Frame{nullptr, ")"});
        stack_.push_back(Frame{&t->right(), {}});
        stack_.push_back(Frame{nullptr, " "});
        stack_.push_back(Frame{&t->left(), {}});
        return '(';
      }
      std::string_view label = t->label();
      if (label.size() > 1) stack_.push_back(Frame{nullptr, label.substr(1)});
      return label.front();
    }
  }

 private:
  struct Frame {
    const Term* term;
    std::string_view text;
  };
  std::vector<Frame> stack_;
};

}  // namespace

std::string render_term(const Term& t, RenderStyle style) {
  std::string out;
  if (style == RenderStyle::full) {
    render_full(t, out);
  } else {
    render_concise(t, out);
  }
  return out;
}

std::strong_ordering compare_full_render(const Term& a, const Term& b) {
  FullRenderCursor ca(a);
  FullRenderCursor cb(b);
  for (;;) {
    // Identical shared subterms render identically; skip them wholesale.
    const Term* ta = ca.pending_term();
    const Term* tb = cb.pending_term();
    if (ta != nullptr && tb != nullptr && ta->id() == tb->id()) {
      ca.skip_term();
      cb.skip_term();
      continue;
    }
    if (ca.done() || cb.done()) {
      if (ca.done() && cb.done()) return std::strong_ordering::equal;
      return ca.done() ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    char x = ca.next();
    char y = cb.next();
    if (x != y) return x < y ? std::strong_ordering::less : std::strong_ordering::greater;
  }
}

// ---------------------------------------------------------------------------
// Substitution and matching

Term compose(const Term& t, std::span<const Term> args) {
  if (args.empty() || t.max_variable() == 0) return t;
  switch (t.kind()) {
    case TermKind::variable:
      return t.variable_index() <= args.size() ? args[t.variable_index() - 1] : t;
    case TermKind::basic:
      return t;
    case TermKind::application: {
      Term l = compose(t.left(), args);
      Term r = compose(t.right(), args);
      if (l.id() == t.left().id() && r.id() == t.right().id()) return t;
      return Term::apply(std::move(l), std::move(r));
    }
  }
  return t;
}

bool match_term(const Term& pattern, const Term& subject, Substitution& bindings) {
  switch (pattern.kind()) {
    case TermKind::variable: {
      auto [it, inserted] = bindings.try_emplace(pattern.variable_index(), subject);
      return inserted || it->second == subject;
    }
    case TermKind::basic:
      return subject.is_basic() && subject.label() == pattern.label();
    case TermKind::application:
      return subject.is_application() && pattern.degree() <= subject.degree() &&
             match_term(pattern.left(), subject.left(), bindings) &&
             match_term(pattern.right(), subject.right(), bindings);
  }
  return false;
}

namespace {

bool find_factor_rec(const Term& t, const Term& pattern, std::string& path,
                     FactorWitness& out) {
  if (t.degree() >= pattern.degree()) {
    Substitution bindings;
    if (match_term(pattern, t, bindings)) {
      out.path = path;
      out.bindings = std::move(bindings);
      return true;
    }
  }
  if (!t.is_application() || t.degree() < pattern.degree()) return false;
  path.push_back('l');
  if (find_factor_rec(t.left(), pattern, path, out)) return true;
  path.back() = 'r';
  if (find_factor_rec(t.right(), pattern, path, out)) return true;
  path.pop_back();
  return false;
}

}  // namespace

std::optional<FactorWitness> find_factor(const Term& t, const Term& pattern) {
  std::string path;
  FactorWitness witness;
  if (find_factor_rec(t, pattern, path, witness)) return witness;
  return std::nullopt;
}

Term subterm_at(const Term& t, std::string_view path) {
  const Term* cur = &t;
  for (char step : path) {
    if (!cur->is_application()) throw ValidationError("path leaves the term");
    cur = step == 'l' ? &cur->left() : &cur->right();
  }
  return *cur;
}

Term replace_at(const Term& t, std::string_view path, const Term& replacement) {
  if (path.empty()) return replacement;
  if (!t.is_application()) throw ValidationError("path leaves the term");
  if (path.front() == 'l') {
    return Term::apply(replace_at(t.left(), path.substr(1), replacement), t.right());
  }
  return Term::apply(t.left(), replace_at(t.right(), path.substr(1), replacement));
}

// ---------------------------------------------------------------------------
// Enumeration of shapes

std::vector<Term> all_trees(std::uint32_t degree, const Term& leaf) {
  std::vector<std::vector<Term>> by_degree(degree + 1);
  by_degree[0].push_back(leaf);
  for (std::uint32_t d = 1; d <= degree; ++d) {
    for (std::uint32_t left = 0; left < d; ++left) {
      for (const Term& l : by_degree[left]) {
        for (const Term& r : by_degree[d - 1 - left]) by_degree[d].push_back(Term::apply(l, r));
      }
    }
  }
  return std::move(by_degree[degree]);
}

std::vector<Term> all_trees_of_height(std::uint32_t height, const Term& leaf) {
  // exact[h]: trees of height exactly h; below[h]: trees of height < h.
  std::vector<Term> below;
  std::vector<Term> exact{leaf};
  for (std::uint32_t h = 1; h <= height; ++h) {
    std::vector<Term> next;
    std::vector<Term> at_most = below;
    at_most.insert(at_most.end(), exact.begin(), exact.end());
    for (const Term& l : exact) {
      for (const Term& r : at_most) next.push_back(Term::apply(l, r));
    }
    for (const Term& l : below) {
      for (const Term& r : exact) next.push_back(Term::apply(l, r));
    }
    below = std::move(at_most);
    exact = std::move(next);
  }
  return exact;
}

}  // namespace mbird
