#pragma once

// Duplicative forests: ordered forests of planar rooted trees whose nodes
// are white or black. A forest is stored as its preorder node sequence, one
// byte per node: bit 7 is set for black nodes and the low 7 bits hold the
// number of children. Descendants of a node are therefore contiguous, and
// the duplication step is a splice.

#include <compare>
#include <cstddef>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "mbird/poset.hpp"

namespace mbird {

class DupForest {
 public:
  static constexpr std::uint8_t kBlackBit = 0x80;
  static constexpr std::uint8_t kMaxChildren = 0x7f;

  DupForest() = default;
  /// Throws ValidationError unless `code` is a well-formed node sequence.
  static DupForest from_code(std::string code);

  const std::string& code() const noexcept { return code_; }
  bool empty() const noexcept { return code_.empty(); }
  std::size_t node_count() const noexcept { return code_.size(); }
  std::size_t tree_count() const noexcept;
  std::size_t black_count() const noexcept;

  /// A single tree with the given root color and children.
  static DupForest tree(bool black, const DupForest& children);
  /// Concatenation f ⊔ g.
  friend DupForest operator+(const DupForest& f, const DupForest& g);

  friend bool operator==(const DupForest&, const DupForest&) = default;

 private:
  explicit DupForest(std::string code) : code_(std::move(code)) {}
  std::string code_;
};

struct DupForestHash {
  std::size_t operator()(const DupForest& f) const noexcept {
    return std::hash<std::string>{}(f.code());
  }
};

/// `forest := tree*` separated by optional whitespace, `tree := (w|b)
/// ('(' forest ')')?`. The empty string is the empty forest. Throws
/// ParseError(syntax).
DupForest parse_forest(std::string_view text);

/// Inverse of parse_forest: trees separated by one space, children in
/// parentheses only when present.
std::string render_forest(const DupForest& f);

/// Orders forests by their rendered text.
struct RenderedLess {
  bool operator()(const DupForest& a, const DupForest& b) const {
    return render_forest(a) < render_forest(b);
  }
};

/// The chain of d white nodes.
DupForest ladder(std::uint32_t d);

/// Number of nodes on a longest root-to-leaf path; 0 for the empty forest.
std::uint32_t forest_height(const DupForest& f);

/// Calls `emit(code)` once per white node with the code of the forest in
/// which that node is black and its children are duplicated. Results come
/// in preorder of the rewritten node and may repeat. Throws
/// ValidationError if a doubled child count would exceed kMaxChildren.
template <class Emit>
void for_each_duplication(std::string_view code, std::string& scratch, Emit&& emit);

/// Distinct one-step successors, sorted by rendered text.
std::vector<DupForest> forest_step_successors(const DupForest& f);

/// Breadth-first closure of the duplication step from `f`.
ExploredPoset<DupForest> forest_upset(const DupForest& f, std::size_t budget = kDefaultBudget);

/// Recursive greatest lower bound within a common upset. Throws
/// IncompatibleError on structural mismatch.
DupForest meet(const DupForest& a, const DupForest& b);
/// Recursive least upper bound within a common upset. Throws
/// IncompatibleError on structural mismatch.
DupForest join(const DupForest& a, const DupForest& b);

/// Order test inside a common upset: a <= b iff meet(a, b) == a.
bool forest_leq(const DupForest& a, const DupForest& b);

namespace forest_code {

inline bool is_black(std::uint8_t node) { return (node & DupForest::kBlackBit) != 0; }
inline std::uint8_t children(std::uint8_t node) { return node & DupForest::kMaxChildren; }

/// One past the last node of the subtree rooted at `pos`.
inline std::size_t subtree_end(std::string_view code, std::size_t pos) {
  std::size_t open = 1;
  while (open > 0) {
    open += children(static_cast<std::uint8_t>(code[pos]));
    --open;
    ++pos;
  }
  return pos;
}

/// Appends the code of the meet (join) of two forest codes to `out`.
void meet_into(std::string_view a, std::string_view b, std::string& out);
void join_into(std::string_view a, std::string_view b, std::string& out);

}  // namespace forest_code

template <class Emit>
void for_each_duplication(std::string_view code, std::string& scratch, Emit&& emit) {
  for (std::size_t pos = 0; pos < code.size(); ++pos) {
    const auto node = static_cast<std::uint8_t>(code[pos]);
    if (forest_code::is_black(node)) continue;
    const std::size_t kids = forest_code::children(node);
    if (2 * kids > DupForest::kMaxChildren) {
      throw ValidationError("duplication would give a node more than 127 children");
    }
    const std::size_t end = forest_code::subtree_end(code, pos);
    const std::string_view below = code.substr(pos + 1, end - pos - 1);
    scratch.assign(code.substr(0, pos));
    scratch.push_back(static_cast<char>(DupForest::kBlackBit | (2 * kids)));
    scratch.append(below);
    scratch.append(below);
    scratch.append(code.substr(end));
    emit(std::string_view(scratch));
  }
}

}  // namespace mbird
