#include "mbird/forest.hpp"

#include <algorithm>
#include <cctype>
#include <unordered_map>

#include "mbird/error.hpp"

namespace mbird {

namespace fc = forest_code;

namespace {

std::size_t count_trees(std::string_view code) {
  std::size_t trees = 0;
  for (std::size_t pos = 0; pos < code.size(); pos = fc::subtree_end(code, pos)) ++trees;
  return trees;
}

char header(bool black, std::size_t children) {
  if (children > DupForest::kMaxChildren) {
    throw ValidationError("a node may have at most 127 children");
  }
  return static_cast<char>((black ? DupForest::kBlackBit : 0) | children);
}

}  // namespace

DupForest DupForest::from_code(std::string code) {
  // Every node opens `children` slots and fills one.
  std::size_t open = 0;
  for (char c : code) {
    if (open == 0) open = 1;
    open += fc::children(static_cast<std::uint8_t>(c));
    --open;
  }
  if (open != 0) throw ValidationError("truncated forest code");
  return DupForest(std::move(code));
}

std::size_t DupForest::tree_count() const noexcept { return count_trees(code_); }

std::size_t DupForest::black_count() const noexcept {
  return static_cast<std::size_t>(std::count_if(code_.begin(), code_.end(), [](char c) {
    return fc::is_black(static_cast<std::uint8_t>(c));
  }));
}

DupForest DupForest::tree(bool black, const DupForest& children) {
  std::string code(1, header(black, children.tree_count()));
  code += children.code_;
  return DupForest(std::move(code));
}

DupForest operator+(const DupForest& f, const DupForest& g) { return DupForest(f.code_ + g.code_); }

// ---------------------------------------------------------------------------
// Text form

namespace {

class ForestParser {
 public:
  explicit ForestParser(std::string_view text) : text_(text) {}

  std::string parse() {
    std::string code = forest();
    skip_space();
    if (pos_ != text_.size()) fail("unexpected character");
    return code;
  }

 private:
  std::string forest() {
    std::string code;
    for (;;) {
      skip_space();
      if (pos_ == text_.size() || (text_[pos_] != 'w' && text_[pos_] != 'b')) return code;
      tree(code);
    }
  }

  void tree(std::string& code) {
    const bool black = text_[pos_++] == 'b';
    std::size_t at = code.size();
    code.push_back(0);
    if (pos_ < text_.size() && text_[pos_] == '(') {
      ++pos_;
      std::string kids = forest();
      skip_space();
      if (pos_ == text_.size() || text_[pos_] != ')') fail("expected ')'");
      if (kids.empty()) fail("empty child list");
      ++pos_;
      std::size_t n = count_trees(kids);
      if (n > DupForest::kMaxChildren) fail("more than 127 children");
      code += kids;
      code[at] = header(black, n);
    } else {
      code[at] = header(black, 0);
    }
  }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  [[noreturn]] void fail(const char* what) const {
    throw ParseError(ParseError::Kind::syntax, pos_, what);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

void render_range(std::string_view code, std::size_t& pos, std::size_t trees, std::string& out) {
  for (std::size_t i = 0; i < trees; ++i) {
    if (i > 0) out.push_back(' ');
    const auto node = static_cast<std::uint8_t>(code[pos++]);
    out.push_back(fc::is_black(node) ? 'b' : 'w');
    if (fc::children(node) > 0) {
      out.push_back('(');
      render_range(code, pos, fc::children(node), out);
      out.push_back(')');
    }
  }
}

}  // namespace

DupForest parse_forest(std::string_view text) {
  return DupForest::from_code(ForestParser(text).parse());
}

std::string render_forest(const DupForest& f) {
  std::string out;
  std::size_t pos = 0;
  render_range(f.code(), pos, f.tree_count(), out);
  return out;
}

DupForest ladder(std::uint32_t d) {
  std::string code(d, '\x01');
  if (d > 0) code.back() = '\0';
  return DupForest::from_code(std::move(code));
}

std::uint32_t forest_height(const DupForest& f) {
  std::uint32_t best = 0;
  std::vector<std::pair<std::uint32_t, std::size_t>> stack;  // (depth, children not yet seen)
  for (char c : f.code()) {
    while (!stack.empty() && stack.back().second == 0) stack.pop_back();
    std::uint32_t depth = stack.empty() ? 1 : stack.back().first + 1;
    if (!stack.empty()) --stack.back().second;
    best = std::max(best, depth);
    stack.emplace_back(depth, fc::children(static_cast<std::uint8_t>(c)));
  }
  return best;
}

// ---------------------------------------------------------------------------
// Duplication

std::vector<DupForest> forest_step_successors(const DupForest& f) {
  std::vector<std::string> codes;
  std::string scratch;
  for_each_duplication(f.code(), scratch, [&codes](std::string_view c) { codes.emplace_back(c); });
  std::sort(codes.begin(), codes.end());
  codes.erase(std::unique(codes.begin(), codes.end()), codes.end());
  std::vector<DupForest> out;
  out.reserve(codes.size());
  for (auto& c : codes) out.push_back(DupForest::from_code(std::move(c)));
  std::sort(out.begin(), out.end(), RenderedLess{});
  return out;
}

ExploredPoset<DupForest> forest_upset(const DupForest& f, std::size_t budget) {
  if (budget == 0) throw ValidationError("budget must be at least 1");
  ExploredPoset<DupForest> g;
  std::unordered_map<std::string, NodeIndex> index;
  g.nodes.push_back(f);
  index.emplace(f.code(), 0);
  bool complete = true;
  for (std::size_t cur = 0; cur < g.nodes.size(); ++cur) {
    const auto from = static_cast<NodeIndex>(cur);
    for (DupForest& s : forest_step_successors(g.nodes[cur])) {
      auto it = index.find(s.code());
      if (it == index.end()) {
        if (g.nodes.size() >= budget) {
          complete = false;
          continue;
        }
        it = index.emplace(s.code(), static_cast<NodeIndex>(g.nodes.size())).first;
        g.nodes.push_back(std::move(s));
      }
      g.step_edges.emplace_back(from, it->second);
    }
  }
  std::sort(g.step_edges.begin(), g.step_edges.end());
  g.flags.is_complete = complete;
  return g;
}

// ---------------------------------------------------------------------------
// Lattice operations

namespace {

// Children of a black node, split into the two halves made by duplication.
std::pair<std::string_view, std::string_view> halves(std::string_view tree) {
  const std::size_t n = fc::children(static_cast<std::uint8_t>(tree[0]));
  if (n % 2 != 0) throw IncompatibleError("black node with an odd number of children");
  std::string_view kids = tree.substr(1);
  std::size_t pos = 0;
  for (std::size_t i = 0; i < n / 2; ++i) pos = fc::subtree_end(kids, pos);
  return {kids.substr(0, pos), kids.substr(pos)};
}

enum class Op { meet, join };

void combine_forest(Op op, std::string_view a, std::string_view b, std::string& out);

void combine_tree(Op op, std::string_view x, std::string_view y, std::string& out) {
  const auto nx = static_cast<std::uint8_t>(x[0]);
  const auto ny = static_cast<std::uint8_t>(y[0]);
  if (fc::is_black(nx) == fc::is_black(ny)) {
    out.push_back(static_cast<char>(nx));
    combine_forest(op, x.substr(1), y.substr(1), out);
    return;
  }
  std::string_view white = fc::is_black(nx) ? y : x;
  std::string_view black = fc::is_black(nx) ? x : y;
  auto [first, second] = halves(black);
  const std::size_t n = fc::children(static_cast<std::uint8_t>(white[0]));
  if (op == Op::meet) {
    // ○(f) ∧ ●(f′ f″) = ○((f ∧ f′) ∧ f″)
    std::string partial;
    combine_forest(Op::meet, white.substr(1), first, partial);
    out.push_back(header(false, n));
    combine_forest(Op::meet, partial, second, out);
  } else {
    // ○(f) ∨ ●(f′ f″) = ●((f ∨ f′)(f ∨ f″))
    out.push_back(header(true, 2 * n));
    combine_forest(Op::join, white.substr(1), first, out);
    combine_forest(Op::join, white.substr(1), second, out);
  }
}

void combine_forest(Op op, std::string_view a, std::string_view b, std::string& out) {
  std::size_t pa = 0;
  std::size_t pb = 0;
  while (pa < a.size() && pb < b.size()) {
    std::size_t ea = fc::subtree_end(a, pa);
    std::size_t eb = fc::subtree_end(b, pb);
    combine_tree(op, a.substr(pa, ea - pa), b.substr(pb, eb - pb), out);
    pa = ea;
    pb = eb;
  }
  if (pa != a.size() || pb != b.size()) throw IncompatibleError("forests of different lengths");
}

}  // namespace

void forest_code::meet_into(std::string_view a, std::string_view b, std::string& out) {
  combine_forest(Op::meet, a, b, out);
}

void forest_code::join_into(std::string_view a, std::string_view b, std::string& out) {
  combine_forest(Op::join, a, b, out);
}

DupForest meet(const DupForest& a, const DupForest& b) {
  std::string out;
  combine_forest(Op::meet, a.code(), b.code(), out);
  return DupForest::from_code(std::move(out));
}

DupForest join(const DupForest& a, const DupForest& b) {
  std::string out;
  combine_forest(Op::join, a.code(), b.code(), out);
  return DupForest::from_code(std::move(out));
}

bool forest_leq(const DupForest& a, const DupForest& b) { return meet(a, b) == a; }

}  // namespace mbird
