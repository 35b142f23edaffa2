#include "mbird/bridge.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "mbird/error.hpp"
#include "mbird/intern.hpp"

namespace mbird {

namespace {

bool only_m_combinators(const Term& t, bool allow_variables) {
  if (t.is_variable()) return allow_variables;
  if (t.is_basic()) return t.label() == "M";
  return only_m_combinators(t.left(), allow_variables) && only_m_combinators(t.right(), allow_variables);
}

DupForest fr_rec(const Term& t) {
  if (!t.is_application()) return {};
  const Term& l = t.left();
  const Term& r = t.right();
  if (l.is_variable()) return fr_rec(r);
  if (l.is_application()) return fr_rec(l) + fr_rec(r);
  if (r.is_basic()) return {};
  if (r.is_variable()) return DupForest::tree(false, {});
  return DupForest::tree(false, fr_rec(r));
}

}  // namespace

DupForest fr_map(const Term& t) {
  if (!only_m_combinators(t, true)) throw ValidationError("fr is defined on terms over M only");
  return fr_rec(t);
}

Term right_comb(std::uint32_t d) {
  const Term m = Term::basic("M");
  Term t = m;
  for (std::uint32_t i = 0; i < d; ++i) t = Term::apply(m, t);
  return t;
}

// ---------------------------------------------------------------------------
// Compact M-term codes

namespace mterm_code {

namespace {

void encode_rec(const Term& t, std::string& out) {
  if (t.is_application()) {
    out.push_back(kApp);
    encode_rec(t.left(), out);
    encode_rec(t.right(), out);
  } else {
    out.push_back(kM);
  }
}

Term decode_rec(std::string_view code, std::size_t& pos, const Term& m) {
  if (pos >= code.size()) throw ValidationError("truncated term code");
  if (code[pos++] == kM) return m;
  Term l = decode_rec(code, pos, m);
  Term r = decode_rec(code, pos, m);
  return Term::apply(std::move(l), std::move(r));
}

// Appends a node of the given colour whose children are the trees produced
// by `fill`, and returns what `fill` returns.
template <class Fill>
std::size_t wrap(bool black, std::string& out, Fill&& fill) {
  const std::size_t head = out.size();
  out.push_back(0);
  const std::size_t end = fill();
  std::size_t trees = 0;
  for (std::size_t p = head + 1; p < out.size(); p = forest_code::subtree_end(out, p)) ++trees;
  if (trees > DupForest::kMaxChildren) throw ValidationError("fr image has a node with more than 127 children");
  out[head] = static_cast<char>((black ? 0x80 : 0) | trees);
  return end;
}

// Appends the image of the subterm at `pos` and returns its end.
std::size_t fr_at(std::string_view code, std::size_t pos, std::string& out) {
  if (code[pos] == kM) return pos + 1;
  if (code[pos] == kMarkedApp) {
    if (code[pos + 1] == kM) throw ValidationError("marked application with M on the left");
    return wrap(true, out, [&] { return fr_at(code, fr_at(code, pos + 1, out), out); });
  }
  if (code[pos + 1] != kM) return fr_at(code, fr_at(code, pos + 1, out), out);
  const std::size_t arg = pos + 2;
  if (code[arg] == kM) return arg + 1;
  return wrap(false, out, [&] { return fr_at(code, arg, out); });
}

}  // namespace

std::string encode(const Term& t) {
  if (!only_m_combinators(t, false)) throw ValidationError("term codes cover M-combinators only");
  std::string out;
  out.reserve(2 * t.degree() + 1);
  encode_rec(t, out);
  return out;
}

Term decode(std::string_view code) {
  std::size_t pos = 0;
  Term t = decode_rec(code, pos, Term::basic("M"));
  if (pos != code.size()) throw ValidationError("trailing nodes in term code");
  return t;
}

std::string pack(std::string_view code) {
  std::string out((code.size() + 7) / 8, '\0');
  for (std::size_t i = 0; i < code.size(); ++i) {
    if (code[i] != kM) out[i / 8] = static_cast<char>(out[i / 8] | (1 << (i % 8)));
  }
  return out;
}

void unpack(std::string_view packed, std::string& code) {
  code.clear();
  std::size_t open = 1;
  for (std::size_t i = 0; open > 0; ++i) {
    if (i / 8 >= packed.size()) throw ValidationError("truncated packed term code");
    const bool app = ((static_cast<unsigned char>(packed[i / 8]) >> (i % 8)) & 1U) != 0;
    code.push_back(app ? kApp : kM);
    if (app) {
      ++open;
    } else {
      --open;
    }
  }
}

std::string pack_marked(std::string_view code) {
  std::string out((code.size() + 3) / 4, '\0');
  for (std::size_t i = 0; i < code.size(); ++i) {
    out[i / 4] = static_cast<char>(out[i / 4] | (code[i] << (2 * (i % 4))));
  }
  return out;
}

void unpack_marked(std::string_view packed, std::string& code) {
  code.clear();
  std::size_t open = 1;
  for (std::size_t i = 0; open > 0; ++i) {
    if (i / 4 >= packed.size()) throw ValidationError("truncated packed term code");
    const char node = static_cast<char>((static_cast<unsigned char>(packed[i / 4]) >> (2 * (i % 4))) & 3U);
    code.push_back(node);
    if (node != kM) {
      ++open;
    } else {
      --open;
    }
  }
}

void fr_into(std::string_view code, std::string& out) {
  if (!code.empty()) fr_at(code, 0, out);
}

}  // namespace mterm_code

// ---------------------------------------------------------------------------
// Isomorphism check

std::string_view iso_method_name(IsoMethod m) {
  switch (m) {
    case IsoMethod::marked_fr: return "marked fr";
    case IsoMethod::hasse_isomorphism: return "Hasse diagram isomorphism";
    case IsoMethod::none: return "none";
  }
  return "";
}

namespace {

struct StreamedUpset {
  InternTable table;
  std::vector<Edge> edges;
  bool edges_recorded = true;
};

void record_edge(StreamedUpset& up, NodeIndex from, NodeIndex to) {
  if (!up.edges_recorded) return;
  if (up.table.size() > kMaxAnalyzedNodes) {
    up.edges_recorded = false;
    up.edges.clear();
    up.edges.shrink_to_fit();
    return;
  }
  up.edges.emplace_back(from, to);
}

void explore_forests(std::string_view root, std::size_t budget, StreamedUpset& up) {
  up.table.insert(root);
  std::string scratch;
  std::string current;
  for (std::uint32_t id = 0; id < up.table.size(); ++id) {
    current.assign(up.table.at(id));
    for_each_duplication(current, scratch, [&](std::string_view s) {
      auto [to, fresh] = up.table.insert(s);
      if (fresh && up.table.size() > budget) throw BudgetExceeded("forest upset exceeds the node budget");
      record_edge(up, id, to);
    });
  }
}

std::vector<Edge> covers_of(std::size_t n, std::vector<Edge> edges) {
  std::sort(edges.begin(), edges.end());
  edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  return Reachability(n, edges).covers();
}

void append_detail(std::string& details, const std::string& text) {
  if (!details.empty()) details += "; ";
  details += text;
}

}  // namespace

IsoReport verify_fr_isomorphism(const Term& t, std::size_t budget) {
  if (!only_m_combinators(t, false)) throw ValidationError("isomorphism check needs an M-combinator");
  if (budget == 0) throw ValidationError("budget must be at least 1");
  IsoReport report;

  // Marked terms are the BFS queue; `plain` holds their unmarked forms and
  // `images` their forests, so equal sizes mean both maps are injective.
  StreamedUpset terms;
  InternTable plain;
  InternTable images;
  std::vector<std::uint32_t> image_of;
  bool steps_ok = true;
  {
    std::string code = mterm_code::encode(t);
    terms.table.insert(mterm_code::pack_marked(code));
    std::string scratch;
    std::string image;
    std::vector<std::string> expected;
    std::vector<std::string> mapped;
    for (std::uint32_t id = 0; id < terms.table.size(); ++id) {
      mterm_code::unpack_marked(terms.table.at(id), code);
      plain.insert(mterm_code::pack(code));
      image.clear();
      mterm_code::fr_into(code, image);
      image_of.push_back(images.insert(image).first);

      mapped.clear();
      mterm_code::for_each_step(code, scratch, [&](std::string_view s) {
        mapped.emplace_back();
        mterm_code::fr_into(s, mapped.back());
        auto [to, fresh] = terms.table.insert(mterm_code::pack_marked(s));
        if (fresh && terms.table.size() > budget) throw BudgetExceeded("term upset exceeds the node budget");
        record_edge(terms, id, to);
      });
      std::sort(mapped.begin(), mapped.end());
      mapped.erase(std::unique(mapped.begin(), mapped.end()), mapped.end());

      expected.clear();
      for_each_duplication(image, scratch, [&expected](std::string_view s) { expected.emplace_back(s); });
      std::sort(expected.begin(), expected.end());
      expected.erase(std::unique(expected.begin(), expected.end()), expected.end());

      if (steps_ok && mapped != expected) {
        steps_ok = false;
        append_detail(report.details, "successors of " + render_term(mterm_code::decode(code)) +
                                          " do not map onto the duplication successors of " +
                                          render_forest(DupForest::from_code(image)));
      }
    }
  }

  StreamedUpset forests;
  explore_forests(fr_map(t).code(), budget, forests);

  report.term_count = plain.size();
  report.forest_count = forests.table.size();
  report.marks_consistent = plain.size() == terms.table.size();
  report.image_injective = images.size() == terms.table.size();
  report.steps_correspond = steps_ok;
  if (!report.marks_consistent) append_detail(report.details, "some term is reached with two different markings");
  if (!report.image_injective) append_detail(report.details, "the image map is not injective");
  if (report.term_count != report.forest_count) {
    append_detail(report.details, "element counts differ (" + std::to_string(report.term_count) + " terms, " +
                                      std::to_string(report.forest_count) + " forests)");
  }
  const bool bijective =
      report.marks_consistent && report.image_injective && report.term_count == report.forest_count;
  const bool small = terms.edges_recorded && forests.edges_recorded;

  if (small) {
    auto term_covers = covers_of(terms.table.size(), terms.edges);
    auto forest_covers = covers_of(report.forest_count, forests.edges);
    report.term_covers = term_covers.size();
    report.forest_covers = forest_covers.size();
    report.covers_compared = true;
    if (bijective) {
      std::vector<NodeIndex> to_forest(terms.table.size());
      bool onto = true;
      for (std::uint32_t id = 0; id < terms.table.size() && onto; ++id) {
        auto hit = forests.table.find(images.at(image_of[id]));
        onto = hit.has_value();
        if (onto) to_forest[id] = *hit;
      }
      if (onto) {
        std::vector<Edge> mapped;
        for (const auto& [a, b] : term_covers) mapped.emplace_back(to_forest[a], to_forest[b]);
        std::sort(mapped.begin(), mapped.end());
        report.cover_preserving = mapped == forest_covers;
      }
    }
    if (!(bijective && steps_ok && report.cover_preserving) && report.marks_consistent &&
        report.term_count == report.forest_count) {
      try {
        if (digraph_isomorphism(report.term_count, term_covers, report.forest_count, forest_covers)) {
          report.method = IsoMethod::hasse_isomorphism;
          report.isomorphic = true;
          report.cover_preserving = true;
          return report;
        }
        append_detail(report.details, "Hasse diagrams are not isomorphic");
      } catch (const BudgetExceeded&) {
        append_detail(report.details, "Hasse diagram search gave up");
      }
      return report;
    }
  } else {
    // A bijection carrying steps onto steps carries the transitive
    // reduction too.
    report.cover_preserving = bijective && steps_ok;
  }

  if (bijective && steps_ok && report.cover_preserving) {
    report.method = IsoMethod::marked_fr;
    report.isomorphic = true;
  }
  return report;
}

// ---------------------------------------------------------------------------
// Digraph isomorphism

namespace {

using Adjacency = std::vector<std::vector<NodeIndex>>;

Adjacency build(std::size_t n, std::span<const Edge> edges, bool reverse) {
  Adjacency adj(n);
  for (const auto& [a, b] : edges) {
    if (a >= n || b >= n) throw ValidationError("edge endpoint out of range");
    adj[reverse ? b : a].push_back(reverse ? a : b);
  }
  for (auto& list : adj) {
    std::sort(list.begin(), list.end());
    list.erase(std::unique(list.begin(), list.end()), list.end());
  }
  return adj;
}

// Joint colour refinement of the disjoint union of two graphs so that
// colours are comparable across them.
std::vector<std::uint32_t> refine(const Adjacency& out, const Adjacency& in) {
  const std::size_t n = out.size();
  std::vector<std::uint32_t> color(n, 0);
  std::size_t classes = 1;
  for (;;) {
    std::map<std::vector<std::uint32_t>, std::uint32_t> ids;
    std::vector<std::vector<std::uint32_t>> sig(n);
    for (std::size_t v = 0; v < n; ++v) {
      std::vector<std::uint32_t> o, i;
      for (NodeIndex w : out[v]) o.push_back(color[w]);
      for (NodeIndex w : in[v]) i.push_back(color[w]);
      std::sort(o.begin(), o.end());
      std::sort(i.begin(), i.end());
      sig[v].push_back(color[v]);
      sig[v].push_back(static_cast<std::uint32_t>(o.size()));
      sig[v].insert(sig[v].end(), o.begin(), o.end());
      sig[v].push_back(static_cast<std::uint32_t>(i.size()));
      sig[v].insert(sig[v].end(), i.begin(), i.end());
      ids.emplace(sig[v], 0);
    }
    std::uint32_t next = 0;
    for (auto& [key, id] : ids) id = next++;
    for (std::size_t v = 0; v < n; ++v) color[v] = ids.at(sig[v]);
    if (ids.size() == classes) return color;
    classes = ids.size();
  }
}

class Matcher {
 public:
  Matcher(const Adjacency& out, const Adjacency& in, std::vector<std::uint32_t> color, std::size_t n,
          std::uint64_t budget)
      : out_(out), in_(in), color_(std::move(color)), n_(n), budget_(budget), map_(n, kUnmapped), used_(n, false) {
    for (NodeIndex v = 0; v < n; ++v) order_.push_back(v);
    std::vector<std::size_t> class_size(*std::max_element(color_.begin(), color_.end()) + 1, 0);
    for (std::size_t v = 0; v < n; ++v) ++class_size[color_[v]];
    // Smallest colour classes first.
    std::stable_sort(order_.begin(), order_.end(), [&](NodeIndex a, NodeIndex b) {
      return class_size[color_[a]] < class_size[color_[b]];
    });
    candidates_.resize(class_size.size());
    for (NodeIndex w = 0; w < n; ++w) candidates_[color_[n + w]].push_back(w);
  }

  bool run(std::size_t depth = 0) {
    if (depth == n_) return true;
    const NodeIndex v = order_[depth];
    for (NodeIndex w : candidates_[color_[v]]) {
      if (used_[w] || !consistent(v, w)) continue;
      if (budget_-- == 0) throw BudgetExceeded("isomorphism search exhausted its budget");
      map_[v] = w;
      used_[w] = true;
      if (run(depth + 1)) return true;
      map_[v] = kUnmapped;
      used_[w] = false;
    }
    return false;
  }

  std::vector<NodeIndex> mapping() const { return map_; }

 private:
  static constexpr NodeIndex kUnmapped = UINT32_MAX;

  bool edge_b(NodeIndex a, NodeIndex b) const {
    const auto& list = out_[n_ + a];
    return std::binary_search(list.begin(), list.end(), static_cast<NodeIndex>(n_ + b));
  }

  bool consistent(NodeIndex v, NodeIndex w) const {
    for (NodeIndex x : out_[v]) {
      if (map_[x] != kUnmapped && !edge_b(w, map_[x])) return false;
    }
    for (NodeIndex x : in_[v]) {
      if (map_[x] != kUnmapped && !edge_b(map_[x], w)) return false;
    }
    // Edges in the second graph from or to mapped images must have preimages.
    std::size_t mapped_out = 0, mapped_in = 0;
    for (NodeIndex x : out_[v]) mapped_out += map_[x] != kUnmapped ? 1 : 0;
    for (NodeIndex x : in_[v]) mapped_in += map_[x] != kUnmapped ? 1 : 0;
    std::size_t image_out = 0, image_in = 0;
    for (NodeIndex y : out_[n_ + w]) image_out += used_[y - n_] ? 1 : 0;
    for (NodeIndex y : in_[n_ + w]) image_in += used_[y - n_] ? 1 : 0;
    return mapped_out == image_out && mapped_in == image_in;
  }

  const Adjacency& out_;
  const Adjacency& in_;
  std::vector<std::uint32_t> color_;
  std::size_t n_;
  std::uint64_t budget_;
  std::vector<NodeIndex> map_;
  std::vector<bool> used_;
  std::vector<NodeIndex> order_;
  std::vector<std::vector<NodeIndex>> candidates_;
};

}  // namespace

std::optional<std::vector<NodeIndex>> digraph_isomorphism(std::size_t n_a, std::span<const Edge> edges_a,
                                                          std::size_t n_b, std::span<const Edge> edges_b,
                                                          std::uint64_t search_budget) {
  if (n_a != n_b) return std::nullopt;
  const std::size_t n = n_a;
  if (n == 0) return std::vector<NodeIndex>{};
  std::vector<Edge> both(edges_a.begin(), edges_a.end());
  for (const auto& [a, b] : edges_b) {
    if (a >= n || b >= n) throw ValidationError("edge endpoint out of range");
    both.emplace_back(static_cast<NodeIndex>(a + n), static_cast<NodeIndex>(b + n));
  }
  Adjacency out = build(2 * n, both, false);
  Adjacency in = build(2 * n, both, true);
  std::size_t count_a = 0, count_b = 0;
  for (std::size_t v = 0; v < n; ++v) {
    count_a += out[v].size();
    count_b += out[n + v].size();
  }
  if (count_a != count_b) return std::nullopt;

  std::vector<std::uint32_t> color = refine(out, in);
  std::vector<std::size_t> hist_a, hist_b;
  for (std::size_t v = 0; v < n; ++v) {
    hist_a.push_back(color[v]);
    hist_b.push_back(color[n + v]);
  }
  std::sort(hist_a.begin(), hist_a.end());
  std::sort(hist_b.begin(), hist_b.end());
  if (hist_a != hist_b) return std::nullopt;

  Matcher matcher(out, in, std::move(color), n, search_budget);
  if (!matcher.run()) return std::nullopt;
  return matcher.mapping();
}

}  // namespace mbird
