#include "mbird/rewrite.hpp"

#include <algorithm>
#include <charconv>
#include <deque>
#include <unordered_map>
#include <unordered_set>

#include "mbird/error.hpp"

namespace mbird {

// ---------------------------------------------------------------------------
// Systems

void CLSystem::add_rule(std::string name, std::uint32_t order, Term rhs) {
  if (order == 0) throw ValidationError("rule " + name + ": order must be at least 1");
  if (rhs.has_basic()) throw ValidationError("rule " + name + ": rhs contains a combinator");
  if (rhs.max_variable() > order) {
    throw ValidationError("rule " + name + ": variable x" + std::to_string(rhs.max_variable()) +
                          " exceeds order " + std::to_string(order));
  }
  if (rules_.contains(name)) throw ValidationError("duplicate rule for " + name);
  Alphabet names = alphabet();
  names.insert(name);
  try {
    validate_alphabet(names);
  } catch (const ParseError& e) {
    throw ValidationError(e.what());
  }
  Rule rule{name, order, std::move(rhs)};
  rules_.emplace(std::move(name), std::move(rule));
}

const Rule* CLSystem::find(std::string_view name) const {
  auto it = rules_.find(name);
  return it == rules_.end() ? nullptr : &it->second;
}

std::vector<const Rule*> CLSystem::rules() const {
  std::vector<const Rule*> out;
  for (const auto& [name, rule] : rules_) out.push_back(&rule);
  return out;
}

Alphabet CLSystem::alphabet() const {
  Alphabet out;
  for (const auto& [name, rule] : rules_) out.insert(name);
  return out;
}

namespace {

void collect_variables(const Term& t, std::uint32_t depth,
                       std::map<std::uint32_t, std::vector<std::uint32_t>>& depths) {
  if (t.is_variable()) {
    depths[t.variable_index()].push_back(depth);
  } else if (t.is_application()) {
    collect_variables(t.left(), depth + 1, depths);
    collect_variables(t.right(), depth + 1, depths);
  }
}

}  // namespace

std::vector<std::string> CLSystem::erasing_rules() const {
  std::vector<std::string> out;
  for (const auto& [name, rule] : rules_) {
    std::map<std::uint32_t, std::vector<std::uint32_t>> depths;
    collect_variables(rule.rhs, 0, depths);
    for (std::uint32_t i = 1; i <= rule.order; ++i) {
      if (!depths.contains(i)) {
        out.push_back(name);
        break;
      }
    }
  }
  return out;
}

CLSystem builtin_system(std::string_view name) {
  static constexpr std::pair<std::string_view, std::string_view> kRules[] = {
      {"M", "M 1 := x1 x1"},
      {"I", "I 1 := x1"},
      {"K", "K 2 := x1"},
      {"S", "S 3 := x1 x3 (x2 x3)"},
  };
  std::string text;
  for (char c : name) {
    auto it = std::find_if(std::begin(kRules), std::end(kRules),
                           [c](const auto& r) { return r.first.size() == 1 && r.first[0] == c; });
    if (it == std::end(kRules)) throw ValidationError("unknown builtin system '" + std::string(name) + "'");
    text += it->second;
    text += '\n';
  }
  if (text.empty()) throw ValidationError("empty builtin system name");
  return load_system(text);
}

CLSystem load_system(std::string_view text) {
  constexpr std::string_view kBuiltin = "builtin:";
  auto trimmed = [](std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
  };
  if (trimmed(text).starts_with(kBuiltin)) return builtin_system(trimmed(text).substr(kBuiltin.size()));

  CLSystem sys;
  std::size_t line_no = 0;
  while (!text.empty()) {
    ++line_no;
    std::size_t eol = text.find('\n');
    std::string_view line = text.substr(0, eol);
    text = eol == std::string_view::npos ? std::string_view() : text.substr(eol + 1);
    if (auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
    line = trimmed(line);
    if (line.empty()) continue;

    const std::string where = "line " + std::to_string(line_no) + ": ";
    std::size_t assign = line.find(":=");
    if (assign == std::string_view::npos) throw ValidationError(where + "expected 'NAME ORDER := RHS'");
    std::string_view head = trimmed(line.substr(0, assign));
    std::string_view rhs_text = trimmed(line.substr(assign + 2));
    std::size_t space = head.find_first_of(" \t");
    if (space == std::string_view::npos) throw ValidationError(where + "missing order");
    std::string_view name = head.substr(0, space);
    std::string_view order_text = trimmed(head.substr(space));
    std::uint32_t order = 0;
    auto [ptr, ec] = std::from_chars(order_text.data(), order_text.data() + order_text.size(), order);
    if (ec != std::errc() || ptr != order_text.data() + order_text.size()) {
      throw ValidationError(where + "order must be a positive integer");
    }
    Term rhs = Term::variable(1);
    try {
      rhs = parse_term(rhs_text, {});
    } catch (const ParseError& e) {
      if (e.kind() == ParseError::Kind::unknown_combinator) {
        throw ValidationError(where + "rule " + std::string(name) + ": rhs contains a combinator");
      }
      throw ValidationError(where + e.what());
    }
    try {
      Term::basic(name);
      sys.add_rule(std::string(name), order, rhs);
    } catch (const ValidationError& e) {
      throw ValidationError(where + e.what());
    }
  }
  if (sys.empty()) throw ValidationError("system defines no rules");
  return sys;
}

// ---------------------------------------------------------------------------
// One-step rewriting

namespace {

// Rewrites t at its root if t is exactly C s1 ... sn for a combinator C of
// order n.
std::optional<Term> contract(const CLSystem& sys, const Term& t) {
  std::vector<Term> args;
  const Term* cur = &t;
  while (cur->is_application()) {
    args.push_back(cur->right());
    cur = &cur->left();
  }
  if (!cur->is_basic()) return std::nullopt;
  const Rule* rule = sys.find(cur->label());
  if (rule == nullptr || args.size() != rule->order) return std::nullopt;
  std::reverse(args.begin(), args.end());
  return compose(rule->rhs, args);
}

void successors_rec(const CLSystem& sys, const Term& t, std::vector<Term>& out) {
  if (!t.is_application() || !t.has_basic()) return;
  if (auto r = contract(sys, t)) out.push_back(std::move(*r));
  std::size_t start = out.size();
  successors_rec(sys, t.left(), out);
  for (std::size_t i = start; i < out.size(); ++i) out[i] = Term::apply(std::move(out[i]), t.right());
  start = out.size();
  successors_rec(sys, t.right(), out);
  for (std::size_t i = start; i < out.size(); ++i) out[i] = Term::apply(t.left(), std::move(out[i]));
}

void predecessors_rec(const CLSystem& sys, const std::vector<const Rule*>& rules, const Term& t,
                      std::vector<Term>& out) {
  for (const Rule* rule : rules) {
    if (rule->rhs.degree() > t.degree()) continue;
    Substitution bindings;
    if (!match_term(rule->rhs, t, bindings)) continue;
    Term pred = Term::basic(rule->name);
    for (std::uint32_t i = 1; i <= rule->order; ++i) pred = Term::apply(std::move(pred), bindings.at(i));
    out.push_back(std::move(pred));
  }
  if (!t.is_application()) return;
  std::size_t start = out.size();
  predecessors_rec(sys, rules, t.left(), out);
  for (std::size_t i = start; i < out.size(); ++i) out[i] = Term::apply(std::move(out[i]), t.right());
  start = out.size();
  predecessors_rec(sys, rules, t.right(), out);
  for (std::size_t i = start; i < out.size(); ++i) out[i] = Term::apply(t.left(), std::move(out[i]));
}

void sort_unique(std::vector<Term>& terms) {
  std::sort(terms.begin(), terms.end(), FullRenderLess{});
  terms.erase(std::unique(terms.begin(), terms.end()), terms.end());
}

}  // namespace

std::vector<Term> step_successors(const CLSystem& sys, const Term& t) {
  std::vector<Term> out;
  successors_rec(sys, t, out);
  sort_unique(out);
  return out;
}

std::vector<Term> step_predecessors(const CLSystem& sys, const Term& t) {
  std::vector<std::string> erasing = sys.erasing_rules();
  std::vector<const Rule*> rules;
  for (const Rule* r : sys.rules()) {
    if (std::find(erasing.begin(), erasing.end(), r->name) == erasing.end()) rules.push_back(r);
  }
  std::vector<Term> out;
  predecessors_rec(sys, rules, t, out);
  sort_unique(out);
  return out;
}

// ---------------------------------------------------------------------------
// Exploration

Direction parse_direction(std::string_view text) {
  if (text == "up") return Direction::up;
  if (text == "class") return Direction::equivalence_class;
  throw ValidationError("invalid direction '" + std::string(text) + "' (expected up or class)");
}

ExploredPoset<Term> explore_component(const CLSystem& sys, const Term& t, Direction direction,
                                      ExploreOptions options) {
  if (options.budget == 0) throw ValidationError("budget must be at least 1");
  ExploredPoset<Term> g;
  std::unordered_map<Term, NodeIndex, TermHash> index;
  g.nodes.push_back(t);
  index.emplace(t, 0);
  bool complete = true;
  if (direction == Direction::equivalence_class && !sys.erasing_rules().empty()) complete = false;

  auto lookup = [&](const Term& u) -> std::optional<NodeIndex> {
    auto it = index.find(u);
    if (it != index.end()) return it->second;
    if (g.nodes.size() >= options.budget) {
      complete = false;
      return std::nullopt;
    }
    auto id = static_cast<NodeIndex>(g.nodes.size());
    g.nodes.push_back(u);
    index.emplace(u, id);
    return id;
  };

  for (std::size_t cur = 0; cur < g.nodes.size(); ++cur) {
    const Term here = g.nodes[cur];
    const auto from = static_cast<NodeIndex>(cur);
    for (const Term& s : step_successors(sys, here)) {
      if (auto id = lookup(s)) g.step_edges.emplace_back(from, *id);
    }
    if (direction == Direction::equivalence_class) {
      for (const Term& p : step_predecessors(sys, here)) {
        if (auto id = lookup(p)) g.step_edges.emplace_back(*id, from);
      }
    }
  }
  std::sort(g.step_edges.begin(), g.step_edges.end());
  g.step_edges.erase(std::unique(g.step_edges.begin(), g.step_edges.end()), g.step_edges.end());
  g.flags.is_complete = complete;
  return g;
}

// ---------------------------------------------------------------------------
// Properties

std::map<std::string, bool> is_hierarchical(const CLSystem& sys) {
  std::map<std::string, bool> out;
  for (const Rule* rule : sys.rules()) {
    std::map<std::uint32_t, std::vector<std::uint32_t>> depths;
    collect_variables(rule->rhs, 0, depths);
    bool ok = true;
    for (std::uint32_t i = 1; i <= rule->order && ok; ++i) {
      auto it = depths.find(i);
      if (it == depths.end()) {
        ok = false;
        break;
      }
      for (std::uint32_t d : it->second) ok = ok && d == rule->order + 1 - i;
    }
    out[rule->name] = ok;
  }
  return out;
}

namespace {

enum class JoinOutcome { joined, disjoint, budget };

JoinOutcome search_join(const CLSystem& sys, const Term& a, const Term& b, std::size_t budget,
                        Term& witness) {
  if (a == b) {
    witness = a;
    return JoinOutcome::joined;
  }
  std::unordered_set<Term, TermHash> seen[2];
  std::vector<Term> frontier[2];
  seen[0].insert(a);
  seen[1].insert(b);
  frontier[0].push_back(a);
  frontier[1].push_back(b);
  while (!frontier[0].empty() || !frontier[1].empty()) {
    // Expand the smaller non-empty frontier by one layer.
    int side = frontier[0].empty() ? 1
               : frontier[1].empty() ? 0
               : (frontier[0].size() <= frontier[1].size() ? 0 : 1);
    std::vector<Term> next;
    for (const Term& u : frontier[side]) {
      for (const Term& s : step_successors(sys, u)) {
        if (!seen[side].insert(s).second) continue;
        if (seen[1 - side].contains(s)) {
          witness = s;
          return JoinOutcome::joined;
        }
        if (seen[0].size() + seen[1].size() > budget) return JoinOutcome::budget;
        next.push_back(s);
      }
    }
    frontier[side] = std::move(next);
  }
  return JoinOutcome::disjoint;
}

}  // namespace

ConfluenceReport local_confluence_probe(const CLSystem& sys, const Term& t, std::size_t join_budget) {
  ConfluenceReport report;
  std::vector<Term> succ = step_successors(sys, t);
  for (std::size_t i = 0; i < succ.size(); ++i) {
    for (std::size_t j = i + 1; j < succ.size(); ++j) {
      ++report.pairs_checked;
      Term witness = succ[i];
      JoinOutcome outcome = search_join(sys, succ[i], succ[j], join_budget, witness);
      if (outcome == JoinOutcome::joined) {
        ++report.pairs_joined;
        report.joins.push_back(witness);
        continue;
      }
      if (!report.first_unjoined) report.first_unjoined = std::make_pair(succ[i], succ[j]);
      if (outcome == JoinOutcome::disjoint) {
        report.verdict = ConfluenceReport::Verdict::failure;
      } else if (report.verdict != ConfluenceReport::Verdict::failure) {
        report.verdict = ConfluenceReport::Verdict::inconclusive;
      }
    }
  }
  return report;
}

namespace {

bool only_m_leaves(const Term& t) {
  if (t.is_variable()) return false;
  if (t.is_basic()) return t.label() == "M";
  return only_m_leaves(t.left()) && only_m_leaves(t.right());
}

}  // namespace

Extremality extremal_by_pattern(const Term& t) {
  if (!only_m_leaves(t)) throw ValidationError("extremality patterns need a combinator over {M}");
  static const Alphabet kM{"M"};
  static const Term kNotMaximal = parse_term("M(x1x2)", kM);
  static const Term kNotMinimal = parse_term("(x1x2)(x1x2)", kM);
  return {!contains_factor(t, kNotMaximal), !contains_factor(t, kNotMinimal)};
}

Extremality extremal_by_steps(const CLSystem& sys, const Term& t) {
  auto only_self = [&t](const std::vector<Term>& terms) {
    return std::all_of(terms.begin(), terms.end(), [&t](const Term& u) { return u == t; });
  };
  return {only_self(step_successors(sys, t)), only_self(step_predecessors(sys, t))};
}

namespace {

std::optional<Term> first_proper_step(const CLSystem& sys, const Term& t) {
  if (!t.is_application() || !t.has_basic()) return std::nullopt;
  if (auto r = contract(sys, t); r && !(*r == t)) return r;
  if (auto l = first_proper_step(sys, t.left())) return Term::apply(std::move(*l), t.right());
  if (auto r = first_proper_step(sys, t.right())) return Term::apply(t.left(), std::move(*r));
  return std::nullopt;
}

}  // namespace

std::vector<Term> reduce_chain(const CLSystem& sys, const Term& t, std::size_t max_steps) {
  std::vector<Term> chain{t};
  while (chain.size() <= max_steps) {
    auto next = first_proper_step(sys, chain.back());
    if (!next) break;
    chain.push_back(std::move(*next));
  }
  return chain;
}

}  // namespace mbird
