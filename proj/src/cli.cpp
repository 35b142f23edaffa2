#include "mbird/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "mbird/bridge.hpp"
#include "mbird/enumerate.hpp"
#include "mbird/error.hpp"
#include "mbird/export.hpp"
#include "mbird/forest.hpp"
#include "mbird/oracle.hpp"
#include "mbird/rewrite.hpp"
#include "mbird/series.hpp"

namespace mbird {

namespace {

constexpr int kPropertyFailed = 1;
constexpr int kBadInput = 2;
constexpr std::size_t kClassProbeBudget = 20000;

std::size_t default_budget() {
  const char* env = std::getenv("MBIRD_BUDGET");
  if (env == nullptr || *env == '\0') return kDefaultBudget;
  std::string_view text(env);
  std::size_t value = 0;
  auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc() || ptr != text.data() + text.size() || value == 0) {
    throw ValidationError("MBIRD_BUDGET must be a positive integer, got '" + std::string(text) + "'");
  }
  return value;
}

// `builtin:NAME` or the path of a system file.
CLSystem system_from(const std::string& source) {
  if (source.starts_with("builtin:")) return load_system(source);
  std::ifstream in(source);
  if (!in) throw ValidationError("cannot read system file " + source);
  std::ostringstream text;
  text << in.rdbuf();
  return load_system(text.str());
}

std::string list_text(const std::vector<BigInt>& values) {
  std::string out = "[";
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (i > 0) out += ",";
    out += to_decimal(values[i]);
  }
  return out + "]";
}

enum class Verdict { yes, no, unknown };

std::string_view verdict_text(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::unknown: return "unknown";
  }
  return "";
}

Verdict verdict_of(bool b) { return b ? Verdict::yes : Verdict::no; }

struct Options {
  std::string system = "builtin:M";
  std::string term;
  std::string graph_format;
  std::string table_format;
  std::string direction = "up";
  std::size_t budget = 0;
  std::size_t max_steps = 1000;
  std::size_t join_budget = 100000;
  bool hasse = false;
  bool forest = false;
  bool iso = false;
  std::string name;
  std::string method = "recurrence";
  std::string indexing = "mockingbird";
  std::size_t count = 8;
  bool large = false;
  std::uint32_t d = 0;
  bool intervals = false;
  std::uint32_t k = 2;
  bool by_height = false;
  std::size_t max_d = 12;
  std::string path;
};

int cmd_reduce(const Options& o, std::ostream& out, std::ostream& err) {
  CLSystem sys = system_from(o.system);
  Term t = parse_term(o.term, sys.alphabet());
  std::vector<Term> chain = reduce_chain(sys, t, o.max_steps);
  for (const Term& u : chain) out << render_term(u) << "\n";
  const bool stuck = chain.size() <= o.max_steps;
  err << (stuck ? "reached a term with no proper step after " : "stopped at the step limit after ")
      << chain.size() - 1 << " steps\n";
  return 0;
}

int cmd_graph(const Options& o, std::ostream& out, std::ostream& err) {
  const GraphFormat format = parse_graph_format(o.graph_format);
  const std::size_t budget = o.budget != 0 ? o.budget : default_budget();
  if (o.forest) {
    auto g = forest_upset(parse_forest(o.term), budget);
    if (!g.flags.is_complete) throw BudgetExceeded("forest upset exceeds the budget of " + std::to_string(budget));
    out << export_graph(g, format, o.hasse);
    return 0;
  }
  CLSystem sys = system_from(o.system);
  Term t = parse_term(o.term, sys.alphabet());
  const Direction direction = parse_direction(o.direction);
  if (direction == Direction::equivalence_class) {
    for (const auto& [name, ok] : is_hierarchical(sys)) {
      if (!ok) err << "warning: " << name << " is not hierarchical; the class may be infinite\n";
    }
  }
  auto g = explore_component(sys, t, direction, {budget});
  if (!g.flags.is_complete) {
    throw BudgetExceeded("exploration stopped at the budget of " + std::to_string(budget) + " nodes");
  }
  out << export_graph(g, format, o.hasse);
  return 0;
}

int cmd_check(const Options& o, std::ostream& out, std::ostream& err) {
  CLSystem sys = system_from(o.system);
  Term t = parse_term(o.term, sys.alphabet());
  const std::size_t budget = o.budget != 0 ? o.budget : default_budget();
  std::vector<std::pair<std::string, Verdict>> rows;

  auto up = explore_component(sys, t, Direction::up, {budget});
  err << "upset: " << up.nodes.size() << " nodes" << (up.flags.is_complete ? "" : " (budget hit)") << "\n";
  Verdict poset = Verdict::unknown;
  Verdict lattice = Verdict::unknown;
  if (up.flags.is_complete && up.nodes.size() <= kMaxAnalyzedNodes) {
    OrderAnalysis a = analyze_order(up.nodes.size(), up.step_edges);
    poset = verdict_of(a.is_acyclic);
    lattice = verdict_of(a.is_lattice);
  }
  rows.emplace_back("poset", poset);
  rows.emplace_back("lattice", lattice);

  Verdict rooted = Verdict::unknown;
  const auto hierarchy = is_hierarchical(sys);
  const bool hierarchical = std::all_of(hierarchy.begin(), hierarchy.end(), [](const auto& kv) { return kv.second; });
  if (sys.erasing_rules().empty()) {
    // Classes of non-hierarchical systems may be infinite.
    std::size_t class_budget = budget;
    if (!hierarchical) {
      class_budget = std::min(budget, kClassProbeBudget);
      err << "warning: system is not hierarchical; class search limited to " << class_budget << " nodes\n";
    }
    auto cls = explore_component(sys, t, Direction::equivalence_class, {class_budget});
    err << "class: " << cls.nodes.size() << " nodes" << (cls.flags.is_complete ? "" : " (budget hit)") << "\n";
    if (cls.flags.is_complete) rooted = verdict_of(analyze_order(cls.nodes.size(), cls.step_edges).minimal.size() == 1);
  }
  rows.emplace_back("rooted", rooted);

  for (const auto& [name, ok] : hierarchy) rows.emplace_back("hierarchical " + name, verdict_of(ok));

  ConfluenceReport c = local_confluence_probe(sys, t, o.join_budget);
  rows.emplace_back("locally confluent",
                    c.verdict == ConfluenceReport::Verdict::all_joinable ? Verdict::yes
                    : c.verdict == ConfluenceReport::Verdict::failure    ? Verdict::no
                                                                         : Verdict::unknown);

  if (o.iso) {
    if (sys.alphabet() != Alphabet{"M"}) throw ValidationError("--iso needs the system builtin:M");
    IsoReport r = verify_fr_isomorphism(t, budget);
    rows.emplace_back("fr isomorphism", verdict_of(r.isomorphic));
    if (r.isomorphic) err << "fr isomorphism: " << iso_method_name(r.method) << "\n";
    if (!r.details.empty()) err << "fr isomorphism: " << r.details << "\n";
  }

  bool failed = false;
  for (const auto& [name, v] : rows) {
    out << std::left << std::setw(24) << name << verdict_text(v) << "\n";
    failed = failed || v == Verdict::no;
  }
  return failed ? kPropertyFailed : 0;
}

int cmd_fr(const Options& o, std::ostream& out, std::ostream&) {
  out << render_forest(fr_map(parse_term(o.term, Alphabet{"M"}))) << "\n";
  return 0;
}

SequenceTable compute_sequence(Equation e, Method m, std::size_t count, Indexing indexing, bool large) {
  switch (m) {
    case Method::recurrence: return seq_by_recurrence(e, count, indexing);
    case Method::series: return seq_by_series(e, count, indexing);
    case Method::oracle: return seq_by_oracle(e, count, indexing, large);
    case Method::bfile: break;
  }
  throw ValidationError("invalid method");
}

int cmd_enumerate(const Options& o, std::ostream& out, std::ostream&) {
  SequenceTable t = compute_sequence(parse_equation(o.name), parse_method(o.method), o.count,
                                     parse_indexing(o.indexing), o.large);
  if (o.table_format == "json") {
    out << sequence_json(t) << "\n";
  } else if (o.table_format == "text") {
    out << list_text(t.values) << "\n";
  } else {
    throw ValidationError("invalid format '" + o.table_format + "' (expected text or json)");
  }
  return 0;
}

nlohmann::ordered_json counts_json(const ForestCounts& counts) {
  nlohmann::ordered_json j = nlohmann::ordered_json::object();
  for (const auto& [forest, n] : counts) j[forest] = n;
  return j;
}

int cmd_oracle_counts(const Options& o, std::ostream& out, std::ostream&) {
  OracleCounts c = oracle_poset_counts(o.d, o.intervals);
  nlohmann::ordered_json j;
  j["d"] = c.d;
  j["elements"] = to_decimal(c.elements);
  j["hasse_edges"] = to_decimal(c.hasse_edges);
  if (c.intervals) j["intervals"] = to_decimal(*c.intervals);
  j["cover_equals_step"] = c.cover_equals_step;
  out << j.dump() << "\n";
  return 0;
}

int cmd_oracle_census(const Options& o, std::ostream& out, std::ostream&) {
  Census c = o.by_height ? oracle_extremal_census_by_height(o.d) : oracle_extremal_census(o.d);
  nlohmann::ordered_json j;
  j[o.by_height ? "height" : "degree"] = o.d;
  j["total"] = c.total;
  j["maximal"] = c.maximal;
  j["minimal"] = c.minimal;
  out << j.dump() << "\n";
  return 0;
}

int cmd_crosscheck(const Options& o, std::ostream& out, std::ostream& err) {
  return print_crosscheck(crosscheck_all(o.max_d, {o.large}), out, err);
}

int cmd_compare(const Options& o, std::ostream& out, std::ostream& err) {
  SequenceTable file = load_bfile(o.path);
  const Equation e = parse_equation(o.name);
  const Method m = parse_method(o.method);
  const Indexing indexing = parse_indexing(o.indexing);
  std::size_t count = std::max<std::size_t>(file.offset + file.values.size(), 1);
  if (m == Method::oracle) count = std::min(count, oracle_max_count(e, indexing, o.large));
  SequenceTable computed = compute_sequence(e, m, count, indexing, o.large);
  CompareReport r = compare(file, computed);
  if (!r.warning.empty()) err << "warning: " << r.warning << "\n";
  if (r.match) {
    out << "match over " << r.overlap << " values\n";
    return 0;
  }
  const std::size_t n = *r.first_mismatch;
  out << "mismatch at index " << n << ": b-file has " << to_decimal(file.values[n - file.offset])
      << ", " << method_name(m) << " gives " << to_decimal(computed.values[n - computed.offset]) << "\n";
  return kPropertyFailed;
}

}  // namespace

int print_crosscheck(const CrosscheckReport& r, std::ostream& out, std::ostream& err) {
  std::size_t failures = 0;
  for (const CrosscheckLine& l : r.lines) {
    out << std::left << std::setw(10) << l.sequence << std::setw(30) << l.check << std::setw(6)
        << (l.ok ? "ok" : "FAIL") << l.detail << "\n";
    failures += l.ok ? 0 : 1;
  }
  if (failures > 0) err << failures << " of " << r.lines.size() << " checks failed\n";
  return failures == 0 ? 0 : kPropertyFailed;
}

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Mockingbird combinatory logic and duplicative forest toolkit", "mbird"};
  app.require_subcommand(1);
  int (*action)(const Options&, std::ostream&, std::ostream&) = nullptr;

  auto* reduce = app.add_subcommand("reduce", "Leftmost-outermost rewrite chain");
  reduce->add_option("term", o.term, "Term to rewrite")->required();
  reduce->add_option("--system", o.system, "System file path or builtin:NAME");
  reduce->add_option("--max-steps", o.max_steps, "Step limit")->check(CLI::NonNegativeNumber);
  reduce->callback([&] { action = cmd_reduce; });

  auto* graph = app.add_subcommand("graph", "Explore a component and export it");
  graph->add_option("term", o.term, "Term (or forest with --forest)")->required();
  graph->add_option("--system", o.system, "System file path or builtin:NAME");
  graph->add_option("--direction", o.direction, "up or class");
  graph->add_option("--budget", o.budget, "Node budget (default MBIRD_BUDGET or 10000000)");
  graph->add_option("--format", o.graph_format, "dot or json")->default_val("dot");
  graph->add_flag("--hasse", o.hasse, "Only Hasse diagram edges");
  graph->add_flag("--forest", o.forest, "Explore the upset of a duplicative forest");
  graph->callback([&] { action = cmd_graph; });

  auto* check = app.add_subcommand("check", "Probe order and rewriting properties of a component");
  check->add_option("term", o.term, "Term")->required();
  check->add_option("--system", o.system, "System file path or builtin:NAME");
  check->add_option("--budget", o.budget, "Node budget (default MBIRD_BUDGET or 10000000)");
  check->add_option("--join-budget", o.join_budget, "Node budget of each confluence search");
  check->add_flag("--iso", o.iso, "Also verify the fr isomorphism (builtin:M only)");
  check->callback([&] { action = cmd_check; });

  auto* fr = app.add_subcommand("fr", "Duplicative forest of an M-term");
  fr->add_option("term", o.term, "Term over M")->required();
  fr->callback([&] { action = cmd_fr; });

  auto* enumerate = app.add_subcommand("enumerate", "Print a counting sequence");
  enumerate->add_option("name", o.name, "motzkin, min, classes, sizes, edges or intervals")->required();
  enumerate->add_option("--method", o.method, "recurrence, series or oracle");
  enumerate->add_option("--count", o.count, "Number of values")->check(CLI::PositiveNumber);
  enumerate->add_option("--indexing", o.indexing, "mockingbird or ladder");
  enumerate->add_option("--format", o.table_format, "text or json")->default_val("text");
  enumerate->add_flag("--large", o.large, "Allow the streaming D*(l_5) oracle");
  enumerate->callback([&] { action = cmd_enumerate; });

  auto* oracle = app.add_subcommand("oracle", "Brute-force counts on explicit posets");
  oracle->require_subcommand(1);
  auto* counts = oracle->add_subcommand("counts", "Elements, Hasse edges and intervals of D*(l_d)");
  counts->add_option("d", o.d, "Ladder index")->required();
  counts->add_flag("--intervals", o.intervals, "Also count intervals (d <= 4)");
  counts->callback([&] { action = cmd_oracle_counts; });
  auto add_forest_map = [&](const char* name, const char* help,
                            int (*fn)(const Options&, std::ostream&, std::ostream&)) {
    auto* sub = oracle->add_subcommand(name, help);
    sub->add_option("forest", o.term, "Forest")->required();
    sub->callback([&action, fn] { action = fn; });
    return sub;
  };
  add_forest_map("ni", "In-degree of every element of D*(f)", [](const Options& o, std::ostream& out, std::ostream&) {
    out << counts_json(oracle_ni(parse_forest(o.term))).dump() << "\n";
    return 0;
  });
  add_forest_map("ns", "Down-set size of every element of D*(f)",
                 [](const Options& o, std::ostream& out, std::ostream&) {
                   out << counts_json(oracle_ns(parse_forest(o.term))).dump() << "\n";
                   return 0;
                 });
  auto* md = add_forest_map("md", "Meet k-decomposition counts on D*(f)",
                            [](const Options& o, std::ostream& out, std::ostream&) {
                              out << counts_json(oracle_md_k(parse_forest(o.term), o.k)).dump() << "\n";
                              return 0;
                            });
  md->add_option("-k", o.k, "Tuple length")->check(CLI::PositiveNumber);
  auto* census = oracle->add_subcommand("census", "Maximal and minimal M-combinators of a degree");
  census->add_option("n", o.d, "Degree (or height with --by-height)")->required();
  census->add_flag("--by-height", o.by_height, "Classify by height instead of degree");
  census->callback([&] { action = cmd_oracle_census; });

  auto* crosscheck = app.add_subcommand("crosscheck", "Compare every method against every other");
  crosscheck->add_option("--max-d", o.max_d, "Last index compared between recurrence and series");
  crosscheck->add_flag("--large", o.large, "Include the streaming D*(l_5) oracle");
  crosscheck->callback([&] { action = cmd_crosscheck; });

  auto* compare_cmd = app.add_subcommand("compare", "Compare an OEIS b-file with a computed sequence");
  compare_cmd->add_option("bfile", o.path, "b-file path")->required();
  compare_cmd->add_option("name", o.name, "Sequence name")->required();
  compare_cmd->add_option("--method", o.method, "recurrence, series or oracle");
  compare_cmd->add_option("--indexing", o.indexing, "mockingbird or ladder");
  compare_cmd->add_flag("--large", o.large, "Allow the streaming D*(l_5) oracle");
  compare_cmd->callback([&] { action = cmd_compare; });

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e, out, err);
  } catch (const CLI::ParseError& e) {
    err << "mbird: " << e.what() << "\n";
    return kBadInput;
  }
  if (action == nullptr) {
    err << app.help();
    return kBadInput;
  }
  try {
    return action(o, out, err);
  } catch (const Error& e) {
    err << "mbird: " << e.what() << "\n";
    return kBadInput;
  }
}

CommandOutcome run_command(const std::vector<std::string>& args) {
  std::vector<const char*> argv{"mbird"};
  for (const std::string& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  CommandOutcome r;
  r.exit_code = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

}  // namespace mbird
