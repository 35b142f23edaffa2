#include "doctest.h"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"

#include "mbird/cli.hpp"

using namespace mbird;

namespace {

CommandOutcome run(std::vector<std::string> args) { return run_command(args); }

std::size_t count_lines_with(const std::string& text, const std::string& needle) {
  std::istringstream in(text);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) n += line.find(needle) != std::string::npos ? 1 : 0;
  return n;
}

std::size_t dot_loops(const std::string& dot) {
  std::istringstream in(dot);
  std::string line;
  std::size_t n = 0;
  while (std::getline(in, line)) {
    const auto arrow = line.find(" -> ");
    if (arrow == std::string::npos) continue;
    std::string from = line.substr(0, arrow);
    std::string to = line.substr(arrow + 4);
    from.erase(0, from.find_first_not_of(' '));
    to.erase(to.find(';'));
    n += from == to ? 1 : 0;
  }
  return n;
}

struct TempFile {
  std::filesystem::path path;
  TempFile(const std::string& name, const std::string& text)
      : path(std::filesystem::temp_directory_path() / name) {
    std::ofstream(path) << text;
  }
  ~TempFile() { std::filesystem::remove(path); }
};

}  // namespace

TEST_CASE("enumerate") {
  auto r = run({"enumerate", "intervals", "--count", "8"});
  CHECK(r.exit_code == 0);
  CHECK(r.out == "[1,1,3,17,371,144513,20932611523,438176621806663544657]\n");

  auto ladder = run({"enumerate", "sizes", "--count", "4", "--indexing", "ladder", "--method", "series"});
  CHECK(ladder.out == "[1,2,6,42]\n");

  auto j = nlohmann::json::parse(run({"enumerate", "classes", "--format", "json"}).out);
  CHECK(j["values"][7] == "1285739648704587610");
  CHECK(j["method"] == "recurrence");

  auto oracle = run({"enumerate", "edges", "--count", "6", "--method", "oracle"});
  CHECK(oracle.out == "[0,0,1,7,97,8287]\n");
  CHECK(run({"enumerate", "edges", "--count", "9", "--method", "oracle"}).exit_code == 2);
  CHECK(run({"enumerate", "catalan"}).exit_code == 2);
  CHECK(run({"enumerate", "sizes", "--count", "0"}).exit_code == 2);
}

TEST_CASE("graph") {
  auto r = run({"graph", "M(M(MM))", "--system", "builtin:M", "--format", "json"});
  REQUIRE(r.exit_code == 0);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["nodes"].size() == 6);
  std::size_t loops = 0, proper = 0;
  for (const auto& e : j["step_edges"]) (e[0] == e[1] ? loops : proper) += 1;
  CHECK(proper == 7);
  CHECK(loops == 6);
  CHECK(j["hasse_edges"].size() == 7);
  CHECK(j["flags"]["is_lattice"] == true);

  auto hasse = run({"graph", "M(M(MM))", "--hasse"});
  CHECK(count_lines_with(hasse.out, "[label=") == 6);
  CHECK(count_lines_with(hasse.out, " -> ") == 7);
  CHECK(dot_loops(hasse.out) == 0);

  auto full = run({"graph", "M(M(MM))"});
  CHECK(count_lines_with(full.out, " -> ") == 13);
  CHECK(dot_loops(full.out) == 6);

  auto single = run({"graph", "M"});
  CHECK(count_lines_with(single.out, "[label=") == 1);
  CHECK(count_lines_with(single.out, " -> ") == 0);

  auto forest = run({"graph", "w(w)", "--forest", "--hasse", "--format", "json"});
  auto fj = nlohmann::json::parse(forest.out);
  CHECK(fj["nodes"].size() == 6);
  CHECK(fj["hasse_edges"].size() == 7);

  auto cut = run({"graph", "M(M(M(MM)))", "--budget", "10"});
  CHECK(cut.exit_code == 2);
  CHECK_FALSE(cut.err.empty());
  CHECK(cut.out.empty());

  auto i = run({"graph", "II(III)", "--system", "builtin:I", "--format", "json"});
  CHECK(nlohmann::json::parse(i.out)["flags"]["is_lattice"] == false);
}

TEST_CASE("system files") {
  TempFile sys("mbird_test_system.txt", "# mockingbird\nM 1 := x1 x1\n");
  auto r = run({"reduce", "M(MM)", "--system", sys.path.string()});
  CHECK(r.exit_code == 0);
  CHECK(r.out.starts_with("M(MM)\nMM(MM)\n"));
  CHECK(run({"reduce", "M", "--system", "/nonexistent/system"}).exit_code == 2);
  TempFile bad("mbird_test_bad_system.txt", "K 2 := x1 x3\n");
  CHECK(run({"reduce", "K", "--system", bad.path.string()}).exit_code == 2);
}

TEST_CASE("check") {
  auto m = run({"check", "M(M(MM))", "--iso"});
  CHECK(m.exit_code == 0);
  CHECK(m.out.find("lattice                 yes") != std::string::npos);
  CHECK(m.out.find("fr isomorphism          yes") != std::string::npos);

  auto i = run({"check", "II(III)", "--system", "builtin:I"});
  CHECK(i.exit_code == 1);
  CHECK(i.out.find("lattice                 no") != std::string::npos);
  CHECK(i.out.find("rooted                  unknown") != std::string::npos);

  CHECK(run({"check", "Kx1", "--system", "builtin:K", "--iso"}).exit_code == 2);
}

TEST_CASE("fr, oracle and reduce") {
  CHECK(run({"fr", "M(M(MM))"}).out == "w(w)\n");
  CHECK(run({"fr", "K"}).exit_code == 2);

  auto c = nlohmann::json::parse(run({"oracle", "counts", "3", "--intervals"}).out);
  CHECK(c["elements"] == "42");
  CHECK(c["hasse_edges"] == "97");
  CHECK(c["intervals"] == "371");
  CHECK(c["cover_equals_step"] == true);

  auto ni = nlohmann::json::parse(run({"oracle", "ni", "w(w) w"}).out);
  CHECK(ni["b(b b) b"] == 4);
  auto ns = nlohmann::json::parse(run({"oracle", "ns", "w(w) w"}).out);
  CHECK(ns["b(b b) b"] == 12);
  auto md = nlohmann::json::parse(run({"oracle", "md", "w", "-k", "2"}).out);
  CHECK(md["w"] == 3);
  auto census = nlohmann::json::parse(run({"oracle", "census", "7"}).out);
  CHECK(census["maximal"] == 51);
  CHECK(census["minimal"] == 344);

  auto chain = run({"reduce", "M(M(MM))"});
  CHECK(chain.out.starts_with("M(M(MM))\n"));
  CHECK(chain.out.find("MM(MM)(MM(MM))") != std::string::npos);
}

TEST_CASE("compare") {
  TempFile good("mbird_test_good.txt", "0 1\n1 1\n2 2\n3 6\n");
  auto r = run({"compare", good.path.string(), "sizes"});
  CHECK(r.exit_code == 0);
  CHECK(r.out == "match over 4 values\n");

  TempFile bad("mbird_test_bad.txt", "0 1\n1 1\n2 2\n3 7\n");
  auto m = run({"compare", bad.path.string(), "sizes"});
  CHECK(m.exit_code == 1);
  CHECK(m.out.find("mismatch at index 3") != std::string::npos);

  TempFile broken("mbird_test_broken.txt", "0 1\n2 2\n");
  CHECK(run({"compare", broken.path.string(), "sizes"}).exit_code == 2);
}

TEST_CASE("crosscheck") {
  auto r = run({"crosscheck"});
  CHECK(r.exit_code == 0);
  CHECK(count_lines_with(r.out, " ok ") == 18);

  CrosscheckReport failing;
  failing.lines.push_back({"sizes", "recurrence = series", true, "indices 0..12"});
  failing.lines.push_back({"edges", "recurrence = oracle", false, "index 4: 97 vs 98"});
  std::ostringstream out, err;
  CHECK(print_crosscheck(failing, out, err) == 1);
  CHECK(out.str().find("FAIL") != std::string::npos);
  CHECK(out.str().find("index 4: 97 vs 98") != std::string::npos);
  CHECK_FALSE(err.str().empty());
}

TEST_CASE("usage errors") {
  CHECK(run({}).exit_code == 2);
  CHECK(run({"bogus"}).exit_code == 2);
  CHECK(run({"graph"}).exit_code == 2);
  CHECK(run({"graph", "M(M", "--format", "json"}).exit_code == 2);
  CHECK(run({"graph", "M", "--format", "svg"}).exit_code == 2);
  CHECK(run({"graph", "M", "--direction", "sideways"}).exit_code == 2);
  CHECK(run({"enumerate", "sizes", "--format", "csv"}).exit_code == 2);
  CHECK(run({"--help"}).exit_code == 0);
}

TEST_CASE("budget from the environment") {
  ::setenv("MBIRD_BUDGET", "5", 1);
  CHECK(run({"graph", "M(M(M(MM)))"}).exit_code == 2);
  ::setenv("MBIRD_BUDGET", "lots", 1);
  CHECK(run({"graph", "M"}).exit_code == 2);
  ::unsetenv("MBIRD_BUDGET");
  CHECK(run({"graph", "M(M(M(MM)))"}).exit_code == 0);
}

TEST_CASE("output is deterministic") {
  for (const std::vector<std::string>& args :
       {std::vector<std::string>{"graph", "M(M(M(MM)))", "--format", "json"},
        std::vector<std::string>{"graph", "S(KKS)K(SS)", "--system", "builtin:KS", "--budget", "500"},
        std::vector<std::string>{"oracle", "ns", "w(w(w)) w"}, std::vector<std::string>{"crosscheck"}}) {
    const auto a = run(args);
    const auto b = run(args);
    CHECK(a.out == b.out);
    CHECK(a.exit_code == b.exit_code);
  }
}
