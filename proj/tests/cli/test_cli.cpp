// End-to-end tests driving the installed `lp` binary as a subprocess.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <string>

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int exit_code = -1;
  std::string output;
};

RunResult run(const std::string& args) {
  std::string cmd = std::string(LP_CLI_PATH) + " " + args + " 2>&1";
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  RunResult r;
  char buf[4096];
  std::size_t n;
  while ((n = fread(buf, 1, sizeof buf, pipe)) > 0) r.output.append(buf, n);
  int status = pclose(pipe);
  r.exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string examples(const std::string& rel) {
  return (fs::path(LP_SOURCE_DIR) / "paper-examples" / rel).string();
}

fs::path write_temp(const std::string& name, const std::string& content) {
  fs::path p = fs::temp_directory_path() / name;
  std::ofstream out(p);
  out << content;
  return p;
}

bool contains(const std::string& haystack, const std::string& needle) {
  return haystack.find(needle) != std::string::npos;
}

}  // namespace

TEST_CASE("help and usage errors") {
  CHECK(run("--help").exit_code == 0);
  CHECK(run("").exit_code == 2);
  CHECK(run("entail").exit_code == 2);           // missing required flags
  CHECK(run("frobnicate").exit_code == 2);       // unknown subcommand
  CHECK(run("parse --sentences /nonexistent.lp").exit_code == 2);
}

TEST_CASE("parse echoes canonical forms and rejects bad input with positions") {
  RunResult ok = run("parse --sentences " + examples("sentences/representation.lp"));
  CHECK(ok.exit_code == 0);
  CHECK(contains(ok.output, "[Lawyer(x) | Politician(x)]{x} > [Engineer(x) | Politician(x)]{x};"));
  CHECK(contains(ok.output, "[Fly(x) | Bird(x)]{x} > 9/10;"));

  fs::path bad = write_temp("lp_bad.lp", "object pred P/1;\n[P(x)]{x} > ;\n");
  RunResult err = run("parse --sentences " + bad.string());
  CHECK(err.exit_code == 2);
  CHECK(contains(err.output, "2:"));  // line number in the diagnostic

  fs::path empty = write_temp("lp_empty.lp", "");
  CHECK(run("parse --sentences " + empty.string()).exit_code == 2);
}

TEST_CASE("eval reports values, truth, and division-by-zero diagnostics") {
  RunResult r = run("eval --model " + examples("models/birds.model") + " --sentences " +
                    examples("models/birds_queries.lp"));
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "10/11"));
  CHECK(contains(r.output, "true"));

  fs::path div = write_temp("lp_div.lp", "[Fly(x) | !Bird(x) & Fly(x)]{x};\n");
  RunResult err = run("eval --model " + examples("models/birds.model") + " --sentences " +
                      div.string());
  CHECK(err.exit_code == 1);
  CHECK(contains(err.output, "DivisionByZero"));
}

TEST_CASE("entail surfaces bounds, infeasibility, and exit codes") {
  RunResult r = run("entail --sentences " + examples("entailment/nilsson.lp") +
                    " --query '[Q(x)]{x}'");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "[2/5, 4/5]"));

  fs::path bad = write_temp("lp_infeasible.lp",
                            "object pred P/1;\n[P(x)]{x} = 0.6;\n[!P(x)]{x} = 0.6;\n");
  RunResult inf = run("entail --sentences " + bad.string() + " --query '[P(x)]{x}'");
  CHECK(inf.exit_code == 1);
  CHECK(contains(inf.output, "INFEASIBLE"));
}

TEST_CASE("believe prints the interval and reference class") {
  RunResult r = run("believe --kb " + examples("belief/tweety.lp") + " --target 'Fly(Tweety)'");
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "(9/10, 1]"));
  CHECK(contains(r.output, "reference class: Bird(x)"));
}

TEST_CASE("bayes query and verify work end to end") {
  RunResult q = run("bayes query --net " + examples("bayes/figure1.net") +
                    " --target X1 --evidence 'X2 & !X4'");
  CHECK(q.exit_code == 0);
  CHECK(contains(q.output, "435/563"));

  RunResult v = run("bayes verify --net " + examples("bayes/figure1.net"));
  CHECK(v.exit_code == 0);
  CHECK(contains(v.output, "16 hold, 0 undefined, 0 fail"));
}

TEST_CASE("check-axioms: pass, negative control, and deterministic reports") {
  RunResult ok = run("--seed 5 check-axioms --count 4 --pairs 4");
  CHECK(ok.exit_code == 0);
  CHECK(contains(ok.output, "all checks passed"));

  RunResult bug = run("--seed 5 check-axioms --count 3 --pairs 4 --inject-bug");
  CHECK(bug.exit_code == 1);
  CHECK(contains(bug.output, "CHECKS FAILED"));

  RunResult a = run("--format structured --seed 9 check-axioms --count 3 --pairs 4");
  RunResult b = run("--format structured --seed 9 check-axioms --count 3 --pairs 4");
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);  // byte-identical given (inputs, seed)
  RunResult c = run("--format structured --seed 10 check-axioms --count 3 --pairs 4");
  CHECK(a.output != c.output);
}

TEST_CASE("structured output is versioned and stable") {
  std::string cmd = "--format structured entail --sentences " +
                    examples("entailment/nilsson.lp") + " --query '[Q(x)]{x}'";
  RunResult a = run(cmd);
  RunResult b = run(cmd);
  CHECK(a.exit_code == 0);
  CHECK(a.output == b.output);
  CHECK(contains(a.output, "\"lp_version\": 1"));
  CHECK(contains(a.output, "\"lo\": \"2/5\""));
}

TEST_CASE("the enumeration cap is enforced at the command line") {
  CHECK(run("--max-enum 99999999999 parse --sentences " +
            examples("sentences/representation.lp"))
            .exit_code == 2);
}

TEST_CASE("reproduce replays every paper example against the goldens") {
  RunResult r = run("reproduce --dir " + (fs::path(LP_SOURCE_DIR) / "paper-examples").string());
  CHECK(r.exit_code == 0);
  CHECK(contains(r.output, "ok entail-nilsson"));
  CHECK(contains(r.output, "ok believe-tweety"));
  CHECK(contains(r.output, "reproduce: all outputs match"));
}
