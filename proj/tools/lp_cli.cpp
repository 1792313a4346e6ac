// lp — command-line front end for the Lp toolkit: parse and evaluate
// sentences, compute entailment bounds, compile and query Bayes nets,
// derive degrees of belief, and run the axiom property suite.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "lp/axioms.hpp"
#include "lp/bayes.hpp"
#include "lp/belief.hpp"
#include "lp/entail.hpp"
#include "lp/eval.hpp"
#include "lp/model.hpp"
#include "lp/parser.hpp"
#include "lp/printer.hpp"

using json = nlohmann::ordered_json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitCheckFailed = 1;
constexpr int kExitUsage = 2;
constexpr int kStructuredVersion = 1;

struct Options {
  bool structured = false;
  std::uint64_t max_enum = lp::kMaxEnumeration;
  std::uint64_t seed = 1;
};

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw lp::Error(lp::ErrorKind::IoError, "cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

json result_header(const std::string& command) {
  json j;
  j["lp_version"] = kStructuredVersion;
  j["command"] = command;
  return j;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

int report_error(const lp::Error& e, const Options& opts, const std::string& command,
                 int exit_code) {
  if (opts.structured) {
    json j = result_header(command);
    j["error"] = {{"kind", lp::error_kind_name(e.kind())}, {"message", e.what()}};
    if (e.span() && e.span()->valid()) {
      j["error"]["line"] = e.span()->line;
      j["error"]["column"] = e.span()->column;
    }
    emit(j);
  } else {
    std::cerr << "error: " << e.render() << "\n";
  }
  return exit_code;
}

// File and parse problems are usage-class failures (exit 2); everything
// after that (division by zero, infeasibility, failed checks) is exit 1.
int error_class(const lp::Error& e) {
  switch (e.kind()) {
    case lp::ErrorKind::IoError:
    case lp::ErrorKind::FormatError:
    case lp::ErrorKind::LexError:
    case lp::ErrorKind::SyntaxError:
    case lp::ErrorKind::SortMismatch:
    case lp::ErrorKind::UnknownSymbol:
    case lp::ErrorKind::DuplicateSymbol:
    case lp::ErrorKind::DuplicateBoundVariable:
    case lp::ErrorKind::EmptyBinderVector:
    case lp::ErrorKind::MeasureNotNormalized:
    case lp::ErrorKind::OutsideFragment:
    case lp::ErrorKind::TooManyAtoms:
    case lp::ErrorKind::TooManyVariables:
      return kExitUsage;
    default:
      return kExitCheckFailed;
  }
}

std::string interval_text(const lp::EntailResult& r) {
  return std::string(r.lo_open ? "(" : "[") + r.interval.lo.str() + ", " +
         r.interval.hi.str() + (r.hi_open ? ")" : "]");
}

json entail_json(const lp::EntailResult& r) {
  json j;
  switch (r.status) {
    case lp::EntailResult::Status::Bounded:
      j["status"] = "bounded";
      j["interval"] = {{"lo", r.interval.lo.str()},
                       {"lo_open", r.lo_open},
                       {"hi", r.interval.hi.str()},
                       {"hi_open", r.hi_open}};
      break;
    case lp::EntailResult::Status::Infeasible:
      j["status"] = "infeasible";
      break;
    case lp::EntailResult::Status::UndefinedQuery:
      j["status"] = "undefined-query";
      break;
  }
  return j;
}

// ---------------------------------------------------------------------------

int cmd_parse(const std::string& sentences_path, const Options& opts) {
  lp::ParsedFile file = lp::parse_file(read_file(sentences_path));
  if (opts.structured) {
    json j = result_header("parse");
    j["statements"] = json::array();
    for (const auto& s : file.statements) {
      j["statements"].push_back(
          {{"kind", s.is_formula() ? "formula" : "term"},
           {"canonical", s.is_formula() ? lp::print(s.formula()) : lp::print(s.term())}});
    }
    emit(j);
  } else {
    for (const auto& s : file.statements)
      std::cout << (s.is_formula() ? lp::print(s.formula()) : lp::print(s.term())) << ";\n";
  }
  if (file.statements.empty())
    throw lp::Error(lp::ErrorKind::FormatError, "no sentences in '" + sentences_path + "'");
  return kExitOk;
}

int cmd_eval(const std::string& model_path, const std::string& sentences_path,
             const Options& opts) {
  lp::Model model = lp::load_model(model_path);
  lp::ParsedFile file = lp::parse_file(read_file(sentences_path), model.vocab);
  lp::EvalOptions eval_opts{opts.max_enum};

  json results = json::array();
  bool any_error = false;
  std::size_t index = 0;
  for (const auto& s : file.statements) {
    ++index;
    std::string text = s.is_formula() ? lp::print(s.formula()) : lp::print(s.term());
    json entry;
    entry["sentence"] = text;
    try {
      lp::Assignment sigma;
      if (s.is_formula()) {
        bool v = lp::eval_formula(model.structure, file.vocab, sigma,
                                  *lp::desugar(s.formula()), eval_opts);
        entry["value"] = v ? "true" : "false";
      } else {
        lp::TermValue v = lp::eval_term(model.structure, file.vocab, sigma,
                                        *lp::desugar(s.term()), eval_opts);
        if (v.index() == 0)
          entry["value"] = model.structure.individual_name(std::get<std::uint32_t>(v));
        else
          entry["value"] = std::get<lp::Rational>(v).str();
      }
    } catch (const lp::Error& e) {
      any_error = true;
      entry["error"] = {{"kind", lp::error_kind_name(e.kind())}, {"message", e.what()}};
    }
    if (!opts.structured) {
      std::cout << index << ": ";
      if (entry.contains("value"))
        std::cout << entry["value"].get<std::string>() << "\n";
      else
        std::cout << "error: " << entry["error"]["kind"].get<std::string>() << ": "
                  << entry["error"]["message"].get<std::string>() << "\n";
    }
    results.push_back(std::move(entry));
  }
  if (opts.structured) {
    json j = result_header("eval");
    j["results"] = std::move(results);
    emit(j);
  }
  return any_error ? kExitCheckFailed : kExitOk;
}

int cmd_entail(const std::string& sentences_path, const std::string& query_text,
               const Options& opts) {
  lp::ParsedFile file = lp::parse_file(read_file(sentences_path));
  std::vector<lp::FormulaPtr> sentences;
  for (const auto& s : file.statements) {
    if (!s.is_formula())
      throw lp::Error(lp::ErrorKind::OutsideFragment, "base sentences must be formulas", s.span);
    sentences.push_back(s.formula());
  }
  lp::Vocabulary vocab = file.vocab;
  lp::TermPtr query = lp::parse_term(query_text, vocab);
  lp::EntailResult r = lp::entail_sentences(sentences, query);

  if (opts.structured) {
    json j = result_header("entail");
    j["query"] = lp::print(query);
    j.update(entail_json(r));
    emit(j);
  } else {
    switch (r.status) {
      case lp::EntailResult::Status::Bounded:
        std::cout << lp::print(query) << " in " << interval_text(r) << "\n";
        break;
      case lp::EntailResult::Status::Infeasible:
        std::cout << "INFEASIBLE\n";
        break;
      case lp::EntailResult::Status::UndefinedQuery:
        std::cout << "UNDEFINED: the conditioning event has probability zero under every "
                     "distribution satisfying the base\n";
        break;
    }
  }
  return r.status == lp::EntailResult::Status::Bounded ? kExitOk : kExitCheckFailed;
}

std::vector<lp::BayesLiteral> parse_literals(const std::string& text) {
  std::vector<lp::BayesLiteral> out;
  std::size_t pos = 0;
  auto skip_ws = [&] {
    while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  };
  for (;;) {
    skip_ws();
    if (pos >= text.size()) break;
    lp::BayesLiteral lit;
    if (text[pos] == '!') {
      lit.positive = false;
      ++pos;
      skip_ws();
    }
    std::size_t start = pos;
    while (pos < text.size() &&
           (std::isalnum(static_cast<unsigned char>(text[pos])) || text[pos] == '_'))
      ++pos;
    if (start == pos)
      throw lp::Error(lp::ErrorKind::FormatError, "expected a variable literal in '" + text + "'");
    lit.var = text.substr(start, pos - start);
    out.push_back(std::move(lit));
    skip_ws();
    if (pos >= text.size()) break;
    if (text[pos] != '&')
      throw lp::Error(lp::ErrorKind::FormatError, "literals are joined with '&'");
    ++pos;
  }
  return out;
}

int cmd_bayes_compile(const std::string& net_path, const std::string& output,
                      const Options& opts) {
  lp::BayesNet net = lp::load_net(net_path);
  std::vector<lp::FormulaPtr> sentences = lp::net_to_lp(net);

  std::ostringstream body;
  for (const auto& v : net.vars()) body << "object pred " << v << "/1;\n";
  for (const auto& s : sentences) body << lp::print(s) << ";\n";

  if (!output.empty()) {
    std::ofstream out(output);
    if (!out) throw lp::Error(lp::ErrorKind::IoError, "cannot write '" + output + "'");
    out << body.str();
  }
  if (opts.structured) {
    json j = result_header("bayes-compile");
    j["sentences"] = json::array();
    for (const auto& s : sentences) j["sentences"].push_back(lp::print(s));
    emit(j);
  } else if (output.empty()) {
    std::cout << body.str();
  }
  return kExitOk;
}

int cmd_bayes_query(const std::string& net_path, const std::string& target_text,
                    const std::string& evidence_text, const Options& opts) {
  lp::BayesNet net = lp::load_net(net_path);
  auto targets = parse_literals(target_text);
  if (targets.size() != 1)
    throw lp::Error(lp::ErrorKind::FormatError, "--target takes exactly one literal");
  std::vector<lp::BayesLiteral> evidence;
  if (!evidence_text.empty()) evidence = parse_literals(evidence_text);

  lp::Rational value = lp::query(net, targets[0], evidence);
  if (opts.structured) {
    json j = result_header("bayes-query");
    j["target"] = (targets[0].positive ? "" : "!") + targets[0].var;
    j["evidence"] = json::array();
    for (const auto& e : evidence) j["evidence"].push_back((e.positive ? "" : "!") + e.var);
    j["value"] = value.str();
    emit(j);
  } else {
    std::cout << value.str() << "\n";
  }
  return kExitOk;
}

int cmd_bayes_verify(const std::string& net_path, const Options& opts) {
  lp::BayesNet net = lp::load_net(net_path);
  lp::NegationUniformReport report = lp::verify_negation_uniform(net);

  auto signs_text = [&](const std::vector<bool>& signs) {
    std::string s;
    for (std::size_t i = 0; i < signs.size(); ++i) {
      if (i) s += " & ";
      if (!signs[i]) s += "!";
      s += net.vars()[i];
    }
    return s;
  };

  if (opts.structured) {
    json j = result_header("bayes-verify");
    j["rows"] = json::array();
    for (const auto& row : report.rows) {
      const char* status = row.status == lp::SignedEquationRow::Status::Holds ? "holds"
                           : row.status == lp::SignedEquationRow::Status::Undefined
                               ? "undefined"
                               : "fails";
      j["rows"].push_back({{"signs", signs_text(row.signs)}, {"status", status}});
    }
    j["holds"] = report.holds;
    j["undefined"] = report.undefined;
    j["fails"] = report.fails;
    emit(j);
  } else {
    for (const auto& row : report.rows) {
      const char* status = row.status == lp::SignedEquationRow::Status::Holds ? "holds"
                           : row.status == lp::SignedEquationRow::Status::Undefined
                               ? "undefined"
                               : "FAILS";
      std::cout << signs_text(row.signs) << ": " << status;
      if (!row.detail.empty()) std::cout << " (" << row.detail << ")";
      std::cout << "\n";
    }
    std::cout << report.holds << " hold, " << report.undefined << " undefined, "
              << report.fails << " fail\n";
  }
  return report.all_ok() ? kExitOk : kExitCheckFailed;
}

int cmd_believe(const std::string& kb_path, const std::string& target_text,
                const Options& opts) {
  lp::KnowledgeBase kb = lp::load_kb(kb_path);
  lp::Vocabulary vocab = kb.vocab;
  lp::FormulaPtr target = lp::parse_formula(target_text, vocab);
  lp::BeliefResult r = lp::believe(kb, target);

  if (opts.structured) {
    json j = result_header("believe");
    j["target"] = lp::print(target);
    j["reference_class"] = lp::print(r.reference_class);
    j["variable"] = r.variable;
    j.update(entail_json(r.entailment));
    j["vacuous"] = r.vacuous;
    j["reference_class_matched"] = r.reference_class_matched;
    j["provenance"] = json::array();
    for (const auto& s : r.provenance) j["provenance"].push_back(lp::print(s));
    emit(j);
  } else {
    std::cout << "target: " << lp::print(target) << "\n";
    std::cout << "reference class: " << lp::print(r.reference_class) << "\n";
    switch (r.entailment.status) {
      case lp::EntailResult::Status::Bounded:
        std::cout << "belief: " << interval_text(r.entailment) << "\n";
        break;
      case lp::EntailResult::Status::Infeasible:
        std::cout << "belief: INFEASIBLE (statistical sentences are contradictory)\n";
        break;
      case lp::EntailResult::Status::UndefinedQuery:
        std::cout << "belief: UNDEFINED (reference class has probability zero)\n";
        break;
    }
    if (r.vacuous)
      std::cout << "warning: no statistical sentence constrains the term; the bound is vacuous\n";
    else if (!r.reference_class_matched &&
             r.entailment.status == lp::EntailResult::Status::Bounded)
      std::cout << "note: reference class not matched by any sentence's conditioning formula\n";
  }
  return r.entailment.status == lp::EntailResult::Status::Bounded ? kExitOk : kExitCheckFailed;
}

int cmd_check_axioms(const lp::AxiomCampaignParams& params, const Options& opts) {
  lp::SuiteReport report = lp::run_axiom_campaign(params);
  if (opts.structured) {
    json j = result_header("check-axioms");
    j["seed"] = params.seed;
    j["models"] = params.model_count;
    j["checks"] = json::array();
    for (const auto& c : report.checks) {
      json e = {{"name", c.name},
                {"trials", c.trials},
                {"failures", c.failures},
                {"skipped", c.skipped}};
      if (c.failures) e["first_failure"] = c.first_failure;
      j["checks"].push_back(std::move(e));
    }
    j["all_passed"] = report.all_passed();
    emit(j);
  } else {
    for (const auto& c : report.checks) {
      std::cout << (c.failures ? "FAIL" : "pass") << "  " << c.name << "  trials=" << c.trials
                << " failures=" << c.failures << " skipped=" << c.skipped << "\n";
      if (c.failures) std::cout << "      first failure: " << c.first_failure << "\n";
    }
    std::cout << (report.all_passed() ? "all checks passed" : "CHECKS FAILED") << "\n";
  }
  return report.all_passed() ? kExitOk : kExitCheckFailed;
}

// ---------------------------------------------------------------------------
// reproduce: run the shipped paper-examples fixtures and diff structured
// output against the golden files.

struct ReproduceStep {
  std::string name;
  std::function<std::string(const std::filesystem::path&)> run;
};

std::string capture(const std::function<int()>& fn) {
  std::ostringstream captured;
  std::streambuf* old = std::cout.rdbuf(captured.rdbuf());
  try {
    fn();
  } catch (...) {
    std::cout.rdbuf(old);
    throw;
  }
  std::cout.rdbuf(old);
  return captured.str();
}

int cmd_reproduce(const std::string& dir, bool update_golden) {
  namespace fs = std::filesystem;
  fs::path root(dir);
  Options structured;
  structured.structured = true;

  std::vector<ReproduceStep> steps = {
      {"parse-representation",
       [&](const fs::path& r) {
         return capture([&] { return cmd_parse((r / "sentences/representation.lp").string(), structured); });
       }},
      {"entail-nilsson",
       [&](const fs::path& r) {
         return capture([&] {
           return cmd_entail((r / "entailment/nilsson.lp").string(), "[Q(x)]{x}", structured);
         });
       }},
      {"entail-conjunction-p",
       [&](const fs::path& r) {
         return capture([&] {
           return cmd_entail((r / "entailment/conjunction.lp").string(), "[P(x)]{x}", structured);
         });
       }},
      {"entail-conjunction-q",
       [&](const fs::path& r) {
         return capture([&] {
           return cmd_entail((r / "entailment/conjunction.lp").string(), "[Q(x)]{x}", structured);
         });
       }},
      {"bayes-compile-figure1",
       [&](const fs::path& r) {
         return capture([&] { return cmd_bayes_compile((r / "bayes/figure1.net").string(), "", structured); });
       }},
      {"bayes-verify-figure1",
       [&](const fs::path& r) {
         return capture([&] { return cmd_bayes_verify((r / "bayes/figure1.net").string(), structured); });
       }},
      {"bayes-query-figure1",
       [&](const fs::path& r) {
         return capture([&] {
           return cmd_bayes_query((r / "bayes/figure1.net").string(), "X1", "X2 & !X4", structured);
         });
       }},
      {"believe-tweety",
       [&](const fs::path& r) {
         return capture([&] {
           return cmd_believe((r / "belief/tweety.lp").string(), "Fly(Tweety)", structured);
         });
       }},
      {"eval-birds",
       [&](const fs::path& r) {
         return capture([&] {
           return cmd_eval((r / "models/birds.model").string(),
                           (r / "models/birds_queries.lp").string(), structured);
         });
       }},
  };

  bool all_ok = true;
  for (const auto& step : steps) {
    std::string got;
    try {
      got = step.run(root);
    } catch (const lp::Error& e) {
      std::cout << "ERROR " << step.name << ": " << e.render() << "\n";
      all_ok = false;
      continue;
    }
    fs::path golden = root / "golden" / (step.name + ".json");
    if (update_golden) {
      std::ofstream out(golden);
      out << got;
      std::cout << "wrote " << golden.string() << "\n";
      continue;
    }
    std::string want;
    try {
      want = read_file(golden.string());
    } catch (const lp::Error&) {
      std::cout << "MISSING " << step.name << " (no golden file)\n";
      all_ok = false;
      continue;
    }
    if (got == want) {
      std::cout << "ok " << step.name << "\n";
    } else {
      std::cout << "MISMATCH " << step.name << "\n";
      all_ok = false;
    }
  }
  std::cout << (all_ok ? "reproduce: all outputs match" : "reproduce: MISMATCHES") << "\n";
  return all_ok ? kExitOk : kExitCheckFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lp — statistical probability logic toolkit"};
  app.require_subcommand(1);

  Options opts;
  std::string format = "human";
  app.add_option("--format", format, "Output mode: human or structured")
      ->check(CLI::IsMember({"human", "structured"}));
  app.add_option("--max-enum", opts.max_enum,
                 "Tuple enumeration cap per probability term (<= 10^7)");
  app.add_option("--seed", opts.seed, "Random seed (fixed default for reproducibility)");

  std::string model_path, sentences_path, query_text, net_path, kb_path;
  std::string target_text, evidence_text, output_path, reproduce_dir = "paper-examples";
  bool update_golden = false;

  CLI::App* parse_cmd = app.add_subcommand("parse", "Parse, sort-check and echo sentences");
  parse_cmd->add_option("--sentences", sentences_path, "Sentence file (.lp)")->required();

  CLI::App* eval_cmd = app.add_subcommand("eval", "Evaluate sentences over a model");
  eval_cmd->add_option("--model", model_path, "Model file")->required();
  eval_cmd->add_option("--sentences", sentences_path, "Sentence file (.lp)")->required();

  CLI::App* entail_cmd = app.add_subcommand("entail", "Tightest probability bounds for a query");
  entail_cmd->add_option("--sentences", sentences_path, "Base sentence file (.lp)")->required();
  entail_cmd->add_option("--query", query_text, "Query probability term")->required();

  CLI::App* bayes_cmd = app.add_subcommand("bayes", "Bayes net compilation, queries, checks");
  bayes_cmd->require_subcommand(1);
  CLI::App* bayes_compile = bayes_cmd->add_subcommand("compile", "Emit the net's Lp sentences");
  bayes_compile->add_option("--net", net_path, "Net file")->required();
  bayes_compile->add_option("-o,--output", output_path, "Write sentences to a file");
  CLI::App* bayes_query = bayes_cmd->add_subcommand("query", "Exact conditional probability");
  bayes_query->add_option("--net", net_path, "Net file")->required();
  bayes_query->add_option("--target", target_text, "Target literal, e.g. X1 or !X1")->required();
  bayes_query->add_option("--evidence", evidence_text, "Evidence literals, e.g. 'X2 & !X4'");
  CLI::App* bayes_verify =
      bayes_cmd->add_subcommand("verify", "Check the negation-uniform equation family");
  bayes_verify->add_option("--net", net_path, "Net file")->required();

  CLI::App* believe_cmd = app.add_subcommand("believe", "Statistically founded degree of belief");
  believe_cmd->add_option("--kb", kb_path, "Knowledge base file (.lp)")->required();
  believe_cmd->add_option("--target", target_text, "Ground atom, e.g. 'Fly(Tweety)'")->required();

  lp::AxiomCampaignParams campaign;
  CLI::App* check_cmd = app.add_subcommand("check-axioms", "Run the axiom property suite");
  check_cmd->add_option("--count", campaign.model_count, "Number of random models");
  check_cmd->add_option("--min-size", campaign.min_domain, "Smallest domain size");
  check_cmd->add_option("--max-size", campaign.max_domain, "Largest domain size");
  check_cmd->add_option("--pairs", campaign.formula_pairs, "Formula pairs per model");
  check_cmd->add_flag("--inject-bug", campaign.inject_bug,
                      "Corrupt each base measure (negative control; must fail)");

  CLI::App* repro_cmd = app.add_subcommand("reproduce", "Re-run the paper examples and diff");
  repro_cmd->add_option("--dir", reproduce_dir, "paper-examples directory");
  repro_cmd->add_flag("--update-golden", update_golden, "Rewrite the golden outputs");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  opts.structured = format == "structured";
  if (opts.max_enum > lp::kMaxEnumeration) {
    std::cerr << "error: --max-enum exceeds the hard cap of " << lp::kMaxEnumeration << "\n";
    return kExitUsage;
  }

  std::string command = app.get_subcommands().front()->get_name();
  try {
    if (parse_cmd->parsed()) return cmd_parse(sentences_path, opts);
    if (eval_cmd->parsed()) return cmd_eval(model_path, sentences_path, opts);
    if (entail_cmd->parsed()) return cmd_entail(sentences_path, query_text, opts);
    if (bayes_cmd->parsed()) {
      if (bayes_compile->parsed()) return cmd_bayes_compile(net_path, output_path, opts);
      if (bayes_query->parsed()) return cmd_bayes_query(net_path, target_text, evidence_text, opts);
      return cmd_bayes_verify(net_path, opts);
    }
    if (believe_cmd->parsed()) return cmd_believe(kb_path, target_text, opts);
    if (check_cmd->parsed()) {
      campaign.seed = opts.seed;
      return cmd_check_axioms(campaign, opts);
    }
    if (repro_cmd->parsed()) return cmd_reproduce(reproduce_dir, update_golden);
  } catch (const lp::Error& e) {
    return report_error(e, opts, command, error_class(e));
  }
  return kExitUsage;
}
