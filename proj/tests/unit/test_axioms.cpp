#include <doctest.h>

#include "lp/axioms.hpp"

using namespace lp;

TEST_CASE("the suite passes on random structures") {
  AxiomCampaignParams params;
  params.seed = 2024;
  params.model_count = 12;
  params.formula_pairs = 8;
  SuiteReport report = run_axiom_campaign(params);
  for (const auto& c : report.checks) {
    INFO(c.name, ": ", c.first_failure);
    CHECK(c.failures == 0);
    CHECK(c.trials > 0);
  }
  CHECK(report.all_passed());
}

TEST_CASE("certainty and Bayes checks actually fire") {
  AxiomCampaignParams params;
  params.seed = 7;
  params.model_count = 6;
  params.formula_pairs = 10;
  SuiteReport report = run_axiom_campaign(params);
  for (const auto& c : report.checks) {
    if (c.name.rfind("P1", 0) == 0 || c.name.rfind("L2", 0) == 0)
      CHECK(c.trials > c.skipped);  // at least one non-vacuous trial
  }
}

TEST_CASE("a corrupted base measure is caught (negative control)") {
  AxiomCampaignParams params;
  params.seed = 5;
  params.model_count = 4;
  params.formula_pairs = 6;
  params.inject_bug = true;
  SuiteReport report = run_axiom_campaign(params);
  CHECK_FALSE(report.all_passed());

  // The complement axiom is the canonical casualty of a non-normalized
  // measure.
  for (const auto& c : report.checks)
    if (c.name.rfind("P3", 0) == 0) CHECK(c.failures > 0);
}

TEST_CASE("the campaign is deterministic in the seed") {
  AxiomCampaignParams params;
  params.seed = 31337;
  params.model_count = 3;
  params.formula_pairs = 4;
  SuiteReport a = run_axiom_campaign(params);
  SuiteReport b = run_axiom_campaign(params);
  REQUIRE(a.checks.size() == b.checks.size());
  for (std::size_t i = 0; i < a.checks.size(); ++i) {
    CHECK(a.checks[i].trials == b.checks[i].trials);
    CHECK(a.checks[i].failures == b.checks[i].failures);
    CHECK(a.checks[i].skipped == b.checks[i].skipped);
  }
}
