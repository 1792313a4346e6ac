#ifndef LP_AXIOMS_HPP
#define LP_AXIOMS_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "lp/model.hpp"

namespace lp {

struct CheckResult {
  std::string name;
  std::uint64_t trials = 0;
  std::uint64_t failures = 0;
  std::uint64_t skipped = 0;  // guard not met (e.g. Bayes' theorem on measure zero)
  std::string first_failure;
};

struct SuiteReport {
  std::vector<CheckResult> checks;

  bool all_passed() const {
    for (const auto& c : checks)
      if (c.failures) return false;
    return true;
  }
  void merge(const SuiteReport& other);
};

struct AxiomSuiteParams {
  std::uint64_t seed = 1;
  std::uint32_t formula_pairs = 20;
};

// Executable property suite over one structure: probability-function
// axioms (positivity, complement, subadditivity, additivity on disjoint
// formulas, certainty of valid formulas), mutual-implication extensional
// equality, inclusion-exclusion, Bayes' theorem, the closed-formula
// zero-one law, tautology irrelevance, binder-permutation coherence, and
// monotonicity. Formulas are generated over the structure's predicates;
// every check is exact.
SuiteReport axiom_suite(const Model& model, const AxiomSuiteParams& params);

struct AxiomCampaignParams {
  std::uint64_t seed = 1;
  std::uint32_t model_count = 100;
  std::uint32_t min_domain = 1;
  std::uint32_t max_domain = 6;
  std::uint32_t formula_pairs = 20;
  bool inject_bug = false;  // corrupt each base measure; negative control
};

// Runs the suite over freshly generated random structures; deterministic in
// the seed.
SuiteReport run_axiom_campaign(const AxiomCampaignParams& params);

}  // namespace lp

#endif  // LP_AXIOMS_HPP
