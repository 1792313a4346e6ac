#ifndef LP_BELIEF_HPP
#define LP_BELIEF_HPP

#include <string>
#include <vector>

#include "lp/ast.hpp"
#include "lp/entail.hpp"
#include "lp/vocabulary.hpp"

namespace lp {

// Statistical sentences (the lp-entail fragment) plus ground literal facts,
// one shared vocabulary. The partition is syntactic: a sentence with a
// probability term is statistical, a (possibly negated) predicate over
// object constants is a fact, anything else is rejected.
struct KnowledgeBase {
  Vocabulary vocab;
  std::vector<FormulaPtr> statistical;
  std::vector<FormulaPtr> ground_facts;  // declaration order
};

KnowledgeBase parse_kb(std::string_view text);
KnowledgeBase load_kb(const std::string& path);

// Conjunction of every ground literal mentioning the constant, in
// declaration order. Provability here is literal lookup, not deductive
// closure. Throws NoGroundFacts when nothing is known about the constant.
FormulaPtr known_about(const KnowledgeBase& kb, const std::string& constant);

struct BeliefResult {
  EntailResult entailment;
  FormulaPtr reference_class;           // the conditioning conjunction, generalized
  std::string variable;                 // variable substituted for the constant
  std::vector<FormulaPtr> provenance;   // statistical sentences admitted to the bound
  bool vacuous = false;                 // bound is the uninformative [0, 1]
  bool reference_class_matched = false; // some sentence conditions on this exact class
};

// Degree of belief in a ground monadic atom: conditions the generalized
// target on everything known about the constant and bounds the resulting
// statistical term with the knowledge base's statistical sentences.
BeliefResult believe(const KnowledgeBase& kb, const FormulaPtr& target);

}  // namespace lp

#endif  // LP_BELIEF_HPP
