#ifndef LP_BAYES_HPP
#define LP_BAYES_HPP

#include <string>
#include <vector>

#include "lp/ast.hpp"
#include "lp/model.hpp"

namespace lp {

struct BayesLiteral {
  std::string var;
  bool positive = true;
};

// Bayes net over binary variables encoded as monadic predicates. Variables
// are listed in topological order; every parent precedes its child; CPTs
// are complete (one row per parent truth pattern, the probability that the
// variable is true).
class BayesNet {
 public:
  struct Data {
    std::vector<std::string> vars;
    std::vector<std::vector<std::uint32_t>> parents;  // indices, all < child index
    std::vector<std::vector<Rational>> cpt;           // cpt[i][parent_mask]
  };

  explicit BayesNet(Data data);

  std::uint32_t size() const { return static_cast<std::uint32_t>(data_.vars.size()); }
  const std::vector<std::string>& vars() const { return data_.vars; }
  const std::vector<std::uint32_t>& parents(std::uint32_t i) const { return data_.parents.at(i); }
  const std::vector<Rational>& cpt(std::uint32_t i) const { return data_.cpt.at(i); }
  std::uint32_t var_index(const std::string& name) const;
  const Data& data() const { return data_; }

  // Joint probability of a full truth assignment (bit i = vars[i]).
  Rational joint_probability(std::uint32_t assignment) const;

 private:
  Data data_;
};

// Net files: `var X1;` / `parents X4 <- X2, X3;` / `cpt X4 | X2 & !X3 = 1/2;`
// statements, '#' comments. Every CPT row must be given explicitly.
BayesNet parse_net(std::string_view text);
BayesNet load_net(const std::string& path);
std::string format_net(const BayesNet& net);

// Vocabulary declaring each variable as a monadic predicate.
Vocabulary net_vocabulary(const BayesNet& net);

// The product-decomposition equation with the predicates uniformly signed
// (signs[i] false negates vars[i] everywhere). All-positive signs give the
// net's defining sentence.
FormulaPtr signed_decomposition(const BayesNet& net, const std::vector<bool>& signs);

// The defining product-decomposition sentence followed by one sentence per
// CPT entry; all well-formed against net_vocabulary(net).
std::vector<FormulaPtr> net_to_lp(const BayesNet& net);

// The induced joint as an Lp-structure: 2^n individuals, one per truth
// assignment, predicate X_i holding where bit i is set, mu_1 = the joint.
Model build_joint(const BayesNet& net);

struct SignedEquationRow {
  std::vector<bool> signs;
  enum class Status { Holds, Undefined, Fails } status = Status::Holds;
  std::string detail;  // values on failure
};

struct NegationUniformReport {
  std::vector<SignedEquationRow> rows;
  std::uint32_t holds = 0;
  std::uint32_t undefined = 0;
  std::uint32_t fails = 0;
  bool all_ok() const { return fails == 0; }
};

// Evaluates one signed equation on a given model (normally the built
// joint); conditioning events of probability zero make it Undefined.
SignedEquationRow check_signed_equation(const Model& model, const BayesNet& net,
                                        const std::vector<bool>& signs);

// All 2^n signed product-decomposition equations on build_joint(net).
NegationUniformReport verify_negation_uniform(const BayesNet& net);

// Exact conditional probability by summation over the joint.
// Throws ZeroProbabilityEvidence when the evidence has probability zero.
Rational query(const BayesNet& net, const BayesLiteral& target,
               const std::vector<BayesLiteral>& evidence);

}  // namespace lp

#endif  // LP_BAYES_HPP
