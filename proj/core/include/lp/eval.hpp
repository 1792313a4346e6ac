#ifndef LP_EVAL_HPP
#define LP_EVAL_HPP

#include <map>
#include <string>
#include <variant>

#include "lp/ast.hpp"
#include "lp/model.hpp"
#include "lp/vocabulary.hpp"

namespace lp {

// Variable assignment sigma: object variables to individuals (by index),
// field variables to rationals.
class Assignment {
 public:
  void set_object(const std::string& var, std::uint32_t individual) {
    objects_[var] = individual;
  }
  void set_field(const std::string& var, Rational value) {
    fields_[var] = std::move(value);
  }

  const std::uint32_t* object(const std::string& var) const {
    auto it = objects_.find(var);
    return it == objects_.end() ? nullptr : &it->second;
  }
  const Rational* field(const std::string& var) const {
    auto it = fields_.find(var);
    return it == fields_.end() ? nullptr : &it->second;
  }

 private:
  std::map<std::string, std::uint32_t> objects_;
  std::map<std::string, Rational> fields_;
};

struct EvalOptions {
  // Per-probability-term tuple budget; clamped to kMaxEnumeration.
  std::uint64_t max_enumeration = kMaxEnumeration;
};

// Individual (object terms) or rational (field terms).
using TermValue = std::variant<std::uint32_t, Rational>;

// Tarskian evaluation over a finite structure. Inputs must be desugared
// and well-formed, with free variables covered by sigma. Probability terms
// enumerate all |domain|^n binder tuples and return the exact mu_n measure
// of the satisfying set.
//
// Universal quantification over a field variable is decided when the
// matrix constrains the variable only through comparisons against field
// terms not containing it: the comparison values (over all assignments of
// object binders in scope), midpoints between consecutive ones, and points
// beyond the extremes decide the quantifier. Anything else throws
// FieldQuantifierUnsupported.
bool eval_formula(const LpStructure& structure, const Vocabulary& vocab,
                  const Assignment& sigma, const Formula& formula,
                  const EvalOptions& options = {});

TermValue eval_term(const LpStructure& structure, const Vocabulary& vocab,
                    const Assignment& sigma, const Term& term,
                    const EvalOptions& options = {});

// Field-term convenience; throws SortMismatch on an object term.
Rational eval_field_term(const LpStructure& structure, const Vocabulary& vocab,
                         const Assignment& sigma, const Term& term,
                         const EvalOptions& options = {});

}  // namespace lp

#endif  // LP_EVAL_HPP
