#ifndef LP_AST_HPP
#define LP_AST_HPP

#include <map>
#include <memory>
#include <set>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "lp/error.hpp"
#include "lp/rational.hpp"

namespace lp {

// The two sorts of the logic. Every term is intrinsically one or the other.
enum class Sort : std::uint8_t { Object, Field };

const char* sort_name(Sort s);

class Term;
class Formula;
using TermPtr = std::shared_ptr<const Term>;
using FormulaPtr = std::shared_ptr<const Formula>;

// ---------------------------------------------------------------------------
// Terms (T0-T2). Nodes are immutable after construction and safe to share.

struct ObjectVar { std::string name; };
struct ObjectConst { std::string name; };
struct FieldVar { std::string name; };

// Either a literal rational or the name of a declared field constant.
struct FieldConst {
  std::variant<Rational, std::string> value;
  bool is_literal() const { return value.index() == 0; }
  const Rational& literal() const { return std::get<Rational>(value); }
  const std::string& name() const { return std::get<std::string>(value); }
};

struct ObjectApp { std::string fn; std::vector<TermPtr> args; };

// fn is one of the distinguished "+", "-", "*", "/" or a declared field
// function evaluated through the vocabulary's hook registry.
struct FieldApp { std::string fn; std::vector<TermPtr> args; };

struct MeasureApp { std::string fn; std::vector<TermPtr> args; };

// [body]{binders} when given == nullptr, else the Definition-1 sugar
// [body | given]{binders}. Binders are object variables, nonempty, distinct.
struct ProbTerm {
  FormulaPtr body;
  FormulaPtr given;
  std::vector<std::string> binders;
  bool is_conditional() const { return given != nullptr; }
};

class Term {
 public:
  using Node = std::variant<ObjectVar, ObjectConst, FieldVar, FieldConst,
                            ObjectApp, FieldApp, MeasureApp, ProbTerm>;

  explicit Term(Node node, SourceSpan span = {})
      : node_(std::move(node)), span_(span) {}

  const Node& node() const { return node_; }
  const SourceSpan& span() const { return span_; }
  Sort sort() const;

  template <typename T>
  const T* get_if() const { return std::get_if<T>(&node_); }

 private:
  Node node_;
  SourceSpan span_;
};

// ---------------------------------------------------------------------------
// Formulas. Core connectives are Pred, Equal, Geq, Not, And, Forall;
// the rest are standard-definition sugar that desugar() eliminates.

struct Pred { std::string name; std::vector<TermPtr> args; };
struct Equal { TermPtr lhs; TermPtr rhs; Sort sort; };
struct Geq { TermPtr lhs; TermPtr rhs; };
struct Leq { TermPtr lhs; TermPtr rhs; };              // sugar
struct Lt { TermPtr lhs; TermPtr rhs; };               // sugar
struct Gt { TermPtr lhs; TermPtr rhs; };               // sugar
struct InInterval { TermPtr value; TermPtr lo; TermPtr hi; };  // sugar
struct Not { FormulaPtr body; };
struct And { FormulaPtr lhs; FormulaPtr rhs; };
struct Or { FormulaPtr lhs; FormulaPtr rhs; };         // sugar
struct Implies { FormulaPtr lhs; FormulaPtr rhs; };    // sugar
struct Forall { std::string var; Sort sort; FormulaPtr body; };
struct Exists { std::string var; Sort sort; FormulaPtr body; };  // sugar

class Formula {
 public:
  using Node = std::variant<Pred, Equal, Geq, Leq, Lt, Gt, InInterval, Not,
                            And, Or, Implies, Forall, Exists>;

  explicit Formula(Node node, SourceSpan span = {})
      : node_(std::move(node)), span_(span) {}

  const Node& node() const { return node_; }
  const SourceSpan& span() const { return span_; }

  template <typename T>
  const T* get_if() const { return std::get_if<T>(&node_); }

 private:
  Node node_;
  SourceSpan span_;
};

// ---------------------------------------------------------------------------
// Factories.

TermPtr object_var(std::string name, SourceSpan span = {});
TermPtr object_const(std::string name, SourceSpan span = {});
TermPtr field_var(std::string name, SourceSpan span = {});
TermPtr field_const(Rational value, SourceSpan span = {});
TermPtr named_field_const(std::string name, SourceSpan span = {});
TermPtr object_app(std::string fn, std::vector<TermPtr> args, SourceSpan span = {});
TermPtr field_app(std::string fn, std::vector<TermPtr> args, SourceSpan span = {});
TermPtr measure_app(std::string fn, std::vector<TermPtr> args, SourceSpan span = {});
TermPtr prob_term(FormulaPtr body, std::vector<std::string> binders, SourceSpan span = {});
TermPtr cond_prob_term(FormulaPtr body, FormulaPtr given,
                       std::vector<std::string> binders, SourceSpan span = {});

FormulaPtr pred(std::string name, std::vector<TermPtr> args, SourceSpan span = {});
FormulaPtr equal(TermPtr lhs, TermPtr rhs, Sort sort, SourceSpan span = {});
FormulaPtr geq(TermPtr lhs, TermPtr rhs, SourceSpan span = {});
FormulaPtr leq(TermPtr lhs, TermPtr rhs, SourceSpan span = {});
FormulaPtr lt(TermPtr lhs, TermPtr rhs, SourceSpan span = {});
FormulaPtr gt(TermPtr lhs, TermPtr rhs, SourceSpan span = {});
FormulaPtr in_interval(TermPtr value, TermPtr lo, TermPtr hi, SourceSpan span = {});
FormulaPtr lnot(FormulaPtr body, SourceSpan span = {});
FormulaPtr land(FormulaPtr lhs, FormulaPtr rhs, SourceSpan span = {});
FormulaPtr lor(FormulaPtr lhs, FormulaPtr rhs, SourceSpan span = {});
FormulaPtr implies(FormulaPtr lhs, FormulaPtr rhs, SourceSpan span = {});
FormulaPtr forall(std::string var, Sort sort, FormulaPtr body, SourceSpan span = {});
FormulaPtr exists(std::string var, Sort sort, FormulaPtr body, SourceSpan span = {});

// ---------------------------------------------------------------------------
// Structural operations. Equality ignores source spans.

bool equal_terms(const Term& a, const Term& b);
bool equal_formulas(const Formula& a, const Formula& b);
inline bool equal_terms(const TermPtr& a, const TermPtr& b) {
  return a == b || (a && b && equal_terms(*a, *b));
}
inline bool equal_formulas(const FormulaPtr& a, const FormulaPtr& b) {
  return a == b || (a && b && equal_formulas(*a, *b));
}

// Free variables with their sorts. ProbTerm binder vectors and quantifiers
// both bind.
using VarSet = std::set<std::pair<std::string, Sort>>;
VarSet free_vars(const Term& t);
VarSet free_vars(const Formula& f);

// True when the node contains no sugar (fixed point of desugar).
bool is_core(const Term& t);
bool is_core(const Formula& f);

// Rewrites to the core connectives: Or/Implies/Exists via not-and-forall,
// Leq/Lt/Gt via Geq, InInterval into a conjunction, and conditional
// probability terms into the Definition-1 quotient.
FormulaPtr desugar(const FormulaPtr& f);
TermPtr desugar(const TermPtr& t);

// Capture-avoiding simultaneous substitution of variables by terms.
// Colliding binders are renamed by appending the smallest unused numeric
// suffix. Throws SortMismatch when a replacement's sort differs from the
// variable's.
using Substitution = std::map<std::string, TermPtr>;
FormulaPtr substitute(const FormulaPtr& f, const Substitution& mapping);
TermPtr substitute(const TermPtr& t, const Substitution& mapping);

// Constant generalization: replaces every occurrence of the object constant
// by a variable, renaming binders that would capture it.
FormulaPtr generalize(const FormulaPtr& f, const std::string& constant,
                      const std::string& var);

// Smallest fresh name of the form base, base1, base2, ... not in `taken`.
std::string fresh_name(const std::string& base, const std::set<std::string>& taken);

}  // namespace lp

#endif  // LP_AST_HPP
