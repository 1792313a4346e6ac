#ifndef LP_ENTAIL_HPP
#define LP_ENTAIL_HPP

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "lp/ast.hpp"
#include "lp/rational.hpp"
#include "lp/simplex.hpp"

namespace lp {

// Closed rational interval inside [0, 1].
struct Interval {
  Rational lo;
  Rational hi;
};

constexpr std::uint32_t kMaxAtoms = 20;  // 2^20 possible-world cap

// Constraint on the probability of a formula: = v, >= v, <= v, in [lo, hi].
struct Constraint {
  enum class Kind { Eq, Geq, Leq, In };
  Kind kind = Kind::Eq;
  Rational value;
  Rational hi;  // used by In only

  static Constraint eq(Rational v) { return {Kind::Eq, std::move(v), Rational(0)}; }
  static Constraint geq(Rational v) { return {Kind::Geq, std::move(v), Rational(0)}; }
  static Constraint leq(Rational v) { return {Kind::Leq, std::move(v), Rational(0)}; }
  static Constraint in(Rational lo, Rational hi) { return {Kind::In, std::move(lo), std::move(hi)}; }
};

// Probabilistic entailment over possible worlds: the atoms are monadic
// predicates of one shared variable, worlds are truth assignments to them,
// base formulas and the query are quantifier-free probability-term-free
// combinations of the atoms.
struct EntailmentProblem {
  std::vector<std::string> atoms;
  std::vector<std::pair<FormulaPtr, Constraint>> base;
  FormulaPtr query;
};

// Truth of a formula over atoms at a world (bit i of `world` is atoms[i]).
// Throws OutsideFragment on anything but predicate combinations.
bool world_satisfies(const Formula& formula, const std::vector<std::string>& atoms,
                     std::uint32_t world);

// Canonical world equations: one row per base constraint with coefficient 1
// on each satisfying world, plus the normalization row sum(p_w) = 1 (last).
struct LinearProgram {
  std::size_t num_worlds = 0;
  std::vector<simplex::Row> rows;
  std::vector<Rational> objective;
};

LinearProgram build_lp(const EntailmentProblem& problem);

// Tightest bounds of the query probability over the feasible weight
// vectors, by exact simplex; nullopt when the base is unsatisfiable.
std::optional<Interval> bounds(const EntailmentProblem& problem);

// ---------------------------------------------------------------------------
// The Lp sentence fragment: `[phi(x)]{x} rel c` and `[phi(x)|psi(x)]{x}
// rel c` with rel in {=, >=, <=, >, <, in [a,b]} and phi, psi monadic over
// the binder. Conditional constraints linearize to
// [phi & psi] rel c*[psi] together with [psi] > 0.

struct FragmentSentence {
  FormulaPtr phi;
  FormulaPtr psi;  // null when unconditional
  enum class Rel { Eq, Geq, Leq, Gt, Lt, In } rel = Rel::Eq;
  Rational value;
  Rational hi;  // In only
};

// Normalizes one sentence into the fragment; throws OutsideFragment with a
// precise diagnostic otherwise.
FragmentSentence parse_fragment_sentence(const FormulaPtr& sentence);

struct EntailResult {
  enum class Status {
    Bounded,
    Infeasible,      // no probability assignment satisfies the base
    UndefinedQuery,  // base satisfiable, but the query's conditioning event
                     // has probability zero in every satisfying assignment
  };
  Status status = Status::Infeasible;
  Interval interval;
  // An open endpoint is approached but not attained (it would require a
  // strict constraint, e.g. a conditioning event's positivity, to reach 0).
  bool lo_open = false;
  bool hi_open = false;
};

// Bounds the query probability term (plain or conditional, single binder)
// under the base sentences. Exact; strict constraints are honored through
// the endpoint-openness flags.
EntailResult entail_sentences(const std::vector<FormulaPtr>& sentences,
                              const TermPtr& query);

}  // namespace lp

#endif  // LP_ENTAIL_HPP
