#ifndef LP_SIMPLEX_HPP
#define LP_SIMPLEX_HPP

#include <cstddef>
#include <vector>

#include "lp/rational.hpp"

namespace lp::simplex {

enum class Rel { Eq, Leq, Geq };

struct Row {
  std::vector<Rational> coeffs;  // size num_vars
  Rel rel = Rel::Eq;
  Rational rhs;
};

// min (or max) objective . x  subject to rows, x >= 0 componentwise.
struct Problem {
  std::size_t num_vars = 0;
  std::vector<Row> rows;
  std::vector<Rational> objective;
  bool maximize = false;
};

enum class Status { Optimal, Infeasible, Unbounded };

struct Solution {
  Status status = Status::Infeasible;
  Rational value;
  std::vector<Rational> point;  // size num_vars when Optimal
};

// Exact two-phase primal simplex, dense tableau, Bland's rule for
// anti-cycling. Terminates on every input.
Solution solve(const Problem& problem);

}  // namespace lp::simplex

#endif  // LP_SIMPLEX_HPP
