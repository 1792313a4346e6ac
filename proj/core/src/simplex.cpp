#include "lp/simplex.hpp"

#include <optional>

#include "lp/error.hpp"

namespace lp::simplex {

namespace {

class Tableau {
 public:
  explicit Tableau(const Problem& p) : num_vars_(p.num_vars) {
    const std::size_t m = p.rows.size();

    // Layout: structural vars, then one slack per inequality, then one
    // artificial per row that lacks an identity column after rhs
    // normalization.
    std::size_t slacks = 0;
    for (const auto& r : p.rows)
      if (r.rel != Rel::Eq) ++slacks;
    first_slack_ = num_vars_;
    first_artificial_ = num_vars_ + slacks;
    ncols_ = first_artificial_ + m;  // upper bound; unused artificials stay zero

    rows_.assign(m, std::vector<Rational>(ncols_ + 1, Rational(0)));
    basis_.assign(m, 0);

    std::size_t slack = first_slack_;
    std::size_t artificial = first_artificial_;
    for (std::size_t i = 0; i < m; ++i) {
      const Row& r = p.rows[i];
      if (r.coeffs.size() != num_vars_)
        throw Error(ErrorKind::Internal, "simplex row width mismatch");
      bool flip = r.rhs.sign() < 0;
      for (std::size_t j = 0; j < num_vars_; ++j)
        rows_[i][j] = flip ? -r.coeffs[j] : r.coeffs[j];
      rows_[i][ncols_] = flip ? -r.rhs : r.rhs;

      Rel rel = r.rel;
      if (flip && rel != Rel::Eq) rel = rel == Rel::Leq ? Rel::Geq : Rel::Leq;

      if (rel == Rel::Leq) {
        rows_[i][slack] = Rational(1);
        basis_[i] = slack++;
      } else if (rel == Rel::Geq) {
        rows_[i][slack] = Rational(-1);
        ++slack;
        rows_[i][artificial] = Rational(1);
        basis_[i] = artificial++;
      } else {
        rows_[i][artificial] = Rational(1);
        basis_[i] = artificial++;
      }
    }
  }

  // Phase 1: minimize the sum of artificials; returns false on infeasible.
  bool phase1() {
    std::vector<Rational> cost(ncols_, Rational(0));
    for (std::size_t j = first_artificial_; j < ncols_; ++j) cost[j] = Rational(1);
    price_out(cost);
    if (iterate(/*artificials_enter=*/true) == Status::Unbounded)
      throw Error(ErrorKind::Internal, "phase-1 objective cannot be unbounded");
    return objective_value().is_zero();
  }

  // Degenerate pivots move leftover basic artificials out so phase 2 cannot
  // raise them. A row with no structural entry left is redundant and inert.
  void drive_out_artificials() {
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (basis_[i] < first_artificial_) continue;
      for (std::size_t j = 0; j < first_artificial_; ++j) {
        if (!rows_[i][j].is_zero()) {
          pivot(i, j);
          break;
        }
      }
    }
  }

  // Phase 2 with the real objective (minimization).
  Status phase2(const std::vector<Rational>& objective) {
    std::vector<Rational> cost(ncols_, Rational(0));
    for (std::size_t j = 0; j < num_vars_; ++j) cost[j] = objective[j];
    price_out(cost);
    return iterate(/*artificials_enter=*/false);
  }

  Rational objective_value() const { return -cost_[ncols_]; }

  std::vector<Rational> point() const {
    std::vector<Rational> x(num_vars_, Rational(0));
    for (std::size_t i = 0; i < rows_.size(); ++i)
      if (basis_[i] < num_vars_) x[basis_[i]] = rows_[i][ncols_];
    return x;
  }

 private:
  void price_out(const std::vector<Rational>& cost) {
    cost_.assign(ncols_ + 1, Rational(0));
    for (std::size_t j = 0; j < ncols_; ++j) cost_[j] = cost[j];
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      const Rational& cb = cost[basis_[i]];
      if (cb.is_zero()) continue;
      for (std::size_t j = 0; j <= ncols_; ++j) cost_[j] -= cb * rows_[i][j];
    }
  }

  Status iterate(bool artificials_enter) {
    const std::size_t limit = artificials_enter ? ncols_ : first_artificial_;
    for (;;) {
      // Bland: smallest-index column with negative reduced cost.
      std::optional<std::size_t> entering;
      for (std::size_t j = 0; j < limit; ++j) {
        if (cost_[j].sign() < 0) {
          entering = j;
          break;
        }
      }
      if (!entering) return Status::Optimal;

      // Smallest ratio; ties broken by smallest basis variable index.
      std::optional<std::size_t> leaving;
      Rational best_ratio(0);
      for (std::size_t i = 0; i < rows_.size(); ++i) {
        const Rational& a = rows_[i][*entering];
        if (a.sign() <= 0) continue;
        Rational ratio = rows_[i][ncols_] / a;
        if (!leaving || ratio < best_ratio ||
            (ratio == best_ratio && basis_[i] < basis_[*leaving])) {
          leaving = i;
          best_ratio = ratio;
        }
      }
      if (!leaving) return Status::Unbounded;
      pivot(*leaving, *entering);
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    std::vector<Rational>& row = rows_[r];
    const Rational p = row[c];
    for (auto& v : row) v /= p;
    for (std::size_t i = 0; i < rows_.size(); ++i) {
      if (i == r) continue;
      const Rational f = rows_[i][c];
      if (f.is_zero()) continue;
      for (std::size_t j = 0; j <= ncols_; ++j) rows_[i][j] -= f * row[j];
    }
    const Rational fc = cost_[c];
    if (!fc.is_zero())
      for (std::size_t j = 0; j <= ncols_; ++j) cost_[j] -= fc * row[j];
    basis_[r] = c;
  }

  std::size_t num_vars_;
  std::size_t first_slack_ = 0;
  std::size_t first_artificial_ = 0;
  std::size_t ncols_ = 0;
  std::vector<std::vector<Rational>> rows_;
  std::vector<Rational> cost_;
  std::vector<std::size_t> basis_;
};

}  // namespace

Solution solve(const Problem& problem) {
  if (problem.objective.size() != problem.num_vars)
    throw Error(ErrorKind::Internal, "simplex objective width mismatch");

  std::vector<Rational> objective = problem.objective;
  if (problem.maximize)
    for (auto& c : objective) c = -c;

  Tableau t(problem);
  Solution sol;
  if (!t.phase1()) {
    sol.status = Status::Infeasible;
    return sol;
  }
  t.drive_out_artificials();
  sol.status = t.phase2(objective);
  if (sol.status != Status::Optimal) return sol;
  sol.value = t.objective_value();
  if (problem.maximize) sol.value = -sol.value;
  sol.point = t.point();
  return sol;
}

}  // namespace lp::simplex
