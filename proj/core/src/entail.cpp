#include "lp/entail.hpp"

#include <algorithm>
#include <set>

#include "lp/error.hpp"

namespace lp {

namespace {

[[noreturn]] void outside(const std::string& msg, SourceSpan span = {}) {
  throw Error(ErrorKind::OutsideFragment, msg, span);
}

Rational fold_constant(const Term& t) {
  if (const auto* c = t.get_if<FieldConst>()) {
    if (c->is_literal()) return c->literal();
    outside("named field constants have no value in an entailment problem", t.span());
  }
  if (const auto* app = t.get_if<FieldApp>()) {
    if (app->fn == "+" || app->fn == "-" || app->fn == "*" || app->fn == "/") {
      Rational lhs = fold_constant(*app->args[0]);
      Rational rhs = fold_constant(*app->args[1]);
      if (app->fn == "+") return lhs + rhs;
      if (app->fn == "-") return lhs - rhs;
      if (app->fn == "*") return lhs * rhs;
      if (rhs.is_zero()) throw Error(ErrorKind::DivisionByZero, "division by zero", t.span());
      return lhs / rhs;
    }
  }
  outside("expected a numeric constant", t.span());
}

void check_unit_range(const Rational& v, SourceSpan span) {
  if (v < Rational(0) || v > Rational(1))
    outside("probability constant " + v.str() + " is outside [0, 1]", span);
}

// phi must be a boolean combination of monadic predicates applied to the
// binder variable.
void validate_monadic(const Formula& f, const std::string& binder,
                      std::set<std::string>& preds) {
  struct V {
    const Formula& f;
    const std::string& binder;
    std::set<std::string>& preds;
    void operator()(const Pred& x) const {
      if (x.args.size() != 1) outside("predicate '" + x.name + "' is not monadic", f.span());
      const auto* v = x.args[0]->get_if<ObjectVar>();
      if (!v || v->name != binder)
        outside("predicate argument must be the bound variable '" + binder + "'", f.span());
      preds.insert(x.name);
    }
    void operator()(const Not& x) const { validate_monadic(*x.body, binder, preds); }
    void operator()(const And& x) const { both(x.lhs, x.rhs); }
    void operator()(const Or& x) const { both(x.lhs, x.rhs); }
    void operator()(const Implies& x) const { both(x.lhs, x.rhs); }
    void both(const FormulaPtr& a, const FormulaPtr& b) const {
      validate_monadic(*a, binder, preds);
      validate_monadic(*b, binder, preds);
    }
    void operator()(const Equal&) const { fail("equalities"); }
    void operator()(const Geq&) const { fail("field comparisons"); }
    void operator()(const Leq&) const { fail("field comparisons"); }
    void operator()(const Lt&) const { fail("field comparisons"); }
    void operator()(const Gt&) const { fail("field comparisons"); }
    void operator()(const InInterval&) const { fail("field comparisons"); }
    void operator()(const Forall&) const { fail("quantifiers"); }
    void operator()(const Exists&) const { fail("quantifiers"); }
    [[noreturn]] void fail(const char* what) const {
      outside(std::string(what) + " are outside the entailment fragment", f.span());
    }
  };
  std::visit(V{f, binder, preds}, f.node());
}

std::size_t atom_index(const std::vector<std::string>& atoms, const std::string& name,
                       SourceSpan span) {
  auto it = std::find(atoms.begin(), atoms.end(), name);
  if (it == atoms.end())
    outside("predicate '" + name + "' is not among the problem's atoms", span);
  return static_cast<std::size_t>(it - atoms.begin());
}

}  // namespace

bool world_satisfies(const Formula& formula, const std::vector<std::string>& atoms,
                     std::uint32_t world) {
  struct V {
    const Formula& f;
    const std::vector<std::string>& atoms;
    std::uint32_t world;
    bool operator()(const Pred& x) const {
      std::size_t i = atom_index(atoms, x.name, f.span());
      return (world >> i) & 1u;
    }
    bool operator()(const Not& x) const { return !world_satisfies(*x.body, atoms, world); }
    bool operator()(const And& x) const {
      return world_satisfies(*x.lhs, atoms, world) && world_satisfies(*x.rhs, atoms, world);
    }
    bool operator()(const Or& x) const {
      return world_satisfies(*x.lhs, atoms, world) || world_satisfies(*x.rhs, atoms, world);
    }
    bool operator()(const Implies& x) const {
      return !world_satisfies(*x.lhs, atoms, world) || world_satisfies(*x.rhs, atoms, world);
    }
    bool operator()(const Equal&) const { return fail(); }
    bool operator()(const Geq&) const { return fail(); }
    bool operator()(const Leq&) const { return fail(); }
    bool operator()(const Lt&) const { return fail(); }
    bool operator()(const Gt&) const { return fail(); }
    bool operator()(const InInterval&) const { return fail(); }
    bool operator()(const Forall&) const { return fail(); }
    bool operator()(const Exists&) const { return fail(); }
    [[noreturn]] bool fail() const {
      outside("only boolean combinations of the atoms are allowed here", f.span());
    }
  };
  return std::visit(V{formula, atoms, world}, formula.node());
}

LinearProgram build_lp(const EntailmentProblem& problem) {
  if (problem.atoms.size() > kMaxAtoms)
    throw Error(ErrorKind::TooManyAtoms,
                "entailment supports at most " + std::to_string(kMaxAtoms) + " atoms");
  const std::size_t n = std::size_t{1} << problem.atoms.size();

  LinearProgram lp;
  lp.num_worlds = n;

  auto indicator = [&](const Formula& f) {
    std::vector<Rational> coeffs(n, Rational(0));
    for (std::uint32_t w = 0; w < n; ++w)
      if (world_satisfies(f, problem.atoms, w)) coeffs[w] = Rational(1);
    return coeffs;
  };

  for (const auto& [formula, constraint] : problem.base) {
    std::vector<Rational> coeffs = indicator(*formula);
    switch (constraint.kind) {
      case Constraint::Kind::Eq:
        check_unit_range(constraint.value, formula->span());
        lp.rows.push_back({coeffs, simplex::Rel::Eq, constraint.value});
        break;
      case Constraint::Kind::Geq:
        check_unit_range(constraint.value, formula->span());
        lp.rows.push_back({coeffs, simplex::Rel::Geq, constraint.value});
        break;
      case Constraint::Kind::Leq:
        check_unit_range(constraint.value, formula->span());
        lp.rows.push_back({coeffs, simplex::Rel::Leq, constraint.value});
        break;
      case Constraint::Kind::In:
        check_unit_range(constraint.value, formula->span());
        check_unit_range(constraint.hi, formula->span());
        lp.rows.push_back({coeffs, simplex::Rel::Geq, constraint.value});
        lp.rows.push_back({std::move(coeffs), simplex::Rel::Leq, constraint.hi});
        break;
    }
  }

  lp.rows.push_back({std::vector<Rational>(n, Rational(1)), simplex::Rel::Eq, Rational(1)});
  lp.objective = indicator(*problem.query);
  return lp;
}

std::optional<Interval> bounds(const EntailmentProblem& problem) {
  LinearProgram lp = build_lp(problem);
  simplex::Problem sp;
  sp.num_vars = lp.num_worlds;
  sp.rows = lp.rows;
  sp.objective = lp.objective;
  sp.maximize = false;
  auto lo = simplex::solve(sp);
  if (lo.status == simplex::Status::Infeasible) return std::nullopt;
  if (lo.status != simplex::Status::Optimal)
    throw Error(ErrorKind::Internal, "bounded objective reported unbounded");
  sp.maximize = true;
  auto hi = simplex::solve(sp);
  if (hi.status != simplex::Status::Optimal)
    throw Error(ErrorKind::Internal, "bounded objective reported unbounded");
  return Interval{lo.value, hi.value};
}

// ---------------------------------------------------------------------------
// Sentence fragment.

FragmentSentence parse_fragment_sentence(const FormulaPtr& sentence) {
  using Rel = FragmentSentence::Rel;

  auto is_prob = [](const TermPtr& t) { return t->get_if<ProbTerm>() != nullptr; };

  const TermPtr* prob = nullptr;
  const TermPtr* constant = nullptr;
  Rel rel;
  std::optional<Rational> hi;

  struct Cmp {
    TermPtr lhs;
    TermPtr rhs;
    Rel rel;
    Rel flipped;
  };
  std::optional<Cmp> cmp;
  if (const auto* x = sentence->get_if<Equal>()) {
    if (x->sort != Sort::Field)
      outside("object equalities are outside the entailment fragment", sentence->span());
    cmp = Cmp{x->lhs, x->rhs, Rel::Eq, Rel::Eq};
  } else if (const auto* x = sentence->get_if<Geq>()) {
    cmp = Cmp{x->lhs, x->rhs, Rel::Geq, Rel::Leq};
  } else if (const auto* x = sentence->get_if<Leq>()) {
    cmp = Cmp{x->lhs, x->rhs, Rel::Leq, Rel::Geq};
  } else if (const auto* x = sentence->get_if<Gt>()) {
    cmp = Cmp{x->lhs, x->rhs, Rel::Gt, Rel::Lt};
  } else if (const auto* x = sentence->get_if<Lt>()) {
    cmp = Cmp{x->lhs, x->rhs, Rel::Lt, Rel::Gt};
  }

  Rational value;
  if (cmp) {
    if (is_prob(cmp->lhs)) {
      prob = &cmp->lhs;
      constant = &cmp->rhs;
      rel = cmp->rel;
    } else if (is_prob(cmp->rhs)) {
      prob = &cmp->rhs;
      constant = &cmp->lhs;
      rel = cmp->flipped;
    } else {
      outside("expected a probability term on one side of the comparison", sentence->span());
    }
    value = fold_constant(**constant);
  } else if (const auto* x = sentence->get_if<InInterval>()) {
    if (!is_prob(x->value))
      outside("expected a probability term before 'in'", sentence->span());
    prob = &x->value;
    rel = Rel::In;
    value = fold_constant(*x->lo);
    hi = fold_constant(*x->hi);
  } else {
    outside("expected `[phi]{x} rel c`, `[phi|psi]{x} rel c`, or an interval sentence",
            sentence->span());
  }

  const auto* pt = (*prob)->get_if<ProbTerm>();
  if (pt->binders.size() != 1)
    outside("probability terms in the fragment bind exactly one variable", (*prob)->span());
  const std::string& binder = pt->binders[0];

  std::set<std::string> preds;
  validate_monadic(*pt->body, binder, preds);
  if (pt->given) validate_monadic(*pt->given, binder, preds);

  check_unit_range(value, sentence->span());
  if (hi) {
    check_unit_range(*hi, sentence->span());
    if (*hi < value) outside("empty interval constraint", sentence->span());
  }

  FragmentSentence out;
  out.phi = pt->body;
  out.psi = pt->given;
  out.rel = rel;
  out.value = value;
  out.hi = hi ? *hi : Rational(0);
  return out;
}

// ---------------------------------------------------------------------------
// Conditional-query bounds via the Charnes-Cooper transform. Variables are
// q_0..q_{n-1} (scaled world weights), t = q total (the scale), and an
// auxiliary slack bound used by the strict-feasibility and openness solves.

namespace {

struct TransformedLp {
  std::size_t num_worlds = 0;
  std::vector<std::string> atoms;
  std::vector<simplex::Row> base_rows;      // over q, t (homogeneous + normalization)
  std::vector<std::size_t> strict_rows;     // indices into base_rows; slack must be > 0
  std::vector<Rational> denominator;        // d: indicator of the query's conditioning worlds
  std::vector<Rational> objective;          // a: indicator of phi_q & psi_q worlds
};

constexpr std::size_t kT = 0;  // offset of t after the q block

std::vector<Rational> pad(std::vector<Rational> v, std::size_t width) {
  v.resize(width, Rational(0));
  return v;
}

void collect_pred_names(const Formula& f, std::set<std::string>& preds) {
  if (const auto* p = f.get_if<Pred>()) { preds.insert(p->name); return; }
  if (const auto* n = f.get_if<Not>()) { collect_pred_names(*n->body, preds); return; }
  if (const auto* a = f.get_if<And>()) {
    collect_pred_names(*a->lhs, preds);
    collect_pred_names(*a->rhs, preds);
    return;
  }
  if (const auto* o = f.get_if<Or>()) {
    collect_pred_names(*o->lhs, preds);
    collect_pred_names(*o->rhs, preds);
    return;
  }
  if (const auto* i = f.get_if<Implies>()) {
    collect_pred_names(*i->lhs, preds);
    collect_pred_names(*i->rhs, preds);
  }
}

TransformedLp build_transformed(const std::vector<FragmentSentence>& base,
                                const FormulaPtr& query_phi, const FormulaPtr& query_psi) {
  TransformedLp out;

  std::set<std::string> atom_set;
  for (const auto& s : base) {
    collect_pred_names(*s.phi, atom_set);
    if (s.psi) collect_pred_names(*s.psi, atom_set);
  }
  collect_pred_names(*query_phi, atom_set);
  if (query_psi) collect_pred_names(*query_psi, atom_set);

  out.atoms.assign(atom_set.begin(), atom_set.end());
  if (out.atoms.size() > kMaxAtoms)
    throw Error(ErrorKind::TooManyAtoms,
                "entailment supports at most " + std::to_string(kMaxAtoms) + " atoms");
  const std::size_t n = std::size_t{1} << out.atoms.size();
  out.num_worlds = n;
  const std::size_t width = n + 1;  // q block + t

  auto indicator = [&](const Formula& f) {
    std::vector<Rational> coeffs(width, Rational(0));
    for (std::uint32_t w = 0; w < n; ++w)
      if (world_satisfies(f, out.atoms, w)) coeffs[w] = Rational(1);
    return coeffs;
  };
  auto conj_indicator = [&](const Formula& a, const Formula& b) {
    std::vector<Rational> coeffs(width, Rational(0));
    for (std::uint32_t w = 0; w < n; ++w)
      if (world_satisfies(a, out.atoms, w) && world_satisfies(b, out.atoms, w))
        coeffs[w] = Rational(1);
    return coeffs;
  };

  // Normalization: sum(q) - t = 0.
  {
    std::vector<Rational> coeffs(width, Rational(1));
    coeffs[n + kT] = Rational(-1);
    out.base_rows.push_back({std::move(coeffs), simplex::Rel::Eq, Rational(0)});
  }

  using Rel = FragmentSentence::Rel;
  for (const auto& s : base) {
    // Unconditional [phi] rel c:          ind(phi).q - c t rel 0
    // Conditional [phi|psi] rel c:        ind(phi&psi).q - c ind(psi).q rel 0
    //                                     plus ind(psi).q > 0
    std::vector<Rational> lhs;
    if (s.psi) {
      lhs = conj_indicator(*s.phi, *s.psi);
      std::vector<Rational> den = indicator(*s.psi);
      auto scale = [&](const Rational& c) {
        std::vector<Rational> row = lhs;
        for (std::size_t w = 0; w < n; ++w) row[w] -= c * den[w];
        return row;
      };
      switch (s.rel) {
        case Rel::Eq:
          out.base_rows.push_back({scale(s.value), simplex::Rel::Eq, Rational(0)});
          break;
        case Rel::Geq:
        case Rel::Gt:
          out.base_rows.push_back({scale(s.value), simplex::Rel::Geq, Rational(0)});
          if (s.rel == Rel::Gt) out.strict_rows.push_back(out.base_rows.size() - 1);
          break;
        case Rel::Leq:
        case Rel::Lt:
          out.base_rows.push_back({scale(s.value), simplex::Rel::Leq, Rational(0)});
          if (s.rel == Rel::Lt) out.strict_rows.push_back(out.base_rows.size() - 1);
          break;
        case Rel::In:
          out.base_rows.push_back({scale(s.value), simplex::Rel::Geq, Rational(0)});
          out.base_rows.push_back({scale(s.hi), simplex::Rel::Leq, Rational(0)});
          break;
      }
      // Conditioning event must have positive probability.
      out.base_rows.push_back({std::move(den), simplex::Rel::Geq, Rational(0)});
      out.strict_rows.push_back(out.base_rows.size() - 1);
    } else {
      lhs = indicator(*s.phi);
      auto with_t = [&](const Rational& c) {
        std::vector<Rational> row = lhs;
        row[n + kT] = -c;
        return row;
      };
      switch (s.rel) {
        case Rel::Eq:
          out.base_rows.push_back({with_t(s.value), simplex::Rel::Eq, Rational(0)});
          break;
        case Rel::Geq:
        case Rel::Gt:
          out.base_rows.push_back({with_t(s.value), simplex::Rel::Geq, Rational(0)});
          if (s.rel == Rel::Gt) out.strict_rows.push_back(out.base_rows.size() - 1);
          break;
        case Rel::Leq:
        case Rel::Lt:
          out.base_rows.push_back({with_t(s.value), simplex::Rel::Leq, Rational(0)});
          if (s.rel == Rel::Lt) out.strict_rows.push_back(out.base_rows.size() - 1);
          break;
        case Rel::In:
          out.base_rows.push_back({with_t(s.value), simplex::Rel::Geq, Rational(0)});
          out.base_rows.push_back({with_t(s.hi), simplex::Rel::Leq, Rational(0)});
          break;
      }
    }
  }

  out.denominator = query_psi ? indicator(*query_psi)
                              : std::vector<Rational>(pad({}, width));
  if (!query_psi)
    for (std::size_t w = 0; w < n; ++w) out.denominator[w] = Rational(1);

  out.objective = query_psi ? conj_indicator(*query_phi, *query_psi) : indicator(*query_phi);
  return out;
}

// Max of the smallest strict-row slack (capped at 1) subject to `rows`;
// the epsilon variable is appended as the last column.
Rational max_min_slack(const TransformedLp& lp, std::vector<simplex::Row> rows,
                       bool include_denominator_eq, bool fix_t_to_one,
                       std::optional<std::pair<std::vector<Rational>, Rational>> face) {
  const std::size_t width = lp.num_worlds + 1;
  const std::size_t eps = width;  // epsilon column

  std::vector<simplex::Row> all;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    simplex::Row r = rows[i];
    r.coeffs = pad(std::move(r.coeffs), width + 1);
    bool strict = std::find(lp.strict_rows.begin(), lp.strict_rows.end(), i) != lp.strict_rows.end();
    if (strict) {
      if (r.rel == simplex::Rel::Geq) r.coeffs[eps] = Rational(-1);
      else if (r.rel == simplex::Rel::Leq) r.coeffs[eps] = Rational(1);
    }
    all.push_back(std::move(r));
  }
  if (include_denominator_eq) {
    simplex::Row r{pad(lp.denominator, width + 1), simplex::Rel::Eq, Rational(1)};
    all.push_back(std::move(r));
  }
  if (fix_t_to_one) {
    std::vector<Rational> coeffs(width + 1, Rational(0));
    coeffs[lp.num_worlds + kT] = Rational(1);
    all.push_back({std::move(coeffs), simplex::Rel::Eq, Rational(1)});
  }
  if (face) {
    all.push_back({pad(face->first, width + 1), simplex::Rel::Eq, face->second});
  }
  {
    std::vector<Rational> coeffs(width + 1, Rational(0));
    coeffs[eps] = Rational(1);
    all.push_back({std::move(coeffs), simplex::Rel::Leq, Rational(1)});
  }

  simplex::Problem p;
  p.num_vars = width + 1;
  p.rows = std::move(all);
  p.objective.assign(width + 1, Rational(0));
  p.objective[eps] = Rational(1);
  p.maximize = true;
  auto sol = simplex::solve(p);
  if (sol.status == simplex::Status::Infeasible) return Rational(-1);  // sentinel
  if (sol.status != simplex::Status::Optimal)
    throw Error(ErrorKind::Internal, "capped slack objective reported unbounded");
  return sol.value;
}

}  // namespace

EntailResult entail_sentences(const std::vector<FormulaPtr>& sentences,
                              const TermPtr& query) {
  const auto* qt = query->get_if<ProbTerm>();
  if (!qt) outside("the query must be a probability term", query->span());
  if (qt->binders.size() != 1)
    outside("the query probability term must bind exactly one variable", query->span());
  {
    std::set<std::string> preds;
    validate_monadic(*qt->body, qt->binders[0], preds);
    if (qt->given) validate_monadic(*qt->given, qt->binders[0], preds);
  }

  std::vector<FragmentSentence> base;
  base.reserve(sentences.size());
  for (const auto& s : sentences) base.push_back(parse_fragment_sentence(s));

  TransformedLp lp = build_transformed(base, qt->body, qt->given);
  const std::size_t width = lp.num_worlds + 1;

  EntailResult result;

  // 1. Closed base feasibility over actual distributions (t = 1).
  {
    simplex::Problem p;
    p.num_vars = width;
    p.rows = lp.base_rows;
    std::vector<Rational> t_row(width, Rational(0));
    t_row[lp.num_worlds + kT] = Rational(1);
    p.rows.push_back({std::move(t_row), simplex::Rel::Eq, Rational(1)});
    p.objective.assign(width, Rational(0));
    if (simplex::solve(p).status == simplex::Status::Infeasible) {
      result.status = EntailResult::Status::Infeasible;
      return result;
    }
  }

  // 2. Strict base feasibility: some distribution satisfies every strict
  //    constraint with room to spare.
  if (!lp.strict_rows.empty()) {
    Rational eps = max_min_slack(lp, lp.base_rows, /*denominator=*/false, /*t=1*/ true, {});
    if (eps <= Rational(0)) {
      result.status = EntailResult::Status::Infeasible;
      return result;
    }
  }

  // 3. Transformed feasibility: a strictly feasible distribution giving the
  //    query's conditioning event positive probability.
  {
    Rational eps = max_min_slack(lp, lp.base_rows, /*denominator=*/true, /*t=1*/ false, {});
    if (eps <= Rational(0)) {
      result.status = EntailResult::Status::UndefinedQuery;
      return result;
    }
  }

  // 4. Tightest bounds.
  simplex::Problem p;
  p.num_vars = width;
  p.rows = lp.base_rows;
  p.rows.push_back({lp.denominator, simplex::Rel::Eq, Rational(1)});
  p.objective = lp.objective;
  p.maximize = false;
  auto lo = simplex::solve(p);
  p.maximize = true;
  auto hi = simplex::solve(p);
  if (lo.status != simplex::Status::Optimal || hi.status != simplex::Status::Optimal)
    throw Error(ErrorKind::Internal, "query objective must be bounded and feasible");

  result.status = EntailResult::Status::Bounded;
  result.interval = Interval{lo.value, hi.value};

  // 5. Endpoint attainment: an endpoint is open when every optimal solution
  //    pins some strict constraint to its boundary.
  if (!lp.strict_rows.empty()) {
    Rational eps_lo = max_min_slack(lp, lp.base_rows, true, false,
                                    std::make_pair(lp.objective, lo.value));
    Rational eps_hi = max_min_slack(lp, lp.base_rows, true, false,
                                    std::make_pair(lp.objective, hi.value));
    result.lo_open = eps_lo <= Rational(0);
    result.hi_open = eps_hi <= Rational(0);
  }
  return result;
}

}  // namespace lp
