#include <doctest.h>

#include <random>

#include "lp/entail.hpp"
#include "lp/eval.hpp"
#include "lp/parser.hpp"
#include "oracle.hpp"

using namespace lp;

namespace {

Vocabulary pq_vocab() {
  Vocabulary v;
  v.declare_pred("P", 1);
  v.declare_pred("Q", 1);
  v.declare_pred("R", 1);
  return v;
}

FormulaPtr pf(const std::string& text) {
  Vocabulary v = pq_vocab();
  return parse_formula(text, v);
}

TermPtr pt(const std::string& text) {
  Vocabulary v = pq_vocab();
  return parse_term(text, v);
}

EntailmentProblem nilsson_problem() {
  EntailmentProblem p;
  p.atoms = {"P", "Q"};
  p.base.emplace_back(pf("P(x)"), Constraint::eq(Rational(3, 5)));
  p.base.emplace_back(pf("P(x) -> Q(x)"), Constraint::eq(Rational(4, 5)));
  p.query = pf("Q(x)");
  return p;
}

}  // namespace

TEST_CASE("the canonical world equations of the worked example") {
  LinearProgram lp = build_lp(nilsson_problem());
  CHECK(lp.num_worlds == 4);
  REQUIRE(lp.rows.size() == 3);  // two base rows + normalization

  // Worlds are indexed by bits (P = bit 0, Q = bit 1).
  // [P] row touches worlds {P, PQ} = {1, 3}.
  CHECK(lp.rows[0].coeffs[1] == Rational(1));
  CHECK(lp.rows[0].coeffs[3] == Rational(1));
  CHECK(lp.rows[0].coeffs[0] == Rational(0));
  CHECK(lp.rows[0].coeffs[2] == Rational(0));
  CHECK(lp.rows[0].rhs == Rational(3, 5));
  // [P -> Q] row touches all worlds except P-and-not-Q = world 1.
  CHECK(lp.rows[1].coeffs[0] == Rational(1));
  CHECK(lp.rows[1].coeffs[1] == Rational(0));
  CHECK(lp.rows[1].coeffs[2] == Rational(1));
  CHECK(lp.rows[1].coeffs[3] == Rational(1));
  // Normalization row.
  for (std::size_t w = 0; w < 4; ++w) CHECK(lp.rows[2].coeffs[w] == Rational(1));
  CHECK(lp.rows[2].rhs == Rational(1));
  // Objective is the Q indicator.
  CHECK(lp.objective == std::vector<Rational>{Rational(0), Rational(0), Rational(1), Rational(1)});
}

TEST_CASE("empty base leaves only normalization") {
  EntailmentProblem p;
  p.atoms = {"P"};
  p.query = pf("P(x)");
  LinearProgram lp = build_lp(p);
  CHECK(lp.rows.size() == 1);
  auto iv = bounds(p);
  REQUIRE(iv.has_value());
  CHECK(iv->lo == Rational(0));
  CHECK(iv->hi == Rational(1));
}

TEST_CASE("paper-exact bounds for the worked example") {
  auto iv = bounds(nilsson_problem());
  REQUIRE(iv.has_value());
  CHECK(iv->lo == Rational(2, 5));
  CHECK(iv->hi == Rational(4, 5));
}

TEST_CASE("a conjunction bound forces both conjuncts up") {
  EntailmentProblem p;
  p.atoms = {"P", "Q"};
  p.base.emplace_back(pf("P(x) & Q(x)"), Constraint::eq(Rational(1, 2)));
  p.query = pf("P(x)");
  auto iv = bounds(p);
  REQUIRE(iv.has_value());
  CHECK(iv->lo == Rational(1, 2));
  CHECK(iv->hi == Rational(1));

  p.query = pf("Q(x)");
  iv = bounds(p);
  REQUIRE(iv.has_value());
  CHECK(iv->lo == Rational(1, 2));
}

TEST_CASE("a pinned probability yields a point interval") {
  EntailmentProblem p;
  p.atoms = {"P"};
  p.base.emplace_back(pf("P(x)"), Constraint::eq(Rational(1)));
  p.query = pf("P(x)");
  auto iv = bounds(p);
  REQUIRE(iv.has_value());
  CHECK(iv->lo == Rational(1));
  CHECK(iv->hi == Rational(1));
}

TEST_CASE("contradictory bases are INFEASIBLE") {
  EntailmentProblem p;
  p.atoms = {"P"};
  p.base.emplace_back(pf("P(x)"), Constraint::eq(Rational(3, 5)));
  p.base.emplace_back(pf("!P(x)"), Constraint::eq(Rational(3, 5)));
  p.query = pf("P(x)");
  CHECK_FALSE(bounds(p).has_value());
}

TEST_CASE("interval constraints narrow both sides") {
  EntailmentProblem p;
  p.atoms = {"P"};
  p.base.emplace_back(pf("P(x)"), Constraint::in(Rational(1, 4), Rational(1, 3)));
  p.query = pf("P(x)");
  auto iv = bounds(p);
  REQUIRE(iv.has_value());
  CHECK(iv->lo == Rational(1, 4));
  CHECK(iv->hi == Rational(1, 3));
}

TEST_CASE("the 2^20 world cap is enforced") {
  EntailmentProblem p;
  for (int i = 0; i < 21; ++i) p.atoms.push_back("A" + std::to_string(i));
  p.query = pred("A0", {object_var("x")});
  try {
    build_lp(p);
    FAIL("expected TooManyAtoms");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::TooManyAtoms);
  }
}

TEST_CASE("out-of-range constants are rejected") {
  EntailmentProblem p;
  p.atoms = {"P"};
  p.base.emplace_back(pf("P(x)"), Constraint::eq(Rational(3, 2)));
  p.query = pf("P(x)");
  CHECK_THROWS_AS(bounds(p), Error);
}

// ---------------------------------------------------------------------------
// Randomized agreement with the brute-force vertex oracle.

namespace {

EntailmentProblem random_problem(std::mt19937_64& rng) {
  static const std::vector<std::string> names = {"P", "Q", "R"};
  EntailmentProblem p;
  std::uint32_t k = 1 + rng() % 3;
  for (std::uint32_t i = 0; i < k; ++i) p.atoms.push_back(names[i]);

  auto literal = [&]() {
    FormulaPtr a = pred(p.atoms[rng() % k], {object_var("x")});
    return rng() % 2 ? a : lnot(a);
  };
  auto formula = [&]() {
    FormulaPtr f = literal();
    for (std::uint32_t extra = rng() % 3; extra > 0; --extra)
      f = rng() % 2 ? land(f, literal()) : lor(f, literal());
    return f;
  };

  std::uint32_t rows = 1 + rng() % 3;
  for (std::uint32_t i = 0; i < rows; ++i) {
    Rational v(static_cast<long>(rng() % 5), 4);  // 0, 1/4, ..., 1
    switch (rng() % 4) {
      case 0: p.base.emplace_back(formula(), Constraint::eq(v)); break;
      case 1: p.base.emplace_back(formula(), Constraint::geq(v)); break;
      case 2: p.base.emplace_back(formula(), Constraint::leq(v)); break;
      default: {
        Rational hi = v + Rational(1, 4) <= Rational(1) ? v + Rational(1, 4) : Rational(1);
        p.base.emplace_back(formula(), Constraint::in(v, hi));
        break;
      }
    }
  }
  p.query = formula();
  return p;
}

}  // namespace

TEST_CASE("simplex bounds equal vertex-enumeration bounds at desk scale") {
  std::mt19937_64 rng(424242);
  int feasible = 0, infeasible = 0;
  for (int round = 0; round < 120; ++round) {
    EntailmentProblem p = random_problem(rng);
    auto fast = bounds(p);
    auto slow = oracle::vertex_bounds(p);
    CHECK(fast.has_value() == slow.has_value());
    if (fast && slow) {
      ++feasible;
      CHECK(fast->lo == slow->lo);
      CHECK(fast->hi == slow->hi);
    } else {
      ++infeasible;
    }
  }
  CHECK(feasible > 20);
  CHECK(infeasible > 0);
}

TEST_CASE("adding a base constraint never widens the interval") {
  std::mt19937_64 rng(77);
  int shrunk = 0;
  for (int round = 0; round < 80; ++round) {
    EntailmentProblem p = random_problem(rng);
    auto before = bounds(p);
    if (!before) continue;
    EntailmentProblem q = random_problem(rng);
    if (q.atoms.size() > p.atoms.size()) continue;  // extra rows must stay over p's atoms
    p.base.insert(p.base.end(), q.base.begin(), q.base.end());
    auto after = bounds(p);
    if (!after) continue;
    CHECK(after->lo >= before->lo);
    CHECK(after->hi <= before->hi);
    ++shrunk;
  }
  CHECK(shrunk > 10);
}

TEST_CASE("soundness: models satisfying the base land inside the interval") {
  std::mt19937_64 rng(99);
  int checked = 0;
  for (int round = 0; round < 60; ++round) {
    EntailmentProblem p = random_problem(rng);
    auto iv = bounds(p);
    auto vs = oracle::vertices(oracle::problem_halfspaces(p),
                               std::size_t{1} << p.atoms.size());
    if (!iv) {
      CHECK(vs.empty());
      continue;
    }
    // Realize each vertex as an actual finite structure and evaluate the
    // query with the real evaluator.
    for (const auto& weights : vs) {
      Model m = oracle::model_from_distribution(p.atoms, weights);
      Assignment sigma;
      for (const auto& [formula, c] : p.base) {
        Rational v = eval_field_term(m.structure, m.vocab, sigma,
                                     *desugar(prob_term(formula, {"x"})));
        switch (c.kind) {
          case Constraint::Kind::Eq: CHECK(v == c.value); break;
          case Constraint::Kind::Geq: CHECK(v >= c.value); break;
          case Constraint::Kind::Leq: CHECK(v <= c.value); break;
          case Constraint::Kind::In: CHECK((v >= c.value && v <= c.hi)); break;
        }
      }
      Rational q = eval_field_term(m.structure, m.vocab, sigma,
                                   *desugar(prob_term(p.query, {"x"})));
      CHECK(q >= iv->lo);
      CHECK(q <= iv->hi);
      ++checked;
    }
  }
  CHECK(checked > 100);
}

// ---------------------------------------------------------------------------
// Sentence-level fragment.

TEST_CASE("sentence bounds: the worked example through the Lp surface") {
  std::vector<FormulaPtr> sentences = {pf("[P(x)]{x} = 0.6"), pf("[P(x) -> Q(x)]{x} = 0.8")};
  EntailResult r = entail_sentences(sentences, pt("[Q(x)]{x}"));
  REQUIRE(r.status == EntailResult::Status::Bounded);
  CHECK(r.interval.lo == Rational(2, 5));
  CHECK(r.interval.hi == Rational(4, 5));
  CHECK_FALSE(r.lo_open);
  CHECK_FALSE(r.hi_open);
}

TEST_CASE("conditional sentences linearize with a positive conditioning event") {
  std::vector<FormulaPtr> sentences = {pf("[P(x) | Q(x)]{x} = 1/2")};
  EntailResult r = entail_sentences(sentences, pt("[P(x) & Q(x)]{x}"));
  REQUIRE(r.status == EntailResult::Status::Bounded);
  CHECK(r.interval.lo == Rational(0));
  CHECK(r.interval.hi == Rational(1, 2));
  // [P & Q] = 1/2 requires [Q] = 1; at the top it is attained. At the
  // bottom [Q] -> 0 forces [P & Q] -> 0 but never reaches it.
  CHECK(r.lo_open);
  CHECK_FALSE(r.hi_open);
}

TEST_CASE("strict sentences produce open endpoints only when forced") {
  std::vector<FormulaPtr> sentences = {pf("[P(x)]{x} > 1/2")};
  EntailResult r = entail_sentences(sentences, pt("[P(x)]{x}"));
  REQUIRE(r.status == EntailResult::Status::Bounded);
  CHECK(r.interval.lo == Rational(1, 2));
  CHECK(r.lo_open);
  CHECK(r.interval.hi == Rational(1));
  CHECK_FALSE(r.hi_open);

  std::vector<FormulaPtr> both = {pf("[P(x)]{x} > 1/4"), pf("[P(x)]{x} < 3/4")};
  r = entail_sentences(both, pt("[P(x)]{x}"));
  REQUIRE(r.status == EntailResult::Status::Bounded);
  CHECK(r.interval.lo == Rational(1, 4));
  CHECK(r.interval.hi == Rational(3, 4));
  CHECK(r.lo_open);
  CHECK(r.hi_open);
}

TEST_CASE("strictly contradictory bases are INFEASIBLE even when the closure is not") {
  std::vector<FormulaPtr> sentences = {pf("[P(x)]{x} > 1/2"), pf("[P(x)]{x} <= 1/2")};
  EntailResult r = entail_sentences(sentences, pt("[P(x)]{x}"));
  CHECK(r.status == EntailResult::Status::Infeasible);
}

TEST_CASE("a query conditioned on an impossible event is UndefinedQuery") {
  std::vector<FormulaPtr> sentences = {pf("[Q(x)]{x} = 0")};
  EntailResult r = entail_sentences(sentences, pt("[P(x) | Q(x)]{x}"));
  CHECK(r.status == EntailResult::Status::UndefinedQuery);
}

TEST_CASE("sentences outside the fragment are rejected with a diagnostic") {
  Vocabulary v = pq_vocab();
  v.declare_measure("weight", 1);
  FormulaPtr with_measure = parse_formula("[weight(x) >= 1]{x} = 1/2", v);
  CHECK_THROWS_AS(entail_sentences({with_measure}, pt("[P(x)]{x}")), Error);
  try {
    entail_sentences({with_measure}, pt("[P(x)]{x}"));
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::OutsideFragment);
  }

  // Two binder variables.
  Vocabulary v2 = pq_vocab();
  FormulaPtr two = parse_formula("[P(x) & Q(y)]{x, y} = 1/2", v2);
  CHECK_THROWS_AS(entail_sentences({two}, pt("[P(x)]{x}")), Error);

  // Quantified body.
  Vocabulary v3 = pq_vocab();
  FormulaPtr quantified = parse_formula("[forall y. P(y)]{x} = 1", v3);
  CHECK_THROWS_AS(entail_sentences({quantified}, pt("[P(x)]{x}")), Error);
}

TEST_CASE("conditional query bounds are sound on witness models") {
  // [F | B] > 9/10 as the only sentence; query [F | B & R] is unconstrained.
  Vocabulary v;
  v.declare_pred("F", 1);
  v.declare_pred("B", 1);
  v.declare_pred("R", 1);
  Vocabulary v1 = v;
  FormulaPtr s = parse_formula("[F(x) | B(x)]{x} > 9/10", v1);
  Vocabulary v2 = v;
  TermPtr q = parse_term("[F(x) | B(x) & R(x)]{x}", v2);
  EntailResult r = entail_sentences({s}, q);
  REQUIRE(r.status == EntailResult::Status::Bounded);
  CHECK(r.interval.lo == Rational(0));
  CHECK(r.interval.hi == Rational(1));

  // Two witness models: 20 birds, 19 fly; the single R-bird flies in one
  // model and not in the other, pushing the query to either extreme.
  for (bool r_bird_flies : {false, true}) {
    LpStructure::Data data;
    Vocabulary mv;
    mv.declare_pred("F", 1);
    mv.declare_pred("B", 1);
    mv.declare_pred("R", 1);
    std::set<Tuple> fly, bird, rclass;
    for (std::uint32_t i = 0; i < 20; ++i) {
      data.domain.push_back("b" + std::to_string(i));
      data.weights.push_back(Rational(1, 20));
      bird.insert(Tuple{i});
      if (i != 0) fly.insert(Tuple{i});
    }
    rclass.insert(Tuple{r_bird_flies ? 1u : 0u});
    data.predicates = {{"F", fly}, {"B", bird}, {"R", rclass}};
    Model m{mv, LpStructure(std::move(data), mv)};

    Assignment sigma;
    Vocabulary ev = mv;
    FormulaPtr base_check = parse_formula("[F(x) | B(x)]{x} > 9/10", ev);
    CHECK(eval_formula(m.structure, ev, sigma, *desugar(base_check)));
    TermPtr query_term = parse_term("[F(x) | B(x) & R(x)]{x}", ev);
    Rational value = eval_field_term(m.structure, ev, sigma, *desugar(query_term));
    CHECK(value == (r_bird_flies ? Rational(1) : Rational(0)));
    CHECK(value >= r.interval.lo);
    CHECK(value <= r.interval.hi);
  }
}
