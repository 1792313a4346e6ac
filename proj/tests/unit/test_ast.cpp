#include <doctest.h>

#include "gen.hpp"
#include "lp/ast.hpp"
#include "lp/printer.hpp"
#include "lp/vocabulary.hpp"

using namespace lp;

namespace {

Vocabulary birds_vocab() {
  Vocabulary v;
  v.declare_pred("Bird", 1);
  v.declare_pred("Fly", 1);
  v.declare_pred("Have", 2);
  v.declare_pred("Zoo", 1);
  v.declare_object_const("Tweety");
  v.declare_measure("weight", 1);
  v.declare_field_var("yf");
  return v;
}

}  // namespace

TEST_CASE("vocabulary names are unique across symbol classes") {
  Vocabulary v;
  v.declare_pred("Bird", 1);
  CHECK_THROWS_AS(v.declare_object_const("Bird"), Error);
  CHECK_THROWS_AS(v.declare_measure("Bird", 1), Error);

  // Identical redeclaration is a no-op; a different arity is an error.
  CHECK_NOTHROW(v.declare_pred("Bird", 1));
  CHECK_THROWS_AS(v.declare_pred("Bird", 2), Error);

  v.declare_field_func("normal", 4);
  CHECK(v.field_func_hook("normal") == nullptr);
  CHECK_THROWS_AS(v.register_field_func_hook("unknown", nullptr), Error);
}

TEST_CASE("well_formed accepts the flying-birds sentence") {
  Vocabulary v = birds_vocab();
  // [Bird(x)]{x} >= 9/10
  FormulaPtr f = geq(prob_term(pred("Bird", {object_var("x")}), {"x"}),
                     field_const(Rational(9, 10)));
  CHECK_NOTHROW(well_formed(*f, v));
}

TEST_CASE("well_formed reports sort errors with the offending symbol") {
  Vocabulary v = birds_vocab();
  // Bird applied to a field variable.
  FormulaPtr f = pred("Bird", {field_var("yf")});
  try {
    well_formed(*f, v);
    FAIL("expected SortMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SortMismatch);
    CHECK(std::string(e.what()).find("Bird") != std::string::npos);
  }
}

TEST_CASE("well_formed flags unknown symbols and arity errors") {
  Vocabulary v = birds_vocab();
  CHECK_THROWS_AS(well_formed(*pred("Penguin", {object_var("x")}), v), Error);
  try {
    well_formed(*pred("Have", {object_var("x")}), v);
    FAIL("expected ArityMismatch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ArityMismatch);
  }
}

TEST_CASE("duplicate binder variables are rejected") {
  Vocabulary v = birds_vocab();
  FormulaPtr fly = pred("Fly", {object_var("x")});
  TermPtr bad = prob_term(fly, {"x", "x"});
  try {
    well_formed(*bad, v);
    FAIL("expected DuplicateBoundVariable");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DuplicateBoundVariable);
  }
  CHECK_THROWS_AS(well_formed(*prob_term(fly, {}), v), Error);
}

TEST_CASE("desugar eliminates every defined symbol") {
  // Conditional probability: [Fly | Bird]{x} -> [Fly & Bird]{x} / [Bird]{x}.
  FormulaPtr fly = pred("Fly", {object_var("x")});
  FormulaPtr bird = pred("Bird", {object_var("x")});
  TermPtr cond = cond_prob_term(fly, bird, {"x"});
  TermPtr expect = field_app("/", {prob_term(land(fly, bird), {"x"}), prob_term(bird, {"x"})});
  CHECK(equal_terms(desugar(cond), expect));

  // Or by De Morgan.
  FormulaPtr a = pred("Bird", {object_const("Tweety")});
  FormulaPtr b = pred("Fly", {object_const("Tweety")});
  CHECK(equal_formulas(desugar(lor(a, b)), lnot(land(lnot(desugar(a)), lnot(desugar(b))))));

  // Intervals become a conjunction of >= comparisons.
  TermPtr h = measure_app("weight", {object_const("Tweety")});
  TermPtr lo = field_var("yf"), hi = field_var("zf");
  FormulaPtr ii = in_interval(h, lo, hi);
  CHECK(equal_formulas(desugar(ii), land(geq(h, lo), geq(hi, h))));
}

TEST_CASE("desugar is idempotent on generated formulas") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    testgen::AstGen gen(seed);
    FormulaPtr f = gen.formula(3);
    FormulaPtr once = desugar(f);
    CHECK(is_core(*once));
    CHECK(equal_formulas(desugar(once), once));
  }
}

TEST_CASE("well-formedness is preserved by desugar") {
  Vocabulary v = testgen::fixed_vocab();
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    testgen::AstGen gen(seed);
    FormulaPtr f = gen.formula(3);
    REQUIRE_NOTHROW(well_formed(*f, v));
    CHECK_NOTHROW(well_formed(*desugar(f), v));
  }
}

TEST_CASE("free_vars distinguishes binders from free occurrences") {
  // [Have(y, x) & Zoo(x)]{x} has the single free variable y.
  TermPtr t = prob_term(
      land(pred("Have", {object_var("y"), object_var("x")}), pred("Zoo", {object_var("x")})),
      {"x"});
  VarSet fv = free_vars(*t);
  CHECK(fv.size() == 1);
  CHECK(fv.count({"y", Sort::Object}) == 1);

  // forall y. Fly(y) is closed.
  CHECK(free_vars(*forall("y", Sort::Object, pred("Fly", {object_var("y")}))).empty());

  // forall yf:field. ([fly|bird & weight < yf]{x} > ...) is closed.
  FormulaPtr body = gt(
      cond_prob_term(pred("Fly", {object_var("x")}),
                     land(pred("Bird", {object_var("x")}),
                          lt(measure_app("weight", {object_var("x")}), field_var("yf"))),
                     {"x"}),
      field_const(Rational(1, 2)));
  CHECK(free_vars(*forall("yf", Sort::Field, body)).empty());
  CHECK(free_vars(*body) == VarSet{{"yf", Sort::Field}});
}

TEST_CASE("substitute: constant generalization, identity, bound occurrences") {
  // generalize Fly(Tweety) to Fly(x).
  FormulaPtr ground = pred("Fly", {object_const("Tweety")});
  CHECK(equal_formulas(generalize(ground, "Tweety", "x"), pred("Fly", {object_var("x")})));

  // Empty substitution is identity.
  testgen::AstGen gen(9);
  FormulaPtr f = gen.formula(3);
  CHECK(equal_formulas(substitute(f, {}), f));

  // Bound occurrences stay put: [Fly(x)]{x} with x -> Tweety is unchanged.
  TermPtr pt = prob_term(pred("Fly", {object_var("x")}), {"x"});
  CHECK(equal_terms(substitute(pt, {{"x", object_const("Tweety")}}), pt));
}

TEST_CASE("substitute renames binders to avoid capture, deterministically") {
  // ([Have(y, x)]{x})[y := x] must not capture: binder x becomes x1.
  TermPtr t = prob_term(pred("Have", {object_var("y"), object_var("x")}), {"x"});
  TermPtr got = substitute(t, {{"y", object_var("x")}});
  TermPtr expect = prob_term(pred("Have", {object_var("x"), object_var("x1")}), {"x1"});
  CHECK(equal_terms(got, expect));

  // Quantifier case, and the fresh name skips names already in use.
  FormulaPtr q = forall("x", Sort::Object,
                        land(pred("Have", {object_var("y"), object_var("x")}),
                             pred("Zoo", {object_var("x1")})));
  FormulaPtr got2 = substitute(q, {{"y", object_var("x")}});
  FormulaPtr expect2 = forall("x2", Sort::Object,
                              land(pred("Have", {object_var("x"), object_var("x2")}),
                                   pred("Zoo", {object_var("x1")})));
  CHECK(equal_formulas(got2, expect2));
}

TEST_CASE("substitution checks replacement sorts") {
  FormulaPtr f = pred("Fly", {object_var("x")});
  CHECK_THROWS_AS(substitute(f, {{"x", field_const(Rational(1))}}), Error);
}

TEST_CASE("free_vars after substitution follows the binding law") {
  testgen::AstGen gen(42);
  for (int i = 0; i < 40; ++i) {
    FormulaPtr f = gen.open_formula(3, {"u"});
    VarSet fv = free_vars(*f);
    if (!fv.count({"u", Sort::Object})) continue;
    TermPtr replacement = object_app("g", {object_const("c0")});
    FormulaPtr g = substitute(f, {{"u", replacement}});
    VarSet expect = fv;
    expect.erase({"u", Sort::Object});
    for (const auto& nv : free_vars(*replacement)) expect.insert(nv);
    CHECK(free_vars(*g) == expect);
  }
}

TEST_CASE("well-formedness is preserved by substitution") {
  Vocabulary v = testgen::fixed_vocab();
  testgen::AstGen gen(77);
  int hits = 0;
  for (int i = 0; i < 60; ++i) {
    FormulaPtr f = gen.open_formula(3, {"u"});
    if (!free_vars(*f).count({"u", Sort::Object})) continue;
    ++hits;
    FormulaPtr g = substitute(f, {{"u", object_app("g", {object_var("v")})}});
    CHECK_NOTHROW(well_formed(*g, v));
  }
  CHECK(hits > 0);
}

TEST_CASE("generalize renames capturing binders") {
  // [Fly(x) & Bird(Tweety)]{x}: generalizing Tweety to x must rename the binder.
  TermPtr t = prob_term(
      land(pred("Fly", {object_var("x")}), pred("Bird", {object_const("Tweety")})), {"x"});
  FormulaPtr f = geq(t, field_const(Rational(0)));
  FormulaPtr got = generalize(f, "Tweety", "x");
  TermPtr expect = prob_term(
      land(pred("Fly", {object_var("x1")}), pred("Bird", {object_var("x")})), {"x1"});
  CHECK(equal_formulas(got, geq(expect, field_const(Rational(0)))));
}
