#include <doctest.h>

#include "lp/eval.hpp"
#include "lp/parser.hpp"
#include "lp/printer.hpp"

using namespace lp;

namespace {

struct Fixture {
  Model model;
  Vocabulary vocab;

  explicit Fixture(const std::string& text) : model(parse_model(text)), vocab(model.vocab) {}

  bool truth(const std::string& sentence) {
    FormulaPtr f = parse_formula(sentence, vocab);
    Assignment sigma;
    return eval_formula(model.structure, vocab, sigma, *desugar(f));
  }

  Rational value(const std::string& term) {
    TermPtr t = parse_term(term, vocab);
    Assignment sigma;
    return eval_field_term(model.structure, vocab, sigma, *desugar(t));
  }
};

const char* kBirdWorld =
    "domain { t r1 r2 r3 r4 r5 o1 o2 o3 o4 }\n"
    "predicates {\n"
    "  Bird/1 { t r1 r2 r3 r4 r5 }\n"
    "  Fly/1 { t r1 r2 r3 r4 }\n"
    "}\n"
    "constants { object Tweety = t }\n"
    "measuring { w/1 { (t) -> 1 (r1) -> 2 (r2) -> 2 (r3) -> 3 (r4) -> 4 (r5) -> 9\n"
    "                  (o1) -> 5 (o2) -> 5 (o3) -> 6 (o4) -> 7 } }\n";

}  // namespace

TEST_CASE("ground atoms and boolean structure evaluate Tarski-style") {
  Fixture f(kBirdWorld);
  CHECK(f.truth("Bird(Tweety)"));
  CHECK_FALSE(f.truth("!Bird(Tweety)"));
  CHECK(f.truth("Bird(Tweety) & Fly(Tweety)"));
  CHECK(f.truth("!Bird(Tweety) | Fly(Tweety)"));
  CHECK(f.truth("Bird(Tweety) -> Fly(Tweety)"));
  CHECK(f.truth("forall x. (Fly(x) -> Bird(x))"));
  CHECK_FALSE(f.truth("forall x. Bird(x)"));
  CHECK(f.truth("exists x. (Bird(x) & !Fly(x))"));
  CHECK(f.truth("Tweety = Tweety"));
}

TEST_CASE("a formula and its negation never hold together") {
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    RandomModelParams params;
    params.domain_size = 1 + seed % 5;
    Model m = generate_random(seed, params);
    Vocabulary v = m.vocab;
    FormulaPtr alpha = parse_formula("P0(x) & !P1(x) | P2(x)", v);
    FormulaPtr closed = forall("x", Sort::Object, lnot(land(alpha, lnot(alpha))));
    Assignment sigma;
    CHECK(eval_formula(m.structure, v, sigma, *desugar(closed)));
  }
}

TEST_CASE("probability terms measure the satisfying set") {
  // Uniform 10-element domain, 6 in P: [P(x)]{x} = 3/5.
  Fixture f(
      "domain { a b c d e g h i j k }\n"
      "predicates { P/1 { a b c d e g } }\n");
  CHECK(f.value("[P(x)]{x}") == Rational(3, 5));

  Fixture birds(kBirdWorld);
  CHECK(birds.value("[Bird(x)]{x}") == Rational(3, 5));
  CHECK(birds.value("[Fly(x) | Bird(x)]{x}") == Rational(5, 6));
}

TEST_CASE("probability is weighted by the base measure") {
  Fixture f(
      "domain { a b c }\n"
      "measure { a: 2/3 b: 1/3 c: 0 }\n"
      "predicates { P/1 { a c } }\n");
  CHECK(f.value("[P(x)]{x}") == Rational(2, 3));
}

TEST_CASE("tautologies do not affect probability terms") {
  Fixture f(kBirdWorld);
  CHECK(f.value("[Bird(x) & (Fly(y) or !Fly(y))]{x, y}") == f.value("[Bird(x)]{x}"));
}

TEST_CASE("binder order does not matter") {
  Fixture f(kBirdWorld);
  CHECK(f.value("[Bird(x) & !Fly(y)]{x, y}") == f.value("[Bird(x) & !Fly(y)]{y, x}"));
}

TEST_CASE("the independence sentence holds exactly on a factorizing model") {
  // Within R = {a,b,c,d}: P = {a,b}, Q = {a,c}, so given R the properties
  // are independent by construction. Outside R both arbitrary.
  Fixture f(
      "domain { a b c d e1 e2 e3 e4 }\n"
      "predicates {\n"
      "  R/1 { a b c d }\n"
      "  P/1 { a b e1 }\n"
      "  Q/1 { a c e1 e2 }\n"
      "}\n");
  CHECK(f.truth("[P(x) & Q(x) | R(x)]{x} = [P(x) | R(x)]{x} * [Q(x) | R(x)]{x}"));

  // And fails on a model where the frequencies do not factorize.
  Fixture g(
      "domain { a b c d }\n"
      "predicates { R/1 { a b c d } P/1 { a b } Q/1 { a } }\n");
  CHECK_FALSE(g.truth("[P(x) & Q(x) | R(x)]{x} = [P(x) | R(x)]{x} * [Q(x) | R(x)]{x}"));
}

TEST_CASE("conditioning on a measure-zero set is a division-by-zero error") {
  Fixture f(kBirdWorld);
  CHECK_THROWS_AS(f.value("[Fly(x) | !Bird(x) & Fly(x)]{x}"), Error);
  try {
    f.value("[Fly(x) | !Bird(x) & Fly(x)]{x}");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DivisionByZero);
  }
}

TEST_CASE("an undefined subterm poisons the whole formula, even under a true disjunct") {
  Fixture f(kBirdWorld);
  // The left disjunct is true, but the right conjunct divides by zero.
  CHECK_THROWS_AS(f.truth("Bird(Tweety) or [Fly(x) | !Bird(x) & Fly(x)]{x} >= 0"), Error);
}

TEST_CASE("unbound variables are reported") {
  Fixture f(kBirdWorld);
  CHECK_THROWS_AS(f.truth("Bird(x)"), Error);
  Assignment sigma;
  sigma.set_object("x", 0);
  FormulaPtr g = parse_formula("Bird(x)", f.vocab);
  CHECK(eval_formula(f.model.structure, f.vocab, sigma, *desugar(g)));
}

TEST_CASE("nested probability terms see the outer binder") {
  // [ [Bird(y) & Fly(x)]{y} >= 1/2 ]{x}: the inner term depends on x.
  Fixture f(kBirdWorld);
  Rational v = f.value("[[Bird(y) & Fly(x)]{y} >= 3/5]{x}");
  // Inner term equals 3/5 when Fly(x), else 0; so the outer set is Fly.
  CHECK(v == f.value("[Fly(x)]{x}"));
}

TEST_CASE("enumeration beyond the cap fails loudly") {
  Fixture f(kBirdWorld);
  EvalOptions opts;
  opts.max_enumeration = 99;  // 10^2 = 100 tuples needed
  TermPtr t = parse_term("[Bird(x) & Fly(y)]{x, y}", f.vocab);
  Assignment sigma;
  try {
    eval_field_term(f.model.structure, f.vocab, sigma, *desugar(t), opts);
    FAIL("expected EnumerationCapExceeded");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::EnumerationCapExceeded);
  }
}

TEST_CASE("interval membership agrees with its expansion on a 3-point model") {
  Fixture f(
      "domain { a b c }\n"
      "constants { object ca = a\n object cb = b\n object cc = c }\n"
      "measuring { w/1 { (a) -> 1 (b) -> 2 (c) -> 3 } }\n");
  for (const char* point : {"ca", "cb", "cc"}) {
    for (long lo = 0; lo <= 4; ++lo) {
      for (long hi = 0; hi <= 4; ++hi) {
        std::string sugar = std::string("[w(x) in [") + std::to_string(lo) + ", " +
                            std::to_string(hi) + " ] & x = " + point + "]{x}";
        std::string core = std::string("[w(x) >= ") + std::to_string(lo) + " & " +
                           std::to_string(hi) + " >= w(x) & x = " + point + "]{x}";
        CHECK(f.value(sugar) == f.value(core));
      }
    }
  }
}

// --- universal quantification over the field ---

TEST_CASE("field quantifiers decided through comparison breakpoints") {
  Fixture f(kBirdWorld);
  CHECK(f.truth("forall y:field. (y >= 1/2 or 1/2 >= y)"));
  CHECK_FALSE(f.truth("exists y:field. (y >= 1 & 0 >= y)"));
  CHECK(f.truth("exists y:field. (y >= 1 & 2 >= y)"));
  CHECK(f.truth("forall y:field. (y > 3 -> y > 2)"));
  CHECK_FALSE(f.truth("forall y:field. (y > 2 -> y > 3)"));

  // Vacuous: the variable does not occur.
  CHECK(f.truth("forall y:field. Bird(Tweety)"));
}

TEST_CASE("field quantifiers compare against measuring functions over bound objects") {
  Fixture f(kBirdWorld);
  // Weights range over {1,...,9}: some threshold separates fliers.
  CHECK(f.truth("exists y:field. [Bird(x) & w(x) < y]{x} = [Bird(x)]{x}"));
  // Every threshold keeps the under-y birds no more numerous than all birds.
  CHECK(f.truth("forall y:field. [Bird(x) & w(x) < y]{x} <= [Bird(x)]{x}"));
  // Monotone step function comparison at every threshold.
  CHECK(f.truth("forall y:field. [w(x) < y]{x} <= [w(x) < y or x = Tweety]{x}"));
}

TEST_CASE("unsupported field-variable uses are refused, not mis-decided") {
  Fixture f(kBirdWorld);
  try {
    f.truth("forall y:field. y + 1 > y");  // y inside arithmetic
    FAIL("expected FieldQuantifierUnsupported");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::FieldQuantifierUnsupported);
  }
  // Comparison of two bound field variables crossing scopes.
  CHECK_THROWS_AS(f.truth("forall y:field. exists z:field. z > y"), Error);
  // Nested but independent field quantifiers are fine.
  CHECK(f.truth("forall y:field. ((exists z:field. z > 1) & (y > 1 -> y > 0))"));
}

TEST_CASE("the functional-dependence sentence errors on finite models") {
  // Below the smallest weight the conditioning set is empty, so the paper's
  // sentence as written has no finite-model value; it must error, not
  // silently pick a truth value.
  Fixture f(kBirdWorld);
  try {
    f.truth(
        "forall y:field. [Fly(x) | Bird(x) & w(x) < y]{x} >= [Fly(x) | Bird(x) & w(x) > y]{x}");
    FAIL("expected DivisionByZero");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DivisionByZero);
  }
}

TEST_CASE("field functions evaluate through registered hooks only") {
  Fixture f(kBirdWorld);
  f.vocab.declare_field_func("double", 1);
  TermPtr t = parse_term("double(1/2)", f.vocab);
  Assignment sigma;
  CHECK_THROWS_AS(eval_field_term(f.model.structure, f.vocab, sigma, *desugar(t)), Error);

  f.vocab.register_field_func_hook("double", [](std::span<const Rational> args) {
    return args[0] + args[0];
  });
  CHECK(eval_field_term(f.model.structure, f.vocab, sigma, *desugar(t)) == Rational(1));
}

TEST_CASE("evaluation against object functions and constants") {
  Fixture f(
      "domain { a b }\n"
      "predicates { P/1 { b } }\n"
      "functions { succ/1 { a -> b  b -> a } }\n"
      "constants { object start = a }\n");
  CHECK(f.truth("P(succ(start))"));
  CHECK_FALSE(f.truth("P(succ(succ(start)))"));
}
