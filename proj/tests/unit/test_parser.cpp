#include <doctest.h>

#include "gen.hpp"
#include "lp/parser.hpp"
#include "lp/printer.hpp"

using namespace lp;

namespace {

Vocabulary sentence_vocab() {
  Vocabulary v;
  v.declare_pred("Fly", 1);
  v.declare_pred("Bird", 1);
  v.declare_pred("P", 1);
  v.declare_pred("Q", 1);
  v.declare_pred("R", 1);
  v.declare_measure("weight", 1);
  return v;
}

FormulaPtr parse1(const std::string& text, Vocabulary v = sentence_vocab()) {
  return parse_formula(text, v);
}

}  // namespace

TEST_CASE("the flying-birds sentence parses to the expected tree") {
  FormulaPtr f = parse1("[Fly(x) | Bird(x)]{x} > 0.9");
  FormulaPtr expect = gt(cond_prob_term(pred("Fly", {object_var("x")}),
                                        pred("Bird", {object_var("x")}), {"x"}),
                         field_const(Rational(9, 10)));
  CHECK(equal_formulas(f, expect));
}

TEST_CASE("the functional-dependence sentence parses with a field quantifier") {
  Vocabulary v = sentence_vocab();
  v.declare_field_var("y");
  FormulaPtr f = parse_formula(
      "forall y. [Fly(x) | Bird(x) & weight(x) < y]{x} >= [Fly(x) | Bird(x) & weight(x) > y]{x}",
      v);
  const auto* q = f->get_if<Forall>();
  REQUIRE(q != nullptr);
  CHECK(q->sort == Sort::Field);

  // Annotated form, without the declaration.
  FormulaPtr g = parse1(
      "forall y:field. [Fly(x) | Bird(x) & weight(x) < y]{x} >= "
      "[Fly(x) | Bird(x) & weight(x) > y]{x}");
  CHECK(equal_formulas(f, g));
}

TEST_CASE("the independence sentence parses as a product of conditionals") {
  FormulaPtr f = parse1("[P(x) & Q(x) | R(x)]{x} = [P(x) | R(x)]{x} * [Q(x) | R(x)]{x}");
  const auto* eq = f->get_if<Equal>();
  REQUIRE(eq != nullptr);
  CHECK(eq->sort == Sort::Field);
  const auto* lhs = eq->lhs->get_if<ProbTerm>();
  REQUIRE(lhs != nullptr);
  CHECK(lhs->is_conditional());
  const auto* product = eq->rhs->get_if<FieldApp>();
  REQUIRE(product != nullptr);
  CHECK(product->fn == "*");
}

TEST_CASE("pipe is disjunction outside brackets, conditioning inside") {
  FormulaPtr f = parse1("P(x) | Q(x)");
  CHECK(f->get_if<Or>() != nullptr);

  // Disjunction inside brackets must be written `or`.
  FormulaPtr g = parse1("[P(x) or Q(x) | R(x)]{x} >= 0");
  const auto* pt = g->get_if<Geq>()->lhs->get_if<ProbTerm>();
  REQUIRE(pt != nullptr);
  CHECK(pt->is_conditional());
  CHECK(pt->body->get_if<Or>() != nullptr);

  Vocabulary v = sentence_vocab();
  CHECK_THROWS_AS(parse_formula("[(P(x) | Q(x))]{x} >= 0", v), Error);
}

TEST_CASE("declarations in a header block extend the vocabulary") {
  ParsedFile file = parse_file(
      "object pred Penguin/1;\n"
      "field var thr;\n"
      "measure size/2;\n"
      "object const Opus;\n"
      "[Penguin(x)]{x} >= thr;\n"
      "Penguin(Opus);\n");
  CHECK(file.statements.size() == 2);
  CHECK(file.vocab.kind_of("Penguin") == SymbolKind::Pred);
  CHECK(file.vocab.measure_arity("size") == 2);
}

TEST_CASE("field predicates cannot be declared") {
  Vocabulary v;
  CHECK_THROWS_AS(parse_file("field pred Hot/1;", v), Error);
}

TEST_CASE("parse errors carry spans inside the input") {
  Vocabulary v = sentence_vocab();
  const std::string text = "[Fly(x) | Bird(x)]{x} > ";
  try {
    parse_formula(text, v);
    FAIL("expected a syntax error");
  } catch (const Error& e) {
    REQUIRE(e.span().has_value());
    CHECK(e.span()->begin <= text.size());
    CHECK(e.span()->line == 1);
  }

  // Lex error location.
  try {
    Vocabulary v2 = sentence_vocab();
    parse_formula("P(x) @ Q(x)", v2);
    FAIL("expected a lex error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::LexError);
    REQUIRE(e.span().has_value());
    CHECK(e.span()->column == 6);
  }
}

TEST_CASE("sort errors are delegated to well_formed") {
  Vocabulary v = sentence_vocab();
  v.declare_field_var("y");
  CHECK_THROWS_AS(parse_formula("Bird(y)", v), Error);
}

TEST_CASE("numeric forms: glued rationals vs spaced division") {
  Vocabulary v;
  TermPtr lit = parse_term("3/4", v);
  const auto* c = lit->get_if<FieldConst>();
  REQUIRE(c != nullptr);
  CHECK(c->literal() == Rational(3, 4));

  Vocabulary v2;
  TermPtr division = parse_term("3 / 4", v2);
  CHECK(division->get_if<FieldApp>() != nullptr);

  Vocabulary v3;
  TermPtr neg = parse_term("-3/4", v3);
  CHECK(neg->get_if<FieldConst>()->literal() == Rational(-3, 4));
}

TEST_CASE("a probability term requires its binder vector") {
  Vocabulary v = sentence_vocab();
  CHECK_THROWS_AS(parse_formula("[Fly(x)] > 0", v), Error);
}

TEST_CASE("object equality and field equality disambiguate by sort") {
  Vocabulary v = sentence_vocab();
  v.declare_object_const("Tweety");
  FormulaPtr obj = parse_formula("x = Tweety", v);
  CHECK(obj->get_if<Equal>()->sort == Sort::Object);

  Vocabulary v2 = sentence_vocab();
  FormulaPtr fld = parse_formula("weight(x) = 3/2", v2);
  CHECK(fld->get_if<Equal>()->sort == Sort::Field);

  Vocabulary v3 = sentence_vocab();
  CHECK_THROWS_AS(parse_formula("x = weight(x)", v3), Error);
}

TEST_CASE("intervals parse into the membership form") {
  Vocabulary v = sentence_vocab();
  FormulaPtr f = parse_formula("weight(x) in [1/2, 2]", v);
  CHECK(f->get_if<InInterval>() != nullptr);
  CHECK(print(f) == "weight(x) in [1/2, 2]");
}

TEST_CASE("print produces minimal parentheses against precedence") {
  Vocabulary v = sentence_vocab();
  CHECK(print(parse_formula("P(x) & Q(x) | R(x)", v)) == "P(x) & Q(x) | R(x)");
  Vocabulary v2 = sentence_vocab();
  CHECK(print(parse_formula("P(x) & (Q(x) | R(x))", v2)) == "P(x) & (Q(x) | R(x))");
  Vocabulary v3 = sentence_vocab();
  CHECK(print(parse_formula("!(P(x) & Q(x))", v3)) == "!(P(x) & Q(x))");
  Vocabulary v4 = sentence_vocab();
  CHECK(print(parse_formula("!P(x) & Q(x)", v4)) == "!P(x) & Q(x)");
  Vocabulary v5 = sentence_vocab();
  CHECK(print(parse_formula("P(x) -> Q(x) -> R(x)", v5)) == "P(x) -> Q(x) -> R(x)");
  Vocabulary v6 = sentence_vocab();
  CHECK(print(parse_formula("(P(x) -> Q(x)) -> R(x)", v6)) == "(P(x) -> Q(x)) -> R(x)");
  Vocabulary v7 = sentence_vocab();
  CHECK(print(parse_term("(weight(x) + 1) * 2", v7)) == "(weight(x) + 1) * 2");
  Vocabulary v8 = sentence_vocab();
  CHECK(print(parse_term("weight(x) - (1 - 2)", v8)) == "weight(x) - (1 - 2)");
}

TEST_CASE("print keeps conditional sugar for display") {
  Vocabulary v = sentence_vocab();
  FormulaPtr f = parse_formula("[Fly(x) | Bird(x)]{x} > 0.9", v);
  CHECK(print(f) == "[Fly(x) | Bird(x)]{x} > 9/10");
}

TEST_CASE("print(geq) uses >=") {
  Vocabulary v = sentence_vocab();
  CHECK(print(parse_formula("weight(x) >= 1", v)) == "weight(x) >= 1");
}

TEST_CASE("round-trip: parse(print(ast)) is structurally identical, and printing is idempotent") {
  int formulas = 0;
  for (std::uint64_t seed = 0; seed < 400; ++seed) {
    testgen::AstGen gen(seed);
    FormulaPtr a = gen.formula(3);
    std::string s = print(a);
    CAPTURE(s);
    Vocabulary v = testgen::fixed_vocab();
    FormulaPtr b;
    REQUIRE_NOTHROW(b = parse_formula(s, v));
    CHECK(equal_formulas(desugar(b), desugar(a)));
    CHECK(equal_formulas(b, a));  // printer keeps sugar, so the trees match exactly
    CHECK(print(b) == s);
    ++formulas;
  }
  CHECK(formulas == 400);

  for (std::uint64_t seed = 1000; seed < 1100; ++seed) {
    testgen::AstGen gen(seed);
    TermPtr a = gen.field_term(3);
    std::string s = print(a);
    CAPTURE(s);
    Vocabulary v = testgen::fixed_vocab();
    TermPtr b;
    REQUIRE_NOTHROW(b = parse_term(s, v));
    CHECK(equal_terms(b, a));
    CHECK(print(b) == s);
  }
}
