#include <doctest.h>

#include <random>

#include "lp/rational.hpp"

using lp::Rational;

namespace {

Rational rand_rational(std::mt19937_64& rng) {
  long num = static_cast<long>(rng() % 41) - 20;
  long den = 1 + static_cast<long>(rng() % 20);
  return Rational(num, den);
}

}  // namespace

TEST_CASE("rationals are canonical") {
  CHECK(Rational(2, 4).str() == "1/2");
  CHECK(Rational(-2, 4).str() == "-1/2");
  CHECK(Rational(2, -4).str() == "-1/2");  // sign moves to the numerator
  CHECK(Rational(0, 7).str() == "0");
  CHECK(Rational(6, 3).str() == "2");
  CHECK(Rational(6, 3).is_integer());
}

TEST_CASE("literal parsing is exact") {
  CHECK(Rational::from_string("0.75") == Rational(3, 4));
  CHECK(Rational::from_string("3/4") == Rational(3, 4));
  CHECK(Rational::from_string("-0.5") == Rational(-1, 2));
  CHECK(Rational::from_string("42") == Rational(42));
  CHECK(Rational::from_string("0.9") == Rational(9, 10));
  CHECK_THROWS_AS(Rational::from_string("1/0"), lp::Error);
  CHECK_THROWS_AS(Rational::from_string("x"), lp::Error);
  CHECK_THROWS_AS(Rational::from_string(""), lp::Error);
}

TEST_CASE("division by zero is an error, never a value") {
  Rational one(1);
  Rational zero(0);
  CHECK_THROWS_AS(one / zero, lp::Error);
  CHECK_THROWS_AS(Rational(1, 0), lp::Error);
  try {
    one / zero;
  } catch (const lp::Error& e) {
    CHECK(e.kind() == lp::ErrorKind::DivisionByZero);
  }
}

TEST_CASE("ordered-field axioms on random triples") {
  std::mt19937_64 rng(7);
  for (int i = 0; i < 500; ++i) {
    Rational a = rand_rational(rng), b = rand_rational(rng), c = rand_rational(rng);

    CHECK((a + b) + c == a + (b + c));
    CHECK((a * b) * c == a * (b * c));
    CHECK(a + b == b + a);
    CHECK(a * b == b * a);
    CHECK(a * (b + c) == a * b + a * c);
    CHECK(a + Rational(0) == a);
    CHECK(a * Rational(1) == a);
    CHECK(a + (-a) == Rational(0));
    if (!a.is_zero()) CHECK(a / a == Rational(1));

    // Trichotomy.
    int cmp = (a < b ? 1 : 0) + (a == b ? 1 : 0) + (a > b ? 1 : 0);
    CHECK(cmp == 1);

    // Order respects the operations.
    if (a <= b) CHECK(a + c <= b + c);
    if (a <= b && c.sign() > 0) CHECK(a * c <= b * c);
  }
}
