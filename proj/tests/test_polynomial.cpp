#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "ivp/errors.hpp"
#include "ivp/polynomial.hpp"

using namespace ivp;

namespace {

IntegerPolynomial random_poly(std::mt19937_64& rng, int max_degree, long range) {
  std::vector<mpz_class> c;
  int d = static_cast<int>(rng() % (max_degree + 1));
  for (int i = 0; i <= d; ++i) c.emplace_back(static_cast<long>(rng() % (2 * range + 1)) - range);
  return IntegerPolynomial(c);
}

}  // namespace

TEST_CASE("canonical form") {
  IntegerPolynomial p{1, 2, 0, 0};
  CHECK(p.degree() == 1);
  CHECK(IntegerPolynomial{}.degree() == -1);
  CHECK(IntegerPolynomial{0, 0}.is_zero());
  CHECK(IntegerPolynomial{-6, 0, 3}.content() == 3);
  CHECK(IntegerPolynomial{6, 0, -3}.primitive_part() == IntegerPolynomial{-2, 0, 1});
}

TEST_CASE("rational canonical form reduces only against the denominator") {
  RationalPolynomial a(IntegerPolynomial{-6, 0, 3}, 1);
  CHECK(a.numerator() == IntegerPolynomial{-6, 0, 3});
  RationalPolynomial b(IntegerPolynomial{-6, 0, 4}, 6);
  CHECK(b.numerator() == IntegerPolynomial{-3, 0, 2});
  CHECK(b.denominator() == 3);
  RationalPolynomial c(IntegerPolynomial{2}, -4);
  CHECK(c.numerator() == IntegerPolynomial{-1});
  CHECK(c.denominator() == 2);
}

TEST_CASE("parser") {
  auto f = parse_poly("(X^2 - X)/2");
  CHECK(f.numerator() == IntegerPolynomial{0, -1, 1});
  CHECK(f.denominator() == 2);
  CHECK(parse_poly("X").numerator() == IntegerPolynomial::x());
  auto g = parse_poly("3*X^2 - 6");
  CHECK(g.numerator() == IntegerPolynomial{-6, 0, 3});
  CHECK(g.denominator() == 1);
  CHECK(parse_poly(" ( x + 1 ) ^ 3 ").numerator() == IntegerPolynomial{1, 3, 3, 1});
  CHECK(parse_poly("-X*(X-1)").numerator() == IntegerPolynomial{0, 1, -1});
  CHECK(parse_poly("(X^3 - X)/6").denominator() == 6);
}

TEST_CASE("parser errors carry positions") {
  for (const char* bad : {"", "X +", "X^", "(X", "X/0", "X/X", "Y", "2X", "X^-1", "3 $ 4"}) {
    CAPTURE(bad);
    CHECK_THROWS_AS(parse_poly(bad), SyntaxError);
  }
  try {
    parse_poly("X + * 2");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.position() == 4);
  }
}

TEST_CASE("printing") {
  CHECK(to_string(IntegerPolynomial{1, -1, 3}) == "3*X^2 - X + 1");
  CHECK(to_string(IntegerPolynomial{}) == "0");
  CHECK(to_string(IntegerPolynomial{0, -1}) == "-X");
  CHECK(to_string(parse_poly("(X^2 - X)/2")) == "(X^2 - X)/2");
  CHECK(to_string(parse_poly("5")) == "5");
}

TEST_CASE("parse of print is the identity on canonical forms") {
  std::mt19937_64 rng(5);
  for (int i = 0; i < 500; ++i) {
    RationalPolynomial f(random_poly(rng, 7, 30), static_cast<long>(rng() % 12) + 1);
    CAPTURE(to_string(f));
    CHECK(parse_poly(to_string(f)) == f);
  }
}

TEST_CASE("arithmetic agrees with evaluation") {
  std::mt19937_64 rng(9);
  for (int i = 0; i < 300; ++i) {
    auto a = random_poly(rng, 6, 20), b = random_poly(rng, 6, 20);
    mpz_class x = static_cast<long>(rng() % 41) - 20;
    CHECK((a + b).evaluate(x) == a.evaluate(x) + b.evaluate(x));
    CHECK((a - b).evaluate(x) == a.evaluate(x) - b.evaluate(x));
    CHECK((a * b).evaluate(x) == a.evaluate(x) * b.evaluate(x));
    RationalPolynomial ra(a, 3), rb(b, 4);
    mpq_class q(x, 7);
    q.canonicalize();
    CHECK((ra * rb).evaluate(q) == ra.evaluate(q) * rb.evaluate(q));
    CHECK((ra + rb).evaluate(q) == ra.evaluate(q) + rb.evaluate(q));
  }
}

TEST_CASE("gcd and exact division") {
  std::mt19937_64 rng(3);
  for (int i = 0; i < 200; ++i) {
    auto a = random_poly(rng, 4, 9), b = random_poly(rng, 4, 9), c = random_poly(rng, 3, 9);
    if (a.is_zero() || b.is_zero() || c.is_zero()) continue;
    auto g = gcd(a * c, b * c);
    CHECK(divide_exact(a * c, g).has_value());
    CHECK(divide_exact(b * c, g).has_value());
    CHECK(divide_exact(g, c.primitive_part()).has_value());
    auto q = divide_exact(a * c, c);
    REQUIRE(q.has_value());
    CHECK(*q == a);
  }
  CHECK_FALSE(divide_exact(IntegerPolynomial{1, 0, 1}, IntegerPolynomial{-1, 1}).has_value());
}

TEST_CASE("ordering is by degree then coefficients") {
  CHECK(compare(IntegerPolynomial{5}, IntegerPolynomial{0, 1}) < 0);
  CHECK(compare(IntegerPolynomial{-1, 1}, IntegerPolynomial{0, 1}) < 0);
  CHECK(compare(IntegerPolynomial{0, 1}, IntegerPolynomial{0, 1}) == 0);
}
