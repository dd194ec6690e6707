#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ap4sq/exact_arith.hpp"

#include <cstdlib>

using namespace ap4sq;

namespace {

// Largest k with k^2 | n, by direct search.
long brute_square_factor(long n) {
  long best = 1;
  for (long k = 1; k * k <= std::labs(n); ++k)
    if (n % (k * k) == 0) best = k;
  return best;
}

QuadraticElement q6(const char* s) { return parse_quadratic(s, 6); }

}  // namespace

TEST_CASE("squarefree decomposition") {
  auto one = squarefree_decompose(1);
  CHECK(one.squarefree == 1);
  CHECK(one.factor == 1);
  auto twelve = squarefree_decompose(12);
  CHECK(twelve.squarefree == 3);
  CHECK(twelve.factor == 2);
  auto neg = squarefree_decompose(-50);
  CHECK(neg.squarefree == -2);
  CHECK(neg.factor == 5);
  CHECK_THROWS_AS(squarefree_decompose(0), std::invalid_argument);

  for (long n = -500; n <= 500; ++n) {
    if (n == 0) continue;
    long k = brute_square_factor(n);
    auto sd = squarefree_decompose(n);
    CHECK(sd.factor == k);
    CHECK(sd.squarefree == n / (k * k));
    CHECK(is_squarefree(n) == (k == 1));
  }
}

TEST_CASE("factorization and primality") {
  auto f = factorize(Integer(-360));
  REQUIRE(f.size() == 3);
  CHECK(f[0] == std::pair<Integer, unsigned>(2, 3));
  CHECK(f[1] == std::pair<Integer, unsigned>(3, 2));
  CHECK(f[2] == std::pair<Integer, unsigned>(5, 1));
  CHECK(is_prime(23));
  CHECK_FALSE(is_prime(25));
  CHECK_FALSE(is_prime(1));
}

TEST_CASE("rational square roots") {
  CHECK(*rational_sqrt(Rational(49)) == 7);
  CHECK(*rational_sqrt(Rational(25, 4)) == Rational(5, 2));
  CHECK_FALSE(rational_sqrt(Rational(32, 27)));
  CHECK_FALSE(rational_sqrt(Rational(-4)));
  CHECK(*rational_sqrt(Rational(0)) == 0);
  for (int p = -30; p <= 30; ++p)
    for (int q = 1; q <= 12; ++q) {
      Rational r(p, q);
      r.canonicalize();
      CHECK(*rational_sqrt(r * r) == abs(r));
    }
}

TEST_CASE("quadratic square roots") {
  auto r = quad_sqrt(q6("(265-104*sqrt(6))/4"));
  REQUIRE(r);
  CHECK(r->to_string() == "(13-4*sqrt(6))/2");
  auto seven = quad_sqrt(QuadraticElement(Rational(49), 6));
  REQUIRE(seven);
  CHECK(*seven == Rational(7));
  CHECK_FALSE(quad_sqrt(q6("sqrt(6)")));
  // 6 = (sqrt(6))^2 is a square only in Q(sqrt(6)).
  auto s6 = quad_sqrt(QuadraticElement(Rational(6), 6));
  REQUIRE(s6);
  CHECK(s6->to_string() == "sqrt(6)");
  CHECK_FALSE(quad_sqrt(QuadraticElement(Rational(6), 73)));
  auto im = quad_sqrt(QuadraticElement(Rational(-23), -23));
  REQUIRE(im);
  CHECK(im->to_string() == "sqrt(-23)");
}

TEST_CASE("conjugate, norm and field arithmetic") {
  auto x = q6("(13-4*sqrt(6))/2");
  CHECK(quad_conjugate(x).to_string() == "(13+4*sqrt(6))/2");
  CHECK(quad_norm(x) == Rational(73, 4));
  CHECK(quad_norm(parse_quadratic("5", 73)) == 25);
  CHECK(x * x.inverse() == Rational(1));
  CHECK((x + quad_conjugate(x)) == Rational(13));
  CHECK_THROWS_AS(QuadraticElement(1, 1, 1, 12), std::invalid_argument);
  CHECK_THROWS(q6("sqrt(6)") + parse_quadratic("sqrt(-23)", -23));
}

TEST_CASE("textual grammar") {
  for (const char* s : {"(13-4*sqrt(6))/2", "(4*sqrt(6))/9", "5/2", "-7", "sqrt(6)", "-sqrt(6)", "1+sqrt(6)"})
    CHECK(q6(s).to_string() == s);
  CHECK(parse_quadratic("sqrt(-23)", -23).to_string() == "sqrt(-23)");
  CHECK(q6("4*sqrt(6)/9") == q6("(4*sqrt(6))/9"));
  CHECK(q6("sqrt(6)+1") == q6("1+sqrt(6)"));
  CHECK(q6("(2+2*sqrt(6))/4").to_string() == "(1+sqrt(6))/2");
  CHECK_THROWS_AS(q6("sqrt(7)"), std::invalid_argument);
  CHECK_THROWS_AS(q6("(1+"), std::invalid_argument);
  CHECK_THROWS_AS(q6("1/0"), std::invalid_argument);
  CHECK(parse_rational("-6/4") == Rational(-3, 2));
}
