#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ap4sq/curves.hpp"
#include "ap4sq/parametrization.hpp"

using namespace ap4sq;

namespace {

Point<Rational> pt(long x, long y) { return Point<Rational>(Rational(x), Rational(y)); }

}  // namespace

TEST_CASE("curve construction") {
  Curve E = curve_E();
  CHECK(E.A() == 3);
  CHECK(E.B() == -1);
  CHECK(twist_curve(6) == Curve(18, -6));
  CHECK(twist_curve(-5) == Curve(-15, 5));
  CHECK_THROWS_AS(twist_curve(12), std::invalid_argument);
  CHECK(theta_curve(7, ThetaParams::pi_over_3()) == Curve(21, -7));
  CHECK(theta_curve(7, ThetaParams::two_pi_over_3()) == Curve(7, -21));
  CHECK_THROWS_AS(Curve(2, 2), std::invalid_argument);
  CHECK_THROWS_AS(ThetaParams(2, 2), std::invalid_argument);
}

TEST_CASE("membership and group law on E") {
  Curve E = curve_E();
  CHECK(is_on_curve(E, pt(-1, 2)));
  CHECK_FALSE(is_on_curve(E, pt(2, 2)));
  CHECK(scalar_mul(E, 2, pt(-1, 2)) == pt(1, 0));
  CHECK(add(E, pt(1, 0), pt(1, 0)) == Point<Rational>::infinity());
  CHECK(scalar_mul(E, 4, pt(-1, 2)) == Point<Rational>::infinity());
  CHECK(scalar_mul(E, -1, pt(-1, 2)) == pt(-1, -2));
  CHECK(add(E, pt(0, 0), pt(-3, 0)) == pt(1, 0));
  CHECK_THROWS_AS(add(E, pt(2, 2), pt(0, 0)), std::invalid_argument);
  CHECK(torsion_order(E, pt(3, 6)) == 4);
  CHECK(torsion_order(E, pt(0, 0)) == 2);
}

TEST_CASE("torsion of E and its twists") {
  auto T = torsion_subgroup(curve_E());
  CHECK(T.m == 2);
  CHECK(T.n == 4);
  REQUIRE(T.order() == 8);
  CHECK(T.points[0].is_infinity());
  for (const auto& P : T.points) CHECK(torsion_order(curve_E(), P) != 0);

  auto T6 = torsion_subgroup(twist_curve(6));
  CHECK(T6.order() == 4);
  CHECK(T6.m == 2);
  CHECK(T6.n == 2);
  CHECK(torsion_subgroup(twist_curve(5)).order() == 4);

  for (long d = -40; d <= 40; ++d) {
    if (d == 0 || d == 1 || !is_squarefree(d)) continue;
    CAPTURE(d);
    CHECK(torsion_subgroup(twist_curve(d)).order() == 4);
  }
}

TEST_CASE("points over quadratic fields") {
  QuadraticField k(6);
  auto pts = torsion_E_over_quadratic(6);
  CHECK(pts.size() == 8);
  // (-2, 16) on y^2 = x(x+18)(x-6) lifts to (-1/3, 4 sqrt(6)/9) on E.
  auto P = parse_point("-1/3", "(4*sqrt(6))/9", k);
  CHECK(is_on_curve(curve_E(), P));
  CHECK(torsion_order(curve_E(), P) == 0);
  CHECK(to_string(P) == "(-1/3,(4*sqrt(6))/9)");
  CHECK(to_string(Point<QuadraticElement>::infinity()) == "inf");
  CHECK(to_string(pt(3, -6)) == "(3,-6)");
  CHECK_FALSE(is_on_curve(curve_E(), parse_point("2", "2", k)));
  CHECK(lift_twist_point(pt(-2, 16), 6) == P);
}
