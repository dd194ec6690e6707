#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "ap4sq/parametrization.hpp"

using namespace ap4sq;

namespace {

Point<Rational> pt(long x, long y) { return Point<Rational>(Rational(x), Rational(y)); }
using QP = QuarticPoint<Rational>;
const RationalField kQ{};

}  // namespace

TEST_CASE("conic parametrization") {
  auto c0 = conic_param(Rational(0));
  CHECK(c0.a == -1);
  CHECK(c0.e == -1);
  CHECK(c0.c == 1);
  auto ch = conic_param(Rational(-1, 2));
  CHECK(ch.a == Rational(3, 2));
  CHECK(ch.e == Rational(-3, 2));
  CHECK(ch.c == Rational(3, 2));
  auto c1 = conic_param(Rational(1));
  CHECK(c1.a == -3);
  CHECK(c1.e == 3);
  CHECK(c1.c == 3);
  for (int p = -20; p <= 20; ++p) {
    Rational t(p, 7);
    t.canonicalize();
    auto c = conic_param(t);
    CHECK(c.a * c.a + 2 * c.e * c.e == 3 * c.c * c.c);
    CHECK(2 * c.c * c.c - c.e * c.e == quartic_value(t));
  }
}

TEST_CASE("quartic square roots") {
  CHECK(quartic_b(Rational(0)) == std::vector<Rational>{1, -1});
  CHECK(quartic_b(Rational(1)) == std::vector<Rational>{3, -3});
  CHECK(quartic_b(Rational(2)).empty());
  CHECK(quartic_b(Rational(-1, 2)) == std::vector<Rational>{Rational(3, 2), Rational(-3, 2)});
}

TEST_CASE("phi and its inverse on the special points") {
  CHECK(phi(QP(0, -1), kQ) == pt(-1, 2));
  CHECK(phi(QP(0, 1), kQ).is_infinity());
  CHECK(phi(QP::at_infinity(QuarticBranch::infinity1), kQ) == pt(1, 0));
  CHECK(phi(QP::at_infinity(QuarticBranch::infinity2), kQ) == pt(-1, -2));
  CHECK(phi(QP(1, 3), kQ) == pt(3, 6));
  CHECK(phi(QP(1, -3), kQ) == pt(0, 0));
  CHECK(phi(QP(Rational(-1, 2), Rational(3, 2)), kQ) == pt(3, -6));
  CHECK(phi_inv(pt(3, -6), kQ) == QP(Rational(-1, 2), Rational(3, 2)));
  CHECK_THROWS_AS(phi(QP(2, 1), kQ), std::invalid_argument);
  CHECK_THROWS_AS(QP::at_infinity(QuarticBranch::affine), std::invalid_argument);
  for (const auto& P : torsion_subgroup(curve_E()).points) CHECK(phi(phi_inv(P, kQ), kQ) == P);
}

TEST_CASE("constant progressions map to torsion") {
  struct Row {
    int a, b, c, e;
    Point<Rational> P;
  };
  const Row rows[] = {
      {-1, 1, 1, 1, Point<Rational>::infinity()}, {-1, -1, 1, 1, pt(-1, 2)}, {1, 1, 1, 1, pt(3, -6)},
      {1, -1, 1, 1, pt(-3, 0)},                   {-1, 1, -1, 1, pt(1, 0)},  {-1, -1, -1, 1, pt(-1, -2)},
      {1, 1, -1, 1, pt(0, 0)},                    {1, -1, -1, 1, pt(3, 6)},
  };
  for (const auto& r : rows) {
    APQuadruple<Rational> q{r.a, r.b, r.c, r.e};
    CHECK(ap_to_point(q) == r.P);
    CHECK(point_to_ap(r.P, kQ) == q);
    APQuadruple<Rational> scaled{-3 * r.a, -3 * r.b, -3 * r.c, -3 * r.e};
    CHECK(ap_to_point(scaled) == r.P);
  }
}

TEST_CASE("a progression over Q(sqrt(6))") {
  QuadraticField k(6);
  auto P = lift_twist_point(pt(-2, 16), 6);
  auto q = point_to_ap(P, k);
  REQUIRE(q.is_valid());
  CHECK(ap_to_point(q) == P);
  auto desc = ap_description(q);
  CHECK(is_valid_description(desc));
  CHECK_FALSE(is_zero(desc.diff));

  auto a = parse_quadratic("(1-2*sqrt(6))/2", 6);
  CHECK(a * a == parse_quadratic("(25-4*sqrt(6))/4", 6));
  auto r = parse_quadratic("60-25*sqrt(6)", 6);
  CHECK(a * a + r == parse_quadratic("(265-104*sqrt(6))/4", 6));
  CHECK(is_valid_description(APDescription<QuadraticElement>{a, r}));
}

TEST_CASE("verify_ap and descriptions") {
  QuadraticField k(73);
  APQuadruple<QuadraticElement> q{k.embed(1), k.embed(5), k.embed(7), k.root()};
  auto chk = verify_ap(q);
  CHECK(chk.is_ap);
  CHECK(*chk.diff == Rational(24));
  CHECK_FALSE(chk.constant);
  CHECK_FALSE(verify_ap(APQuadruple<Rational>{1, 2, 3, 4}).is_ap);
  CHECK(verify_ap(APQuadruple<Rational>{1, 1, 1, 1}).constant);
  auto desc = ap_description(q);
  CHECK(desc.first == Rational(1));
  CHECK(desc.diff == Rational(24));
  CHECK_THROWS_AS(ap_description(APQuadruple<Rational>{1, 2, 3, 4}), std::invalid_argument);
  CHECK_THROWS_AS(ap_to_point(APQuadruple<Rational>{0, 0, 0, 0}), std::invalid_argument);
}

TEST_CASE("canonical form") {
  APQuadruple<Rational> q{Rational(-2, 3), Rational(-2, 3), Rational(2, 3), Rational(2, 3)};
  auto c = canonical(q);
  CHECK(c == APQuadruple<Rational>{1, 1, -1, -1});
  CHECK(projectively_equal(q, c));
  CHECK(same_squares(q, APQuadruple<Rational>{1, 1, 1, 1}));
  CHECK_FALSE(projectively_equal(q, APQuadruple<Rational>{1, 1, 1, 1}));
}
