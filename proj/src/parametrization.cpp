#include "ap4sq/parametrization.hpp"

namespace ap4sq {

namespace detail {

Rational integral_content_scale(const std::vector<Rational>& coeffs) {
  Integer den = 1;
  for (const auto& x : coeffs) mpz_lcm(den.get_mpz_t(), den.get_mpz_t(), x.get_den_mpz_t());
  Integer g = 0;
  for (const auto& x : coeffs) {
    Integer n = x.get_num() * (den / x.get_den());
    mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), n.get_mpz_t());
  }
  if (sgn(g) == 0) throw std::invalid_argument("zero vector has no content");
  Rational s(den, g);
  s.canonicalize();
  return s;
}

}  // namespace detail

Point<QuadraticElement> lift_twist_point(const Point<Rational>& P, const Integer& d) {
  detail::require_on_curve(twist_curve(d), P);
  if (P.is_infinity()) return Point<QuadraticElement>::infinity();
  QuadraticField k(d);
  Rational dq(d);
  return Point<QuadraticElement>(k.embed(P.x() / dq), k.root() * Rational(P.y() / (dq * dq)));
}

}  // namespace ap4sq
