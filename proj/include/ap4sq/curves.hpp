#pragma once

// Elliptic curves y^2 = x(x+A)(x+B) with integer A, B and their points over
// Q or Q(sqrt(d)). The group law is generic over the scalar type.

#include "ap4sq/exact_arith.hpp"

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ap4sq {

/// y^2 = x(x+A)(x+B), nonsingular: A*B*(A-B) != 0.
class Curve {
 public:
  Curve(Integer A, Integer B);

  const Integer& A() const { return A_; }
  const Integer& B() const { return B_; }
  /// Coefficients of y^2 = x^3 + a2 x^2 + a4 x.
  Integer a2() const { return A_ + B_; }
  Integer a4() const { return A_ * B_; }
  /// Discriminant of the cubic, (A B (A-B))^2.
  Integer cubic_discriminant() const;

  friend bool operator==(const Curve& a, const Curve& b) { return a.A_ == b.A_ && a.B_ == b.B_; }
  std::string to_string() const;

 private:
  Integer A_, B_;
};

/// cos(theta) = s/r with r > |s| and gcd(r, s) = 1.
struct ThetaParams {
  ThetaParams(Integer r, Integer s);
  static ThetaParams pi_over_3() { return {2, 1}; }
  static ThetaParams two_pi_over_3() { return {2, -1}; }
  Integer r, s;
};

/// E : y^2 = x(x+3)(x-1).
Curve curve_E();
/// E^d in the integral model y^2 = x(x+3d)(x-d).
Curve twist_curve(const Integer& d);
/// E_{n,theta} : y^2 = x(x+(r+s)n)(x-(r-s)n).
Curve theta_curve(const Integer& n, const ThetaParams& tp);

template <class T>
class Point {
 public:
  static Point infinity() { return Point(); }
  Point(T x, T y) : xy_(std::in_place, std::move(x), std::move(y)) {}

  bool is_infinity() const { return !xy_.has_value(); }
  const T& x() const { return xy_->first; }
  const T& y() const { return xy_->second; }

  friend bool operator==(const Point& a, const Point& b) { return a.xy_ == b.xy_; }

 private:
  Point() = default;
  std::optional<std::pair<T, T>> xy_;
};

template <class T>
bool is_on_curve(const Curve& c, const Point<T>& P) {
  if (P.is_infinity()) return true;
  const T& x = P.x();
  T rhs = x * (x + Rational(c.A())) * (x + Rational(c.B()));
  return P.y() * P.y() == rhs;
}

template <class T>
Point<T> negate(const Point<T>& P) {
  if (P.is_infinity()) return P;
  return Point<T>(P.x(), -P.y());
}

namespace detail {

template <class T>
Point<T> add_unchecked(const Curve& c, const Point<T>& P, const Point<T>& Q) {
  if (P.is_infinity()) return Q;
  if (Q.is_infinity()) return P;
  const Rational a2(c.a2()), a4(c.a4());
  T lambda = P.x();
  if (P.x() == Q.x()) {
    if (is_zero(T(P.y() + Q.y()))) return Point<T>::infinity();
    lambda = (3 * P.x() * P.x() + 2 * a2 * P.x() + a4) / (2 * P.y());
  } else {
    lambda = (Q.y() - P.y()) / (Q.x() - P.x());
  }
  T x3 = lambda * lambda - a2 - P.x() - Q.x();
  T y3 = lambda * (P.x() - x3) - P.y();
  return Point<T>(std::move(x3), std::move(y3));
}

template <class T>
Point<T> scalar_mul_unchecked(const Curve& c, std::int64_t k, const Point<T>& P) {
  Point<T> base = k < 0 ? negate(P) : P;
  std::uint64_t n = k < 0 ? static_cast<std::uint64_t>(-(k + 1)) + 1 : static_cast<std::uint64_t>(k);
  Point<T> acc = Point<T>::infinity();
  while (n) {
    if (n & 1) acc = add_unchecked(c, acc, base);
    n >>= 1;
    if (n) base = add_unchecked(c, base, base);
  }
  return acc;
}

template <class T>
void require_on_curve(const Curve& c, const Point<T>& P) {
  if (!is_on_curve(c, P)) throw std::invalid_argument("point is not on " + c.to_string());
}

}  // namespace detail

template <class T>
Point<T> add(const Curve& c, const Point<T>& P, const Point<T>& Q) {
  detail::require_on_curve(c, P);
  detail::require_on_curve(c, Q);
  return detail::add_unchecked(c, P, Q);
}

template <class T>
Point<T> scalar_mul(const Curve& c, std::int64_t k, const Point<T>& P) {
  detail::require_on_curve(c, P);
  return detail::scalar_mul_unchecked(c, k, P);
}

/// Order of P if it is at most 12 (Mazur's bound over Q), else 0.
template <class T>
int torsion_order(const Curve& c, const Point<T>& P) {
  detail::require_on_curve(c, P);
  Point<T> Q = P;
  for (int n = 1; n <= 12; ++n) {
    if (Q.is_infinity()) return n;
    Q = detail::add_unchecked(c, Q, P);
  }
  return 0;
}

/// Z/m + Z/n with the list of points.
struct TorsionSubgroup {
  int m = 1;
  int n = 1;
  std::vector<Point<Rational>> points;
  std::size_t order() const { return points.size(); }
};

/// Full rational torsion via Lutz-Nagell on the integral model.
TorsionSubgroup torsion_subgroup(const Curve& c);

/// The eight points of E(Q), which are all of E(Q(sqrt(d)))_tors.
std::vector<Point<QuadraticElement>> torsion_E_over_quadratic(const Integer& d);

std::string to_string(const Point<Rational>& P);
std::string to_string(const Point<QuadraticElement>& P);

Point<Rational> parse_point(std::string_view x, std::string_view y, const RationalField& k);
Point<QuadraticElement> parse_point(std::string_view x, std::string_view y, const QuadraticField& k);

}  // namespace ap4sq
