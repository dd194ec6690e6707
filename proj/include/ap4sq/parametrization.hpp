#pragma once

// Four squares in arithmetic progression over a field k <-> points of
// E(k), E : y^2 = x(x+3)(x-1).
//
// A progression a^2, b^2, c^2, e^2 is a projective point [a:b:c:e] with
//   a^2 + c^2 = 2b^2,  b^2 + e^2 = 2c^2.
// Eliminating b gives the conic a^2 + 2e^2 = 3c^2, parametrized through
// (1,1,1) by t; b is then a square root of the quartic
//   b^2 = 4t^4 - 8t^3 + 8t^2 + 4t + 1 = 2c(t)^2 - e(t)^2,
// which is birational to E via phi.

#include "ap4sq/curves.hpp"
#include "ap4sq/exact_arith.hpp"

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace ap4sq {

template <class T>
struct ConicPoint {
  T a, e, c;
};

/// (2t^2-4t-1, 2t^2+2t-1, 2t^2+1); always a^2 + 2e^2 = 3c^2.
template <class T>
ConicPoint<T> conic_param(const T& t) {
  T t2 = t * t;
  return {2 * t2 - 4 * t - 1, 2 * t2 + 2 * t - 1, 2 * t2 + 1};
}

template <class T>
T quartic_value(const T& t) {
  T t2 = t * t;
  return 4 * t2 * t2 - 8 * t2 * t + 8 * t2 + 4 * t + 1;
}

/// Square roots of the quartic at t in the field of t: {b, -b}, {0} or {}.
template <class T>
std::vector<T> quartic_b(const T& t) {
  std::optional<T> b = sqrt_exact(quartic_value(t));
  if (!b) return {};
  if (is_zero(*b)) return {*b};
  return {*b, -*b};
}

/// infinity1 has b/t^2 -> 2, infinity2 has b/t^2 -> -2.
enum class QuarticBranch { affine, infinity1, infinity2 };

/// A point of the quartic: affine (t, b) or one of its two points at infinity.
template <class T>
class QuarticPoint {
 public:
  QuarticPoint(T t, T b) : branch_(QuarticBranch::affine), tb_(std::in_place, std::move(t), std::move(b)) {}
  static QuarticPoint at_infinity(QuarticBranch br) {
    if (br == QuarticBranch::affine) throw std::invalid_argument("affine branch needs coordinates");
    return QuarticPoint(br);
  }

  QuarticBranch branch() const { return branch_; }
  bool is_affine() const { return branch_ == QuarticBranch::affine; }
  const T& t() const { return tb_->first; }
  const T& b() const { return tb_->second; }

  friend bool operator==(const QuarticPoint& p, const QuarticPoint& q) {
    return p.branch_ == q.branch_ && p.tb_ == q.tb_;
  }

 private:
  explicit QuarticPoint(QuarticBranch br) : branch_(br) {}
  QuarticBranch branch_;
  std::optional<std::pair<T, T>> tb_;
};

template <class T>
bool on_quartic(const QuarticPoint<T>& q) {
  return !q.is_affine() || q.b() * q.b() == quartic_value(q.t());
}

/// phi(0,-1) = (-1,2), phi(0,1) = O, phi(infinity1) = (1,0),
/// phi(infinity2) = (-1,-2); the displayed rational map elsewhere.
template <class T>
Point<T> phi(const QuarticPoint<T>& q, const field_t<T>& k) {
  if (!on_quartic(q)) throw std::invalid_argument("point is not on the quartic");
  if (q.branch() == QuarticBranch::infinity1) return Point<T>(k.embed(1), k.embed(0));
  if (q.branch() == QuarticBranch::infinity2) return Point<T>(k.embed(-1), k.embed(-2));
  const T& t = q.t();
  const T& b = q.b();
  if (is_zero(t)) {
    if (b == Rational(-1)) return Point<T>(k.embed(-1), k.embed(2));
    return Point<T>::infinity();
  }
  T t2 = t * t;
  T x = (1 + b + 2 * t) / (2 * t2);
  T y = (1 + b + 3 * t + b * t + 4 * t2 - 2 * t2 * t) / (2 * t2 * t);
  return Point<T>(std::move(x), std::move(y));
}

/// Inverse of phi; total on E(k).
template <class T>
QuarticPoint<T> phi_inv(const Point<T>& P, const field_t<T>& k) {
  detail::require_on_curve(curve_E(), P);
  if (P.is_infinity()) return QuarticPoint<T>(k.embed(0), k.embed(1));
  const T& x = P.x();
  const T& y = P.y();
  if (x == Rational(1)) return QuarticPoint<T>::at_infinity(QuarticBranch::infinity1);
  if (x == Rational(-1)) {
    if (y == Rational(2)) return QuarticPoint<T>(k.embed(0), k.embed(-1));
    return QuarticPoint<T>::at_infinity(QuarticBranch::infinity2);
  }
  T x2m1 = x * x - 1;
  T t = (x + y - 1) / x2m1;
  T b = (x * x * x + 5 * x * x + 2 * x * y - 2 * y - x + 3) / (x2m1 * (x + 1));
  return QuarticPoint<T>(std::move(t), std::move(b));
}

/// Projective [a:b:c:e]; the fourth coordinate is the e of the conic above.
template <class T>
struct APQuadruple {
  T a, b, c, e;

  std::array<T, 4> coords() const { return {a, b, c, e}; }
  bool is_zero_vector() const { return is_zero(a) && is_zero(b) && is_zero(c) && is_zero(e); }
  /// a^2 + c^2 = 2b^2 and b^2 + e^2 = 2c^2, not all zero.
  bool is_valid() const {
    T a2 = a * a, b2 = b * b, c2 = c * c, e2 = e * e;
    return !is_zero_vector() && a2 + c2 == 2 * b2 && b2 + e2 == 2 * c2;
  }

  friend bool operator==(const APQuadruple& p, const APQuadruple& q) {
    return p.a == q.a && p.b == q.b && p.c == q.c && p.e == q.e;
  }
};

template <class T>
bool projectively_equal(const APQuadruple<T>& p, const APQuadruple<T>& q) {
  auto u = p.coords();
  auto v = q.coords();
  // Cross ratios u_i v_j = u_j v_i for all pairs.
  for (int i = 0; i < 4; ++i)
    for (int j = i + 1; j < 4; ++j)
      if (!(u[i] * v[j] == u[j] * v[i])) return false;
  return !p.is_zero_vector() && !q.is_zero_vector();
}

/// The four squares a^2, b^2, c^2, e^2 agree after scaling by a common factor.
template <class T>
bool same_squares(const APQuadruple<T>& p, const APQuadruple<T>& q) {
  APQuadruple<T> ps{p.a * p.a, p.b * p.b, p.c * p.c, p.e * p.e};
  APQuadruple<T> qs{q.a * q.a, q.b * q.b, q.c * q.c, q.e * q.e};
  return projectively_equal(ps, qs);
}

namespace detail {

Rational integral_content_scale(const std::vector<Rational>& coeffs);

inline Rational content_scale(const std::array<Rational, 4>& v) {
  return integral_content_scale({v.begin(), v.end()});
}

inline Rational content_scale(const std::array<QuadraticElement, 4>& v) {
  std::vector<Rational> coeffs;
  for (const auto& x : v) {
    coeffs.push_back(x.rational_part());
    coeffs.push_back(x.sqrt_coefficient());
  }
  return integral_content_scale(coeffs);
}

struct TorsionPattern {
  int a, b, c, e;
  int x, y;
  bool infinity;
};

// Sign patterns of the constant progressions and their points of E.
inline constexpr std::array<TorsionPattern, 8> kTorsionPatterns{{
    {-1, 1, 1, 1, 0, 0, true},
    {-1, -1, 1, 1, -1, 2, false},
    {1, 1, 1, 1, 3, -6, false},
    {1, -1, 1, 1, -3, 0, false},
    {-1, 1, -1, 1, 1, 0, false},
    {-1, -1, -1, 1, -1, -2, false},
    {1, 1, -1, 1, 0, 0, false},
    {1, -1, -1, 1, 3, 6, false},
}};

template <class T>
APQuadruple<T> pattern_quadruple(const TorsionPattern& s, const field_t<T>& k) {
  return {k.embed(s.a), k.embed(s.b), k.embed(s.c), k.embed(s.e)};
}

template <class T>
Point<T> pattern_point(const TorsionPattern& s, const field_t<T>& k) {
  if (s.infinity) return Point<T>::infinity();
  return Point<T>(k.embed(s.x), k.embed(s.y));
}

template <class T>
bool is_pattern_point(const Point<T>& P, const TorsionPattern& s) {
  if (P.is_infinity() || s.infinity) return P.is_infinity() && s.infinity;
  return P.x() == Rational(s.x) && P.y() == Rational(s.y);
}

}  // namespace detail

/// Scaled so the first nonzero coordinate is 1, then by a rational so all
/// coordinates are integral over Z[sqrt(d)]-coefficients with content 1 and
/// the first nonzero coordinate positive.
template <class T>
APQuadruple<T> canonical(const APQuadruple<T>& q) {
  if (q.is_zero_vector()) throw std::invalid_argument("zero quadruple");
  auto v = q.coords();
  T lead = v[0];
  for (const auto& x : v)
    if (!is_zero(x)) {
      lead = x;
      break;
    }
  for (auto& x : v) x = x / lead;
  Rational s = detail::content_scale(v);
  return {v[0] * s, v[1] * s, v[2] * s, v[3] * s};
}

/// The point of E(k) attached to a progression; the eight constant sign
/// patterns go to the torsion points by a fixed table.
template <class T>
Point<T> ap_to_point(const APQuadruple<T>& q) {
  if (!q.is_valid()) throw std::invalid_argument("not a progression of four squares");
  const auto k = field_from(q.a);
  for (const auto& s : detail::kTorsionPatterns)
    if (projectively_equal(q, detail::pattern_quadruple<T>(s, k))) return detail::pattern_point<T>(s, k);
  // Conic parameter through (1,1,1); the denominator only vanishes there.
  T t = (q.a - q.e) / (q.a + 2 * q.e - 3 * q.c);
  T b = q.b * (2 * t * t + 1) / q.c;
  return phi(QuarticPoint<T>(std::move(t), std::move(b)), k);
}

template <class T>
APQuadruple<T> point_to_ap(const Point<T>& P, const field_t<T>& k) {
  detail::require_on_curve(curve_E(), P);
  for (const auto& s : detail::kTorsionPatterns)
    if (detail::is_pattern_point(P, s)) return detail::pattern_quadruple<T>(s, k);
  QuarticPoint<T> tb = phi_inv(P, k);
  ConicPoint<T> cp = conic_param(tb.t());
  return {cp.a, tb.b(), cp.c, cp.e};
}

/// (X, Y) on y^2 = x(x+3d)(x-d) to (X/d, Y sqrt(d)/d^2) on E over Q(sqrt(d)).
Point<QuadraticElement> lift_twist_point(const Point<Rational>& P, const Integer& d);

template <class T>
struct APCheck {
  bool is_ap = false;
  std::optional<T> diff;
  bool constant = false;
};

template <class T>
APCheck<T> verify_ap(const APQuadruple<T>& q) {
  if (!q.is_valid()) return {};
  T diff = q.b * q.b - q.a * q.a;
  bool constant = is_zero(diff);
  return {true, std::move(diff), constant};
}

/// first^2 + i*diff, i = 0..3, are the four squares.
template <class T>
struct APDescription {
  T first;
  T diff;
};

template <class T>
APDescription<T> ap_description(const APQuadruple<T>& q) {
  APCheck<T> chk = verify_ap(q);
  if (!chk.is_ap) throw std::invalid_argument("not a progression of four squares");
  T first = is_canonical_positive(q.a) ? q.a : T(-q.a);
  return {std::move(first), std::move(*chk.diff)};
}

template <class T>
bool is_valid_description(const APDescription<T>& desc) {
  T s = desc.first * desc.first;
  for (int i = 0; i < 4; ++i) {
    if (!sqrt_exact(s)) return false;
    s = s + desc.diff;
  }
  return true;
}

}  // namespace ap4sq
