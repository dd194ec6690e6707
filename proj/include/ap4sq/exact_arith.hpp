#pragma once

// Exact scalars: arbitrary-precision integers and rationals (GMP), and
// elements (p + q*sqrt(d))/m of a quadratic field Q(sqrt(d)).

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace ap4sq {

using Integer = mpz_class;
using Rational = mpq_class;

/// n = squarefree * factor^2 with sign(squarefree) = sign(n) and factor > 0.
struct SquarefreeDecomposition {
  Integer squarefree;
  Integer factor;
};

/// Prime factorization of |n| by trial division, primes ascending.
std::vector<std::pair<Integer, unsigned>> factorize(const Integer& n);

/// Distinct primes dividing |n|, ascending.
std::vector<Integer> prime_divisors(const Integer& n);

SquarefreeDecomposition squarefree_decompose(const Integer& n);
bool is_squarefree(const Integer& n);
bool is_prime(const Integer& n);

std::optional<Integer> integer_sqrt_exact(const Integer& n);
std::optional<Rational> rational_sqrt(const Rational& x);

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline bool is_canonical_positive(const Rational& x) { return sgn(x) >= 0; }
std::string to_string(const Rational& x);
Rational parse_rational(std::string_view text);

/// (p + q*sqrt(d))/m with gcd(p, q, m) = 1 and m > 0. d is squarefree and
/// not in {0, 1}; the constructors that take d from the outside check it.
class QuadraticElement {
 public:
  QuadraticElement(Integer p, Integer q, Integer m, Integer d);
  QuadraticElement(const Rational& r, const Integer& d);

  static QuadraticElement sqrt_d(const Integer& d);

  /// Constant r and sqrt(d) in this element's field.
  QuadraticElement constant(const Rational& r) const { return lift(r); }
  QuadraticElement root() const;

  const Integer& p() const { return p_; }
  const Integer& q() const { return q_; }
  const Integer& m() const { return m_; }
  const Integer& d() const { return d_; }

  Rational rational_part() const;
  Rational sqrt_coefficient() const;
  bool is_zero() const { return sgn(p_) == 0 && sgn(q_) == 0; }
  bool is_rational() const { return sgn(q_) == 0; }

  QuadraticElement operator-() const;
  QuadraticElement inverse() const;

  QuadraticElement& operator+=(const QuadraticElement& o);
  QuadraticElement& operator-=(const QuadraticElement& o);
  QuadraticElement& operator*=(const QuadraticElement& o);
  QuadraticElement& operator/=(const QuadraticElement& o);

  friend QuadraticElement operator+(QuadraticElement a, const QuadraticElement& b) { return a += b; }
  friend QuadraticElement operator-(QuadraticElement a, const QuadraticElement& b) { return a -= b; }
  friend QuadraticElement operator*(QuadraticElement a, const QuadraticElement& b) { return a *= b; }
  friend QuadraticElement operator/(QuadraticElement a, const QuadraticElement& b) { return a /= b; }

  // Mixed arithmetic keeps the field of the quadratic operand.
  friend QuadraticElement operator+(const QuadraticElement& a, const Rational& r) { return a + a.lift(r); }
  friend QuadraticElement operator+(const Rational& r, const QuadraticElement& a) { return a.lift(r) + a; }
  friend QuadraticElement operator-(const QuadraticElement& a, const Rational& r) { return a - a.lift(r); }
  friend QuadraticElement operator-(const Rational& r, const QuadraticElement& a) { return a.lift(r) - a; }
  friend QuadraticElement operator*(const QuadraticElement& a, const Rational& r) { return a * a.lift(r); }
  friend QuadraticElement operator*(const Rational& r, const QuadraticElement& a) { return a.lift(r) * a; }
  friend QuadraticElement operator/(const QuadraticElement& a, const Rational& r) { return a / a.lift(r); }
  friend QuadraticElement operator/(const Rational& r, const QuadraticElement& a) { return a.lift(r) / a; }

  friend bool operator==(const QuadraticElement& a, const QuadraticElement& b) {
    return a.d_ == b.d_ && a.p_ == b.p_ && a.q_ == b.q_ && a.m_ == b.m_;
  }
  friend bool operator==(const QuadraticElement& a, const Rational& r) {
    return a.is_rational() && a.rational_part() == r;
  }

  std::string to_string() const;

 private:
  friend struct QuadraticField;
  struct Unchecked {};
  QuadraticElement(Unchecked, Integer p, Integer q, Integer m, Integer d);
  QuadraticElement lift(const Rational& r) const;
  void normalize();
  void require_same_field(const QuadraticElement& o) const;

  Integer p_, q_, m_, d_;
};

std::ostream& operator<<(std::ostream& os, const QuadraticElement& x);

QuadraticElement quad_conjugate(const QuadraticElement& x);
Rational quad_norm(const QuadraticElement& x);

/// Square root in Q(sqrt(d)) with canonical sign, if x is a square there.
std::optional<QuadraticElement> quad_sqrt(const QuadraticElement& x);

inline bool is_zero(const QuadraticElement& x) { return x.is_zero(); }
bool is_canonical_positive(const QuadraticElement& x);
inline std::string to_string(const QuadraticElement& x) { return x.to_string(); }

/// Parses the textual grammar, e.g. "(13-4*sqrt(6))/2", "sqrt(-23)", "7",
/// "5/2". Any sqrt(k) must have k == d.
QuadraticElement parse_quadratic(std::string_view text, const Integer& d);

// Overloads used by the scalar-generic templates.
inline std::optional<Rational> sqrt_exact(const Rational& x) { return rational_sqrt(x); }
inline std::optional<QuadraticElement> sqrt_exact(const QuadraticElement& x) { return quad_sqrt(x); }

/// Field handles: build constants of the scalar type.
struct RationalField {
  using Element = Rational;
  Element embed(const Rational& r) const { return r; }
  Integer discriminant() const { return 1; }
};

struct QuadraticField {
  using Element = QuadraticElement;
  explicit QuadraticField(Integer d);
  Element embed(const Rational& r) const;
  Element root() const;
  Integer discriminant() const { return d; }
  Integer d;

 private:
  struct Trusted {};
  QuadraticField(Trusted, Integer disc) : d(std::move(disc)) {}
  friend QuadraticField field_from(const QuadraticElement& x);
};

template <class T>
struct field_of;
template <>
struct field_of<Rational> {
  using type = RationalField;
};
template <>
struct field_of<QuadraticElement> {
  using type = QuadraticField;
};
template <class T>
using field_t = typename field_of<T>::type;

inline RationalField field_from(const Rational&) { return {}; }
QuadraticField field_from(const QuadraticElement& x);

inline Rational to_rational(const Rational& x) { return x; }
std::optional<Rational> to_rational(const QuadraticElement& x);

}  // namespace ap4sq
