#include "ap4sq/curves.hpp"

#include <algorithm>

namespace ap4sq {

Curve::Curve(Integer A, Integer B) : A_(std::move(A)), B_(std::move(B)) {
  if (sgn(A_) == 0 || sgn(B_) == 0 || A_ == B_) throw std::invalid_argument("singular curve: " + to_string());
}

Integer Curve::cubic_discriminant() const {
  Integer t = A_ * B_ * (A_ - B_);
  return t * t;
}

std::string Curve::to_string() const {
  return "y^2=x(x" + std::string(sgn(A_) < 0 ? "" : "+") + A_.get_str() + ")(x" + (sgn(B_) < 0 ? "" : "+") +
         B_.get_str() + ")";
}

ThetaParams::ThetaParams(Integer r_, Integer s_) : r(std::move(r_)), s(std::move(s_)) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), r.get_mpz_t(), s.get_mpz_t());
  if (sgn(r) <= 0 || abs(s) >= r || g != 1) throw std::invalid_argument("theta needs coprime r > |s|");
}

Curve curve_E() { return Curve(3, -1); }

Curve twist_curve(const Integer& d) {
  if (sgn(d) == 0 || !is_squarefree(d)) throw std::invalid_argument("twist parameter must be squarefree: " + d.get_str());
  return Curve(3 * d, -d);
}

Curve theta_curve(const Integer& n, const ThetaParams& tp) {
  if (sgn(n) <= 0) throw std::invalid_argument("theta curve needs n >= 1");
  return Curve((tp.r + tp.s) * n, -(tp.r - tp.s) * n);
}

namespace {

// Integer roots of f(x) = x(x+A)(x+B) - k.
std::vector<Integer> integer_roots(const Curve& c, const Integer& k) {
  const Integer& A = c.A();
  const Integer& B = c.B();
  auto f = [&](const Integer& x) -> Integer { return x * (x + A) * (x + B) - k; };

  // Critical points of f are (-s -+ sqrt(s^2 - 3AB))/3 with s = A+B; the
  // radicand is positive because the cubic has three distinct real roots.
  Integer s = A + B;
  Integer disc = s * s - 3 * A * B;
  Integer r;
  mpz_sqrt(r.get_mpz_t(), disc.get_mpz_t());
  Integer k1, k2;
  Integer n1 = -s - r, n2 = -s + r;
  mpz_fdiv_q_ui(k1.get_mpz_t(), n1.get_mpz_t(), 3);
  mpz_fdiv_q_ui(k2.get_mpz_t(), n2.get_mpz_t(), 3);

  Integer bound = 1 + abs(s) + abs(A * B) + abs(k);
  std::vector<Integer> roots;
  auto probe = [&](const Integer& x) {
    if (sgn(f(x)) == 0) roots.push_back(x);
  };
  // f restricted to [lo, hi] is monotone; find a root by bisection.
  auto bisect = [&](Integer lo, Integer hi) {
    if (lo > hi) return;
    int slo = sgn(f(lo)), shi = sgn(f(hi));
    if (slo == 0) { roots.push_back(lo); return; }
    if (shi == 0) { roots.push_back(hi); return; }
    if (slo == shi) return;
    while (hi - lo > 1) {
      Integer mid = (lo + hi) / 2;
      int sm = sgn(f(mid));
      if (sm == 0) { roots.push_back(mid); return; }
      if (sm == slo) lo = mid; else hi = mid;
    }
  };
  for (Integer x = k1 - 2; x <= k1 + 2; ++x) probe(x);
  for (Integer x = k2 - 2; x <= k2 + 2; ++x) probe(x);
  bisect(-bound, k1 - 3);
  bisect(k1 + 3, k2 - 3);
  bisect(k2 + 3, bound);
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
  return roots;
}

std::vector<Integer> positive_divisors(const Integer& n) {
  std::vector<Integer> divs{1};
  for (const auto& [p, e] : factorize(n)) {
    std::size_t base = divs.size();
    Integer pk = 1;
    for (unsigned i = 0; i < e; ++i) {
      pk *= p;
      for (std::size_t j = 0; j < base; ++j) divs.push_back(divs[j] * pk);
    }
  }
  std::sort(divs.begin(), divs.end());
  return divs;
}

bool point_less(const Point<Rational>& a, const Point<Rational>& b) {
  if (a.is_infinity() || b.is_infinity()) return a.is_infinity() && !b.is_infinity();
  if (a.x() != b.x()) return a.x() < b.x();
  return a.y() < b.y();
}

}  // namespace

TorsionSubgroup torsion_subgroup(const Curve& c) {
  TorsionSubgroup T;
  T.points.push_back(Point<Rational>::infinity());
  for (const Integer& x : {Integer(0), Integer(-c.A()), Integer(-c.B())}) T.points.emplace_back(Rational(x), Rational(0));

  // Lutz-Nagell: y^2 | (A B (A-B))^2, i.e. y | A B (A-B).
  for (const Integer& y : positive_divisors(c.A() * c.B() * (c.A() - c.B()))) {
    for (const Integer& x : integer_roots(c, y * y)) {
      Point<Rational> P{Rational(x), Rational(y)};
      if (torsion_order(c, P) == 0) continue;
      T.points.push_back(P);
      T.points.push_back(negate(P));
    }
  }
  std::sort(T.points.begin(), T.points.end(), point_less);
  T.m = 2;
  T.n = static_cast<int>(T.points.size()) / 2;
  return T;
}

std::vector<Point<QuadraticElement>> torsion_E_over_quadratic(const Integer& d) {
  QuadraticField k(d);
  std::vector<Point<QuadraticElement>> out;
  for (const auto& P : torsion_subgroup(curve_E()).points) {
    if (P.is_infinity()) out.push_back(Point<QuadraticElement>::infinity());
    else out.emplace_back(k.embed(P.x()), k.embed(P.y()));
  }
  return out;
}

std::string to_string(const Point<Rational>& P) {
  if (P.is_infinity()) return "inf";
  return "(" + to_string(P.x()) + "," + to_string(P.y()) + ")";
}

std::string to_string(const Point<QuadraticElement>& P) {
  if (P.is_infinity()) return "inf";
  return "(" + P.x().to_string() + "," + P.y().to_string() + ")";
}

Point<Rational> parse_point(std::string_view x, std::string_view y, const RationalField&) {
  return Point<Rational>(parse_rational(x), parse_rational(y));
}

Point<QuadraticElement> parse_point(std::string_view x, std::string_view y, const QuadraticField& k) {
  return Point<QuadraticElement>(parse_quadratic(x, k.d), parse_quadratic(y, k.d));
}

}  // namespace ap4sq
