#pragma once

// Randomized property checks shared by the unit suite and the acceptance
// binary. Each returns the number of cases run and the first failure.

#include "ap4sq/criteria.hpp"
#include "ap4sq/parametrization.hpp"
#include "ap4sq/thue_pyth.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <random>
#include <string>
#include <vector>

namespace props {

using namespace ap4sq;

struct Result {
  std::size_t cases = 0;
  std::size_t failures = 0;
  std::string first_failure;

  void check(bool ok, const std::string& what) {
    ++cases;
    if (ok) return;
    if (failures++ == 0) first_failure = what;
  }
  bool ok() const { return failures == 0 && cases > 0; }
};

class Gen {
 public:
  explicit Gen(std::uint64_t seed) : rng_(seed) {}
  std::int64_t between(std::int64_t lo, std::int64_t hi) { return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng_); }
  template <class C>
  const auto& pick(const C& c) {
    return c[static_cast<std::size_t>(between(0, static_cast<std::int64_t>(c.size()) - 1))];
  }
  Rational rational(std::int64_t num, std::int64_t den) {
    Rational r(Integer(static_cast<long>(between(-num, num))), Integer(static_cast<long>(between(1, den))));
    r.canonicalize();
    return r;
  }
  /// A coprime pair of opposite parity.
  std::pair<std::int64_t, std::int64_t> coprime_opposite_parity(std::int64_t bound) {
    while (true) {
      std::int64_t a = between(-bound, bound), b = between(-bound, bound);
      if (a == 0 || b == 0 || std::gcd(a, b) != 1 || (a - b) % 2 == 0) continue;
      return {a, b};
    }
  }

 private:
  std::mt19937_64 rng_;
};

/// Points m*G + T on a curve with a known point G of infinite order.
template <class T>
std::vector<Point<T>> sample_points(const Curve& c, const Point<T>& G, const std::vector<Point<T>>& torsion, int span) {
  std::vector<Point<T>> out;
  for (int m = -span; m <= span; ++m) {
    Point<T> mG = scalar_mul(c, m, G);
    for (const auto& t : torsion) out.push_back(add(c, mG, t));
  }
  return out;
}

template <class T>
void group_axioms(Result& res, const Curve& c, const std::vector<Point<T>>& pts, Gen& g, int triples) {
  const auto O = Point<T>::infinity();
  for (int i = 0; i < triples; ++i) {
    const auto& P = g.pick(pts);
    const auto& Q = g.pick(pts);
    const auto& R = g.pick(pts);
    auto PQ = add(c, P, Q);
    bool ok = is_on_curve(c, PQ) && PQ == add(c, Q, P) && add(c, PQ, R) == add(c, P, add(c, Q, R)) &&
              add(c, P, O) == P && add(c, P, negate(P)) == O;
    res.check(ok, "group law on " + c.to_string() + " at " + to_string(P) + ", " + to_string(Q) + ", " + to_string(R));
  }
}

inline Result group_law(std::uint64_t seed = 1) {
  Result res;
  Gen g(seed);
  Curve c6 = twist_curve(6);
  auto pts6 = sample_points<Rational>(c6, Point<Rational>(Rational(-2), Rational(16)), torsion_subgroup(c6).points, 3);
  group_axioms(res, c6, pts6, g, 400);

  Curve c23 = twist_curve(-23);
  auto G23 = naive_point_search(c23, 100000);
  if (!G23) {
    res.check(false, "no point found on the twist by -23");
    return res;
  }
  group_axioms(res, c23, sample_points<Rational>(c23, *G23, torsion_subgroup(c23).points, 2), g, 300);

  // The same group seen over Q(sqrt(6)) on E itself.
  std::vector<Point<QuadraticElement>> lifted;
  for (const auto& P : pts6) lifted.push_back(lift_twist_point(P, 6));
  group_axioms(res, curve_E(), lifted, g, 300);
  return res;
}

inline QuadraticElement random_element(Gen& g, const QuadraticField& k) {
  return k.embed(g.rational(30, 12)) + k.root() * g.rational(30, 12);
}

template <class T>
void conic_quartic_at(Result& res, const T& t, const std::string& label) {
  auto cp = conic_param(t);
  bool ok = cp.a * cp.a + 2 * cp.e * cp.e == 3 * cp.c * cp.c && 2 * cp.c * cp.c - cp.e * cp.e == quartic_value(t);
  for (const auto& b : quartic_b(t)) ok = ok && b * b == quartic_value(t);
  res.check(ok, "conic/quartic identity at t = " + label);
}

template <class T>
void map_round_trip(Result& res, const Point<T>& P, const field_t<T>& k) {
  auto q = phi_inv(P, k);
  auto ap = point_to_ap(P, k);
  bool ok = on_quartic(q) && phi(q, k) == P && ap.is_valid() && ap_to_point(ap) == P;
  res.check(ok, "round trip at " + to_string(P));
}

inline Result conic_quartic(std::uint64_t seed = 2) {
  Result res;
  Gen g(seed);
  for (int i = 0; i < 100; ++i) {
    Rational t = g.rational(60, 20);
    conic_quartic_at(res, t, to_string(t));
  }
  for (long d : {6L, 73L, -23L}) {
    QuadraticField k(d);
    for (int i = 0; i < 100; ++i) {
      auto t = random_element(g, k);
      conic_quartic_at(res, t, t.to_string());
    }
  }
  // Round trips through the maps on points of E over Q and Q(sqrt(6)).
  for (const auto& P : torsion_subgroup(curve_E()).points) map_round_trip(res, P, RationalField{});
  Curve c6 = twist_curve(6);
  QuadraticField k6(6);
  for (const auto& P : sample_points<Rational>(c6, Point<Rational>(Rational(-2), Rational(16)), torsion_subgroup(c6).points, 2))
    map_round_trip(res, lift_twist_point(P, 6), k6);
  return res;
}

/// Smallest eigenvalue of the Gram matrix, for a safe search box.
inline double min_eigenvalue(const TernaryForm& f) {
  double a = f.a, b = f.b, c = f.c, d = f.xy / 2.0, e = f.yz / 2.0, h = f.xz / 2.0;
  double p1 = d * d + e * e + h * h;
  double q = (a + b + c) / 3;
  double p2 = (a - q) * (a - q) + (b - q) * (b - q) + (c - q) * (c - q) + 2 * p1;
  double p = std::sqrt(p2 / 6);
  if (p == 0) return a;
  double B[3][3] = {{(a - q) / p, d / p, h / p}, {d / p, (b - q) / p, e / p}, {h / p, e / p, (c - q) / p}};
  double det = B[0][0] * (B[1][1] * B[2][2] - B[1][2] * B[2][1]) - B[0][1] * (B[1][0] * B[2][2] - B[1][2] * B[2][0]) +
               B[0][2] * (B[1][0] * B[2][1] - B[1][1] * B[2][0]);
  double r = std::clamp(det / 2, -1.0, 1.0);
  double phi = std::acos(r) / 3;
  return q + 2 * p * std::cos(phi + 2 * M_PI / 3);
}

inline std::uint64_t naive_count(const TernaryForm& f, std::int64_t n) {
  auto box = static_cast<std::int64_t>(std::sqrt(n / min_eigenvalue(f))) + 2;
  std::uint64_t count = 0;
  for (std::int64_t X = -box; X <= box; ++X)
    for (std::int64_t Y = -box; Y <= box; ++Y)
      for (std::int64_t Z = -box; Z <= box; ++Z)
        if (f(X, Y, Z) == n) ++count;
  return count;
}

inline Result representation_counts(std::uint64_t seed = 3) {
  Result res;
  Gen g(seed);
  const std::vector<TernaryForm> named{forms::yoshida_2pi3_a(), forms::yoshida_2pi3_b(), forms::yoshida_pi3_a(),
                                       forms::yoshida_pi3_b(),  forms::ono_a(),          forms::ono_b()};
  for (int i = 0; i < 50; ++i) {
    std::optional<TernaryForm> f;
    if (i % 2 == 0) {
      f = g.pick(named);
    } else {
      while (!f) {
        try {
          f = TernaryForm(g.between(1, 6), g.between(1, 6), g.between(1, 9), g.between(-3, 3), g.between(-3, 3),
                          g.between(-3, 3));
        } catch (const std::invalid_argument&) {
        }
      }
    }
    std::int64_t n = g.between(1, 300);
    auto fast = count_representations(*f, n);
    res.check(fast % 2 == 0 && fast == naive_count(*f, n),
              "count of " + std::to_string(n) + " by " + f->to_string());
  }
  return res;
}

inline Result f_mod_24(std::uint64_t seed = 4) {
  Result res;
  Gen g(seed);
  for (int i = 0; i < 200; ++i) {
    auto [a, b] = g.coprime_opposite_parity(100000);
    // Residue computed independently in machine integers.
    std::int64_t x = ((a % 24) + 24) % 24, y = ((b % 24) + 24) % 24;
    std::int64_t s = (x * x + y * y) % 24;
    std::int64_t r = (s * s + 8 * x * y % 24 * ((x * x - y * y + 24 * 24) % 24)) % 24;
    Integer F = thue_eval(static_cast<long>(a), static_cast<long>(b));
    Integer m;
    mpz_fdiv_r_ui(m.get_mpz_t(), F.get_mpz_t(), 24);
    res.check(r == 1 && m == 1 && congruence_class_check(static_cast<long>(a), static_cast<long>(b)),
              "F mod 24 at (" + std::to_string(a) + "," + std::to_string(b) + ")");
  }
  return res;
}

inline Result pythagorean_differences(std::uint64_t seed = 5) {
  Result res;
  Gen g(seed);
  while (res.cases < 100) {
    std::int64_t a = g.between(-60, 60), b = g.between(-60, 60);
    if (a == 0 || b == 0 || a == b || a == -b || std::gcd(a, b) != 1) continue;
    if (squarefree_decompose(thue_eval(static_cast<long>(a), static_cast<long>(b))).squarefree == 1) continue;
    auto p = pythagorean_ap(static_cast<long>(a), static_cast<long>(b));
    Integer diff = p.three_term[1] - p.three_term[0];
    auto chk = verify_ap(p.quadruple);
    bool ok = chk.is_ap && diff == 4 * p.n && p.three_term[2] - p.three_term[1] == diff &&
              p.fourth - p.three_term[2] == diff && *chk.diff == Rational(diff) &&
              mpz_divisible_ui_p(diff.get_mpz_t(), 24) != 0;
    res.check(ok, "Pythagorean progression at (" + std::to_string(a) + "," + std::to_string(b) + ")");
  }
  return res;
}

}  // namespace props
