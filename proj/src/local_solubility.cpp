#include "ap4sq/local_solubility.hpp"

#include <algorithm>
#include <stdexcept>

namespace ap4sq {

unsigned valuation(const Integer& n, const Integer& p) {
  Integer rest;
  return static_cast<unsigned>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
}

bool is_padic_square(const Integer& n, const Integer& p) {
  Integer u;
  unsigned v = static_cast<unsigned>(mpz_remove(u.get_mpz_t(), n.get_mpz_t(), p.get_mpz_t()));
  if (v % 2) return false;
  if (p == 2) {
    Integer r;
    mpz_fdiv_r_ui(r.get_mpz_t(), u.get_mpz_t(), 8);
    return r == 1;
  }
  return mpz_kronecker(u.get_mpz_t(), p.get_mpz_t()) == 1;
}

namespace {

constexpr unsigned kInfiniteValuation = ~0u;

unsigned val_or_inf(const Integer& n, const Integer& p) { return sgn(n) == 0 ? kInfiniteValuation : valuation(n, p); }

enum class ClassStatus { square, nonsquare, root, undecided };

// h(u) = c0 + c2 u^2 on the class u0 + p^k Z_p.
struct EvenQuadratic {
  Integer c0, c2;
};

ClassStatus classify(const EvenQuadratic& h, const Integer& u0, const Integer& pk, const Integer& p) {
  // h(u0 + pk t) = s0 + s1 t + s2 t^2.
  Integer s0 = h.c0 + h.c2 * u0 * u0;
  Integer s1 = 2 * h.c2 * u0 * pk;
  Integer s2 = h.c2 * pk * pk;
  if (sgn(s0) == 0) return ClassStatus::root;
  unsigned v0 = valuation(s0, p);
  unsigned vmin = std::min(val_or_inf(s1, p), val_or_inf(s2, p));
  unsigned need = p == 2 ? 3 : 1;
  if (vmin != kInfiniteValuation ? vmin >= v0 + need : true)
    return is_padic_square(s0, p) ? ClassStatus::square : ClassStatus::nonsquare;
  // Hensel: v(h(0)) > 2 v(h'(0)) gives a root t in Z_p.
  if (sgn(s1) != 0 && v0 > 2 * valuation(s1, p)) return ClassStatus::root;
  return ClassStatus::undecided;
}

bool soluble_on_class(const EvenQuadratic& f, const EvenQuadratic& g, const Integer& u0, const Integer& pk,
                      const Integer& p, int depth) {
  if (depth > 200) throw std::runtime_error("p-adic recursion did not terminate");
  ClassStatus sf = classify(f, u0, pk, p);
  ClassStatus sg = classify(g, u0, pk, p);
  if (sf == ClassStatus::nonsquare || sg == ClassStatus::nonsquare) return false;
  if (sf == ClassStatus::square && sg == ClassStatus::square) return true;
  if (sf == ClassStatus::root && sg == ClassStatus::square) return true;
  if (sg == ClassStatus::root && sf == ClassStatus::square) return true;
  Integer next = pk * p;
  for (Integer r = 0; r < p; ++r)
    if (soluble_on_class(f, g, u0 + r * pk, next, p, depth + 1)) return true;
  return false;
}

}  // namespace

bool padic_soluble(const Integer& b1, const Integer& b2, const Integer& A, const Integer& B, const Integer& p) {
  EvenQuadratic f{b2 * A, b2 * b1};
  EvenQuadratic g{b1 * b2 * B, b1 * b2 * b1};
  if (soluble_on_class(f, g, 0, 1, p, 0)) return true;
  // u = 1/w with w in p Z_p; both polynomials are multiplied by w^2.
  EvenQuadratic f_inf{b2 * b1, b2 * A};
  EvenQuadratic g_inf{b1 * b2 * b1, b1 * b2 * B};
  return soluble_on_class(f_inf, g_inf, 0, p, p, 0);
}

bool real_soluble(const Integer& b1, const Integer& b2, const Integer& A, const Integer& B) {
  // Signs only change at x = 0, -A, -B, so these points, their midpoints and
  // two far points decide every interval; x must have the sign of b1.
  Rational far = Rational(abs(A) + abs(B) + 1);
  std::vector<Rational> base{Rational(0), Rational(-A), Rational(-B), far, Rational(-far)};
  std::vector<Rational> xs = base;
  for (const auto& s : base)
    for (const auto& t : base) xs.push_back((s + t) / 2);
  for (const auto& x : xs) {
    if (sgn(x) * sgn(b1) < 0) continue;
    if (sgn(b2) * sgn(x + A) >= 0 && sgn(b1) * sgn(b2) * sgn(x + B) >= 0) return true;
  }
  return false;
}

std::vector<Integer> bad_primes(const Integer& A, const Integer& B) {
  std::vector<Integer> ps = prime_divisors(2 * A * B * (A - B));
  return ps;
}

std::vector<Integer> squarefree_divisors(const Integer& n) {
  std::vector<Integer> out{1};
  for (const Integer& p : prime_divisors(n)) {
    std::size_t base = out.size();
    for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * p);
  }
  std::size_t base = out.size();
  for (std::size_t i = 0; i < base; ++i) out.push_back(-out[i]);
  return out;
}

}  // namespace ap4sq
