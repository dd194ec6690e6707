#include "ap4sq/thue_pyth.hpp"

#include <algorithm>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <thread>

namespace ap4sq {

Integer thue_eval(const Integer& x, const Integer& y) {
  Integer s = x * x + y * y;
  return s * s + 8 * x * y * (x * x - y * y);
}

namespace {

std::int64_t thue_eval_i64(std::int64_t x, std::int64_t y) {
  std::int64_t s = x * x + y * y;
  return s * s + 8 * x * y * (x * x - y * y);
}

using Solution = std::pair<std::int64_t, std::int64_t>;

bool solution_less(const Solution& u, const Solution& v) {
  auto key = [](const Solution& s) { return std::make_tuple(std::llabs(s.first), std::llabs(s.second), s.first, s.second); };
  return key(u) < key(v);
}

}  // namespace

std::vector<ThueHit> thue_scan(std::int64_t dmax, std::int64_t box, const ThueScanOptions& opts) {
  if (dmax < 1 || box < 1) throw std::invalid_argument("dmax and box must be positive");
  if (box > 30000) throw std::invalid_argument("box too large for 64-bit evaluation");

  unsigned threads = std::max(1u, opts.threads);
  std::vector<std::map<std::int64_t, std::vector<Solution>>> partial(threads);
  auto work = [&](unsigned w) {
    auto& out = partial[w];
    for (std::int64_t x = -box + w; x <= box; x += threads) {
      for (std::int64_t y = -box; y <= box; ++y) {
        std::int64_t F = thue_eval_i64(x, y);
        if (F == 0) continue;
        std::int64_t d = F;
        if (opts.squarefree_part) {
          d = squarefree_decompose(Integer(static_cast<long>(F))).squarefree.get_si();
        } else if (std::llabs(F) > dmax || !is_squarefree(Integer(static_cast<long>(F)))) {
          continue;
        }
        if (std::llabs(d) > dmax || (d == 1 && !opts.include_rational)) continue;
        out[d].emplace_back(x, y);
      }
    }
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }

  std::map<std::int64_t, std::vector<Solution>> merged;
  for (auto& part : partial)
    for (auto& [d, sols] : part) merged[d].insert(merged[d].end(), sols.begin(), sols.end());
  std::vector<ThueHit> hits;
  for (auto& [d, sols] : merged) {
    std::sort(sols.begin(), sols.end(), solution_less);
    hits.push_back({Integer(static_cast<long>(d)), std::move(sols)});
  }
  return hits;
}

PythagoreanAP pythagorean_ap(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (sgn(a) == 0 || sgn(b) == 0 || abs(a) == abs(b) || g != 1)
    throw std::invalid_argument("need ab != 0, a != +-b and gcd(a, b) = 1");
  Integer a2 = a * a, b2 = b * b, s = a2 + b2;
  Integer n = a * b * (a2 - b2);
  Integer fourth = s * s + 8 * n;
  SquarefreeDecomposition sf = squarefree_decompose(fourth);
  if (sf.squarefree == 1) throw std::logic_error("F(a,b) is a square");
  QuadraticField k(sf.squarefree);
  // Roots of the three integer squares: a^2-b^2-2ab, a^2+b^2, a^2-b^2+2ab.
  APQuadruple<QuadraticElement> q{k.embed(Rational(a2 - b2 - 2 * a * b)), k.embed(Rational(s)),
                                  k.embed(Rational(a2 - b2 + 2 * a * b)), k.root() * Rational(sf.factor)};
  return {n, {s * s - 4 * n, s * s, s * s + 4 * n}, fourth, sf.squarefree, std::move(q)};
}

bool congruence_class_check(const Integer& a, const Integer& b) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  if (g != 1 || mpz_odd_p(a.get_mpz_t()) == mpz_odd_p(b.get_mpz_t()))
    throw std::invalid_argument("need gcd(a, b) = 1 and a, b of opposite parity");
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), thue_eval(a, b).get_mpz_t(), 24);
  return r == 1;
}

}  // namespace ap4sq
