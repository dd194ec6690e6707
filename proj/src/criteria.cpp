#include "ap4sq/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <vector>

namespace ap4sq {

namespace {

std::int64_t floor_sqrt(long double v) {
  if (v <= 0) return 0;
  return static_cast<std::int64_t>(std::floor(std::sqrt(v)));
}

std::optional<std::int64_t> isqrt_exact(std::int64_t n) {
  if (n < 0) return std::nullopt;
  std::int64_t r = floor_sqrt(static_cast<long double>(n));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  if (r * r != n) return std::nullopt;
  return r;
}

}  // namespace

TernaryForm::TernaryForm(std::int64_t a_, std::int64_t b_, std::int64_t c_, std::int64_t yz_, std::int64_t xz_,
                         std::int64_t xy_)
    : a(a_), b(b_), c(c_), yz(yz_), xz(xz_), xy(xy_) {
  if (!is_positive_definite(*this)) throw std::invalid_argument("form is not positive definite: " + to_string());
}

std::int64_t TernaryForm::operator()(std::int64_t X, std::int64_t Y, std::int64_t Z) const {
  return a * X * X + b * Y * Y + c * Z * Z + yz * Y * Z + xz * X * Z + xy * X * Y;
}

std::array<std::array<Rational, 3>, 3> TernaryForm::gram() const {
  Rational h(1, 2);
  Rational ryz = Rational(yz) * h, rxz = Rational(xz) * h, rxy = Rational(xy) * h;
  return {{{Rational(a), rxy, rxz}, {rxy, Rational(b), ryz}, {rxz, ryz, Rational(c)}}};
}

std::string TernaryForm::to_string() const {
  std::string s = "[" + std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c) + "," +
                  std::to_string(yz) + "," + std::to_string(xz) + "," + std::to_string(xy) + "]";
  return s;
}

bool is_positive_definite(const TernaryForm& f) {
  auto g = f.gram();
  Rational m1 = g[0][0];
  Rational m2 = g[0][0] * g[1][1] - g[0][1] * g[1][0];
  Rational m3 = g[0][0] * (g[1][1] * g[2][2] - g[1][2] * g[2][1]) - g[0][1] * (g[1][0] * g[2][2] - g[1][2] * g[2][0]) +
                g[0][2] * (g[1][0] * g[2][1] - g[1][1] * g[2][0]);
  return sgn(m1) > 0 && sgn(m2) > 0 && sgn(m3) > 0;
}

namespace forms {
const TernaryForm& yoshida_2pi3_a() {
  static const TernaryForm f(1, 3, 144);
  return f;
}
const TernaryForm& yoshida_2pi3_b() {
  static const TernaryForm f(3, 9, 16);
  return f;
}
const TernaryForm& yoshida_pi3_a() {
  static const TernaryForm f(1, 12, 15, 12);
  return f;
}
const TernaryForm& yoshida_pi3_b() {
  static const TernaryForm f(3, 4, 13, 4);
  return f;
}
const TernaryForm& ono_a() {
  static const TernaryForm f(1, 2, 12);
  return f;
}
const TernaryForm& ono_b() {
  static const TernaryForm f(2, 3, 4);
  return f;
}

std::optional<TernaryForm> by_name(std::string_view id) {
  if (id == "yoshida-2pi3-a") return yoshida_2pi3_a();
  if (id == "yoshida-2pi3-b") return yoshida_2pi3_b();
  if (id == "yoshida-pi3-a") return yoshida_pi3_a();
  if (id == "yoshida-pi3-b") return yoshida_pi3_b();
  if (id == "ono-a") return ono_a();
  if (id == "ono-b") return ono_b();
  return std::nullopt;
}
}  // namespace forms

std::uint64_t count_representations(const TernaryForm& f, std::int64_t n, unsigned threads) {
  if (n < 1) throw std::invalid_argument("representation count needs n >= 1");
  // q = a (X + ...)^2 + b2 (Y + k Z)^2 + c3 Z^2 with
  //   b2 = b - xy^2/(4a),  yz2 = yz - xy xz/(2a),  c2 = c - xz^2/(4a),
  //   k = yz2/(2 b2),  c3 = c2 - yz2^2/(4 b2).
  Rational a(f.a), xy(f.xy), xz(f.xz);
  Rational b2 = Rational(f.b) - xy * xy / (4 * a);
  Rational yz2 = Rational(f.yz) - xy * xz / (2 * a);
  Rational c2 = Rational(f.c) - xz * xz / (4 * a);
  Rational k = yz2 / (2 * b2);
  Rational c3 = c2 - yz2 * yz2 / (4 * b2);

  long double N = static_cast<long double>(n);
  std::int64_t zmax = floor_sqrt(N / c3.get_d()) + 1;
  long double kd = k.get_d(), b2d = b2.get_d(), c3d = c3.get_d();

  // Given (Y, Z), aX^2 + beta X + gamma = n is solved exactly.
  auto count_z = [&](std::int64_t Z) {
    std::uint64_t cnt = 0;
    long double rest = N - c3d * Z * Z;
    if (rest < -1) return cnt;
    long double s = std::sqrt(std::max<long double>(rest, 0) / b2d);
    std::int64_t ylo = static_cast<std::int64_t>(std::floor(-kd * Z - s)) - 1;
    std::int64_t yhi = static_cast<std::int64_t>(std::ceil(-kd * Z + s)) + 1;
    for (std::int64_t Y = ylo; Y <= yhi; ++Y) {
      std::int64_t beta = f.xy * Y + f.xz * Z;
      std::int64_t gamma = f.b * Y * Y + f.c * Z * Z + f.yz * Y * Z - n;
      std::int64_t disc = beta * beta - 4 * f.a * gamma;
      auto sq = isqrt_exact(disc);
      if (!sq) continue;
      for (std::int64_t num : {-beta + *sq, -beta - *sq}) {
        if (num % (2 * f.a) == 0 && f(num / (2 * f.a), Y, Z) == n) ++cnt;
        if (*sq == 0) break;
      }
    }
    return cnt;
  };

  threads = std::max(1u, threads);
  std::vector<std::uint64_t> partial(threads, 0);
  auto work = [&](unsigned w) {
    for (std::int64_t Z = -zmax + w; Z <= zmax; Z += threads) partial[w] += count_z(Z);
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& t : pool) t.join();
  }
  return std::accumulate(partial.begin(), partial.end(), std::uint64_t{0});
}

std::string to_string(CriterionVerdict v) {
  switch (v) {
    case CriterionVerdict::unconditional_no:
      return "no";
    case CriterionVerdict::conditional_yes_bsd:
      return "bsd-yes";
    case CriterionVerdict::not_applicable:
      return "not-applicable";
  }
  return "not-applicable";
}

namespace {

void require_squarefree_positive(std::int64_t n) {
  if (n < 1 || !is_squarefree(Integer(static_cast<long>(n))))
    throw std::invalid_argument("n must be a squarefree positive integer");
}

CriterionOutcome compare(const TernaryForm& fa, const TernaryForm& fb, std::int64_t n) {
  CriterionOutcome o;
  o.applicable = true;
  o.count_a = count_representations(fa, n);
  o.count_b = count_representations(fb, n);
  o.verdict = o.count_a != o.count_b ? CriterionVerdict::unconditional_no : CriterionVerdict::conditional_yes_bsd;
  return o;
}

bool residue_in(std::int64_t n, std::initializer_list<int> classes) {
  return std::find(classes.begin(), classes.end(), static_cast<int>(n % 24)) != classes.end();
}

}  // namespace

CriterionOutcome yoshida_2pi3(std::int64_t n) {
  require_squarefree_positive(n);
  if (!residue_in(n, {1, 7, 13})) return {};
  return compare(forms::yoshida_2pi3_a(), forms::yoshida_2pi3_b(), n);
}

CriterionOutcome yoshida_pi3(std::int64_t n) {
  require_squarefree_positive(n);
  if (n == 1) throw std::invalid_argument("the pi/3 criterion needs n > 1");
  if (!residue_in(n, {1, 7, 19})) return {};
  return compare(forms::yoshida_pi3_a(), forms::yoshida_pi3_b(), n);
}

CriterionOutcome ono_6n_discordant(std::int64_t n) {
  require_squarefree_positive(n);
  if (n % 2 == 0) throw std::invalid_argument("n must be odd");
  return compare(forms::ono_a(), forms::ono_b(), n);
}

bool kan_test(std::int64_t n) { return n > 0 && n % 24 == 23 && is_prime(Integer(static_cast<long>(n))); }

std::string to_string(Angle a) { return a == Angle::pi_over_3 ? "pi/3" : "2pi/3"; }

ThetaParams theta_params(Angle a) {
  return a == Angle::pi_over_3 ? ThetaParams::pi_over_3() : ThetaParams::two_pi_over_3();
}

bool conjecture1_class(std::int64_t n, Angle angle) {
  if (n < 1) throw std::invalid_argument("n must be positive");
  return angle == Angle::pi_over_3 ? residue_in(n, {11, 13, 17, 23}) : residue_in(n, {5, 17, 19, 23});
}

std::optional<ConcordantWitness> concordant_witness_search(const Integer& M, const Integer& N, std::int64_t bound) {
  if (M == N || sgn(M * N) == 0) throw std::invalid_argument("need M != N and M N != 0");
  for (std::int64_t y = 1; y <= bound; ++y) {
    Integer y2 = Integer(static_cast<long>(y)) * y;
    for (std::int64_t x = 1; x <= bound; ++x) {
      if (std::gcd(x, y) != 1) continue;
      Integer x2 = Integer(static_cast<long>(x)) * x;
      auto t = integer_sqrt_exact(x2 + M * y2);
      if (!t) continue;
      auto z = integer_sqrt_exact(x2 + N * y2);
      if (!z) continue;
      return ConcordantWitness{Integer(static_cast<long>(x)), Integer(static_cast<long>(y)), *z, *t};
    }
  }
  return std::nullopt;
}

Verdict table_entry(std::int64_t p, int multiplier, int sign, const EngineOptions& opts) {
  if (p < 5 || !is_prime(Integer(static_cast<long>(p)))) throw std::invalid_argument("p must be a prime >= 5");
  if (multiplier != 1 && multiplier != 2 && multiplier != 3 && multiplier != 6)
    throw std::invalid_argument("multiplier must be 1, 2, 3 or 6");
  if (sign != 1 && sign != -1) throw std::invalid_argument("sign must be +1 or -1");
  return field_rank_positive(Integer(static_cast<long>(sign * multiplier * p)), opts);
}

Verdict theta_congruent(std::int64_t n, Angle angle, const EngineOptions& opts) {
  require_squarefree_positive(n);
  Curve c = theta_curve(Integer(static_cast<long>(n)), theta_params(angle));
  Verdict v;
  for (const auto& T : torsion_subgroup(c).points) {
    if (torsion_order(c, T) > 2) {
      v.kind = VerdictKind::yes;
      v.evidence = "torsion-point";
      v.witness = T;
      return v;
    }
  }
  if (opts.descent) {
    DescentResult D = two_descent(c, {opts.descent_box, opts.threads});
    v.descent = D;
    if (D.rank_hi == 0) {
      v.kind = VerdictKind::no;
      v.evidence = "descent-rank-0";
      return v;
    }
    if (D.witness) {
      v.kind = VerdictKind::yes;
      v.evidence = "point-found";
      v.witness = D.witness;
      return v;
    }
  }
  std::optional<CriterionOutcome> o;
  if (opts.use_criteria) {
    if (angle == Angle::two_pi_over_3) o = yoshida_2pi3(n);
    else if (n > 1) o = yoshida_pi3(n);
    if (o && o->verdict == CriterionVerdict::unconditional_no) {
      v.kind = VerdictKind::no;
      v.evidence = "yoshida-forms";
      return v;
    }
  }
  if (auto P = naive_point_search(c, opts.height_bound, opts.threads)) {
    v.kind = VerdictKind::yes;
    v.evidence = "point-found";
    v.witness = P;
    return v;
  }
  if (opts.use_criteria) {
    if (kan_test(n)) {
      v.kind = VerdictKind::yes;
      v.evidence = "kan-23";
      return v;
    }
    if (o && o->verdict == CriterionVerdict::conditional_yes_bsd) {
      v.kind = VerdictKind::yes_under_bsd;
      v.evidence = "yoshida-forms";
      return v;
    }
    if (conjecture1_class(n, angle)) {
      v.kind = VerdictKind::yes_under_bsd;
      v.evidence = "conjecture-1";
      return v;
    }
  }
  v.kind = VerdictKind::unknown;
  v.evidence = "bound-exceeded";
  return v;
}

}  // namespace ap4sq
