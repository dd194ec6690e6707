#include "ap4sq/rank_engine.hpp"

#include "ap4sq/criteria.hpp"
#include "ap4sq/local_solubility.hpp"

#include <algorithm>
#include <atomic>
#include <bitset>
#include <cmath>
#include <map>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>

namespace ap4sq {

namespace {

using i128 = __int128;

// Small moduli for square sieving; 64, 63, 65 and 11 alone reject most
// non-squares, the primes thin the survivors further.
constexpr std::array<std::uint32_t, 14> kModuli{64, 63, 65, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47};

const std::vector<std::vector<bool>>& square_tables() {
  static const std::vector<std::vector<bool>> tables = [] {
    std::vector<std::vector<bool>> t;
    for (std::uint32_t M : kModuli) {
      std::vector<bool> sq(M, false);
      for (std::uint64_t r = 0; r < M; ++r) sq[(r * r) % M] = true;
      t.push_back(std::move(sq));
    }
    return t;
  }();
  return tables;
}

std::uint32_t mod_u(const Integer& n, std::uint32_t M) { return static_cast<std::uint32_t>(mpz_fdiv_ui(n.get_mpz_t(), M)); }

std::uint32_t mod_i128(i128 n, std::uint32_t M) {
  i128 r = n % static_cast<i128>(M);
  if (r < 0) r += M;
  return static_cast<std::uint32_t>(r);
}

std::optional<Integer> exact_sqrt(const Integer& n) { return integer_sqrt_exact(n); }

Integer to_integer(i128 v) {
  bool neg = v < 0;
  unsigned __int128 u = neg ? static_cast<unsigned __int128>(-(v + 1)) + 1 : static_cast<unsigned __int128>(v);
  Integer hi = static_cast<unsigned long>(static_cast<std::uint64_t>(u >> 64));
  Integer lo = static_cast<unsigned long>(static_cast<std::uint64_t>(u));
  Integer r = (hi << 64) + lo;
  return neg ? Integer(-r) : r;
}

std::optional<i128> isqrt_exact(i128 n) {
  if (n < 0) return std::nullopt;
  i128 r = static_cast<i128>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  if (r * r != n) return std::nullopt;
  return r;
}

Point<Rational> point_from_x(const Curve& c, const Rational& x) {
  Rational rhs = x * (x + Rational(c.A())) * (x + Rational(c.B()));
  std::optional<Rational> y = rational_sqrt(rhs);
  if (!y) throw std::logic_error("x-coordinate does not lift to a rational point");
  return Point<Rational>(x, *y);
}

// For s = m0 mod M, bit j of pos[s] (neg[s]) says whether m = m0 + j
// (m = -(m0 + j)) passes the square test modulo M.
struct SieveTables {
  std::vector<std::vector<std::uint64_t>> pos, neg;
};

SieveTables build_sieve(const Curve& c, std::int64_t e) {
  const auto& sq = square_tables();
  SieveTables st;
  Integer e2 = Integer(e) * Integer(e);
  for (std::size_t i = 0; i < kModuli.size(); ++i) {
    std::uint32_t M = kModuli[i];
    std::uint64_t a = mod_u(c.A() * e2, M), b = mod_u(c.B() * e2, M);
    std::vector<bool> ok(M);
    for (std::uint64_t r = 0; r < M; ++r) ok[r] = sq[i][(r * ((r + a) % M) % M * ((r + b) % M)) % M];
    std::vector<std::uint64_t> pos(M, 0), neg(M, 0);
    for (std::uint32_t s = 0; s < M; ++s)
      for (std::uint32_t j = 0; j < 64; ++j) {
        if (ok[(s + j) % M]) pos[s] |= std::uint64_t{1} << j;
        if (ok[(2 * 64 * M - s - j) % M]) neg[s] |= std::uint64_t{1} << j;
      }
    st.pos.push_back(std::move(pos));
    st.neg.push_back(std::move(neg));
  }
  return st;
}

// First non-torsion point with x = m/e^2, 0 < |m| <= H, by |m| then sign.
std::optional<Point<Rational>> scan_denominator(const Curve& c, std::int64_t e, std::int64_t H) {
  SieveTables st = build_sieve(c, e);
  Integer e2 = Integer(e) * Integer(e);
  Integer Ae2 = c.A() * e2, Be2 = c.B() * e2;
  auto test = [&](std::int64_t m) -> std::optional<Point<Rational>> {
    Integer mm(static_cast<long>(m));
    Integer N = mm * (mm + Ae2) * (mm + Be2);
    if (sgn(N) <= 0 || !exact_sqrt(N)) return std::nullopt;
    Rational x(mm, e2);
    x.canonicalize();
    Point<Rational> P = point_from_x(c, x);
    if (torsion_order(c, P) != 0) return std::nullopt;
    return P;
  };
  for (std::int64_t m0 = 1; m0 <= H; m0 += 64) {
    std::uint64_t pmask = ~std::uint64_t{0}, nmask = ~std::uint64_t{0};
    for (std::size_t i = 0; i < kModuli.size() && (pmask | nmask); ++i) {
      std::uint32_t s = static_cast<std::uint32_t>(m0 % kModuli[i]);
      pmask &= st.pos[i][s];
      nmask &= st.neg[i][s];
    }
    std::int64_t width = std::min<std::int64_t>(64, H - m0 + 1);
    if (width < 64) {
      std::uint64_t keep = (std::uint64_t{1} << width) - 1;
      pmask &= keep;
      nmask &= keep;
    }
    std::uint64_t any = pmask | nmask;
    while (any) {
      int j = __builtin_ctzll(any);
      any &= any - 1;
      std::int64_t m = m0 + j;
      if ((pmask >> j) & 1)
        if (auto P = test(m)) return P;
      if ((nmask >> j) & 1)
        if (auto P = test(-m)) return P;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<Point<Rational>> naive_point_search(const Curve& c, std::int64_t height_bound, unsigned threads) {
  if (height_bound < 1) throw std::invalid_argument("height bound must be positive");
  std::int64_t emax = static_cast<std::int64_t>(std::sqrt(static_cast<long double>(height_bound)));
  while (emax * emax > height_bound) --emax;
  while ((emax + 1) * (emax + 1) <= height_bound) ++emax;

  threads = std::max(1u, threads);
  std::atomic<std::int64_t> next{1};
  std::atomic<std::int64_t> best_e{emax + 1};
  std::mutex mu;
  std::map<std::int64_t, Point<Rational>> found;
  auto worker = [&] {
    for (;;) {
      std::int64_t e = next.fetch_add(1);
      if (e > emax || e >= best_e.load()) return;
      auto P = scan_denominator(c, e, height_bound);
      if (!P) continue;
      std::lock_guard<std::mutex> lock(mu);
      found.emplace(e, *P);
      std::int64_t cur = best_e.load();
      while (e < cur && !best_e.compare_exchange_weak(cur, e)) {
      }
    }
  };
  if (threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (unsigned i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& t : pool) t.join();
  }
  if (found.empty()) return std::nullopt;
  Point<Rational> P = found.begin()->second;
  if (sgn(P.y()) < 0) P = negate(P);
  return P;
}

std::vector<SelmerClass> selmer_classes(const Curve& c) {
  const Integer& A = c.A();
  const Integer& B = c.B();
  std::vector<Integer> primes = bad_primes(A, B);
  std::vector<SelmerClass> out;
  for (const Integer& b1 : squarefree_divisors(A * B)) {
    for (const Integer& b2 : squarefree_divisors(A * (A - B))) {
      if (!real_soluble(b1, b2, A, B)) continue;
      bool ok = true;
      for (const Integer& p : primes)
        if (!padic_soluble(b1, b2, A, B, p)) {
          ok = false;
          break;
        }
      if (ok) out.push_back({b1, b2});
    }
  }
  return out;
}

namespace {

Integer sqf_of(const Rational& x) { return squarefree_decompose(x.get_num() * x.get_den()).squarefree; }

Integer sqf_of(const Integer& x) { return squarefree_decompose(x).squarefree; }

}  // namespace

SelmerClass descent_image(const Curve& c, const Point<Rational>& P) {
  detail::require_on_curve(c, P);
  const Integer& A = c.A();
  const Integer& B = c.B();
  if (P.is_infinity()) return {1, 1};
  const Rational& x = P.x();
  if (is_zero(x)) return {sqf_of(Integer(A * B)), sqf_of(A)};
  if (x == Rational(-A)) return {sqf_of(Integer(-A)), sqf_of(Integer(A * (A - B)))};
  if (x == Rational(-B)) return {sqf_of(Integer(-B)), sqf_of(Integer(A - B))};
  return {sqf_of(x), sqf_of(Rational(x + Rational(A)))};
}

namespace {

using F2Vector = std::bitset<128>;

class F2Basis {
 public:
  explicit F2Basis(std::vector<Integer> primes) : primes_(std::move(primes)) {
    if (primes_.size() + 1 > 64) throw std::runtime_error("too many primes for the descent bit vectors");
  }

  F2Vector encode(const SelmerClass& s) const { return encode_one(s.b1) | (encode_one(s.b2) << 64); }

  // Reduces v against the basis; true if it was independent and was added.
  bool insert(F2Vector v) {
    for (int bit = 127; bit >= 0; --bit) {
      if (!v[bit]) continue;
      if (!pivots_[bit].any()) {
        pivots_[bit] = v;
        ++dim_;
        return true;
      }
      v ^= pivots_[bit];
    }
    return false;
  }

  bool contains(F2Vector v) const {
    for (int bit = 127; bit >= 0; --bit) {
      if (!v[bit]) continue;
      if (!pivots_[bit].any()) return false;
      v ^= pivots_[bit];
    }
    return true;
  }

  int dim() const { return dim_; }

 private:
  F2Vector encode_one(const Integer& b) const {
    F2Vector v;
    if (sgn(b) < 0) v.set(0);
    for (std::size_t i = 0; i < primes_.size(); ++i)
      if (mpz_divisible_p(b.get_mpz_t(), primes_[i].get_mpz_t())) v.set(i + 1);
    return v;
  }

  std::vector<Integer> primes_;
  std::array<F2Vector, 128> pivots_{};
  int dim_ = 0;
};

struct Vec3 {
  i128 v[3];
};

// An integral point (X, Y, W) != 0 on b1 X^2 - b2 Y^2 + A W^2 = 0.
std::optional<Vec3> conic_point(i128 b1, i128 b2, i128 A, std::int64_t limit) {
  for (std::int64_t L = 0; L <= limit; ++L) {
    for (std::int64_t X = 0; X <= L; ++X) {
      for (std::int64_t W = 0; W <= L; ++W) {
        if (std::max(X, W) != L || (X == 0 && W == 0)) continue;
        i128 num = b1 * X * X + A * W * W;
        if (num % b2 != 0) continue;
        if (auto Y = isqrt_exact(num / b2)) return Vec3{{X, *Y, W}};
      }
    }
  }
  return std::nullopt;
}

// A rational point of E in the class (b1, b2), searched by parametrizing the
// conic b1 X^2 + A W^2 = b2 Y^2 and testing b1 b2 (b1 X^2 + B W^2) for squares.
std::optional<Point<Rational>> search_class(const Curve& c, const SelmerClass& s, std::int64_t box) {
  if (abs(s.b1) > Integer(1L << 40) || abs(s.b2) > Integer(1L << 40) || abs(c.A()) > Integer(1L << 40) ||
      abs(c.B()) > Integer(1L << 40))
    return std::nullopt;
  const i128 b1 = s.b1.get_si(), b2 = s.b2.get_si(), A = c.A().get_si();
  const i128 coef[3] = {b1, -b2, A};
  std::int64_t limit = 2000;
  auto v0 = conic_point(b1, b2, A, limit);
  if (!v0) return std::nullopt;

  int k = 0;
  while (v0->v[k] == 0) ++k;
  int ax0 = k == 0 ? 1 : 0;
  int ax1 = k == 2 ? 1 : 2;

  const auto& sq = square_tables();
  const Integer b1b2 = s.b1 * s.b2;
  std::uint32_t g_mod[kModuli.size()][2];
  for (std::size_t i = 0; i < kModuli.size(); ++i) {
    g_mod[i][0] = mod_u(b1b2 * s.b1, kModuli[i]);
    g_mod[i][1] = mod_u(b1b2 * c.B(), kModuli[i]);
  }

  auto try_pair = [&](std::int64_t m, std::int64_t n) -> std::optional<Point<Rational>> {
    if ((m == 0 && n == 0) || std::gcd(m, n) != 1) return std::nullopt;
    i128 w[3] = {0, 0, 0};
    w[ax0] = m;
    w[ax1] = n;
    i128 Qw = 0, Bw = 0;
    for (int i = 0; i < 3; ++i) {
      Qw += coef[i] * w[i] * w[i];
      Bw += coef[i] * v0->v[i] * w[i];
    }
    i128 X = Qw * v0->v[0] - 2 * Bw * w[0];
    i128 W = Qw * v0->v[2] - 2 * Bw * w[2];
    if (W == 0) return std::nullopt;
    for (std::size_t i = 0; i < kModuli.size(); ++i) {
      std::uint64_t M = kModuli[i];
      std::uint64_t x = mod_i128(X, M), ww = mod_i128(W, M);
      std::uint64_t g = (g_mod[i][0] * (x * x % M) + g_mod[i][1] * (ww * ww % M)) % M;
      if (!sq[i][g]) return std::nullopt;
    }
    Integer Xz = to_integer(X), Wz = to_integer(W);
    Integer G = b1b2 * (s.b1 * Xz * Xz + c.B() * Wz * Wz);
    if (sgn(G) < 0 || !exact_sqrt(G)) return std::nullopt;
    Rational x(s.b1 * Xz * Xz, Wz * Wz);
    x.canonicalize();
    Point<Rational> P = point_from_x(c, x);
    if (sgn(P.y()) < 0) P = negate(P);
    return P;
  };

  for (std::int64_t sh = 1; sh <= box; ++sh) {
    for (std::int64_t a = -sh; a <= sh; ++a)
      if (auto P = try_pair(a, sh)) return P;
    for (std::int64_t a = -sh + 1; a < sh; ++a)
      if (auto P = try_pair(sh, a)) return P;
  }
  return std::nullopt;
}

}  // namespace

DescentResult two_descent(const Curve& c, const DescentOptions& opts) {
  DescentResult r;
  r.selmer = selmer_classes(c);
  r.surviving_pairs = r.selmer.size();
  int log2 = 0;
  while ((std::size_t{1} << log2) < r.surviving_pairs) ++log2;
  if ((std::size_t{1} << log2) != r.surviving_pairs || log2 < 2)
    throw std::logic_error("Selmer set is not a group containing the 2-torsion image");
  r.rank_hi = log2 - 2;

  F2Basis span(bad_primes(c.A(), c.B()));
  for (const auto& T : torsion_subgroup(c).points) span.insert(span.encode(descent_image(c, T)));
  int torsion_dim = span.dim();
  for (const auto& s : r.selmer) {
    if (span.dim() - torsion_dim == r.rank_hi) break;
    if (span.contains(span.encode(s))) continue;
    auto P = search_class(c, s, opts.box);
    if (!P) continue;
    if (!r.witness) r.witness = P;
    span.insert(span.encode(descent_image(c, *P)));
  }
  r.rank_lo = span.dim() - torsion_dim;
  return r;
}

std::string to_string(VerdictKind k) {
  switch (k) {
    case VerdictKind::yes:
      return "YES";
    case VerdictKind::no:
      return "NO";
    case VerdictKind::yes_under_bsd:
      return "YES_BSD";
    case VerdictKind::unknown:
      return "UNKNOWN";
  }
  return "UNKNOWN";
}

APDescription<QuadraticElement> progression_from_twist_point(const Point<Rational>& P, const Integer& d) {
  Point<QuadraticElement> L = lift_twist_point(P, d);
  APDescription<QuadraticElement> desc = ap_description(point_to_ap(L, QuadraticField(d)));
  if (is_zero(desc.diff) || !is_valid_description(desc))
    throw std::logic_error("non-torsion point gave a constant progression");
  return desc;
}

namespace {

Verdict yes_from_point(const Integer& d, const Point<Rational>& P, std::optional<DescentResult> D) {
  Verdict v;
  v.kind = VerdictKind::yes;
  v.evidence = "point-found";
  v.ap = progression_from_twist_point(P, d);
  v.witness = P;
  v.descent = std::move(D);
  return v;
}

Verdict make(VerdictKind k, std::string evidence, std::optional<DescentResult> D) {
  Verdict v;
  v.kind = k;
  v.evidence = std::move(evidence);
  v.descent = std::move(D);
  return v;
}

}  // namespace

Verdict field_rank_positive(const Integer& d, const EngineOptions& opts) {
  if (sgn(d) == 0 || d == 1) throw std::invalid_argument("d must not be 0 or 1");
  if (!is_squarefree(d)) throw std::invalid_argument("d must be squarefree: " + d.get_str());
  Curve c = twist_curve(d);

  std::optional<DescentResult> D;
  if (opts.descent) {
    D = two_descent(c, {opts.descent_box, opts.threads});
    if (D->rank_hi == 0) return make(VerdictKind::no, "descent-rank-0", D);
    if (D->witness) {
      // Prefer the smallest point by naive height so the emitted progression
      // does not depend on the descent's search order.
      auto small = naive_point_search(c, std::min<std::int64_t>(opts.height_bound, 10000), opts.threads);
      return yes_from_point(d, small ? *small : *D->witness, D);
    }
  }

  // E^d = E_{d,pi/3} for d > 0 and E_{-d,2pi/3} for d < 0; E^{-6n} = E_{6n,-18n}.
  std::vector<CriterionOutcome> outcomes;
  Integer n = abs(d);
  bool small = n.fits_slong_p() && n < Integer(1L << 40);
  if (opts.use_criteria && small) {
    std::int64_t nn = n.get_si();
    if (sgn(d) > 0) {
      outcomes.push_back(yoshida_pi3(nn));
    } else {
      outcomes.push_back(yoshida_2pi3(nn));
      if (nn % 6 == 0 && (nn / 6) % 2 == 1) outcomes.push_back(ono_6n_discordant(nn / 6));
    }
    for (const auto& o : outcomes)
      if (o.verdict == CriterionVerdict::unconditional_no) return make(VerdictKind::no, "yoshida-forms", D);
  }

  if (auto P = naive_point_search(c, opts.height_bound, opts.threads)) return yes_from_point(d, *P, D);

  if (opts.use_criteria && small) {
    std::int64_t nn = n.get_si();
    if (kan_test(nn)) return make(VerdictKind::unknown, "kan-23", D);
    for (const auto& o : outcomes)
      if (o.verdict == CriterionVerdict::conditional_yes_bsd) return make(VerdictKind::yes_under_bsd, "yoshida-forms", D);
    Angle angle = sgn(d) > 0 ? Angle::pi_over_3 : Angle::two_pi_over_3;
    if (conjecture1_class(nn, angle)) return make(VerdictKind::yes_under_bsd, "conjecture-1", D);
  }
  return make(VerdictKind::unknown, "bound-exceeded", D);
}

}  // namespace ap4sq
