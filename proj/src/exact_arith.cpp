#include "ap4sq/exact_arith.hpp"

#include <cctype>
#include <sstream>
#include <stdexcept>

namespace ap4sq {

std::vector<std::pair<Integer, unsigned>> factorize(const Integer& n) {
  std::vector<std::pair<Integer, unsigned>> out;
  Integer m = abs(n);
  if (m == 0) throw std::invalid_argument("factorize: zero has no factorization");
  auto pull = [&](unsigned long p) {
    unsigned e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), p)) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), p);
      ++e;
    }
    if (e > 0) out.emplace_back(Integer(p), e);
  };
  pull(2);
  pull(3);
  // 6k +- 1 wheel
  for (unsigned long p = 5; m > 1; p += 6) {
    if (Integer(p) * p > m) break;
    pull(p);
    pull(p + 2);
    if (m > 1 && mpz_probab_prime_p(m.get_mpz_t(), 30) == 2) break;
  }
  if (m > 1) out.emplace_back(m, 1u);
  return out;
}

std::vector<Integer> prime_divisors(const Integer& n) {
  std::vector<Integer> out;
  for (auto& [p, e] : factorize(n)) out.push_back(p);
  return out;
}

SquarefreeDecomposition squarefree_decompose(const Integer& n) {
  if (n == 0) throw std::invalid_argument("squarefree_decompose: n must be nonzero");
  Integer s = sgn(n) < 0 ? -1 : 1;
  Integer f = 1;
  for (auto& [p, e] : factorize(n)) {
    if (e % 2) s *= p;
    for (unsigned i = 0; i < e / 2; ++i) f *= p;
  }
  return {s, f};
}

bool is_squarefree(const Integer& n) {
  if (n == 0) return false;
  for (auto& [p, e] : factorize(n))
    if (e > 1) return false;
  return true;
}

bool is_prime(const Integer& n) {
  if (n < 2) return false;
  return mpz_probab_prime_p(n.get_mpz_t(), 40) != 0;
}

std::optional<Integer> integer_sqrt_exact(const Integer& n) {
  if (sgn(n) < 0 || !mpz_perfect_square_p(n.get_mpz_t())) return std::nullopt;
  Integer r;
  mpz_sqrt(r.get_mpz_t(), n.get_mpz_t());
  return r;
}

std::optional<Rational> rational_sqrt(const Rational& x) {
  if (sgn(x) < 0) return std::nullopt;
  auto num = integer_sqrt_exact(x.get_num());
  if (!num) return std::nullopt;
  auto den = integer_sqrt_exact(x.get_den());
  if (!den) return std::nullopt;
  return Rational(*num, *den);
}

std::string to_string(const Rational& x) { return x.get_str(); }

namespace {

// Minimal cursor over the textual grammar.
struct Cursor {
  std::string_view s;
  std::size_t i = 0;

  void skip_ws() {
    while (i < s.size() && std::isspace(static_cast<unsigned char>(s[i]))) ++i;
  }
  bool eat(char c) {
    skip_ws();
    if (i < s.size() && s[i] == c) {
      ++i;
      return true;
    }
    return false;
  }
  bool eat(std::string_view word) {
    skip_ws();
    if (s.substr(i, word.size()) == word) {
      i += word.size();
      return true;
    }
    return false;
  }
  bool at_end() {
    skip_ws();
    return i == s.size();
  }
  bool peek_digit() {
    skip_ws();
    return i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]));
  }
  Integer integer() {
    skip_ws();
    std::size_t start = i;
    if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
    std::size_t digits = i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    if (i == digits) fail("expected integer");
    std::string tok(s.substr(start, i - start));
    if (tok[0] == '+') tok.erase(0, 1);
    return Integer(tok);
  }
  [[noreturn]] void fail(const std::string& what) const {
    std::ostringstream os;
    os << "parse error at offset " << i << " in '" << s << "': " << what;
    throw std::invalid_argument(os.str());
  }
};

// term := [int ['*']] 'sqrt(' int ')' | int
// Returns (rational coefficient, sqrt coefficient).
std::pair<Integer, Integer> parse_term(Cursor& c, int sign, Integer& seen_d, bool& has_sqrt) {
  Integer coeff = 1;
  bool have_int = false;
  if (c.peek_digit()) {
    coeff = c.integer();
    have_int = true;
  }
  bool star = c.eat('*');
  if (c.eat("sqrt(")) {
    Integer k = c.integer();
    if (!c.eat(')')) c.fail("expected ')'");
    if (has_sqrt && k != seen_d) c.fail("mixed square roots");
    seen_d = k;
    has_sqrt = true;
    return {0, sign * coeff};
  }
  if (star || !have_int) c.fail("expected term");
  return {sign * coeff, 0};
}

}  // namespace

Rational parse_rational(std::string_view text) {
  Cursor c{text};
  Integer num = c.integer();
  Integer den = 1;
  if (c.eat('/')) den = c.integer();
  if (!c.at_end()) c.fail("trailing input");
  if (den == 0) c.fail("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

QuadraticElement::QuadraticElement(Unchecked, Integer p, Integer q, Integer m, Integer d)
    : p_(std::move(p)), q_(std::move(q)), m_(std::move(m)), d_(std::move(d)) {
  normalize();
}

QuadraticElement::QuadraticElement(Integer p, Integer q, Integer m, Integer d)
    : p_(std::move(p)), q_(std::move(q)), m_(std::move(m)), d_(std::move(d)) {
  if (d_ == 0 || d_ == 1 || !is_squarefree(d_))
    throw std::invalid_argument("QuadraticElement: d must be squarefree and not 0 or 1, got " + d_.get_str());
  if (m_ == 0) throw std::invalid_argument("QuadraticElement: zero denominator");
  normalize();
}

QuadraticElement::QuadraticElement(const Rational& r, const Integer& d)
    : QuadraticElement(r.get_num(), 0, r.get_den(), d) {}

QuadraticElement QuadraticElement::sqrt_d(const Integer& d) { return QuadraticElement(0, 1, 1, d); }

QuadraticElement QuadraticElement::root() const { return QuadraticElement(Unchecked{}, 0, 1, 1, d_); }

void QuadraticElement::normalize() {
  if (sgn(p_) == 0 && sgn(q_) == 0) {
    m_ = 1;
    return;
  }
  Integer g;
  mpz_gcd(g.get_mpz_t(), p_.get_mpz_t(), q_.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), m_.get_mpz_t());
  if (sgn(m_) < 0) g = -g;
  if (g != 1) {
    mpz_divexact(p_.get_mpz_t(), p_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(q_.get_mpz_t(), q_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(m_.get_mpz_t(), m_.get_mpz_t(), g.get_mpz_t());
  }
}

void QuadraticElement::require_same_field(const QuadraticElement& o) const {
  if (d_ != o.d_)
    throw std::invalid_argument("QuadraticElement: field mismatch sqrt(" + d_.get_str() + ") vs sqrt(" +
                                o.d_.get_str() + ")");
}

QuadraticElement QuadraticElement::lift(const Rational& r) const {
  return QuadraticElement(Unchecked{}, r.get_num(), 0, r.get_den(), d_);
}

Rational QuadraticElement::rational_part() const {
  Rational r(p_, m_);
  r.canonicalize();
  return r;
}

Rational QuadraticElement::sqrt_coefficient() const {
  Rational r(q_, m_);
  r.canonicalize();
  return r;
}

QuadraticElement QuadraticElement::operator-() const { return QuadraticElement(Unchecked{}, -p_, -q_, m_, d_); }

QuadraticElement QuadraticElement::inverse() const {
  if (is_zero()) throw std::domain_error("QuadraticElement: division by zero");
  Integer norm = p_ * p_ - d_ * q_ * q_;
  return QuadraticElement(Unchecked{}, m_ * p_, -m_ * q_, norm, d_);
}

QuadraticElement& QuadraticElement::operator+=(const QuadraticElement& o) {
  require_same_field(o);
  if (m_ == o.m_) {
    p_ += o.p_;
    q_ += o.q_;
  } else {
    p_ = p_ * o.m_ + o.p_ * m_;
    q_ = q_ * o.m_ + o.q_ * m_;
    m_ *= o.m_;
  }
  normalize();
  return *this;
}

QuadraticElement& QuadraticElement::operator-=(const QuadraticElement& o) { return *this += -o; }

QuadraticElement& QuadraticElement::operator*=(const QuadraticElement& o) {
  require_same_field(o);
  Integer p = p_ * o.p_ + d_ * q_ * o.q_;
  Integer q = p_ * o.q_ + q_ * o.p_;
  p_ = std::move(p);
  q_ = std::move(q);
  m_ *= o.m_;
  normalize();
  return *this;
}

QuadraticElement& QuadraticElement::operator/=(const QuadraticElement& o) {
  require_same_field(o);
  return *this *= o.inverse();
}

std::string QuadraticElement::to_string() const {
  if (is_rational()) return ap4sq::to_string(rational_part());
  std::string root = "sqrt(" + d_.get_str() + ")";
  Integer aq = abs(q_);
  std::string coeff = aq == 1 ? root : aq.get_str() + "*" + root;
  std::string body;
  if (p_ == 0)
    body = (sgn(q_) < 0 ? "-" : "") + coeff;
  else
    body = p_.get_str() + (sgn(q_) < 0 ? "-" : "+") + coeff;
  if (m_ == 1) return body;
  return "(" + body + ")/" + m_.get_str();
}

std::ostream& operator<<(std::ostream& os, const QuadraticElement& x) { return os << x.to_string(); }

QuadraticElement quad_conjugate(const QuadraticElement& x) {
  return x.constant(x.rational_part()) - x.root() * x.sqrt_coefficient();
}

Rational quad_norm(const QuadraticElement& x) {
  Rational n(x.p() * x.p() - x.d() * x.q() * x.q(), x.m() * x.m());
  n.canonicalize();
  return n;
}

bool is_canonical_positive(const QuadraticElement& x) {
  int s = sgn(x.p());
  return s > 0 || (s == 0 && sgn(x.q()) >= 0);
}

std::optional<QuadraticElement> quad_sqrt(const QuadraticElement& x) {
  // y = s + t*sqrt(d), y^2 = x  <=>  s^2 + d t^2 = u, 2 s t = v.
  const Integer& d = x.d();
  Rational u = x.rational_part();
  Rational v = x.sqrt_coefficient();
  auto n = rational_sqrt(u * u - d * v * v);
  if (!n) return std::nullopt;
  auto canonical = [](QuadraticElement y) { return is_canonical_positive(y) ? y : -y; };
  for (int sign : {1, -1}) {
    Rational s2 = (u + sign * *n) / 2;
    if (sgn(s2) == 0) {
      if (sgn(v) != 0) continue;
      Rational t2 = u / d;
      if (auto t = rational_sqrt(t2)) return canonical(x.root() * *t);
      continue;
    }
    auto s = rational_sqrt(s2);
    if (!s) continue;
    Rational t = v / (2 * *s);
    QuadraticElement y = x.constant(*s) + x.root() * t;
    if (y * y == x) return canonical(y);
  }
  return std::nullopt;
}

QuadraticElement parse_quadratic(std::string_view text, const Integer& d) {
  Cursor c{text};
  bool wrapped = c.eat('(');
  Integer seen_d = d;
  bool has_sqrt = false;
  Integer p = 0, q = 0;
  int sign = 1;
  if (c.eat('-'))
    sign = -1;
  else
    c.eat('+');
  bool first = true;
  while (true) {
    if (!first) {
      if (c.eat('+'))
        sign = 1;
      else if (c.eat('-'))
        sign = -1;
      else
        break;
    }
    first = false;
    auto [rp, rq] = parse_term(c, sign, seen_d, has_sqrt);
    p += rp;
    q += rq;
  }
  Integer m = 1;
  if (wrapped) {
    if (!c.eat(')')) c.fail("expected ')'");
    if (c.eat('/')) m = c.integer();
  } else if (c.eat('/')) {
    m = c.integer();
  }
  if (!c.at_end()) c.fail("trailing input");
  if (m == 0) c.fail("zero denominator");
  if (has_sqrt && seen_d != d) c.fail("sqrt(" + seen_d.get_str() + ") outside field sqrt(" + d.get_str() + ")");
  return QuadraticElement(p, q, m, d);
}

QuadraticField::QuadraticField(Integer disc) : d(std::move(disc)) {
  if (d == 0 || d == 1 || !is_squarefree(d))
    throw std::invalid_argument("QuadraticField: d must be squarefree and not 0 or 1, got " + d.get_str());
}

QuadraticElement QuadraticField::embed(const Rational& r) const {
  return QuadraticElement(QuadraticElement::Unchecked{}, r.get_num(), 0, r.get_den(), d);
}

QuadraticElement QuadraticField::root() const { return QuadraticElement(QuadraticElement::Unchecked{}, 0, 1, 1, d); }

QuadraticField field_from(const QuadraticElement& x) { return QuadraticField(QuadraticField::Trusted{}, x.d()); }

std::optional<Rational> to_rational(const QuadraticElement& x) {
  if (!x.is_rational()) return std::nullopt;
  return x.rational_part();
}

}  // namespace ap4sq
