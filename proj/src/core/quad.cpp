#include "kron/quad.hpp"

#include <cctype>
#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <map>
#include <vector>
#include <utility>

#include "kron/error.hpp"

namespace kron {
namespace {

constexpr unsigned long kSquareTrialLimit = 1UL << 16;

Integer isqrt(const Integer& n) {
  Integer out;
  mpz_sqrt(out.get_mpz_t(), n.get_mpz_t());
  return out;
}

bool is_perfect_square(const Integer& n) {
  return mpz_perfect_square_p(n.get_mpz_t()) != 0;
}

// Pollard-Brent rho. Returns a nontrivial factor of composite n, or 0 when
// the iteration budget runs out.
Integer rho_factor(const Integer& n) {
  if (mpz_even_p(n.get_mpz_t()) != 0) return 2;
  for (unsigned long c = 1; c < 5; ++c) {
    Integer y = 2, x, g = 1, q = 1, ys;
    unsigned long r = 1;
    const unsigned long m = 128;
    auto f = [&](const Integer& v) {
      Integer out = v * v + c;
      mpz_mod(out.get_mpz_t(), out.get_mpz_t(), n.get_mpz_t());
      return out;
    };
    while (g == 1 && r < (1UL << 18)) {
      x = y;
      for (unsigned long i = 0; i < r; ++i) y = f(y);
      unsigned long k = 0;
      while (k < r && g == 1) {
        ys = y;
        for (unsigned long i = 0; i < std::min(m, r - k); ++i) {
          y = f(y);
          q = q * abs(x - y) % n;
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        k += m;
      }
      r *= 2;
    }
    if (g == n) {
      do {
        ys = f(ys);
        Integer diff = abs(x - ys);
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n && g != 1) return g;
  }
  return 0;
}

void collect_primes(const Integer& n, std::map<Integer, unsigned long>& out,
                    std::vector<Integer>& stuck) {
  if (n == 1) return;
  if (mpz_probab_prime_p(n.get_mpz_t(), 30) != 0) {
    ++out[n];
    return;
  }
  if (is_perfect_square(n)) {
    Integer s = isqrt(n);
    collect_primes(s, out, stuck);
    collect_primes(s, out, stuck);
    return;
  }
  Integer f = rho_factor(n);
  if (f == 0) {
    stuck.push_back(n);
    return;
  }
  collect_primes(f, out, stuck);
  collect_primes(n / f, out, stuck);
}

// Writes d = root^2 * core with core squarefree; d is replaced by core.
void squarefree_split(Integer& d, Integer& root) {
  Integer core = 1;
  Integer m = d;
  for (unsigned long k = 2; k < kSquareTrialLimit; k += (k == 2 ? 1 : 2)) {
    if (Integer(k) * k > m) break;
    unsigned long e = 0;
    while (mpz_divisible_ui_p(m.get_mpz_t(), k) != 0) {
      mpz_divexact_ui(m.get_mpz_t(), m.get_mpz_t(), k);
      ++e;
    }
    for (unsigned long i = 0; i < e / 2; ++i) root *= k;
    if (e % 2 == 1) core *= k;
  }
  // Every prime factor left in m exceeds the trial limit.
  const Integer tiny = Integer(kSquareTrialLimit) * kSquareTrialLimit;
  if (m < tiny * kSquareTrialLimit) {
    // at most two prime factors: either p, p*q or p^2
    if (is_perfect_square(m)) {
      root *= isqrt(m);
    } else {
      core *= m;
    }
  } else {
    std::map<Integer, unsigned long> primes;
    std::vector<Integer> stuck;
    collect_primes(m, primes, stuck);
    for (const auto& [p, e] : primes) {
      for (unsigned long i = 0; i < e / 2; ++i) root *= p;
      if (e % 2 == 1) core *= p;
    }
    for (const Integer& s : stuck) core *= s;
  }
  d = core;
}

Integer gcd3(const Integer& a, const Integer& b, const Integer& c) {
  Integer g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

Integer pow10(unsigned long k) {
  Integer out;
  mpz_ui_pow_ui(out.get_mpz_t(), 10, k);
  return out;
}

// Rewrites b into the field of a when both radicands describe the same field
// (d_a * d_b a perfect square). Returns the shared radicand.
Integer unify(const QuadNum& a, QuadNum& b) {
  if (a.is_rational()) return b.d();
  if (b.is_rational() || a.d() == b.d()) return a.d();
  Integer prod = a.d() * b.d();
  if (!is_perfect_square(prod)) {
    fail(ErrorCode::incompatible_field,
         "values lie in different quadratic fields: sqrt(" +
             integer_string(a.d()) + ") vs sqrt(" + integer_string(b.d()) +
             ")");
  }
  Integer s = isqrt(prod);
  b = QuadNum(b.p() * a.d(), b.q() * s, a.d(), b.r() * a.d());
  return a.d();
}

class SurdParser {
 public:
  explicit SurdParser(std::string_view text) : text_(text) {}

  QuadNum parse() {
    QuadNum value = expression();
    skip_space();
    if (pos_ != text_.size()) error("unexpected character");
    return value;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::parse, "surd literal '" + std::string(text_) + "': " +
                               what + " at offset " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool accept(char c) {
    skip_space();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }

  QuadNum expression() {
    QuadNum value = term();
    for (;;) {
      if (accept('+')) {
        value += term();
      } else if (accept('-')) {
        value -= term();
      } else {
        return value;
      }
    }
  }

  QuadNum term() {
    QuadNum value = unary();
    for (;;) {
      if (accept('*')) {
        value *= unary();
      } else if (accept('/')) {
        value /= unary();
      } else {
        return value;
      }
    }
  }

  QuadNum unary() {
    if (accept('-')) return -unary();
    if (accept('+')) return unary();
    return primary();
  }

  QuadNum primary() {
    skip_space();
    if (accept('(')) {
      QuadNum inner = expression();
      expect(')');
      return inner;
    }
    if (text_.substr(pos_, 4) == "sqrt") {
      pos_ += 4;
      expect('(');
      QuadNum radicand = expression();
      expect(')');
      if (!radicand.is_rational() || radicand.sign() < 0) {
        error("sqrt() needs a non-negative rational argument");
      }
      // sqrt(a/b) = sqrt(a*b) / b
      return QuadNum::sqrt(radicand.p() * radicand.r()) /
             QuadNum(radicand.r());
    }
    std::size_t start = pos_;
    while (pos_ < text_.size() &&
           std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
    if (start == pos_) error("expected a number, sqrt(...) or '('");
    return QuadNum(Integer(std::string(text_.substr(start, pos_ - start))));
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

std::string integer_string(const Integer& value) { return value.get_str(); }

int surd_sign(const Integer& a, const Integer& b, const Integer& d) {
  int sa = sgn(a);
  int sb = (d == 0) ? 0 : sgn(b);
  if (sb == 0) return sa;
  if (sa >= 0 && sb >= 0) return 1;
  if (sa <= 0 && sb <= 0) return -1;
  Integer lhs = a * a;
  Integer rhs = b * b * d;
  int c = cmp(lhs, rhs);
  return sa > 0 ? c : -c;
}

Integer surd_floor(const Integer& a, const Integer& b, const Integer& d,
                   const Integer& c) {
  Integer lower;
  if (b == 0 || d == 0) {
    lower = a;
  } else {
    Integer radicand = b * b * d;
    Integer m = isqrt(radicand);
    if (m * m == radicand) {
      lower = (b > 0) ? Integer(a + m) : Integer(a - m);
    } else {
      // b*sqrt(d) lies strictly between consecutive integers.
      lower = (b > 0) ? Integer(a + m) : Integer(a - m - 1);
    }
  }
  Integer out;
  mpz_fdiv_q(out.get_mpz_t(), lower.get_mpz_t(), c.get_mpz_t());
  return out;
}

QuadNum::QuadNum(long value) : p_(value) {}

QuadNum::QuadNum(const Integer& value) : p_(value) {}

QuadNum::QuadNum(Integer p, Integer q, Integer d, Integer r)
    : p_(std::move(p)), q_(std::move(q)), d_(std::move(d)), r_(std::move(r)) {
  if (r_ == 0) fail(ErrorCode::division_by_zero, "zero denominator");
  if (d_ < 0) fail(ErrorCode::invalid_argument, "negative radicand");
  if (q_ != 0 && d_ != 0) {
    Integer root = 1;
    squarefree_split(d_, root);
    q_ *= root;
    if (d_ == 1) {
      p_ += q_;
      q_ = 0;
    }
  }
  canonicalize();
}

QuadNum QuadNum::rational(const Integer& num, const Integer& den) {
  return QuadNum(num, 0, 0, den);
}

QuadNum QuadNum::sqrt(const Integer& d) {
  if (d < 0) fail(ErrorCode::invalid_argument, "sqrt of a negative integer");
  return QuadNum(0, 1, d, 1);
}

QuadNum QuadNum::parse(std::string_view text) {
  return SurdParser(text).parse();
}

void QuadNum::canonicalize() {
  if (r_ == 0) fail(ErrorCode::division_by_zero, "division by zero");
  if (q_ == 0 || d_ == 0) {
    q_ = 0;
    d_ = 0;
  }
  if (r_ < 0) {
    p_ = -p_;
    q_ = -q_;
    r_ = -r_;
  }
  Integer g = gcd3(p_, q_, r_);
  if (g > 1) {
    mpz_divexact(p_.get_mpz_t(), p_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(q_.get_mpz_t(), q_.get_mpz_t(), g.get_mpz_t());
    mpz_divexact(r_.get_mpz_t(), r_.get_mpz_t(), g.get_mpz_t());
  }
}

int QuadNum::sign() const { return surd_sign(p_, q_, d_); }

QuadNum QuadNum::operator-() const {
  QuadNum out = *this;
  out.p_ = -out.p_;
  out.q_ = -out.q_;
  return out;
}

QuadNum& QuadNum::operator+=(const QuadNum& other) {
  QuadNum rhs = other;
  d_ = unify(*this, rhs);
  p_ = p_ * rhs.r_ + rhs.p_ * r_;
  q_ = q_ * rhs.r_ + rhs.q_ * r_;
  r_ *= rhs.r_;
  canonicalize();
  return *this;
}

QuadNum& QuadNum::operator-=(const QuadNum& other) { return *this += -other; }

QuadNum& QuadNum::operator*=(const QuadNum& other) {
  QuadNum rhs = other;
  d_ = unify(*this, rhs);
  Integer np = p_ * rhs.p_ + q_ * rhs.q_ * d_;
  Integer nq = p_ * rhs.q_ + q_ * rhs.p_;
  p_ = std::move(np);
  q_ = std::move(nq);
  r_ *= rhs.r_;
  canonicalize();
  return *this;
}

QuadNum& QuadNum::operator/=(const QuadNum& other) {
  return *this *= other.reciprocal();
}

QuadNum QuadNum::conjugate() const {
  QuadNum out = *this;
  out.q_ = -out.q_;
  return out;
}

QuadNum QuadNum::reciprocal() const {
  if (is_zero()) fail(ErrorCode::division_by_zero, "division by zero");
  Integer norm = p_ * p_ - q_ * q_ * d_;
  QuadNum out;
  out.p_ = r_ * p_;
  out.q_ = -r_ * q_;
  out.d_ = d_;
  out.r_ = norm;
  out.canonicalize();
  return out;
}

std::strong_ordering operator<=>(const QuadNum& a, const QuadNum& b) {
  switch (compare(a, b)) {
    case Order::less:
      return std::strong_ordering::less;
    case Order::equal:
      return std::strong_ordering::equal;
    case Order::greater:
      break;
  }
  return std::strong_ordering::greater;
}

Integer QuadNum::floor() const { return surd_floor(p_, q_, d_, r_); }

QuadNum QuadNum::frac() const { return *this - QuadNum(floor()); }

std::string QuadNum::to_string() const {
  if (is_rational()) {
    if (r_ == 1) return p_.get_str();
    return p_.get_str() + "/" + r_.get_str();
  }
  std::string num = p_.get_str();
  num += (q_ < 0) ? "-" : "+";
  num += Integer(abs(q_)).get_str() + "*sqrt(" + d_.get_str() + ")";
  if (r_ == 1) return num;
  return "(" + num + ")/" + r_.get_str();
}

std::string QuadNum::to_decimal(int significant) const {
  if (significant < 1) significant = 1;
  if (is_zero()) return "0";
  const QuadNum mag = abs(*this);
  // log10 |x| from exponents alone, using the conjugate when p and q*sqrt(d)
  // cancel.
  auto log10_of = [](const Integer& v) {
    long e = 0;
    double m = mpz_get_d_2exp(&e, v.get_mpz_t());
    return std::log10(std::abs(m)) + static_cast<double>(e) * std::log10(2.0);
  };
  auto log10_sum = [&](const Integer& a, const Integer& b) {
    // log10(|a| + |b| sqrt(d)), neither term zero-dominated
    double la = a == 0 ? -1e300 : log10_of(a);
    double lb = b == 0 ? -1e300 : log10_of(b) + 0.5 * log10_of(mag.d_);
    double hi = std::max(la, lb), lo = std::min(la, lb);
    return hi + std::log10(1.0 + std::pow(10.0, lo - hi));
  };
  double lg;
  if (mag.q_ == 0 || sgn(mag.p_) * sgn(mag.q_) >= 0) {
    lg = log10_sum(mag.p_, mag.q_) - log10_of(mag.r_);
  } else {
    Integer norm = mag.p_ * mag.p_ - mag.q_ * mag.q_ * mag.d_;
    lg = log10_of(norm) - log10_sum(mag.p_, mag.q_) - log10_of(mag.r_);
  }
  long exponent = static_cast<long>(std::floor(lg));
  long scale = significant - 1 - exponent;
  const Integer upper = pow10(static_cast<unsigned long>(significant));
  const Integer lower = pow10(static_cast<unsigned long>(significant - 1));

  auto rounded = [&](long k) {
    // floor(|x| * 10^k + 1/2)
    if (k >= 0) {
      Integer t = pow10(static_cast<unsigned long>(k));
      return surd_floor(2 * mag.p_ * t + mag.r_, 2 * mag.q_ * t, mag.d_,
                        2 * mag.r_);
    }
    Integer t = pow10(static_cast<unsigned long>(-k));
    return surd_floor(2 * mag.p_ + mag.r_ * t, 2 * mag.q_, mag.d_,
                      2 * mag.r_ * t);
  };

  Integer digits = rounded(scale);
  for (int guard = 0; guard < 64; ++guard) {
    if (digits >= upper) {
      --scale;
    } else if (digits == 0) {
      scale += significant;
    } else if (digits < lower) {
      ++scale;
    } else {
      break;
    }
    digits = rounded(scale);
  }
  // Rounding up can carry into a new leading digit (9.99.. -> 10.0..).
  if (digits >= upper) {
    --scale;
    digits = rounded(scale);
  }

  std::string body = digits.get_str();
  if (scale > 0) {
    if (body.size() <= static_cast<std::size_t>(scale)) {
      body.insert(0, static_cast<std::size_t>(scale) + 1 - body.size(), '0');
    }
    body.insert(body.size() - static_cast<std::size_t>(scale), ".");
  } else {
    body.append(static_cast<std::size_t>(-scale), '0');
  }
  return (sign() < 0 ? "-" : "") + body;
}

double QuadNum::to_double() const {
  return std::strtod(to_decimal(20).c_str(), nullptr);
}

std::size_t QuadNum::hash() const {
  return std::hash<std::string>{}(to_string());
}

Order compare(const QuadNum& x, const QuadNum& y) {
  if (x == y) return Order::equal;
  int s = (x - y).sign();
  if (s < 0) return Order::less;
  if (s > 0) return Order::greater;
  return Order::equal;
}

QuadNum abs(const QuadNum& x) { return x.sign() < 0 ? -x : x; }

QuadNum min(const QuadNum& x, const QuadNum& y) { return y < x ? y : x; }

QuadNum max(const QuadNum& x, const QuadNum& y) { return x < y ? y : x; }

QuadNum torus_norm(const QuadNum& x) {
  QuadNum f = x.frac();
  return min(f, QuadNum(1) - f);
}

}  // namespace kron
