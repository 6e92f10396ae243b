#include "kron/continued_fraction.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <map>
#include <utility>

#include "kron/error.hpp"

namespace kron {
namespace {

std::vector<Quotient> minimal_word(const std::vector<Quotient>& w) {
  const std::size_t n = w.size();
  for (std::size_t t = 1; t < n; ++t) {
    if (n % t != 0) continue;
    bool ok = true;
    for (std::size_t i = t; i < n && ok; ++i) ok = w[i] == w[i - t];
    if (ok) return {w.begin(), w.begin() + static_cast<long>(t)};
  }
  return w;
}

class CfParser {
 public:
  explicit CfParser(std::string_view text) : text_(text) {}

  CfLiteral parse() {
    expect('[');
    Quotient a0 = number(true);
    std::vector<Quotient> head;
    std::vector<Quotient> period;
    if (accept(';')) {
      skip_space();
      if (!peek(']')) {
        for (;;) {
          if (accept('(')) {
            period.push_back(number(false));
            while (accept(',')) period.push_back(number(false));
            expect(')');
            break;
          }
          head.push_back(number(false));
          if (!accept(',')) break;
        }
      }
    }
    expect(']');
    skip_space();
    if (pos_ != text_.size()) error("trailing characters");

    CfLiteral out{ContinuedFraction(a0, head, period.empty()
                                                  ? std::vector<Quotient>{1}
                                                  : period),
                  period.empty(), head.size()};
    return out;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::parse, "continued fraction literal '" +
                               std::string(text_) + "': " + what +
                               " at offset " + std::to_string(pos_));
  }

  void skip_space() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_]))) {
      ++pos_;
    }
  }

  bool peek(char c) {
    skip_space();
    return pos_ < text_.size() && text_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) error(std::string("expected '") + c + "'");
  }

  Quotient number(bool allow_sign) {
    skip_space();
    const char* begin = text_.data() + pos_;
    const char* end = text_.data() + text_.size();
    if (!allow_sign && begin < end && *begin == '-') {
      error("partial quotients must be positive");
    }
    Quotient value = 0;
    auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr == begin) error("expected an integer");
    pos_ += static_cast<std::size_t>(ptr - begin);
    if (!allow_sign && value < 1) error("partial quotients must be positive");
    return value;
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

}  // namespace

ContinuedFraction::ContinuedFraction(Quotient a0,
                                     std::vector<Quotient> preperiod,
                                     std::vector<Quotient> period)
    : a0_(a0), preperiod_(std::move(preperiod)), period_(std::move(period)) {
  if (period_.empty()) {
    fail(ErrorCode::invalid_argument,
         "a quadratic irrational needs a non-empty period");
  }
  auto positive = [](Quotient x) { return x >= 1; };
  if (!std::all_of(preperiod_.begin(), preperiod_.end(), positive) ||
      !std::all_of(period_.begin(), period_.end(), positive)) {
    fail(ErrorCode::invalid_argument, "partial quotients a_i (i>=1) must be >= 1");
  }
  period_ = minimal_word(period_);
  while (!preperiod_.empty() && preperiod_.back() == period_.back()) {
    std::rotate(period_.rbegin(), period_.rbegin() + 1, period_.rend());
    preperiod_.pop_back();
  }
}

Quotient ContinuedFraction::at(std::size_t i) const {
  if (i == 0) return a0_;
  if (i - 1 < preperiod_.size()) return preperiod_[i - 1];
  return period_[(i - 1 - preperiod_.size()) % period_.size()];
}

QuadNum ContinuedFraction::value() const {
  QuadNum v = purely_periodic_value(period_, radicand_hint_);
  for (auto it = preperiod_.rbegin(); it != preperiod_.rend(); ++it) {
    v = QuadNum(*it) + v.reciprocal();
  }
  return QuadNum(a0_) + v.reciprocal();
}

ContinuedFraction ContinuedFraction::fractional() const {
  ContinuedFraction out(0, preperiod_, period_);
  out.radicand_hint_ = radicand_hint_;
  return out;
}

std::string ContinuedFraction::to_string() const {
  std::string out = "[" + std::to_string(a0_) + ";";
  for (Quotient x : preperiod_) out += std::to_string(x) + ",";
  out += "(";
  for (std::size_t i = 0; i < period_.size(); ++i) {
    if (i > 0) out += ",";
    out += std::to_string(period_[i]);
  }
  return out + ")]";
}

QuadNum purely_periodic_value(const std::vector<Quotient>& period,
                              const Integer& radicand) {
  // y = (P1 y + P0) / (Q1 y + Q0) with P/Q the convergents of the word.
  Integer p0 = 1, p1 = period.at(0), q0 = 0, q1 = 1;
  for (std::size_t i = 1; i < period.size(); ++i) {
    Integer p2 = period[i] * p1 + p0;
    Integer q2 = period[i] * q1 + q0;
    p0 = std::move(p1);
    p1 = std::move(p2);
    q0 = std::move(q1);
    q1 = std::move(q2);
  }
  // Q1 y^2 + (Q0 - P1) y - P0 = 0, positive root
  Integer b = q0 - p1;
  Integer disc = b * b + 4 * q1 * p0;
  if (radicand > 1 && mpz_divisible_p(disc.get_mpz_t(), radicand.get_mpz_t()) != 0) {
    Integer cofactor = disc / radicand;
    if (mpz_perfect_square_p(cofactor.get_mpz_t()) != 0) {
      Integer s;
      mpz_sqrt(s.get_mpz_t(), cofactor.get_mpz_t());
      return QuadNum(-b, s, radicand, 2 * q1);
    }
  }
  return QuadNum(-b, 1, disc, 2 * q1);
}

CfLiteral parse_alpha(std::string_view text) {
  std::size_t first = text.find_first_not_of(" \t\n\r");
  if (first != std::string_view::npos && text[first] == '[') {
    return CfParser(text).parse();
  }
  QuadNum x = QuadNum::parse(text);
  return CfLiteral{cf_expand(x), false, 0};
}

ContinuedFraction cf_expand(const QuadNum& x) {
  if (x.is_rational()) {
    fail(ErrorCode::rational_input,
         "continued fraction expansion needs an irrational value, got " +
             x.to_string());
  }
  // x = (P + sqrt(D)) / Q with Q | D - P^2
  Integer P = x.p(), D = x.q() * x.q() * x.d(), Q = x.r();
  if (x.q() < 0) {
    P = -P;
    Q = -Q;
  }
  {
    Integer rem = D - P * P;
    if (mpz_divisible_p(rem.get_mpz_t(), Q.get_mpz_t()) == 0) {
      Integer g = abs(Q);
      P *= g;
      D *= g * g;
      Q *= g;
    }
  }

  auto next_quotient = [&]() {
    if (Q > 0) return surd_floor(P, 1, D, Q);
    return surd_floor(-P, -1, D, -Q);
  };
  auto advance = [&](const Integer& a) {
    P = a * Q - P;
    Integer next = (D - P * P) / Q;
    Q = std::move(next);
  };

  Integer a0 = next_quotient();
  if (!a0.fits_slong_p()) fail(ErrorCode::out_of_range, "a0 too large");
  advance(a0);

  std::map<std::pair<Integer, Integer>, std::size_t> seen;
  std::vector<Quotient> quotients;
  for (;;) {
    auto key = std::make_pair(P, Q);
    auto it = seen.find(key);
    if (it != seen.end()) {
      std::size_t start = it->second;
      std::vector<Quotient> pre(quotients.begin(),
                                quotients.begin() + static_cast<long>(start));
      std::vector<Quotient> per(quotients.begin() + static_cast<long>(start),
                                quotients.end());
      ContinuedFraction out(a0.get_si(), pre, per);
      out.set_radicand_hint(x.d());
      return out;
    }
    seen.emplace(std::move(key), quotients.size());
    Integer a = next_quotient();
    if (!a.fits_slong_p()) fail(ErrorCode::out_of_range, "quotient too large");
    quotients.push_back(a.get_si());
    advance(a);
  }
}

ConvergentTable::ConvergentTable(const ContinuedFraction& cf, long n_max)
    : cf_(cf), alpha_(cf.value()), n_max_(n_max) {
  if (n_max < 0) fail(ErrorCode::invalid_argument, "n_max must be >= 0");
  const auto size = static_cast<std::size_t>(n_max + 3);
  p_.reserve(size);
  q_.reserve(size);
  delta_.reserve(size);
  p_ = {0, 1};
  q_ = {1, 0};
  delta_ = {alpha_, QuadNum(-1)};
  for (long n = 0; n <= n_max; ++n) {
    const std::size_t i = static_cast<std::size_t>(n) + 2;
    Integer an(static_cast<long>(a(n)));
    p_.push_back(an * p_[i - 1] + p_[i - 2]);
    q_.push_back(an * q_[i - 1] + q_[i - 2]);
    delta_.push_back(QuadNum(an) * delta_[i - 1] + delta_[i - 2]);
  }
  theta_.reserve(size);
  for (const QuadNum& d : delta_) theta_.push_back(kron::abs(d));
}

ConvergentTable ConvergentTable::covering(const ContinuedFraction& cf,
                                          const Integer& bound, long extra) {
  // q_n >= F_{n+1}, so this many indices always suffice.
  Integer q0 = 1, q1 = 1;
  long n = 1;
  while (q1 <= bound) {
    Integer q2 = q1 + q0;
    q0 = std::move(q1);
    q1 = std::move(q2);
    ++n;
  }
  return ConvergentTable(cf, n + extra);
}

void ConvergentTable::check(long n, long lowest) const {
  if (n < lowest || n > n_max_) {
    fail(ErrorCode::out_of_range, "convergent index " + std::to_string(n) +
                                      " outside [" + std::to_string(lowest) +
                                      ", " + std::to_string(n_max_) + "]");
  }
}

const Integer& ConvergentTable::p(long n) const {
  check(n, -2);
  return p_[static_cast<std::size_t>(n + 2)];
}

const Integer& ConvergentTable::q(long n) const {
  check(n, -2);
  return q_[static_cast<std::size_t>(n + 2)];
}

const QuadNum& ConvergentTable::delta(long n) const {
  check(n, -2);
  return delta_[static_cast<std::size_t>(n + 2)];
}

const QuadNum& ConvergentTable::theta(long n) const {
  check(n, -1);
  return theta_[static_cast<std::size_t>(n + 2)];
}

long ConvergentTable::largest_index_at_most(const Integer& bound) const {
  if (bound < 1) fail(ErrorCode::invalid_argument, "bound must be >= 1");
  if (q(n_max_) <= bound) {
    fail(ErrorCode::out_of_range, "convergent table too short for bound " +
                                      bound.get_str());
  }
  long n = 0;
  while (q(n + 1) <= bound) ++n;
  return n;
}

std::vector<Convergent> convergents(const ContinuedFraction& cf, long n_max) {
  ConvergentTable table(cf, n_max);
  std::vector<Convergent> out;
  out.reserve(static_cast<std::size_t>(n_max + 1));
  for (long n = 0; n <= n_max; ++n) out.push_back({n, table.p(n), table.q(n)});
  return out;
}

QuadNum theta(const ContinuedFraction& cf, long n) {
  if (n < -1) fail(ErrorCode::invalid_argument, "theta index must be >= -1");
  return ConvergentTable(cf, std::max(n, 0L)).theta(n);
}

OstrowskiDigits ostrowski(const ContinuedFraction& cf, const Integer& N) {
  if (N < 1) fail(ErrorCode::invalid_argument, "Ostrowski expansion needs N >= 1");
  ConvergentTable table = ConvergentTable::covering(cf.fractional(), N);
  long top = table.largest_index_at_most(N);
  OstrowskiDigits out{N, std::vector<Quotient>(static_cast<std::size_t>(top) + 1, 0)};
  Integer rest = N;
  for (long n = top; n >= 0 && rest > 0; --n) {
    Integer b = rest / table.q(n);
    out.digits[static_cast<std::size_t>(n)] = b.get_si();
    rest -= b * table.q(n);
  }
  return out;
}

bool ostrowski_admissible(const ContinuedFraction& cf,
                          const std::vector<Quotient>& digits) {
  for (std::size_t n = 0; n < digits.size(); ++n) {
    Quotient cap = cf.at(n + 1);
    Quotient b = digits[n];
    if (b < 0 || b > cap) return false;
    if (n == 0 && b == cap) return false;
    if (n > 0 && b == cap && digits[n - 1] != 0) return false;
  }
  return true;
}

}  // namespace kron
