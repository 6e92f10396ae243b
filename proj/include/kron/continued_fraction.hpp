#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "kron/quad.hpp"

namespace kron {

using Quotient = std::int64_t;

/// [a0; preperiod..., (period...)], always stored in canonical form: the
/// period is its own minimal word and the preperiod is as short as possible.
class ContinuedFraction {
 public:
  ContinuedFraction(Quotient a0, std::vector<Quotient> preperiod,
                    std::vector<Quotient> period);

  Quotient a0() const { return a0_; }
  const std::vector<Quotient>& preperiod() const { return preperiod_; }
  const std::vector<Quotient>& period() const { return period_; }

  /// Partial quotient a_i, i >= 0.
  Quotient at(std::size_t i) const;

  QuadNum value() const;
  /// Same quotients with a0 = 0, i.e. the expansion of the fractional part.
  ContinuedFraction fractional() const;

  /// "[a0;p1,p2,(b1,b2)]"
  std::string to_string() const;

  friend bool operator==(const ContinuedFraction& a,
                         const ContinuedFraction& b) {
    return a.a0_ == b.a0_ && a.preperiod_ == b.preperiod_ &&
           a.period_ == b.period_;
  }

  /// Squarefree radicand of the field, when known from the source value.
  /// Saves factoring the period discriminant in value().
  void set_radicand_hint(const Integer& d) { radicand_hint_ = d; }

 private:
  Quotient a0_;
  Integer radicand_hint_ = 0;
  std::vector<Quotient> preperiod_;
  std::vector<Quotient> period_;
};

/// A parsed rotation angle. A finite CF literal without a parenthesised
/// period gets the period (1) appended; `tail_assumed` records that, and
/// `exact_prefix` counts the quotients a1.. that were actually given.
struct CfLiteral {
  ContinuedFraction cf;
  bool tail_assumed = false;
  std::size_t exact_prefix = 0;
};

/// Accepts "[a0; a1, (b1, b2)]", "[a0; a1, a2]" or any surd literal.
CfLiteral parse_alpha(std::string_view text);

/// Expansion of an irrational quadratic number.
ContinuedFraction cf_expand(const QuadNum& x);

/// Positive root y > 1 of y = [b1; b2, ..., bk, y]. A nonzero
/// `radicand` names the field and skips the squarefree reduction.
QuadNum purely_periodic_value(const std::vector<Quotient>& period,
                              const Integer& radicand = 0);

struct Convergent {
  long n;
  Integer p;
  Integer q;
};

/// Convergents p_n/q_n for n = -2..n_max and the signed errors
/// delta_n = q_n*alpha - p_n, theta_n = |delta_n|.
class ConvergentTable {
 public:
  ConvergentTable(const ContinuedFraction& cf, long n_max);

  /// Table reaching at least `extra` indices past the first q_n > bound.
  static ConvergentTable covering(const ContinuedFraction& cf,
                                  const Integer& bound, long extra = 2);

  const ContinuedFraction& cf() const { return cf_; }
  const QuadNum& alpha() const { return alpha_; }
  long n_max() const { return n_max_; }

  Quotient a(long n) const { return cf_.at(static_cast<std::size_t>(n)); }
  const Integer& p(long n) const;
  const Integer& q(long n) const;
  const QuadNum& delta(long n) const;
  const QuadNum& theta(long n) const;

  /// Largest n >= 0 with q_n <= bound (q_1 is preferred over q_0 on ties).
  long largest_index_at_most(const Integer& bound) const;

 private:
  void check(long n, long lowest) const;

  ContinuedFraction cf_;
  QuadNum alpha_;
  long n_max_;
  std::vector<Integer> p_;  // offset by 2
  std::vector<Integer> q_;
  std::vector<QuadNum> delta_;
  std::vector<QuadNum> theta_;
};

std::vector<Convergent> convergents(const ContinuedFraction& cf, long n_max);

/// |q_n alpha - p_n| for n >= -1 (theta_{-1} = 1).
QuadNum theta(const ContinuedFraction& cf, long n);

/// Greedy Ostrowski digits: N = sum digits[n] * q_n over the denominators of
/// the fractional part, with 0 <= b_n <= a_{n+1}, b_0 < a_1 and
/// b_{n-1} = 0 whenever b_n = a_{n+1}.
struct OstrowskiDigits {
  Integer N;
  std::vector<Quotient> digits;
};

OstrowskiDigits ostrowski(const ContinuedFraction& cf, const Integer& N);

/// True iff the digit string obeys the constraints above.
bool ostrowski_admissible(const ContinuedFraction& cf,
                          const std::vector<Quotient>& digits);

}  // namespace kron
