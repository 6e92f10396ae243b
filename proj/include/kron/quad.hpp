#pragma once

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>

#include <gmpxx.h>

namespace kron {

using Integer = mpz_class;

enum class Order { less, equal, greater };

/// An exact element (p + q*sqrt(d)) / r of a real quadratic field.
///
/// Every constructor canonicalizes: r > 0, gcd(p, q, r) = 1, d squarefree
/// (small square factors are moved into q), and rationals are stored with
/// q = 0, d = 0. Two values in the same field are equal iff their canonical
/// forms are identical, so equality and hashing are structural.
class QuadNum {
 public:
  QuadNum() = default;
  QuadNum(long value);  // NOLINT(google-explicit-constructor)
  explicit QuadNum(const Integer& value);
  QuadNum(Integer p, Integer q, Integer d, Integer r);

  static QuadNum rational(const Integer& num, const Integer& den);
  static QuadNum sqrt(const Integer& d);

  /// Parses surd literals such as "(1+1*sqrt(5))/2", "-3/7" or "sqrt(2)-1".
  /// Accepts +, -, *, / and parentheses over integers and sqrt(integer).
  static QuadNum parse(std::string_view text);

  const Integer& p() const { return p_; }
  const Integer& q() const { return q_; }
  const Integer& d() const { return d_; }
  const Integer& r() const { return r_; }

  bool is_rational() const { return q_ == 0; }
  bool is_zero() const { return p_ == 0 && q_ == 0; }
  int sign() const;

  QuadNum operator-() const;
  QuadNum& operator+=(const QuadNum& other);
  QuadNum& operator-=(const QuadNum& other);
  QuadNum& operator*=(const QuadNum& other);
  QuadNum& operator/=(const QuadNum& other);

  friend QuadNum operator+(QuadNum a, const QuadNum& b) { return a += b; }
  friend QuadNum operator-(QuadNum a, const QuadNum& b) { return a -= b; }
  friend QuadNum operator*(QuadNum a, const QuadNum& b) { return a *= b; }
  friend QuadNum operator/(QuadNum a, const QuadNum& b) { return a /= b; }

  friend bool operator==(const QuadNum& a, const QuadNum& b) {
    return a.p_ == b.p_ && a.q_ == b.q_ && a.r_ == b.r_ && a.d_ == b.d_;
  }
  friend std::strong_ordering operator<=>(const QuadNum& a, const QuadNum& b);

  QuadNum conjugate() const;
  QuadNum reciprocal() const;

  Integer floor() const;
  QuadNum frac() const;

  /// Canonical surd literal; parse(to_string()) reproduces the value.
  std::string to_string() const;
  /// Fixed-point rendering rounded to `significant` digits. Display only.
  std::string to_decimal(int significant = 15) const;
  double to_double() const;

  std::size_t hash() const;

 private:
  void canonicalize();

  Integer p_ = 0;
  Integer q_ = 0;
  Integer d_ = 0;
  Integer r_ = 1;
};

Order compare(const QuadNum& x, const QuadNum& y);
QuadNum abs(const QuadNum& x);
QuadNum min(const QuadNum& x, const QuadNum& y);
QuadNum max(const QuadNum& x, const QuadNum& y);

/// Distance to the nearest integer, min({x}, 1 - {x}).
QuadNum torus_norm(const QuadNum& x);

/// Sign of a + b*sqrt(d) for integers, d >= 0.
int surd_sign(const Integer& a, const Integer& b, const Integer& d);

/// floor((a + b*sqrt(d)) / c) for c > 0.
Integer surd_floor(const Integer& a, const Integer& b, const Integer& d,
                   const Integer& c);

std::string integer_string(const Integer& value);

}  // namespace kron

template <>
struct std::hash<kron::QuadNum> {
  std::size_t operator()(const kron::QuadNum& x) const { return x.hash(); }
};
