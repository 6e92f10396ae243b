#pragma once

#include <cstdint>
#include <vector>

#include "kron/quad.hpp"

namespace kron {

/// The number a*alpha + b for a fixed rotation angle alpha. Every orbit point,
/// gap length and interval endpoint of the rotation has this shape, and since
/// alpha is irrational two forms are equal as reals iff (a, b) coincide.
struct AlphaForm {
  std::int64_t a = 0;
  std::int64_t b = 0;

  friend AlphaForm operator+(AlphaForm x, AlphaForm y) {
    return {x.a + y.a, x.b + y.b};
  }
  friend AlphaForm operator-(AlphaForm x, AlphaForm y) {
    return {x.a - y.a, x.b - y.b};
  }
  friend AlphaForm operator-(AlphaForm x) { return {-x.a, -x.b}; }
  friend AlphaForm operator*(std::int64_t k, AlphaForm x) {
    return {k * x.a, k * x.b};
  }
  friend bool operator==(AlphaForm, AlphaForm) = default;
  friend auto operator<=>(AlphaForm, AlphaForm) = default;  // structural only
};

/// Exact order on AlphaForms. Signs are decided in 128-bit integers from the
/// canonical surd of alpha, with a GMP fallback on overflow.
class OrbitField {
 public:
  explicit OrbitField(const QuadNum& alpha);

  const QuadNum& alpha() const { return alpha_; }

  int sign(AlphaForm x) const;
  bool less(AlphaForm x, AlphaForm y) const { return sign(x - y) < 0; }

  /// floor(m * alpha)
  std::int64_t floor_multiple(std::int64_t m) const;
  /// {m * alpha} as a form (m, -floor(m alpha)).
  AlphaForm point(std::int64_t m) const { return {m, -floor_multiple(m)}; }
  /// {x} for an arbitrary form.
  AlphaForm frac(AlphaForm x) const;

  QuadNum value(AlphaForm x) const;
  double approx(AlphaForm x) const {
    return static_cast<double>(x.a) * alpha_double_ + static_cast<double>(x.b);
  }

  /// Comparator object for ordered containers.
  struct Less {
    const OrbitField* field;
    bool operator()(AlphaForm x, AlphaForm y) const {
      return field->less(x, y);
    }
  };
  Less comparator() const { return Less{this}; }

 private:
  int sign_slow(AlphaForm x) const;

  QuadNum alpha_;
  double alpha_double_;
  // alpha = (p + q sqrt(d)) / r
  bool small_ = false;
  __int128 p_ = 0, q_ = 0, d_ = 0, r_ = 1;
};

}  // namespace kron
