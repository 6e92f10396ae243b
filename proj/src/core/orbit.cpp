#include "kron/orbit.hpp"

#include <cmath>

#include "kron/error.hpp"

namespace kron {
namespace {

using i128 = __int128;

constexpr std::int64_t kSmallCoefficient = std::int64_t{1} << 40;

bool fits_small(const Integer& x) {
  return x.fits_slong_p() && std::abs(x.get_si()) < kSmallCoefficient;
}

Integer to_integer(std::int64_t x) { return Integer(static_cast<long>(x)); }

}  // namespace

OrbitField::OrbitField(const QuadNum& alpha)
    : alpha_(alpha), alpha_double_(alpha.to_double()) {
  if (alpha.is_rational()) {
    fail(ErrorCode::rational_input, "rotation angle must be irrational");
  }
  small_ = fits_small(alpha.p()) && fits_small(alpha.q()) &&
           fits_small(alpha.d()) && fits_small(alpha.r());
  if (small_) {
    p_ = alpha.p().get_si();
    q_ = alpha.q().get_si();
    d_ = alpha.d().get_si();
    r_ = alpha.r().get_si();
  }
}

int OrbitField::sign(AlphaForm f) const {
  if (!small_) return sign_slow(f);
  // f = (a p + b r + a q sqrt(d)) / r with r > 0
  i128 ap, br, x, y;
  if (__builtin_mul_overflow(static_cast<i128>(f.a), p_, &ap) ||
      __builtin_mul_overflow(static_cast<i128>(f.b), r_, &br) ||
      __builtin_add_overflow(ap, br, &x) ||
      __builtin_mul_overflow(static_cast<i128>(f.a), q_, &y)) {
    return sign_slow(f);
  }
  int sx = (x > 0) - (x < 0);
  int sy = (y > 0) - (y < 0);
  if (sy == 0) return sx;
  if (sx >= 0 && sy >= 0) return 1;
  if (sx <= 0 && sy <= 0) return -1;
  i128 xx, yy, yyd;
  if (__builtin_mul_overflow(x, x, &xx) || __builtin_mul_overflow(y, y, &yy) ||
      __builtin_mul_overflow(yy, d_, &yyd)) {
    return sign_slow(f);
  }
  int c = (xx > yyd) - (xx < yyd);
  return sx > 0 ? c : -c;
}

int OrbitField::sign_slow(AlphaForm f) const {
  Integer a = to_integer(f.a);
  Integer b = to_integer(f.b);
  return surd_sign(a * alpha_.p() + b * alpha_.r(), a * alpha_.q(),
                   alpha_.d());
}

std::int64_t OrbitField::floor_multiple(std::int64_t m) const {
  auto guess = static_cast<std::int64_t>(
      std::floor(static_cast<double>(m) * alpha_double_));
  while (sign({m, -guess}) < 0) --guess;
  while (sign({m, -(guess + 1)}) >= 0) ++guess;
  return guess;
}

AlphaForm OrbitField::frac(AlphaForm x) const {
  return {x.a, -floor_multiple(x.a)};
}

QuadNum OrbitField::value(AlphaForm x) const {
  return QuadNum(to_integer(x.a)) * alpha_ + QuadNum(to_integer(x.b));
}

}  // namespace kron
