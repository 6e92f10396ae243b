#include <random>

#include "doctest.h"
#include "kron/error.hpp"
#include "kron/quad.hpp"

using kron::QuadNum;

namespace {

const QuadNum phi = QuadNum::parse("(1+sqrt(5))/2");

// 300-bit float image of a QuadNum, used only as an outside reference.
mpf_class wide(const QuadNum& x) {
  mpf_class p(x.p(), 300), q(x.q(), 300), r(x.r(), 300), d(x.d(), 300);
  mpf_class s(0, 300);
  if (x.d() != 0) s = sqrt(d);
  return (p + q * s) / r;
}

QuadNum random_quad(std::mt19937_64& rng, long d) {
  std::uniform_int_distribution<long> coef(-40, 40);
  std::uniform_int_distribution<long> den(1, 25);
  return QuadNum(coef(rng), coef(rng), d, den(rng));
}

}  // namespace

TEST_CASE("arithmetic examples") {
  CHECK(phi + phi == QuadNum::parse("1+sqrt(5)"));
  CHECK((QuadNum::sqrt(2) - 1) * (QuadNum::sqrt(2) + 1) == QuadNum(1));
  // (1 + 2 sqrt5 + 5) / 4 = (3 + sqrt5) / 2
  CHECK(phi * phi == QuadNum(3, 1, 5, 2));
  CHECK(phi * phi == phi + 1);
}

TEST_CASE("canonical form") {
  QuadNum x(6, 4, 8, 2);  // (6 + 4*2*sqrt2)/2 = 3 + 4 sqrt2
  CHECK(x.p() == 3);
  CHECK(x.q() == 4);
  CHECK(x.d() == 2);
  CHECK(x.r() == 1);
  QuadNum y(1, 3, 9, -2);  // (1 + 9) / -2
  CHECK(y.is_rational());
  CHECK(y == QuadNum(-5));
  CHECK(QuadNum(2, 0, 7, 4) == QuadNum::rational(1, 2));
  CHECK(QuadNum::rational(3, -6).r() == 2);
  CHECK(QuadNum::rational(3, -6).p() == -1);
}

TEST_CASE("errors") {
  CHECK_THROWS_AS(QuadNum(1) / QuadNum(0), kron::Error);
  try {
    (void)(QuadNum::sqrt(2) + QuadNum::sqrt(3));
    FAIL("expected failure");
  } catch (const kron::Error& e) {
    CHECK(e.code() == kron::ErrorCode::incompatible_field);
  }
  // sqrt(8) lives in Q(sqrt 2)
  CHECK(QuadNum::sqrt(8) - QuadNum::sqrt(2) == QuadNum::sqrt(2));
  CHECK_THROWS_AS(QuadNum::parse("1+"), kron::Error);
  CHECK_THROWS_AS(QuadNum::parse("sqrt(-2)"), kron::Error);
  CHECK_THROWS_AS(QuadNum::parse("2 3"), kron::Error);
}

TEST_CASE("comparison examples") {
  CHECK(kron::compare(phi, QuadNum::rational(8, 5)) == kron::Order::greater);
  CHECK(kron::compare(QuadNum::sqrt(2) - 1, 0) == kron::Order::greater);
  CHECK(kron::compare(phi, phi) == kron::Order::equal);
  CHECK(phi > QuadNum::rational(161803, 100000));
  CHECK(phi < QuadNum::rational(161804, 100000));
}

TEST_CASE("floor, frac and norm examples") {
  CHECK(phi.floor() == 1);
  CHECK((QuadNum::sqrt(2) - 1).floor() == 0);
  CHECK((-phi).floor() == -2);
  QuadNum a = phi - 1;
  CHECK((QuadNum(5) * a).frac() == QuadNum(5) * phi - 8);
  CHECK(kron::torus_norm(QuadNum(2) * (QuadNum::sqrt(2) - 1)) ==
        QuadNum(3) - QuadNum(2) * QuadNum::sqrt(2));
  CHECK(kron::torus_norm(QuadNum::rational(1, 2)) == QuadNum::rational(1, 2));
  CHECK(kron::torus_norm(QuadNum(3) * a) == QuadNum(5) - QuadNum(3) * phi);
}

TEST_CASE("string round trip and decimals") {
  CHECK(phi.to_string() == "(1+1*sqrt(5))/2");
  CHECK(QuadNum::parse(phi.to_string()) == phi);
  QuadNum s = QuadNum::sqrt(2) - 1;
  CHECK(QuadNum::parse(s.to_string()) == s);
  CHECK(QuadNum::parse(QuadNum::rational(-3, 7).to_string()) ==
        QuadNum::rational(-3, 7));
  CHECK(phi.to_decimal(10) == "1.618033989");
  CHECK((QuadNum(5) * phi - 8).to_decimal(6) == "0.0901699");
  CHECK(QuadNum(-1234).to_decimal(3) == "-1230");
  CHECK(QuadNum::rational(1, 2).to_decimal(3) == "0.500");
  CHECK(QuadNum::rational(9999, 10000).to_decimal(2) == "1.0");
  CHECK(phi.to_double() == doctest::Approx(1.6180339887498949));
  CHECK(QuadNum::parse("sqrt(1/2)") == QuadNum::sqrt(2) / 2);
  // heavy cancellation, the value is about -7.547e-8
  QuadNum tiny = QuadNum(kron::Integer("9369319")) * QuadNum::sqrt(2) -
                 QuadNum(kron::Integer("13250218"));
  CHECK(tiny.to_decimal(3) == "-0.0000000755");
  CHECK(tiny.to_double() == doctest::Approx(-7.54704564106e-8).epsilon(1e-10));
}

TEST_CASE("field axioms on random values") {
  std::mt19937_64 rng(20240601);
  for (long d : {2L, 3L, 5L, 13L}) {
    for (int i = 0; i < 200; ++i) {
      QuadNum x = random_quad(rng, d);
      QuadNum y = random_quad(rng, d);
      QuadNum z = random_quad(rng, d);
      CHECK((x + y) + z == x + (y + z));
      CHECK(x * (y + z) == x * y + x * z);
      if (!x.is_zero()) CHECK(x * (QuadNum(1) / x) == QuadNum(1));
      CHECK(x - x == QuadNum(0));
      QuadNum f = x.frac();
      CHECK(f >= QuadNum(0));
      CHECK(f < QuadNum(1));
      CHECK(QuadNum(x.floor()) + f == x);
      CHECK(kron::torus_norm(x) == kron::torus_norm(-x));
      CHECK(kron::torus_norm(x) == kron::torus_norm(x + 1));
      CHECK(QuadNum::parse(x.to_string()) == x);
    }
  }
}

TEST_CASE("order agrees with a wide decimal enclosure") {
  std::mt19937_64 rng(77);
  const mpf_class eps("1e-60", 300);
  int decided = 0;
  for (int i = 0; i < 1000; ++i) {
    long d = (i % 2 == 0) ? 5 : 7;
    QuadNum x = random_quad(rng, d);
    QuadNum y = random_quad(rng, d);
    mpf_class diff = wide(x) - wide(y);
    kron::Order o = kron::compare(x, y);
    if (diff > eps) {
      CHECK(o == kron::Order::greater);
      ++decided;
    } else if (diff < -eps) {
      CHECK(o == kron::Order::less);
      ++decided;
    } else {
      CHECK(o == kron::Order::equal);
    }
    // antisymmetry
    CHECK(kron::compare(y, x) ==
          (o == kron::Order::less      ? kron::Order::greater
           : o == kron::Order::greater ? kron::Order::less
                                       : kron::Order::equal));
  }
  CHECK(decided > 900);
}

TEST_CASE("floor near integers") {
  // 70/99 and 99/70 bracket sqrt2 tightly, exercise the isqrt bound.
  QuadNum s2 = QuadNum::sqrt(2);
  CHECK((QuadNum(99) * s2).floor() == 140);
  CHECK((QuadNum(-99) * s2).floor() == -141);
  CHECK((QuadNum(99) * s2 - 140).floor() == 0);
  CHECK((QuadNum(140) - QuadNum(99) * s2).floor() == -1);
  for (long k = 1; k < 500; ++k) {
    QuadNum x = QuadNum(k) * s2;
    mpf_class w = floor(wide(x));
    CHECK(x.floor() == mpz_class(w));
  }
}
