#include "doctest.h"
#include "kron/covering.hpp"
#include "kron/error.hpp"

using namespace kron;

namespace {

ContinuedFraction cf(const char* text) { return parse_alpha(text).cf; }

double num(const QuadNum& x) { return x.to_double(); }

}  // namespace

TEST_CASE("F1 approximants") {
  ContinuedFraction g = cf("[0;(1)]");
  ConvergentTable t(g, 6);
  CoveringValue v = f1_approx(g, 4);
  CHECK(v.exact == QuadNum(8) * t.theta(4));
  CHECK(num(v.exact) == doctest::Approx(0.7213595).epsilon(1e-7));
  CHECK(v.kind == CoveringKind::approximant);
  CHECK(num(f1_approx(cf("[0;(2)]"), 3).exact) ==
        doctest::Approx(0.853680).epsilon(1e-6));
  ContinuedFraction s = cf("[0;(2)]");
  CHECK(f1_approx(s, 0).exact == QuadNum(2) * (QuadNum::sqrt(2) - 1));
}

TEST_CASE("F1 periodic limits") {
  CHECK(f1_exact_periodic(cf("[0;(1)]")).exact == QuadNum::parse("(5+sqrt(5))/10"));
  CHECK(f1_exact_periodic(cf("[0;(2)]")).exact ==
        QuadNum(1) / QuadNum::parse("4-2*sqrt(2)"));
  // reference values from 50-digit evaluation of the approximants
  CHECK(f1_exact_periodic(cf("[0;(1,2)]")).exact == QuadNum::parse("(3+sqrt(3))/6"));
  CHECK(num(f1_exact_periodic(cf("[0;(3)]")).exact) ==
        doctest::Approx(0.916025147168922).epsilon(1e-14));
  // a preperiod does not move the limit
  CHECK(f1_exact_periodic(cf("[5;7,1,3,(1)]")).exact ==
        f1_exact_periodic(cf("[0;(1)]")).exact);
}

TEST_CASE("approximants converge to the periodic limit") {
  for (const char* text : {"[0;(1)]", "[0;(2)]", "[0;(1,2)]", "[0;(3)]", "[0;(2,1,3)]"}) {
    ContinuedFraction c = cf(text);
    QuadNum limit = f1_exact_periodic(c).exact;
    const std::size_t L = c.period().size();
    QuadNum best_tail;
    for (long n = 40; n < 40 + static_cast<long>(L); ++n) {
      QuadNum a = f1_approx(c, n).exact;
      if (a > best_tail) best_tail = a;
    }
    CHECK(num(kron::abs(best_tail - limit)) < 1e-9);
    // along the residue class attaining the max, the error shrinks
    double prev = 1.0;
    for (long n = 10; n <= 40; n += static_cast<long>(L)) {
      double err = 1.0;
      for (std::size_t r = 0; r < L; ++r) {
        double e = num(kron::abs(f1_approx(c, n + static_cast<long>(r)).exact - limit));
        err = std::min(err, e);
      }
      CHECK(err <= prev);
      prev = err;
    }
  }
}

TEST_CASE("F2") {
  CoveringValue g = f2_exact(cf("[0;(1)]"));
  CHECK(g.exact == QuadNum::parse("(5+2*sqrt(5))/10"));
  CHECK(g.exact > f1_exact_periodic(cf("[0;(1)]")).exact);
  CHECK(f2_exact(cf("[0;(2)]")).exact == f1_exact_periodic(cf("[0;(2)]")).exact);
  CHECK(f2_exact(cf("[0;4,(3,2)]")).exact == f1_exact_periodic(cf("[0;(3,2)]")).exact);
  try {
    f2_exact(cf("[0;(1,2)]"));
    FAIL("mixed tail accepted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::not_covered);
  }
}

TEST_CASE("Fk display diagnostic") {
  CoveringValue g = fk_bound_eval(cf("[0;(1)]"), 1, 10);
  CHECK(g.clamped);
  CHECK(g.exact == QuadNum(1));
  CHECK(num(g.raw) == doctest::Approx(1.170809100832802).epsilon(1e-13));
  CHECK(g.kind == CoveringKind::paper_display_diagnostic);
  CoveringValue s2 = fk_bound_eval(cf("[0;(2)]"), 2, 10);
  CHECK(s2.clamped);
  CHECK(num(s2.raw) == doctest::Approx(1.030330085219471).epsilon(1e-13));
  CoveringValue s3 = fk_bound_eval(cf("[0;(2)]"), 3, 10);
  CHECK_FALSE(s3.clamped);
  CHECK(num(s3.exact) == doctest::Approx(0.971404520158935).epsilon(1e-13));
  ConvergentTable t(cf("[0;(2)]"), 12);
  QuadNum fl(Integer(t.q(11) / 3));
  CHECK(s3.exact == fl * (QuadNum(3) * t.theta(10) + t.theta(11)));
}

TEST_CASE("Eq2 evaluator") {
  Eq2Result a = eq2_bound(2, 3);
  CHECK(num(a.value.exact) == doctest::Approx(0.832611206852317).epsilon(1e-13));
  CHECK(a.bracket == QuadNum(80) / (a.alpha * a.alpha * a.alpha * a.alpha * a.alpha));
  CHECK(num(a.threshold) == doctest::Approx(19.89949493661167).epsilon(1e-13));
  CHECK(a.value.kind == CoveringKind::lower_bound);
  Eq2Result b = eq2_bound(1, 5);
  CHECK(num(b.value.exact) == doctest::Approx(0.697826065989401).epsilon(1e-13));
  for (long s = 1; s <= 6; ++s) {
    CHECK(eq2_bracket_limit(s) == QuadNum(1));
    QuadNum prev;
    for (long j = 1; j <= 25; ++j) {
      QuadNum v = eq2_bound(s, j).value.exact;
      CHECK(v >= prev);
      prev = v;
    }
    CHECK(num(QuadNum(1) - eq2_bound(s, 25).bracket) < 1e-5);
  }
}

TEST_CASE("constant quotient closed form") {
  for (long s = 1; s <= 6; ++s) {
    CHECK(f1_constant(s).exact ==
          f1_exact_periodic(ContinuedFraction(0, {}, {s})).exact);
  }
  CHECK(f1_constant(1).exact == QuadNum::parse("(5+sqrt(5))/10"));
  CHECK(f1_constant(2).exact == QuadNum(1) / QuadNum::parse("4-2*sqrt(2)"));
  CHECK(num(f1_constant(3).exact) == doctest::Approx(0.916025147168922).epsilon(1e-14));
}
