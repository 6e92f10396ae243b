#include <random>

#include "doctest.h"
#include "kron/error.hpp"
#include "kron/rokhlin.hpp"

using namespace kron;

namespace {

ContinuedFraction cf(const char* text) { return parse_alpha(text).cf; }

double num(const QuadNum& x) { return x.to_double(); }

// First return time of x to [0, eps) under x -> x + alpha, by plain iteration.
std::int64_t return_time(const QuadNum& alpha, const QuadNum& eps, QuadNum x) {
  for (std::int64_t i = 1;; ++i) {
    x = (x + alpha).frac();
    if (x < eps) return i;
  }
}

const LevelSet* level_at(const RokhlinLevels& lv, std::int64_t index) {
  for (const auto& l : lv.levels) {
    if (l.index == index) return &l;
  }
  return nullptr;
}

}  // namespace

TEST_CASE("locating eps'") {
  ContinuedFraction s = cf("[0;(2)]");
  ConvergentTable t(s, 6);
  CHECK(locate_eps(s, 1, QuadNum::rational(1, 5)) == 2);
  CHECK(locate_eps(s, 1, t.theta(0)) == 1);
  CHECK(locate_eps(s, 1, t.theta(1) + QuadNum::rational(1, 1000000)) == 2);
  CHECK(locate_k(s, QuadNum::rational(1, 5)) == 1);
  // the lower end theta_k is open, theta_{k-1} closed
  CHECK(locate_k(s, t.theta(1)) == 2);
  CHECK_THROWS_AS(locate_eps(s, 1, t.theta(1)), Error);
  CHECK_THROWS_AS(locate_k(s, QuadNum::rational(1, 2)), Error);
  ContinuedFraction c3 = cf("[0;(3)]");
  ConvergentTable t3(c3, 6);
  CHECK(locate_eps(c3, 2, t3.theta(2) + QuadNum::rational(1, 10000000)) == 3);
}

TEST_CASE("levels for [0;(2)] and eps' = 1/5") {
  ContinuedFraction s = cf("[0;(2)]");
  const QuadNum alpha = QuadNum::sqrt(2) - 1;
  const QuadNum eps = QuadNum::rational(1, 5);
  RokhlinLevels lv = levels(s, eps);
  CHECK(lv.k == 1);
  CHECK(lv.j == 2);
  CHECK_FALSE(lv.mirrored);
  CHECK(lv.l0 == 2);
  CHECK(lv.l1 == 5);
  CHECK(lv.l2 == 7);
  const QuadNum n2 = torus_norm(QuadNum(2) * alpha);
  const QuadNum cut = eps - (QuadNum(5) * alpha).frac();
  CHECK(level_at(lv, 2)->interval == TorusInterval{n2, eps - n2});
  CHECK(level_at(lv, 5)->interval == TorusInterval{QuadNum(0), cut});
  CHECK(level_at(lv, 7)->interval == TorusInterval{cut, n2 - cut});
  CHECK(num(n2) == doctest::Approx(0.171573).epsilon(1e-6));
  CHECK(num(cut) == doctest::Approx(0.128932).epsilon(1e-6));
  QuadNum sum;
  for (const auto& l : lv.levels) sum += l.interval->length;
  CHECK(sum == eps);
}

TEST_CASE("right endpoint of an I_j leaves two levels") {
  ContinuedFraction s = cf("[0;(2)]");
  const QuadNum eps = torus_norm(QuadNum(3) * (QuadNum::sqrt(2) - 1));
  RokhlinLevels lv = levels(s, eps);
  CHECK(lv.j == 2);
  int nonempty = 0;
  for (const auto& l : lv.levels) nonempty += l.interval ? 1 : 0;
  CHECK(nonempty == 2);
  // with eps' in I_{j-1} closed on the right, the vanishing level is A_{l2}
  CHECK_FALSE(level_at(lv, lv.l2)->interval);
  CHECK(level_at(lv, lv.l1)->interval);
}

TEST_CASE("single interval base at eps' = theta_k, n = q_{k+1}") {
  ContinuedFraction g = cf("[0;(1)]");
  ConvergentTable t(g, 10);
  const long k = 6;
  RokhlinTower tower = assemble_base(g, t.theta(k), t.q(k + 1).get_si());
  CHECK(tower.base.size() == 1);
  CHECK(tower.covered == QuadNum(t.q(k + 1)) * t.theta(k));
  CHECK(tower.certificate.disjoint);
  // the located index is k+1: only l0 = q_{k+1}, l1 = q_{k+1} + q_k survive
  CHECK(tower.levels.k == k + 1);
  CHECK(level_at(tower.levels, t.q(k + 1).get_si())->interval);
  CHECK(level_at(tower.levels, Integer(t.q(k + 1) + t.q(k)).get_si())->interval);
  CHECK_FALSE(level_at(tower.levels, tower.levels.l2)->interval);
  CHECK(interval_count(g, k, 0, t.q(k + 1).get_si()).actual == 1);
  CHECK(interval_count(g, k, 0, t.q(k + 1).get_si()).predicted == 1);
}

TEST_CASE("closed form area") {
  ContinuedFraction g = cf("[0;(1)]");
  CHECK(num(rokhlin_area(g, 3, 2)) == doctest::Approx(0.729490).epsilon(1e-6));
  ContinuedFraction s = cf("[0;(2)]");
  ConvergentTable t(s, 12);
  QuadNum a2 = rokhlin_area(s, 1, 2);
  CHECK(a2 == QuadNum(25) * t.theta(3) + QuadNum(10) * t.theta(4));
  CHECK(num(a2) == doctest::Approx(0.857864).epsilon(1e-6));
  CHECK(rokhlin_area(s, 1, 0) == QuadNum(t.q(2)) * t.theta(1));
  QuadNum prev;
  for (long j : {2L, 4L, 6L, 8L}) {
    QuadNum v = rokhlin_area(s, 1, j);
    CHECK(v > prev);
    prev = v;
  }
  CHECK(prev > QuadNum::rational(99, 100));
  CHECK(prev < QuadNum(1));
}

TEST_CASE("assembled coverage against the closed form") {
  ContinuedFraction s = cf("[0;(2)]");
  ConvergentTable t(s, 12);
  RokhlinTower tower = assemble_base(s, t.theta(3), 5);
  CHECK(tower.certificate.disjoint);
  CHECK(tower.base.size() > 1);
  // A_29 (length theta_3 - theta_4) is copied 5 times and A_41 (length
  // theta_4) 8 times; the closed form counts 5 and 2 copies of theta_3, theta_4.
  CHECK(tower.covered == QuadNum(25) * t.theta(3) + QuadNum(15) * t.theta(4));
  CHECK(rokhlin_assembled_area(s, 1, 2) - rokhlin_area(s, 1, 2) ==
        QuadNum(5) * t.theta(4));
  for (long j = 0; j <= 6; ++j) {
    CHECK(rokhlin_assembled_area(s, 1, j) >= rokhlin_area(s, 1, j));
  }
  IntervalCount c = interval_count(s, 1, 2, 5);
  CHECK(c.predicted == 8);
  CHECK(c.actual == 8);
}

TEST_CASE("height one tower covers everything") {
  // Kac: sum of l |A_l| over the return-time partition is 1
  for (const char* text : {"[0;(2)]", "[0;(1)]", "[0;(1,3)]"}) {
    ContinuedFraction c = cf(text);
    RokhlinTower tower = assemble_base(c, QuadNum::rational(1, 7), 1);
    CHECK(tower.covered == QuadNum(1));
    CHECK(tower.certificate.disjoint);
  }
}

TEST_CASE("degenerate heights") {
  ContinuedFraction s = cf("[0;(2)]");
  CHECK_THROWS_AS(assemble_base(s, QuadNum::rational(1, 5), 100), Error);
  CHECK_THROWS_AS(assemble_base(s, QuadNum::rational(1, 5), 0), Error);
}

TEST_CASE("random instances against first return times") {
  std::mt19937_64 rng(4242);
  const char* pool[] = {"[0;(1)]", "[0;(2)]",   "[0;(3)]",   "[0;(1,2)]",
                        "[0;(2,1,3)]", "[0;(4,1)]", "[0;2,(1,5)]", "[0;(7)]"};
  std::uniform_int_distribution<int> pick(0, 7);
  std::uniform_int_distribution<long> kk(1, 5);
  std::uniform_int_distribution<long> num_d(0, 997);
  int mirrored = 0, plain = 0;
  for (int trial = 0; trial < 200; ++trial) {
    ContinuedFraction c = cf(pool[pick(rng)]);
    const long k = kk(rng);
    ConvergentTable t(c, k + 2);
    // eps' = theta_k + u (theta_{k-1} - theta_k), u in (0, 1]
    const long u = num_d(rng) + 1;
    QuadNum eps = t.theta(k) +
                  QuadNum::rational(u, 998) * (t.theta(k - 1) - t.theta(k));
    RokhlinLevels lv = levels(c, eps);
    CHECK(lv.k == k);
    (lv.mirrored ? mirrored : plain) += 1;

    // partition of [0, eps)
    std::vector<TorusInterval> parts;
    for (const auto& l : lv.levels) {
      if (l.interval) parts.push_back(*l.interval);
    }
    std::sort(parts.begin(), parts.end(),
              [](const auto& a, const auto& b) { return a.left < b.left; });
    QuadNum at;
    for (const auto& p : parts) {
      CHECK(p.left == at);
      at = p.left + p.length;
    }
    CHECK(at == eps);

    // sample points land in the level of their own return time
    for (int s = 0; s < 5; ++s) {
      QuadNum x = eps * QuadNum::rational(2 * s + 1, 10);
      std::int64_t r = return_time(t.alpha(), eps, x);
      const LevelSet* l = level_at(lv, r);
      REQUIRE(l != nullptr);
      REQUIRE(l->interval);
      CHECK(x >= l->interval->left);
      CHECK(x < l->interval->left + l->interval->length);
    }

    std::uniform_int_distribution<std::int64_t> hn(1, lv.l1);
    const std::int64_t n = hn(rng);
    RokhlinTower tower = assemble_base(c, eps, n);
    CHECK(tower.certificate.disjoint);
    CHECK(tower.certificate.covered == tower.covered);
    CHECK(tower.covered == QuadNum(Integer(static_cast<long>(n))) *
                               tower.base.total_length());
  }
  CHECK(mirrored > 0);
  CHECK(plain > 0);
}

TEST_CASE("two-term identity") {
  for (const char* text : {"[0;(1)]", "[0;(2)]", "[0;(1,2)]", "[0;(3)]"}) {
    ConvergentTable t(cf(text), 40);
    for (long m = 0; m < 39; ++m) {
      CHECK(QuadNum(t.q(m + 1)) * t.theta(m) + QuadNum(t.q(m)) * t.theta(m + 1) ==
            QuadNum(1));
    }
  }
}
