// Acceptance run: one PASS/FAIL line per criterion, nonzero exit if any fails.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gmpxx.h>

#include "kron/covering.hpp"
#include "kron/rokhlin.hpp"
#include "kron/search.hpp"
#include "kron/three_gap.hpp"
#include "kron/towers.hpp"

using namespace kron;

namespace {

const char* const test_alphas[] = {"[0;(1)]", "[0;(2)]", "[0;(1,2)]", "[0;(3)]"};

ContinuedFraction cf(const char* text) { return parse_alpha(text).cf; }

// Collects failures for one criterion; the first few are printed.
struct Check {
  std::vector<std::string> failures;
  std::string detail;
  void expect(bool ok, const std::string& what) {
    if (!ok) failures.push_back(what);
  }
};

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) {
  return std::chrono::duration<double>(Clock::now() - t0).count();
}

bool report(int id, const char* title, const std::function<void(Check&)>& body) {
  Check c;
  const auto t0 = Clock::now();
  try {
    body(c);
  } catch (const std::exception& e) {
    c.failures.push_back(std::string("exception: ") + e.what());
  }
  const bool ok = c.failures.empty();
  std::printf("%s criterion %d: %s (%.2f s)%s%s\n", ok ? "PASS" : "FAIL", id,
              title, seconds_since(t0), c.detail.empty() ? "" : " ; ",
              c.detail.c_str());
  for (std::size_t i = 0; i < c.failures.size() && i < 5; ++i) {
    std::printf("    %s\n", c.failures[i].c_str());
  }
  if (c.failures.size() > 5) {
    std::printf("    ... %zu more\n", c.failures.size() - 5);
  }
  std::fflush(stdout);
  return ok;
}

std::string dec(const QuadNum& x, int digits = 10) { return x.to_decimal(digits); }

// mpf evaluation of (p + q sqrt d) / r at 512 bits, for cross-checks that do
// not go through QuadNum.
mpf_class high(const QuadNum& x) {
  mpf_class s(0, 512);
  mpf_class d(x.d(), 512);
  mpf_sqrt(s.get_mpf_t(), d.get_mpf_t());
  mpf_class v(x.p(), 512);
  v += mpf_class(x.q(), 512) * s;
  v /= mpf_class(x.r(), 512);
  return v;
}

void criterion1(Check& c) {
  const auto t0 = Clock::now();
  std::int64_t spectra = 0;
  for (const char* text : test_alphas) {
    const QuadNum alpha = cf(text).value().frac();
    for (std::int64_t N = 1; N <= 5000; ++N) {
      GapSpectrum g = gaps_direct(alpha, N);
      ++spectra;
      const auto& e = g.entries;
      c.expect(!e.empty() && e.size() <= 3,
               std::string(text) + " N=" + std::to_string(N) + ": " +
                   std::to_string(e.size()) + " lengths");
      if (e.size() == 3) {
        std::vector<QuadNum> len{e[0].length, e[1].length, e[2].length};
        std::sort(len.begin(), len.end());
        c.expect(len[2] == len[0] + len[1],
                 std::string(text) + " N=" + std::to_string(N) + ": L3 != L1 + L2");
      }
      c.expect(g.total_length() == QuadNum(1),
               std::string(text) + " N=" + std::to_string(N) + ": total length");
    }
  }
  const double secs = seconds_since(t0);
  c.expect(secs <= 60.0, "runtime " + std::to_string(secs) + " s exceeds 60 s");
  c.detail = std::to_string(spectra) + " spectra";
}

void criterion2(Check& c) {
  std::int64_t compared = 0;
  for (const char* text : test_alphas) {
    const ContinuedFraction f = cf(text);
    const QuadNum alpha = f.value().frac();
    for (std::int64_t N = 1; N <= 2000; ++N) {
      c.expect(gaps_formula(f, N) == gaps_direct(alpha, N),
               std::string(text) + " N=" + std::to_string(N));
      ++compared;
    }
  }
  c.detail = std::to_string(compared) + " pairs";
}

void criterion3(Check& c) {
  for (const char* text : test_alphas) {
    ConvergentTable t(cf(text), 62);
    for (long n = 0; n <= 60; ++n) {
      c.expect(QuadNum(t.q(n + 1)) * t.theta(n) + QuadNum(t.q(n)) * t.theta(n + 1) ==
                   QuadNum(1),
               std::string(text) + " two-term identity at n=" + std::to_string(n));
      const Integer det = t.p(n + 1) * t.q(n) - t.p(n) * t.q(n + 1);
      c.expect(det == (n % 2 == 0 ? 1 : -1),
               std::string(text) + " determinant at n=" + std::to_string(n));
    }
  }
  c.detail = "n = 0..60";
}

void criterion4(Check& c) {
  const CoveringValue g = f1_exact_periodic(cf("[0;(1)]"));
  const CoveringValue s = f1_exact_periodic(cf("[0;(2)]"));
  c.expect(g.exact == QuadNum::parse("(5+sqrt(5))/10"), "golden: " + g.exact.to_string());
  c.expect(s.exact == QuadNum(1) / QuadNum::parse("4-2*sqrt(2)"),
           "silver: " + s.exact.to_string());
  const QuadNum ga = f1_approx(cf("[0;(1)]"), 40).exact;
  const QuadNum sa = f1_approx(cf("[0;(2)]"), 40).exact;
  const QuadNum tol = QuadNum::rational(1, 1'000'000'000);
  c.expect(abs(ga - g.exact) < tol, "golden n=40: " + dec(ga));
  c.expect(abs(sa - s.exact) < tol, "silver n=40: " + dec(sa));
  c.detail = "F1 = " + dec(g.exact, 8) + ", " + dec(s.exact, 8);
}

void criterion5(Check& c) {
  const ContinuedFraction g = cf("[0;(1)]");
  const CoveringValue f2 = f2_exact(g);
  c.expect(f2.exact == QuadNum::parse("(5+2*sqrt(5))/10"), "F2: " + f2.exact.to_string());

  const auto t0 = Clock::now();
  SearchSpace space{g.value(), 2, 72, 200};
  SearchResult r = best_coverage(space);
  const double secs = seconds_since(t0);
  const QuadNum expected = QuadNum(72) * torus_norm(QuadNum(34) * g.value());
  c.expect(!r.partial, "search stopped at the budget");
  c.expect(r.value == expected, "search value " + dec(r.value));
  c.expect(abs(r.value - f2.exact) <= QuadNum::rational(5, 10'000),
           "distance to the limit " + dec(abs(r.value - f2.exact)));
  c.expect(r.certificate.disjoint && r.certificate.covered == r.value,
           "certificate does not match");
  const TowerReport again = tower_verify(r.best, g.value(), 72);
  c.expect(again.disjoint && again.covered == r.value, "re-verification failed");
  c.expect(secs <= 300.0, "runtime " + std::to_string(secs) + " s");
  std::ostringstream os;
  os << "value " << dec(r.value) << ", starts (" << r.starts[0] << "," << r.starts[1]
     << "), " << r.evaluated << " candidates";
  c.detail = os.str();
}

void criterion6(Check& c) {
  const ContinuedFraction s = cf("[0;(2)]");
  ConvergentTable t(s, 5);
  c.expect(t.q(2) == 5 && t.q(3) == 12, "q_2, q_3");
  const Lemma22Result r = lemma22_max(s, 2, 6);
  c.expect(r.bound == QuadNum(2) * t.theta(2), "bound " + r.bound.to_string());
  c.expect(r.witness.has_value(), "no witness");
  if (!r.witness) return;
  c.expect(r.witness->total_length() == QuadNum(2) * t.theta(2), "witness length");
  const TowerReport at6 = tower_verify(*r.witness, t.alpha(), 6);
  const TowerReport at7 = tower_verify(*r.witness, t.alpha(), 7);
  c.expect(at6.disjoint, "witness fails at N = 6");
  c.expect(!at7.disjoint, "witness still disjoint at N = 7");
  const Base built = two_interval_construction(s, 2, 6);
  c.expect(tower_verify(built, t.alpha(), 6).disjoint, "construction fails at N = 6");
  c.expect(!tower_verify(built, t.alpha(), 7).disjoint, "construction holds at N = 7");
  c.detail = "witness " + r.witness->to_string();
}

void criterion7(Check& c) {
  std::mt19937_64 rng(20261018);
  const char* pool[] = {"[0;(1)]",     "[0;(2)]",   "[0;(3)]",     "[0;(1,2)]",
                        "[0;(2,1,3)]", "[0;(4,1)]", "[0;2,(1,5)]", "[0;(7)]"};
  std::uniform_int_distribution<int> pick(0, 7);
  std::uniform_int_distribution<long> kk(1, 4);
  std::uniform_int_distribution<long> frac(1, 9973);
  int mirrored = 0;
  for (int trial = 0; trial < 200; ++trial) {
    const char* text = pool[pick(rng)];
    const ContinuedFraction f = cf(text);
    const long k = kk(rng);
    ConvergentTable t(f, k + 2);
    const QuadNum eps =
        t.theta(k) + QuadNum::rational(frac(rng), 9973) * (t.theta(k - 1) - t.theta(k));
    const std::string tag = std::string(text) + " eps'=" + dec(eps);
    const RokhlinLevels lv = levels(f, eps);
    mirrored += lv.mirrored;
    std::vector<TorusInterval> parts;
    for (const auto& l : lv.levels) {
      if (l.interval) parts.push_back(*l.interval);
    }
    std::sort(parts.begin(), parts.end(),
              [](const auto& a, const auto& b) { return a.left < b.left; });
    QuadNum at;
    for (const auto& p : parts) {
      c.expect(p.left == at, tag + ": gap or overlap in the levels");
      at = p.left + p.length;
    }
    c.expect(at == eps, tag + ": levels do not reach eps'");
    std::uniform_int_distribution<std::int64_t> hn(1, lv.l2);
    const std::int64_t n = hn(rng);
    const RokhlinTower tower = assemble_base(f, eps, n);
    const TowerReport check = tower_verify(tower.base, t.alpha(), n);
    c.expect(check.disjoint && check.covered == tower.covered,
             tag + " n=" + std::to_string(n) + ": tower_verify");
  }
  // eps' = theta_k with n = q_{k+1}
  int single = 0;
  for (const char* text : test_alphas) {
    const ContinuedFraction f = cf(text);
    ConvergentTable t(f, 14);
    for (long k = 1; k <= 7; ++k) {
      const std::int64_t n = t.q(k + 1).get_si();
      const RokhlinTower tower = assemble_base(f, t.theta(k), n);
      const bool ok = tower.base.size() == 1 &&
                      tower.covered == QuadNum(t.q(k + 1)) * t.theta(k) &&
                      tower.certificate.disjoint;
      c.expect(ok, std::string(text) + " k=" + std::to_string(k) +
                       ": not a single interval of coverage q_{k+1} theta_k");
      single += ok;
    }
  }
  c.detail = "200 random (" + std::to_string(mirrored) + " mirrored), " +
             std::to_string(single) + "/28 single-interval cases";
}

void criterion8(Check& c) {
  const ContinuedFraction s = cf("[0;(2)]");
  QuadNum prev;
  std::string values;
  for (long j : {2, 4, 6, 8}) {
    const QuadNum a = rokhlin_area(s, 1, j);
    c.expect(a > prev, "not increasing at j=" + std::to_string(j));
    prev = a;
    values += (values.empty() ? "" : ", ") + dec(a, 8);
  }
  const QuadNum a2 = rokhlin_area(s, 1, 2);
  c.expect(abs(a2 - QuadNum::rational(857864, 1'000'000)) < QuadNum::rational(1, 1'000'000),
           "j=2 area " + dec(a2));
  c.expect(rokhlin_area(s, 1, 8) > QuadNum::rational(99, 100), "j=8 area below 0.99");
  const QuadNum built = rokhlin_assembled_area(s, 1, 2);
  c.expect(built == a2, "assemble_base covers " + built.to_string() + " = " + dec(built) +
                            ", closed form " + a2.to_string() + " = " + dec(a2) +
                            ", difference " + (built - a2).to_string());
  c.detail = "areas " + values;
}

void criterion9(Check& c) {
  struct Case {
    long s, j;
    double printed;
  };
  for (const Case& k : {Case{2, 3, 0.832610}, Case{1, 5, 0.697825}}) {
    const Eq2Result r = eq2_bound(k.s, k.j);
    // independent: a = (s + sqrt(s^2+4))/2, F1 = a^2/(1+a^2), bracket from floors
    mpf_class a(k.s * k.s + 4, 512);
    mpf_sqrt(a.get_mpf_t(), a.get_mpf_t());
    a = (a + k.s) / 2;
    auto power = [&](long e) {
      mpf_class x(1, 512);
      for (long i = 0; i < e; ++i) x *= a;
      return x;
    };
    auto fl = [](const mpf_class& x) {
      mpf_class y(0, 512);
      mpf_floor(y.get_mpf_t(), x.get_mpf_t());
      return y;
    };
    const mpf_class f1 = a * a / (1 + a * a);
    const mpf_class bracket =
        (fl(power(k.j + 1)) * fl(a) + fl(power(k.j))) / power(k.j + 2);
    const mpf_class oracle = f1 * bracket;
    const mpf_class diff = abs(high(r.value.exact) - oracle);
    c.expect(diff < 1e-6, "eq2(" + std::to_string(k.s) + "," + std::to_string(k.j) +
                              ") = " + dec(r.value.exact) + " vs oracle");
    c.expect(std::abs(r.value.exact.to_double() - k.printed) < 5e-6,
             "far from the printed value");
    c.detail += (c.detail.empty() ? "" : ", ") + std::string("eq2(") +
                std::to_string(k.s) + "," + std::to_string(k.j) + ") = " +
                dec(r.value.exact, 9);
  }
  for (long s = 1; s <= 6; ++s) {
    const QuadNum a = (QuadNum(s) + QuadNum::sqrt(s * s + 4)) / QuadNum(2);
    const QuadNum direct = QuadNum(s) / a + QuadNum(1) / (a * a);
    c.expect(direct == QuadNum(1) && eq2_bracket_limit(s) == QuadNum(1),
             "bracket limit at s=" + std::to_string(s));
  }
}

void criterion10(Check& c) {
  const ContinuedFraction s = cf("[0;(2)]");
  std::string detail;
  for (int k : {3, 2}) {
    ScanOptions opt;
    const ScanReport r = conjecture_scan(s, k, opt);
    int checked = 0;
    QuadNum extreme;
    bool first = true;
    for (const ScanRow& row : r.rows) {
      c.expect(!row.partial, "partial search at h=" + std::to_string(row.height));
      if (k == 3 && row.q_n >= 29) {
        c.expect(row.margin > QuadNum(0), "k=3 margin at h=" + std::to_string(row.height) +
                                              " is " + dec(row.margin));
        if (first || row.margin < extreme) extreme = row.margin;
        first = false;
        ++checked;
      }
      if (k == 2 && row.q_n >= 169) {
        c.expect(row.margin <= QuadNum::rational(1, 1000),
                 "k=2 margin at h=" + std::to_string(row.height) + " is " + dec(row.margin));
        if (first || row.margin > extreme) extreme = row.margin;
        first = false;
        ++checked;
      }
    }
    c.expect(checked > 0, "no scheduled heights for k=" + std::to_string(k));
    detail += (detail.empty() ? "" : "; ") + std::string("k=") + std::to_string(k) + ": " +
              std::to_string(checked) + " heights, " + (k == 3 ? "min " : "max ") +
              "margin " + dec(extreme, 6) + ", verdict " + to_string(r.verdict);
  }
  c.detail = detail;
}

}  // namespace

int main() {
  int failed = 0;
  failed += !report(1, "three-gap law for N <= 5000", criterion1);
  failed += !report(2, "formula equals direct sorting for N <= 2000", criterion2);
  failed += !report(3, "convergent identities for n <= 60", criterion3);
  failed += !report(4, "single-arc covering numbers", criterion4);
  failed += !report(5, "two-arc golden value and search", criterion5);
  failed += !report(6, "two-arc boundary at N = 6, 7", criterion6);
  failed += !report(7, "Rokhlin levels and assembled bases", criterion7);
  failed += !report(8, "Rokhlin areas approach 1", criterion8);
  failed += !report(9, "constant-quotient lower bound", criterion9);
  failed += !report(10, "k-arc margin scan", criterion10);
  std::printf("%d of 10 criteria passed\n", 10 - failed);
  return failed == 0 ? 0 : 1;
}
