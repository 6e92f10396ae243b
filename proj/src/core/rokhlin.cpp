#include "kron/rokhlin.hpp"

#include <algorithm>

#include "kron/error.hpp"

namespace kron {
namespace {

using Span = std::pair<QuadNum, QuadNum>;  // [first, second)

ConvergentTable table_below(const ContinuedFraction& frac,
                            const QuadNum& eps) {
  long n = 8;
  for (;;) {
    ConvergentTable t(frac, n);
    if (t.theta(n) < eps) return t;
    n *= 2;
  }
}

std::optional<TorusInterval> arc(const QuadNum& left, const QuadNum& right) {
  if (right < left) {
    fail(ErrorCode::consistency, "level display has reversed endpoints " +
                                     left.to_string() + " > " +
                                     right.to_string());
  }
  if (left == right) return std::nullopt;
  return TorusInterval{left, right - left};
}

std::string show(const std::optional<TorusInterval>& iv) {
  if (!iv) return "empty";
  return "[" + iv->left.to_string() + ", " +
         (iv->left + iv->length).to_string() + ")";
}

// Return-time partition of [0, eps) by direct set arithmetic.
std::vector<std::pair<std::int64_t, std::vector<Span>>> first_principles(
    const QuadNum& alpha, const QuadNum& eps, std::int64_t cap) {
  std::vector<Span> remaining{{QuadNum(0), eps}};
  std::vector<std::pair<std::int64_t, std::vector<Span>>> out;
  const QuadNum one(1);
  QuadNum s;
  for (std::int64_t i = 1; !remaining.empty(); ++i) {
    if (i > cap) {
      fail(ErrorCode::consistency,
           "return times exceed " + std::to_string(cap));
    }
    s += alpha;
    if (s >= one) s -= one;
    Span piece;
    if (s < eps) {
      piece = {QuadNum(0), eps - s};
    } else if (s > one - eps) {
      piece = {one - s, eps};
    } else {
      continue;
    }
    std::vector<Span> hit, rest;
    for (const Span& r : remaining) {
      QuadNum lo = std::max(r.first, piece.first);
      QuadNum hi = std::min(r.second, piece.second);
      if (lo < hi) {
        hit.emplace_back(lo, hi);
        if (r.first < lo) rest.emplace_back(r.first, lo);
        if (hi < r.second) rest.emplace_back(hi, r.second);
      } else {
        rest.push_back(r);
      }
    }
    if (hit.empty()) continue;
    std::sort(hit.begin(), hit.end());
    std::vector<Span> fused;
    for (Span& h : hit) {
      if (!fused.empty() && fused.back().second == h.first) {
        fused.back().second = h.second;
      } else {
        fused.push_back(std::move(h));
      }
    }
    out.emplace_back(i, std::move(fused));
    remaining = std::move(rest);
  }
  return out;
}

}  // namespace

long locate_k(const ContinuedFraction& cf, const QuadNum& eps_prime) {
  const ContinuedFraction frac = cf.fractional();
  if (eps_prime.sign() <= 0) {
    fail(ErrorCode::out_of_range, "eps' must be positive");
  }
  ConvergentTable t = table_below(frac, eps_prime);
  if (eps_prime > t.theta(0)) {
    fail(ErrorCode::out_of_range, "eps' = " + eps_prime.to_decimal(8) +
                                      " exceeds theta_0 = " +
                                      t.theta(0).to_decimal(8));
  }
  long k = 1;
  while (!(t.theta(k) < eps_prime)) ++k;
  return k;
}

long locate_eps(const ContinuedFraction& cf, long k, const QuadNum& eps_prime) {
  if (k < 1) fail(ErrorCode::out_of_range, "k must be >= 1");
  ConvergentTable t(cf.fractional(), k + 1);
  if (!(t.theta(k) < eps_prime && eps_prime <= t.theta(k - 1))) {
    fail(ErrorCode::out_of_range,
         "eps' = " + eps_prime.to_decimal(8) + " outside (theta_" +
             std::to_string(k) + ", theta_" + std::to_string(k - 1) + "]");
  }
  const Quotient a = t.a(k + 1);
  for (Quotient i = 0; i + 1 < a; ++i) {
    Integer m = Integer(i + 1) * t.q(k) + t.q(k - 1);
    if (eps_prime > torus_norm(QuadNum(m) * t.alpha())) return i + 1;
  }
  return a;
}

RokhlinLevels levels(const ContinuedFraction& cf, const QuadNum& eps_prime) {
  const ContinuedFraction frac = cf.fractional();
  RokhlinLevels out;
  out.eps_prime = eps_prime;
  out.k = locate_k(frac, eps_prime);
  out.j = locate_eps(frac, out.k, eps_prime);
  ConvergentTable t(frac, out.k + 1);
  const long k = out.k;
  const QuadNum& alpha = t.alpha();
  const Integer qk = t.q(k), qk1 = t.q(k - 1);
  out.l0 = qk.get_si();
  out.l1 = Integer(Integer(out.j) * qk + qk1).get_si();
  out.l2 = out.l1 + out.l0;
  out.mirrored = (QuadNum(qk) * alpha).frac() < QuadNum::rational(1, 2);

  // closed form; the unmirrored branch reads {q_k alpha} as ||q_k alpha||
  const QuadNum& th = t.theta(k);
  const QuadNum s1 = (QuadNum(Integer(out.l1)) * alpha).frac();
  std::optional<TorusInterval> shown[3];
  if (!out.mirrored) {
    shown[0] = arc(th, eps_prime);
    shown[1] = arc(QuadNum(0), eps_prime - s1);
    shown[2] = arc(eps_prime - s1, th);
  } else {
    const QuadNum r1 = QuadNum(1) - s1;
    shown[0] = arc(QuadNum(0), eps_prime - th);
    shown[1] = arc(r1, eps_prime);
    shown[2] = arc(eps_prime - th, r1);
  }

  const std::int64_t index[3] = {out.l0, out.l1, out.l2};
  std::optional<TorusInterval> found[3];
  for (auto& [i, spans] : first_principles(alpha, eps_prime, 2 * out.l2 + 2)) {
    const std::int64_t* slot = std::find(index, index + 3, i);
    if (slot == index + 3) {
      fail(ErrorCode::consistency,
           "nonempty level A_" + std::to_string(i) + " outside {l0, l1, l2}");
    }
    if (spans.size() != 1) {
      fail(ErrorCode::consistency,
           "level A_" + std::to_string(i) + " is not an interval");
    }
    found[slot - index] =
        TorusInterval{spans[0].first, spans[0].second - spans[0].first};
  }
  for (int r = 0; r < 3; ++r) {
    if (found[r] != shown[r]) {
      fail(ErrorCode::consistency,
           "A_" + std::to_string(index[r]) + ": computed " + show(found[r]) +
               ", closed form " + show(shown[r]));
    }
    out.levels.push_back({index[r], found[r]});
  }
  return out;
}

RokhlinTower assemble_base(const ContinuedFraction& cf,
                           const QuadNum& eps_prime, std::int64_t n) {
  if (n < 1) fail(ErrorCode::invalid_argument, "tower height must be >= 1");
  const ContinuedFraction frac = cf.fractional();
  RokhlinLevels lv = levels(frac, eps_prime);
  const QuadNum alpha = ConvergentTable(frac, 1).alpha();
  const QuadNum jump = (QuadNum(Integer(static_cast<long>(n))) * alpha).frac();
  const QuadNum one(1);

  QuadNum covered;
  std::vector<TorusInterval> arcs;
  for (const LevelSet& level : lv.levels) {
    if (!level.interval) continue;
    const std::int64_t copies = level.index / n;
    covered += QuadNum(Integer(static_cast<long>(copies * n))) *
               level.interval->length;
    QuadNum left = level.interval->left;
    for (std::int64_t i = 0; i < copies; ++i) {
      arcs.push_back({left, level.interval->length});
      left += jump;
      if (left >= one) left -= one;
    }
  }
  if (arcs.empty()) {
    fail(ErrorCode::out_of_range,
         "no level index reaches the height " + std::to_string(n) +
             "; the base is empty");
  }
  std::optional<Base> base;
  try {
    base = Base(std::move(arcs)).merged();
  } catch (const Error& e) {
    fail(ErrorCode::consistency, std::string("assembled base: ") + e.what());
  }
  TowerReport report = tower_verify(*base, alpha, n);
  if (!report.disjoint) {
    fail(ErrorCode::consistency, "assembled tower is not disjoint");
  }
  if (report.covered != covered) {
    fail(ErrorCode::consistency, "assembled tower covers " +
                                     report.covered.to_string() +
                                     ", level count gives " +
                                     covered.to_string());
  }
  return RokhlinTower{std::move(*base), n,       eps_prime, std::move(lv),
                      std::move(covered), std::move(report)};
}

QuadNum rokhlin_area(const ContinuedFraction& cf, long k, long j) {
  if (k < 1) fail(ErrorCode::invalid_argument, "k must be >= 1");
  if (j < 0) fail(ErrorCode::invalid_argument, "j must be >= 0");
  ConvergentTable t(cf.fractional(), k + j + 1);
  const Integer& n = t.q(k + 1);
  const Integer a = n * (t.q(k + j + 1) / n);
  const Integer b = n * (t.q(k + j) / n);
  return QuadNum(a) * t.theta(k + j) + QuadNum(b) * t.theta(k + j + 1);
}

QuadNum rokhlin_assembled_area(const ContinuedFraction& cf, long k, long j) {
  if (k < 1) fail(ErrorCode::invalid_argument, "k must be >= 1");
  if (j < 0) fail(ErrorCode::invalid_argument, "j must be >= 0");
  ConvergentTable t(cf.fractional(), k + j + 1);
  return assemble_base(cf, t.theta(k + j), t.q(k + 1).get_si()).covered;
}

IntervalCount interval_count(const ContinuedFraction& cf, long k, long j,
                             std::int64_t n) {
  if (n < 1) fail(ErrorCode::invalid_argument, "tower height must be >= 1");
  ConvergentTable t(cf.fractional(), k + j + 1);
  IntervalCount out;
  out.predicted =
      Integer((t.q(k + j + 1) + t.q(k + j)) / Integer(static_cast<long>(n))).get_si();
  out.actual = static_cast<std::int64_t>(
      assemble_base(cf, t.theta(k + j), n).base.size());
  return out;
}

}  // namespace kron
