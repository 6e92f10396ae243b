#include "kron/covering.hpp"

#include <algorithm>

#include "kron/error.hpp"

namespace kron {
namespace {

CoveringValue make(QuadNum raw, CoveringKind kind) {
  CoveringValue out;
  out.raw = raw;
  out.kind = kind;
  out.clamped = raw > QuadNum(1);
  out.exact = out.clamped ? QuadNum(1) : std::move(raw);
  return out;
}

QuadNum power(const QuadNum& x, long e) {
  QuadNum out(1);
  for (long i = 0; i < e; ++i) out *= x;
  return out;
}

QuadNum metallic(long s) {
  if (s < 1) fail(ErrorCode::invalid_argument, "s must be >= 1");
  return (QuadNum(s) + QuadNum::sqrt(Integer(s * s + 4))) / QuadNum(2);
}

}  // namespace

const char* to_string(CoveringKind kind) {
  switch (kind) {
    case CoveringKind::limit:
      return "limit";
    case CoveringKind::approximant:
      return "approximant";
    case CoveringKind::lower_bound:
      return "lower_bound";
    case CoveringKind::paper_display_diagnostic:
      return "paper_display_diagnostic";
  }
  return "unknown";
}

CoveringValue f1_approx(const ContinuedFraction& cf, long n) {
  if (n < 0) fail(ErrorCode::invalid_argument, "index n must be >= 0");
  ConvergentTable t(cf.fractional(), n + 1);
  return make(QuadNum(t.q(n + 1)) * t.theta(n), CoveringKind::approximant);
}

CoveringValue f1_exact_periodic(const ContinuedFraction& cf) {
  const std::size_t L = cf.period().size();
  const std::size_t pre = cf.preperiod().size();
  std::optional<QuadNum> best;
  for (std::size_t r = 0; r < L; ++r) {
    // an index m deep enough that a_{m-L+1} .. a_{m+L} are all periodic
    const std::size_t m = pre + L + r;
    std::vector<Quotient> ahead, behind;
    for (std::size_t i = 0; i < L; ++i) {
      ahead.push_back(cf.at(m + 1 + i));
      behind.push_back(cf.at(m - i));
    }
    QuadNum forward = purely_periodic_value(ahead);
    QuadNum backward = purely_periodic_value(behind, forward.d());
    QuadNum t = forward.reciprocal();
    QuadNum v = backward.reciprocal();
    QuadNum value = (QuadNum(1) + t * v).reciprocal();
    if (!best || value > *best) best = value;
  }
  return make(*best, CoveringKind::limit);
}

CoveringValue f2_exact(const ContinuedFraction& cf) {
  const auto& p = cf.period();
  const bool all_one = std::all_of(p.begin(), p.end(), [](Quotient a) { return a == 1; });
  const bool none_one = std::none_of(p.begin(), p.end(), [](Quotient a) { return a == 1; });
  if (all_one) return make(QuadNum::parse("(5+2*sqrt(5))/10"), CoveringKind::limit);
  if (none_one) return f1_exact_periodic(cf);
  fail(ErrorCode::not_covered,
       "F_2 is only known when the tail is all ones or has no ones; period of " +
           cf.to_string() + " mixes both");
}

CoveringValue fk_bound_eval(const ContinuedFraction& cf, long k_star, long n) {
  if (k_star < 1) fail(ErrorCode::invalid_argument, "k* must be >= 1");
  if (n < 1) fail(ErrorCode::invalid_argument, "index n must be >= 1");
  ConvergentTable t(cf.fractional(), n + 1);
  QuadNum fl(Integer(t.q(n + 1) / k_star));
  QuadNum raw = QuadNum(k_star - 1) * fl * t.theta(n) +
                fl * (t.theta(n) + t.theta(n + 1));
  return make(std::move(raw), CoveringKind::paper_display_diagnostic);
}

Eq2Result eq2_bound(long s, long j) {
  if (j < 1) fail(ErrorCode::invalid_argument, "j must be >= 1");
  const QuadNum a = metallic(s);
  const QuadNum aj = power(a, j);
  const QuadNum aj1 = aj * a;
  const QuadNum top = QuadNum(aj1.floor()) * QuadNum(a.floor()) + QuadNum(aj.floor());
  Eq2Result out;
  out.alpha = a;
  out.bracket = top / (aj1 * a);
  out.threshold = power(a, j - 1) * (a + QuadNum(1));
  const CoveringValue f1 = f1_exact_periodic(ContinuedFraction(0, {}, {s}));
  out.value = make(f1.exact * out.bracket, CoveringKind::lower_bound);
  return out;
}

QuadNum eq2_bracket_limit(long s) {
  const QuadNum a = metallic(s);
  return QuadNum(s) / a + (a * a).reciprocal();
}

CoveringValue f1_constant(long s) {
  const QuadNum a = metallic(s);
  const QuadNum sq = a * a;
  return make(sq / (QuadNum(1) + sq), CoveringKind::limit);
}

}  // namespace kron
