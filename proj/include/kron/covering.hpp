#pragma once

#include <optional>
#include <string>

#include "kron/continued_fraction.hpp"
#include "kron/quad.hpp"

namespace kron {

enum class CoveringKind { limit, approximant, lower_bound, paper_display_diagnostic };

const char* to_string(CoveringKind kind);

struct CoveringValue {
  QuadNum exact;  // reported value (capped at 1 when clamped)
  QuadNum raw;    // value before any cap
  CoveringKind kind = CoveringKind::limit;
  bool clamped = false;

  std::string decimal(int digits = 15) const { return exact.to_decimal(digits); }
};

/// q_{n+1} theta_n, the n-th single-interval approximant of F_1.
CoveringValue f1_approx(const ContinuedFraction& cf, long n);

/// limsup of 1/(1 + t_m v_m) with t_m = [0; a_{m+1}, ...] and
/// v_m = [0; a_m, ..., a_1], as the max over residue classes of m modulo the
/// period of the exact class limits.
CoveringValue f1_exact_periodic(const ContinuedFraction& cf);

/// Two-interval covering number: (5 + 2 sqrt 5)/10 for tails of ones,
/// F_1 for tails without ones. Mixed tails raise not_covered.
CoveringValue f2_exact(const ContinuedFraction& cf);

/// (k-1) floor(q_{n+1}/k) theta_n + floor(q_{n+1}/k) (theta_n + theta_{n+1}),
/// evaluated as printed and capped at 1.
CoveringValue fk_bound_eval(const ContinuedFraction& cf, long k_star, long n);

struct Eq2Result {
  CoveringValue value;    // F_1 * bracket
  QuadNum bracket;        // (floor(a^{j+1}) floor(a) + floor(a^j)) / a^{j+2}
  QuadNum threshold;      // a^{j-1} (a + 1), the smallest admissible n
  QuadNum alpha;          // (s + sqrt(s^2 + 4)) / 2
};

/// Lower bound for F_n at the constant-quotient angle [s; (s)].
Eq2Result eq2_bound(long s, long j);

/// s/a + 1/a^2 for a = (s + sqrt(s^2+4))/2; equals 1 since a^2 = s a + 1.
QuadNum eq2_bracket_limit(long s);

/// a^2 / (1 + a^2) for a = (s + sqrt(s^2+4))/2.
CoveringValue f1_constant(long s);

}  // namespace kron
