#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "kron/continued_fraction.hpp"
#include "kron/quad.hpp"

namespace kron {

/// Half-open arc [left, left + length) of the circle R/Z.
struct TorusInterval {
  QuadNum left;
  QuadNum length;
  friend bool operator==(const TorusInterval&, const TorusInterval&) = default;
};

/// Finite union of pairwise disjoint arcs, sorted by left endpoint.
class Base {
 public:
  explicit Base(std::vector<TorusInterval> intervals);

  /// "c1:l1,c2:l2,..." with surd literals, e.g. "0:sqrt(2)-1".
  static Base parse(std::string_view text);

  const std::vector<TorusInterval>& intervals() const { return intervals_; }
  std::size_t size() const { return intervals_.size(); }
  QuadNum total_length() const;

  /// Rotated so that the first arc starts at 0.
  Base normalized() const;

  /// Adjacent arcs fused; the count of maximal intervals of the union.
  Base merged() const;

  std::string to_string() const;

  friend bool operator==(const Base&, const Base&) = default;

 private:
  std::vector<TorusInterval> intervals_;
};

struct Collision {
  std::size_t interval_a = 0;
  std::int64_t level_a = 0;
  std::size_t interval_b = 0;
  std::int64_t level_b = 0;
  QuadNum point;  // start of the overlap: left end of arc b
};

struct TowerReport {
  std::int64_t height = 0;
  bool disjoint = false;
  QuadNum covered;
  std::size_t base_interval_count = 0;
  std::optional<Collision> first_collision;
};

/// Exact check that B, B + alpha, ..., B + (h-1) alpha are pairwise disjoint,
/// plus the exact measure of their union.
TowerReport tower_verify(const Base& base, const QuadNum& alpha,
                         std::int64_t h);

/// B_n = [theta_n, 1/q_n - theta_n), a single arc whose q_n-tower is
/// disjoint and covers 1 - 2 q_n theta_n. Needs 2 theta_n < 1/q_n.
Base canonical_f1_base(const ContinuedFraction& cf, long n);

/// [0, theta_n) together with [{N alpha}, {N alpha} + theta_n).
Base two_interval_construction(const ContinuedFraction& cf, long n,
                               std::int64_t N);

struct Lemma22Result {
  QuadNum bound;           // maximal beta_1 + beta_2 for a disjoint N-tower
  std::string regime;      // "double", "shifted" or "single"
  std::optional<Base> witness;
  std::optional<TowerReport> certificate;
  QuadNum best_found;      // best beta_1 + beta_2 seen by the witness search
  std::int64_t searched_up_to = 0;
};

/// Two-interval bound for q_n < N <= q_{n+1}:
///   2 theta_n                          if a_{n+1} > 1 and 2N <= q_{n+1}
///   theta_{n-1} - (a_{n+1}-1) theta_n  if q_{n+1} < 2N <= q_{n+1} + q_n
///   theta_n                            otherwise.
/// A witness with c_1 = 0 and c_2 an orbit point {m alpha} is searched for;
/// a search result above the bound is reported as a consistency failure.
Lemma22Result lemma22_max(const ContinuedFraction& cf, long n,
                          std::int64_t N);

}  // namespace kron
