#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kron/continued_fraction.hpp"
#include "kron/quad.hpp"
#include "kron/towers.hpp"

namespace kron {

/// A_i = A ∩ T^{-i}A minus the earlier levels, for A = [0, eps').
struct LevelSet {
  std::int64_t index = 0;
  std::optional<TorusInterval> interval;  // empty level when absent
};

struct RokhlinLevels {
  QuadNum eps_prime;
  long k = 0;            // theta_k < eps' <= theta_{k-1}
  long j = 0;            // eps' in I_{j-1}
  bool mirrored = false; // {q_k alpha} < 1/2
  std::int64_t l0 = 0, l1 = 0, l2 = 0;
  std::vector<LevelSet> levels;  // l0, l1, l2 in that order
};

struct RokhlinTower {
  Base base;
  std::int64_t height = 0;
  QuadNum eps_prime;
  RokhlinLevels levels;
  QuadNum covered;       // sum over levels of floor(l/n) n |A_l|
  TowerReport certificate;
};

struct IntervalCount {
  std::int64_t predicted = 0;  // floor((q_{k+j+1} + q_{k+j}) / n)
  std::int64_t actual = 0;     // maximal intervals of the assembled base
};

/// Index k >= 1 with theta_k < eps' <= theta_{k-1}.
long locate_k(const ContinuedFraction& cf, const QuadNum& eps_prime);

/// j in 1..a_{k+1} with eps' in I_{j-1}, where
/// I_i = (||((i+1) q_k + q_{k-1}) alpha||, ||(i q_k + q_{k-1}) alpha||]
/// for i < a_{k+1} - 1 and the last interval has lower end theta_k.
long locate_eps(const ContinuedFraction& cf, long k, const QuadNum& eps_prime);

/// Return-time levels of [0, eps'), computed by exact interval arithmetic and
/// checked against the closed three-interval description.
RokhlinLevels levels(const ContinuedFraction& cf, const QuadNum& eps_prime);

/// B = union over l >= n, 0 <= i < floor(l/n) of T^{in} A_l, fused where
/// arcs touch, verified as a disjoint tower of height n.
RokhlinTower assemble_base(const ContinuedFraction& cf,
                           const QuadNum& eps_prime, std::int64_t n);

/// q_{k+1} floor(q_{k+j+1}/q_{k+1}) theta_{k+j}
///   + q_{k+1} floor(q_{k+j}/q_{k+1}) theta_{k+j+1}.
QuadNum rokhlin_area(const ContinuedFraction& cf, long k, long j);

/// Coverage of assemble_base with eps' = theta_{k+j} and n = q_{k+1}.
QuadNum rokhlin_assembled_area(const ContinuedFraction& cf, long k, long j);

IntervalCount interval_count(const ContinuedFraction& cf, long k, long j,
                             std::int64_t n);

}  // namespace kron
