#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "kron/continued_fraction.hpp"
#include "kron/quad.hpp"

namespace kron {

struct GapEntry {
  QuadNum length;
  std::int64_t multiplicity = 0;
  friend bool operator==(const GapEntry&, const GapEntry&) = default;
};

/// Distinct gap lengths of {alpha}, ..., {N alpha} on the circle, ascending.
struct GapSpectrum {
  std::int64_t N = 0;
  std::vector<GapEntry> entries;

  std::int64_t total_count() const;
  QuadNum total_length() const;
  /// <= 3 lengths, total length 1, count N, and L3 = L1 + L2 when 3 occur.
  bool satisfies_three_gap_law() const;

  friend bool operator==(const GapSpectrum&, const GapSpectrum&) = default;
};

/// Ground truth: exact sort of the orbit points. alpha must lie in (0, 1).
GapSpectrum gaps_direct(const QuadNum& alpha, std::int64_t N);

/// Three-distance formula from the convergents of the fractional part.
GapSpectrum gaps_formula(const ContinuedFraction& cf, std::int64_t N);

/// gaps_formula, compared against gaps_direct; throws a consistency error
/// on any difference.
GapSpectrum gaps_checked(const ContinuedFraction& cf, std::int64_t N);

struct GapSplit {
  QuadNum parent;
  QuadNum left;
  QuadNum right;
};

struct RefinementStep {
  std::int64_t N = 0;
  GapSpectrum spectrum;
  std::optional<GapSplit> split;  // the gap cut by point N (absent at start)
};

/// Where the gaps of one length class at N = q_i end up at N = q_{i+1}.
struct ClassTransition {
  QuadNum length;
  std::int64_t count = 0;
  std::vector<GapEntry> descendants;  // summed over the whole class
};

struct RefinementTrace {
  long i = 0;
  std::vector<RefinementStep> steps;
  std::vector<ClassTransition> transitions;
};

/// Spectra for every N in [q_i, q_{i+1}] with the split made by each new
/// point. Each step is checked: exactly one gap g disappears and two gaps
/// g1 + g2 = g appear.
RefinementTrace refinement_trace(const ContinuedFraction& cf, long i);

}  // namespace kron
