#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "kron/continued_fraction.hpp"
#include "kron/quad.hpp"
#include "kron/towers.hpp"

namespace kron {

/// Bases of n_B arcs starting at orbit points {m_i alpha}, m_1 = 0 and
/// m_i in [h, M] with m_{i+1} >= m_i + h, so the n_B orbit segments of length
/// h are disjoint. For fixed starts the best lengths are forced: beta_i is the
/// least gap that follows a point of segment i.
struct SearchSpace {
  QuadNum alpha;
  int n_b = 1;
  std::int64_t height = 1;
  std::int64_t orbit_bound = 0;  // M
};

struct SearchOptions {
  std::uint64_t budget = 5'000'000;  // candidate evaluations, in lex order
  unsigned threads = 0;              // 0: hardware concurrency
  std::size_t top = 10;
  std::function<void(std::uint64_t done, std::uint64_t total)> progress;
};

struct Candidate {
  std::vector<std::int64_t> starts;  // m_1 = 0, m_2, ..., m_{n_B}
  Base base;
  QuadNum value;                     // h * total length
};

struct SearchResult {
  Base best;
  std::vector<std::int64_t> starts;
  QuadNum value;
  std::uint64_t evaluated = 0;
  std::uint64_t total = 0;   // size of the candidate set, or budget + 1
  bool partial = false;      // budget hit before the space was exhausted
  TowerReport certificate;
  std::vector<Candidate> top;  // best first, ties by lex order of starts
};

/// Exhaustive exact maximum of tower coverage over the space.
SearchResult best_coverage(const SearchSpace& space,
                           const SearchOptions& options = {});

extern const char* const search_caveat;

struct ScanRow {
  long n = 0;  // schedule block: heights built from q_n, q_{n+1}
  Integer q_n, q_n1;
  std::int64_t height = 0;
  QuadNum best_k;
  std::vector<std::int64_t> starts;
  long ref_index = 0;     // m with q_m < height <= q_{m+1}
  QuadNum best_1;         // single-arc optimum at height q_{m+1}
  QuadNum margin;         // best_k - best_1
  bool partial = false;
};

enum class ScanVerdict { supports_strict_gap, supports_equality, inconclusive };

const char* to_string(ScanVerdict v);

struct ScanReport {
  int k = 2;
  QuadNum tolerance;
  std::vector<ScanRow> rows;
  ScanVerdict verdict = ScanVerdict::inconclusive;
};

struct ScanOptions {
  std::vector<std::int64_t> heights;   // empty: default schedule
  std::int64_t max_height = 1000;
  QuadNum tolerance = QuadNum::rational(1, 1000);
  SearchOptions search;
};

/// Heights floor(q_{n+1}/k) and floor((q_{n+1} + q_n)/k) for every n >= 1
/// whose heights stay within max_height, as (n, height) pairs.
std::vector<std::pair<long, std::int64_t>> default_schedule(
    const ContinuedFraction& cf, int k, std::int64_t max_height);

/// Best k-arc coverage (M = k h) against the best single arc of the same
/// height block, per scheduled height. The verdict looks at the per-block
/// maximum margin over the later half of the blocks.
ScanReport conjecture_scan(const ContinuedFraction& cf, int k,
                           const ScanOptions& options = {});

}  // namespace kron
