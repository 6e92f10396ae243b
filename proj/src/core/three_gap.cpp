#include "kron/three_gap.hpp"

#include <algorithm>
#include <iterator>
#include <map>

#include "kron/error.hpp"
#include "kron/orbit.hpp"

namespace kron {
namespace {

using FormCounts = std::map<AlphaForm, std::int64_t>;

AlphaForm circ_diff(const OrbitField& field, AlphaForm u, AlphaForm v) {
  AlphaForm d = v - u;
  if (!field.less(u, v)) d.b += 1;
  return d;
}

GapSpectrum to_spectrum(const OrbitField& field, const FormCounts& counts,
                        std::int64_t N) {
  std::vector<std::pair<AlphaForm, std::int64_t>> items(counts.begin(),
                                                        counts.end());
  std::sort(items.begin(), items.end(), [&](const auto& x, const auto& y) {
    return field.less(x.first, y.first);
  });
  GapSpectrum out;
  out.N = N;
  for (const auto& [form, mult] : items) {
    out.entries.push_back({field.value(form), mult});
  }
  return out;
}

void require_unit_interval(const QuadNum& alpha) {
  if (alpha.sign() <= 0 || alpha >= QuadNum(1)) {
    fail(ErrorCode::invalid_argument, "alpha must lie in (0, 1)");
  }
}

std::string describe(const GapSpectrum& s) {
  std::string out = "{";
  for (const auto& e : s.entries) {
    if (out.size() > 1) out += ", ";
    out += e.length.to_string() + " x" + std::to_string(e.multiplicity);
  }
  return out + "}";
}

}  // namespace

std::int64_t GapSpectrum::total_count() const {
  std::int64_t n = 0;
  for (const auto& e : entries) n += e.multiplicity;
  return n;
}

QuadNum GapSpectrum::total_length() const {
  QuadNum sum;
  for (const auto& e : entries) {
    sum += QuadNum(Integer(static_cast<long>(e.multiplicity))) * e.length;
  }
  return sum;
}

bool GapSpectrum::satisfies_three_gap_law() const {
  if (entries.empty() || entries.size() > 3) return false;
  if (total_count() != N || total_length() != QuadNum(1)) return false;
  if (entries.size() == 3 &&
      entries[2].length != entries[0].length + entries[1].length) {
    return false;
  }
  return true;
}

GapSpectrum gaps_direct(const QuadNum& alpha, std::int64_t N) {
  if (N < 1) fail(ErrorCode::invalid_argument, "N must be >= 1");
  require_unit_interval(alpha);
  OrbitField field(alpha);
  std::vector<AlphaForm> pts;
  pts.reserve(static_cast<std::size_t>(N));
  for (std::int64_t k = 1; k <= N; ++k) pts.push_back(field.point(k));
  std::sort(pts.begin(), pts.end(), field.comparator());
  FormCounts counts;
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) ++counts[pts[i + 1] - pts[i]];
  ++counts[pts.front() - pts.back() + AlphaForm{0, 1}];
  return to_spectrum(field, counts, N);
}

GapSpectrum gaps_formula(const ContinuedFraction& cf, std::int64_t N) {
  if (N < 1) fail(ErrorCode::invalid_argument, "N must be >= 1");
  GapSpectrum out;
  out.N = N;
  if (N == 1) {
    out.entries.push_back({QuadNum(1), 1});
    return out;
  }
  const Integer n_big(static_cast<long>(N));
  ConvergentTable t = ConvergentTable::covering(cf.fractional(), n_big);
  // q_k + q_{k-1} < N <= q_{k+1} + q_k
  long k = 0;
  while (n_big > t.q(k + 1) + t.q(k)) ++k;
  const std::int64_t qk = t.q(k).get_si();
  const std::int64_t m = N - t.q(k - 1).get_si();
  const std::int64_t s = (m - 1) % qk + 1;
  const std::int64_t r = (m - s) / qk;
  if (r < 1 || r > t.a(k + 1)) {
    fail(ErrorCode::consistency, "three-distance decomposition out of range");
  }
  const QuadNum& small = t.theta(k);
  const QuadNum& prev = t.theta(k - 1);
  std::vector<GapEntry> raw = {
      {small, N - qk},
      {prev - QuadNum(r) * small, s},
      {prev - QuadNum(r - 1) * small, qk - s},
  };
  std::sort(raw.begin(), raw.end(),
            [](const GapEntry& x, const GapEntry& y) { return x.length < y.length; });
  for (const auto& e : raw) {
    if (e.multiplicity == 0) continue;
    if (!out.entries.empty() && out.entries.back().length == e.length) {
      out.entries.back().multiplicity += e.multiplicity;
    } else {
      out.entries.push_back(e);
    }
  }
  return out;
}

GapSpectrum gaps_checked(const ContinuedFraction& cf, std::int64_t N) {
  GapSpectrum formula = gaps_formula(cf, N);
  GapSpectrum direct = gaps_direct(cf.fractional().value(), N);
  if (!(formula == direct)) {
    fail(ErrorCode::consistency,
         "three-distance formula disagrees with direct sort at N=" +
             std::to_string(N) + ": formula " + describe(formula) +
             ", direct " + describe(direct));
  }
  return formula;
}

RefinementTrace refinement_trace(const ContinuedFraction& cf, long i) {
  if (i < 1) fail(ErrorCode::invalid_argument, "trace index i must be >= 1");
  const ContinuedFraction frac = cf.fractional();
  ConvergentTable t(frac, i + 1);
  const std::int64_t lo = t.q(i).get_si();
  const std::int64_t hi = t.q(i + 1).get_si();
  OrbitField field(t.alpha());

  // gap start point -> index of the gap at N = q_i it descends from
  std::map<AlphaForm, std::size_t, OrbitField::Less> gaps(field.comparator());
  for (std::int64_t k = 1; k <= lo; ++k) gaps.emplace(field.point(k), 0);
  std::vector<AlphaForm> initial_length;
  for (auto it = gaps.begin(); it != gaps.end(); ++it) {
    auto next = std::next(it) == gaps.end() ? gaps.begin() : std::next(it);
    it->second = initial_length.size();
    initial_length.push_back(circ_diff(field, it->first, next->first));
  }

  auto current_counts = [&]() {
    FormCounts counts;
    for (auto it = gaps.begin(); it != gaps.end(); ++it) {
      auto next = std::next(it) == gaps.end() ? gaps.begin() : std::next(it);
      ++counts[circ_diff(field, it->first, next->first)];
    }
    return counts;
  };

  RefinementTrace trace;
  trace.i = i;
  FormCounts before = current_counts();
  trace.steps.push_back({lo, to_spectrum(field, before, lo), std::nullopt});

  for (std::int64_t n = lo + 1; n <= hi; ++n) {
    AlphaForm x = field.point(n);
    auto succ = gaps.lower_bound(x);
    if (succ == gaps.end()) succ = gaps.begin();
    auto pred = succ == gaps.begin() ? std::prev(gaps.end()) : std::prev(succ);
    AlphaForm parent = circ_diff(field, pred->first, succ->first);
    AlphaForm left = circ_diff(field, pred->first, x);
    AlphaForm right = circ_diff(field, x, succ->first);
    gaps.emplace(x, pred->second);

    FormCounts after = current_counts();
    FormCounts expected = before;
    if (--expected[parent] == 0) expected.erase(parent);
    ++expected[left];
    ++expected[right];
    if (after != expected || !(field.value(left) + field.value(right) ==
                               field.value(parent))) {
      fail(ErrorCode::consistency,
           "gap refinement at N=" + std::to_string(n) +
               " is not a single split");
    }
    trace.steps.push_back({n, to_spectrum(field, after, n),
                           GapSplit{field.value(parent), field.value(left),
                                    field.value(right)}});
    before = std::move(after);
  }

  // class of each initial gap -> summed descendants at q_{i+1}
  std::map<AlphaForm, std::pair<std::int64_t, FormCounts>> classes;
  for (const AlphaForm& len : initial_length) ++classes[len].first;
  for (auto it = gaps.begin(); it != gaps.end(); ++it) {
    auto next = std::next(it) == gaps.end() ? gaps.begin() : std::next(it);
    ++classes[initial_length[it->second]]
          .second[circ_diff(field, it->first, next->first)];
  }
  std::vector<AlphaForm> order;
  for (const auto& [len, info] : classes) order.push_back(len);
  std::sort(order.begin(), order.end(), field.comparator());
  for (const AlphaForm& len : order) {
    const auto& [count, desc] = classes[len];
    trace.transitions.push_back(
        {field.value(len), count, to_spectrum(field, desc, 0).entries});
  }
  return trace;
}

}  // namespace kron
