#include "kron/towers.hpp"

#include <algorithm>

#include "kron/error.hpp"
#include "kron/orbit.hpp"

namespace kron {
namespace {

struct Arc {
  QuadNum left;
  QuadNum length;
  std::size_t interval;
  std::int64_t level;
};

// First overlapping pair in circular order of arcs sorted by left end.
std::optional<std::pair<std::size_t, std::size_t>> first_overlap(
    const std::vector<Arc>& arcs) {
  const std::size_t n = arcs.size();
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (arcs[i].left + arcs[i].length > arcs[i + 1].left) {
      return std::make_pair(i, i + 1);
    }
  }
  if (n >= 1 && arcs[n - 1].left + arcs[n - 1].length >
                    arcs[0].left + QuadNum(1)) {
    return std::make_pair(n - 1, std::size_t{0});
  }
  return std::nullopt;
}

QuadNum union_measure(const std::vector<Arc>& arcs) {
  std::vector<std::pair<QuadNum, QuadNum>> segs;
  segs.reserve(arcs.size() + 1);
  const QuadNum one(1);
  for (const Arc& a : arcs) {
    QuadNum right = a.left + a.length;
    if (right > one) {
      segs.emplace_back(a.left, one);
      segs.emplace_back(QuadNum(0), std::min(right - one, one));
    } else {
      segs.emplace_back(a.left, right);
    }
  }
  std::sort(segs.begin(), segs.end());
  QuadNum total;
  std::optional<std::pair<QuadNum, QuadNum>> cur;
  for (auto& s : segs) {
    if (cur && s.first <= cur->second) {
      if (s.second > cur->second) cur->second = s.second;
      continue;
    }
    if (cur) total += cur->second - cur->first;
    cur = s;
  }
  if (cur) total += cur->second - cur->first;
  return total;
}

std::vector<Arc> sorted_arcs(const std::vector<TorusInterval>& intervals) {
  std::vector<Arc> arcs;
  for (std::size_t i = 0; i < intervals.size(); ++i) {
    arcs.push_back({intervals[i].left, intervals[i].length, i, 0});
  }
  std::sort(arcs.begin(), arcs.end(),
            [](const Arc& x, const Arc& y) { return x.left < y.left; });
  return arcs;
}

std::vector<std::string> split_top_level(std::string_view text, char sep) {
  std::vector<std::string> parts;
  int depth = 0;
  std::string cur;
  for (char c : text) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      parts.push_back(cur);
      cur.clear();
    } else {
      cur += c;
    }
  }
  parts.push_back(cur);
  return parts;
}

}  // namespace

Base::Base(std::vector<TorusInterval> intervals)
    : intervals_(std::move(intervals)) {
  if (intervals_.empty()) {
    fail(ErrorCode::invalid_argument, "a base needs at least one interval");
  }
  const QuadNum one(1);
  for (const auto& iv : intervals_) {
    if (iv.left.sign() < 0 || iv.left >= one) {
      fail(ErrorCode::invalid_argument,
           "interval left end " + iv.left.to_string() + " outside [0,1)");
    }
    if (iv.length.sign() <= 0 || iv.length > one) {
      fail(ErrorCode::invalid_argument,
           "interval length " + iv.length.to_string() + " outside (0,1]");
    }
  }
  std::sort(intervals_.begin(), intervals_.end(),
            [](const TorusInterval& x, const TorusInterval& y) {
              return x.left < y.left;
            });
  if (first_overlap(sorted_arcs(intervals_))) {
    fail(ErrorCode::invalid_argument, "base intervals overlap");
  }
}

Base Base::parse(std::string_view text) {
  std::vector<TorusInterval> out;
  for (const std::string& part : split_top_level(text, ',')) {
    auto fields = split_top_level(part, ':');
    if (fields.size() != 2) {
      fail(ErrorCode::parse,
           "base component '" + part + "' must look like left:length");
    }
    out.push_back({QuadNum::parse(fields[0]), QuadNum::parse(fields[1])});
  }
  return Base(std::move(out));
}

QuadNum Base::total_length() const {
  QuadNum sum;
  for (const auto& iv : intervals_) sum += iv.length;
  return sum;
}

Base Base::normalized() const {
  const QuadNum shift = intervals_.front().left;
  std::vector<TorusInterval> out;
  for (const auto& iv : intervals_) {
    out.push_back({(iv.left - shift).frac(), iv.length});
  }
  return Base(std::move(out));
}

Base Base::merged() const {
  std::vector<TorusInterval> out;
  for (const auto& iv : intervals_) {
    if (!out.empty() && out.back().left + out.back().length == iv.left) {
      out.back().length += iv.length;
    } else {
      out.push_back(iv);
    }
  }
  // an arc ending exactly at 1 continues into one starting at 0
  if (out.size() > 1 && out.front().left.is_zero() &&
      out.back().left + out.back().length == QuadNum(1)) {
    out.back().length += out.front().length;
    out.erase(out.begin());
  }
  return Base(std::move(out));
}

std::string Base::to_string() const {
  std::string out;
  for (const auto& iv : intervals_) {
    if (!out.empty()) out += ",";
    out += iv.left.to_string() + ":" + iv.length.to_string();
  }
  return out;
}

TowerReport tower_verify(const Base& base, const QuadNum& alpha,
                         std::int64_t h) {
  if (h < 1) fail(ErrorCode::invalid_argument, "tower height must be >= 1");
  if (alpha.is_rational()) {
    fail(ErrorCode::rational_input, "rotation angle must be irrational");
  }
  const QuadNum step = alpha.frac();
  const QuadNum one(1);
  std::vector<Arc> arcs;
  arcs.reserve(base.size() * static_cast<std::size_t>(h));
  for (std::size_t i = 0; i < base.size(); ++i) {
    QuadNum x = base.intervals()[i].left;
    for (std::int64_t k = 0; k < h; ++k) {
      arcs.push_back({x, base.intervals()[i].length, i, k});
      x += step;
      if (x >= one) x -= one;
    }
  }
  std::sort(arcs.begin(), arcs.end(),
            [](const Arc& x, const Arc& y) { return x.left < y.left; });

  TowerReport report;
  report.height = h;
  report.base_interval_count = base.size();
  report.covered = union_measure(arcs);
  if (auto hit = first_overlap(arcs)) {
    const Arc& a = arcs[hit->first];
    const Arc& b = arcs[hit->second];
    report.disjoint = false;
    report.first_collision =
        Collision{a.interval, a.level, b.interval, b.level, b.left};
  } else {
    report.disjoint = true;
  }
  return report;
}

Base canonical_f1_base(const ContinuedFraction& cf, long n) {
  if (n < 0) fail(ErrorCode::invalid_argument, "index n must be >= 0");
  ConvergentTable t(cf.fractional(), n + 1);
  const QuadNum& th = t.theta(n);
  const QuadNum inv = QuadNum::rational(1, t.q(n));
  if (!(QuadNum(2) * th < inv)) {
    fail(ErrorCode::invalid_argument,
         "B_n is empty: 2 theta_n >= 1/q_n for n=" + std::to_string(n));
  }
  return Base({{th, inv - QuadNum(2) * th}});
}

Base two_interval_construction(const ContinuedFraction& cf, long n,
                               std::int64_t N) {
  ConvergentTable t(cf.fractional(), n + 1);
  const QuadNum& th = t.theta(n);
  QuadNum c2 = (QuadNum(Integer(static_cast<long>(N))) * t.alpha()).frac();
  return Base({{QuadNum(0), th}, {c2, th}});
}

Lemma22Result lemma22_max(const ContinuedFraction& cf, long n,
                          std::int64_t N) {
  if (n < 1) fail(ErrorCode::invalid_argument, "index n must be >= 1");
  const ContinuedFraction frac = cf.fractional();
  ConvergentTable t(frac, n + 2);
  const std::int64_t qn = t.q(n).get_si();
  const std::int64_t qn1 = t.q(n + 1).get_si();
  if (N <= qn || N > qn1) {
    fail(ErrorCode::out_of_range, "N=" + std::to_string(N) +
                                      " outside (q_n, q_{n+1}] = (" +
                                      std::to_string(qn) + ", " +
                                      std::to_string(qn1) + "]");
  }
  const Quotient a = t.a(n + 1);
  Lemma22Result out;
  if (a > 1 && 2 * N <= qn1) {
    out.regime = "double";
    out.bound = QuadNum(2) * t.theta(n);
  } else if (2 * N <= qn1 + qn) {
    out.regime = "shifted";
    out.bound = t.theta(n - 1) - QuadNum(a - 1) * t.theta(n);
  } else {
    out.regime = "single";
    out.bound = t.theta(n);
  }

  // c_1 = 0, c_2 = {m alpha}; orbit points j in [0,N) and [m, m+N) must be
  // distinct, so m >= N. Each beta_i is the least gap that follows a point
  // of its own orbit segment.
  OrbitField field(t.alpha());
  const std::int64_t limit = 2 * qn1 + qn + N;
  // orbit indices 0 .. limit+N-1 in circular order, computed once
  std::vector<std::int64_t> order(static_cast<std::size_t>(limit + N));
  std::vector<AlphaForm> point(order.size());
  for (std::size_t j = 0; j < order.size(); ++j) {
    order[j] = static_cast<std::int64_t>(j);
    point[j] = field.point(static_cast<std::int64_t>(j));
  }
  std::sort(order.begin(), order.end(), [&](std::int64_t x, std::int64_t y) {
    return field.less(point[static_cast<std::size_t>(x)],
                      point[static_cast<std::size_t>(y)]);
  });

  std::optional<std::pair<AlphaForm, AlphaForm>> best;  // beta_1, beta_2
  std::int64_t best_m = 0;
  AlphaForm best_sum{0, 0};
  std::vector<std::pair<AlphaForm, int>> pts;
  pts.reserve(static_cast<std::size_t>(2 * N));
  for (std::int64_t m = N; m <= limit; ++m) {
    pts.clear();
    for (std::int64_t j : order) {
      if (j < N) {
        pts.emplace_back(point[static_cast<std::size_t>(j)], 0);
      } else if (j >= m && j < m + N) {
        pts.emplace_back(point[static_cast<std::size_t>(j)], 1);
      }
    }
    std::optional<AlphaForm> beta[2];
    for (std::size_t i = 0; i < pts.size(); ++i) {
      const auto& next = pts[(i + 1) % pts.size()];
      AlphaForm gap = next.first - pts[i].first;
      if (i + 1 == pts.size()) gap.b += 1;
      auto& slot = beta[pts[i].second];
      if (!slot || field.less(gap, *slot)) slot = gap;
    }
    AlphaForm sum = *beta[0] + *beta[1];
    if (!best || field.less(best_sum, sum)) {
      best = std::make_pair(*beta[0], *beta[1]);
      best_sum = sum;
      best_m = m;
    }
  }
  out.searched_up_to = limit;
  out.best_found = field.value(best_sum);
  if (out.best_found > out.bound) {
    fail(ErrorCode::consistency,
         "two-interval search beats the bound: " + out.best_found.to_string() +
             " > " + out.bound.to_string());
  }
  if (out.best_found == out.bound) {
    Base witness({{QuadNum(0), field.value(best->first)},
                  {field.value(field.point(best_m)), field.value(best->second)}});
    TowerReport report = tower_verify(witness, t.alpha(), N);
    if (!report.disjoint) {
      fail(ErrorCode::consistency, "lemma witness fails tower verification");
    }
    out.witness = std::move(witness);
    out.certificate = std::move(report);
  }
  return out;
}

}  // namespace kron
