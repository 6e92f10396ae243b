#include "kron/search.hpp"

#include <algorithm>
#include <atomic>
#include <map>
#include <mutex>
#include <thread>

#include "kron/error.hpp"
#include "kron/orbit.hpp"

namespace kron {

const char* const search_caveat =
    "starts restricted to orbit points {m alpha}, 0 <= m <= M; optima off "
    "the orbit are not excluded";

namespace {

struct Scored {
  std::uint64_t index;
  AlphaForm sum;
  std::vector<AlphaForm> beta;
};

// Flat lex-ordered list of (m_2, ..., m_nB); stops after `limit` tuples.
struct Tuples {
  std::size_t width = 0;
  std::vector<std::int64_t> flat;
  bool more = false;

  std::size_t count() const { return width == 0 ? 1 : flat.size() / width; }
  const std::int64_t* at(std::size_t i) const { return flat.data() + i * width; }
};

Tuples enumerate(int n_b, std::int64_t h, std::int64_t M, std::uint64_t limit) {
  Tuples out;
  out.width = static_cast<std::size_t>(n_b - 1);
  if (out.width == 0) return out;
  std::vector<std::int64_t> cur(out.width);
  std::uint64_t made = 0;
  // iterative depth-first walk in lex order
  std::size_t depth = 0;
  cur[0] = h - 1;
  for (;;) {
    ++cur[depth];
    // the remaining slots need room: m_last <= M
    const std::int64_t room =
        M - static_cast<std::int64_t>(out.width - 1 - depth) * h;
    if (cur[depth] > room) {
      if (depth == 0) break;
      --depth;
      continue;
    }
    if (depth + 1 < out.width) {
      cur[depth + 1] = cur[depth] + h - 1;
      ++depth;
      continue;
    }
    if (made == limit) {
      out.more = true;
      break;
    }
    out.flat.insert(out.flat.end(), cur.begin(), cur.end());
    ++made;
  }
  return out;
}

bool better(const OrbitField& f, const Scored& x, const Scored& y) {
  const int s = f.sign(x.sum - y.sum);
  if (s != 0) return s > 0;
  return x.index < y.index;
}

void keep_top(const OrbitField& f, std::vector<Scored>& top, Scored s,
              std::size_t cap) {
  if (top.size() == cap && !better(f, s, top.back())) return;
  auto pos = std::lower_bound(
      top.begin(), top.end(), s,
      [&](const Scored& a, const Scored& b) { return better(f, a, b); });
  top.insert(pos, std::move(s));
  if (top.size() > cap) top.pop_back();
}

}  // namespace

SearchResult best_coverage(const SearchSpace& space,
                           const SearchOptions& options) {
  const int nb = space.n_b;
  const std::int64_t h = space.height;
  const std::int64_t M = space.orbit_bound;
  if (nb < 1) fail(ErrorCode::invalid_argument, "n_B must be >= 1");
  if (h < 1) fail(ErrorCode::invalid_argument, "height must be >= 1");
  if (space.alpha.is_rational()) {
    fail(ErrorCode::rational_input, "rotation angle must be irrational");
  }
  if (M < static_cast<std::int64_t>(nb - 1) * h) {
    fail(ErrorCode::out_of_range,
         "orbit bound M=" + std::to_string(M) + " leaves no room for " +
             std::to_string(nb) + " disjoint segments of length " +
             std::to_string(h));
  }
  if (options.budget == 0) fail(ErrorCode::invalid_argument, "budget is 0");

  const QuadNum alpha = space.alpha.frac();
  const OrbitField field(alpha);
  const std::size_t span = static_cast<std::size_t>(M + h);
  std::vector<AlphaForm> point(span);
  std::vector<std::int64_t> order(span);
  for (std::size_t j = 0; j < span; ++j) {
    point[j] = field.point(static_cast<std::int64_t>(j));
    order[j] = static_cast<std::int64_t>(j);
  }
  std::sort(order.begin(), order.end(), [&](std::int64_t x, std::int64_t y) {
    return field.less(point[static_cast<std::size_t>(x)],
                      point[static_cast<std::size_t>(y)]);
  });

  const Tuples tuples = enumerate(nb, h, M, options.budget);
  const std::uint64_t total = tuples.count();
  const std::size_t cap = std::max<std::size_t>(options.top, 1);

  unsigned threads = options.threads ? options.threads
                                     : std::max(1u, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(
      std::min<std::uint64_t>(threads, std::max<std::uint64_t>(total / 64, 1)));

  std::atomic<std::uint64_t> next{0}, done{0};
  std::mutex report_mutex;
  const std::uint64_t chunk = 128;
  const std::uint64_t tick = std::max<std::uint64_t>(total / 50, 1);
  std::vector<std::vector<Scored>> tops(threads);

  auto worker = [&](unsigned id) {
    std::vector<int> seg(span, -1);
    std::vector<std::int64_t> starts(static_cast<std::size_t>(nb), 0);
    std::vector<std::optional<AlphaForm>> beta(static_cast<std::size_t>(nb));
    for (;;) {
      const std::uint64_t lo = next.fetch_add(chunk);
      if (lo >= total) break;
      const std::uint64_t hi = std::min(total, lo + chunk);
      for (std::uint64_t c = lo; c < hi; ++c) {
        if (tuples.width) {
          std::copy_n(tuples.at(c), tuples.width, starts.begin() + 1);
        }
        for (int i = 0; i < nb; ++i) {
          for (std::int64_t t = 0; t < h; ++t) {
            seg[static_cast<std::size_t>(starts[i] + t)] = i;
          }
          beta[static_cast<std::size_t>(i)].reset();
        }
        std::int64_t first = -1, prev = -1;
        auto close = [&](std::int64_t from, AlphaForm gap) {
          auto& slot = beta[static_cast<std::size_t>(seg[static_cast<std::size_t>(from)])];
          if (!slot || field.less(gap, *slot)) slot = gap;
        };
        for (std::int64_t j : order) {
          if (seg[static_cast<std::size_t>(j)] < 0) continue;
          if (prev >= 0) {
            close(prev, point[static_cast<std::size_t>(j)] -
                            point[static_cast<std::size_t>(prev)]);
          } else {
            first = j;
          }
          prev = j;
        }
        AlphaForm wrap = point[static_cast<std::size_t>(first)] -
                         point[static_cast<std::size_t>(prev)];
        wrap.b += 1;
        close(prev, wrap);

        Scored s{c, {0, 0}, {}};
        s.beta.reserve(static_cast<std::size_t>(nb));
        for (int i = 0; i < nb; ++i) {
          s.sum = s.sum + *beta[static_cast<std::size_t>(i)];
          s.beta.push_back(*beta[static_cast<std::size_t>(i)]);
          for (std::int64_t t = 0; t < h; ++t) {
            seg[static_cast<std::size_t>(starts[i] + t)] = -1;
          }
        }
        keep_top(field, tops[id], std::move(s), cap);
      }
      const std::uint64_t before = done.fetch_add(hi - lo);
      if (options.progress && (before / tick != (before + hi - lo) / tick ||
                               before + hi - lo == total)) {
        std::lock_guard<std::mutex> lock(report_mutex);
        options.progress(before + hi - lo, total);
      }
    }
  };

  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) pool.emplace_back(worker, t);
    for (auto& th : pool) th.join();
  }

  std::vector<Scored> merged;
  for (auto& t : tops) {
    for (auto& s : t) keep_top(field, merged, std::move(s), cap);
  }

  const QuadNum hq(Integer(static_cast<long>(h)));
  auto materialize = [&](const Scored& s) {
    std::vector<std::int64_t> starts(static_cast<std::size_t>(nb), 0);
    if (tuples.width) {
      std::copy_n(tuples.at(s.index), tuples.width, starts.begin() + 1);
    }
    std::vector<TorusInterval> arcs;
    for (int i = 0; i < nb; ++i) {
      arcs.push_back({field.value(field.point(starts[static_cast<std::size_t>(i)])),
                      field.value(s.beta[static_cast<std::size_t>(i)])});
    }
    return Candidate{std::move(starts), Base(std::move(arcs)),
                     hq * field.value(s.sum)};
  };

  std::vector<Candidate> top;
  for (const Scored& s : merged) top.push_back(materialize(s));
  const Candidate& win = top.front();
  TowerReport report = tower_verify(win.base, alpha, h);
  if (!report.disjoint || report.covered != win.value) {
    fail(ErrorCode::consistency,
         "search optimum fails tower verification: " + win.base.to_string());
  }
  SearchResult out{win.base, win.starts, win.value, done.load(),
                   tuples.more ? options.budget + 1 : total,
                   tuples.more, std::move(report), {}};
  out.top = std::move(top);
  return out;
}

const char* to_string(ScanVerdict v) {
  switch (v) {
    case ScanVerdict::supports_strict_gap:
      return "supports_strict_gap";
    case ScanVerdict::supports_equality:
      return "supports_equality";
    case ScanVerdict::inconclusive:
      return "inconclusive";
  }
  return "unknown";
}

std::vector<std::pair<long, std::int64_t>> default_schedule(
    const ContinuedFraction& cf, int k, std::int64_t max_height) {
  if (k < 1) fail(ErrorCode::invalid_argument, "k must be >= 1");
  ConvergentTable t = ConvergentTable::covering(
      cf.fractional(), Integer(static_cast<long>(max_height)) * k, 2);
  std::vector<std::pair<long, std::int64_t>> out;
  for (long n = 1; n + 1 <= t.n_max(); ++n) {
    const Integer a = t.q(n + 1) / k;
    const Integer b = (t.q(n + 1) + t.q(n)) / k;
    if (a > max_height) break;
    for (const Integer& v : {a, b}) {
      if (v < 2 || v > max_height) continue;
      const std::int64_t hv = v.get_si();
      if (!out.empty() && out.back().second >= hv) continue;
      out.emplace_back(n, hv);
    }
  }
  return out;
}

ScanReport conjecture_scan(const ContinuedFraction& cf, int k,
                           const ScanOptions& options) {
  if (k < 2) fail(ErrorCode::invalid_argument, "scan needs k >= 2");
  const ContinuedFraction frac = cf.fractional();
  std::vector<std::pair<long, std::int64_t>> schedule;
  std::int64_t top_height = 0;
  for (std::int64_t h : options.heights) top_height = std::max(top_height, h);
  ConvergentTable t = ConvergentTable::covering(
      frac, Integer(static_cast<long>(std::max(top_height, options.max_height))) * k,
      2);
  if (options.heights.empty()) {
    schedule = default_schedule(frac, k, options.max_height);
  } else {
    for (std::int64_t h : options.heights) {
      if (h < 2) fail(ErrorCode::invalid_argument, "scan heights must be >= 2");
      schedule.emplace_back(
          t.largest_index_at_most(Integer(static_cast<long>(h - 1))), h);
    }
  }

  ScanReport report;
  report.k = k;
  report.tolerance = options.tolerance;
  std::map<long, QuadNum> refs;
  for (auto [n, h] : schedule) {
    ScanRow row;
    row.n = n;
    row.q_n = t.q(n);
    row.q_n1 = t.q(n + 1);
    row.height = h;
    SearchResult best =
        best_coverage({t.alpha(), k, h, static_cast<std::int64_t>(k) * h},
                      options.search);
    row.best_k = best.value;
    row.starts = best.starts;
    row.partial = best.partial;
    row.ref_index = t.largest_index_at_most(Integer(static_cast<long>(h - 1)));
    auto it = refs.find(row.ref_index);
    if (it == refs.end()) {
      const std::int64_t h1 = t.q(row.ref_index + 1).get_si();
      QuadNum one = best_coverage({t.alpha(), 1, h1, h1}, options.search).value;
      if (one != QuadNum(t.q(row.ref_index + 1)) * t.theta(row.ref_index)) {
        fail(ErrorCode::consistency,
             "single-arc search disagrees with q_{m+1} theta_m at m=" +
                 std::to_string(row.ref_index));
      }
      it = refs.emplace(row.ref_index, std::move(one)).first;
    }
    row.best_1 = it->second;
    row.margin = row.best_k - row.best_1;
    report.rows.push_back(std::move(row));
  }

  // per-block maxima over the later half of the blocks
  std::vector<std::pair<long, QuadNum>> blocks;
  for (const ScanRow& r : report.rows) {
    if (!blocks.empty() && blocks.back().first == r.n) {
      if (r.margin > blocks.back().second) blocks.back().second = r.margin;
    } else {
      blocks.emplace_back(r.n, r.margin);
    }
  }
  if (!blocks.empty()) {
    bool all_gap = true, all_equal = true;
    for (std::size_t i = blocks.size() / 2; i < blocks.size(); ++i) {
      if (blocks[i].second > options.tolerance) {
        all_equal = false;
      } else {
        all_gap = false;
      }
    }
    report.verdict = all_gap     ? ScanVerdict::supports_strict_gap
                     : all_equal ? ScanVerdict::supports_equality
                                 : ScanVerdict::inconclusive;
  }
  return report;
}

}  // namespace kron
