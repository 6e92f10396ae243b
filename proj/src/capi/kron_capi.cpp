#include "kron/kron.h"

#include <cstdlib>
#include <cstring>
#include <memory>
#include <new>
#include <string>

#include "kron/continued_fraction.hpp"
#include "kron/covering.hpp"
#include "kron/error.hpp"
#include "kron/quad.hpp"
#include "kron/rokhlin.hpp"
#include "kron/search.hpp"
#include "kron/three_gap.hpp"
#include "kron/towers.hpp"

struct kron_quad {
  kron::QuadNum v;
};

struct kron_alpha {
  kron::CfLiteral lit;
  kron_quad value;
};

struct kron_gaps {
  kron::GapSpectrum g;
  std::vector<kron_quad> lengths;
};

struct kron_trace {
  std::vector<kron_gaps> steps;
  struct Split {
    bool present = false;
    kron_quad parent, left, right;
  };
  std::vector<Split> splits;
  std::vector<kron_quad> class_length;
  std::vector<std::int64_t> class_size;
  std::vector<kron_gaps> descendants;
};

struct kron_base {
  kron::Base b;
  std::vector<kron_quad> left, length;
  kron_quad total;
};

struct kron_report {
  kron::TowerReport r;
  kron_quad covered;
  kron_quad point;
};

struct kron_lemma {
  kron::Lemma22Result l;
  kron_quad bound, best_found;
  std::unique_ptr<kron_base> witness;
  std::unique_ptr<kron_report> certificate;
};

struct kron_cover {
  kron::CoveringValue c;
  kron_quad exact, raw;
};

struct kron_levels {
  kron::RokhlinLevels l;
  std::vector<kron_quad> left, length;
};

struct kron_rokhlin {
  std::unique_ptr<kron_base> base;
  std::int64_t height;
  kron_quad covered;
  std::unique_ptr<kron_levels> levels;
  std::unique_ptr<kron_report> certificate;
};

struct kron_search {
  kron_quad value;
  std::uint64_t evaluated = 0, total = 0;
  bool partial = false;
  std::unique_ptr<kron_report> certificate;
  std::vector<std::unique_ptr<kron_base>> bases;
  std::vector<kron_quad> values;
  std::vector<std::vector<std::int64_t>> starts;
};

struct kron_scan {
  kron::ScanReport r;
  kron_quad tolerance;
  std::vector<std::string> qn, qn1;
  std::vector<kron_quad> best_k, best_1, margin;
};

namespace {

thread_local std::string last_error;

kron_status code_of(kron::ErrorCode c) {
  using kron::ErrorCode;
  switch (c) {
    case ErrorCode::invalid_argument: return KRON_E_INVALID_ARGUMENT;
    case ErrorCode::parse: return KRON_E_PARSE;
    case ErrorCode::division_by_zero: return KRON_E_DIVISION_BY_ZERO;
    case ErrorCode::incompatible_field: return KRON_E_INCOMPATIBLE_FIELD;
    case ErrorCode::rational_input: return KRON_E_RATIONAL_INPUT;
    case ErrorCode::out_of_range: return KRON_E_OUT_OF_RANGE;
    case ErrorCode::not_covered: return KRON_E_NOT_COVERED;
    case ErrorCode::consistency: return KRON_E_CONSISTENCY;
  }
  return KRON_E_INTERNAL;
}

template <class F>
kron_status guard(F&& body) {
  try {
    body();
    last_error.clear();
    return KRON_OK;
  } catch (const kron::Error& e) {
    last_error = e.what();
    return code_of(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
  } catch (const std::exception& e) {
    last_error = e.what();
  } catch (...) {
    last_error = "unknown failure";
  }
  return KRON_E_INTERNAL;
}

kron_status null_arg(const char* what) {
  last_error = std::string("null argument: ") + what;
  return KRON_E_INVALID_ARGUMENT;
}

#define KRON_REQUIRE(p)                \
  do {                                 \
    if (!(p)) return null_arg(#p);     \
  } while (0)

char* dup(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out) std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

kron_quad* new_quad(kron::QuadNum v) { return new kron_quad{std::move(v)}; }

kron_gaps make_gaps(kron::GapSpectrum g) {
  kron_gaps out{std::move(g), {}};
  for (const auto& e : out.g.entries) out.lengths.push_back({e.length});
  return out;
}

std::unique_ptr<kron_base> make_base(kron::Base b) {
  auto out = std::unique_ptr<kron_base>(new kron_base{std::move(b), {}, {}, {}});
  for (const auto& iv : out->b.intervals()) {
    out->left.push_back({iv.left});
    out->length.push_back({iv.length});
  }
  out->total = {out->b.total_length()};
  return out;
}

std::unique_ptr<kron_report> make_report(kron::TowerReport r) {
  auto out = std::unique_ptr<kron_report>(new kron_report{std::move(r), {}, {}});
  out->covered = {out->r.covered};
  if (out->r.first_collision) out->point = {out->r.first_collision->point};
  return out;
}

std::unique_ptr<kron_levels> make_levels(kron::RokhlinLevels l) {
  auto out = std::unique_ptr<kron_levels>(new kron_levels{std::move(l), {}, {}});
  for (const auto& lv : out->l.levels) {
    out->left.push_back({lv.interval ? lv.interval->left : kron::QuadNum()});
    out->length.push_back({lv.interval ? lv.interval->length : kron::QuadNum()});
  }
  return out;
}

kron::SearchOptions search_options(const kron_search_options* o) {
  kron::SearchOptions out;
  if (!o) return out;
  if (o->budget) out.budget = o->budget;
  out.threads = o->threads;
  if (o->top) out.top = o->top;
  if (o->progress) {
    kron_progress_fn fn = o->progress;
    void* user = o->user;
    out.progress = [fn, user](std::uint64_t done, std::uint64_t total) {
      fn(done, total, user);
    };
  }
  return out;
}

const kron::ContinuedFraction& cf_of(const kron_alpha* a) { return a->lit.cf; }

struct Deviation {
  const char* id;
  const char* text;
};

const Deviation deviations[] = {
    {"convergent_recurrence",
     "convergents use p_n = a_n p_{n-1} + p_{n-2} and q_n = a_n q_{n-1} + "
     "q_{n-2}; the printed recurrence ends in p_{n-1}, q_{n-1}"},
    {"f1_constant_reciprocal",
     "for constant quotients s the single-arc constant is a^2/(1+a^2) with "
     "a = (s+sqrt(s^2+4))/2; the printed (1+a^2)/a^2 exceeds 1 and is its "
     "reciprocal"},
    {"fk_display_clamp",
     "(k-1) floor(q_{n+1}/k) theta_n + floor(q_{n+1}/k) (theta_n + "
     "theta_{n+1}) can exceed 1 for small k (about 1.1708 at k = 1 for the "
     "golden mean, about 1.03 at k = 2 for [0;(2)]); it is evaluated as a "
     "diagnostic and capped at 1"},
    {"three_gap_display",
     "the printed middle gap length and its multiplicity cannot be evaluated "
     "as written; the standard three-distance formulas are used and checked "
     "against direct sorting"},
    {"level_endpoint_norm",
     "when {q_k alpha} > 1/2 the level A_{l0} is [||q_k alpha||, eps'), not "
     "[{q_k alpha}, eps'); the last interval I has lower end theta_k and "
     "index a_{k+1}-1; at a right endpoint of I_{j-1} the empty level is "
     "A_{l2}"},
    {"level_count_floor",
     "for eps' = theta_k and n = q_{k+1} the levels are indexed at k+1 and "
     "floor(l_1/n) = 1, not 0; both levels enter the base and fuse into one "
     "arc. The closed-form area credits A_{l1} with floor(q_{k+j}/q_{k+1}) "
     "copies, so it can undercount the assembled tower by q_{k+1} "
     "theta_{k+j+1} per carry"},
};

}  // namespace

extern "C" {

const char* kron_status_name(kron_status s) {
  switch (s) {
    case KRON_OK: return "ok";
    case KRON_E_INVALID_ARGUMENT: return "invalid_argument";
    case KRON_E_PARSE: return "parse";
    case KRON_E_DIVISION_BY_ZERO: return "division_by_zero";
    case KRON_E_INCOMPATIBLE_FIELD: return "incompatible_field";
    case KRON_E_RATIONAL_INPUT: return "rational_input";
    case KRON_E_OUT_OF_RANGE: return "out_of_range";
    case KRON_E_NOT_COVERED: return "not_covered";
    case KRON_E_CONSISTENCY: return "consistency";
    case KRON_E_INTERNAL: return "internal";
  }
  return "unknown";
}

const char* kron_last_error(void) { return last_error.c_str(); }
void kron_string_free(char* s) { std::free(s); }
const char* kron_version(void) { return "1.0.0"; }

/* ---- numbers ---- */

kron_status kron_quad_parse(const char* text, kron_quad** out) {
  KRON_REQUIRE(text);
  KRON_REQUIRE(out);
  return guard([&] { *out = new_quad(kron::QuadNum::parse(text)); });
}

kron_status kron_quad_sub(const kron_quad* a, const kron_quad* b,
                          kron_quad** out) {
  KRON_REQUIRE(a);
  KRON_REQUIRE(b);
  KRON_REQUIRE(out);
  return guard([&] { *out = new_quad(a->v - b->v); });
}

kron_status kron_quad_mul(const kron_quad* a, const kron_quad* b,
                          kron_quad** out) {
  KRON_REQUIRE(a);
  KRON_REQUIRE(b);
  KRON_REQUIRE(out);
  return guard([&] { *out = new_quad(a->v * b->v); });
}

void kron_quad_free(kron_quad* x) { delete x; }

char* kron_quad_to_string(const kron_quad* x) {
  return x ? dup(x->v.to_string()) : nullptr;
}

char* kron_quad_to_decimal(const kron_quad* x, int digits) {
  if (!x) return nullptr;
  char* out = nullptr;
  guard([&] { out = dup(x->v.to_decimal(digits)); });
  return out;
}

double kron_quad_to_double(const kron_quad* x) {
  return x ? x->v.to_double() : 0.0;
}

int kron_quad_sign(const kron_quad* x) { return x ? x->v.sign() : 0; }

kron_status kron_quad_compare(const kron_quad* a, const kron_quad* b, int* out) {
  KRON_REQUIRE(a);
  KRON_REQUIRE(b);
  KRON_REQUIRE(out);
  return guard([&] {
    *out = a->v < b->v ? -1 : (b->v < a->v ? 1 : 0);
  });
}

/* ---- angles ---- */

kron_status kron_alpha_parse(const char* text, kron_alpha** out) {
  KRON_REQUIRE(text);
  KRON_REQUIRE(out);
  return guard([&] {
    kron::CfLiteral lit = kron::parse_alpha(text);
    kron::QuadNum v = lit.cf.value();
    *out = new kron_alpha{std::move(lit), {std::move(v)}};
  });
}

void kron_alpha_free(kron_alpha* a) { delete a; }

char* kron_alpha_cf_string(const kron_alpha* a) {
  return a ? dup(a->lit.cf.to_string()) : nullptr;
}

const kron_quad* kron_alpha_value(const kron_alpha* a) {
  return a ? &a->value : nullptr;
}

int kron_alpha_tail_assumed(const kron_alpha* a) {
  return a && a->lit.tail_assumed ? 1 : 0;
}

size_t kron_alpha_exact_prefix(const kron_alpha* a) {
  return a ? a->lit.exact_prefix : 0;
}

size_t kron_alpha_preperiod_length(const kron_alpha* a) {
  return a ? a->lit.cf.preperiod().size() : 0;
}

size_t kron_alpha_period_length(const kron_alpha* a) {
  return a ? a->lit.cf.period().size() : 0;
}

int64_t kron_alpha_quotient(const kron_alpha* a, size_t i) {
  return a ? a->lit.cf.at(i) : 0;
}

kron_status kron_convergent(const kron_alpha* a, long n, char** p, char** q,
                            kron_quad** theta) {
  KRON_REQUIRE(a);
  return guard([&] {
    if (n < -2) kron::fail(kron::ErrorCode::out_of_range, "n must be >= -2");
    kron::ConvergentTable t(cf_of(a).fractional(), std::max(n, 0L));
    if (p) *p = dup(t.p(n).get_str());
    if (q) *q = dup(t.q(n).get_str());
    if (theta) {
      if (n < -1) kron::fail(kron::ErrorCode::out_of_range, "theta needs n >= -1");
      *theta = new_quad(t.theta(n));
    }
  });
}

kron_status kron_ostrowski(const kron_alpha* a, const char* N,
                           int64_t** digits, size_t* count) {
  KRON_REQUIRE(a);
  KRON_REQUIRE(N);
  KRON_REQUIRE(digits);
  KRON_REQUIRE(count);
  return guard([&] {
    kron::Integer n;
    if (n.set_str(N, 10) != 0) {
      kron::fail(kron::ErrorCode::parse, std::string("not an integer: ") + N);
    }
    kron::OstrowskiDigits d = kron::ostrowski(cf_of(a), n);
    *count = d.digits.size();
    *digits = static_cast<int64_t*>(
        std::malloc(std::max<std::size_t>(d.digits.size(), 1) * sizeof(int64_t)));
    if (!*digits) throw std::bad_alloc();
    std::copy(d.digits.begin(), d.digits.end(), *digits);
  });
}

void kron_int_array_free(int64_t* p) { std::free(p); }

/* ---- gaps ---- */

kron_status kron_gaps_direct(const kron_alpha* a, int64_t N, kron_gaps** out) {
  KRON_REQUIRE(a);
  KRON_REQUIRE(out);
  return guard([&] {
    kron::QuadNum frac = a->value.v.frac();
    *out = new kron_gaps(make_gaps(kron::gaps_direct(frac, N)));
  });
}

kron_status kron_gaps_formula(const kron_alpha* a, int64_t N, kron_gaps** out) {
  KRON_REQUIRE(a);
  KRON_REQUIRE(out);
  return guard([&] {
    *out = new kron_gaps(make_gaps(kron::gaps_formula(cf_of(a), N)));
  });
}

void kron_gaps_free(kron_gaps* g) { delete g; }
int64_t kron_gaps_N(const kron_gaps* g) { return g ? g->g.N : 0; }
size_t kron_gaps_count(const kron_gaps* g) { return g ? g->lengths.size() : 0; }

const kron_quad* kron_gaps_length(const kron_gaps* g, size_t i) {
  return g && i < g->lengths.size() ? &g->lengths[i] : nullptr;
}

int64_t kron_gaps_multiplicity(const kron_gaps* g, size_t i) {
  return g && i < g->g.entries.size() ? g->g.entries[i].multiplicity : 0;
}

int kron_gaps_law_holds(const kron_gaps* g) {
  return g && g->g.satisfies_three_gap_law() ? 1 : 0;
}

int kron_gaps_equal(const kron_gaps* x, const kron_gaps* y) {
  return x && y && x->g == y->g ? 1 : 0;
}

kron_status kron_gaps_trace(const kron_alpha* a, long i, kron_trace** out) {
  KRON_REQUIRE(a);
  KRON_REQUIRE(out);
  return guard([&] {
    kron::RefinementTrace tr = kron::refinement_trace(cf_of(a), i);
    auto t = std::make_unique<kron_trace>();
    for (auto& step : tr.steps) {
      kron_trace::Split sp;
      if (step.split) {
        sp.present = true;
        sp.parent = {step.split->parent};
        sp.left = {step.split->left};
        sp.right = {step.split->right};
      }
      t->splits.push_back(std::move(sp));
      t->steps.push_back(make_gaps(std::move(step.spectrum)));
    }
    const std::int64_t last = tr.steps.empty() ? 0 : tr.steps.back().N;
    for (auto& c : tr.transitions) {
      t->class_length.push_back({c.length});
      t->class_size.push_back(c.count);
      t->descendants.push_back(
          make_gaps(kron::GapSpectrum{last, std::move(c.descendants)}));
    }
    *out = t.release();
  });
}

void kron_trace_free(kron_trace* t) { delete t; }
size_t kron_trace_step_count(const kron_trace* t) {
  return t ? t->steps.size() : 0;
}

const kron_gaps* kron_trace_step(const kron_trace* t, size_t s) {
  return t && s < t->steps.size() ? &t->steps[s] : nullptr;
}

int kron_trace_step_split(const kron_trace* t, size_t s,
                          const kron_quad** parent, const kron_quad** left,
                          const kron_quad** right) {
  if (!t || s >= t->splits.size() || !t->splits[s].present) return 0;
  const auto& sp = t->splits[s];
  if (parent) *parent = &sp.parent;
  if (left) *left = &sp.left;
  if (right) *right = &sp.right;
  return 1;
}

size_t kron_trace_class_count(const kron_trace* t) {
  return t ? t->class_length.size() : 0;
}

const kron_quad* kron_trace_class_length(const kron_trace* t, size_t c) {
  return t && c < t->class_length.size() ? &t->class_length[c] : nullptr;
}

int64_t kron_trace_class_size(const kron_trace* t, size_t c) {
  return t && c < t->class_size.size() ? t->class_size[c] : 0;
}

const kron_gaps* kron_trace_class_descendants(const kron_trace* t, size_t c) {
  return t && c < t->descendants.size() ? &t->descendants[c] : nullptr;
}

/* ---- bases and towers ---- */

kron_status kron_base_parse(const char* text, kron_base** out) {
  KRON_REQUIRE(text);
  KRON_REQUIRE(out);
  return guard([&] { *out = make_base(kron::Base::parse(text)).release(); });
}

kron_status kron_base_canonical_f1(const kron_alpha* a, long n,
                                   kron_base** out) {
  KRON_REQUIRE(a);
  KRON_REQUIRE(out);
  return guard([&] {
    *out = make_base(kron::canonical_f1_base(cf_of(a), n)).release();
  });
}

kron_status kron_base_two_interval(const kron_alpha* a, long n, int64_t N,
                                   kron_base** out) {
  KRON_REQUIRE(a);
  KRON_REQUIRE(out);
  return guard([&] {
    *out = make_base(kron::two_interval_construction(cf_of(a), n, N)).release();
  });
}

void kron_base_free(kron_base* b) { delete b; }
size_t kron_base_size(const kron_base* b) { return b ? b->left.size() : 0; }

const kron_quad* kron_base_left(const kron_base* b, size_t i) {
  return b && i < b->left.size() ? &b->left[i] : nullptr;
}

const kron_quad* kron_base_length(const kron_base* b, size_t i) {
  return b && i < b->length.size() ? &b->length[i] : nullptr;
}

const kron_quad* kron_base_total_length(const kron_base* b) {
  return b ? &b->total : nullptr;
}

char* kron_base_to_string(const kron_base* b) {
  return b ? dup(b->b.to_string()) : nullptr;
}

kron_status kron_tower_verify(const kron_base* b, const kron_alpha* a,
                              int64_t h, kron_report** out) {
  KRON_REQUIRE(b);
  KRON_REQUIRE(a);
  KRON_REQUIRE(out);
  return guard([&] {
    *out = make_report(kron::tower_verify(b->b, a->value.v, h)).release();
  });
}

void kron_report_free(kron_report* r) { delete r; }
int64_t kron_report_height(const kron_report* r) { return r ? r->r.height : 0; }
int kron_report_disjoint(const kron_report* r) {
  return r && r->r.disjoint ? 1 : 0;
}
const kron_quad* kron_report_covered(const kron_report* r) {
  return r ? &r->covered : nullptr;
}
size_t kron_report_interval_count(const kron_report* r) {
  return r ? r->r.base_interval_count : 0;
}

int kron_report_collision(const kron_report* r, size_t* interval_a,
                          int64_t* level_a, size_t* interval_b,
                          int64_t* level_b, const kron_quad** point) {
  if (!r || !r->r.first_collision) return 0;
  const auto& c = *r->r.first_collision;
  if (interval_a) *interval_a = c.interval_a;
  if (level_a) *level_a = c.level_a;
  if (interval_b) *interval_b = c.interval_b;
  if (level_b) *level_b = c.level_b;
  if (point) *point = &r->point;
  return 1;
}

kron_status kron_lemma22(const kron_alpha* a, long n, int64_t N,
                         kron_lemma** out) {
  KRON_REQUIRE(a);
  KRON_REQUIRE(out);
  return guard([&] {
    auto l = std::make_unique<kron_lemma>();
    l->l = kron::lemma22_max(cf_of(a), n, N);
    l->bound = {l->l.bound};
    l->best_found = {l->l.best_found};
    if (l->l.witness) l->witness = make_base(*l->l.witness);
    if (l->l.certificate) l->certificate = make_report(*l->l.certificate);
    *out = l.release();
  });
}

void kron_lemma_free(kron_lemma* l) { delete l; }
const kron_quad* kron_lemma_bound(const kron_lemma* l) {
  return l ? &l->bound : nullptr;
}
const char* kron_lemma_regime(const kron_lemma* l) {
  return l ? l->l.regime.c_str() : "";
}
const kron_quad* kron_lemma_best_found(const kron_lemma* l) {
  return l ? &l->best_found : nullptr;
}
int64_t kron_lemma_searched_up_to(const kron_lemma* l) {
  return l ? l->l.searched_up_to : 0;
}
const kron_base* kron_lemma_witness(const kron_lemma* l) {
  return l ? l->witness.get() : nullptr;
}
const kron_report* kron_lemma_certificate(const kron_lemma* l) {
  return l ? l->certificate.get() : nullptr;
}

/* ---- covering ---- */

namespace {
kron_cover* new_cover(kron::CoveringValue c) {
  auto* out = new kron_cover{std::move(c), {}, {}};
  out->exact = {out->c.exact};
  out->raw = {out->c.raw};
  return out;
}
}  // namespace

kron_status kron_cover_f1_approx(const kron_alpha* a, long n,
                                 kron_cover** out) {
  KRON_REQUIRE(a);
  KRON_REQUIRE(out);
  return guard([&] { *out = new_cover(kron::f1_approx(cf_of(a), n)); });
}

kron_status kron_cover_f1_exact(const kron_alpha* a, kron_cover** out) {
  KRON_REQUIRE(a);
  KRON_REQUIRE(out);
  return guard([&] { *out = new_cover(kron::f1_exact_periodic(cf_of(a))); });
}

kron_status kron_cover_f2_exact(const kron_alpha* a, kron_cover** out) {
  KRON_REQUIRE(a);
  KRON_REQUIRE(out);
  return guard([&] { *out = new_cover(kron::f2_exact(cf_of(a))); });
}

kron_status kron_cover_fk_eval(const kron_alpha* a, long k_star, long n,
                               kron_cover** out) {
  KRON_REQUIRE(a);
  KRON_REQUIRE(out);
  return guard([&] {
    *out = new_cover(kron::fk_bound_eval(cf_of(a), k_star, n));
  });
}

kron_status kron_cover_f1_constant(long s, kron_cover** out) {
  KRON_REQUIRE(out);
  return guard([&] { *out = new_cover(kron::f1_constant(s)); });
}

kron_status kron_cover_eq2(long s, long j, kron_cover** out,
                           kron_quad** bracket, kron_quad** threshold,
                           kron_quad** alpha_s) {
  KRON_REQUIRE(out);
  return guard([&] {
    kron::Eq2Result r = kron::eq2_bound(s, j);
    std::unique_ptr<kron_quad> b(new_quad(r.bracket)), t(new_quad(r.threshold)),
        al(new_quad(r.alpha));
    *out = new_cover(std::move(r.value));
    if (bracket) *bracket = b.release();
    if (threshold) *threshold = t.release();
    if (alpha_s) *alpha_s = al.release();
  });
}

kron_status kron_eq2_bracket_limit(long s, kron_quad** out) {
  KRON_REQUIRE(out);
  return guard([&] { *out = new_quad(kron::eq2_bracket_limit(s)); });
}

void kron_cover_free(kron_cover* c) { delete c; }
const kron_quad* kron_cover_exact(const kron_cover* c) {
  return c ? &c->exact : nullptr;
}
const kron_quad* kron_cover_raw(const kron_cover* c) {
  return c ? &c->raw : nullptr;
}
const char* kron_cover_kind(const kron_cover* c) {
  return c ? kron::to_string(c->c.kind) : "";
}
int kron_cover_clamped(const kron_cover* c) { return c && c->c.clamped ? 1 : 0; }

/* ---- Rokhlin ---- */

kron_status kron_locate_eps(const kron_alpha* a, long k, const kron_quad* eps,
                            long* j) {
  KRON_REQUIRE(a);
  KRON_REQUIRE(eps);
  KRON_REQUIRE(j);
  return guard([&] { *j = kron::locate_eps(cf_of(a), k, eps->v); });
}

kron_status kron_rokhlin_levels(const kron_alpha* a, const kron_quad* eps,
                                kron_levels** out) {
  KRON_REQUIRE(a);
  KRON_REQUIRE(eps);
  KRON_REQUIRE(out);
  return guard([&] { *out = make_levels(kron::levels(cf_of(a), eps->v)).release(); });
}

void kron_levels_free(kron_levels* l) { delete l; }
long kron_levels_k(const kron_levels* l) { return l ? l->l.k : 0; }
long kron_levels_j(const kron_levels* l) { return l ? l->l.j : 0; }
int kron_levels_mirrored(const kron_levels* l) {
  return l && l->l.mirrored ? 1 : 0;
}
size_t kron_levels_count(const kron_levels* l) {
  return l ? l->l.levels.size() : 0;
}
int64_t kron_levels_index(const kron_levels* l, size_t i) {
  return l && i < l->l.levels.size() ? l->l.levels[i].index : 0;
}

int kron_levels_interval(const kron_levels* l, size_t i,
                         const kron_quad** left, const kron_quad** length) {
  if (!l || i >= l->l.levels.size() || !l->l.levels[i].interval) return 0;
  if (left) *left = &l->left[i];
  if (length) *length = &l->length[i];
  return 1;
}

kron_status kron_rokhlin_assemble(const kron_alpha* a, const kron_quad* eps,
                                  int64_t height, kron_rokhlin** out) {
  KRON_REQUIRE(a);
  KRON_REQUIRE(eps);
  KRON_REQUIRE(out);
  return guard([&] {
    kron::RokhlinTower t = kron::assemble_base(cf_of(a), eps->v, height);
    auto r = std::make_unique<kron_rokhlin>();
    r->base = make_base(std::move(t.base));
    r->height = t.height;
    r->covered = {t.covered};
    r->levels = make_levels(std::move(t.levels));
    r->certificate = make_report(std::move(t.certificate));
    *out = r.release();
  });
}

void kron_rokhlin_free(kron_rokhlin* r) { delete r; }
const kron_base* kron_rokhlin_base(const kron_rokhlin* r) {
  return r ? r->base.get() : nullptr;
}
int64_t kron_rokhlin_height(const kron_rokhlin* r) { return r ? r->height : 0; }
const kron_quad* kron_rokhlin_covered(const kron_rokhlin* r) {
  return r ? &r->covered : nullptr;
}
const kron_levels* kron_rokhlin_levels_of(const kron_rokhlin* r) {
  return r ? r->levels.get() : nullptr;
}
const kron_report* kron_rokhlin_certificate(const kron_rokhlin* r) {
  return r ? r->certificate.get() : nullptr;
}

kron_status kron_rokhlin_area(const kron_alpha* a, long k, long j,
                              kron_quad** out) {
  KRON_REQUIRE(a);
  KRON_REQUIRE(out);
  return guard([&] { *out = new_quad(kron::rokhlin_area(cf_of(a), k, j)); });
}

kron_status kron_rokhlin_assembled_area(const kron_alpha* a, long k, long j,
                                        kron_quad** out) {
  KRON_REQUIRE(a);
  KRON_REQUIRE(out);
  return guard([&] {
    *out = new_quad(kron::rokhlin_assembled_area(cf_of(a), k, j));
  });
}

kron_status kron_rokhlin_interval_count(const kron_alpha* a, long k, long j,
                                        int64_t n, int64_t* predicted,
                                        int64_t* actual) {
  KRON_REQUIRE(a);
  return guard([&] {
    kron::IntervalCount c = kron::interval_count(cf_of(a), k, j, n);
    if (predicted) *predicted = c.predicted;
    if (actual) *actual = c.actual;
  });
}

/* ---- search ---- */

const char* kron_search_caveat(void) { return kron::search_caveat; }

kron_status kron_search_run(const kron_alpha* a, int n_b, int64_t h, int64_t M,
                            const kron_search_options* options,
                            kron_search** out) {
  KRON_REQUIRE(a);
  KRON_REQUIRE(out);
  return guard([&] {
    kron::SearchResult r = kron::best_coverage(
        {a->value.v, n_b, h, M}, search_options(options));
    auto s = std::make_unique<kron_search>();
    s->value = {r.value};
    s->evaluated = r.evaluated;
    s->total = r.total;
    s->partial = r.partial;
    s->certificate = make_report(std::move(r.certificate));
    for (auto& c : r.top) {
      s->bases.push_back(make_base(std::move(c.base)));
      s->values.push_back({std::move(c.value)});
      s->starts.push_back(std::move(c.starts));
    }
    *out = s.release();
  });
}

void kron_search_free(kron_search* s) { delete s; }
const kron_quad* kron_search_value(const kron_search* s) {
  return s ? &s->value : nullptr;
}
const kron_base* kron_search_best(const kron_search* s) {
  return s && !s->bases.empty() ? s->bases.front().get() : nullptr;
}
uint64_t kron_search_evaluated(const kron_search* s) {
  return s ? s->evaluated : 0;
}
uint64_t kron_search_total(const kron_search* s) { return s ? s->total : 0; }
int kron_search_partial(const kron_search* s) { return s && s->partial ? 1 : 0; }
const kron_report* kron_search_certificate(const kron_search* s) {
  return s ? s->certificate.get() : nullptr;
}
size_t kron_search_top_count(const kron_search* s) {
  return s ? s->bases.size() : 0;
}
const kron_quad* kron_search_top_value(const kron_search* s, size_t i) {
  return s && i < s->values.size() ? &s->values[i] : nullptr;
}
const kron_base* kron_search_top_base(const kron_search* s, size_t i) {
  return s && i < s->bases.size() ? s->bases[i].get() : nullptr;
}
size_t kron_search_top_starts(const kron_search* s, size_t i,
                              const int64_t** starts) {
  if (!s || i >= s->starts.size()) return 0;
  if (starts) *starts = s->starts[i].data();
  return s->starts[i].size();
}

kron_status kron_scan_run(const kron_alpha* a, int k, const int64_t* heights,
                          size_t height_count, int64_t max_height,
                          const kron_quad* tolerance,
                          const kron_search_options* options, kron_scan** out) {
  KRON_REQUIRE(a);
  KRON_REQUIRE(out);
  return guard([&] {
    kron::ScanOptions o;
    if (heights) o.heights.assign(heights, heights + height_count);
    if (max_height > 0) o.max_height = max_height;
    if (tolerance) o.tolerance = tolerance->v;
    o.search = search_options(options);
    auto s = std::make_unique<kron_scan>();
    s->r = kron::conjecture_scan(cf_of(a), k, o);
    s->tolerance = {s->r.tolerance};
    for (const auto& row : s->r.rows) {
      s->qn.push_back(row.q_n.get_str());
      s->qn1.push_back(row.q_n1.get_str());
      s->best_k.push_back({row.best_k});
      s->best_1.push_back({row.best_1});
      s->margin.push_back({row.margin});
    }
    *out = s.release();
  });
}

void kron_scan_free(kron_scan* s) { delete s; }
const char* kron_scan_verdict(const kron_scan* s) {
  return s ? kron::to_string(s->r.verdict) : "";
}
const kron_quad* kron_scan_tolerance(const kron_scan* s) {
  return s ? &s->tolerance : nullptr;
}
size_t kron_scan_row_count(const kron_scan* s) {
  return s ? s->r.rows.size() : 0;
}

#define KRON_ROW(s, i) ((s) && (i) < (s)->r.rows.size())

long kron_scan_row_n(const kron_scan* s, size_t i) {
  return KRON_ROW(s, i) ? s->r.rows[i].n : 0;
}
const char* kron_scan_row_qn(const kron_scan* s, size_t i) {
  return KRON_ROW(s, i) ? s->qn[i].c_str() : "";
}
const char* kron_scan_row_qn1(const kron_scan* s, size_t i) {
  return KRON_ROW(s, i) ? s->qn1[i].c_str() : "";
}
int64_t kron_scan_row_height(const kron_scan* s, size_t i) {
  return KRON_ROW(s, i) ? s->r.rows[i].height : 0;
}
const kron_quad* kron_scan_row_best_k(const kron_scan* s, size_t i) {
  return KRON_ROW(s, i) ? &s->best_k[i] : nullptr;
}
long kron_scan_row_ref_index(const kron_scan* s, size_t i) {
  return KRON_ROW(s, i) ? s->r.rows[i].ref_index : 0;
}
const kron_quad* kron_scan_row_best_1(const kron_scan* s, size_t i) {
  return KRON_ROW(s, i) ? &s->best_1[i] : nullptr;
}
const kron_quad* kron_scan_row_margin(const kron_scan* s, size_t i) {
  return KRON_ROW(s, i) ? &s->margin[i] : nullptr;
}
int kron_scan_row_partial(const kron_scan* s, size_t i) {
  return KRON_ROW(s, i) && s->r.rows[i].partial ? 1 : 0;
}
size_t kron_scan_row_starts(const kron_scan* s, size_t i,
                            const int64_t** starts) {
  if (!KRON_ROW(s, i)) return 0;
  if (starts) *starts = s->r.rows[i].starts.data();
  return s->r.rows[i].starts.size();
}

/* ---- deviations ---- */

size_t kron_deviation_count(void) {
  return sizeof(deviations) / sizeof(deviations[0]);
}
const char* kron_deviation_id(size_t i) {
  return i < kron_deviation_count() ? deviations[i].id : "";
}
const char* kron_deviation_text(size_t i) {
  return i < kron_deviation_count() ? deviations[i].text : "";
}

}  // extern "C"
