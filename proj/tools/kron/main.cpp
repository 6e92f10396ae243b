// kron: command-line front end over the C interface.

#include <chrono>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "kron/kron.h"

using nlohmann::json;

namespace {

constexpr const char* schema = "kron-output/1";

struct Failure {
  kron_status status;
  std::string message;
};

void check(kron_status s) {
  if (s != KRON_OK) throw Failure{s, kron_last_error()};
}

[[noreturn]] void input_error(const std::string& message) {
  throw Failure{KRON_E_INVALID_ARGUMENT, message};
}

template <class T, void (*Free)(T*)>
struct Deleter {
  void operator()(T* p) const { Free(p); }
};
template <class T, void (*Free)(T*)>
using Owned = std::unique_ptr<T, Deleter<T, Free>>;

using Alpha = Owned<kron_alpha, kron_alpha_free>;
using Quad = Owned<kron_quad, kron_quad_free>;
using Gaps = Owned<kron_gaps, kron_gaps_free>;
using Trace = Owned<kron_trace, kron_trace_free>;
using BaseH = Owned<kron_base, kron_base_free>;
using Report = Owned<kron_report, kron_report_free>;
using Lemma = Owned<kron_lemma, kron_lemma_free>;
using Cover = Owned<kron_cover, kron_cover_free>;
using Levels = Owned<kron_levels, kron_levels_free>;
using Rokhlin = Owned<kron_rokhlin, kron_rokhlin_free>;
using Search = Owned<kron_search, kron_search_free>;
using Scan = Owned<kron_scan, kron_scan_free>;

std::string take(char* s) {
  std::string out = s ? s : "";
  kron_string_free(s);
  return out;
}

Alpha parse_alpha(const std::string& text) {
  kron_alpha* a = nullptr;
  check(kron_alpha_parse(text.c_str(), &a));
  return Alpha(a);
}

Quad parse_quad(const std::string& text) {
  kron_quad* q = nullptr;
  check(kron_quad_parse(text.c_str(), &q));
  return Quad(q);
}

// Output settings shared by every command.
struct Settings {
  bool csv = false;
  int digits = 15;
  std::string out;
  bool deviations = false;
  bool quiet = false;
};

Settings settings;

std::string dec(const kron_quad* q) {
  return take(kron_quad_to_decimal(q, settings.digits));
}

json number(const kron_quad* q) {
  return {{"exact", take(kron_quad_to_string(q))}, {"decimal", dec(q)}};
}

json alpha_json(const kron_alpha* a) {
  return {{"cf", take(kron_alpha_cf_string(a))},
          {"value", number(kron_alpha_value(a))},
          {"tail_assumed", kron_alpha_tail_assumed(a) != 0}};
}

json gaps_json(const kron_gaps* g) {
  json rows = json::array();
  for (size_t i = 0; i < kron_gaps_count(g); ++i) {
    json e = number(kron_gaps_length(g, i));
    e["multiplicity"] = kron_gaps_multiplicity(g, i);
    rows.push_back(e);
  }
  return {{"N", kron_gaps_N(g)}, {"gaps", rows},
          {"three_gap_law", kron_gaps_law_holds(g) != 0}};
}

json base_json(const kron_base* b) {
  json arcs = json::array();
  for (size_t i = 0; i < kron_base_size(b); ++i) {
    arcs.push_back({{"left", number(kron_base_left(b, i))},
                    {"length", number(kron_base_length(b, i))}});
  }
  return {{"text", take(kron_base_to_string(b))},
          {"intervals", arcs},
          {"total_length", number(kron_base_total_length(b))}};
}

json report_json(const kron_report* r) {
  json out = {{"height", kron_report_height(r)},
              {"disjoint", kron_report_disjoint(r) != 0},
              {"covered", number(kron_report_covered(r))},
              {"base_interval_count", kron_report_interval_count(r)}};
  size_t ia, ib;
  int64_t la, lb;
  const kron_quad* pt = nullptr;
  if (kron_report_collision(r, &ia, &la, &ib, &lb, &pt)) {
    out["first_collision"] = {{"interval_a", ia}, {"level_a", la},
                              {"interval_b", ib}, {"level_b", lb},
                              {"point", number(pt)}};
  } else {
    out["first_collision"] = nullptr;
  }
  return out;
}

json cover_json(const kron_cover* c) {
  json out = number(kron_cover_exact(c));
  out["kind"] = kron_cover_kind(c);
  out["clamped"] = kron_cover_clamped(c) != 0;
  out["raw"] = number(kron_cover_raw(c));
  return out;
}

json levels_json(const kron_levels* l) {
  json rows = json::array();
  for (size_t i = 0; i < kron_levels_count(l); ++i) {
    const kron_quad *left = nullptr, *len = nullptr;
    json row = {{"index", kron_levels_index(l, i)}};
    if (kron_levels_interval(l, i, &left, &len)) {
      row["interval"] = {{"left", number(left)}, {"length", number(len)}};
    } else {
      row["interval"] = nullptr;
    }
    rows.push_back(row);
  }
  return {{"k", kron_levels_k(l)}, {"j", kron_levels_j(l)},
          {"mirrored", kron_levels_mirrored(l) != 0}, {"levels", rows}};
}

json deviation_list(const std::vector<std::string>& only = {}) {
  json out = json::array();
  for (size_t i = 0; i < kron_deviation_count(); ++i) {
    std::string id = kron_deviation_id(i);
    if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end()) {
      continue;
    }
    out.push_back({{"id", id}, {"note", kron_deviation_text(i)}});
  }
  return out;
}

std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string csv_row(const std::vector<std::string>& cells) {
  std::string out;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ",";
    out += csv_field(cells[i]);
  }
  return out + "\n";
}

// One command's output: a JSON record, and optionally a CSV table.
struct Output {
  explicit Output(std::string c = {}) : command(std::move(c)) {}
  std::string command;
  json input = json::object();
  json result = json::object();
  std::vector<std::string> notes;  // deviation ids touched by the command
  std::vector<std::string> csv_header;
  std::vector<std::vector<std::string>> csv_rows;
};

void emit(const Output& o, const std::vector<std::string>& argv,
          double millis) {
  std::string text;
  if (settings.csv && !o.csv_header.empty()) {
    text += csv_row(o.csv_header);
    for (const auto& r : o.csv_rows) text += csv_row(r);
  } else {
    json rec = {{"schema", schema},
                {"command", o.command},
                {"argv", argv},
                {"input", o.input},
                {"result", o.result},
                {"timing_ms", millis}};
    rec["deviations"] = o.notes.empty() ? json::array() : deviation_list(o.notes);
    if (settings.deviations) rec["paper_deviations"] = deviation_list();
    text = rec.dump(2) + "\n";
  }
  if (settings.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream f(settings.out);
    if (!f) input_error("cannot write " + settings.out);
    f << text;
  }
}

void progress(uint64_t done, uint64_t total, void*) {
  if (settings.quiet) return;
  std::cerr << json{{"event", "progress"}, {"done", done}, {"total", total}}.dump()
            << "\n";
}

// ---- commands ----

Output run_cf(const std::string& alpha_text, long count) {
  Output o{"cf"};
  Alpha a = parse_alpha(alpha_text);
  o.input = {{"alpha", alpha_text}, {"convergents", count}};
  o.result = alpha_json(a.get());
  o.result["exact_prefix"] = kron_alpha_exact_prefix(a.get());
  o.result["preperiod_length"] = kron_alpha_preperiod_length(a.get());
  o.result["period_length"] = kron_alpha_period_length(a.get());
  json rows = json::array();
  o.csv_header = {"n", "a_n", "p_n", "q_n", "theta_surd", "theta_decimal"};
  for (long n = 0; n < count; ++n) {
    char *p = nullptr, *q = nullptr;
    kron_quad* th = nullptr;
    check(kron_convergent(a.get(), n, &p, &q, &th));
    Quad theta(th);
    // quotients of the fractional part: a_0 = 0
    const int64_t an = n == 0 ? 0 : kron_alpha_quotient(a.get(), n);
    json row = {{"n", n}, {"a", an}, {"p", take(p)}, {"q", take(q)},
                {"theta", number(theta.get())}};
    o.csv_rows.push_back({std::to_string(n), std::to_string(an),
                          row["p"].get<std::string>(), row["q"].get<std::string>(),
                          row["theta"]["exact"].get<std::string>(),
                          row["theta"]["decimal"].get<std::string>()});
    rows.push_back(row);
  }
  o.result["convergents_of_fractional_part"] = rows;
  if (count > 0) o.notes = {"convergent_recurrence"};
  return o;
}

Output run_gaps(const std::string& alpha_text, int64_t N,
                std::optional<long> trace) {
  Output o{"gaps"};
  Alpha a = parse_alpha(alpha_text);
  o.input = {{"alpha", alpha_text}, {"N", N}};
  kron_gaps *d = nullptr, *f = nullptr;
  check(kron_gaps_direct(a.get(), N, &d));
  Gaps direct(d);
  check(kron_gaps_formula(a.get(), N, &f));
  Gaps formula(f);
  if (!kron_gaps_equal(direct.get(), formula.get())) {
    throw Failure{KRON_E_CONSISTENCY,
                  "three-distance formula disagrees with direct sorting"};
  }
  o.result = gaps_json(direct.get());
  o.result["formula_matches_direct"] = true;
  o.notes = {"three_gap_display"};
  o.csv_header = {"length_surd", "length_decimal", "multiplicity"};
  for (size_t i = 0; i < kron_gaps_count(direct.get()); ++i) {
    o.csv_rows.push_back({take(kron_quad_to_string(kron_gaps_length(direct.get(), i))),
                          dec(kron_gaps_length(direct.get(), i)),
                          std::to_string(kron_gaps_multiplicity(direct.get(), i))});
  }
  if (trace) {
    o.input["trace"] = *trace;
    kron_trace* t = nullptr;
    check(kron_gaps_trace(a.get(), *trace, &t));
    Trace tr(t);
    json steps = json::array();
    o.csv_header = {"N", "split_parent", "split_left", "split_right",
                    "length_surd", "length_decimal", "multiplicity"};
    o.csv_rows.clear();
    for (size_t s = 0; s < kron_trace_step_count(t); ++s) {
      const kron_gaps* g = kron_trace_step(t, s);
      json step = gaps_json(g);
      const kron_quad *par, *l, *r;
      std::vector<std::string> split(3);
      if (kron_trace_step_split(t, s, &par, &l, &r)) {
        step["split"] = {{"parent", number(par)}, {"left", number(l)},
                         {"right", number(r)}};
        split = {dec(par), dec(l), dec(r)};
      } else {
        step["split"] = nullptr;
      }
      for (size_t i = 0; i < kron_gaps_count(g); ++i) {
        o.csv_rows.push_back({std::to_string(kron_gaps_N(g)), split[0], split[1],
                              split[2],
                              take(kron_quad_to_string(kron_gaps_length(g, i))),
                              dec(kron_gaps_length(g, i)),
                              std::to_string(kron_gaps_multiplicity(g, i))});
      }
      steps.push_back(step);
    }
    json classes = json::array();
    for (size_t c = 0; c < kron_trace_class_count(t); ++c) {
      classes.push_back({{"length", number(kron_trace_class_length(t, c))},
                         {"count", kron_trace_class_size(t, c)},
                         {"descendants",
                          gaps_json(kron_trace_class_descendants(t, c))["gaps"]}});
    }
    o.result["trace"] = {{"i", *trace}, {"steps", steps}, {"transitions", classes}};
  }
  return o;
}

Output run_ostrowski(const std::string& alpha_text, const std::string& N) {
  Output o{"ostrowski"};
  Alpha a = parse_alpha(alpha_text);
  o.input = {{"alpha", alpha_text}, {"N", N}};
  int64_t* digits = nullptr;
  size_t count = 0;
  check(kron_ostrowski(a.get(), N.c_str(), &digits, &count));
  std::vector<int64_t> d(digits, digits + count);
  kron_int_array_free(digits);
  json terms = json::array();
  o.csv_header = {"n", "b_n", "q_n"};
  for (size_t n = 0; n < d.size(); ++n) {
    char* q = nullptr;
    check(kron_convergent(a.get(), static_cast<long>(n), nullptr, &q, nullptr));
    std::string qs = take(q);
    terms.push_back({{"n", n}, {"b", d[n]}, {"q", qs}});
    o.csv_rows.push_back({std::to_string(n), std::to_string(d[n]), qs});
  }
  o.result = {{"digits", d}, {"terms", terms}};
  return o;
}

Output run_tower(const std::string& alpha_text, const std::string& base_text,
                 std::optional<long> canonical, std::optional<long> lemma,
                 int64_t h) {
  Output o{"tower"};
  Alpha a = parse_alpha(alpha_text);
  o.input = {{"alpha", alpha_text}, {"h", h}};
  if (lemma) {
    o.input["lemma_n"] = *lemma;
    kron_lemma* l = nullptr;
    check(kron_lemma22(a.get(), *lemma, h, &l));
    Lemma lem(l);
    o.result = {{"bound", number(kron_lemma_bound(l))},
                {"regime", kron_lemma_regime(l)},
                {"best_found", number(kron_lemma_best_found(l))},
                {"searched_up_to", kron_lemma_searched_up_to(l)}};
    o.result["witness"] =
        kron_lemma_witness(l) ? base_json(kron_lemma_witness(l)) : json(nullptr);
    o.result["certificate"] = kron_lemma_certificate(l)
                                  ? report_json(kron_lemma_certificate(l))
                                  : json(nullptr);
    return o;
  }
  kron_base* b = nullptr;
  if (canonical) {
    o.input["canonical_n"] = *canonical;
    check(kron_base_canonical_f1(a.get(), *canonical, &b));
  } else {
    if (base_text.empty()) input_error("tower needs --base, --canonical or --lemma");
    o.input["base"] = base_text;
    check(kron_base_parse(base_text.c_str(), &b));
  }
  BaseH base(b);
  kron_report* r = nullptr;
  check(kron_tower_verify(b, a.get(), h, &r));
  Report rep(r);
  o.result = report_json(r);
  o.result["base"] = base_json(b);
  return o;
}

Output run_cover(const std::string& which, const std::string& alpha_text,
                 std::optional<long> n, std::optional<long> k, long s, long j,
                 std::optional<long> constant) {
  Output o{"cover " + which};
  kron_cover* c = nullptr;
  if (which == "eq2") {
    o.input = {{"s", s}, {"j", j}};
    kron_quad *br = nullptr, *th = nullptr, *al = nullptr;
    check(kron_cover_eq2(s, j, &c, &br, &th, &al));
    Quad bracket(br), threshold(th), alpha_s(al);
    Cover cov(c);
    kron_quad* lim = nullptr;
    check(kron_eq2_bracket_limit(s, &lim));
    Quad limit(lim);
    o.result = cover_json(c);
    o.result["bracket"] = number(br);
    o.result["threshold_n"] = number(th);
    o.result["alpha_s"] = number(al);
    o.result["bracket_limit"] = number(lim);
    return o;
  }
  if (which == "f1" && constant) {
    o.input = {{"constant", *constant}};
    check(kron_cover_f1_constant(*constant, &c));
    Cover cov(c);
    o.result = cover_json(c);
    o.notes = {"f1_constant_reciprocal"};
    return o;
  }
  if (alpha_text.empty()) input_error("cover " + which + " needs --alpha");
  Alpha a = parse_alpha(alpha_text);
  o.input = {{"alpha", alpha_text}};
  if (which == "f1") {
    if (n) {
      o.input["n"] = *n;
      check(kron_cover_f1_approx(a.get(), *n, &c));
    } else {
      check(kron_cover_f1_exact(a.get(), &c));
    }
  } else if (which == "f2") {
    check(kron_cover_f2_exact(a.get(), &c));
  } else {
    if (!k || !n) input_error("cover fk needs --k and --n");
    o.input["k"] = *k;
    o.input["n"] = *n;
    check(kron_cover_fk_eval(a.get(), *k, *n, &c));
    o.notes = {"fk_display_clamp"};
  }
  Cover cov(c);
  o.result = cover_json(c);
  o.result["alpha"] = alpha_json(a.get());
  return o;
}

Output run_rokhlin(const std::string& alpha_text, std::optional<long> k,
                   std::optional<long> j, const std::string& eps_text,
                   std::optional<int64_t> height) {
  Output o{"rokhlin"};
  Alpha a = parse_alpha(alpha_text);
  o.input = {{"alpha", alpha_text}};
  o.notes = {"level_endpoint_norm", "level_count_floor"};
  if (k && j) {
    o.input["k"] = *k;
    o.input["j"] = *j;
    kron_quad *ar = nullptr, *as = nullptr, *eps = nullptr;
    check(kron_rokhlin_area(a.get(), *k, *j, &ar));
    Quad area(ar);
    check(kron_rokhlin_assembled_area(a.get(), *k, *j, &as));
    Quad assembled(as);
    char* q = nullptr;
    check(kron_convergent(a.get(), *k + 1, nullptr, &q, nullptr));
    const std::string n = take(q);
    check(kron_convergent(a.get(), *k + *j, nullptr, nullptr, &eps));
    Quad e(eps);
    int64_t predicted = 0, actual = 0;
    check(kron_rokhlin_interval_count(a.get(), *k, *j, std::stoll(n), &predicted,
                                      &actual));
    int cmp = 0;
    check(kron_quad_compare(area.get(), assembled.get(), &cmp));
    kron_rokhlin* r = nullptr;
    check(kron_rokhlin_assemble(a.get(), e.get(), std::stoll(n), &r));
    Rokhlin tower(r);
    o.result = {{"height", std::stoll(n)},
                {"eps_prime", number(e.get())},
                {"closed_form_area", number(area.get())},
                {"assembled_area", number(assembled.get())},
                {"closed_form_matches_assembly", cmp == 0},
                {"interval_count", {{"predicted", predicted}, {"actual", actual}}},
                {"levels", levels_json(kron_rokhlin_levels_of(r))},
                {"base", base_json(kron_rokhlin_base(r))},
                {"certificate", report_json(kron_rokhlin_certificate(r))}};
    return o;
  }
  if (eps_text.empty()) input_error("rokhlin needs --k/--j or --eps");
  Quad eps = parse_quad(eps_text);
  o.input["eps"] = eps_text;
  if (!height) {
    kron_levels* l = nullptr;
    check(kron_rokhlin_levels(a.get(), eps.get(), &l));
    Levels lv(l);
    o.result = levels_json(l);
    return o;
  }
  o.input["height"] = *height;
  kron_rokhlin* r = nullptr;
  check(kron_rokhlin_assemble(a.get(), eps.get(), *height, &r));
  Rokhlin tower(r);
  o.result = {{"height", kron_rokhlin_height(r)},
              {"eps_prime", number(eps.get())},
              {"covered", number(kron_rokhlin_covered(r))},
              {"levels", levels_json(kron_rokhlin_levels_of(r))},
              {"base", base_json(kron_rokhlin_base(r))},
              {"certificate", report_json(kron_rokhlin_certificate(r))}};
  return o;
}

Output run_search(const std::string& alpha_text, int nb, int64_t h, int64_t M,
                  uint64_t budget, unsigned threads) {
  Output o{"search"};
  Alpha a = parse_alpha(alpha_text);
  o.input = {{"alpha", alpha_text}, {"nb", nb}, {"height", h}, {"M", M},
             {"budget", budget}};
  kron_search_options opt{budget, threads, 10, progress, nullptr};
  kron_search* s = nullptr;
  check(kron_search_run(a.get(), nb, h, M, &opt, &s));
  Search res(s);
  json top = json::array();
  o.csv_header = {"rank", "starts", "base", "value_surd", "value_decimal"};
  for (size_t i = 0; i < kron_search_top_count(s); ++i) {
    const int64_t* st = nullptr;
    size_t n = kron_search_top_starts(s, i, &st);
    std::vector<int64_t> starts(st, st + n);
    std::string joined;
    for (size_t t = 0; t < n; ++t) joined += (t ? " " : "") + std::to_string(starts[t]);
    const kron_base* b = kron_search_top_base(s, i);
    top.push_back({{"rank", i + 1}, {"starts", starts}, {"base", base_json(b)},
                   {"value", number(kron_search_top_value(s, i))}});
    o.csv_rows.push_back({std::to_string(i + 1), joined,
                          take(kron_base_to_string(b)),
                          take(kron_quad_to_string(kron_search_top_value(s, i))),
                          dec(kron_search_top_value(s, i))});
  }
  o.result = {{"value", number(kron_search_value(s))},
              {"best", base_json(kron_search_best(s))},
              {"starts", top.empty() ? json::array() : top[0]["starts"]},
              {"evaluated", kron_search_evaluated(s)},
              {"candidates", kron_search_total(s)},
              {"partial", kron_search_partial(s) != 0},
              {"certificate", report_json(kron_search_certificate(s))},
              {"top", top},
              {"caveat", kron_search_caveat()}};
  return o;
}

Output run_scan(const std::string& alpha_text, int k,
                const std::vector<int64_t>& heights, int64_t max_height,
                const std::string& tol_text, uint64_t budget, unsigned threads) {
  Output o{"scan"};
  Alpha a = parse_alpha(alpha_text);
  o.input = {{"alpha", alpha_text}, {"k", k}, {"max_height", max_height}};
  if (!heights.empty()) o.input["heights"] = heights;
  std::optional<Quad> tol;
  if (!tol_text.empty()) {
    tol = parse_quad(tol_text);
    o.input["tolerance"] = tol_text;
  }
  kron_search_options opt{budget, threads, 1, nullptr, nullptr};
  kron_scan* s = nullptr;
  check(kron_scan_run(a.get(), k, heights.empty() ? nullptr : heights.data(),
                      heights.size(), max_height, tol ? tol->get() : nullptr,
                      &opt, &s));
  Scan scan(s);
  json rows = json::array();
  o.csv_header = {"n", "q_n", "q_n1", "height", "best_k", "ref_index",
                  "best_1", "margin", "margin_surd", "partial"};
  for (size_t i = 0; i < kron_scan_row_count(s); ++i) {
    const int64_t* st = nullptr;
    size_t n = kron_scan_row_starts(s, i, &st);
    rows.push_back({{"n", kron_scan_row_n(s, i)},
                    {"q_n", kron_scan_row_qn(s, i)},
                    {"q_n1", kron_scan_row_qn1(s, i)},
                    {"height", kron_scan_row_height(s, i)},
                    {"best_k", number(kron_scan_row_best_k(s, i))},
                    {"starts", std::vector<int64_t>(st, st + n)},
                    {"ref_index", kron_scan_row_ref_index(s, i)},
                    {"best_1", number(kron_scan_row_best_1(s, i))},
                    {"margin", number(kron_scan_row_margin(s, i))},
                    {"partial", kron_scan_row_partial(s, i) != 0}});
    o.csv_rows.push_back({std::to_string(kron_scan_row_n(s, i)),
                          kron_scan_row_qn(s, i), kron_scan_row_qn1(s, i),
                          std::to_string(kron_scan_row_height(s, i)),
                          dec(kron_scan_row_best_k(s, i)),
                          std::to_string(kron_scan_row_ref_index(s, i)),
                          dec(kron_scan_row_best_1(s, i)),
                          dec(kron_scan_row_margin(s, i)),
                          take(kron_quad_to_string(kron_scan_row_margin(s, i))),
                          kron_scan_row_partial(s, i) ? "1" : "0"});
  }
  o.result = {{"verdict", kron_scan_verdict(s)},
              {"tolerance", number(kron_scan_tolerance(s))},
              {"rows", rows},
              {"caveat", kron_search_caveat()}};
  if (!settings.quiet) {
    std::cerr << json{{"event", "verdict"}, {"verdict", kron_scan_verdict(s)}}.dump()
              << "\n";
  }
  return o;
}

int exit_code(kron_status s) {
  return (s == KRON_E_CONSISTENCY || s == KRON_E_INTERNAL) ? 3 : 2;
}

}  // namespace

int main(int argc, char** argv) {
  const std::vector<std::string> args(argv + 1, argv + argc);
  CLI::App app{"Exact gap structures, Rokhlin towers and covering numbers of "
               "circle rotations by quadratic irrationals"};
  app.fallthrough();
  app.require_subcommand(0, 1);
  app.add_flag("--csv", settings.csv, "CSV table instead of JSON");
  app.add_option("--digits", settings.digits, "decimal digits (default 15)")
      ->check(CLI::Range(1, 1000));
  app.add_option("--out", settings.out, "write data to a file instead of stdout");
  app.add_flag("--show-paper-deviations", settings.deviations,
               "list where the implementation departs from the printed formulas");
  app.add_flag("--quiet", settings.quiet, "no progress lines on stderr");

  std::string alpha;
  auto add_alpha = [&](CLI::App* c, bool required = true) {
    auto* opt = c->add_option("--alpha", alpha,
                              "angle: CF literal \"[0;(1,2)]\" or surd "
                              "\"(1+1*sqrt(5))/2\"");
    if (required) opt->required();
  };

  long cf_count = 0;
  auto* cf = app.add_subcommand("cf", "continued fraction and convergents");
  add_alpha(cf);
  cf->add_option("--convergents", cf_count, "convergent rows to list");

  int64_t N = 0;
  std::optional<long> trace;
  auto* gaps = app.add_subcommand("gaps", "gap spectrum of {alpha}, ..., {N alpha}");
  add_alpha(gaps);
  gaps->add_option("-N", N, "number of points")->required();
  gaps->add_option("--trace", trace, "refinement from q_i to q_{i+1}");

  std::string bigN;
  auto* ostro = app.add_subcommand("ostrowski", "Ostrowski digits of N");
  add_alpha(ostro);
  ostro->add_option("-N", bigN, "integer N >= 0")->required();

  std::string base_text;
  std::optional<long> canonical, lemma;
  int64_t h = 0;
  auto* tower = app.add_subcommand("tower", "verify a tower over a base of arcs");
  tower->set_help_flag("--help", "Print this help message and exit");
  add_alpha(tower);
  tower->add_option("--base", base_text, "\"c1:l1,c2:l2,...\"");
  tower->add_option("--canonical", canonical, "single-arc base B_n");
  tower->add_option("--lemma", lemma, "two-arc bound at index n with N = -h");
  tower->add_option("-h,--height", h, "tower height")->required();

  std::optional<long> cov_n, cov_k, constant;
  long s = 1, j = 1;
  auto* cover = app.add_subcommand("cover", "covering numbers");
  cover->require_subcommand(1);
  auto* f1 = cover->add_subcommand("f1", "single-arc covering number");
  add_alpha(f1, false);
  f1->add_option("--n", cov_n, "approximant q_{n+1} theta_n instead of the limit");
  f1->add_flag("--exact", "exact limit (default)");
  f1->add_option("--constant", constant, "closed form for constant quotients s");
  auto* f2 = cover->add_subcommand("f2", "two-arc covering number");
  add_alpha(f2);
  auto* fk = cover->add_subcommand("fk", "k-arc display, as a diagnostic");
  add_alpha(fk);
  fk->add_option("--k", cov_k, "k*")->required();
  fk->add_option("--n", cov_n, "index n")->required();
  auto* eq2 = cover->add_subcommand("eq2", "lower bound for constant quotients");
  eq2->add_option("--s", s, "partial quotient s")->required();
  eq2->add_option("--j", j, "exponent j")->required();

  std::optional<long> rk, rj;
  std::string eps_text;
  std::optional<int64_t> rheight;
  auto* rokhlin = app.add_subcommand("rokhlin", "explicit Rokhlin construction");
  add_alpha(rokhlin);
  rokhlin->add_option("--k", rk, "index k (with --j)");
  rokhlin->add_option("--j", rj, "offset j: eps' = theta_{k+j}, n = q_{k+1}");
  rokhlin->add_option("--eps", eps_text, "eps' as a surd");
  rokhlin->add_option("--height", rheight, "tower height n (with --eps)");

  int nb = 1;
  int64_t M = 0;
  uint64_t budget = 5'000'000;
  unsigned threads = 0;
  auto* search = app.add_subcommand("search", "exhaustive search over orbit-point bases");
  add_alpha(search);
  search->add_option("--nb", nb, "number of arcs")->required();
  search->add_option("--height", h, "tower height")->required();
  search->add_option("-M", M, "largest orbit index for a start")->required();
  search->add_option("--budget", budget, "candidate evaluations");
  search->add_option("--threads", threads, "worker threads (0: all cores)");

  int sk = 2;
  std::vector<int64_t> heights;
  int64_t max_height = 1000;
  std::string tol_text;
  auto* scan = app.add_subcommand("scan", "k-arc against single-arc margins");
  add_alpha(scan);
  scan->add_option("--k", sk, "number of arcs")->required();
  scan->add_option("--heights", heights, "explicit heights")->delimiter(',');
  scan->add_option("--max-height", max_height, "limit of the default schedule");
  scan->add_option("--tolerance", tol_text, "margin treated as zero (default 1/1000)");
  scan->add_option("--budget", budget, "candidate evaluations per height");
  scan->add_option("--threads", threads, "worker threads (0: all cores)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  const auto start = std::chrono::steady_clock::now();
  try {
    Output o;
    if (*cf) {
      o = run_cf(alpha, cf_count);
    } else if (*gaps) {
      o = run_gaps(alpha, N, trace);
    } else if (*ostro) {
      o = run_ostrowski(alpha, bigN);
    } else if (*tower) {
      o = run_tower(alpha, base_text, canonical, lemma, h);
    } else if (*cover) {
      const std::string which = *f1 ? "f1" : *f2 ? "f2" : *fk ? "fk" : "eq2";
      o = run_cover(which, alpha, cov_n, cov_k, s, j, constant);
    } else if (*rokhlin) {
      o = run_rokhlin(alpha, rk, rj, eps_text, rheight);
    } else if (*search) {
      o = run_search(alpha, nb, h, M, budget, threads);
    } else if (*scan) {
      o = run_scan(alpha, sk, heights, max_height, tol_text, budget, threads);
    } else if (settings.deviations) {
      o.command = "deviations";
      o.result = deviation_list();
      o.csv_header = {"id", "note"};
      for (size_t i = 0; i < kron_deviation_count(); ++i) {
        o.csv_rows.push_back({kron_deviation_id(i), kron_deviation_text(i)});
      }
      settings.deviations = false;
    } else {
      std::cerr << app.help();
      return 2;
    }
    const double ms = std::chrono::duration<double, std::milli>(
                          std::chrono::steady_clock::now() - start)
                          .count();
    emit(o, args, ms);
    return 0;
  } catch (const Failure& f) {
    std::cerr << json{{"error", kron_status_name(f.status)},
                      {"message", f.message}}
                     .dump()
              << "\n";
    return exit_code(f.status);
  } catch (const std::exception& e) {
    std::cerr << json{{"error", "internal"}, {"message", e.what()}}.dump() << "\n";
    return 3;
  }
}
