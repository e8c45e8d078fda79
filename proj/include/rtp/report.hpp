#pragma once

// JSON job files in, JSON reports out (schema "rtp-report/1").
//
// A job is a task object, an array of tasks, or {"tasks": [...]}. A task names
// one target (family, era, sequence, series, cf, cycle_index) and a list of
// checks. Reports are deterministic: keys are sorted and tasks are reported in
// input order.

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"

#include "rtp/catalog.hpp"
#include "rtp/contfrac.hpp"
#include "rtp/conv.hpp"
#include "rtp/expr.hpp"
#include "rtp/matrix.hpp"
#include "rtp/poly.hpp"
#include "rtp/positivity.hpp"
#include "rtp/rational.hpp"
#include "rtp/riordan.hpp"
#include "rtp/series.hpp"
#include "rtp/unipoly.hpp"

namespace rtp {

using Json = nlohmann::json;

inline constexpr const char* kReportSchema = "rtp-report/1";

enum ExitCode : int { kExitPass = 0, kExitCheckFailed = 1, kExitParseError = 2, kExitDomainError = 3 };

// ---------------------------------------------------------------------------
// Serialization

inline Json to_json(const Rational& r) { return to_string(r); }

inline Json to_json(const Poly& p) {
  Json terms = Json::array();
  for (const auto& [mono, c] : p.terms()) terms.push_back({{"exp", mono}, {"coef", to_string(c)}});
  return {{"vars", p.vars()}, {"terms", terms}};
}

template <class R>
Json to_json(const Series<R>& s) {
  Json out = Json::array();
  for (std::size_t i = 0; i <= s.order(); ++i) out.push_back(to_json(s[i]));
  return out;
}

template <class R>
Json sequence_to_json(const std::vector<R>& seq) {
  Json out = Json::array();
  for (const auto& x : seq) out.push_back(to_json(x));
  return out;
}

/// Row lists; lower-triangular matrices stop at the diagonal.
template <class R>
Json matrix_to_json(const Matrix<R>& m) {
  const bool lower = m.is_lower_triangular();
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols() && (!lower || j <= i); ++j) row.push_back(to_json(m(i, j)));
    out.push_back(row);
  }
  return out;
}

inline Json to_json(const Certificate& c) {
  Json out{{"property", c.property}, {"size", {c.rows, c.cols}}, {"r", c.r}, {"verdict", c.pass ? "pass" : "fail"},
           {"bindings", c.bindings}, {"note", c.note}};
  if (c.witness) {
    Json w{{"rows", c.witness->rows}, {"cols", c.witness->cols}, {"value", to_json(c.witness->value)}};
    if (c.witness->negative_term) w["negative_term"] = {{"exp", c.witness->negative_term->first}, {"coef", to_string(c.witness->negative_term->second)}};
    out["witness"] = w;
  }
  return out;
}

inline Rational rational_from_json(const Json& j) {
  if (j.is_number_integer()) return Rational(j.get<long>());
  if (j.is_string()) return parse_rational(j.get<std::string>());
  throw parse_error("expected an integer or a rational string, got " + j.dump());
}

inline Poly poly_from_json(const Json& j) {
  if (j.is_number_integer() || j.is_string()) return Poly(rational_from_json(j));
  if (!j.is_object() || !j.contains("vars") || !j.contains("terms")) throw parse_error("malformed polynomial: " + j.dump());
  VarList vars = j.at("vars").get<VarList>();
  std::vector<std::pair<Poly::Monomial, Rational>> terms;
  for (const auto& t : j.at("terms")) terms.emplace_back(t.at("exp").get<Poly::Monomial>(), rational_from_json(t.at("coef")));
  if (vars.empty()) {
    Rational c = 0;
    for (const auto& [mono, v] : terms) c += v;
    return Poly(c);
  }
  return Poly::from_terms(vars, terms);
}

inline Certificate certificate_from_json(const Json& j) {
  Certificate c;
  c.property = j.at("property").get<std::string>();
  c.rows = j.at("size").at(0).get<std::size_t>();
  c.cols = j.at("size").at(1).get<std::size_t>();
  c.r = j.at("r").get<unsigned>();
  c.pass = j.at("verdict").get<std::string>() == "pass";
  c.bindings = j.at("bindings").get<std::map<std::string, std::string>>();
  c.note = j.value("note", std::string());
  if (j.contains("witness")) {
    const auto& w = j.at("witness");
    c.witness = Witness{w.at("rows").get<std::vector<std::size_t>>(), w.at("cols").get<std::vector<std::size_t>>(), poly_from_json(w.at("value")),
                        std::nullopt};
    c.witness->negative_term = c.witness->value.first_negative_term();
  }
  return c;
}

// ---------------------------------------------------------------------------
// Targets

namespace detail {

inline ParamValue param_from_json(const Json& j) {
  if (j.is_string() && (j.get<std::string>() == "sym" || j.get<std::string>() == "symbolic")) return ParamValue::symbolic();
  return ParamValue::bound(rational_from_json(j));
}

inline Bindings bindings_from_json(const Json& j) {
  Bindings b;
  if (j.is_null()) return b;
  if (!j.is_object()) throw parse_error("bindings must be an object");
  for (const auto& [k, v] : j.items()) b[k] = param_from_json(v);
  return b;
}

inline std::map<std::string, std::string> bindings_report(const Bindings& b) {
  std::map<std::string, std::string> out;
  for (const auto& [k, v] : b) out[k] = v.is_symbolic() ? "sym" : to_string(*v.value);
  return out;
}

inline std::vector<Rational> rationals_from_json(const Json& j) {
  if (!j.is_array()) throw parse_error("expected an array of rationals");
  std::vector<Rational> out;
  for (const auto& x : j) out.push_back(rational_from_json(x));
  return out;
}

inline std::size_t order_from(const Json& task, std::size_t fallback) {
  if (!task.contains("N")) return fallback;
  const auto& n = task.at("N");
  if (!n.is_number_integer() || n.get<long>() < 0) throw parse_error("N must be a nonnegative integer");
  if (n.get<long>() > 40) throw domain_error("N must be at most 40");
  return n.get<std::size_t>();
}

inline const std::set<std::string>& family_reserved_keys() {
  static const std::set<std::string> k{"family", "N", "realization", "checks", "emit", "xs", "name", "params", "bindings"};
  return k;
}

}  // namespace detail

struct Target {
  std::string kind;  // family | era | sequence | series | cf | cycle_index
  std::size_t n = 0;
  Bindings bindings;
  std::optional<FamilySpec> family;
  std::optional<ExpRiordan<Poly>> era;
  std::optional<Triangle> triangle;
  std::vector<Poly> sequence;  // sequence-like targets; row polynomials for triangles
  Json cf;                     // the cf description, kept for cf-agreement
};

namespace detail {

inline Poly bound_poly(const Bindings& b, const std::string& name, const Rational& fallback) {
  auto it = b.find(name);
  if (it == b.end()) return Poly(fallback);
  if (it->second.is_symbolic()) return Poly::variable(name, symbolic_vars(b));
  return Poly(*it->second.value);
}

inline BranchedSF<Poly> cf_from_json(const Json& cf, const Bindings& b, std::size_t n) {
  const Json& sched = cf.at("schedule");
  if (sched.is_array()) {
    if (!cf.contains("m")) throw parse_error("cf: an explicit schedule needs m");
    BranchedSF<Poly> out{cf.at("m").get<std::size_t>(), {}};
    for (const auto& x : sched) out.alpha.push_back(poly_from_json(x));
    return out;
  }
  const std::string name = sched.get<std::string>();
  std::vector<Poly> xs;
  if (cf.contains("xs"))
    for (const auto& x : cf.at("xs")) xs.push_back(poly_from_json(x));
  Poly q = bound_poly(b, "q", 0), lambda = bound_poly(b, "lambda", 0);
  if (name == "sheffer") return schedule_sheffer<Poly>(lambda, q, xs, n);
  if (name == "sheffer_star") return schedule_sheffer_star<Poly>(lambda, q, xs, n);
  if (name == "hankel-thm-v") return schedule_hankel<Poly>(bound_poly(b, "nu", 0), bound_poly(b, "b", 0), xs, n);
  if (name == "lah" || name == "lah_star") {
    auto a = b.find("a");
    if (a == b.end() || a->second.is_symbolic() || !is_integer(*a->second.value) || sgn(*a->second.value) < 0)
      throw domain_error("cf lah schedule: a must be bound to a nonnegative integer");
    auto as = static_cast<std::size_t>(a->second.value->get_num().get_ui());
    Poly bb = bound_poly(b, "b", 1), c = bound_poly(b, "c", 1);
    return name == "lah" ? schedule_lah<Poly>(as, bb, c, lambda, q, n) : schedule_lah_star<Poly>(as, bb, c, lambda, q, n);
  }
  throw parse_error("cf: unknown schedule '" + name + "'");
}

// (nu, b, xs) behind a named schedule, for the production route.
inline std::optional<std::tuple<Poly, Poly, std::vector<Poly>>> cf_production_params(const Json& cf, const Bindings& b) {
  const Json& sched = cf.at("schedule");
  if (sched.is_array()) return std::nullopt;
  const std::string name = sched.get<std::string>();
  std::vector<Poly> xs;
  if (cf.contains("xs"))
    for (const auto& x : cf.at("xs")) xs.push_back(poly_from_json(x));
  Poly q = bound_poly(b, "q", 0), lambda = bound_poly(b, "lambda", 0);
  if (name == "sheffer") return std::make_tuple(Poly(lambda + q), Poly(0), xs);
  if (name == "sheffer_star") {
    std::vector<Poly> qxs;
    for (const auto& x : xs) qxs.push_back(q * x);
    return std::make_tuple(Poly(q * lambda + Poly(1)), Poly(0), qxs);
  }
  if (name == "hankel-thm-v") return std::make_tuple(bound_poly(b, "nu", 0), bound_poly(b, "b", 0), xs);
  if (name == "lah" || name == "lah_star") {
    auto m = static_cast<std::size_t>(b.at("a").value->get_num().get_ui()) + 1;
    Poly bb = bound_poly(b, "b", 1), c = bound_poly(b, "c", 1);
    if (name == "lah") return std::make_tuple(Poly(c * (q + lambda)), Poly(0), std::vector<Poly>(m, bb));
    return std::make_tuple(Poly(c * (Poly(1) + q * lambda)), Poly(0), std::vector<Poly>(m, Poly(bb * q)));
  }
  return std::nullopt;
}

}  // namespace detail

inline Target build_target(const Json& task) {
  if (!task.is_object()) throw parse_error("a task must be a JSON object");
  Target t;
  if (task.contains("family")) {
    t.kind = "family";
    FamilySpec spec;
    spec.family = task.at("family").get<std::string>();
    spec.n = detail::order_from(task, 10);
    for (const auto& [k, v] : task.items())
      if (!detail::family_reserved_keys().count(k)) spec.params[k] = detail::param_from_json(v);
    if (task.contains("params"))
      for (const auto& [k, v] : task.at("params").items()) spec.params[k] = detail::param_from_json(v);
    if (task.contains("xs")) spec.xs = detail::rationals_from_json(task.at("xs"));
    const auto& info = family_info(spec.family);
    Realization r = task.contains("realization") ? parse_realization(task.at("realization").get<std::string>()) : info.realizations.front();
    t.family = resolve(spec);
    t.n = spec.n;
    t.bindings = t.family->params;
    t.triangle = build_family(spec, r);
    t.sequence = t.triangle->row_polys();
    return t;
  }
  if (task.contains("era")) {
    t.kind = "era";
    t.n = detail::order_from(task, 10);
    t.bindings = detail::bindings_from_json(task.value("bindings", Json()));
    const auto& e = task.at("era");
    Series<Poly> g = parse_series(e.at("g").get<std::string>(), t.bindings, t.n);
    Series<Poly> f = parse_series(e.at("f").get<std::string>(), t.bindings, t.n);
    t.era = ExpRiordan<Poly>(g, f);
    t.triangle = Triangle{"era", Realization::era, t.era->triangle(t.n)};
    t.sequence = t.triangle->row_polys();
    return t;
  }
  if (task.contains("sequence")) {
    t.kind = "sequence";
    for (const auto& x : task.at("sequence")) t.sequence.push_back(poly_from_json(x));
    if (t.sequence.empty()) throw parse_error("sequence must not be empty");
    t.n = t.sequence.size() - 1;
    return t;
  }
  if (task.contains("series")) {
    t.kind = "series";
    t.n = detail::order_from(task, 10);
    t.bindings = detail::bindings_from_json(task.value("bindings", Json()));
    Series<Poly> s = parse_series(task.at("series").get<std::string>(), t.bindings, t.n);
    const bool egf = task.value("egf", false);
    for (std::size_t i = 0; i <= t.n; ++i) t.sequence.push_back(egf ? Poly(s[i] * Rational(factorial(static_cast<unsigned>(i)))) : s[i]);
    return t;
  }
  if (task.contains("cf")) {
    t.kind = "cf";
    t.n = detail::order_from(task, 8);
    t.bindings = detail::bindings_from_json(task.value("bindings", Json()));
    t.cf = task.at("cf");
    Series<Poly> s = bsf_series(detail::cf_from_json(t.cf, t.bindings, t.n), t.n);
    for (std::size_t i = 0; i <= t.n; ++i) t.sequence.push_back(s[i]);
    return t;
  }
  if (task.contains("cycle_index")) {
    t.kind = "cycle_index";
    t.n = detail::order_from(task, 10);
    const auto& ci = task.at("cycle_index");
    CycleIndex c = ci.contains("lambdas") ? cycle_index_from_lambdas(detail::rationals_from_json(ci.at("lambdas")), t.n)
                                          : cycle_index(detail::rationals_from_json(ci.at("xs")), t.n);
    for (const auto& a : c.a) t.sequence.push_back(Poly(a));
    return t;
  }
  throw parse_error("task names no target (family, era, sequence, series, cf, cycle_index)");
}

// ---------------------------------------------------------------------------
// Checks

struct CheckResult {
  Certificate cert;
  /// Re-derives the witness of a (possibly reloaded) failing certificate from
  /// the rebuilt target; true iff it is confirmed.
  std::function<bool(const Certificate&)> recheck;
};

namespace detail {

inline unsigned uint_field(const Json& check, const char* key, unsigned fallback) {
  if (!check.contains(key)) return fallback;
  const auto& v = check.at(key);
  if (!v.is_number_integer() || v.get<long>() < 0) throw parse_error(std::string(key) + " must be a nonnegative integer");
  return v.get<unsigned>();
}

inline Poly substitute_all(Poly p, const std::map<std::string, Rational>& at) {
  for (const auto& [k, v] : at) p = p.substitute(k, v);
  return p.compact();
}

inline std::map<std::string, Rational> at_from_json(const Json& check) {
  std::map<std::string, Rational> out;
  if (check.contains("at"))
    for (const auto& [k, v] : check.at("at").items()) out[k] = rational_from_json(v);
  return out;
}

inline std::vector<Poly> check_sequence(const Target& t, const Json& check) {
  auto at = at_from_json(check);
  std::vector<Poly> seq = t.sequence;
  if (check.value("reciprocal", false)) seq = reciprocal_seq(seq, "q");
  for (auto& p : seq) p = substitute_all(p, at);
  return seq;
}

inline PolyMatrix check_triangle(const Target& t, const Json& check) {
  if (!t.triangle) throw domain_error("check '" + check.at("kind").get<std::string>() + "' needs a triangle target");
  auto at = at_from_json(check);
  std::size_t size = check.contains("size") ? uint_field(check, "size", 0) : t.triangle->size();
  if (size == 0 || size > t.triangle->size()) throw domain_error("check size out of range");
  PolyMatrix m = t.triangle->entries.block(0, 0, size, size);
  for (std::size_t i = 0; i < size; ++i)
    for (std::size_t j = 0; j < size; ++j) m(i, j) = substitute_all(m(i, j), at);
  return m;
}

// The rows of every window of a sweep stacked into one matrix: entry (s+i, j) = a_{s+i+j}.
inline PolyMatrix window_matrix(const std::vector<Poly>& seq, std::size_t window) {
  const std::size_t rows = seq.size() - window + 1;
  PolyMatrix m(rows, window);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < window; ++j) m(i, j) = seq[i + j];
  return m;
}

inline std::function<bool(const Certificate&)> minor_recheck(PolyMatrix m) {
  return [m = std::move(m)](const Certificate& c) { return revalidate(m, c); };
}

inline bool poly_equal(const Poly& a, const Poly& b) { return a == b; }

}  // namespace detail

/// Runs one check against a target. Most checks produce one certificate; sm-probe produces many.
inline std::vector<CheckResult> run_check(const Target& t, const Json& check) {
  if (!check.is_object() || !check.contains("kind")) throw parse_error("a check must be an object with a kind");
  const std::string kind = check.at("kind").get<std::string>();
  const unsigned r = detail::uint_field(check, "r", 2);
  std::vector<CheckResult> out;
  auto finish = [&](Certificate c, std::function<bool(const Certificate&)> recheck) {
    for (const auto& [k, v] : detail::bindings_report(t.bindings)) c.bindings.try_emplace(k, v);
    for (const auto& [k, v] : detail::at_from_json(check)) c.bindings["at:" + k] = to_string(v);
    out.push_back({std::move(c), std::move(recheck)});
  };

  if (kind == "tp" || kind == "coeffwise-tp") {
    PolyMatrix m = detail::check_triangle(t, check);
    finish(check_minors(m, r, kind), detail::minor_recheck(m));
  } else if (kind == "hankel" || kind == "coeffwise-hankel" || kind == "sm") {
    auto seq = detail::check_sequence(t, check);
    if (check.contains("window")) {
      const std::size_t w = detail::uint_field(check, "window", 1);
      Certificate c = hankel_window_sweep(seq, w, r);
      c.property = kind + "-window";
      finish(std::move(c), detail::minor_recheck(detail::window_matrix(seq, w)));
    } else {
      const std::size_t size = check.contains("size") ? detail::uint_field(check, "size", 1) : (seq.size() + 1) / 2;
      if (size == 0) throw domain_error("hankel size must be positive");
      PolyMatrix m = hankel(seq, size - 1);
      finish(check_minors(m, r, kind), detail::minor_recheck(m));
    }
  } else if (kind == "toeplitz" || kind == "pf") {
    auto seq = detail::check_sequence(t, check);
    const std::size_t size = check.contains("size") ? detail::uint_field(check, "size", 1) : seq.size();
    if (size == 0) throw domain_error("toeplitz size must be positive");
    PolyMatrix m = toeplitz(seq, size - 1);
    finish(check_minors(m, r, kind), detail::minor_recheck(m));
  } else if (kind == "klogconvex") {
    auto seq = detail::check_sequence(t, check);
    const unsigned k = detail::uint_field(check, "k", 1);
    finish(is_k_log_convex(seq, k), [seq](const Certificate& c) {
      if (!c.witness || c.witness->rows.size() != 1 || c.witness->cols.size() != 1) return false;
      std::vector<Poly> cur = seq;
      for (std::size_t m = 0; m < c.witness->rows[0]; ++m) cur = lcx_operator(cur);
      const std::size_t i = c.witness->cols[0];
      return i < cur.size() && cur[i] == c.witness->value && cur[i].first_negative_term().has_value();
    });
  } else if (kind == "production") {
    std::optional<ExpRiordan<Poly>> era = t.era;
    if (!era && t.family) era = family_era(*t.family);
    if (!era) throw domain_error("production check needs a target with an exponential Riordan array");
    const bool scaled = check.value("scaled", false);
    const std::size_t n = era->order();
    PolyMatrix tri = scaled ? era->scaled_triangle(n) : era->triangle(n);
    PolyMatrix diff = tri.block(1, 0, n, n);
    PolyMatrix rp = tri.block(0, 0, n, n) * production_matrix(*era, scaled);
    Certificate c;
    c.property = scaled ? "production-identity-scaled" : "production-identity";
    c.rows = c.cols = n;
    c.note = "exact identity on the truncation";
    for (std::size_t i = 0; i < n && c.pass; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (!(diff(i, j) == rp(i, j))) {
          c.pass = false;
          c.witness = Witness{{i + 1}, {j}, diff(i, j) - rp(i, j), std::nullopt};
          break;
        }
    finish(std::move(c), [diff, rp](const Certificate& w) {
      if (!w.witness || w.witness->rows.empty() || w.witness->cols.empty() || w.witness->rows[0] == 0) return false;
      const std::size_t i = w.witness->rows[0] - 1, j = w.witness->cols[0];
      if (i >= diff.rows() || j >= diff.cols()) return false;
      Poly d = diff(i, j) - rp(i, j);
      return !d.is_zero() && d == w.witness->value;
    });
  } else if (kind == "realizations") {
    if (!t.family) throw domain_error("realizations check needs a family target");
    FamilySpec spec = *t.family;
    finish(cross_validate(spec), [spec](const Certificate& c) {
      if (!c.witness || !c.bindings.count("left") || !c.bindings.count("right")) return false;
      Triangle a = build_family(spec, parse_realization(c.bindings.at("left")));
      Triangle b = build_family(spec, parse_realization(c.bindings.at("right")));
      const std::size_t n = c.witness->rows.at(0), k = c.witness->cols.at(0);
      if (n >= a.size() || n >= b.size()) return false;
      Poly d = a.entries(n, k) - b.entries(n, k);
      return !d.is_zero() && d == c.witness->value;
    });
  } else if (kind == "real-roots") {
    if (!t.triangle) throw domain_error("real-roots check needs a triangle target");
    Rational lambda = check.contains("lambda") ? rational_from_json(check.at("lambda")) : Rational(0);
    Triangle tri = *t.triangle;
    tri.entries = detail::check_triangle(t, check);
    Certificate c = real_roots_check(tri, lambda);
    auto rows = tri.row_polys("q");
    finish(std::move(c), [rows, lambda](const Certificate& w) {
      if (!w.witness || w.witness->rows.empty()) return false;
      const std::size_t n = w.witness->rows[0];
      if (n >= rows.size() || !(rows[n] == w.witness->value)) return false;
      UniPoly p = UniPoly::from_poly(rows[n], "q");
      return real_root_count_with_multiplicity(p, ExtRational::neg_inf(), ExtRational::finite(-lambda)) != p.degree();
    });
  } else if (kind == "sm-probe") {
    if (!t.triangle) throw domain_error("sm-probe check needs a triangle target");
    Json whole = check;
    whole.erase("size");
    PolyMatrix a = detail::check_triangle(t, whole);
    const std::size_t n = check.contains("size") ? detail::uint_field(check, "size", 1) - 1 : (a.rows() - 1) / 2;
    if (check.contains("size") && detail::uint_field(check, "size", 0) == 0) throw domain_error("sm-probe size must be positive");
    auto lib = sm_library(n, r);
    SMProbeReport rep = sm_preservation_probe(a, lib, n, r);
    for (auto& c : rep.hypothesis) {
      Rational q = parse_rational(c.bindings.at("q"));
      PolyMatrix h = to_poly_matrix(hankel(row_values(a, q, 2 * n + 1), n));
      finish(std::move(c), detail::minor_recheck(h));
    }
    for (auto& c : rep.pairs) {
      const SMSample* x = nullptr;
      const SMSample* y = nullptr;
      for (const auto& s : lib) {
        if (s.name == c.bindings.at("x")) x = &s;
        if (s.name == c.bindings.at("y")) y = &s;
      }
      PolyMatrix h = to_poly_matrix(hankel(a_convolution(a, x->terms, y->terms, 2 * n), n));
      finish(std::move(c), detail::minor_recheck(h));
    }
  } else if (kind == "cf-agreement") {
    if (t.kind != "cf") throw domain_error("cf-agreement check needs a cf target");
    auto params = detail::cf_production_params(t.cf, t.bindings);
    if (!params) throw domain_error("cf-agreement needs a named schedule");
    const auto& [nu, b, xs] = *params;
    Series<Poly> prod = bsf_series_via_production<Poly>(nu, b, xs, t.n);
    Certificate c;
    c.property = "cf-agreement";
    c.rows = t.n + 1;
    c.cols = 1;
    c.note = "recursive and production-matrix expansions, exact";
    for (std::size_t i = 0; i <= t.n; ++i)
      if (!(prod[i] == t.sequence[i])) {
        c.pass = false;
        c.witness = Witness{{i}, {0}, t.sequence[i] - prod[i], std::nullopt};
        break;
      }
    std::vector<Poly> seq = t.sequence;
    finish(std::move(c), [seq, prod](const Certificate& w) {
      if (!w.witness || w.witness->rows.empty()) return false;
      const std::size_t i = w.witness->rows[0];
      if (i >= seq.size()) return false;
      Poly d = seq[i] - prod[i];
      return !d.is_zero() && d == w.witness->value;
    });
  } else {
    throw parse_error("unknown check kind '" + kind + "'");
  }
  return out;
}

// ---------------------------------------------------------------------------
// Jobs

inline std::vector<Json> job_tasks(const Json& job) {
  if (job.is_array()) return job.get<std::vector<Json>>();
  if (job.is_object() && job.contains("tasks")) return job.at("tasks").get<std::vector<Json>>();
  if (job.is_object()) return {job};
  throw parse_error("a job must be a task object, an array of tasks, or {\"tasks\": [...]}");
}

namespace detail {

inline Json task_echo(const Json& task) {
  Json echo = task;
  echo.erase("checks");
  echo.erase("emit");
  return echo;
}

inline Json emit_data(const Target& t, const Json& task) {
  Json data = Json::object();
  if (!task.contains("emit")) return data;
  for (const auto& e : task.at("emit")) {
    const std::string what = e.get<std::string>();
    if (what == "triangle") {
      if (!t.triangle) throw domain_error("emit triangle needs a triangle target");
      data["triangle"] = matrix_to_json(t.triangle->entries);
    } else if (what == "row_polys" || what == "sequence") {
      data[what] = sequence_to_json(t.sequence);
    } else if (what == "production_matrix") {
      std::optional<ExpRiordan<Poly>> era = t.era;
      if (!era && t.family) era = family_era(*t.family);
      if (!era) throw domain_error("emit production_matrix needs an exponential Riordan array");
      data["production_matrix"] = matrix_to_json(production_matrix(*era));
    } else {
      throw parse_error("unknown emit item '" + what + "'");
    }
  }
  return data;
}

}  // namespace detail

struct JobRun {
  Json report;
  /// rechecks[task][check][certificate]
  std::vector<std::vector<std::vector<std::function<bool(const Certificate&)>>>> rechecks;
  bool all_pass = true;
};

/// Runs every task; parse_error and domain_error propagate to the caller.
inline JobRun run_job(const Json& job) {
  JobRun run;
  Json tasks = Json::array();
  std::size_t total = 0, failed = 0;
  const auto list = job_tasks(job);
  for (std::size_t ti = 0; ti < list.size(); ++ti) {
    const Json& task = list[ti];
    Target t = build_target(task);
    Json checks = Json::array();
    run.rechecks.emplace_back();
    for (const auto& check : task.value("checks", Json::array())) {
      Json certs = Json::array();
      run.rechecks.back().emplace_back();
      for (auto& res : run_check(t, check)) {
        ++total;
        if (!res.cert.pass) {
          ++failed;
          run.all_pass = false;
        }
        certs.push_back(to_json(res.cert));
        run.rechecks.back().back().push_back(std::move(res.recheck));
      }
      checks.push_back({{"check", check}, {"certificates", certs}});
    }
    Json entry{{"index", ti}, {"target", detail::task_echo(task)}, {"checks", checks}};
    Json data = detail::emit_data(t, task);
    if (!data.empty()) entry["data"] = data;
    tasks.push_back(entry);
  }
  run.report = {{"schema", kReportSchema},
                {"tasks", tasks},
                {"summary", {{"certificates", total}, {"failed", failed}, {"verdict", failed ? "fail" : "pass"}}}};
  return run;
}

struct RevalidationResult {
  std::size_t checked = 0;
  std::size_t confirmed = 0;
  std::vector<std::string> problems;
  bool ok() const { return problems.empty(); }
};

/// Rebuilds every target of the job and re-derives each failing witness in the
/// report from scratch. Passing certificates must carry no witness.
inline RevalidationResult revalidate_report(const Json& job, const Json& report) {
  if (report.value("schema", std::string()) != kReportSchema) throw parse_error("report schema is not " + std::string(kReportSchema));
  JobRun fresh = run_job(job);
  RevalidationResult res;
  const auto& tasks = report.at("tasks");
  if (tasks.size() != fresh.rechecks.size()) throw parse_error("report and job disagree on the number of tasks");
  for (std::size_t ti = 0; ti < tasks.size(); ++ti) {
    const auto& checks = tasks[ti].at("checks");
    if (checks.size() != fresh.rechecks[ti].size()) throw parse_error("report and job disagree on checks of task " + std::to_string(ti));
    for (std::size_t ci = 0; ci < checks.size(); ++ci) {
      const auto& certs = checks[ci].at("certificates");
      if (certs.size() != fresh.rechecks[ti][ci].size())
        throw parse_error("report and job disagree on certificates of task " + std::to_string(ti) + " check " + std::to_string(ci));
      for (std::size_t k = 0; k < certs.size(); ++k) {
        Certificate c = certificate_from_json(certs[k]);
        const std::string where = "task " + std::to_string(ti) + " check " + std::to_string(ci) + " certificate " + std::to_string(k);
        if (c.pass) {
          if (c.witness) res.problems.push_back(where + ": passing certificate carries a witness");
          continue;
        }
        ++res.checked;
        if (fresh.rechecks[ti][ci][k](c))
          ++res.confirmed;
        else
          res.problems.push_back(where + ": witness does not re-validate");
      }
    }
  }
  return res;
}

}  // namespace rtp
