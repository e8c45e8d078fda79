#pragma once

// Minor-based certification of total positivity and its relatives on finite
// truncations. A passing certificate is evidence at the checked size, never a
// statement about the infinite matrix.

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "rtp/matrix.hpp"
#include "rtp/poly.hpp"
#include "rtp/rational.hpp"

namespace rtp {

struct Witness {
  std::vector<std::size_t> rows;
  std::vector<std::size_t> cols;
  Poly value;
  /// For polynomial minors: the first monomial with a negative coefficient.
  std::optional<std::pair<Poly::Monomial, Rational>> negative_term;
};

struct Certificate {
  std::string property;
  std::size_t rows = 0;
  std::size_t cols = 0;
  unsigned r = 0;
  bool pass = true;
  std::optional<Witness> witness;
  std::map<std::string, std::string> bindings;
  std::string note = "desk-scale evidence";
};

namespace detail {

inline bool is_violation(const Rational& v) { return sgn(v) < 0; }
inline bool is_violation(const Poly& v) { return v.first_negative_term().has_value(); }

// Advances a sorted k-subset of {0..n-1} to its lexicographic successor.
inline bool next_combination(std::vector<std::size_t>& c, std::size_t n) {
  const std::size_t k = c.size();
  for (std::size_t i = k; i-- > 0;) {
    if (c[i] < n - k + i) {
      ++c[i];
      for (std::size_t j = i + 1; j < k; ++j) c[j] = c[j - 1] + 1;
      return true;
    }
  }
  return false;
}

inline std::vector<std::size_t> first_combination(std::size_t k) {
  std::vector<std::size_t> c(k);
  for (std::size_t i = 0; i < k; ++i) c[i] = i;
  return c;
}

template <class R>
Witness make_witness(std::vector<std::size_t> rows, std::vector<std::size_t> cols, const R& value) {
  Witness w{std::move(rows), std::move(cols), to_poly(value), std::nullopt};
  w.negative_term = w.value.first_negative_term();
  return w;
}

}  // namespace detail

/// Every minor of order <= r, in order of size, then row subset, then column
/// subset (both lexicographic). Stops at the first violation.
template <class R>
Certificate check_minors(const Matrix<R>& m, unsigned r, std::string property) {
  if (r < 1) throw domain_error("minor order r must be >= 1");
  Certificate cert;
  cert.property = std::move(property);
  cert.rows = m.rows();
  cert.cols = m.cols();
  cert.r = r;
  const std::size_t kmax = std::min<std::size_t>({r, m.rows(), m.cols()});
  for (std::size_t k = 1; k <= kmax; ++k) {
    auto rows = detail::first_combination(k);
    do {
      auto cols = detail::first_combination(k);
      do {
        R d = det_exact(m.submatrix(rows, cols));
        if (detail::is_violation(d)) {
          cert.pass = false;
          cert.witness = detail::make_witness(rows, cols, d);
          return cert;
        }
      } while (detail::next_combination(cols, m.cols()));
    } while (detail::next_combination(rows, m.rows()));
  }
  return cert;
}

inline Certificate is_tp_r(const RationalMatrix& m, unsigned r) { return check_minors(m, r, "tp"); }
inline Certificate is_coeffwise_tp_r(const PolyMatrix& m, unsigned r) { return check_minors(m, r, "coeffwise-tp"); }
inline Certificate is_tp_r(const PolyMatrix& m, unsigned r) { return is_coeffwise_tp_r(m, r); }

/// Recomputes the witness minor from the matrix and confirms it is a violation
/// with the recorded value.
template <class R>
bool revalidate(const Matrix<R>& m, const Certificate& cert) {
  if (cert.pass) return !cert.witness.has_value();
  if (!cert.witness) return false;
  const auto& w = *cert.witness;
  for (auto i : w.rows)
    if (i >= m.rows()) return false;
  for (auto j : w.cols)
    if (j >= m.cols()) return false;
  R d = det_exact(m.submatrix(w.rows, w.cols));
  return detail::is_violation(d) && to_poly(d) == w.value;
}

/// (N+1) x (N+1) Toeplitz matrix [a_{i-j}] with a_{i-j} = 0 for i < j.
template <class R>
Matrix<R> toeplitz(const std::vector<R>& seq, std::size_t n) {
  if (seq.size() < n + 1) throw domain_error("toeplitz: need at least N+1 terms");
  Matrix<R> out(n + 1, n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= i; ++j) out(i, j) = seq[i - j];
  return out;
}

/// (N+1) x (N+1) Hankel matrix [a_{i+j+shift}].
template <class R>
Matrix<R> hankel(const std::vector<R>& seq, std::size_t n, std::size_t shift = 0) {
  if (seq.size() < 2 * n + 1 + shift) throw domain_error("hankel: need at least 2N+1 terms past the shift");
  Matrix<R> out(n + 1, n + 1);
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t j = 0; j <= n; ++j) out(i, j) = seq[i + j + shift];
  return out;
}

template <class R>
Matrix<R> hankel_shifted(const std::vector<R>& seq, std::size_t n) {
  return hankel(seq, n, 1);
}

template <class R>
Certificate is_pf_r(const std::vector<R>& seq, std::size_t n, unsigned r) {
  Certificate c = check_minors(toeplitz(seq, n), r, "pf");
  return c;
}

template <class R>
Certificate is_sm_r(const std::vector<R>& seq, std::size_t n, unsigned r) {
  return check_minors(hankel(seq, n), r, "sm");
}

/// Checks every window x window block of the Hankel matrix that the sequence
/// determines. A block at rows s.., cols u.. depends only on s + u, so one
/// window per shift covers all of them. Witness rows carry the shift.
template <class R>
Certificate hankel_window_sweep(const std::vector<R>& seq, std::size_t window, unsigned r) {
  if (window == 0 || seq.size() < 2 * window - 1) throw domain_error("hankel_window_sweep: sequence too short");
  Certificate agg;
  agg.property = "hankel-window-sweep";
  agg.rows = agg.cols = window;
  agg.r = r;
  for (std::size_t shift = 0; shift + 2 * window - 2 < seq.size(); ++shift) {
    Certificate c = check_minors(hankel(seq, window - 1, shift), r, agg.property);
    if (!c.pass) {
      for (auto& i : c.witness->rows) i += shift;
      agg.pass = false;
      agg.witness = std::move(c.witness);
      return agg;
    }
  }
  agg.note = "desk-scale evidence; windows at shifts 0.." + std::to_string(seq.size() - 2 * window + 1);
  return agg;
}

/// L[a]_i = a_{i-1} a_{i+1} - a_i^2 for the interior indices; the result is two shorter.
template <class R>
std::vector<R> lcx_operator(const std::vector<R>& seq) {
  if (seq.size() < 3) return {};
  std::vector<R> out;
  out.reserve(seq.size() - 2);
  for (std::size_t i = 1; i + 1 < seq.size(); ++i) out.push_back(R(seq[i - 1] * seq[i + 1] - seq[i] * seq[i]));
  return out;
}

/// Passes iff L^m(seq) is coefficientwise nonnegative for m = 1..k.
/// Witness: rows = {m}, cols = {index into L^m}.
template <class R>
Certificate is_k_log_convex(const std::vector<R>& seq, unsigned k) {
  if (seq.size() < 2 * static_cast<std::size_t>(k) + 1) throw domain_error("is_k_log_convex: need at least 2k+1 terms");
  Certificate cert;
  cert.property = "k-log-convex";
  cert.rows = seq.size();
  cert.cols = 1;
  cert.r = k;
  std::vector<R> cur = seq;
  for (unsigned m = 1; m <= k; ++m) {
    cur = lcx_operator(cur);
    for (std::size_t i = 0; i < cur.size(); ++i)
      if (detail::is_violation(cur[i])) {
        cert.pass = false;
        cert.witness = detail::make_witness<R>({m}, {i}, cur[i]);
        return cert;
      }
  }
  return cert;
}

/// q^n P_n(1/q) for each n.
inline std::vector<Poly> reciprocal_seq(const std::vector<Poly>& seq, const std::string& var = "q") {
  std::vector<Poly> out;
  out.reserve(seq.size());
  for (std::size_t n = 0; n < seq.size(); ++n) {
    VarList vars = seq[n].vars();
    vars.push_back(var);
    vars = canonical_vars(vars);
    Poly p = seq[n].with_vars(vars);
    const std::size_t idx = static_cast<std::size_t>(std::find(vars.begin(), vars.end(), var) - vars.begin());
    std::vector<std::pair<Poly::Monomial, Rational>> terms;
    for (const auto& [mono, c] : p.terms()) {
      if (mono[idx] > n) throw domain_error("reciprocal_seq: degree of entry " + std::to_string(n) + " exceeds its index");
      Poly::Monomial m2 = mono;
      m2[idx] = static_cast<unsigned>(n) - mono[idx];
      terms.emplace_back(std::move(m2), c);
    }
    out.push_back(Poly::from_terms(vars, terms));
  }
  return out;
}

/// Entry (n, k) becomes c_n d_k M_{n,k}; c and d must be strictly positive.
template <class R>
Matrix<R> diag_scale(const Matrix<R>& m, const std::vector<Rational>& c, const std::vector<Rational>& d) {
  if (c.size() < m.rows() || d.size() < m.cols()) throw domain_error("diag_scale: scale vectors too short");
  for (const auto& x : c)
    if (sgn(x) <= 0) throw domain_error("diag_scale: row scales must be positive");
  for (const auto& x : d)
    if (sgn(x) <= 0) throw domain_error("diag_scale: column scales must be positive");
  Matrix<R> out = m;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = m(i, j) * Rational(c[i] * d[j]);
  return out;
}

inline std::vector<Rational> factorial_scales(std::size_t n) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < n; ++i) out.emplace_back(factorial(static_cast<unsigned>(i)));
  return out;
}
inline std::vector<Rational> inverse_factorial_scales(std::size_t n) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(Rational(1) / Rational(factorial(static_cast<unsigned>(i))));
  return out;
}

}  // namespace rtp
