#pragma once

// m-branched Stieltjes-type continued fractions
//
//   f_k(t) = 1 / (1 - alpha_{m+k} t f_{k+1}(t) ... f_{k+m}(t)),   answer f_0,
//
// evaluated two ways: a memoized recursion truncated by t-weight, and powers of
// a production matrix built from bidiagonal factors.

#include <cstddef>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "rtp/matrix.hpp"
#include "rtp/poly.hpp"
#include "rtp/rational.hpp"
#include "rtp/series.hpp"

namespace rtp {

template <class R>
struct BranchedSF {
  std::size_t m = 1;
  std::vector<R> alpha;  // alpha[j] = alpha_{m+j}
};

/// Number of coefficients alpha_m, alpha_{m+1}, ... consulted for an order-N expansion.
inline std::size_t bsf_coefficients_needed(std::size_t m, std::size_t n) { return n == 0 ? 0 : m * (n - 1) + 1; }

namespace detail {

template <class R>
class BsfEvaluator {
 public:
  explicit BsfEvaluator(const BranchedSF<R>& b) : b_(b) {}

  // f_k through order n. A factor alpha t contributes one unit of t-weight, so
  // the children are only needed through order n - 1.
  const Series<R>& eval(std::size_t k, std::size_t n) {
    auto key = std::make_pair(k, n);
    auto it = memo_.find(key);
    if (it != memo_.end()) return it->second;
    Series<R> out = Series<R>::constant(R(1), n);
    if (n > 0 && !is_zero(b_.alpha[k])) {
      Series<R> prod = Series<R>::constant(R(1), n - 1);
      for (std::size_t i = 1; i <= b_.m; ++i) prod = prod * eval(k + i, n - 1);
      Series<R> denom = Series<R>::constant(R(1), n);
      for (std::size_t j = 0; j < n; ++j) denom[j + 1] = R(-(b_.alpha[k] * prod[j]));
      out = inverse(denom);
    }
    return memo_.emplace(key, std::move(out)).first->second;
  }

 private:
  const BranchedSF<R>& b_;
  std::map<std::pair<std::size_t, std::size_t>, Series<R>> memo_;
};

}  // namespace detail

/// Order-N truncation of the branched continued fraction.
template <class R>
Series<R> bsf_series(const BranchedSF<R>& b, std::size_t n) {
  if (b.m < 1) throw domain_error("branched continued fraction needs m >= 1");
  const std::size_t need = bsf_coefficients_needed(b.m, n);
  if (b.alpha.size() < need)
    throw domain_error("branched continued fraction: need " + std::to_string(need) + " coefficients, have " + std::to_string(b.alpha.size()));
  detail::BsfEvaluator<R> ev(b);
  return ev.eval(0, n);
}

/// (nu, x_1..x_m, nu+b, 2x_1..2x_m, nu+2b, 3x_1..3x_m, ...), as many terms as requested.
template <class R>
std::vector<R> schedule_production(const R& nu, const R& b, const std::vector<R>& xs, std::size_t length) {
  if (xs.empty()) throw domain_error("schedule: need at least one x_i (m >= 1)");
  std::vector<R> out;
  out.reserve(length);
  for (std::size_t j = 0; out.size() < length; ++j) {
    out.push_back(R(nu + b * Rational(static_cast<unsigned long>(j))));
    for (std::size_t i = 0; i < xs.size() && out.size() < length; ++i) out.push_back(R(xs[i] * Rational(static_cast<unsigned long>(j + 1))));
  }
  return out;
}

/// Coefficients for sum_n S_n(f, e^{lambda f}; q) t^n when 1/fbar' = prod (1 + x_i t).
template <class R>
BranchedSF<R> schedule_sheffer(const R& lambda, const R& q, const std::vector<R>& xs, std::size_t n) {
  return {xs.size(), schedule_production<R>(R(lambda + q), R(0), xs, bsf_coefficients_needed(xs.size(), n))};
}

/// Coefficients for the reciprocal polynomials S*_n = q^n S_n(1/q).
template <class R>
BranchedSF<R> schedule_sheffer_star(const R& lambda, const R& q, const std::vector<R>& xs, std::size_t n) {
  std::vector<R> qxs;
  for (const auto& x : xs) qxs.push_back(R(q * x));
  return {xs.size(), schedule_production<R>(R(q * lambda + R(1)), R(0), qxs, bsf_coefficients_needed(xs.size(), n))};
}

/// Generalized Lah row polynomials at d = 0: m = a + 1,
/// (c(q+lambda), b..b, c(q+lambda), 2b..2b, ...).
template <class R>
BranchedSF<R> schedule_lah(std::size_t a, const R& b, const R& c, const R& lambda, const R& q, std::size_t n) {
  const std::size_t m = a + 1;
  return {m, schedule_production<R>(R(c * (q + lambda)), R(0), std::vector<R>(m, b), bsf_coefficients_needed(m, n))};
}

/// Reciprocal generalized Lah row polynomials at d = 0:
/// (c(1+q lambda), bq..bq, c(1+q lambda), 2bq..2bq, ...).
template <class R>
BranchedSF<R> schedule_lah_star(std::size_t a, const R& b, const R& c, const R& lambda, const R& q, std::size_t n) {
  const std::size_t m = a + 1;
  return {m, schedule_production<R>(R(c * (R(1) + q * lambda)), R(0), std::vector<R>(m, R(b * q)), bsf_coefficients_needed(m, n))};
}

/// The general schedule (nu, x.., nu+b, 2x.., ...).
template <class R>
BranchedSF<R> schedule_hankel(const R& nu, const R& b, const std::vector<R>& xs, std::size_t n) {
  return {xs.size(), schedule_production<R>(nu, b, xs, bsf_coefficients_needed(xs.size(), n))};
}

/// Size x size truncation of prod_i L(x_i) * U(nu, b), where L(x) is unit
/// lower-bidiagonal with subdiagonal (x, 2x, 3x, ...) and U(nu, b) is
/// upper-bidiagonal with diagonal (nu, nu+b, ...) and ones above it. The L
/// factors are lower triangular, so truncating before multiplying is exact.
template <class R>
Matrix<R> bsf_production_matrix(const R& nu, const R& b, const std::vector<R>& xs, std::size_t size) {
  if (xs.empty()) throw domain_error("bsf_production_matrix: need at least one x_i (m >= 1)");
  Matrix<R> u(size, size);
  for (std::size_t i = 0; i < size; ++i) {
    u(i, i) = R(nu + b * Rational(static_cast<unsigned long>(i)));
    if (i + 1 < size) u(i, i + 1) = R(1);
  }
  Matrix<R> p = Matrix<R>::identity(size);
  for (const auto& x : xs) {
    Matrix<R> l = Matrix<R>::identity(size);
    for (std::size_t i = 1; i < size; ++i) l(i, i - 1) = R(x * Rational(static_cast<unsigned long>(i)));
    p = p * l;
  }
  return p * u;
}

/// sum_n (P^n)_{0,0} t^n through order N. Only the first row of P^n is tracked.
template <class R>
Series<R> bsf_series_via_production(const R& nu, const R& b, const std::vector<R>& xs, std::size_t n) {
  const std::size_t size = n + 1;
  Matrix<R> p = bsf_production_matrix(nu, b, xs, size);
  Series<R> out(n);
  std::vector<R> row(size, R(0));
  row[0] = R(1);
  out[0] = R(1);
  for (std::size_t k = 1; k <= n; ++k) {
    std::vector<R> next(size, R(0));
    for (std::size_t i = 0; i < size; ++i) {
      if (is_zero(row[i])) continue;
      for (std::size_t j = 0; j < size; ++j)
        if (!is_zero(p(i, j))) next[j] += row[i] * p(i, j);
    }
    row = std::move(next);
    out[k] = row[0];
  }
  return out;
}

}  // namespace rtp
