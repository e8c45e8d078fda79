#pragma once

// Exponential Riordan arrays (g, f): column k has EGF g(t) f(t)^k / k!.

#include <cstddef>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

#include "rtp/matrix.hpp"
#include "rtp/poly.hpp"
#include "rtp/rational.hpp"
#include "rtp/series.hpp"

namespace rtp {

template <class R>
class ExpRiordan {
 public:
  ExpRiordan(Series<R> g, Series<R> f) : g_(std::move(g)), f_(std::move(f)) {
    if (g_.order() != f_.order()) {
      std::size_t n = std::min(g_.order(), f_.order());
      g_ = g_.truncate(n);
      f_ = f_.truncate(n);
    }
    if (!is_unit(g_[0])) throw domain_error("ExpRiordan: g(0) must be a unit");
    if (!is_zero(f_[0])) throw domain_error("ExpRiordan: f(0) must vanish");
  }

  const Series<R>& g() const { return g_; }
  const Series<R>& f() const { return f_; }
  std::size_t order() const { return g_.order(); }
  /// f'(0) is a unit, so f has a compositional inverse.
  bool proper() const { return order() >= 1 && is_unit(f_[1]); }

  /// (N+1) x (N+1) truncation with R_{n,k} = n!/k! [t^n] g f^k.
  Matrix<R> triangle(std::size_t n_max) const {
    require_order(n_max);
    FactorialTable fact(n_max);
    Matrix<R> out(n_max + 1, n_max + 1);
    Series<R> col = g_.truncate(n_max);
    Series<R> f = f_.truncate(n_max);
    for (std::size_t k = 0; k <= n_max; ++k) {
      for (std::size_t n = k; n <= n_max; ++n)
        if (!is_zero(col[n])) out(n, k) = col[n] * ratio(fact[n], fact[k]);
      col = col * f;
    }
    return out;
  }
  Matrix<R> triangle() const { return triangle(order()); }

  /// The k!-scaled array R_{n,k} k! = n! [t^n] g f^k.
  Matrix<R> scaled_triangle(std::size_t n_max) const {
    Matrix<R> t = triangle(n_max);
    FactorialTable fact(n_max);
    for (std::size_t n = 0; n <= n_max; ++n)
      for (std::size_t k = 0; k <= n; ++k) t(n, k) = t(n, k) * Rational(fact[k]);
    return t;
  }

  void require_proper(const char* what) const {
    if (!proper()) throw domain_error(std::string(what) + ": array is not proper (f'(0) is not a unit)");
  }

 private:
  void require_order(std::size_t n) const {
    if (n > order()) throw domain_error("ExpRiordan: requested size exceeds truncation order");
  }

  Series<R> g_;
  Series<R> f_;
};

/// (g, f) * (h, l) = (g h(f), l(f)).
template <class R>
ExpRiordan<R> multiply(const ExpRiordan<R>& a, const ExpRiordan<R>& b) {
  return ExpRiordan<R>(a.g() * compose(b.g(), a.f()), compose(b.f(), a.f()));
}

/// (g, f)^{-1} = (1 / g(fbar), fbar).
template <class R>
ExpRiordan<R> inverse(const ExpRiordan<R>& a) {
  a.require_proper("inverse");
  Series<R> fbar = revert(a.f());
  return ExpRiordan<R>(inverse(compose(a.g(), fbar)), fbar);
}

template <class R>
struct ZASequences {
  Series<R> z;
  Series<R> a;
};

/// Z = g'(fbar)/g(fbar), A = f'(fbar), both through order N-1.
template <class R>
ZASequences<R> za_sequences(const ExpRiordan<R>& r) {
  r.require_proper("za_sequences");
  const std::size_t n = r.order();
  Series<R> fbar = revert(r.f()).truncate(n - 1);
  Series<R> logderiv = div(derivative(r.g()), r.g().truncate(n - 1));
  return {compose(logderiv, fbar), compose(derivative(r.f()), fbar)};
}

/// Production matrix of size N x N (N = order): p_{i,j} = (i!/j!)(z_{i-j} + j a_{i-j+1}),
/// zero above the superdiagonal.
template <class R>
Matrix<R> production_matrix(const ExpRiordan<R>& r, bool scaled = false) {
  const auto za = za_sequences(r);
  const std::size_t n = r.order();
  FactorialTable fact(n);
  Matrix<R> p(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j <= i + 1 && j < n; ++j) {
      // z_{-1} = 0, and the j = 0 column never reads A.
      R v(0);
      if (j > 0) v = za.a[i + 1 - j] * Rational(static_cast<unsigned long>(j));
      if (j <= i) v += za.z[i - j];
      p(i, j) = scaled ? v : R(v * ratio(fact[i], fact[j]));
    }
  return p;
}

template <class R>
Matrix<R> scaled_production_matrix(const ExpRiordan<R>& r) {
  return production_matrix(r, true);
}

/// Checks that rows 1..N of the triangle equal (rows 0..N-1) * P on columns 0..N-1.
/// P is Hessenberg and the triangle is lower triangular, so the truncation is exact.
template <class R>
bool verify_production(const ExpRiordan<R>& r, bool scaled = false) {
  const std::size_t n = r.order();
  Matrix<R> tri = scaled ? r.scaled_triangle(n) : r.triangle(n);
  Matrix<R> p = production_matrix(r, scaled);
  Matrix<R> lhs = tri.block(1, 0, n, n);
  Matrix<R> rhs = tri.block(0, 0, n, n) * p;
  return lhs == rhs;
}

/// Row-generating polynomials R_n(q) = sum_k R_{n,k} q^k. The variable is added
/// to whatever indeterminates the entries already carry.
template <class R>
std::vector<Poly> row_polys(const Matrix<R>& tri, const std::string& var = "q") {
  VarList vars{var};
  for (std::size_t i = 0; i < tri.rows(); ++i)
    for (std::size_t j = 0; j < tri.cols(); ++j)
      if constexpr (std::is_same_v<R, Poly>)
        for (const auto& v : tri(i, j).vars()) vars.push_back(v);
  vars = canonical_vars(vars);
  const Poly q = Poly::variable(var, vars);
  std::vector<Poly> out;
  out.reserve(tri.rows());
  for (std::size_t n = 0; n < tri.rows(); ++n) {
    Poly acc = Poly(0).with_vars(vars);
    Poly qk = Poly(1).with_vars(vars);
    for (std::size_t k = 0; k < tri.cols(); ++k) {
      if (!is_zero(tri(n, k))) acc += to_poly(tri(n, k)).with_vars(vars) * qk;
      qk = qk * q;
    }
    out.push_back(std::move(acc));
  }
  return out;
}

/// A_{n,k} = R_{n,k} / n!.
template <class R>
Matrix<R> cycle_index_triangle(const Matrix<R>& tri) {
  Matrix<R> out = tri;
  FactorialTable fact(tri.rows());
  for (std::size_t n = 0; n < tri.rows(); ++n)
    for (std::size_t k = 0; k < tri.cols(); ++k) out(n, k) = tri(n, k) / Rational(fact[n]);
  return out;
}

inline ExpRiordan<Poly> to_poly_era(const ExpRiordan<Rational>& r) {
  return {to_poly_series(r.g()), to_poly_series(r.f())};
}

}  // namespace rtp
