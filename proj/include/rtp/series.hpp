#pragma once

// Truncated formal power series c_0 + c_1 t + ... + c_N t^N over Rational or Poly.
//
// Binary operations truncate to the smaller order. Nothing beyond t^N is ever
// read, so every identity here is exact through the stated order.

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "rtp/poly.hpp"
#include "rtp/rational.hpp"

namespace rtp {

/// Constant-term test used by division, log and pow: a unit is a nonzero
/// rational, or a nonzero constant polynomial.
inline bool is_unit(const Rational& r) { return !is_zero(r); }
inline bool is_unit(const Poly& p) { return p.is_constant() && !p.is_zero(); }
inline Rational unit_inverse(const Rational& r) { return Rational(1) / r; }
inline Poly unit_inverse(const Poly& p) {
  if (!is_unit(p)) throw domain_error("not a unit: " + p.to_string());
  return Poly(Rational(1) / p.constant_term());
}
inline bool is_one(const Rational& r) { return r == 1; }
inline bool is_one(const Poly& p) { return p.is_constant() && p.constant_term() == 1; }

template <class R>
class Series {
 public:
  Series() : c_(1, R(0)) {}
  explicit Series(std::size_t order) : c_(order + 1, R(0)) {}
  Series(std::vector<R> coeffs) : c_(std::move(coeffs)) {  // NOLINT(google-explicit-constructor)
    if (c_.empty()) throw domain_error("series needs at least one coefficient");
  }

  static Series constant(const R& c, std::size_t order) {
    Series s(order);
    s.c_[0] = c;
    return s;
  }
  /// The series t (zero when order is 0).
  static Series t(std::size_t order) {
    Series s(order);
    if (order >= 1) s.c_[1] = R(1);
    return s;
  }
  /// sum_j coeffs[j] t^j / j!
  static Series from_egf(const std::vector<R>& egf, std::size_t order) {
    Series s(order);
    for (std::size_t j = 0; j <= order && j < egf.size(); ++j) s.c_[j] = egf[j] / Rational(factorial(static_cast<unsigned>(j)));
    return s;
  }

  std::size_t order() const { return c_.size() - 1; }
  const R& operator[](std::size_t i) const { return c_[i]; }
  R& operator[](std::size_t i) { return c_[i]; }
  const std::vector<R>& coeffs() const { return c_; }

  Series truncate(std::size_t order) const {
    Series s(order);
    for (std::size_t i = 0; i <= std::min(order, this->order()); ++i) s.c_[i] = c_[i];
    return s;
  }

  Series operator-() const {
    Series s = *this;
    for (auto& x : s.c_) x = -x;
    return s;
  }

  friend Series operator+(const Series& a, const Series& b) {
    Series s(std::min(a.order(), b.order()));
    for (std::size_t i = 0; i <= s.order(); ++i) s.c_[i] = a.c_[i] + b.c_[i];
    return s;
  }
  friend Series operator-(const Series& a, const Series& b) {
    Series s(std::min(a.order(), b.order()));
    for (std::size_t i = 0; i <= s.order(); ++i) s.c_[i] = a.c_[i] - b.c_[i];
    return s;
  }
  friend Series operator*(const Series& a, const Series& b) {
    Series s(std::min(a.order(), b.order()));
    const std::size_t n = s.order();
    for (std::size_t i = 0; i <= n; ++i) {
      if (is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; i + j <= n; ++j)
        if (!is_zero(b.c_[j])) s.c_[i + j] += a.c_[i] * b.c_[j];
    }
    return s;
  }
  friend Series operator*(const Series& a, const R& k) {
    Series s = a;
    for (auto& x : s.c_) x = x * k;
    return s;
  }
  friend Series operator*(const R& k, const Series& a) { return a * k; }

  friend bool operator==(const Series& a, const Series& b) {
    const std::size_t n = std::min(a.order(), b.order());
    for (std::size_t i = 0; i <= n; ++i)
      if (!(a.c_[i] == b.c_[i])) return false;
    return true;
  }

  Series& operator+=(const Series& o) { return *this = *this + o; }
  Series& operator*=(const Series& o) { return *this = *this * o; }

 private:
  std::vector<R> c_;
};

template <class R>
Series<R> derivative(const Series<R>& s) {
  if (s.order() == 0) return Series<R>(0);
  Series<R> d(s.order() - 1);
  for (std::size_t i = 1; i <= s.order(); ++i) d[i - 1] = s[i] * Rational(static_cast<unsigned long>(i));
  return d;
}

/// Antiderivative with zero constant term; the order goes up by one.
template <class R>
Series<R> integral(const Series<R>& s) {
  Series<R> out(s.order() + 1);
  for (std::size_t i = 0; i <= s.order(); ++i) out[i + 1] = s[i] / Rational(static_cast<unsigned long>(i + 1));
  return out;
}

template <class R>
Series<R> inverse(const Series<R>& b) {
  if (!is_unit(b[0])) throw domain_error("series inverse: constant term is not a unit");
  const R inv0 = unit_inverse(b[0]);
  Series<R> out(b.order());
  out[0] = inv0;
  for (std::size_t n = 1; n <= b.order(); ++n) {
    R acc(0);
    for (std::size_t k = 1; k <= n; ++k)
      if (!is_zero(b[k])) acc += b[k] * out[n - k];
    out[n] = -(acc * inv0);
  }
  return out;
}

/// a / b; b must have a unit constant term.
template <class R>
Series<R> div(const Series<R>& a, const Series<R>& b) {
  return a * inverse(b);
}

/// outer(inner(t)) by Horner; inner must have zero constant term.
template <class R>
Series<R> compose(const Series<R>& outer, const Series<R>& inner) {
  if (!is_zero(inner[0])) throw domain_error("compose: inner series has nonzero constant term");
  const std::size_t n = std::min(outer.order(), inner.order());
  Series<R> acc = Series<R>::constant(outer[n], n);
  Series<R> in = inner.truncate(n);
  for (std::size_t k = n; k-- > 0;) {
    acc = acc * in;
    acc[0] += outer[k];
  }
  return acc;
}

template <class R>
Series<R> pow_int(const Series<R>& s, unsigned e) {
  Series<R> out = Series<R>::constant(R(1), s.order());
  Series<R> base = s;
  while (e) {
    if (e & 1U) out = out * base;
    e >>= 1U;
    if (e) base = base * base;
  }
  return out;
}

/// Compositional inverse by Lagrange inversion: [t^n] fbar = (1/n) [u^{n-1}] (u/f(u))^n.
template <class R>
Series<R> revert(const Series<R>& f) {
  if (!is_zero(f[0])) throw domain_error("revert: f(0) != 0");
  if (f.order() < 1 || !is_unit(f[1])) throw domain_error("revert: f'(0) is not a unit");
  const std::size_t n = f.order();
  // h = f(u)/u through order n-1
  Series<R> h(n - 1);
  for (std::size_t i = 0; i + 1 <= n; ++i) h[i] = f[i + 1];
  Series<R> g = inverse(h);
  Series<R> out(n);
  Series<R> gp = Series<R>::constant(R(1), n - 1);
  for (std::size_t k = 1; k <= n; ++k) {
    gp = gp * g;
    out[k] = gp[k - 1] / Rational(static_cast<unsigned long>(k));
  }
  return out;
}

/// exp(f) for f(0) = 0 via n e_n = sum_k k f_k e_{n-k}.
template <class R>
Series<R> exp_series(const Series<R>& f) {
  if (!is_zero(f[0])) throw domain_error("exp_series: f(0) != 0");
  Series<R> e(f.order());
  e[0] = R(1);
  for (std::size_t n = 1; n <= f.order(); ++n) {
    R acc(0);
    for (std::size_t k = 1; k <= n; ++k)
      if (!is_zero(f[k])) acc += f[k] * e[n - k] * Rational(static_cast<unsigned long>(k));
    e[n] = acc / Rational(static_cast<unsigned long>(n));
  }
  return e;
}

/// log(g) for g(0) = 1, as the antiderivative of g'/g.
template <class R>
Series<R> log_series(const Series<R>& g) {
  if (!is_one(g[0])) throw domain_error("log_series: g(0) != 1");
  if (g.order() == 0) return Series<R>(0);
  Series<R> ratio = derivative(g) * inverse(g.truncate(g.order() - 1));
  return integral(ratio);
}

/// g^e = exp(e log g), g(0) = 1.
template <class R>
Series<R> pow_rational(const Series<R>& g, const Rational& e) {
  if (!is_one(g[0])) throw domain_error("pow_rational: g(0) != 1");
  return exp_series(log_series(g) * R(e));
}

/// n! [t^n] s
template <class R>
R egf_coeff(const Series<R>& s, std::size_t n) {
  if (n > s.order()) throw domain_error("egf_coeff: index beyond truncation order");
  return s[n] * Rational(factorial(static_cast<unsigned>(n)));
}

inline Series<Poly> to_poly_series(const Series<Rational>& s) {
  Series<Poly> out(s.order());
  for (std::size_t i = 0; i <= s.order(); ++i) out[i] = Poly(s[i]);
  return out;
}
inline const Series<Poly>& to_poly_series(const Series<Poly>& s) { return s; }

inline Series<Rational> to_rational_series(const Series<Poly>& s) {
  Series<Rational> out(s.order());
  for (std::size_t i = 0; i <= s.order(); ++i) out[i] = poly_to_rational(s[i]);
  return out;
}

/// Common named series.
template <class R = Rational>
Series<R> exp_t(std::size_t order, const Rational& scale = 1) {
  Series<R> s(order);
  Rational p = 1;
  for (std::size_t i = 0; i <= order; ++i) {
    s[i] = R(p / Rational(factorial(static_cast<unsigned>(i))));
    p *= scale;
  }
  return s;
}

/// (1 + a t)^e for rational a, e.
template <class R = Rational>
Series<R> binomial_series(const Rational& a, const Rational& e, std::size_t order) {
  Series<R> s(order);
  Rational p = 1;
  for (std::size_t i = 0; i <= order; ++i) {
    s[i] = R(binomial_rational(e, static_cast<unsigned>(i)) * p);
    p *= a;
  }
  return s;
}

}  // namespace rtp
