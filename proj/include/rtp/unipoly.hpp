#pragma once

// Univariate polynomials over Q and exact real-root counting.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "rtp/poly.hpp"
#include "rtp/rational.hpp"

namespace rtp {

/// Coefficients lowest degree first; trailing zeros are trimmed.
class UniPoly {
 public:
  UniPoly() = default;
  explicit UniPoly(std::vector<Rational> coeffs) : c_(std::move(coeffs)) { trim(); }

  /// Reads a polynomial in a single variable (other variables must be absent).
  static UniPoly from_poly(const Poly& p, const std::string& var) {
    std::vector<Rational> c(p.degree_in(var) + 1, Rational(0));
    for (std::size_t k = 0; k < c.size(); ++k) {
      Poly part = p.coeff_of(var, static_cast<unsigned>(k));
      if (!part.is_constant()) throw domain_error("UniPoly: polynomial has variables besides '" + var + "'");
      c[k] = part.constant_term();
    }
    return UniPoly(std::move(c));
  }

  bool is_zero() const { return c_.empty(); }
  int degree() const { return static_cast<int>(c_.size()) - 1; }
  const std::vector<Rational>& coeffs() const { return c_; }
  const Rational& lead() const { return c_.back(); }
  Rational operator[](std::size_t i) const { return i < c_.size() ? c_[i] : Rational(0); }

  Rational operator()(const Rational& x) const {
    Rational acc = 0;
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + *it;
    return acc;
  }

  UniPoly derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<Rational> d(c_.size() - 1);
    for (std::size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<unsigned long>(i);
    return UniPoly(std::move(d));
  }

  friend UniPoly operator*(const UniPoly& a, const UniPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<Rational> out(a.c_.size() + b.c_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) out[i + j] += a.c_[i] * b.c_[j];
    return UniPoly(std::move(out));
  }

  friend UniPoly operator-(const UniPoly& a, const UniPoly& b) {
    std::vector<Rational> out(std::max(a.c_.size(), b.c_.size()), Rational(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i) out[i] += a.c_[i];
    for (std::size_t i = 0; i < b.c_.size(); ++i) out[i] -= b.c_[i];
    return UniPoly(std::move(out));
  }

  friend bool operator==(const UniPoly&, const UniPoly&) = default;

  /// Euclidean division: returns (quotient, remainder).
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& d) const {
    if (d.is_zero()) throw domain_error("UniPoly division by zero");
    std::vector<Rational> rem = c_;
    if (degree() < d.degree()) return {UniPoly{}, *this};
    std::vector<Rational> quot(static_cast<std::size_t>(degree() - d.degree() + 1), Rational(0));
    for (int i = degree(); i >= d.degree(); --i) {
      Rational coef = rem[static_cast<std::size_t>(i)] / d.lead();
      std::size_t shift = static_cast<std::size_t>(i - d.degree());
      quot[shift] = coef;
      for (std::size_t j = 0; j < d.c_.size(); ++j) rem[shift + j] -= coef * d.c_[j];
    }
    return {UniPoly(std::move(quot)), UniPoly(std::move(rem))};
  }

  UniPoly monic() const {
    if (is_zero()) return {};
    std::vector<Rational> out = c_;
    Rational l = lead();
    for (auto& x : out) x /= l;
    return UniPoly(std::move(out));
  }

 private:
  void trim() {
    while (!c_.empty() && is_zero_r(c_.back())) c_.pop_back();
  }
  static bool is_zero_r(const Rational& r) { return sgn(r) == 0; }
  std::vector<Rational> c_;
};

inline UniPoly gcd(UniPoly a, UniPoly b) {
  while (!b.is_zero()) {
    auto r = a.divmod(b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

/// Interval endpoint: a rational or +-infinity. Only used for root counting.
struct ExtRational {
  enum class Kind { NegInf, Finite, PosInf };
  Kind kind = Kind::Finite;
  Rational value = 0;

  static ExtRational neg_inf() { return {Kind::NegInf, 0}; }
  static ExtRational pos_inf() { return {Kind::PosInf, 0}; }
  static ExtRational finite(Rational v) { return {Kind::Finite, std::move(v)}; }

  friend bool operator<(const ExtRational& a, const ExtRational& b) {
    if (a.kind != b.kind) return static_cast<int>(a.kind) < static_cast<int>(b.kind);
    return a.kind == Kind::Finite && a.value < b.value;
  }
};

namespace detail {

inline int sign_at(const UniPoly& p, const ExtRational& x) {
  if (p.is_zero()) return 0;
  switch (x.kind) {
    case ExtRational::Kind::PosInf:
      return sgn(p.lead());
    case ExtRational::Kind::NegInf:
      return (p.degree() % 2 == 0) ? sgn(p.lead()) : -sgn(p.lead());
    case ExtRational::Kind::Finite:
      break;
  }
  return sgn(p(x.value));
}

inline int sign_changes(const std::vector<UniPoly>& chain, const ExtRational& x) {
  int changes = 0;
  int prev = 0;
  for (const auto& p : chain) {
    int s = sign_at(p, x);
    if (s == 0) continue;
    if (prev != 0 && s != prev) ++changes;
    prev = s;
  }
  return changes;
}

}  // namespace detail

/// Sturm chain p0 = p, p1 = p', p_{i+1} = -rem(p_{i-1}, p_i).
inline std::vector<UniPoly> sturm_chain(const UniPoly& p) {
  std::vector<UniPoly> chain{p, p.derivative()};
  while (!chain.back().is_zero()) {
    const auto& a = chain[chain.size() - 2];
    const auto& b = chain.back();
    UniPoly r = a.divmod(b).second;
    if (r.is_zero()) break;
    chain.push_back(UniPoly{} - r);
  }
  if (chain.back().is_zero()) chain.pop_back();
  return chain;
}

/// Square-free part p / gcd(p, p').
inline UniPoly square_free_part(const UniPoly& p) {
  UniPoly g = gcd(p, p.derivative());
  return p.divmod(g).first;
}

/// Number of distinct real roots of p in (lo, hi].
inline int sturm_real_root_count(const UniPoly& p, const ExtRational& lo, const ExtRational& hi) {
  if (p.is_zero()) throw domain_error("sturm_real_root_count: zero polynomial");
  if (!(lo < hi)) throw domain_error("sturm_real_root_count: need lo < hi");
  if (p.degree() == 0) return 0;
  auto chain = sturm_chain(square_free_part(p));
  return detail::sign_changes(chain, lo) - detail::sign_changes(chain, hi);
}

/// Yun's square-free factorization: p = c * prod_i a_i^i, returned as a_1, a_2, ...
inline std::vector<UniPoly> square_free_factorization(const UniPoly& p) {
  std::vector<UniPoly> out;
  if (p.degree() <= 0) return out;
  UniPoly a = p.monic();
  UniPoly b = a.derivative();
  UniPoly c = gcd(a, b);
  UniPoly w = a.divmod(c).first;
  UniPoly y = b.divmod(c).first;
  UniPoly z = y - w.derivative();
  while (w.degree() > 0) {
    UniPoly g = gcd(w, z);
    out.push_back(g);
    w = w.divmod(g).first;
    y = z.divmod(g).first;
    z = y - w.derivative();
  }
  return out;
}

/// Real roots in (lo, hi] counted with multiplicity.
inline int real_root_count_with_multiplicity(const UniPoly& p, const ExtRational& lo, const ExtRational& hi) {
  if (p.is_zero()) throw domain_error("real_root_count_with_multiplicity: zero polynomial");
  int total = 0;
  auto factors = square_free_factorization(p);
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (factors[i].degree() <= 0) continue;
    total += static_cast<int>(i + 1) * sturm_real_root_count(factors[i], lo, hi);
  }
  return total;
}

}  // namespace rtp
