#pragma once

// Multivariate polynomials over Q in a declared, sorted list of indeterminates.
//
// A polynomial either carries a variable list or is a "free" constant (no list).
// Free constants combine with anything; two polynomials with different
// non-empty variable lists never combine. Monomials are dense exponent vectors
// over the variable list; zero coefficients are never stored.

#include <algorithm>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "rtp/rational.hpp"

namespace rtp {

using VarList = std::vector<std::string>;

/// Sorts and de-duplicates a variable declaration.
inline VarList canonical_vars(VarList vars) {
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return vars;
}

class Poly {
 public:
  using Monomial = std::vector<unsigned>;
  using TermMap = std::map<Monomial, Rational>;

  Poly() = default;
  Poly(const Rational& c) {  // NOLINT(google-explicit-constructor): ring embedding
    if (!rtp::is_zero(c)) terms_.emplace(Monomial{}, c);
  }
  Poly(long c) : Poly(Rational(c)) {}  // NOLINT(google-explicit-constructor)
  Poly(int c) : Poly(Rational(c)) {}   // NOLINT(google-explicit-constructor)

  static Poly variable(const std::string& name, const VarList& declared) {
    auto vars = std::make_shared<const VarList>(canonical_vars(declared));
    auto it = std::find(vars->begin(), vars->end(), name);
    if (it == vars->end()) throw domain_error("undeclared variable '" + name + "'");
    Monomial m(vars->size(), 0);
    m[static_cast<std::size_t>(it - vars->begin())] = 1;
    Poly p;
    p.vars_ = std::move(vars);
    p.terms_.emplace(std::move(m), Rational(1));
    return p;
  }

  static Poly from_terms(const VarList& declared, const std::vector<std::pair<Monomial, Rational>>& terms) {
    VarList sorted = canonical_vars(declared);
    if (sorted != declared) throw domain_error("variable list must be sorted and unique");
    Poly p;
    p.vars_ = std::make_shared<const VarList>(std::move(sorted));
    for (const auto& [m, c] : terms) {
      if (m.size() != p.vars_->size()) throw domain_error("exponent vector length mismatch");
      p.add_term(m, c);
    }
    return p;
  }

  const VarList& vars() const {
    static const VarList empty;
    return vars_ ? *vars_ : empty;
  }
  bool is_free() const { return !vars_; }
  const TermMap& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }

  bool is_constant() const {
    for (const auto& [m, c] : terms_)
      if (std::any_of(m.begin(), m.end(), [](unsigned e) { return e != 0; })) return false;
    return true;
  }

  Rational constant_term() const {
    for (const auto& [m, c] : terms_)
      if (std::all_of(m.begin(), m.end(), [](unsigned e) { return e == 0; })) return c;
    return 0;
  }

  /// Re-expresses this polynomial over a superset of its variables.
  Poly with_vars(const VarList& declared) const {
    VarList target = canonical_vars(declared);
    std::vector<std::size_t> where;
    for (const auto& v : vars()) {
      auto it = std::find(target.begin(), target.end(), v);
      if (it == target.end()) throw domain_error("with_vars: variable '" + v + "' dropped");
      where.push_back(static_cast<std::size_t>(it - target.begin()));
    }
    Poly out;
    out.vars_ = std::make_shared<const VarList>(std::move(target));
    for (const auto& [m, c] : terms_) {
      Monomial nm(out.vars_->size(), 0);
      for (std::size_t i = 0; i < m.size(); ++i) nm[where[i]] = m[i];
      out.terms_.emplace(std::move(nm), c);
    }
    return out;
  }

  std::size_t total_degree() const {
    std::size_t d = 0;
    for (const auto& [m, c] : terms_) {
      std::size_t s = 0;
      for (unsigned e : m) s += e;
      d = std::max(d, s);
    }
    return d;
  }

  std::size_t degree_in(const std::string& var) const {
    auto idx = index_of(var);
    if (!idx) return 0;
    std::size_t d = 0;
    for (const auto& [m, c] : terms_) d = std::max<std::size_t>(d, m[*idx]);
    return d;
  }

  /// Coefficient of var^k, as a polynomial over the same variable list.
  Poly coeff_of(const std::string& var, unsigned k) const {
    auto idx = index_of(var);
    Poly out;
    out.vars_ = vars_;
    for (const auto& [m, c] : terms_) {
      unsigned e = idx ? m[*idx] : 0;
      if (e != k) continue;
      Monomial nm = m;
      if (idx) nm[*idx] = 0;
      out.terms_.emplace(std::move(nm), c);
    }
    return out;
  }

  /// Binds one variable to a rational; the variable stays declared (exponent 0).
  Poly substitute(const std::string& var, const Rational& value) const {
    auto idx = index_of(var);
    if (!idx) return *this;
    Poly out;
    out.vars_ = vars_;
    for (const auto& [m, c] : terms_) {
      Monomial nm = m;
      nm[*idx] = 0;
      out.add_term(nm, c * pow_int(value, m[*idx]));
    }
    return out;
  }

  /// Drops declared variables that no term uses; a constant becomes free.
  Poly compact() const {
    if (!vars_) return *this;
    std::vector<bool> used(vars_->size(), false);
    for (const auto& [m, c] : terms_)
      for (std::size_t i = 0; i < m.size(); ++i) used[i] = used[i] || m[i] != 0;
    if (std::none_of(used.begin(), used.end(), [](bool b) { return b; })) return Poly(constant_term());
    VarList keep;
    for (std::size_t i = 0; i < used.size(); ++i)
      if (used[i]) keep.push_back((*vars_)[i]);
    Poly out;
    out.vars_ = std::make_shared<const VarList>(keep);
    for (const auto& [m, c] : terms_) {
      Monomial nm;
      for (std::size_t i = 0; i < m.size(); ++i)
        if (used[i]) nm.push_back(m[i]);
      out.terms_.emplace(std::move(nm), c);
    }
    return out;
  }

  Rational evaluate(const std::map<std::string, Rational>& at) const {
    Rational sum = 0;
    for (const auto& [m, c] : terms_) {
      Rational term = c;
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        auto it = at.find((*vars_)[i]);
        if (it == at.end()) throw domain_error("evaluate: no value for '" + (*vars_)[i] + "'");
        term *= pow_int(it->second, m[i]);
      }
      sum += term;
    }
    return sum;
  }

  /// First term (in monomial order) with a negative coefficient.
  std::optional<std::pair<Monomial, Rational>> first_negative_term() const {
    for (const auto& [m, c] : terms_)
      if (sgn(c) < 0) return std::make_pair(m, c);
    return std::nullopt;
  }

  Poly operator-() const {
    Poly out = *this;
    for (auto& [m, c] : out.terms_) c = -c;
    return out;
  }

  Poly& operator+=(const Poly& o) { return accumulate(o, 1); }
  Poly& operator-=(const Poly& o) { return accumulate(o, -1); }

  Poly& operator*=(const Rational& s) {
    if (rtp::is_zero(s)) {
      terms_.clear();
      return *this;
    }
    for (auto& [m, c] : terms_) c *= s;
    return *this;
  }

  Poly& operator/=(const Rational& s) {
    if (rtp::is_zero(s)) throw domain_error("division by zero");
    for (auto& [m, c] : terms_) c /= s;
    return *this;
  }

  friend Poly operator+(Poly a, const Poly& b) { return a += b; }
  friend Poly operator-(Poly a, const Poly& b) { return a -= b; }
  friend Poly operator*(Poly a, const Rational& s) { return a *= s; }
  friend Poly operator*(const Rational& s, Poly a) { return a *= s; }
  friend Poly operator/(Poly a, const Rational& s) { return a /= s; }

  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly out;
    out.vars_ = merge_vars(a, b);
    if (a.is_zero() || b.is_zero()) return out;
    const std::size_t n = out.vars_ ? out.vars_->size() : 0;
    for (const auto& [ma, ca] : a.terms_) {
      for (const auto& [mb, cb] : b.terms_) {
        Monomial m(n, 0);
        for (std::size_t i = 0; i < ma.size(); ++i) m[i] += ma[i];
        for (std::size_t i = 0; i < mb.size(); ++i) m[i] += mb[i];
        out.add_term(m, ca * cb);
      }
    }
    return out;
  }
  Poly& operator*=(const Poly& o) { return *this = *this * o; }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() && b.is_zero();
    // Constants compare by value whatever variables they were declared over.
    if (a.is_constant() || b.is_constant())
      return a.is_constant() && b.is_constant() && a.constant_term() == b.constant_term();
    if (a.is_free() || b.is_free()) return false;
    if (*a.vars_ == *b.vars_) return a.terms_ == b.terms_;
    VarList both = *a.vars_;
    both.insert(both.end(), b.vars_->begin(), b.vars_->end());
    return a.with_vars(both).terms_ == b.with_vars(both).terms_;
  }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  Poly pow(unsigned e) const {
    Poly out(1);
    Poly base = *this;
    while (e) {
      if (e & 1U) out *= base;
      e >>= 1U;
      if (e) base *= base;
    }
    return out;
  }

  /// Leading term in lexicographic monomial order.
  std::pair<Monomial, Rational> leading_term() const {
    if (terms_.empty()) throw domain_error("leading term of zero polynomial");
    return *terms_.rbegin();
  }

  /// Exact division; throws if the divisor does not divide this polynomial.
  Poly divide_exact(const Poly& divisor) const {
    if (divisor.is_zero()) throw domain_error("division by zero polynomial");
    if (divisor.is_constant()) return *this / divisor.constant_term();
    Poly rem = *this;
    rem.vars_ = merge_vars(*this, divisor);
    rem = rem.promoted();
    Poly d = divisor;
    d.vars_ = rem.vars_;
    d = d.promoted();
    Poly quot;
    quot.vars_ = rem.vars_;
    const auto [lm, lc] = d.leading_term();
    while (!rem.is_zero()) {
      auto [rm, rc] = rem.leading_term();
      Monomial qm(rm.size(), 0);
      for (std::size_t i = 0; i < rm.size(); ++i) {
        if (rm[i] < lm[i]) throw domain_error("divide_exact: not divisible");
        qm[i] = rm[i] - lm[i];
      }
      Poly step;
      step.vars_ = rem.vars_;
      step.terms_.emplace(qm, rc / lc);
      quot += step;
      rem -= step * d;
    }
    return quot;
  }

  std::string to_string() const {
    if (terms_.empty()) return "0";
    std::ostringstream os;
    bool first = true;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
      const auto& [m, c] = *it;
      Rational mag = abs(c);
      bool has_var = std::any_of(m.begin(), m.end(), [](unsigned e) { return e != 0; });
      if (first) {
        if (sgn(c) < 0) os << "-";
      } else {
        os << (sgn(c) < 0 ? " - " : " + ");
      }
      first = false;
      bool wrote = false;
      if (!has_var || mag != 1) {
        os << rtp::to_string(mag);
        wrote = true;
      }
      for (std::size_t i = 0; i < m.size(); ++i) {
        if (m[i] == 0) continue;
        if (wrote) os << "*";
        os << (*vars_)[i];
        if (m[i] > 1) os << "^" << m[i];
        wrote = true;
      }
    }
    return os.str();
  }

 private:
  std::optional<std::size_t> index_of(const std::string& var) const {
    if (!vars_) return std::nullopt;
    auto it = std::find(vars_->begin(), vars_->end(), var);
    if (it == vars_->end()) return std::nullopt;
    return static_cast<std::size_t>(it - vars_->begin());
  }

  static std::shared_ptr<const VarList> merge_vars(const Poly& a, const Poly& b) {
    if (!a.vars_ || a.vars_->empty()) return b.vars_ ? b.vars_ : a.vars_;
    if (!b.vars_ || b.vars_->empty()) return a.vars_;
    if (a.vars_ == b.vars_ || *a.vars_ == *b.vars_) return a.vars_;
    throw domain_error("polynomial variable lists differ");
  }

  // Pads free-constant monomials to the full exponent-vector length.
  Poly promoted() const {
    if (!vars_) return *this;
    auto it = terms_.find(Monomial{});
    if (it == terms_.end() || vars_->empty()) return *this;
    Poly out = *this;
    Rational c = it->second;
    out.terms_.erase(Monomial{});
    out.add_term(Monomial(vars_->size(), 0), c);
    return out;
  }

  void add_term(const Monomial& m, const Rational& c) {
    if (rtp::is_zero(c)) return;
    auto [it, inserted] = terms_.try_emplace(m, c);
    if (!inserted) {
      it->second += c;
      if (rtp::is_zero(it->second)) terms_.erase(it);
    }
  }

  Poly& accumulate(const Poly& o, int sign) {
    auto merged = merge_vars(*this, o);
    if (merged != vars_) {
      vars_ = merged;
      *this = promoted();
    }
    const std::size_t n = vars_ ? vars_->size() : 0;
    for (const auto& [m, c] : o.terms_) {
      Monomial mm = m;
      if (mm.size() != n) mm.assign(n, 0);  // free constant from o
      add_term(mm, sign > 0 ? Rational(c) : Rational(-c));
    }
    return *this;
  }

  std::shared_ptr<const VarList> vars_;
  TermMap terms_;
};

inline bool is_zero(const Poly& p) { return p.is_zero(); }

/// True iff every stored coefficient is >= 0.
inline bool poly_is_coeff_nonneg(const Poly& p) { return !p.first_negative_term().has_value(); }
inline bool poly_is_coeff_nonneg(const Rational& r) { return sgn(r) >= 0; }

inline std::string to_string(const Poly& p) { return p.to_string(); }
inline std::ostream& operator<<(std::ostream& os, const Poly& p) { return os << p.to_string(); }

/// Lifts a rational to a polynomial; identity on polynomials.
inline Poly to_poly(const Rational& r) { return Poly(r); }
inline const Poly& to_poly(const Poly& p) { return p; }

/// A polynomial with no variables in use becomes a rational.
inline Rational poly_to_rational(const Poly& p) {
  if (!p.is_constant()) throw domain_error("polynomial " + p.to_string() + " is not a constant");
  return p.constant_term();
}

}  // namespace rtp
