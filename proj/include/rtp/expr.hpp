#pragma once

// A small expression language for power series in t:
//
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | power
//   power  := atom ('^' exponent)?
//   exponent := rational | '(' ['-'] rational ')' | '-' rational
//   atom   := rational | 't' | name | func '(' expr ')' | '(' expr ')'
//   func   := exp | log | revert
//
// Names are parameters: bound ones become rational constants, symbolic ones
// become polynomial indeterminates. Everything is evaluated at a few orders
// above the target so that a division by a series with zero constant term
// (t/t, (exp(t)-1)/t) can shift without losing requested coefficients.

#include <cctype>
#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <utility>

#include "rtp/poly.hpp"
#include "rtp/rational.hpp"
#include "rtp/series.hpp"

namespace rtp {

/// A parameter is either a bound rational or a symbolic indeterminate.
struct ParamValue {
  std::optional<Rational> value;  // empty = symbolic
  static ParamValue bound(Rational r) { return {std::move(r)}; }
  static ParamValue symbolic() { return {std::nullopt}; }
  bool is_symbolic() const { return !value.has_value(); }
};

using Bindings = std::map<std::string, ParamValue>;

/// Variables declared for the series ring: every symbolic binding plus extras.
inline VarList symbolic_vars(const Bindings& b, const VarList& extra = {}) {
  VarList out = extra;
  for (const auto& [name, v] : b)
    if (v.is_symbolic()) out.push_back(name);
  return canonical_vars(out);
}

namespace detail {

class ExprParser {
 public:
  ExprParser(std::string_view text, const Bindings& bindings, VarList vars, std::size_t order)
      : s_(text), bindings_(bindings), vars_(std::move(vars)), order_(order) {}

  Series<Poly> parse() {
    Series<Poly> out = expr();
    skip_ws();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return out;
  }

 private:
  [[noreturn]] void fail(const std::string& what) const {
    throw parse_error("expression '" + std::string(s_) + "' at offset " + std::to_string(pos_) + ": " + what);
  }

  void skip_ws() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  void expect(char c) {
    if (!eat(c)) fail(std::string("expected '") + c + "'");
  }

  Series<Poly> constant(const Poly& c) const { return Series<Poly>::constant(c, order_); }

  Series<Poly> expr() {
    Series<Poly> acc = term();
    for (;;) {
      if (eat('+'))
        acc = acc + term();
      else if (eat('-'))
        acc = acc - term();
      else
        return acc;
    }
  }

  Series<Poly> term() {
    Series<Poly> acc = unary();
    for (;;) {
      if (eat('*')) {
        acc = acc * unary();
      } else if (eat('/')) {
        acc = divide(acc, unary());
      } else {
        return acc;
      }
    }
  }

  Series<Poly> unary() {
    if (eat('-')) return -unary();
    if (eat('+')) return unary();
    return power();
  }

  Series<Poly> power() {
    Series<Poly> base = atom();
    if (!eat('^')) return base;
    return raise(base, exponent());
  }

  Rational exponent() {
    skip_ws();
    if (eat('(')) {
      bool neg = eat('-');
      Rational r = rational_literal(true);
      expect(')');
      return neg ? Rational(-r) : r;
    }
    bool neg = eat('-');
    Rational r = rational_literal(false);
    return neg ? Rational(-r) : r;
  }

  // Inside ^( ... ) a slash belongs to the literal: t^(1/2). Elsewhere it is division.
  Rational rational_literal(bool allow_fraction) {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
    if (start == pos_) fail("expected a rational literal");
    std::size_t save = pos_;
    skip_ws();
    if (pos_ < s_.size() && s_[pos_] == '/' && pos_ + 1 < s_.size()) {
      std::size_t p = pos_ + 1;
      while (p < s_.size() && std::isspace(static_cast<unsigned char>(s_[p]))) ++p;
      std::size_t dstart = p;
      while (p < s_.size() && std::isdigit(static_cast<unsigned char>(s_[p]))) ++p;
      if (p > dstart && allow_fraction) {
        Rational num = parse_rational(s_.substr(start, save - start));
        Rational den = parse_rational(s_.substr(dstart, p - dstart));
        if (is_zero(den)) throw domain_error("zero denominator in exponent");
        pos_ = p;
        return num / den;
      }
    }
    pos_ = save;
    return parse_rational(s_.substr(start, save - start));
  }

  Series<Poly> atom() {
    skip_ws();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Series<Poly> inner = expr();
      expect(')');
      return inner;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isdigit(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '.')) ++pos_;
      return constant(Poly(parse_rational(s_.substr(start, pos_ - start))));
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t start = pos_;
      while (pos_ < s_.size() && (std::isalnum(static_cast<unsigned char>(s_[pos_])) || s_[pos_] == '_')) ++pos_;
      std::string name(s_.substr(start, pos_ - start));
      if (name == "t") return Series<Poly>::t(order_);
      if (name == "exp" || name == "log" || name == "revert") {
        expect('(');
        Series<Poly> arg = expr();
        expect(')');
        return apply(name, arg);
      }
      auto it = bindings_.find(name);
      if (it == bindings_.end()) fail("unbound parameter '" + name + "'");
      if (it->second.is_symbolic()) return constant(Poly::variable(name, vars_));
      return constant(Poly(*it->second.value));
    }
    fail(std::string("unexpected '") + c + "'");
  }

  Series<Poly> apply(const std::string& fn, const Series<Poly>& arg) {
    if (fn == "exp") {
      // exp(c + f) is only representable when c = 0.
      if (!arg[0].is_zero()) throw domain_error("exp: argument has nonzero constant term");
      return exp_series(arg);
    }
    if (fn == "log") return log_series(arg);
    return revert(arg);
  }

  static std::size_t valuation(const Series<Poly>& s) {
    for (std::size_t i = 0; i <= s.order(); ++i)
      if (!s[i].is_zero()) return i;
    return s.order() + 1;
  }

  static Series<Poly> shift_down(const Series<Poly>& s, std::size_t v) {
    Series<Poly> out(s.order() - v);
    for (std::size_t i = v; i <= s.order(); ++i) out[i - v] = s[i];
    return out;
  }

  Series<Poly> divide(const Series<Poly>& a, const Series<Poly>& b) {
    if (is_unit(b[0])) return div(a, b);
    std::size_t v = valuation(b);
    if (v > b.order()) throw domain_error("division by the zero series");
    if (!b[v].is_constant()) throw domain_error("division: leading coefficient of divisor is not a unit");
    if (valuation(a) < v) throw domain_error("division: quotient is not a power series");
    return div(shift_down(a, v), shift_down(b, v));
  }

  static Series<Poly> raise(const Series<Poly>& base, const Rational& e) {
    if (is_integer(e) && sgn(e) >= 0) return pow_int(base, static_cast<unsigned>(e.get_num().get_ui()));
    if (!base[0].is_constant() || base[0].is_zero())
      throw domain_error("power: base needs a nonzero rational constant term for exponent " + to_string(e));
    Rational c = base[0].constant_term();
    if (is_integer(e)) return pow_int(inverse(base), static_cast<unsigned>(Integer(-e.get_num()).get_ui()));
    if (c != 1) throw domain_error("power: fractional exponent needs constant term 1");
    return pow_rational(base, e);
  }

  std::string_view s_;
  const Bindings& bindings_;
  VarList vars_;
  std::size_t order_;
  std::size_t pos_ = 0;
};

}  // namespace detail

/// Extra orders carried while parsing so that divisions by t^k stay exact.
inline constexpr std::size_t kExprSlack = 4;

/// Parses an expression in t into a series over Q[vars] through order N.
inline Series<Poly> parse_series(std::string_view text, const Bindings& bindings, std::size_t order,
                                 const VarList& extra_vars = {}) {
  VarList vars = symbolic_vars(bindings, extra_vars);
  detail::ExprParser p(text, bindings, vars, order + kExprSlack);
  Series<Poly> s = p.parse();
  if (s.order() < order) throw domain_error("expression loses too many orders to division by t");
  return s.truncate(order);
}

}  // namespace rtp
