#pragma once

// Exact rational scalars (GMP-backed) and the small amount of integer
// combinatorics every other header leans on.

#include <gmpxx.h>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace rtp {

using Integer = mpz_class;
using Rational = mpq_class;

/// Raised when input violates a documented precondition (exit code 3 in the CLI).
class domain_error : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Raised for malformed textual input (exit code 2 in the CLI).
class parse_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline Rational make_rational(long num, long den = 1) {
  if (den == 0) throw domain_error("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Canonical quotient of two integers.
inline Rational ratio(const Integer& num, const Integer& den) {
  if (den == 0) throw domain_error("zero denominator");
  Rational r(num, den);
  r.canonicalize();
  return r;
}

/// Accepts "p", "-p", "p/q" and decimal literals such as "0.25".
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  while (!s.empty() && s.front() == ' ') s.erase(s.begin());
  while (!s.empty() && s.back() == ' ') s.pop_back();
  if (s.empty()) throw parse_error("empty rational literal");
  auto dot = s.find('.');
  try {
    if (dot != std::string::npos) {
      std::string digits = s.substr(0, dot) + s.substr(dot + 1);
      if (digits.empty() || digits == "-" || digits == "+")
        throw parse_error("bad decimal literal '" + s + "'");
      Integer num(digits, 10);
      Integer den;
      mpz_ui_pow_ui(den.get_mpz_t(), 10, s.size() - dot - 1);
      Rational r(num, den);
      r.canonicalize();
      return r;
    }
    Rational r(s, 10);
    if (r.get_den() == 0) throw domain_error("zero denominator in '" + s + "'");
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw parse_error("bad rational literal '" + s + "'");
  }
}

/// Canonical text form: "p/q" for non-integers, "p" for integers.
inline std::string to_string(const Rational& r) { return r.get_str(10); }

inline bool is_zero(const Rational& r) { return sgn(r) == 0; }
inline bool is_integer(const Rational& r) { return r.get_den() == 1; }

inline Integer factorial(unsigned n) {
  Integer out;
  mpz_fac_ui(out.get_mpz_t(), n);
  return out;
}

inline Integer binomial(unsigned long n, unsigned long k) {
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), n, k);
  return out;
}

/// Combinatorial binomial: zero unless 0 <= k <= n.
inline Integer binomial_comb(long n, long k) {
  if (n < 0 || k < 0 || k > n) return 0;
  return binomial(static_cast<unsigned long>(n), static_cast<unsigned long>(k));
}

/// Generalized binomial C(x, k) for rational x and integer k >= 0.
inline Rational binomial_rational(const Rational& x, unsigned k) {
  Rational num = 1;
  for (unsigned i = 0; i < k; ++i) num *= x - i;
  Rational out = num / Rational(factorial(k));
  out.canonicalize();
  return out;
}

/// Falling factorial x(x-1)...(x-n+1).
inline Rational falling_factorial(const Rational& x, unsigned n) {
  Rational out = 1;
  for (unsigned i = 0; i < n; ++i) out *= x - i;
  return out;
}

/// (2n-1)!! with (-1)!! = 1.
inline Integer double_factorial_odd(long n) {
  Integer out = 1;
  for (long j = 2 * n - 1; j > 1; j -= 2) out *= j;
  return out;
}

/// Integer power with 0^0 = 1.
inline Rational pow_int(const Rational& base, unsigned e) {
  Rational out = 1;
  for (unsigned i = 0; i < e; ++i) out *= base;
  return out;
}

/// Cached factorials 0!..n! as exact integers.
class FactorialTable {
 public:
  explicit FactorialTable(std::size_t n) {
    table_.reserve(n + 1);
    table_.emplace_back(1);
    for (std::size_t i = 1; i <= n; ++i) table_.push_back(table_.back() * static_cast<unsigned long>(i));
  }
  const Integer& operator[](std::size_t i) const {
    if (i >= table_.size()) throw domain_error("factorial table too small");
    return table_[i];
  }
  std::size_t size() const { return table_.size(); }

 private:
  std::vector<Integer> table_;
};

}  // namespace rtp
