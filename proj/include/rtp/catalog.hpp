#pragma once

// Named triangles, each built several independent ways (recurrence, exponential
// Riordan array, closed form, brute-force enumeration) so they can check one
// another. Entries are polynomials so that lambda may stay symbolic; numeric
// families simply hold constants.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <map>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "rtp/expr.hpp"
#include "rtp/matrix.hpp"
#include "rtp/poly.hpp"
#include "rtp/positivity.hpp"
#include "rtp/rational.hpp"
#include "rtp/riordan.hpp"
#include "rtp/series.hpp"
#include "rtp/unipoly.hpp"

namespace rtp {

/// Two realizations of the same family disagreed. This is a bug, not bad input.
class consistency_error : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

enum class Realization { recurrence, era, formula, oracle };

inline std::string to_string(Realization r) {
  switch (r) {
    case Realization::recurrence:
      return "recurrence";
    case Realization::era:
      return "era";
    case Realization::formula:
      return "formula";
    case Realization::oracle:
      return "oracle";
  }
  return "?";
}

inline Realization parse_realization(const std::string& s) {
  if (s == "recurrence") return Realization::recurrence;
  if (s == "era") return Realization::era;
  if (s == "formula") return Realization::formula;
  if (s == "oracle") return Realization::oracle;
  throw parse_error("unknown realization '" + s + "'");
}

struct FamilySpec {
  std::string family;
  Bindings params;
  std::vector<Rational> xs;  // weights for bell_partial
  std::size_t n = 10;        // rows 0..n
};

struct Triangle {
  std::string family;
  Realization realization = Realization::formula;
  PolyMatrix entries;

  std::size_t size() const { return entries.rows(); }
  std::vector<Poly> row_polys(const std::string& var = "q") const { return rtp::row_polys(entries, var); }
  /// Requires every entry to be a rational constant.
  RationalMatrix rational_entries() const { return to_rational_matrix(entries); }
};

/// Largest n the brute-force enumerations are run at.
inline constexpr std::size_t kSetPartitionCap = 10;
inline constexpr std::size_t kPermutationCap = 8;
inline constexpr std::size_t kMapCap = 7;

namespace detail {

inline const ParamValue& param(const Bindings& b, const std::string& name) {
  auto it = b.find(name);
  if (it == b.end()) throw domain_error("missing parameter '" + name + "'");
  return it->second;
}

inline Rational rational_param(const Bindings& b, const std::string& name) {
  const auto& p = param(b, name);
  if (p.is_symbolic()) throw domain_error("parameter '" + name + "' must be bound to a rational here");
  return *p.value;
}

inline long integer_param(const Bindings& b, const std::string& name) {
  Rational r = rational_param(b, name);
  if (!is_integer(r) || !r.get_num().fits_slong_p()) throw domain_error("parameter '" + name + "' must be an integer");
  return r.get_num().get_si();
}

/// The parameter as a polynomial: a variable if symbolic, else a constant.
inline Poly poly_param(const Bindings& b, const std::string& name) {
  const auto& p = param(b, name);
  if (p.is_symbolic()) return Poly::variable(name, symbolic_vars(b));
  return Poly(*p.value);
}

inline Poly rpow(const Poly& p, std::size_t e) { return p.pow(static_cast<unsigned>(e)); }
inline Rational rpow(const Rational& r, long e) {
  if (e < 0) return Rational(1) / pow_int(r, static_cast<unsigned>(-e));
  return pow_int(r, static_cast<unsigned>(e));
}
inline Rational fact(std::size_t n) { return Rational(factorial(static_cast<unsigned>(n))); }
inline Rational binom(long n, long k) { return Rational(binomial_comb(n, k)); }

inline PolyMatrix square(std::size_t n) { return PolyMatrix(n + 1, n + 1); }

inline Triangle make(std::string family, Realization r, PolyMatrix m) { return {std::move(family), r, std::move(m)}; }

inline PolyMatrix from_era(const ExpRiordan<Poly>& era, std::size_t n) { return era.triangle(n); }

// Restricted growth strings enumerate set partitions of [n]; the callback
// receives the block sizes.
inline void for_each_set_partition(std::size_t n, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  if (n == 0) {
    fn({});
    return;
  }
  std::vector<std::size_t> a(n, 0), sizes;
  std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t blocks) {
    if (i == n) {
      sizes.assign(blocks, 0);
      for (auto x : a) ++sizes[x];
      fn(sizes);
      return;
    }
    for (std::size_t b = 0; b <= blocks; ++b) {
      a[i] = b;
      rec(i + 1, b == blocks ? blocks + 1 : blocks);
    }
  };
  a[0] = 0;
  rec(1, 1);
}

// Set-partition enumeration weighted by w(|B|) per block, grouped by block count.
inline PolyMatrix weighted_partition_oracle(std::size_t n, const std::function<Rational(std::size_t)>& w) {
  if (n > kSetPartitionCap) throw domain_error("oracle: n exceeds the enumeration cap of " + std::to_string(kSetPartitionCap));
  PolyMatrix m = square(n);
  for (std::size_t rows = 0; rows <= n; ++rows) {
    std::vector<Rational> acc(rows + 1, Rational(0));
    for_each_set_partition(rows, [&](const std::vector<std::size_t>& sizes) {
      Rational prod = 1;
      for (auto s : sizes) prod *= w(s);
      acc[sizes.size()] += prod;
    });
    for (std::size_t k = 0; k <= rows; ++k) m(rows, k) = Poly(acc[k]);
  }
  return m;
}

// Integer partitions of n into exactly k parts, as multiplicity vectors c[1..n].
inline void for_each_partition(std::size_t n, std::size_t k, const std::function<void(const std::vector<std::size_t>&)>& fn) {
  std::vector<std::size_t> mult(n + 1, 0);
  std::function<void(std::size_t, std::size_t, std::size_t)> rec = [&](std::size_t remaining, std::size_t parts, std::size_t maxpart) {
    if (parts == 0) {
      if (remaining == 0) fn(mult);
      return;
    }
    for (std::size_t p = std::min(maxpart, remaining); p >= 1; --p) {
      if (p * parts < remaining) break;
      ++mult[p];
      rec(remaining - p, parts - 1, p);
      --mult[p];
    }
  };
  rec(n, k, n);
}

inline Series<Poly> rseries(const Series<Rational>& s) { return to_poly_series(s); }

}  // namespace detail

// ---------------------------------------------------------------------------
// Pascal

inline Triangle pascal_triangle(std::size_t n, Realization r = Realization::formula) {
  if (r == Realization::era)
    return detail::make("pascal", r, detail::from_era(to_poly_era(ExpRiordan<Rational>(exp_t(n), Series<Rational>::t(n))), n));
  if (r != Realization::formula) throw domain_error("pascal: realization " + to_string(r) + " not available");
  PolyMatrix m = detail::square(n);
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t k = 0; k <= i; ++k) m(i, k) = Poly(Rational(binomial(i, k)));
  return detail::make("pascal", r, std::move(m));
}

// ---------------------------------------------------------------------------
// Generalized Bessel numbers of the second kind: (1, a t + b t^2 + c t^3).

inline void check_bessel2_params(const Rational& a, const Rational& b, const Rational& c) {
  if (sgn(a) < 0 || sgn(b) < 0 || sgn(c) < 0) throw domain_error("gen_bessel2: a, b, c must be nonnegative");
}

inline Triangle gen_bessel2(const Rational& a, const Rational& b, const Rational& c, std::size_t n,
                            Realization r = Realization::recurrence) {
  check_bessel2_params(a, b, c);
  using detail::binom;
  PolyMatrix m = detail::square(n);
  switch (r) {
    case Realization::recurrence: {
      std::vector<std::vector<Rational>> t(n + 1, std::vector<Rational>(n + 1, Rational(0)));
      t[0][0] = 1;
      for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t k = 1; k <= i; ++k) {
          Rational v = a * t[i - 1][k - 1];
          if (i >= 2) v += 2 * b * static_cast<unsigned long>(i - 1) * t[i - 2][k - 1];
          if (i >= 3) v += 3 * c * static_cast<unsigned long>((i - 1) * (i - 2)) * t[i - 3][k - 1];
          t[i][k] = v;
        }
      for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t k = 0; k <= i; ++k) m(i, k) = Poly(t[i][k]);
      break;
    }
    case Realization::era: {
      Series<Rational> f(n);
      if (n >= 1) f[1] = a;
      if (n >= 2) f[2] = b;
      if (n >= 3) f[3] = c;
      m = detail::from_era(to_poly_era(ExpRiordan<Rational>(Series<Rational>::constant(1, n), f)), n);
      break;
    }
    case Realization::formula: {
      for (long i = 0; i <= static_cast<long>(n); ++i)
        for (long k = 0; k <= i; ++k) {
          Rational s = 0;
          for (long j = 0; j <= k; ++j) {
            long ce = i - k - j, be = 2 * j - i + k;
            if (ce < 0 || be < 0) continue;
            s += detail::rpow(a, k - j) * detail::rpow(c, ce) * detail::rpow(b, be) * binom(k, j) * binom(j, ce);
          }
          m(i, k) = Poly(s * detail::fact(i) / detail::fact(k));
        }
      break;
    }
    case Realization::oracle: {
      // Blocks of size 1, 2, 3 weighted by 1! a, 2! b, 3! c.
      m = detail::weighted_partition_oracle(n, [&](std::size_t s) -> Rational {
        if (s == 1) return a;
        if (s == 2) return 2 * b;
        if (s == 3) return 6 * c;
        return 0;
      });
      break;
    }
  }
  return detail::make("gen_bessel2", r, std::move(m));
}

/// Partitions of [n] into k blocks of size at most 2 (exhaustive).
inline Integer bessel2_oracle(std::size_t n, std::size_t k) {
  if (n > kSetPartitionCap) throw domain_error("bessel2_oracle: n exceeds the enumeration cap");
  Integer count = 0;
  detail::for_each_set_partition(n, [&](const std::vector<std::size_t>& sizes) {
    if (sizes.size() == k && std::all_of(sizes.begin(), sizes.end(), [](std::size_t s) { return s <= 2; })) ++count;
  });
  return count;
}

// ---------------------------------------------------------------------------
// Generalized Bessel triangle (first kind) and generalized Lah triangle.
// Both are (g e^{lambda f}, f) with g = (1 - abt)^{-d}; they differ in f and in
// the signs of the b-terms of the four-term recurrence.

struct FourParams {
  Rational a, b, c, d;
  Poly lambda;
};

inline FourParams four_params(const Bindings& p) {
  return {detail::rational_param(p, "a"), detail::rational_param(p, "b"), detail::rational_param(p, "c"),
          detail::rational_param(p, "d"), detail::poly_param(p, "lambda")};
}

inline void check_bessel1_params(const FourParams& p) {
  if (!is_integer(p.a) || sgn(p.a) <= 0) throw domain_error("gen_bessel1: a must be a positive integer");
  Rational ad = p.a * p.d;
  if (!is_integer(ad) || sgn(ad) < 0) throw domain_error("gen_bessel1: a*d must be a nonnegative integer");
  if (sgn(p.c) <= 0) throw domain_error("gen_bessel1: c must be positive");
  if (is_zero(p.b)) throw domain_error("gen_bessel1: b must be nonzero");
}

inline void check_lah_params(const FourParams& p) {
  if (!is_integer(p.a) || sgn(p.a) < 0) throw domain_error("gen_lah: a must be a nonnegative integer");
  if (sgn(p.d) < 0) throw domain_error("gen_lah: d must be nonnegative");
  if (sgn(p.c) <= 0) throw domain_error("gen_lah: c must be positive");
  if (is_zero(p.b)) throw domain_error("gen_lah: b must be nonzero");
}

namespace detail {

// sign = -1 for the Bessel triangle, +1 for Lah. scaled = k!-multiplied variant.
inline PolyMatrix four_term_recurrence(const FourParams& p, int sign, bool scaled, std::size_t n) {
  PolyMatrix t = square(n);
  t(0, 0) = Poly(1);
  const Rational s(sign);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t k = 0; k <= i; ++k) {
      const Rational kk(static_cast<unsigned long>(k));
      Poly v;
      if (k >= 1) v += t(i - 1, k - 1) * (scaled ? Rational(p.c * kk) : p.c);
      Poly mid = Poly(Rational(p.a * p.b * static_cast<unsigned long>(i - 1) + s * p.b * kk + p.a * p.b * p.d)) + p.lambda * p.c;
      if (k <= i - 1) v += mid * t(i - 1, k);
      if (k + 1 <= i - 1) {
        Rational w = s * p.b * (scaled ? Rational(1) : Rational(static_cast<unsigned long>(k + 1)));
        v += p.lambda * t(i - 1, k + 1) * w;
      }
      t(i, k) = v;
    }
  return t;
}

inline ExpRiordan<Poly> four_term_era(const FourParams& p, bool lah, std::size_t n) {
  using S = Series<Rational>;
  const Rational ab = p.a * p.b;
  S f(n);
  S g = S::constant(1, n);
  if (is_zero(p.a)) {
    // a -> 0 limit of the Lah array: f = (c/b)(e^{bt} - 1), g = 1.
    if (!lah) throw domain_error("gen_bessel1: a must be positive");
    f = (exp_t(n, p.b) - S::constant(1, n)) * Rational(p.c / p.b);
  } else {
    S base = binomial_series(-ab, Rational(lah ? -1 : 1) / p.a, n);  // (1 - abt)^{-+1/a}
    f = lah ? (base - S::constant(1, n)) * Rational(p.c / p.b) : (S::constant(1, n) - base) * Rational(p.c / p.b);
    g = binomial_series(-ab, -p.d, n);
  }
  Series<Poly> fp = rseries(f);
  Series<Poly> gp = rseries(g) * exp_series(fp * p.lambda);
  return {gp, fp};
}

inline PolyMatrix four_term_formula(const FourParams& p, bool lah, std::size_t n) {
  if (is_zero(p.a)) throw domain_error("closed form needs a >= 1");
  PolyMatrix m = square(n);
  const Rational ad = p.a * p.d;
  std::vector<Poly> lam{Poly(1)};
  for (std::size_t j = 1; j <= n; ++j) lam.push_back(lam.back() * p.lambda);
  for (long i = 0; i <= static_cast<long>(n); ++i)
    for (long k = 0; k <= i; ++k) {
      Poly entry;
      for (long j = 0; j <= i - k; ++j) {
        Rational inner = 0;
        for (long l = 0; l <= k + j; ++l) {
          Rational x = lah ? Rational(-(l + ad) / p.a) : Rational((l - ad) / p.a);
          long sgn_exp = lah ? i + k + j - l : i - l;
          Rational term = binom(k + j, l) * falling_factorial(x, static_cast<unsigned>(i));
          inner += (sgn_exp % 2 == 0) ? term : Rational(-term);
        }
        Rational coef = inner * rpow(p.b, i - k - j) * rpow(p.c, k + j) / fact(static_cast<std::size_t>(j));
        if (!is_zero(coef)) entry += lam[static_cast<std::size_t>(j)] * coef;
      }
      m(i, k) = entry * Rational(rpow(p.a, i) / fact(static_cast<std::size_t>(k)));
    }
  return m;
}

inline PolyMatrix scale_columns_by_factorial(const PolyMatrix& m) {
  return diag_scale(m, std::vector<Rational>(m.rows(), Rational(1)), factorial_scales(m.cols()));
}

}  // namespace detail

inline Triangle gen_bessel1(const FourParams& p, std::size_t n, Realization r = Realization::recurrence) {
  check_bessel1_params(p);
  PolyMatrix m;
  switch (r) {
    case Realization::recurrence:
      m = detail::four_term_recurrence(p, -1, false, n);
      break;
    case Realization::era:
      m = detail::four_term_era(p, false, n).triangle(n);
      break;
    case Realization::formula:
      m = detail::four_term_formula(p, false, n);
      break;
    case Realization::oracle:
      throw domain_error("gen_bessel1: no oracle");
  }
  return detail::make("gen_bessel1", r, std::move(m));
}

inline Triangle gen_lah(const FourParams& p, std::size_t n, Realization r = Realization::recurrence) {
  check_lah_params(p);
  PolyMatrix m;
  switch (r) {
    case Realization::recurrence:
      m = detail::four_term_recurrence(p, +1, false, n);
      break;
    case Realization::era:
      m = detail::four_term_era(p, true, n).triangle(n);
      break;
    case Realization::formula:
      m = detail::four_term_formula(p, true, n);
      break;
    case Realization::oracle:
      throw domain_error("gen_lah: no oracle");
  }
  return detail::make("gen_lah", r, std::move(m));
}

/// k!-scaled variants: recurrence with the k-weighted first term, or the base
/// triangle's ERA / closed form scaled by k!.
inline Triangle gen_bessel1_tilde(const FourParams& p, std::size_t n, Realization r = Realization::recurrence) {
  check_bessel1_params(p);
  if (r == Realization::recurrence) return detail::make("gen_bessel1_tilde", r, detail::four_term_recurrence(p, -1, true, n));
  if (r == Realization::era) return detail::make("gen_bessel1_tilde", r, detail::four_term_era(p, false, n).scaled_triangle(n));
  return detail::make("gen_bessel1_tilde", r, detail::scale_columns_by_factorial(gen_bessel1(p, n, r).entries));
}

inline Triangle gen_lah_tilde(const FourParams& p, std::size_t n, Realization r = Realization::recurrence) {
  check_lah_params(p);
  if (r == Realization::recurrence) return detail::make("gen_lah_tilde", r, detail::four_term_recurrence(p, +1, true, n));
  if (r == Realization::era) return detail::make("gen_lah_tilde", r, detail::four_term_era(p, true, n).scaled_triangle(n));
  return detail::make("gen_lah_tilde", r, detail::scale_columns_by_factorial(gen_lah(p, n, r).entries));
}

/// T*_{n,k} = T_{n,n-k}.
inline Triangle reciprocal_triangle(const Triangle& t) {
  if (!t.entries.is_lower_triangular()) throw domain_error("reciprocal_triangle: triangle is not lower triangular");
  PolyMatrix m(t.entries.rows(), t.entries.cols());
  for (std::size_t n = 0; n < m.rows(); ++n)
    for (std::size_t k = 0; k <= n; ++k) m(n, k) = t.entries(n, n - k);
  return detail::make(t.family + "_reciprocal", t.realization, std::move(m));
}

/// Reciprocal arrays straight from their own recurrences.
inline PolyMatrix reciprocal_four_term_recurrence(const FourParams& p, int sign, std::size_t n) {
  PolyMatrix t = detail::square(n);
  t(0, 0) = Poly(1);
  const Rational s(sign);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t k = 0; k <= i; ++k) {
      Poly v;
      if (k <= i - 1) v += t(i - 1, k) * p.c;
      if (k >= 1) {
        Poly mid = Poly(Rational(p.a * p.b * static_cast<unsigned long>(i - 1) + s * p.b * static_cast<unsigned long>(i - k) + p.a * p.b * p.d)) + p.lambda * p.c;
        v += mid * t(i - 1, k - 1);
      }
      if (k >= 2) v += p.lambda * t(i - 1, k - 2) * Rational(s * p.b * static_cast<unsigned long>(i - k + 1));
      t(i, k) = v;
    }
  return t;
}

inline Triangle gen_bessel1_reciprocal(const FourParams& p, std::size_t n, Realization r = Realization::recurrence) {
  check_bessel1_params(p);
  if (r == Realization::recurrence) return detail::make("gen_bessel1_reciprocal", r, reciprocal_four_term_recurrence(p, -1, n));
  return reciprocal_triangle(gen_bessel1(p, n, r));
}

inline Triangle gen_lah_reciprocal(const FourParams& p, std::size_t n, Realization r = Realization::recurrence) {
  check_lah_params(p);
  if (r == Realization::recurrence) return detail::make("gen_lah_reciprocal", r, reciprocal_four_term_recurrence(p, +1, n));
  return reciprocal_triangle(gen_lah(p, n, r));
}

// ---------------------------------------------------------------------------
// Callan's H triangle: H_{n,k} = k! C(2n-k-1, k-1) (2n-2k-1)!!.

inline Triangle callan_h(std::size_t n, Realization r = Realization::formula) {
  if (n > 20) throw domain_error("callan_h: N must be at most 20");
  PolyMatrix m = detail::square(n);
  switch (r) {
    case Realization::formula:
      m(0, 0) = Poly(1);
      for (long i = 1; i <= static_cast<long>(n); ++i)
        for (long k = 1; k <= i; ++k)
          m(i, k) = Poly(detail::fact(static_cast<std::size_t>(k)) * detail::binom(2 * i - k - 1, k - 1) *
                         Rational(double_factorial_odd(i - k)));
      break;
    case Realization::recurrence:
      m(0, 0) = Poly(1);
      for (long i = 1; i <= static_cast<long>(n); ++i)
        for (long k = 0; k <= i; ++k) {
          Poly v;
          if (k <= i - 1) v += m(i - 1, k) * Rational(2 * i - k - 2);
          if (k >= 1) v += m(i - 1, k - 1) * Rational(k);
          m(i, k) = v;
        }
      break;
    case Realization::era: {
      FourParams classical{2, 1, 1, 0, Poly(0)};
      m = detail::scale_columns_by_factorial(gen_bessel1(classical, n, Realization::era).entries);
      break;
    }
    case Realization::oracle:
      throw domain_error("callan_h: no oracle");
  }
  return detail::make("callan_h", r, std::move(m));
}

// ---------------------------------------------------------------------------
// Signless Laguerre triangle: C(n+alpha, n-k) n!/k!, ERA ((1-t)^{-(alpha+1)}, t/(1-t)).

inline Triangle laguerre_triangle(const Rational& alpha, std::size_t n, Realization r = Realization::formula) {
  if (alpha < -1) throw domain_error("laguerre: alpha must be >= -1");
  PolyMatrix m = detail::square(n);
  switch (r) {
    case Realization::formula:
      for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t k = 0; k <= i; ++k)
          m(i, k) = Poly(binomial_rational(alpha + static_cast<unsigned long>(i), static_cast<unsigned>(i - k)) * detail::fact(i) /
                         detail::fact(k));
      break;
    case Realization::era: {
      using S = Series<Rational>;
      S g = binomial_series(-1, -(alpha + 1), n);
      S f = S::t(n) * binomial_series(-1, -1, n);
      m = to_poly_era(ExpRiordan<Rational>(g, f)).triangle(n);
      break;
    }
    case Realization::recurrence: {
      FourParams p{1, 1, 1, alpha + 1, Poly(0)};
      m = detail::four_term_recurrence(p, +1, false, n);
      break;
    }
    case Realization::oracle:
      throw domain_error("laguerre: no oracle");
  }
  return detail::make("laguerre", r, std::move(m));
}

/// Rook polynomials S_n(q) = sum_k C(n,k)^2 k! q^k as a triangle; the era
/// realization reverses the rows of the alpha = 0 Laguerre ERA.
inline Triangle rook_triangle(std::size_t n, Realization r = Realization::formula) {
  if (r == Realization::era) {
    Triangle t = reciprocal_triangle(laguerre_triangle(0, n, Realization::era));
    t.family = "rook";
    return t;
  }
  if (r != Realization::formula) throw domain_error("rook: realization " + to_string(r) + " not available");
  PolyMatrix m = detail::square(n);
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t k = 0; k <= i; ++k) {
      Rational c(binomial(i, k));
      m(i, k) = Poly(c * c * detail::fact(k));
    }
  return detail::make("rook", r, std::move(m));
}

inline std::vector<Poly> rook_polys(std::size_t n) { return rook_triangle(n).row_polys(); }

// ---------------------------------------------------------------------------
// Idempotent numbers C(n,k) k^{n-k}, ERA (1, t e^t), and the tree triangle.

namespace detail {

// Counts maps f: [n] -> [n] with f(f(x)) = f(x), by image size.
inline std::vector<Integer> idempotent_maps_by_image(std::size_t n) {
  std::vector<Integer> out(n + 1, 0);
  if (n == 0) {
    out[0] = 1;
    return out;
  }
  std::vector<std::size_t> f(n, 0);
  for (;;) {
    bool idem = true;
    for (std::size_t x = 0; x < n && idem; ++x) idem = f[f[x]] == f[x];
    if (idem) {
      std::size_t image = 0;
      for (std::size_t x = 0; x < n; ++x) image += f[x] == x;
      ++out[image];
    }
    std::size_t i = 0;
    while (i < n && ++f[i] == n) f[i++] = 0;
    if (i == n) break;
  }
  return out;
}

}  // namespace detail

inline Triangle idempotent_triangle(std::size_t n, Realization r = Realization::formula) {
  if (n > 20) throw domain_error("idempotent: N must be at most 20");
  PolyMatrix m = detail::square(n);
  switch (r) {
    case Realization::formula:
      for (std::size_t i = 0; i <= n; ++i)
        for (std::size_t k = 0; k <= i; ++k)
          m(i, k) = Poly(Rational(binomial(i, k)) * pow_int(Rational(static_cast<unsigned long>(k)), static_cast<unsigned>(i - k)));
      break;
    case Realization::era:
      m = to_poly_era(ExpRiordan<Rational>(Series<Rational>::constant(1, n), Series<Rational>::t(n) * exp_t(n))).triangle(n);
      break;
    case Realization::recurrence:
      // Column EGF derivative: c_k' = e^t c_{k-1} + k c_k.
      m(0, 0) = Poly(1);
      for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t k = 1; k <= i; ++k) {
          Poly v = m(i - 1, k) * Rational(static_cast<unsigned long>(k));
          for (std::size_t j = 0; j + 1 <= i; ++j)
            if (!m(i - 1 - j, k - 1).is_zero()) v += m(i - 1 - j, k - 1) * Rational(binomial(i - 1, j));
          m(i, k) = v;
        }
      break;
    case Realization::oracle: {
      if (n > kMapCap) throw domain_error("idempotent oracle: n exceeds the enumeration cap of " + std::to_string(kMapCap));
      for (std::size_t i = 0; i <= n; ++i) {
        auto counts = detail::idempotent_maps_by_image(i);
        for (std::size_t k = 0; k <= i; ++k) m(i, k) = Poly(Rational(counts[k]));
      }
      break;
    }
  }
  return detail::make("idempotent", r, std::move(m));
}

/// Signed tree triangle (-1)^{n-k} C(n-1,k-1) n^{n-k}: inverse of the idempotent triangle.
inline Triangle tree_triangle(std::size_t n, Realization r = Realization::formula) {
  PolyMatrix m = detail::square(n);
  switch (r) {
    case Realization::formula:
      m(0, 0) = Poly(1);
      for (long i = 1; i <= static_cast<long>(n); ++i)
        for (long k = 1; k <= i; ++k) {
          Rational v = detail::binom(i - 1, k - 1) * pow_int(Rational(i), static_cast<unsigned>(i - k));
          m(i, k) = Poly((i - k) % 2 ? Rational(-v) : v);
        }
      break;
    case Realization::era:
      m = to_poly_era(inverse(ExpRiordan<Rational>(Series<Rational>::constant(1, n), Series<Rational>::t(n) * exp_t(n)))).triangle(n);
      break;
    default:
      throw domain_error("tree: realization " + to_string(r) + " not available");
  }
  return detail::make("tree", r, std::move(m));
}

/// Unsigned tree row polynomials.
inline std::vector<Poly> tree_row_polys(std::size_t n) {
  Triangle t = tree_triangle(n);
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t k = 0; k <= i; ++k)
      if (!poly_is_coeff_nonneg(t.entries(i, k))) t.entries(i, k) = -t.entries(i, k);
  return t.row_polys();
}

// ---------------------------------------------------------------------------
// Eulerian triangle <n,k>: permutations of [n] with k-1 excedances. There is no
// exponential Riordan realization.

inline Triangle eulerian_triangle(std::size_t n, Realization r = Realization::recurrence) {
  if (n > 20) throw domain_error("eulerian: N must be at most 20");
  PolyMatrix m = detail::square(n);
  switch (r) {
    case Realization::recurrence:
      m(0, 0) = Poly(1);
      for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t k = 1; k <= i; ++k)
          m(i, k) = m(i - 1, k) * Rational(static_cast<unsigned long>(k)) + m(i - 1, k - 1) * Rational(static_cast<unsigned long>(i - k + 1));
      break;
    case Realization::formula:
      for (long i = 0; i <= static_cast<long>(n); ++i)
        for (long k = 0; k <= i; ++k) {
          Rational s = 0;
          for (long j = 0; j <= k; ++j) {
            Rational term = detail::binom(i + 1, j) * pow_int(Rational(k - j), static_cast<unsigned>(i));
            s += (j % 2) ? Rational(-term) : term;
          }
          m(i, k) = Poly(s);
        }
      break;
    case Realization::oracle: {
      if (n > kPermutationCap) throw domain_error("eulerian oracle: n exceeds the enumeration cap of " + std::to_string(kPermutationCap));
      m(0, 0) = Poly(1);
      for (std::size_t i = 1; i <= n; ++i) {
        std::vector<std::size_t> perm(i);
        std::iota(perm.begin(), perm.end(), 0);
        std::vector<Integer> counts(i + 1, 0);
        do {
          std::size_t exc = 0;
          for (std::size_t x = 0; x < i; ++x) exc += perm[x] > x;
          ++counts[exc + 1];
        } while (std::next_permutation(perm.begin(), perm.end()));
        for (std::size_t k = 0; k <= i; ++k) m(i, k) = Poly(Rational(counts[k]));
      }
      break;
    }
    case Realization::era:
      throw domain_error("eulerian: no exponential Riordan realization");
  }
  return detail::make("eulerian", r, std::move(m));
}

// ---------------------------------------------------------------------------
// Partial Bell polynomials B_{n,k}(x_1, x_2, ...): ERA (1, sum x_j t^j / j!).

inline Triangle bell_partial(const std::vector<Rational>& xs, std::size_t n, Realization r = Realization::recurrence) {
  if (xs.size() < n) throw domain_error("bell_partial: need x_1..x_N");
  auto x = [&](std::size_t j) { return j >= 1 && j <= xs.size() ? xs[j - 1] : Rational(0); };
  PolyMatrix m = detail::square(n);
  switch (r) {
    case Realization::recurrence:
      m(0, 0) = Poly(1);
      for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t k = 1; k <= i; ++k) {
          Poly v;
          for (std::size_t j = 1; j + k - 1 <= i; ++j)
            if (!m(i - j, k - 1).is_zero()) v += m(i - j, k - 1) * Rational(binomial(i - 1, j - 1) * x(j));
          m(i, k) = v;
        }
      break;
    case Realization::era: {
      Series<Rational> f(n);
      for (std::size_t j = 1; j <= n; ++j) f[j] = x(j) / detail::fact(j);
      m = to_poly_era(ExpRiordan<Rational>(Series<Rational>::constant(1, n), f)).triangle(n);
      break;
    }
    case Realization::formula:
      // Faa di Bruno: n! / prod(c_j! (j!)^{c_j}) prod x_j^{c_j} over partitions of n into k parts.
      m(0, 0) = Poly(1);
      for (std::size_t i = 1; i <= n; ++i)
        for (std::size_t k = 1; k <= i; ++k) {
          Rational s = 0;
          detail::for_each_partition(i, k, [&](const std::vector<std::size_t>& c) {
            Rational term = detail::fact(i);
            for (std::size_t j = 1; j < c.size(); ++j)
              if (c[j]) term *= pow_int(x(j) / detail::fact(j), static_cast<unsigned>(c[j])) / detail::fact(c[j]);
            s += term;
          });
          m(i, k) = Poly(s);
        }
      break;
    case Realization::oracle:
      m = detail::weighted_partition_oracle(n, [&](std::size_t s) { return x(s); });
      break;
  }
  return detail::make("bell_partial", r, std::move(m));
}

// ---------------------------------------------------------------------------
// Logarithmic and fractional triangles of f:
//   -log(1 - q f) = sum L_{n,k} q^k t^n/n!,   1/(1 - q f) = sum L~_{n,k} q^k t^n/n!.

namespace detail {

inline PolyMatrix q_expansion_triangle(const Series<Rational>& f, std::size_t n, bool logarithmic) {
  if (!is_zero(f[0])) throw domain_error("logarithmic/fractional triangle: f(0) must vanish");
  const VarList vars{"q"};
  const Poly q = Poly::variable("q", vars);
  Series<Poly> one_minus_qf = Series<Poly>::constant(Poly(1), n) - rseries(f.truncate(n)) * q;
  Series<Poly> s = logarithmic ? -log_series(one_minus_qf) : inverse(one_minus_qf);
  PolyMatrix m = square(n);
  for (std::size_t i = 0; i <= n; ++i) {
    Poly row = s[i] * fact(i);
    for (std::size_t k = 0; k <= i; ++k) m(i, k) = Poly(row.coeff_of("q", static_cast<unsigned>(k)).constant_term());
  }
  return m;
}

}  // namespace detail

inline Triangle logarithmic_triangle(const Series<Rational>& f, std::size_t n) {
  return detail::make("logarithmic", Realization::era, detail::q_expansion_triangle(f, n, true));
}
inline Triangle fractional_triangle(const Series<Rational>& f, std::size_t n) {
  return detail::make("fractional", Realization::era, detail::q_expansion_triangle(f, n, false));
}

/// Checks L~_{n,k} = k L_{n,k} = k! S_{n,k}(f, 1) for 1 <= k <= n; returns the
/// first offending (n, k) if any. (At k = 0 only L~_{0,0} = 1 is nonzero.)
inline std::optional<std::pair<std::size_t, std::size_t>> log_frac_identity_violation(const Series<Rational>& f, std::size_t n) {
  Triangle l = logarithmic_triangle(f, n), lt = fractional_triangle(f, n);
  PolyMatrix s = to_poly_era(ExpRiordan<Rational>(Series<Rational>::constant(1, n), f.truncate(n))).triangle(n);
  for (std::size_t i = 1; i <= n; ++i)
    for (std::size_t k = 1; k <= i; ++k) {
      Rational kk(static_cast<unsigned long>(k));
      if (!(lt.entries(i, k) == l.entries(i, k) * kk) || !(lt.entries(i, k) == s(i, k) * detail::fact(k))) return std::make_pair(i, k);
    }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Generalized cycle index: n A_n = sum_{j=1}^n x_j A_{n-j}, P_n = n! A_n.

struct CycleIndex {
  std::vector<Rational> xs;  // x_1..x_N
  std::vector<Rational> a;   // A_0..A_N
  std::vector<Rational> p;   // P_0..P_N
  std::optional<std::vector<Rational>> h;  // h_n(lambda) when built from lambdas
};

inline CycleIndex cycle_index(const std::vector<Rational>& xs, std::size_t n) {
  if (xs.size() < n) throw domain_error("cycle_index: need x_1..x_N");
  CycleIndex out;
  out.xs.assign(xs.begin(), xs.begin() + static_cast<long>(n));
  out.a.assign(n + 1, Rational(0));
  out.a[0] = 1;
  for (std::size_t i = 1; i <= n; ++i) {
    Rational s = 0;
    for (std::size_t j = 1; j <= i; ++j) s += xs[j - 1] * out.a[i - j];
    out.a[i] = s / static_cast<unsigned long>(i);
  }
  for (std::size_t i = 0; i <= n; ++i) out.p.push_back(out.a[i] * detail::fact(i));
  return out;
}

/// x_n = sum_i lambda_i^n; also computes h_n(lambda) independently and fails
/// hard if the two disagree.
inline CycleIndex cycle_index_from_lambdas(const std::vector<Rational>& lambdas, std::size_t n) {
  for (const auto& l : lambdas)
    if (sgn(l) < 0) throw domain_error("cycle_index: lambdas must be nonnegative");
  std::vector<Rational> xs;
  for (std::size_t j = 1; j <= n; ++j) {
    Rational s = 0;
    for (const auto& l : lambdas) s += pow_int(l, static_cast<unsigned>(j));
    xs.push_back(s);
  }
  CycleIndex out = cycle_index(xs, n);
  // h_n over the variables one at a time: h^{(i)}_n = sum_j lambda_i^j h^{(i-1)}_{n-j}.
  std::vector<Rational> h(n + 1, Rational(0));
  h[0] = 1;
  for (const auto& l : lambdas)
    for (std::size_t i = 1; i <= n; ++i) h[i] += l * h[i - 1];
  out.h = h;
  if (h != out.a) throw consistency_error("cycle_index: A_n differs from h_n(lambda)");
  return out;
}

// ---------------------------------------------------------------------------
// Binomial-coefficient triangles.
//   first:  C(n,k) C(n+ck, m+dk) (n-k)!, rows n, for d > 0, d >= c
//           = (t^m/(1-t)^{m+1}, t^{d-c}/(1-t)^d) column extraction
//   second: C(m,k) C(n+ck, m+dk) (m-k)!, rows m, for d <= -1, c >= 0
//           = ((1+t)^n, t^{-d}(1+t)^c) column extraction
// The fixed parameter is "m" for the first family and "n" for the second.

enum class BinomialFamily { first, second };

inline void check_binomial_params(BinomialFamily which, long fixed, long c, long d) {
  if (fixed < 0) throw domain_error("binomial triangle: fixed parameter must be a natural number");
  if (which == BinomialFamily::first && !(d > 0 && d >= c)) throw domain_error("binomial first family needs d > 0 and d >= c");
  if (which == BinomialFamily::second && !(d <= -1 && c >= 0)) throw domain_error("binomial second family needs d <= -1 and c >= 0");
}

inline Triangle binomial_triangle(BinomialFamily which, long fixed, long c, long d, std::size_t n,
                                  Realization r = Realization::formula) {
  check_binomial_params(which, fixed, c, d);
  const std::string name = which == BinomialFamily::first ? "binomial_first" : "binomial_second";
  PolyMatrix m = detail::square(n);
  if (r == Realization::formula) {
    for (long i = 0; i <= static_cast<long>(n); ++i)
      for (long k = 0; k <= i; ++k) {
        Rational v = which == BinomialFamily::first ? detail::binom(i + c * k, fixed + d * k) : detail::binom(fixed + c * k, i + d * k);
        m(i, k) = Poly(v * detail::fact(static_cast<std::size_t>(i)) / detail::fact(static_cast<std::size_t>(k)));
      }
    return detail::make(name, r, std::move(m));
  }
  if (r != Realization::era) throw domain_error(name + ": realization " + to_string(r) + " not available");
  // The column generating functions need not satisfy g(0) != 0, so extract
  // n!/k! [t^n] g f^k directly instead of going through ExpRiordan.
  using S = Series<Rational>;
  S g(n), f(n);
  if (which == BinomialFamily::first) {
    S shift_m(n), shift_dc(n);
    if (static_cast<std::size_t>(fixed) <= n) shift_m[static_cast<std::size_t>(fixed)] = 1;
    if (static_cast<std::size_t>(d - c) <= n) shift_dc[static_cast<std::size_t>(d - c)] = 1;
    g = shift_m * binomial_series(-1, Rational(-(fixed + 1)), n);
    f = shift_dc * binomial_series(-1, Rational(-d), n);
  } else {
    // t^{-d k} (1+t)^{n + ck}: t^{-d} is a nonnegative power here.
    g = binomial_series(1, Rational(fixed), n);
    S shift(n);
    if (static_cast<std::size_t>(-d) <= n) shift[static_cast<std::size_t>(-d)] = 1;
    f = shift * binomial_series(1, Rational(c), n);
  }
  S col = g;
  for (std::size_t k = 0; k <= n; ++k) {
    for (std::size_t i = k; i <= n; ++i) m(i, k) = Poly(col[i] * detail::fact(i) / detail::fact(k));
    col = col * f;
  }
  return detail::make(name, r, std::move(m));
}

/// Full square truncation of the first family's column-extraction array,
/// n!/k! [t^n] t^m/(1-t)^{m+1} (t^{d-c}/(1-t)^d)^k, including k > n. When
/// d = c these upper entries are nonzero and the array is not lower triangular.
inline RationalMatrix binomial_first_extraction_square(long m, long c, long d, std::size_t n) {
  check_binomial_params(BinomialFamily::first, m, c, d);
  RationalMatrix out(n + 1, n + 1);
  for (long i = 0; i <= static_cast<long>(n); ++i)
    for (long k = 0; k <= static_cast<long>(n); ++k)
      if (i - m - (d - c) * k >= 0)
        out(static_cast<std::size_t>(i), static_cast<std::size_t>(k)) =
            detail::binom(i + c * k, m + d * k) * detail::fact(static_cast<std::size_t>(i)) / detail::fact(static_cast<std::size_t>(k));
  return out;
}

/// The bare C(n+ck, m+dk) matrix on and below the diagonal: diag_scale by 1/n! and k!.
inline Triangle binomial_bare(const Triangle& t) {
  PolyMatrix m = diag_scale(t.entries, inverse_factorial_scales(t.entries.rows()), factorial_scales(t.entries.cols()));
  return detail::make(t.family + "_bare", t.realization, std::move(m));
}

// ---------------------------------------------------------------------------
// Real-rootedness: every row polynomial T_n(q), n >= 1, has all its roots real
// and at most -lambda, counted with multiplicity.

inline Certificate real_roots_check(const Triangle& t, const Rational& lambda) {
  Certificate cert;
  cert.property = "real-roots";
  cert.rows = t.size();
  cert.cols = t.size();
  cert.r = 0;
  cert.bindings["lambda"] = to_string(lambda);
  auto rows = t.row_polys("q");
  for (std::size_t n = 1; n < rows.size(); ++n) {
    UniPoly p = UniPoly::from_poly(rows[n], "q");
    if (p.is_zero()) continue;
    int roots = real_root_count_with_multiplicity(p, ExtRational::neg_inf(), ExtRational::finite(-lambda));
    if (roots != p.degree()) {
      cert.pass = false;
      cert.witness = Witness{{n}, {static_cast<std::size_t>(std::max(roots, 0))}, rows[n], std::nullopt};
      return cert;
    }
  }
  return cert;
}

// ---------------------------------------------------------------------------
// Registry: family name -> builder, available realizations, presets.

struct FamilyInfo {
  std::vector<Realization> realizations;
  std::function<Triangle(const FamilySpec&, Realization)> build;
  Bindings defaults;
  std::string description;
};

namespace detail {

inline ParamValue rv(long p, long q = 1) { return ParamValue::bound(make_rational(p, q)); }

inline std::map<std::string, FamilyInfo> make_registry() {
  using R = Realization;
  std::map<std::string, FamilyInfo> reg;
  auto four = [](const FamilySpec& s) { return four_params(s.params); };
  const Bindings four_defaults{{"a", rv(1)}, {"b", rv(1)}, {"c", rv(1)}, {"d", rv(0)}, {"lambda", rv(0)}};

  reg["pascal"] = {{R::formula, R::era}, [](const FamilySpec& s, R r) { return pascal_triangle(s.n, r); }, {}, "binomial coefficients"};
  reg["gen_bessel2"] = {{R::recurrence, R::era, R::formula, R::oracle},
                        [](const FamilySpec& s, R r) {
                          Triangle t = gen_bessel2(rational_param(s.params, "a"), rational_param(s.params, "b"),
                                                   rational_param(s.params, "c"), std::min(s.n, r == R::oracle ? kSetPartitionCap : s.n), r);
                          return t;
                        },
                        {{"a", rv(1)}, {"b", rv(1, 2)}, {"c", rv(0)}},
                        "ERA (1, a t + b t^2 + c t^3)"};
  reg["bessel2"] = reg["gen_bessel2"];
  reg["bessel2"].description = "Bessel numbers of the second kind: gen_bessel2 at (1, 1/2, 0)";
  reg["gen_bessel1"] = {{R::recurrence, R::era, R::formula},
                        [four](const FamilySpec& s, R r) { return gen_bessel1(four(s), s.n, r); },
                        {{"a", rv(2)}, {"b", rv(1)}, {"c", rv(1)}, {"d", rv(0)}, {"lambda", rv(0)}},
                        "generalized Bessel triangle ((1-abt)^{-d} e^{lambda f}, f), f = (c/b)(1-(1-abt)^{1/a})"};
  reg["bessel1"] = reg["gen_bessel1"];
  reg["bessel1"].description = "signless Bessel numbers b_{n,k}: gen_bessel1 at (2, 1, 1, 0, 0)";
  reg["gen_bessel1_tilde"] = {{R::recurrence, R::era, R::formula},
                              [four](const FamilySpec& s, R r) { return gen_bessel1_tilde(four(s), s.n, r); },
                              reg["gen_bessel1"].defaults, "k!-scaled generalized Bessel triangle"};
  reg["gen_bessel1_reciprocal"] = {{R::recurrence, R::era, R::formula},
                                   [four](const FamilySpec& s, R r) { return gen_bessel1_reciprocal(four(s), s.n, r); },
                                   reg["gen_bessel1"].defaults, "reciprocal generalized Bessel triangle T_{n,n-k}"};
  reg["gen_lah"] = {{R::recurrence, R::era, R::formula},
                    [four](const FamilySpec& s, R r) { return gen_lah(four(s), s.n, r); },
                    four_defaults,
                    "generalized Lah triangle ((1-abt)^{-d} e^{lambda f}, f), f = (c/b)((1-abt)^{-1/a}-1)"};
  reg["lah"] = reg["gen_lah"];
  reg["lah"].description = "signless Lah numbers: gen_lah at (1, 1, 1, 0, 0)";
  reg["stirling2"] = reg["gen_lah"];
  reg["stirling2"].realizations = {R::recurrence, R::era};
  reg["stirling2"].defaults = {{"a", rv(0)}, {"b", rv(1)}, {"c", rv(1)}, {"d", rv(0)}, {"lambda", rv(0)}};
  reg["stirling2"].description = "Stirling numbers of the second kind: gen_lah at a = 0";
  reg["gen_lah_tilde"] = {{R::recurrence, R::era, R::formula},
                          [four](const FamilySpec& s, R r) { return gen_lah_tilde(four(s), s.n, r); }, four_defaults,
                          "k!-scaled generalized Lah triangle"};
  reg["gen_lah_reciprocal"] = {{R::recurrence, R::era, R::formula},
                               [four](const FamilySpec& s, R r) { return gen_lah_reciprocal(four(s), s.n, r); }, four_defaults,
                               "reciprocal generalized Lah triangle T_{n,n-k}"};
  reg["callan_h"] = {{R::formula, R::recurrence, R::era}, [](const FamilySpec& s, R r) { return callan_h(s.n, r); }, {},
                     "Callan's H_{n,k} = k! C(2n-k-1,k-1) (2n-2k-1)!!"};
  reg["laguerre"] = {{R::formula, R::era, R::recurrence},
                     [](const FamilySpec& s, R r) { return laguerre_triangle(rational_param(s.params, "alpha"), s.n, r); },
                     {{"alpha", rv(0)}}, "signless Laguerre triangle C(n+alpha, n-k) n!/k!"};
  reg["rook"] = {{R::formula, R::era}, [](const FamilySpec& s, R r) { return rook_triangle(s.n, r); }, {},
                 "rook polynomials sum_k C(n,k)^2 k! q^k"};
  reg["idempotent"] = {{R::formula, R::era, R::recurrence, R::oracle},
                       [](const FamilySpec& s, R r) { return idempotent_triangle(r == R::oracle ? std::min(s.n, kMapCap) : s.n, r); },
                       {}, "idempotent numbers C(n,k) k^{n-k}"};
  reg["tree"] = {{R::formula, R::era}, [](const FamilySpec& s, R r) { return tree_triangle(s.n, r); }, {},
                 "signed rooted-tree triangle, inverse of the idempotent triangle"};
  reg["eulerian"] = {{R::recurrence, R::formula, R::oracle},
                     [](const FamilySpec& s, R r) { return eulerian_triangle(r == R::oracle ? std::min(s.n, kPermutationCap) : s.n, r); },
                     {}, "Eulerian numbers <n,k>"};
  reg["bell_partial"] = {{R::recurrence, R::era, R::formula, R::oracle},
                         [](const FamilySpec& s, R r) {
                           std::size_t n = r == R::oracle ? std::min(s.n, kSetPartitionCap) : s.n;
                           if (!s.xs.empty()) return bell_partial(s.xs, n, r);
                           std::vector<Rational> ones(s.n, Rational(1));
                           return bell_partial(ones, n, r);
                         },
                         {}, "partial Bell polynomials B_{n,k}(x_1, x_2, ...); default x_j = 1"};
  auto binom_builder = [](BinomialFamily which) {
    return [which](const FamilySpec& s, R r) {
      return binomial_triangle(which, integer_param(s.params, which == BinomialFamily::first ? "m" : "n"), integer_param(s.params, "c"),
                               integer_param(s.params, "d"), s.n, r);
    };
  };
  reg["binomial_first"] = {{R::formula, R::era}, binom_builder(BinomialFamily::first), {{"m", rv(1)}, {"c", rv(1)}, {"d", rv(2)}},
                           "C(n,k) C(n+ck, m+dk) (n-k)!, d > 0, d >= c"};
  reg["binomial_second"] = {{R::formula, R::era}, binom_builder(BinomialFamily::second), {{"n", rv(3)}, {"c", rv(1)}, {"d", rv(-1)}},
                            "C(m,k) C(n+ck, m+dk) (m-k)!, d <= -1, c >= 0"};
  return reg;
}

// Presets that pin parameters regardless of what the job supplies.
inline const std::map<std::string, Bindings>& pinned_presets() {
  static const std::map<std::string, Bindings> p{
      {"bessel2", {{"a", rv(1)}, {"b", rv(1, 2)}, {"c", rv(0)}}},
      {"bessel1", {{"a", rv(2)}, {"b", rv(1)}, {"c", rv(1)}, {"d", rv(0)}, {"lambda", rv(0)}}},
      {"lah", {{"a", rv(1)}, {"b", rv(1)}, {"c", rv(1)}, {"d", rv(0)}, {"lambda", rv(0)}}},
      {"stirling2", {{"a", rv(0)}, {"b", rv(1)}, {"c", rv(1)}, {"d", rv(0)}, {"lambda", rv(0)}}},
  };
  return p;
}

}  // namespace detail

inline const std::map<std::string, FamilyInfo>& family_registry() {
  static const std::map<std::string, FamilyInfo> reg = detail::make_registry();
  return reg;
}

inline const FamilyInfo& family_info(const std::string& name) {
  const auto& reg = family_registry();
  auto it = reg.find(name);
  if (it == reg.end()) throw domain_error("unknown family '" + name + "'");
  return it->second;
}

/// Fills in defaults and pinned preset values.
inline FamilySpec resolve(FamilySpec spec) {
  const auto& info = family_info(spec.family);
  for (const auto& [k, v] : info.defaults) spec.params.try_emplace(k, v);
  auto pin = detail::pinned_presets().find(spec.family);
  if (pin != detail::pinned_presets().end())
    for (const auto& [k, v] : pin->second) spec.params[k] = v;
  return spec;
}

inline Triangle build_family(const FamilySpec& spec, Realization r) {
  FamilySpec s = resolve(spec);
  const auto& info = family_info(s.family);
  if (std::find(info.realizations.begin(), info.realizations.end(), r) == info.realizations.end())
    throw domain_error(s.family + ": realization " + to_string(r) + " not available");
  Triangle t = info.build(s, r);
  t.family = s.family;
  return t;
}

/// The family's exponential Riordan array through order N, for families that
/// have one (tilde, reciprocal, Eulerian, Callan, rook and binomial families do not
/// expose a proper array here).
inline std::optional<ExpRiordan<Poly>> family_era(const FamilySpec& spec) {
  FamilySpec s = resolve(spec);
  const std::string& f = s.family;
  const std::size_t n = s.n;
  using S = Series<Rational>;
  if (f == "pascal") return to_poly_era(ExpRiordan<Rational>(exp_t(n), S::t(n)));
  if (f == "gen_bessel2" || f == "bessel2") {
    S g = S::constant(1, n), fs(n);
    const Rational coef[3] = {detail::rational_param(s.params, "a"), detail::rational_param(s.params, "b"),
                              detail::rational_param(s.params, "c")};
    check_bessel2_params(coef[0], coef[1], coef[2]);
    for (std::size_t j = 1; j <= 3 && j <= n; ++j) fs[j] = coef[j - 1];
    return to_poly_era(ExpRiordan<Rational>(g, fs));
  }
  if (f == "gen_bessel1" || f == "bessel1") {
    FourParams p = four_params(s.params);
    check_bessel1_params(p);
    return detail::four_term_era(p, false, n);
  }
  if (f == "gen_lah" || f == "lah" || f == "stirling2") {
    FourParams p = four_params(s.params);
    check_lah_params(p);
    return detail::four_term_era(p, true, n);
  }
  if (f == "laguerre") {
    Rational alpha = detail::rational_param(s.params, "alpha");
    if (alpha < -1) throw domain_error("laguerre: alpha must be >= -1");
    return to_poly_era(ExpRiordan<Rational>(binomial_series(-1, -(alpha + 1), n), S::t(n) * binomial_series(-1, -1, n)));
  }
  if (f == "idempotent") return to_poly_era(ExpRiordan<Rational>(S::constant(1, n), S::t(n) * exp_t(n)));
  if (f == "tree") return to_poly_era(inverse(ExpRiordan<Rational>(S::constant(1, n), S::t(n) * exp_t(n))));
  if (f == "bell_partial") {
    std::vector<Rational> xs = s.xs.empty() ? std::vector<Rational>(n, Rational(1)) : s.xs;
    if (xs.size() < n) throw domain_error("bell_partial: need x_1..x_N");
    S fs(n);
    for (std::size_t j = 1; j <= n; ++j) fs[j] = xs[j - 1] / detail::fact(j);
    return to_poly_era(ExpRiordan<Rational>(S::constant(1, n), fs));
  }
  return std::nullopt;
}

/// Builds every available realization and compares them on their common rows.
/// Witness: rows = {n}, cols = {k}, value = first realization's entry; the
/// bindings name the two realizations that disagree.
inline Certificate cross_validate(const FamilySpec& spec) {
  FamilySpec s = resolve(spec);
  const auto& info = family_info(s.family);
  Certificate cert;
  cert.property = "realization-agreement";
  cert.rows = cert.cols = s.n + 1;
  std::vector<Triangle> built;
  for (auto r : info.realizations) built.push_back(build_family(s, r));
  for (std::size_t i = 1; i < built.size(); ++i) {
    const auto& a = built[0].entries;
    const auto& b = built[i].entries;
    const std::size_t rows = std::min(a.rows(), b.rows());
    for (std::size_t n = 0; n < rows; ++n)
      for (std::size_t k = 0; k <= n; ++k)
        if (!(a(n, k) == b(n, k))) {
          cert.pass = false;
          cert.witness = Witness{{n}, {k}, a(n, k) - b(n, k), std::nullopt};
          cert.bindings["left"] = to_string(built[0].realization);
          cert.bindings["right"] = to_string(built[i].realization);
          return cert;
        }
  }
  std::string names;
  for (const auto& t : built) names += (names.empty() ? "" : ",") + to_string(t.realization);
  cert.bindings["realizations"] = names;
  cert.note = "exact entrywise agreement";
  return cert;
}

/// Builds the family's primary realization after confirming all realizations agree.
inline Triangle build_checked(const FamilySpec& spec) {
  Certificate c = cross_validate(spec);
  if (!c.pass)
    throw consistency_error(spec.family + ": realizations " + c.bindings["left"] + " and " + c.bindings["right"] + " disagree at (" +
                            std::to_string(c.witness->rows[0]) + ", " + std::to_string(c.witness->cols[0]) + ")");
  return build_family(spec, family_info(resolve(spec).family).realizations.front());
}

}  // namespace rtp
