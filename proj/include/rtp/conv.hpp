#pragma once

// A-convolutions z_n = sum_k a_{n,k} x_k y_{n-k} and sampling probes of
// whether a triangle A maps pairs of Stieltjes moment sequences to one.

#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "rtp/matrix.hpp"
#include "rtp/poly.hpp"
#include "rtp/positivity.hpp"
#include "rtp/rational.hpp"

namespace rtp {

/// z_n = sum_{k=0}^n A_{n,k} x_k y_{n-k} for n = 0..N. A must have N+1 rows
/// of rational constants.
template <class R>
std::vector<Rational> a_convolution(const Matrix<R>& a, const std::vector<Rational>& xs, const std::vector<Rational>& ys, std::size_t n) {
  if (xs.size() < n + 1 || ys.size() < n + 1) throw domain_error("a_convolution: sequences need N+1 terms");
  if (a.rows() < n + 1 || a.cols() < n + 1) throw domain_error("a_convolution: triangle needs N+1 rows");
  std::vector<Rational> z(n + 1, Rational(0));
  for (std::size_t i = 0; i <= n; ++i)
    for (std::size_t k = 0; k <= i; ++k) {
      Rational aik;
      if constexpr (std::is_same_v<R, Poly>) {
        if (!a(i, k).is_constant()) throw domain_error("a_convolution: triangle entries must be rational");
        aik = a(i, k).constant_term();
      } else {
        aik = a(i, k);
      }
      if (!is_zero(aik)) z[i] += aik * xs[k] * ys[i - k];
    }
  return z;
}

struct SMSample {
  std::string name;
  std::vector<Rational> terms;
  std::string provenance;
};

/// Registers a sample after confirming its (N+1) x (N+1) Hankel matrix is TP_r.
inline SMSample make_sm_sample(std::string name, std::vector<Rational> terms, std::string provenance, std::size_t n, unsigned r) {
  if (terms.size() < 2 * n + 1) throw domain_error("SM sample '" + name + "' needs 2N+1 terms");
  Certificate c = is_sm_r(terms, n, r);
  if (!c.pass) throw domain_error("SM sample '" + name + "' fails its Hankel check");
  return {std::move(name), std::move(terms), std::move(provenance)};
}

/// The built-in library: n!, Catalan, (2n)!/n!, 1, 2^n, (n+1)^n; 2N+1 terms each.
inline std::vector<SMSample> sm_library(std::size_t n, unsigned r) {
  const std::size_t len = 2 * n + 1;
  std::vector<Rational> fact, catalan, double_fact, ones, geometric, trees;
  for (std::size_t i = 0; i < len; ++i) {
    const auto u = static_cast<unsigned>(i);
    fact.emplace_back(factorial(u));
    catalan.push_back(Rational(binomial(2 * i, i)) / Rational(static_cast<unsigned long>(i + 1)));
    double_fact.push_back(Rational(factorial(2 * u)) / Rational(factorial(u)));
    ones.emplace_back(1);
    geometric.push_back(pow_int(Rational(2), u));
    trees.push_back(pow_int(Rational(static_cast<unsigned long>(i + 1)), u));
  }
  std::vector<SMSample> lib;
  lib.push_back(make_sm_sample("factorial", fact, "moments of e^{-x} dx on [0, inf)", n, r));
  lib.push_back(make_sm_sample("catalan", catalan, "moments of sqrt(x(4-x))/(2 pi x) dx on [0, 4]", n, r));
  lib.push_back(make_sm_sample("double_factorial_ratio", double_fact, "(2n)!/n! = 2^n (2n-1)!!, moments of a gamma-type density", n, r));
  lib.push_back(make_sm_sample("ones", ones, "point mass at 1", n, r));
  lib.push_back(make_sm_sample("geometric_2", geometric, "point mass at 2", n, r));
  lib.push_back(make_sm_sample("shifted_tree_count", trees, "(n+1)^n, the sequence n^{n-1} shifted by one", n, r));
  return lib;
}

inline const std::vector<Rational>& sm_q_grid() {
  static const std::vector<Rational> grid{Rational(0), make_rational(1, 2), Rational(1), Rational(2)};
  return grid;
}

struct SMProbeReport {
  /// is_sm_r of (A_n(q))_n at each grid point; bindings carry q.
  std::vector<Certificate> hypothesis;
  /// is_sm_r of the convolution of each ordered pair; bindings carry x and y.
  std::vector<Certificate> pairs;

  bool hypothesis_holds() const {
    for (const auto& c : hypothesis)
      if (!c.pass) return false;
    return true;
  }
  bool pairs_pass() const {
    for (const auto& c : pairs)
      if (!c.pass) return false;
    return true;
  }
};

/// Row polynomial values sum_k A_{n,k} q^k for n = 0..len-1.
template <class R>
std::vector<Rational> row_values(const Matrix<R>& a, const Rational& q, std::size_t len) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < len; ++i) {
    Rational s = 0, qk = 1;
    for (std::size_t k = 0; k <= i && k < a.cols(); ++k) {
      Rational aik;
      if constexpr (std::is_same_v<R, Poly>)
        aik = a(i, k).constant_term();
      else
        aik = a(i, k);
      s += aik * qk;
      qk *= q;
    }
    out.push_back(s);
  }
  return out;
}

/// Checks the Hankel matrices of size N+1 up to minor order r, so A needs 2N+1 rows.
template <class R>
SMProbeReport sm_preservation_probe(const Matrix<R>& a, const std::vector<SMSample>& library, std::size_t n, unsigned r) {
  const std::size_t len = 2 * n + 1;
  if (a.rows() < len || a.cols() < len) throw domain_error("sm_preservation_probe: triangle needs 2N+1 rows");
  SMProbeReport rep;
  for (const auto& q : sm_q_grid()) {
    Certificate c = is_sm_r(row_values(a, q, len), n, r);
    c.property = "sm-row-values";
    c.bindings["q"] = to_string(q);
    rep.hypothesis.push_back(std::move(c));
  }
  for (const auto& x : library)
    for (const auto& y : library) {
      Certificate c = is_sm_r(a_convolution(a, x.terms, y.terms, len - 1), n, r);
      c.property = "sm-convolution";
      c.bindings["x"] = x.name;
      c.bindings["y"] = y.name;
      rep.pairs.push_back(std::move(c));
    }
  return rep;
}

/// Termwise products of every pair of samples.
inline std::vector<Certificate> hadamard_closure(const std::vector<SMSample>& library, std::size_t n, unsigned r) {
  std::vector<Certificate> out;
  for (std::size_t i = 0; i < library.size(); ++i)
    for (std::size_t j = i; j < library.size(); ++j) {
      std::vector<Rational> prod;
      for (std::size_t k = 0; k < 2 * n + 1; ++k) prod.push_back(library[i].terms[k] * library[j].terms[k]);
      Certificate c = is_sm_r(prod, n, r);
      c.property = "sm-hadamard";
      c.bindings["x"] = library[i].name;
      c.bindings["y"] = library[j].name;
      out.push_back(std::move(c));
    }
  return out;
}

}  // namespace rtp
