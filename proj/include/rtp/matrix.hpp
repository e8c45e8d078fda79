#pragma once

// Dense matrices over Rational or Poly, and exact determinants.

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <unordered_map>
#include <utility>
#include <vector>

#include "rtp/poly.hpp"
#include "rtp/rational.hpp"

namespace rtp {

template <class R>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, R(0)) {}
  Matrix(std::initializer_list<std::initializer_list<R>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw domain_error("ragged matrix literal");
      for (const auto& x : row) data_.push_back(x);
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = R(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  R& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const R& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<const R> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    if (r0 + nr > rows_ || c0 + nc > cols_) throw domain_error("block out of range");
    Matrix out(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) out(i, j) = (*this)(r0 + i, c0 + j);
    return out;
  }

  Matrix submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
    Matrix out(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) out(i, j) = (*this)(rows[i], cols[j]);
    return out;
  }

  bool is_lower_triangular() const {
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if (!is_zero((*this)(i, j))) return false;
    return true;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw domain_error("matrix product shape mismatch");
    Matrix out(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const R& aik = a(i, k);
        if (is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!is_zero(b(k, j))) out(i, j) += aik * b(k, j);
      }
    return out;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t i = 0; i < a.data_.size(); ++i)
      if (!(a.data_[i] == b.data_[i])) return false;
    return true;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<R> data_;
};

using RationalMatrix = Matrix<Rational>;
using PolyMatrix = Matrix<Poly>;

inline PolyMatrix to_poly_matrix(const RationalMatrix& m) {
  PolyMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = Poly(m(i, j));
  return out;
}

/// Requires every entry to be a constant polynomial.
inline RationalMatrix to_rational_matrix(const PolyMatrix& m) {
  RationalMatrix out(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = poly_to_rational(m(i, j));
  return out;
}

template <class R>
Matrix<R> transpose(const Matrix<R>& m) {
  Matrix<R> out(m.cols(), m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(j, i) = m(i, j);
  return out;
}

namespace detail {

// Fraction-free Gaussian elimination with row swaps. Every division is exact.
template <class R, class DivExact>
R bareiss(Matrix<R> a, DivExact div_exact) {
  const std::size_t n = a.rows();
  R prev(1);
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (is_zero(a(k, k))) {
      std::size_t p = k + 1;
      while (p < n && is_zero(a(p, k))) ++p;
      if (p == n) return R(0);
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(p, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) {
        R num = a(i, j) * a(k, k) - a(i, k) * a(k, j);
        a(i, j) = div_exact(num, prev);
      }
      a(i, k) = R(0);
    }
    prev = a(k, k);
  }
  R det = a(n - 1, n - 1);
  return sign > 0 ? det : R(-det);
}

// Laplace expansion along rows with memoized minors keyed by the used-column mask.
inline Poly memo_cofactor_det(const PolyMatrix& a) {
  const std::size_t n = a.rows();
  std::unordered_map<std::uint32_t, Poly> memo;
  // minor(mask) = det of rows [n - popcount(mask), n) and the columns in mask.
  auto rec = [&](auto&& self, std::uint32_t mask, std::size_t row) -> Poly {
    if (row == n) return Poly(1);
    auto it = memo.find(mask);
    if (it != memo.end()) return it->second;
    Poly acc;
    int sign = 1;
    for (std::size_t j = 0; j < n; ++j) {
      std::uint32_t bit = 1U << j;
      if (mask & bit) continue;
      if (!a(row, j).is_zero()) {
        Poly sub = self(self, mask | bit, row + 1);
        if (!sub.is_zero()) {
          Poly term = a(row, j) * sub;
          if (sign > 0)
            acc += term;
          else
            acc -= term;
        }
      }
      sign = -sign;
    }
    memo.emplace(mask, acc);
    return acc;
  };
  return rec(rec, 0U, 0);
}

}  // namespace detail

/// Exact determinant over Q by fraction-free elimination.
inline Rational det_exact(const RationalMatrix& m) {
  if (!m.square()) throw domain_error("det_exact: non-square matrix");
  if (m.rows() == 0) return 1;
  Rational d = detail::bareiss(m, [](const Rational& num, const Rational& den) { return Rational(num / den); });
  d.canonicalize();
  return d;
}

/// Exact determinant over Q[x]: memoized cofactor expansion up to size 8,
/// fraction-free elimination with exact polynomial division beyond.
inline Poly det_exact(const PolyMatrix& m) {
  if (!m.square()) throw domain_error("det_exact: non-square matrix");
  if (m.rows() == 0) return Poly(1);
  if (m.rows() <= 8) return detail::memo_cofactor_det(m);
  return detail::bareiss(m, [](const Poly& num, const Poly& den) { return num.divide_exact(den); });
}

}  // namespace rtp
