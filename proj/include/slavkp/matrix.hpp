#pragma once

// Dense square matrices over a scalar field, exact determinants and the
// Vandermonde product.

#include <slavkp/scalar.hpp>

#include <cstddef>
#include <cstdint>
#include <span>
#include <stdexcept>
#include <unordered_map>
#include <utility>
#include <vector>

namespace slavkp {

template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols, from_int<T>(0)) {}
  Matrix(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

  /// Row-major construction from nested lists; all rows must share a length.
  Matrix(std::initializer_list<std::initializer_list<T>> rows) : rows_(rows.size()) {
    cols_ = rows_ == 0 ? 0 : rows.begin()->size();
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      data_.insert(data_.end(), r.begin(), r.end());
    }
  }

  template <class F>
  static Matrix generate(std::size_t rows, std::size_t cols, F&& f) {
    Matrix m;
    m.rows_ = rows;
    m.cols_ = cols;
    m.data_.reserve(rows * cols);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < cols; ++j) m.data_.push_back(f(i, j));
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }

  Matrix transposed() const {
    return generate(cols_, rows_, [&](std::size_t i, std::size_t j) { return (*this)(j, i); });
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    return generate(a.rows_, b.cols_, [&](std::size_t i, std::size_t j) {
      T acc = from_int<T>(0);
      for (std::size_t k = 0; k < a.cols_; ++k) acc = acc + a(i, k) * b(k, j);
      return acc;
    });
  }

 private:
  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

namespace detail {

template <class T>
T det_bareiss(Matrix<T> m) {
  const std::size_t n = m.rows();
  T prev = from_int<T>(1);
  bool negate = false;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (is_zero(m(k, k))) {
      std::size_t p = k + 1;
      while (p < n && is_zero(m(p, k))) ++p;
      if (p == n) return from_int<T>(0);
      m.swap_rows(k, p);
      negate = !negate;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = (m(i, j) * m(k, k) - m(i, k) * m(k, j)) / prev;
      m(i, k) = from_int<T>(0);
    }
    prev = m(k, k);
  }
  T d = m(n - 1, n - 1);
  return negate ? T(-d) : d;
}

template <class T>
T det_partial_pivot(Matrix<T> m) {
  const std::size_t n = m.rows();
  T d = from_int<T>(1);
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    Real best = magnitude(m(k, k));
    for (std::size_t i = k + 1; i < n; ++i) {
      Real mag = magnitude(m(i, k));
      if (mag > best) {
        best = mag;
        p = i;
      }
    }
    if (best == 0) return from_int<T>(0);
    if (p != k) {
      m.swap_rows(k, p);
      d = -d;
    }
    d = d * m(k, k);
    for (std::size_t i = k + 1; i < n; ++i) {
      T factor = m(i, k) / m(k, k);
      for (std::size_t j = k + 1; j < n; ++j) m(i, j) = m(i, j) - factor * m(k, j);
    }
  }
  return d;
}

}  // namespace detail

/// Determinant over a field. Fraction-free Bareiss elimination in exact
/// modes, partial pivoting in float modes. The empty matrix has det 1.
template <class T>
T det(const Matrix<T>& m) {
  if (!m.square()) throw std::invalid_argument("det of a non-square matrix");
  if (m.rows() == 0) return from_int<T>(1);
  if constexpr (field_traits<T>::exact)
    return detail::det_bareiss(m);
  else
    return detail::det_partial_pivot(m);
}

/// Division-free determinant for commutative rings (Laplace expansion along
/// rows, memoized over the set of used columns). `zero`/`one` supply the ring
/// constants since ring elements may carry shape (e.g. truncation data).
template <class R>
R det_expand(const std::vector<std::vector<R>>& m, const R& zero, const R& one) {
  const std::size_t n = m.size();
  if (n == 0) return one;
  if (n > 20) throw std::invalid_argument("det_expand limited to 20x20");
  for (const auto& row : m)
    if (row.size() != n) throw std::invalid_argument("det_expand of a non-square matrix");
  // minor(mask) = det of rows [popcount(mask), n) restricted to the columns not in mask
  std::unordered_map<std::uint32_t, R> memo;
  const std::uint32_t full = (std::uint32_t(1) << n) - 1;
  auto rec = [&](auto&& self, std::uint32_t used) -> R {
    if (used == full) return one;
    if (auto it = memo.find(used); it != memo.end()) return it->second;
    const std::size_t row = static_cast<std::size_t>(__builtin_popcount(used));
    R acc = zero;
    int sign = 1;
    for (std::size_t c = 0; c < n; ++c) {
      if (used & (std::uint32_t(1) << c)) continue;
      R term = m[row][c] * self(self, used | (std::uint32_t(1) << c));
      acc = sign > 0 ? acc + term : acc - term;
      sign = -sign;
    }
    memo.emplace(used, acc);
    return acc;
  };
  return rec(rec, 0);
}

/// Cofactor-expansion determinant of a field matrix (used for small sizes and
/// as an independent check on det()).
template <class T>
T det_cofactor(const Matrix<T>& m) {
  if (!m.square()) throw std::invalid_argument("det of a non-square matrix");
  std::vector<std::vector<T>> rows(m.rows(), std::vector<T>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) rows[i][j] = m(i, j);
  return det_expand(rows, from_int<T>(0), from_int<T>(1));
}

/// Solves a x = b. Throws std::domain_error when a is singular.
template <class T>
std::vector<T> solve_linear(Matrix<T> a, std::vector<T> b) {
  const std::size_t n = a.rows();
  if (!a.square() || b.size() != n) throw std::invalid_argument("solve_linear shape mismatch");
  for (std::size_t k = 0; k < n; ++k) {
    std::size_t p = k;
    if constexpr (field_traits<T>::exact) {
      while (p < n && is_zero(a(p, k))) ++p;
      if (p == n) throw std::domain_error("singular linear system");
    } else {
      Real best = magnitude(a(k, k));
      for (std::size_t i = k + 1; i < n; ++i)
        if (Real mag = magnitude(a(i, k)); mag > best) {
          best = mag;
          p = i;
        }
      if (best == 0) throw std::domain_error("singular linear system");
    }
    a.swap_rows(k, p);
    std::swap(b[k], b[p]);
    for (std::size_t i = k + 1; i < n; ++i) {
      if (is_zero(a(i, k))) continue;
      T factor = a(i, k) / a(k, k);
      for (std::size_t j = k; j < n; ++j) a(i, j) = a(i, j) - factor * a(k, j);
      b[i] = b[i] - factor * b[k];
    }
  }
  std::vector<T> x(n, from_int<T>(0));
  for (std::size_t k = n; k-- > 0;) {
    T acc = b[k];
    for (std::size_t j = k + 1; j < n; ++j) acc = acc - a(k, j) * x[j];
    x[k] = acc / a(k, k);
  }
  return x;
}

/// Inverse of an exact square matrix via Gauss-Jordan.
template <class T>
Matrix<T> inverse(const Matrix<T>& a) {
  const std::size_t n = a.rows();
  Matrix<T> inv(n, n);
  for (std::size_t col = 0; col < n; ++col) {
    std::vector<T> e(n, from_int<T>(0));
    e[col] = from_int<T>(1);
    auto x = solve_linear(a, e);
    for (std::size_t i = 0; i < n; ++i) inv(i, col) = x[i];
  }
  return inv;
}

/// Prod_{i<j} (x_i - x_j); 1 for fewer than two points.
template <class T>
T vandermonde(std::span<const T> points) {
  T acc = from_int<T>(1);
  for (std::size_t i = 0; i < points.size(); ++i)
    for (std::size_t j = i + 1; j < points.size(); ++j) acc = acc * (points[i] - points[j]);
  return acc;
}

template <class T>
T vandermonde(const std::vector<T>& points) {
  return vandermonde(std::span<const T>(points));
}

}  // namespace slavkp
