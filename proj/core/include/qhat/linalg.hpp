#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qhat/errors.hpp"

namespace qhat {

inline bool is_zero(const mpq_class& x) { return sgn(x) == 0; }

namespace detail {
template <class T>
bool entry_is_zero(const T& x) {
  return is_zero(x);
}
}  // namespace detail

/// Dense row-major matrix over an exact field T. T must provide + - * /,
/// construction from 0 and 1, equality, and a free is_zero(const T&).
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), a_(rows * cols, T(0)) {}

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return a_.empty(); }

  T& operator()(std::size_t i, std::size_t j) { return a_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return a_[i * cols_ + j]; }
  const std::vector<T>& data() const { return a_; }

  bool is_zero() const {
    for (const auto& x : a_) {
      if (!detail::entry_is_zero(x)) return false;
    }
    return true;
  }

  Matrix& operator+=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < a_.size(); ++k) {
      if (!detail::entry_is_zero(o.a_[k])) a_[k] += o.a_[k];
    }
    return *this;
  }
  Matrix& operator-=(const Matrix& o) {
    check_same_shape(o);
    for (std::size_t k = 0; k < a_.size(); ++k) {
      if (!detail::entry_is_zero(o.a_[k])) a_[k] -= o.a_[k];
    }
    return *this;
  }
  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }

  Matrix& operator*=(const T& s) {
    if (detail::entry_is_zero(s)) {
      for (auto& x : a_) x = T(0);
      return *this;
    }
    for (auto& x : a_) {
      if (!detail::entry_is_zero(x)) x *= s;
    }
    return *this;
  }
  friend Matrix operator*(const T& s, Matrix m) { return m *= s; }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw InvalidArgument("Matrix: shape mismatch in product");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (detail::entry_is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const T& bkj = b(k, j);
          if (detail::entry_is_zero(bkj)) continue;
          c(i, j) += aik * bkj;
        }
      }
    }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.a_ == b.a_;
  }

  Matrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    Matrix m(nr, nc);
    for (std::size_t i = 0; i < nr; ++i) {
      for (std::size_t j = 0; j < nc; ++j) m(i, j) = (*this)(r0 + i, c0 + j);
    }
    return m;
  }

  void set_block(std::size_t r0, std::size_t c0, const Matrix& m) {
    for (std::size_t i = 0; i < m.rows(); ++i) {
      for (std::size_t j = 0; j < m.cols(); ++j) (*this)(r0 + i, c0 + j) = m(i, j);
    }
  }

  Matrix transposed() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    }
    return t;
  }

  std::vector<T> row(std::size_t i) const {
    return std::vector<T>(a_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                          a_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  /// Applies a function to every entry, producing a matrix over another field.
  template <class F>
  auto map(F&& f) const -> Matrix<decltype(f(std::declval<const T&>()))> {
    Matrix<decltype(f(std::declval<const T&>()))> m(rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = f((*this)(i, j));
    }
    return m;
  }

 private:
  void check_same_shape(const Matrix& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw InvalidArgument("Matrix: shape mismatch");
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> a_;
};

/// Incremental row echelon form. Rows are stored normalized so that the
/// pivot (first nonzero entry) equals 1; insertion order is preserved.
template <class T>
class Echelon {
 public:
  explicit Echelon(std::size_t width = 0) : width_(width) {}

  std::size_t width() const { return width_; }
  std::size_t rank() const { return rows_.size(); }
  const std::vector<std::vector<T>>& rows() const { return rows_; }
  const std::vector<std::size_t>& pivots() const { return pivots_; }

  /// Reduces v against the stored rows, in insertion order.
  std::vector<T> reduce(std::vector<T> v) const {
    for (std::size_t r = 0; r < rows_.size(); ++r) {
      const T& c = v[pivots_[r]];
      if (detail::entry_is_zero(c)) continue;
      T f = c;
      const auto& row = rows_[r];
      for (std::size_t j = pivots_[r]; j < width_; ++j) {
        if (!detail::entry_is_zero(row[j])) v[j] -= f * row[j];
      }
    }
    return v;
  }

  /// Adds v if it is independent of the stored rows. Returns true if added.
  bool insert(const std::vector<T>& v) {
    if (v.size() != width_) throw InvalidArgument("Echelon: vector width mismatch");
    std::vector<T> w = reduce(v);
    std::size_t p = 0;
    while (p < width_ && detail::entry_is_zero(w[p])) ++p;
    if (p == width_) return false;
    T inv = T(1) / w[p];
    for (std::size_t j = p; j < width_; ++j) {
      if (!detail::entry_is_zero(w[j])) w[j] *= inv;
    }
    rows_.push_back(std::move(w));
    pivots_.push_back(p);
    return true;
  }

  bool contains(const std::vector<T>& v) const {
    auto w = reduce(v);
    for (const auto& x : w) {
      if (!detail::entry_is_zero(x)) return false;
    }
    return true;
  }

 private:
  std::size_t width_;
  std::vector<std::vector<T>> rows_;
  std::vector<std::size_t> pivots_;
};

template <class T>
std::size_t rank(const Matrix<T>& m) {
  Echelon<T> e(m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) e.insert(m.row(i));
  return e.rank();
}

/// Determinant by fraction-producing Gaussian elimination.
template <class T>
T determinant(Matrix<T> m) {
  if (m.rows() != m.cols()) throw InvalidArgument("determinant: matrix not square");
  const std::size_t n = m.rows();
  T det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && detail::entry_is_zero(m(p, c))) ++p;
    if (p == n) return T(0);
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      det = -det;
    }
    det *= m(c, c);
    T inv = T(1) / m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (detail::entry_is_zero(m(i, c))) continue;
      T f = m(i, c) * inv;
      for (std::size_t j = c; j < n; ++j) {
        if (!detail::entry_is_zero(m(c, j))) m(i, j) -= f * m(c, j);
      }
    }
  }
  return det;
}

/// Inverse by Gauss-Jordan elimination; nullopt when singular.
template <class T>
std::optional<Matrix<T>> inverse(Matrix<T> m) {
  if (m.rows() != m.cols()) throw InvalidArgument("inverse: matrix not square");
  const std::size_t n = m.rows();
  Matrix<T> inv = Matrix<T>::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && detail::entry_is_zero(m(p, c))) ++p;
    if (p == n) return std::nullopt;
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(p, j), m(c, j));
        std::swap(inv(p, j), inv(c, j));
      }
    }
    T s = T(1) / m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      if (!detail::entry_is_zero(m(c, j))) m(c, j) *= s;
      if (!detail::entry_is_zero(inv(c, j))) inv(c, j) *= s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || detail::entry_is_zero(m(i, c))) continue;
      T f = m(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        if (!detail::entry_is_zero(m(c, j))) m(i, j) -= f * m(c, j);
        if (!detail::entry_is_zero(inv(c, j))) inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

}  // namespace qhat
