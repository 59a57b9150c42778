#pragma once
/// @file matrix.hpp
/// @brief Dense matrices over an exact scalar ring.
///
/// `Matrix<R>` is a value type over any ring with a `RingTraits<R>`
/// specialization (here: `Rational` and `QuotientScalar`).  Construction
/// zero-fills, all arithmetic is exact, and shape mismatches throw ShapeError
/// rather than being undefined.  Indexing is 0-based.

#include <cstddef>
#include <utility>
#include <vector>

#include "immgeo/errors.hpp"
#include "immgeo/rational.hpp"

namespace immgeo {

template <class R>
class Matrix {
 public:
  Matrix() = default;  ///< 0×0

  Matrix(std::size_t rows, std::size_t cols)
      : rows_(rows), cols_(cols), data_(rows * cols, RingTraits<R>::zero()) {}

  [[nodiscard]] static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = RingTraits<R>::one();
    return m;
  }

  [[nodiscard]] std::size_t rows() const { return rows_; }
  [[nodiscard]] std::size_t cols() const { return cols_; }

  [[nodiscard]] R& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  [[nodiscard]] const R& operator()(std::size_t i, std::size_t j) const {
    return data_[i * cols_ + j];
  }

  [[nodiscard]] friend Matrix operator+(Matrix a, const Matrix& b) {
    a.require_same_shape(b, "matrix addition");
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] += b.data_[k];
    return a;
  }

  [[nodiscard]] friend Matrix operator-(Matrix a, const Matrix& b) {
    a.require_same_shape(b, "matrix subtraction");
    for (std::size_t k = 0; k < a.data_.size(); ++k) a.data_[k] -= b.data_[k];
    return a;
  }

  [[nodiscard]] Matrix operator-() const {
    Matrix r = *this;
    for (auto& x : r.data_) x = -x;
    return r;
  }

  [[nodiscard]] friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw ShapeError("matrix product shape mismatch");
    Matrix r(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const R& aik = a(i, k);
        if (RingTraits<R>::is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) {
          const R& bkj = b(k, j);
          if (RingTraits<R>::is_zero(bkj)) continue;
          r(i, j) += aik * bkj;
        }
      }
    }
    return r;
  }

  [[nodiscard]] friend Matrix operator*(const R& s, Matrix m) {
    for (auto& x : m.data_) x = s * x;
    return m;
  }

  [[nodiscard]] friend Matrix operator*(Matrix m, const R& s) {
    for (auto& x : m.data_) x = x * s;
    return m;
  }

  [[nodiscard]] Matrix transpose() const {
    Matrix r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    }
    return r;
  }

  [[nodiscard]] R trace() const {
    if (rows_ != cols_) throw ShapeError("trace of a non-square matrix");
    R t = RingTraits<R>::zero();
    for (std::size_t i = 0; i < rows_; ++i) t += (*this)(i, i);
    return t;
  }

  [[nodiscard]] friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < a.data_.size(); ++k) {
      if (!(a.data_[k] == b.data_[k])) return false;
    }
    return true;
  }

  [[nodiscard]] bool is_zero() const {
    for (const auto& x : data_) {
      if (!RingTraits<R>::is_zero(x)) return false;
    }
    return true;
  }

  [[nodiscard]] bool is_identity() const {
    if (rows_ != cols_) return false;
    for (std::size_t i = 0; i < rows_; ++i) {
      for (std::size_t j = 0; j < cols_; ++j) {
        const R& x = (*this)(i, j);
        if (i == j ? !RingTraits<R>::is_one(x) : !RingTraits<R>::is_zero(x)) return false;
      }
    }
    return true;
  }

 private:
  void require_same_shape(const Matrix& o, const char* what) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeError(what);
  }

  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<R> data_;
};

}  // namespace immgeo
