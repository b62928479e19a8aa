#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "intdecomp/errors.hpp"
#include "intdecomp/ring.hpp"

namespace intdecomp {

template <EuclideanRing R>
using Vector = std::vector<typename R::Element>;

/// Dense row-major matrix over R. Column j holds the image of the j-th source
/// basis vector. 0 x n and n x 0 matrices are legal.
template <EuclideanRing R>
class Matrix {
 public:
  using Ring = R;
  using Element = typename R::Element;

  Matrix() : Matrix(R{}, 0, 0) {}
  Matrix(R ring, std::size_t rows, std::size_t cols)
      : ring_(std::move(ring)), rows_(rows), cols_(cols), data_(rows * cols, ring_.zero()) {}

  static Matrix identity(const R& ring, std::size_t n) {
    Matrix m(ring, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = ring.one();
    return m;
  }

  /// Builds a matrix from small integer literals, row by row.
  static Matrix from_rows(const R& ring, const std::vector<std::vector<long>>& rows) {
    std::size_t c = rows.empty() ? 0 : rows.front().size();
    Matrix m(ring, rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw DimensionMismatch("ragged rows");
      for (std::size_t j = 0; j < c; ++j) m(i, j) = ring.from_int(rows[i][j]);
    }
    return m;
  }

  static Matrix from_columns(const R& ring, std::size_t rows, const std::vector<Vector<R>>& columns) {
    Matrix m(ring, rows, columns.size());
    for (std::size_t j = 0; j < columns.size(); ++j) {
      if (columns[j].size() != rows) throw DimensionMismatch("column length mismatch");
      for (std::size_t i = 0; i < rows; ++i) m(i, j) = columns[j][i];
    }
    return m;
  }

  const R& ring() const { return ring_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  Element& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const Element& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  std::span<Element> row(std::size_t i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const Element> row(std::size_t i) const { return {data_.data() + i * cols_, cols_}; }

  Vector<R> column(std::size_t j) const {
    Vector<R> v;
    v.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) v.push_back((*this)(i, j));
    return v;
  }

  void set_column(std::size_t j, const Vector<R>& v) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) = v[i];
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (!ring_.is_zero(x)) return false;
    return true;
  }

  bool column_is_zero(std::size_t j) const {
    for (std::size_t i = 0; i < rows_; ++i)
      if (!ring_.is_zero((*this)(i, j))) return false;
    return true;
  }

  Matrix select_columns(std::span<const std::size_t> idx) const {
    Matrix m(ring_, rows_, idx.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < idx.size(); ++k) m(i, k) = (*this)(i, idx[k]);
    return m;
  }

  Matrix column_range(std::size_t first, std::size_t last) const {
    Matrix m(ring_, rows_, last - first);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = first; j < last; ++j) m(i, j - first) = (*this)(i, j);
    return m;
  }

  Matrix row_range(std::size_t first, std::size_t last) const {
    Matrix m(ring_, last - first, cols_);
    for (std::size_t i = first; i < last; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i - first, j) = (*this)(i, j);
    return m;
  }

  Matrix transpose() const {
    Matrix m(ring_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(j, i) = (*this)(i, j);
    return m;
  }

  Matrix operator-() const {
    Matrix m = *this;
    for (auto& x : m.data_) x = -x;
    return m;
  }

  Vector<R> apply(const Vector<R>& v) const {
    if (v.size() != cols_) throw DimensionMismatch("matrix-vector size mismatch");
    Vector<R> out(rows_, ring_.zero());
    for (std::size_t i = 0; i < rows_; ++i) {
      Element acc = ring_.zero();
      for (std::size_t j = 0; j < cols_; ++j)
        if (!ring_.is_zero(v[j])) acc += (*this)(i, j) * v[j];
      out[i] = acc;
    }
    return out;
  }

  /// Reinterprets every entry in another ring (e.g. reduction mod p).
  template <EuclideanRing S, class Fn>
  Matrix<S> map(const S& target, Fn&& fn) const {
    Matrix<S> m(target, rows_, cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) m(i, j) = fn((*this)(i, j));
    return m;
  }

  // Elementary operations, used by the normal-form routines.
  void swap_rows(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(a, j), (*this)(b, j));
  }
  void swap_cols(std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < rows_; ++i) std::swap((*this)(i, a), (*this)(i, b));
  }
  /// row[dst] += factor * row[src]
  void add_row_multiple(std::size_t dst, std::size_t src, const Element& factor) {
    if (ring_.is_zero(factor)) return;
    for (std::size_t j = 0; j < cols_; ++j)
      if (!ring_.is_zero((*this)(src, j))) (*this)(dst, j) += factor * (*this)(src, j);
  }
  /// col[dst] += factor * col[src]
  void add_col_multiple(std::size_t dst, std::size_t src, const Element& factor) {
    if (ring_.is_zero(factor)) return;
    for (std::size_t i = 0; i < rows_; ++i)
      if (!ring_.is_zero((*this)(i, src))) (*this)(i, dst) += factor * (*this)(i, src);
  }
  void scale_row(std::size_t i, const Element& factor) {
    for (std::size_t j = 0; j < cols_; ++j) (*this)(i, j) *= factor;
  }
  void scale_col(std::size_t j, const Element& factor) {
    for (std::size_t i = 0; i < rows_; ++i) (*this)(i, j) *= factor;
  }
  /// (row a, row b) <- (x*a + y*b, z*a + w*b)
  void combine_rows(std::size_t a, std::size_t b, const Element& x, const Element& y, const Element& z,
                    const Element& w) {
    for (std::size_t j = 0; j < cols_; ++j) {
      Element ra = (*this)(a, j), rb = (*this)(b, j);
      (*this)(a, j) = x * ra + y * rb;
      (*this)(b, j) = z * ra + w * rb;
    }
  }
  /// (col a, col b) <- (x*a + y*b, z*a + w*b)
  void combine_cols(std::size_t a, std::size_t b, const Element& x, const Element& y, const Element& z,
                    const Element& w) {
    for (std::size_t i = 0; i < rows_; ++i) {
      Element ca = (*this)(i, a), cb = (*this)(i, b);
      (*this)(i, a) = x * ca + y * cb;
      (*this)(i, b) = z * ca + w * cb;
    }
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw DimensionMismatch("matrix product size mismatch");
    Matrix m(a.ring_, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const Element& aik = a(i, k);
        if (a.ring_.is_zero(aik)) continue;
        for (std::size_t j = 0; j < b.cols_; ++j)
          if (!a.ring_.is_zero(b(k, j))) m(i, j) += aik * b(k, j);
      }
    return m;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw DimensionMismatch("matrix sum size mismatch");
    Matrix m = a;
    for (std::size_t k = 0; k < m.data_.size(); ++k) m.data_[k] += b.data_[k];
    return m;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) return false;
    for (std::size_t k = 0; k < a.data_.size(); ++k)
      if (!a.ring_.equal(a.data_[k], b.data_[k])) return false;
    return true;
  }

 private:
  R ring_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<typename R::Element> data_;
};

/// [A | B]
template <EuclideanRing R>
Matrix<R> hconcat(const Matrix<R>& a, const Matrix<R>& b) {
  if (a.rows() != b.rows()) throw DimensionMismatch("hconcat row mismatch");
  Matrix<R> m(a.ring(), a.rows(), a.cols() + b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) m(i, a.cols() + j) = b(i, j);
  }
  return m;
}

template <EuclideanRing R>
std::string to_string(const Matrix<R>& m) {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (j) s += ", ";
      s += m.ring().to_string(m(i, j));
    }
    s += "]";
  }
  return s + "]";
}

/// Reduces an integer matrix into GF(p).
inline Matrix<PrimeField> reduce_mod(const Matrix<Integers>& m, const PrimeField& field) {
  return m.map(field, [&](const mpz_class& x) { return field.from_integer(x); });
}

}  // namespace intdecomp
