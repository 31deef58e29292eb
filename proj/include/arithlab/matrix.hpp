#pragma once

// Row-major dense matrices over any exact ring/field value type T with
// value-semantic +, -, *. Field-specific operations (inverse, derivative)
// live in the free functions below.

#include <cstddef>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "arithlab/ratfunc.hpp"

namespace arithlab {

template <class T>
class Mat {
 public:
  Mat(std::size_t rows, std::size_t cols, const T& fill) : rows_(rows), cols_(cols), e_(rows * cols, fill) {
    if (rows == 0 || cols == 0) throw Error(ErrorKind::ParameterError, "matrix dimensions must be positive");
  }
  Mat(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), e_(std::move(entries)) {
    if (rows == 0 || cols == 0 || e_.size() != rows * cols) {
      throw Error(ErrorKind::ParameterError, "matrix entry count does not match dimensions");
    }
  }

  static Mat identity(std::size_t n, const T& zero, const T& one) {
    Mat m(n, n, zero);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = one;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool is_square() const { return rows_ == cols_; }
  T& operator()(std::size_t i, std::size_t j) { return e_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return e_[i * cols_ + j]; }
  const std::vector<T>& entries() const { return e_; }

  template <class F>
  auto map(F&& f) const -> Mat<std::invoke_result_t<F, const T&>> {
    using U = std::invoke_result_t<F, const T&>;
    std::vector<U> out;
    out.reserve(e_.size());
    for (const auto& x : e_) out.push_back(f(x));
    return Mat<U>(rows_, cols_, std::move(out));
  }

  friend bool operator==(const Mat& a, const Mat& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.e_ == b.e_;
  }

  friend Mat operator+(const Mat& a, const Mat& b) {
    check_same_shape(a, b);
    Mat r = a;
    for (std::size_t k = 0; k < r.e_.size(); ++k) r.e_[k] = a.e_[k] + b.e_[k];
    return r;
  }
  friend Mat operator-(const Mat& a, const Mat& b) {
    check_same_shape(a, b);
    Mat r = a;
    for (std::size_t k = 0; k < r.e_.size(); ++k) r.e_[k] = a.e_[k] - b.e_[k];
    return r;
  }
  friend Mat operator*(const Mat& a, const Mat& b) { return mat_mul(a, b); }

  friend Mat mat_mul(const Mat& a, const Mat& b) {
    if (a.cols_ != b.rows_) throw Error(ErrorKind::ParameterError, "incompatible matrix product");
    std::vector<T> out;
    out.reserve(a.rows_ * b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < b.cols_; ++j) {
        T acc = a(i, 0) * b(0, j);
        for (std::size_t k = 1; k < a.cols_; ++k) acc = acc + a(i, k) * b(k, j);
        out.push_back(std::move(acc));
      }
    }
    return Mat(a.rows_, b.cols_, std::move(out));
  }

  Mat transposed() const {
    std::vector<T> out;
    out.reserve(e_.size());
    for (std::size_t j = 0; j < cols_; ++j)
      for (std::size_t i = 0; i < rows_; ++i) out.push_back((*this)(i, j));
    return Mat(cols_, rows_, std::move(out));
  }

 private:
  static void check_same_shape(const Mat& a, const Mat& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw Error(ErrorKind::ParameterError, "matrix shape mismatch");
  }

  std::size_t rows_;
  std::size_t cols_;
  std::vector<T> e_;
};

template <class Field>
using RfMat = Mat<RatFunc<Field>>;

template <class Field>
RfMat<Field> rf_identity(const Field& f, std::size_t n) {
  return RfMat<Field>::identity(n, RatFunc<Field>(f), RatFunc<Field>::constant(f, f.one()));
}

template <class Field>
bool is_zero_matrix(const RfMat<Field>& m) {
  for (const auto& x : m.entries())
    if (!x.is_zero()) return false;
  return true;
}

template <class Field>
RfMat<Field> derivative(const RfMat<Field>& m) {
  return m.map([](const RatFunc<Field>& x) { return x.derivative(); });
}

/// Exact inverse over F(z) by Gauss–Jordan elimination; throws SingularMatrix.
template <class Field>
RfMat<Field> mat_inverse(const RfMat<Field>& a) {
  if (!a.is_square()) throw Error(ErrorKind::ParameterError, "inverse of a non-square matrix");
  const std::size_t n = a.rows();
  const Field& f = a(0, 0).field();
  RfMat<Field> work = a;
  RfMat<Field> inv = rf_identity(f, n);
  for (std::size_t col = 0; col < n; ++col) {
    // Lowest-degree pivot keeps intermediate degrees small.
    std::size_t pivot = n;
    long best = 0;
    for (std::size_t r = col; r < n; ++r) {
      const auto& x = work(r, col);
      if (x.is_zero()) continue;
      long size = x.num().degree() + x.den().degree();
      if (pivot == n || size < best) {
        pivot = r;
        best = size;
      }
    }
    if (pivot == n) throw Error(ErrorKind::SingularMatrix, "determinant is zero");
    if (pivot != col) {
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(work(pivot, j), work(col, j));
        std::swap(inv(pivot, j), inv(col, j));
      }
    }
    const RatFunc<Field> pinv = work(col, col).inverse();
    for (std::size_t j = 0; j < n; ++j) {
      work(col, j) = work(col, j) * pinv;
      inv(col, j) = inv(col, j) * pinv;
    }
    for (std::size_t r = 0; r < n; ++r) {
      if (r == col || work(r, col).is_zero()) continue;
      const RatFunc<Field> factor = work(r, col);
      for (std::size_t j = 0; j < n; ++j) {
        if (!work(col, j).is_zero()) work(r, j) = work(r, j) - factor * work(col, j);
        if (!inv(col, j).is_zero()) inv(r, j) = inv(r, j) - factor * inv(col, j);
      }
    }
  }
  return inv;
}

template <class Field>
std::vector<std::vector<std::string>> render_matrix(const RfMat<Field>& m, const std::string& var = "z") {
  std::vector<std::vector<std::string>> out(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i].push_back(m(i, j).render(var));
  return out;
}

template <class Field>
std::string render_matrix_text(const RfMat<Field>& m, const std::string& var = "z") {
  std::string s = "[";
  for (std::size_t i = 0; i < m.rows(); ++i) {
    s += i ? ", [" : "[";
    for (std::size_t j = 0; j < m.cols(); ++j) s += (j ? ", " : "") + m(i, j).render(var);
    s += "]";
  }
  return s + "]";
}

RfMat<PrimeField> reduce_matrix_mod_p(const RfMat<RationalField>& m, const PrimeField& field);

}  // namespace arithlab
