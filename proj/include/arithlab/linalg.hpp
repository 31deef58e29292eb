#pragma once

// Exact dense linear algebra over Q and Z on nested vectors. Unlike Mat<T>,
// these allow empty shapes, which kernels and quotients need.

#include <cstddef>
#include <optional>
#include <vector>

#include "arithlab/field.hpp"

namespace arithlab {

using QVec = std::vector<Rational>;
using QMatrix = std::vector<QVec>;
using ZVec = std::vector<Integer>;
using ZMatrix = std::vector<ZVec>;

QMatrix to_rational(const ZMatrix& m);
/// Entries that are all integers; throws ParameterError otherwise.
ZMatrix to_integer(const QMatrix& m);
bool is_integral(const QMatrix& m);

QMatrix transpose(const QMatrix& m, std::size_t cols);
QMatrix multiply(const QMatrix& a, const QMatrix& b, std::size_t b_cols);
/// B G B^T for a basis given by the rows of B.
QMatrix congruence(const QMatrix& b, const QMatrix& g);
Rational quadratic_form(const QMatrix& g, const ZVec& x);

Rational determinant(QMatrix m);
std::optional<QMatrix> inverse(QMatrix m);
std::size_t rank(QMatrix m, std::size_t cols);
/// Rows form a basis of { x : m x = 0 }.
QMatrix rational_kernel(const QMatrix& m, std::size_t cols);

bool is_symmetric(const QMatrix& g);
/// Exact: every pivot of elimination without row exchanges is positive.
bool is_positive_definite(const QMatrix& g);

/// Clears denominators and divides by the content; the zero vector maps to itself.
ZVec primitive_part(const QVec& v);

/// m U = [B | 0] with U unimodular (n x n, columns) and B in column echelon
/// form with positive pivots; rank = number of nonzero columns of B.
struct ColumnReduction {
  ZMatrix reduced;  // m U
  ZMatrix u;
  std::size_t rank = 0;
};
ColumnReduction column_reduce(const ZMatrix& m, std::size_t cols);

/// Column j of an n x n matrix stored by rows.
ZVec column(const ZMatrix& m, std::size_t j);

}  // namespace arithlab
