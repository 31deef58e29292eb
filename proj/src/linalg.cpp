#include "arithlab/linalg.hpp"

namespace arithlab {

QMatrix to_rational(const ZMatrix& m) {
  QMatrix out;
  out.reserve(m.size());
  for (const auto& row : m) out.emplace_back(row.begin(), row.end());
  return out;
}

bool is_integral(const QMatrix& m) {
  for (const auto& row : m)
    for (const auto& x : row)
      if (x.get_den() != 1) return false;
  return true;
}

ZMatrix to_integer(const QMatrix& m) {
  if (!is_integral(m)) throw Error(ErrorKind::ParameterError, "matrix has non-integer entries");
  ZMatrix out;
  for (const auto& row : m) {
    ZVec r;
    for (const auto& x : row) r.push_back(x.get_num());
    out.push_back(std::move(r));
  }
  return out;
}

QMatrix transpose(const QMatrix& m, std::size_t cols) {
  QMatrix t(cols, QVec(m.size()));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < cols; ++j) t[j][i] = m[i][j];
  return t;
}

QMatrix multiply(const QMatrix& a, const QMatrix& b, std::size_t b_cols) {
  QMatrix out(a.size(), QVec(b_cols, 0));
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (sgn(a[i][k]) == 0) continue;
      for (std::size_t j = 0; j < b_cols; ++j) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

QMatrix congruence(const QMatrix& b, const QMatrix& g) {
  const std::size_t n = g.size();
  const QMatrix bg = multiply(b, g, n);
  QMatrix out(b.size(), QVec(b.size(), 0));
  for (std::size_t i = 0; i < b.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j)
      for (std::size_t k = 0; k < n; ++k) out[i][j] += bg[i][k] * b[j][k];
  return out;
}

Rational quadratic_form(const QMatrix& g, const ZVec& x) {
  Rational acc = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    if (sgn(x[i]) == 0) continue;
    for (std::size_t j = 0; j < x.size(); ++j) acc += g[i][j] * x[i] * x[j];
  }
  return acc;
}

Rational determinant(QMatrix m) {
  const std::size_t n = m.size();
  Rational det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && sgn(m[piv][c]) == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(m[i][c]) == 0) continue;
      const Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return det;
}

std::optional<QMatrix> inverse(QMatrix m) {
  const std::size_t n = m.size();
  QMatrix inv(n, QVec(n, 0));
  for (std::size_t i = 0; i < n; ++i) inv[i][i] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && sgn(m[piv][c]) == 0) ++piv;
    if (piv == n) return std::nullopt;
    std::swap(m[piv], m[c]);
    std::swap(inv[piv], inv[c]);
    const Rational s = 1 / m[c][c];
    for (std::size_t j = 0; j < n; ++j) {
      m[c][j] *= s;
      inv[c][j] *= s;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || sgn(m[i][c]) == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = 0; j < n; ++j) {
        m[i][j] -= f * m[c][j];
        inv[i][j] -= f * inv[c][j];
      }
    }
  }
  return inv;
}

namespace {

// In-place reduced row echelon form; returns pivot columns.
std::vector<std::size_t> rref(QMatrix& m, std::size_t cols) {
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < m.size(); ++c) {
    std::size_t piv = r;
    while (piv < m.size() && sgn(m[piv][c]) == 0) ++piv;
    if (piv == m.size()) continue;
    std::swap(m[piv], m[r]);
    const Rational s = 1 / m[r][c];
    for (std::size_t j = c; j < cols; ++j) m[r][j] *= s;
    for (std::size_t i = 0; i < m.size(); ++i) {
      if (i == r || sgn(m[i][c]) == 0) continue;
      const Rational f = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] -= f * m[r][j];
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

}  // namespace

std::size_t rank(QMatrix m, std::size_t cols) { return rref(m, cols).size(); }

QMatrix rational_kernel(const QMatrix& m, std::size_t cols) {
  QMatrix a = m;
  const auto pivots = rref(a, cols);
  std::vector<bool> is_pivot(cols, false);
  for (auto c : pivots) is_pivot[c] = true;
  QMatrix basis;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    QVec v(cols, 0);
    v[f] = 1;
    for (std::size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -a[i][f];
    basis.push_back(std::move(v));
  }
  return basis;
}

bool is_symmetric(const QMatrix& g) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    if (g[i].size() != g.size()) return false;
    for (std::size_t j = 0; j < i; ++j)
      if (g[i][j] != g[j][i]) return false;
  }
  return true;
}

bool is_positive_definite(const QMatrix& g) {
  QMatrix m = g;
  const std::size_t n = m.size();
  for (std::size_t c = 0; c < n; ++c) {
    if (sgn(m[c][c]) <= 0) return false;
    for (std::size_t i = c + 1; i < n; ++i) {
      if (sgn(m[i][c]) == 0) continue;
      const Rational f = m[i][c] / m[c][c];
      for (std::size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
    }
  }
  return n > 0;
}

ZVec primitive_part(const QVec& v) {
  Integer den = 1;
  for (const auto& x : v) den = lcm(den, Integer(x.get_den()));
  ZVec out;
  Integer content = 0;
  for (const auto& x : v) {
    out.push_back(Integer(x.get_num() * (den / x.get_den())));
    content = gcd(content, out.back());
  }
  if (content > 1)
    for (auto& x : out) x /= content;
  return out;
}

ZVec column(const ZMatrix& m, std::size_t j) {
  ZVec c;
  for (const auto& row : m) c.push_back(row[j]);
  return c;
}

ColumnReduction column_reduce(const ZMatrix& m, std::size_t cols) {
  ColumnReduction out{m, ZMatrix(cols, ZVec(cols, 0)), 0};
  for (std::size_t i = 0; i < cols; ++i) out.u[i][i] = 1;
  auto& a = out.reduced;
  auto& u = out.u;
  auto col_swap = [&](std::size_t x, std::size_t y) {
    for (auto& row : a) std::swap(row[x], row[y]);
    for (auto& row : u) std::swap(row[x], row[y]);
  };
  auto col_axpy = [&](std::size_t dst, std::size_t src, const Integer& q) {
    for (auto& row : a) row[dst] -= q * row[src];
    for (auto& row : u) row[dst] -= q * row[src];
  };
  std::size_t c = 0;
  for (std::size_t i = 0; i < a.size() && c < cols; ++i) {
    while (true) {
      std::size_t best = cols;
      for (std::size_t j = c; j < cols; ++j)
        if (sgn(a[i][j]) != 0 && (best == cols || abs(a[i][j]) < abs(a[i][best]))) best = j;
      if (best == cols) break;
      if (best != c) col_swap(best, c);
      bool done = true;
      for (std::size_t j = c + 1; j < cols; ++j) {
        if (sgn(a[i][j]) == 0) continue;
        Integer q;
        mpz_tdiv_q(q.get_mpz_t(), a[i][j].get_mpz_t(), a[i][c].get_mpz_t());
        col_axpy(j, c, q);
        if (sgn(a[i][j]) != 0) done = false;
      }
      if (done) break;
    }
    if (c < cols && sgn(a[i][c]) != 0) {
      if (sgn(a[i][c]) < 0) {
        for (auto& row : a) row[c] = -row[c];
        for (auto& row : u) row[c] = -row[c];
      }
      ++c;
    }
  }
  out.rank = c;
  return out;
}

}  // namespace arithlab
