#include "arithlab/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include <Eigen/Eigenvalues>

namespace arithlab {

namespace {

constexpr double kTol = 1e-9;

double to_double(const Rational& q) { return q.get_d(); }

QMatrix identity_q(std::size_t d) {
  QMatrix m(d, QVec(d, 0));
  for (std::size_t i = 0; i < d; ++i) m[i][i] = 1;
  return m;
}

ZMatrix identity_z(std::size_t d) {
  ZMatrix m(d, ZVec(d, 0));
  for (std::size_t i = 0; i < d; ++i) m[i][i] = 1;
  return m;
}

bool is_zero(const QMatrix& m) {
  for (const auto& row : m)
    for (const auto& x : row)
      if (sgn(x) != 0) return false;
  return true;
}

// Schur complement of the trailing block: keeps indices [0, k).
QMatrix schur_leading(const QMatrix& g, std::size_t k) {
  const std::size_t n = g.size();
  QMatrix a(k, QVec(k)), x(k, QVec(n - k)), c(n - k, QVec(n - k));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (i < k && j < k) a[i][j] = g[i][j];
      else if (i < k) x[i][j - k] = g[i][j];
      else if (j >= k) c[i - k][j - k] = g[i][j];
    }
  if (n == k) return a;
  const auto cinv = inverse(c);
  if (!cinv) throw Error(ErrorKind::InternalError, "singular block in quotient Gram");
  const QMatrix xc = multiply(x, *cinv, n - k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < n - k; ++l) a[i][j] -= xc[i][l] * x[j][l];
  return a;
}

ZVec combine(const ZVec& coeffs, const ZMatrix& basis, std::size_t n) {
  ZVec out(n, 0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    if (sgn(coeffs[i]) == 0) continue;
    for (std::size_t j = 0; j < n; ++j) out[j] += coeffs[i] * basis[i][j];
  }
  return out;
}

void sign_normalize(ZVec& v) {
  for (const auto& x : v) {
    if (sgn(x) == 0) continue;
    if (sgn(x) < 0)
      for (auto& y : v) y = -y;
    return;
  }
}

// Comparison starting from the last coordinate, the order in which
// Fincke-Pohst fixes coordinates.
bool colex_less(const ZVec& a, const ZVec& b) {
  for (std::size_t i = a.size(); i-- > 0;)
    if (a[i] != b[i]) return a[i] < b[i];
  return false;
}

Rational round_nearest(const Rational& q) {
  Integer f;
  const Rational shifted = q + Rational(1, 2);
  mpz_fdiv_q(f.get_mpz_t(), shifted.get_num_mpz_t(), shifted.get_den_mpz_t());
  return Rational(f);
}

Integer max_abs(const ZMatrix& m) {
  Integer a = 0;
  for (const auto& row : m)
    for (const auto& x : row) a = std::max(a, Integer(abs(x)));
  return a;
}

}  // namespace

EuclideanLattice::EuclideanLattice(QMatrix gram) : gram_(std::move(gram)) {
  if (gram_.empty()) throw Error(ErrorKind::ParameterError, "lattice rank must be at least 1");
  if (!is_symmetric(gram_)) throw Error(ErrorKind::ParameterError, "Gram matrix must be square and symmetric");
  if (!is_positive_definite(gram_)) throw Error(ErrorKind::NotPositiveDefinite, "Gram matrix has a nonpositive leading minor");
  det_ = determinant(gram_);
}

EuclideanLattice EuclideanLattice::from_embedding(QMatrix generators) {
  if (generators.empty()) throw Error(ErrorKind::ParameterError, "no generators");
  const std::size_t m = generators.front().size();
  for (const auto& g : generators)
    if (g.size() != m) throw Error(ErrorKind::ParameterError, "generators have different lengths");
  EuclideanLattice l(congruence(generators, identity_q(m)));
  l.embedding_ = std::move(generators);
  return l;
}

EuclideanLattice EuclideanLattice::standard(std::size_t d) { return EuclideanLattice(identity_q(d)); }

EuclideanLattice EuclideanLattice::scaled(const Rational& c) const {
  if (sgn(c) <= 0) throw Error(ErrorKind::ParameterError, "scale must be positive");
  QMatrix g = gram_;
  for (auto& row : g)
    for (auto& x : row) x *= c;
  return EuclideanLattice(std::move(g));
}

DegreeValue arithmetic_degree(const EuclideanLattice& l) { return {l.det(), -0.5 * log_abs(l.det())}; }

double slope(const EuclideanLattice& l) { return arithmetic_degree(l).logvalue / static_cast<double>(l.rank()); }

EuclideanLattice dual_lattice(const EuclideanLattice& l) { return EuclideanLattice(*inverse(l.gram())); }

EuclideanLattice sublattice(const EuclideanLattice& l, const ZMatrix& basis) {
  for (const auto& b : basis)
    if (b.size() != l.rank()) throw Error(ErrorKind::ParameterError, "sublattice vector has wrong length");
  return EuclideanLattice(congruence(to_rational(basis), l.gram()));
}

EuclideanLattice quotient_lattice(const EuclideanLattice& l, const ZMatrix& sub) {
  const std::size_t d = l.rank(), k = sub.size();
  for (const auto& b : sub)
    if (b.size() != d) throw Error(ErrorKind::ParameterError, "sublattice vector has wrong length");
  if (k == 0) return l;
  const ColumnReduction cr = column_reduce(sub, d);
  if (cr.rank < k) throw Error(ErrorKind::ParameterError, "sublattice generators are linearly dependent");
  Integer index = 1;
  for (std::size_t i = 0; i < k; ++i) index *= cr.reduced[i][i];
  if (index != 1) throw Error(ErrorKind::NotSaturated, "sublattice has index " + index.get_str() + " in its saturation");
  if (k == d) throw Error(ErrorKind::DegenerateQuotient, "quotient has rank 0");
  // Rows of V = U^{-1} form a basis of L whose first k vectors span S.
  const QMatrix v = *inverse(to_rational(cr.u));
  QMatrix gv = congruence(v, l.gram());
  // Reorder so the quotient block comes first.
  std::vector<std::size_t> order;
  for (std::size_t i = k; i < d; ++i) order.push_back(i);
  for (std::size_t i = 0; i < k; ++i) order.push_back(i);
  QMatrix g(d, QVec(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) g[i][j] = gv[order[i]][order[j]];
  return EuclideanLattice(schur_leading(g, d - k));
}

ZMatrix saturate(const ZMatrix& gens, std::size_t d) {
  const QMatrix c = rational_kernel(to_rational(gens), d);
  if (c.empty()) return identity_z(d);
  ZMatrix ci;
  for (const auto& row : c) ci.push_back(primitive_part(row));
  const ColumnReduction cr = column_reduce(ci, d);
  ZMatrix out;
  for (std::size_t j = cr.rank; j < d; ++j) out.push_back(column(cr.u, j));
  return out;
}

LatticeHom::LatticeHom(EuclideanLattice s, EuclideanLattice t, QMatrix m)
    : source(std::move(s)), target(std::move(t)), matrix(std::move(m)) {
  if (matrix.size() != target.rank()) throw Error(ErrorKind::ParameterError, "map has the wrong number of rows");
  for (const auto& row : matrix)
    if (row.size() != source.rank()) throw Error(ErrorKind::ParameterError, "map has the wrong number of columns");
}

HomHeight hom_height(const LatticeHom& phi) {
  const std::size_t s = phi.source.rank();
  const QMatrix mt = transpose(phi.matrix, s);
  const QMatrix k = congruence(mt, phi.target.gram());
  if (is_zero(k)) throw Error(ErrorKind::ZeroMap, "height of the zero map");
  const QMatrix& ge = phi.source.gram();

  Eigen::MatrixXd kd(s, s), gd(s, s);
  for (std::size_t i = 0; i < s; ++i)
    for (std::size_t j = 0; j < s; ++j) {
      kd(i, j) = to_double(k[i][j]);
      gd(i, j) = to_double(ge[i][j]);
    }
  Eigen::GeneralizedSelfAdjointEigenSolver<Eigen::MatrixXd> es(kd, gd);
  const double lambda = es.eigenvalues()(static_cast<Eigen::Index>(s) - 1);
  const Eigen::VectorXd v = es.eigenvectors().col(static_cast<Eigen::Index>(s) - 1);

  HomHeight out;
  QMatrix vq(1, QVec(s));
  for (std::size_t i = 0; i < s; ++i) vq[0][i] = Rational(v(static_cast<Eigen::Index>(i)));
  const Rational num = congruence(vq, k)[0][0], den = congruence(vq, ge)[0][0];
  out.lambda_lo = sgn(den) > 0 ? Rational(num / den) : Rational(0);

  const double ref = std::max(lambda, to_double(out.lambda_lo));
  double margin = 1e-12;
  for (int attempt = 0;; ++attempt) {
    const Rational hi(ref * (1 + margin) + 1e-300);
    QMatrix test(s, QVec(s));
    for (std::size_t i = 0; i < s; ++i)
      for (std::size_t j = 0; j < s; ++j) test[i][j] = hi * ge[i][j] - k[i][j];
    if (is_positive_definite(test)) {
      out.lambda_hi = hi;
      break;
    }
    if (attempt > 200) throw Error(ErrorKind::InternalError, "could not certify the largest eigenvalue");
    margin *= 4;
  }
  out.lambda_max = std::clamp(lambda, to_double(out.lambda_lo), to_double(out.lambda_hi));
  out.value = 0.5 * std::log(out.lambda_max);
  return out;
}

InducedInjection factor_through_kernel(const LatticeHom& phi) {
  const std::size_t s = phi.source.rank();
  ZMatrix mi;
  for (const auto& row : phi.matrix) {
    Integer den = 1;
    for (const auto& x : row) den = lcm(den, Integer(x.get_den()));
    ZVec r;
    for (const auto& x : row) r.push_back(Integer(x.get_num() * (den / x.get_den())));
    mi.push_back(std::move(r));
  }
  const ColumnReduction cr = column_reduce(mi, s);
  const std::size_t k = cr.rank;
  InducedInjection out;
  for (std::size_t j = k; j < s; ++j) out.kernel_basis.push_back(column(cr.u, j));
  if (k == 0) return out;
  ZMatrix cols;
  for (std::size_t j = 0; j < s; ++j) cols.push_back(column(cr.u, j));
  const QMatrix gq = schur_leading(congruence(to_rational(cols), phi.source.gram()), k);
  QMatrix induced(phi.matrix.size(), QVec(k, 0));
  for (std::size_t i = 0; i < phi.matrix.size(); ++i)
    for (std::size_t j = 0; j < k; ++j)
      for (std::size_t l = 0; l < s; ++l) induced[i][j] += phi.matrix[i][l] * cols[j][l];
  out.injection.emplace(EuclideanLattice(gq), phi.target, std::move(induced));
  return out;
}

std::optional<double> mu_max_upper(const EuclideanLattice& l) {
  if (is_integral(l.gram())) return 0.0;
  return std::nullopt;
}

LllResult lll_reduce(const QMatrix& gram, const Rational& delta) {
  const std::size_t d = gram.size();
  ZMatrix t = identity_z(d);
  QMatrix mu(d, QVec(d, 0));
  QVec b(d, 0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < i; ++j) {
      Rational acc = gram[i][j];
      for (std::size_t l = 0; l < j; ++l) acc -= mu[j][l] * mu[i][l] * b[l];
      mu[i][j] = acc / b[j];
    }
    Rational acc = gram[i][i];
    for (std::size_t l = 0; l < i; ++l) acc -= mu[i][l] * mu[i][l] * b[l];
    b[i] = acc;
  }

  auto reduce = [&](std::size_t k, std::size_t l) {
    const Rational q = round_nearest(mu[k][l]);
    if (sgn(q) == 0) return;
    const Integer qi = q.get_num();
    for (std::size_t c = 0; c < d; ++c) t[k][c] -= qi * t[l][c];
    mu[k][l] -= q;
    for (std::size_t i = 0; i < l; ++i) mu[k][i] -= q * mu[l][i];
  };

  std::size_t k = 1;
  while (k < d) {
    reduce(k, k - 1);
    if (b[k] < (delta - mu[k][k - 1] * mu[k][k - 1]) * b[k - 1]) {
      const Rational m = mu[k][k - 1];
      const Rational bb = b[k] + m * m * b[k - 1];
      mu[k][k - 1] = m * b[k - 1] / bb;
      b[k] = b[k - 1] * b[k] / bb;
      b[k - 1] = bb;
      std::swap(t[k], t[k - 1]);
      for (std::size_t j = 0; j + 1 < k; ++j) std::swap(mu[k][j], mu[k - 1][j]);
      for (std::size_t i = k + 1; i < d; ++i) {
        const Rational tmp = mu[i][k];
        mu[i][k] = mu[i][k - 1] - m * tmp;
        mu[i][k - 1] = tmp + mu[k][k - 1] * mu[i][k];
      }
      k = std::max<std::size_t>(1, k - 1);
    } else {
      for (std::size_t l = k - 1; l-- > 0;) reduce(k, l);
      ++k;
    }
  }
  return {t, congruence(to_rational(t), gram)};
}

Enumeration enumerate_short_vectors(const QMatrix& gram, const Rational& radius2, std::size_t cap) {
  const std::size_t d = gram.size();
  // Cohen's quadratic form decomposition: Q(x) = sum q_ii (x_i + sum_{j>i} q_ij x_j)^2.
  std::vector<std::vector<double>> q(d, std::vector<double>(d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) q[i][j] = to_double(gram[i][j]);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = i + 1; j < d; ++j) {
      q[j][i] = q[i][j];
      q[i][j] /= q[i][i];
    }
    for (std::size_t l = i + 1; l < d; ++l)
      for (std::size_t m = l; m < d; ++m) q[l][m] -= q[l][i] * q[i][m];
  }
  const double r2 = to_double(radius2);
  const double slack = r2 * 1e-9 + 1e-12;
  Enumeration out;
  std::vector<long> x(d, 0);

  auto rec = [&](auto&& self, std::size_t i, double remaining) -> void {
    if (out.truncated) return;
    double c = 0;
    for (std::size_t j = i + 1; j < d; ++j) c -= q[i][j] * static_cast<double>(x[j]);
    const double r = std::sqrt(std::max(0.0, remaining + slack) / q[i][i]);
    const long lo = static_cast<long>(std::ceil(c - r)), hi = static_cast<long>(std::floor(c + r));
    for (long v = lo; v <= hi; ++v) {
      x[i] = v;
      const double used = q[i][i] * (static_cast<double>(v) - c) * (static_cast<double>(v) - c);
      if (used > remaining + slack) continue;
      if (i == 0) {
        if (std::all_of(x.begin(), x.end(), [](long e) { return e == 0; })) continue;
        ZVec z(x.begin(), x.end());
        if (quadratic_form(gram, z) <= radius2) {
          out.vectors.push_back(std::move(z));
          if (out.vectors.size() >= cap) {
            out.truncated = true;
            return;
          }
        }
      } else {
        self(self, i - 1, remaining - used);
      }
    }
    x[i] = 0;
  };
  if (d > 0) rec(rec, d - 1, r2);
  return out;
}

double ball_volume(std::size_t d) {
  const double h = static_cast<double>(d) / 2;
  return std::exp(h * std::log(std::numbers::pi) - std::lgamma(h + 1));
}

double ball_constant_alt(std::size_t d) {
  const double h = static_cast<double>(d) / 2;
  return std::exp(h * std::log(std::numbers::pi) - std::lgamma(h));
}

namespace {

double minkowski_threshold2(const Rational& det, std::size_t d, double beta) {
  const double log_t = std::numbers::ln2 + (0.5 * log_abs(det) - std::log(beta)) / static_cast<double>(d);
  const double t = std::exp(log_t) * (1 + kTol);
  return t * t;
}

}  // namespace

ShortVector minkowski_short_vector(const EuclideanLattice& l) {
  const std::size_t d = l.rank();
  const LllResult red = lll_reduce(l.gram());
  const Enumeration en = enumerate_short_vectors(red.gram, red.gram[0][0]);
  std::optional<ZVec> best;
  Rational best_norm;
  for (ZVec v : en.vectors) {
    sign_normalize(v);
    const Rational n2 = quadratic_form(red.gram, v);
    if (!best || n2 < best_norm || (n2 == best_norm && colex_less(v, *best))) {
      best = v;
      best_norm = n2;
    }
  }
  if (!best) throw Error(ErrorKind::InternalError, "enumeration missed the first reduced basis vector");
  ShortVector out;
  out.coords = combine(*best, red.transform, d);
  sign_normalize(out.coords);
  out.norm2 = quadratic_form(l.gram(), out.coords);
  out.threshold2 = minkowski_threshold2(l.det(), d, ball_volume(d));
  out.threshold2_alt = minkowski_threshold2(l.det(), d, ball_constant_alt(d));
  if (to_double(out.norm2) > out.threshold2) throw Error(ErrorKind::InternalError, "short vector exceeds the Minkowski threshold");
  return out;
}

MuMaxBounds mu_max_bounds(const EuclideanLattice& l, double effort) {
  if (!(effort >= 1)) throw Error(ErrorKind::ParameterError, "effort must be at least 1");
  const std::size_t d = l.rank();
  const LllResult red = lll_reduce(l.gram());
  const double det_root = std::exp(log_abs(l.det()) / static_cast<double>(d));
  const Rational radius2(effort * static_cast<double>(d) * det_root);
  const Enumeration en = enumerate_short_vectors(red.gram, radius2, 20000);

  std::vector<ZVec> cand;
  for (ZVec v : en.vectors) {
    sign_normalize(v);
    cand.push_back(std::move(v));
  }
  for (std::size_t i = 0; i < d; ++i) {
    ZVec e(d, 0);
    e[i] = 1;
    cand.push_back(std::move(e));
  }
  std::sort(cand.begin(), cand.end(), [&](const ZVec& a, const ZVec& b) {
    const Rational na = quadratic_form(red.gram, a), nb = quadratic_form(red.gram, b);
    return na != nb ? na < nb : colex_less(a, b);
  });
  cand.erase(std::unique(cand.begin(), cand.end()), cand.end());
  if (cand.size() > 12) cand.resize(12);

  MuMaxBounds out;
  out.enumerated = en.vectors.size();
  out.lower = slope(l);
  out.witness = identity_z(d);
  const std::size_t m = cand.size();
  for (std::uint32_t mask = 1; mask < (1u << m); ++mask) {
    ZMatrix gens;
    for (std::size_t i = 0; i < m; ++i)
      if (mask & (1u << i)) gens.push_back(combine(cand[i], red.transform, d));
    const ZMatrix basis = saturate(gens, d);
    const EuclideanLattice sub = sublattice(l, basis);
    const double s = slope(sub);
    if (s > out.lower + 1e-15) {
      out.lower = s;
      out.witness = basis;
    }
  }
  out.upper = mu_max_upper(l);
  return out;
}

SlopeAudit slope_inequality_audit(const LatticeHom& phi) {
  if (rank(phi.matrix, phi.source.rank()) < phi.source.rank())
    throw Error(ErrorKind::NotInjective, "map has a nonzero kernel");
  const auto upper = mu_max_upper(phi.target);
  if (!upper) throw Error(ErrorKind::NoUpperBound, "target Gram is not integral, no exact upper bound for its largest slope");
  SlopeAudit out;
  out.lhs = slope(phi.source);
  out.mu_max_upper = *upper;
  out.height = hom_height(phi);
  out.rhs = out.mu_max_upper + out.height.value;
  out.slack = out.rhs - out.lhs;
  out.holds = out.lhs <= out.rhs + kTol;
  return out;
}

KernelLattice kernel_lattice(const ZMatrix& phi, std::size_t n) {
  for (const auto& row : phi)
    if (row.size() != n) throw Error(ErrorKind::ParameterError, "matrix rows have inconsistent lengths");
  const ColumnReduction cr = column_reduce(phi, n);
  if (cr.rank == n) throw Error(ErrorKind::FullRank, "kernel is zero");
  ZMatrix basis;
  for (std::size_t j = cr.rank; j < n; ++j) basis.push_back(column(cr.u, j));
  const QMatrix g = congruence(to_rational(basis), identity_q(n));
  const LllResult red = lll_reduce(g);
  ZMatrix reduced;
  for (const auto& row : red.transform) reduced.push_back(combine(row, basis, n));
  sign_normalize(reduced[0]);
  for (std::size_t i = 1; i < reduced.size(); ++i) {
    Integer ip = 0;
    for (std::size_t c = 0; c < n; ++c) ip += reduced[i - 1][c] * reduced[i][c];
    if (sgn(ip) > 0)
      for (auto& x : reduced[i]) x = -x;
  }
  return {reduced, EuclideanLattice::from_embedding(to_rational(reduced))};
}

KernelSlopeAudit kernel_slope_bound_audit(const ZMatrix& phi, std::size_t n) {
  KernelSlopeAudit out;
  out.r = phi.size();
  out.n = n;
  const KernelLattice kl = kernel_lattice(phi, n);
  out.d = kl.lattice.rank();
  out.mu = slope(kl.lattice);
  const LatticeHom full(EuclideanLattice::standard(n), EuclideanLattice::standard(out.r), to_rational(phi));
  const InducedInjection inj = factor_through_kernel(full);
  if (inj.injection) out.height = hom_height(*inj.injection).value;
  out.bound = -(static_cast<double>(n - out.d) / static_cast<double>(out.d)) * out.height;
  out.holds = out.mu >= out.bound - kTol;
  const Integer a = max_abs(phi);
  if (sgn(a) > 0 && n > out.r) {
    const double rr = static_cast<double>(out.r), nn = static_cast<double>(n), la = log_abs(a);
    const double ratio = rr / (nn - rr);
    out.a_priori = -ratio * (0.5 * std::log(rr * nn) + la);
    out.a_priori_alt = -ratio * (0.5 * std::log(rr) + la);
    out.height_exceeds_alt = out.height > 0.5 * std::log(rr) + la + 1e-12;
  }
  return out;
}

SiegelResult siegel_solve(const ZMatrix& phi, std::size_t n) {
  const std::size_t r = phi.size();
  if (n <= r) throw Error(ErrorKind::ParameterError, "need more unknowns than equations");
  const KernelLattice kl = kernel_lattice(phi, n);
  const ShortVector sv = minkowski_short_vector(kl.lattice);
  SiegelResult out;
  out.x = combine(sv.coords, kl.basis, n);
  sign_normalize(out.x);
  for (const auto& row : phi) {
    Integer acc = 0;
    for (std::size_t j = 0; j < n; ++j) acc += row[j] * out.x[j];
    if (sgn(acc) != 0) throw Error(ErrorKind::InternalError, "solver vector is not in the kernel");
  }
  out.norm2 = sv.norm2;
  out.sup_norm = 0;
  for (const auto& v : out.x) out.sup_norm = std::max(out.sup_norm, Integer(abs(v)));
  out.coefficient_bound = max_abs(phi);
  const double a = std::max(1.0, out.coefficient_bound.get_d());
  const double rr = static_cast<double>(r), nn = static_cast<double>(n), ratio = rr / (nn - rr);
  out.classical_bound = std::pow(nn * a, ratio);
  const std::size_t d = kl.lattice.rank();
  const double prefactor = 2 * std::pow(ball_volume(d), -1.0 / static_cast<double>(d));
  out.slope_bound = prefactor * std::pow(std::sqrt(rr * nn) * a, ratio);
  out.slope_bound_alt = prefactor * std::pow(std::sqrt(rr) * a, ratio);
  out.within_classical = out.sup_norm.get_d() <= out.classical_bound * (1 + kTol);
  return out;
}

FilteredAudit filtered_slope_audit(const EuclideanLattice& e, const std::vector<FilteredLevel>& levels,
                                   const std::optional<QMatrix>& ambient) {
  const std::size_t s = e.rank();
  QMatrix stacked;
  for (const auto& lv : levels) {
    if (lv.block.size() != lv.target.rank()) throw Error(ErrorKind::ParameterError, "level block and target rank differ");
    for (const auto& row : lv.block) {
      if (row.size() != s) throw Error(ErrorKind::ParameterError, "level block has the wrong number of columns");
      stacked.push_back(row);
    }
  }
  if (ambient) {
    for (const auto& row : *ambient)
      if (row.size() != s) throw Error(ErrorKind::ParameterError, "ambient map has the wrong number of columns");
    if (rank(*ambient, s) < s) throw Error(ErrorKind::NotInjective, "map has a nonzero kernel");
  }
  if (rank(stacked, s) < s) {
    if (ambient) throw Error(ErrorKind::NotSeparated, "filtration levels do not exhaust the source");
    throw Error(ErrorKind::NotInjective, "map has a nonzero kernel");
  }

  FilteredAudit out;
  out.lhs = arithmetic_degree(e).logvalue;
  ZMatrix current = identity_z(s);  // basis of E^(k), rows in E coordinates
  for (const auto& lv : levels) {
    FilteredLevelReport rep;
    if (current.empty()) {
      out.levels.push_back(rep);
      continue;
    }
    QMatrix restricted(lv.block.size(), QVec(current.size(), 0));
    for (std::size_t i = 0; i < lv.block.size(); ++i)
      for (std::size_t j = 0; j < current.size(); ++j)
        for (std::size_t c = 0; c < s; ++c) restricted[i][j] += lv.block[i][c] * current[j][c];
    if (is_zero(restricted)) {
      out.levels.push_back(rep);
      continue;
    }
    const LatticeHom phi(sublattice(e, current), lv.target, restricted);
    const InducedInjection inj = factor_through_kernel(phi);
    rep.rank = current.size() - inj.kernel_basis.size();
    const auto upper = lv.mu_max_upper ? lv.mu_max_upper : mu_max_upper(lv.target);
    if (!upper) throw Error(ErrorKind::NoUpperBound, "level target Gram is not integral and no upper bound was given");
    rep.mu_max_upper = *upper;
    rep.height = hom_height(*inj.injection).value;
    rep.term = static_cast<double>(rep.rank) * (rep.mu_max_upper + rep.height);
    out.rhs += rep.term;
    ZMatrix next;
    for (const auto& kv : inj.kernel_basis) next.push_back(combine(kv, current, s));
    current = std::move(next);
    out.levels.push_back(rep);
  }
  out.holds = out.lhs <= out.rhs + kTol;
  return out;
}

}  // namespace arithlab
