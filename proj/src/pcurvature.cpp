#include "arithlab/pcurvature.hpp"

#include <sstream>

#include "arithlab/parallel.hpp"

namespace arithlab {

DiffSystem::DiffSystem(RfMat<RationalField> a) : a_(std::move(a)) {
  if (!a_.is_square()) throw Error(ErrorKind::ParameterError, "system matrix must be square");
}

DiffSystem DiffSystem::shifted(const Rational& z0) const {
  return DiffSystem(a_.map([&](const QRatFunc& f) { return f.translated(z0); }));
}

std::string_view status_name(CurvatureStatus s) {
  switch (s) {
    case CurvatureStatus::BadReduction: return "bad-reduction";
    case CurvatureStatus::Zero: return "zero";
    case CurvatureStatus::NonZero: return "nonzero";
  }
  return "unknown";
}

RfMat<PrimeField> p_curvature_matrix(const RfMat<PrimeField>& a) {
  const PrimeField& F = a(0, 0).field();
  const std::uint64_t p = F.modulus();
  const std::size_t d = a.rows();

  FpPoly q = FpPoly::constant(F, F.one());
  for (const auto& x : a.entries()) q = (q * x.den()).exact_div(gcd(q, x.den()));
  const FpPoly dq = q.derivative();

  const FpPoly zero(F);
  const FpPoly one = FpPoly::constant(F, F.one());
  Mat<FpPoly> m = a.map([&](const FpRatFunc& x) { return x.num() * q.exact_div(x.den()); });
  Mat<FpPoly> b = Mat<FpPoly>::identity(d, zero, one);
  for (std::uint64_t n = 0; n < p; ++n) {
    const auto nbar = F.from_int(static_cast<long>(n % p));
    Mat<FpPoly> next = b * m;
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        next(i, j) = next(i, j) + q * b(i, j).derivative() - (dq * b(i, j)).scaled(nbar);
      }
    }
    b = std::move(next);
  }
  const FpPoly qp = q.pow(p);
  return b.map([&](const FpPoly& x) { return FpRatFunc(x, qp); });
}

PCurvatureOutcome p_curvature(const DiffSystem& sys, std::uint64_t p) {
  PCurvatureOutcome out;
  out.p = p;
  const PrimeField F(p);
  RfMat<PrimeField> a = rf_identity(F, 1);
  try {
    a = reduce_matrix_mod_p(sys.matrix(), F);
  } catch (const BadReductionError& e) {
    out.status = CurvatureStatus::BadReduction;
    out.detail = e.detail();
    return out;
  }
  RfMat<PrimeField> ap = p_curvature_matrix(a);
  if (is_zero_matrix(ap)) {
    out.status = CurvatureStatus::Zero;
  } else {
    out.status = CurvatureStatus::NonZero;
    out.matrix = std::move(ap);
  }
  return out;
}

PCurvatureReport scan_p_curvatures(const DiffSystem& sys, std::uint64_t p_max, unsigned jobs) {
  if (p_max < 2) throw Error(ErrorKind::ParameterError, "prime bound must be at least 2");
  PCurvatureReport report{sys, p_max, {}, 0, 0, 0, {}};
  report.outcomes = parallel_map(primes_up_to(p_max), jobs, [&](std::uint64_t p) { return p_curvature(sys, p); });
  std::vector<std::uint64_t> nonzero_at;
  for (const auto& o : report.outcomes) {
    switch (o.status) {
      case CurvatureStatus::Zero: ++report.zero; break;
      case CurvatureStatus::NonZero:
        ++report.nonzero;
        nonzero_at.push_back(o.p);
        break;
      case CurvatureStatus::BadReduction: ++report.bad; break;
    }
  }
  if (nonzero_at.empty()) {
    report.verdict = "all-zero (Grothendieck hypothesis holds up to bound)";
  } else {
    std::ostringstream os;
    os << "nonzero at p = ";
    for (std::size_t i = 0; i < nonzero_at.size(); ++i) os << (i ? ", " : "") << nonzero_at[i];
    report.verdict = os.str();
  }
  return report;
}

RfMat<PrimeField> cartier_fundamental_matrix(const DiffSystem& sys, std::uint64_t p) {
  const PrimeField F(p);
  const RfMat<PrimeField> a = reduce_matrix_mod_p(sys.matrix(), F);
  for (const auto& x : a.entries()) {
    if (F.is_zero(x.den().coeff(0))) {
      throw Error(ErrorKind::SingularAtOrigin, "z = 0 is a pole of A modulo " + std::to_string(p));
    }
  }
  if (!is_zero_matrix(p_curvature_matrix(a))) {
    throw Error(ErrorKind::NotZeroCurvature, "p-curvature is nonzero at p = " + std::to_string(p));
  }

  const std::size_t d = a.rows();
  const auto table = iterate_system(a, p - 1);
  RfMat<PrimeField> sum = rf_identity(F, d);
  FpPoly minus_z_pow = FpPoly::constant(F, F.one());
  const FpPoly minus_z(F, {F.zero(), F.neg(F.one())});
  std::uint64_t factorial = 1;
  for (std::uint64_t i = 1; i < p; ++i) {
    minus_z_pow = minus_z_pow * minus_z;
    factorial = F.mul(factorial, F.from_int(static_cast<long>(i)));
    const FpRatFunc coeff(minus_z_pow.scaled(F.inv(factorial)));
    const auto& ai = table.iterates[i];
    for (std::size_t r = 0; r < d; ++r)
      for (std::size_t c = 0; c < d; ++c) sum(r, c) = sum(r, c) + coeff * ai(r, c);
  }

  RfMat<PrimeField> y = rf_identity(F, 1);
  try {
    y = mat_inverse(sum);
  } catch (const Error& e) {
    if (e.kind() != ErrorKind::SingularMatrix) throw;
    throw Error(ErrorKind::InvertibilityFailure, "truncated exponential sum is singular");
  }

  if (derivative(y) != a * y) {
    throw Error(ErrorKind::InternalError, "fundamental matrix fails Y' = AY");
  }
  for (std::size_t r = 0; r < d; ++r) {
    for (std::size_t c = 0; c < d; ++c) {
      if (y(r, c).eval(F.zero()) != (r == c ? F.one() : F.zero())) {
        throw Error(ErrorKind::InternalError, "fundamental matrix fails Y(0) = I");
      }
    }
  }
  return y;
}

DiffSystem hypergeometric_system(const Rational& a, const Rational& b, const Rational& c) {
  if (c.get_den() == 1 && c <= 0) {
    throw Error(ErrorKind::ParameterError, "c must not be a nonpositive integer");
  }
  const RationalField Q;
  const QPoly z = QPoly::variable(Q);
  const QPoly one = QPoly::constant(Q, 1);
  const QPoly z1mz = z * (one - z);
  RfMat<RationalField> m = rf_identity(Q, 2);
  m(0, 0) = QRatFunc(Q);
  m(0, 1) = QRatFunc(one);
  m(1, 0) = QRatFunc(QPoly::constant(Q, a * b), z1mz);
  m(1, 1) = QRatFunc(z.scaled(a + b + 1) - QPoly::constant(Q, c), z1mz);
  return DiffSystem(std::move(m));
}

std::vector<Rational> hypergeometric_series(const Rational& a, const Rational& b, const Rational& c,
                                            std::size_t order) {
  if (c.get_den() == 1 && c <= 0) {
    throw Error(ErrorKind::ParameterError, "c must not be a nonpositive integer");
  }
  std::vector<Rational> out(order + 1);
  out[0] = 1;
  for (std::size_t n = 0; n < order; ++n) {
    Rational nn = static_cast<unsigned long>(n);
    out[n + 1] = out[n] * (nn + a) * (nn + b) / ((nn + 1) * (nn + c));
  }
  return out;
}

}  // namespace arithlab
