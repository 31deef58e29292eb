#include "arithlab/arith_scan.hpp"

#include <cmath>
#include <iomanip>
#include <sstream>

#include "arithlab/expr.hpp"
#include "arithlab/linalg.hpp"
#include "arithlab/parallel.hpp"

namespace arithlab {

namespace {

void check_good_curve_prime(const CurveSpec& e, std::uint64_t p) {
  if (p <= 3) throw Error(ErrorKind::SmallPrime, "curve operations need p > 3");
  if (!is_prime(p)) throw Error(ErrorKind::ParameterError, std::to_string(p) + " is not prime");
  if (mpz_divisible_ui_p(e.discriminant.get_mpz_t(), p))
    throw BadReductionError(p, "p divides the discriminant " + e.discriminant.get_str());
}

// Short model y^2 = x^3 + A x + B mod p with A = -27 c4, B = -54 c6.
std::pair<std::uint64_t, std::uint64_t> short_model(const CurveSpec& e, const PrimeField& F) {
  return {F.from_integer(Integer(-27 * e.c4)), F.from_integer(Integer(-54 * e.c6))};
}

std::string integer_poly_render(const std::vector<Integer>& f, const std::string& var) {
  std::vector<Rational> q(f.begin(), f.end());
  return QPoly(RationalField{}, q).render(var);
}

}  // namespace

Integer resultant(const std::vector<Integer>& f, const std::vector<Integer>& g) {
  const std::size_t m = f.size() - 1, n = g.size() - 1;
  if (m + n == 0) return 1;
  QMatrix s(m + n, QVec(m + n, 0));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k <= m; ++k) s[i][i + k] = f[m - k];
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t k = 0; k <= n; ++k) s[n + i][i + k] = g[n - k];
  return determinant(s).get_num();
}

NumberSpec NumberSpec::from_poly(const QPoly& p) {
  if (p.degree() < 1) throw Error(ErrorKind::ParameterError, "polynomial must have degree at least 1");
  NumberSpec s;
  s.f = primitive_split(p).primitive;
  if (sgn(s.f.back()) < 0)
    for (auto& c : s.f) c = -c;
  const long n = s.degree();
  if (n == 1) {
    s.discriminant = 1;
    return s;
  }
  std::vector<Integer> df;
  for (long k = 1; k <= n; ++k) df.push_back(s.f[static_cast<std::size_t>(k)] * k);
  const Integer res = resultant(s.f, df);
  if (sgn(res) == 0) throw Error(ErrorKind::ParameterError, "polynomial is not squarefree");
  s.discriminant = res / s.f.back();
  if ((n * (n - 1) / 2) % 2 == 1) s.discriminant = -s.discriminant;
  return s;
}

NumberSpec NumberSpec::parse(std::string_view text) {
  const BivariatePoly b = eval_bivariate(parse_expression(text), "x", "Y");
  if (b.size() > 1) throw Error(ErrorKind::ParameterError, "number spec must be a polynomial in x");
  return from_poly(b.empty() ? QPoly(RationalField{}) : b[0]);
}

std::string NumberSpec::render() const { return integer_poly_render(f, "x"); }

std::size_t frobenius_root_count(const NumberSpec& spec, std::uint64_t p) {
  const PrimeField F(p);
  const FpPoly f = reduce_integer_poly(spec.f, F);
  if (f.degree() != spec.degree()) throw BadReductionError(p, "p divides the leading coefficient");
  const FpPoly x = FpPoly::variable(F);
  FpPoly result = FpPoly::constant(F, F.one()) % f, base = x % f;
  for (std::uint64_t e = p; e > 0; e >>= 1) {
    if (e & 1) result = (result * base) % f;
    base = (base * base) % f;
  }
  return static_cast<std::size_t>(std::max(0L, gcd(result - x, f).degree()));
}

DensityReport kronecker_scan(const NumberSpec& spec, std::uint64_t p_max, unsigned jobs) {
  if (p_max < 3) throw Error(ErrorKind::ParameterError, "prime bound must be at least 3");
  DensityReport r;
  r.subject = spec.render();
  r.p_max = p_max;
  const Integer bad = spec.discriminant * spec.f.back();
  std::vector<std::uint64_t> good;
  for (auto p : primes_up_to(p_max)) {
    if (mpz_divisible_ui_p(bad.get_mpz_t(), p)) {
      r.excluded_primes.push_back(p);
    } else {
      good.push_back(p);
    }
  }
  const auto roots = parallel_map(good, jobs, [&](std::uint64_t p) { return frobenius_root_count(spec, p); });
  r.tested = good.size();
  r.excluded = r.excluded_primes.size();
  for (auto k : roots) r.positive += static_cast<long>(k) == spec.degree();
  r.density = r.tested ? static_cast<double>(r.positive) / static_cast<double>(r.tested) : 0.0;
  if (r.tested == 0) {
    r.verdict = "inconclusive (no good prime)";
  } else if (r.positive == r.tested) {
    r.verdict = "rational-consistent";
  } else {
    std::ostringstream os;
    os << "irrational (density ≈ " << std::fixed << std::setprecision(3) << r.density << ")";
    r.verdict = os.str();
  }
  return r;
}

TorusLineResult torus_line_test(const Rational& alpha, std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::ParameterError, std::to_string(p) + " is not prime");
  if (mpz_divisible_ui_p(alpha.get_den_mpz_t(), p))
    throw Error(ErrorKind::BadPrime, "p divides the denominator of alpha");
  const PrimeField F(p);
  TorusLineResult r;
  r.residue = F.from_rational(alpha);
  r.frobenius = F.pow(r.residue, p);
  // (1, a)^[p] = (1, a^p) lies on the line through (1, a) iff a^p = a.
  r.proportional = r.frobenius == r.residue;
  return r;
}

CurveSpec CurveSpec::from_coefficients(const std::array<Integer, 5>& a) {
  CurveSpec e;
  e.a = a;
  const Integer &a1 = a[0], &a2 = a[1], &a3 = a[2], &a4 = a[3], &a6 = a[4];
  e.b2 = a1 * a1 + 4 * a2;
  e.b4 = 2 * a4 + a1 * a3;
  e.b6 = a3 * a3 + 4 * a6;
  e.b8 = a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4;
  e.c4 = e.b2 * e.b2 - 24 * e.b4;
  e.c6 = -e.b2 * e.b2 * e.b2 + 36 * e.b2 * e.b4 - 216 * e.b6;
  e.discriminant = -e.b2 * e.b2 * e.b8 - 8 * e.b4 * e.b4 * e.b4 - 27 * e.b6 * e.b6 + 9 * e.b2 * e.b4 * e.b6;
  if (sgn(e.discriminant) == 0) throw Error(ErrorKind::ParameterError, "singular curve (discriminant 0)");
  return e;
}

CurveSpec CurveSpec::parse(std::string_view text) {
  std::string s(text);
  const auto lb = s.find('[');
  if (lb != std::string::npos) {
    const auto rb = s.find(']', lb);
    if (rb == std::string::npos) throw SyntaxError(s.size(), "']'");
    std::array<Integer, 5> a;
    std::stringstream ss(s.substr(lb + 1, rb - lb - 1));
    std::string item;
    std::size_t k = 0;
    while (std::getline(ss, item, ',')) {
      if (k == 5) throw Error(ErrorKind::ParameterError, "expected five Weierstrass coefficients");
      const Rational q = eval_constant(parse_expression(item));
      if (q.get_den() != 1) throw Error(ErrorKind::ParameterError, "Weierstrass coefficients must be integers");
      a[k++] = q.get_num();
    }
    if (k != 5) throw Error(ErrorKind::ParameterError, "expected five Weierstrass coefficients");
    return from_coefficients(a);
  }
  const auto eq = s.find('=');
  if (eq == std::string::npos) throw SyntaxError(0, "'[' or 'y^2 ='");
  const BivariatePoly rhs = eval_bivariate(parse_expression(s.substr(eq + 1)), "x", "Y");
  if (rhs.size() != 1 || rhs[0].degree() != 3 || rhs[0].lead() != 1 || rhs[0].coeff(2) != 0)
    throw Error(ErrorKind::ParameterError, "short form must be y^2 = x^3 + A*x + B");
  for (std::size_t k = 0; k < 2; ++k)
    if (rhs[0].coeff(k).get_den() != 1) throw Error(ErrorKind::ParameterError, "short form needs integer A, B");
  return from_coefficients({0, 0, 0, rhs[0].coeff(1).get_num(), rhs[0].coeff(0).get_num()});
}

std::string CurveSpec::render() const {
  std::ostringstream os;
  os << "[" << a[0] << "," << a[1] << "," << a[2] << "," << a[3] << "," << a[4] << "]";
  return os.str();
}

std::uint64_t ec_count_points(const CurveSpec& e, std::uint64_t p) {
  check_good_curve_prime(e, p);
  const PrimeField F(p);
  const auto [A, B] = short_model(e, F);
  std::uint64_t count = 1;
  const std::uint64_t half = (p - 1) / 2;
  for (std::uint64_t x = 0; x < p; ++x) {
    const std::uint64_t v = F.add(F.mul(F.mul(x, x), x), F.add(F.mul(A, x), B));
    if (v == 0) {
      count += 1;
    } else if (F.pow(v, half) == 1) {
      count += 2;
    }
  }
  const long long t = static_cast<long long>(p + 1) - static_cast<long long>(count);
  if (static_cast<unsigned long long>(t * t) > 4 * p) throw Error(ErrorKind::InternalError, "point count violates the Hasse bound");
  return count;
}

std::uint64_t ec_count_points_naive(const CurveSpec& e, std::uint64_t p) {
  if (!is_prime(p)) throw Error(ErrorKind::ParameterError, std::to_string(p) + " is not prime");
  if (mpz_divisible_ui_p(e.discriminant.get_mpz_t(), p))
    throw BadReductionError(p, "p divides the discriminant " + e.discriminant.get_str());
  const PrimeField F(p);
  std::array<std::uint64_t, 5> a;
  for (std::size_t k = 0; k < 5; ++k) a[k] = F.from_integer(e.a[k]);
  std::uint64_t count = 1;
  for (std::uint64_t x = 0; x < p; ++x) {
    const std::uint64_t rhs = F.add(F.add(F.mul(F.mul(x, x), x), F.mul(a[1], F.mul(x, x))), F.add(F.mul(a[3], x), a[4]));
    for (std::uint64_t y = 0; y < p; ++y) {
      const std::uint64_t lhs = F.add(F.mul(y, y), F.add(F.mul(a[0], F.mul(x, y)), F.mul(a[2], y)));
      count += lhs == rhs;
    }
  }
  return count;
}

HasseResult hasse_invariant(const CurveSpec& e, std::uint64_t p) {
  check_good_curve_prime(e, p);
  const PrimeField F(p);
  const auto [A, B] = short_model(e, F);
  const FpPoly cubic(F, {B, A, 0, 1});
  HasseResult r;
  r.p = p;
  r.invariant = cubic.pow((p - 1) / 2).coeff(p - 1);
  r.count = ec_count_points(e, p);
  r.congruence = r.count % p == F.sub(1, r.invariant);
  if (!r.congruence) throw Error(ErrorKind::InternalError, "point count is not 1 - A mod p");
  return r;
}

ScanReport isogeny_scan(const CurveSpec& e, const CurveSpec& e2, std::uint64_t p_max, unsigned jobs) {
  if (p_max < 5) throw Error(ErrorKind::ParameterError, "prime bound must be at least 5");
  ScanReport r;
  r.subject = e.render() + " vs " + e2.render();
  r.p_max = p_max;
  std::vector<std::uint64_t> good;
  for (auto p : primes_up_to(p_max)) {
    if (p <= 3 || mpz_divisible_ui_p(e.discriminant.get_mpz_t(), p) || mpz_divisible_ui_p(e2.discriminant.get_mpz_t(), p)) {
      r.excluded.push_back(p);
    } else {
      good.push_back(p);
    }
  }
  r.entries = parallel_map(good, jobs, [&](std::uint64_t p) {
    const auto n1 = ec_count_points(e, p), n2 = ec_count_points(e2, p);
    ScanEntry s;
    s.p = p;
    s.status = n1 == n2 ? "equal" : "mismatch";
    s.detail = std::to_string(n1) + " vs " + std::to_string(n2);
    return s;
  });
  tally(r);
  r.verdict = "no obstruction up to " + std::to_string(p_max) + " (isogeny-consistent)";
  for (const auto& s : r.entries) {
    if (s.status == "mismatch") {
      r.verdict = "mismatch at p = " + std::to_string(s.p) + " (" + s.detail + ")";
      break;
    }
  }
  return r;
}

}  // namespace arithlab
