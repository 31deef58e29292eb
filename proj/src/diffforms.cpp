#include "arithlab/diffforms.hpp"

#include <numeric>
#include <sstream>

#include "arithlab/parallel.hpp"

namespace arithlab {

namespace {

// Reduced row echelon solve of M x = b over F_p; free unknowns are zero.
std::optional<std::vector<std::uint64_t>> solve_fp(const PrimeField& F, std::vector<std::vector<std::uint64_t>> m,
                                                   std::vector<std::uint64_t> b, std::size_t cols) {
  const std::size_t rows = m.size();
  std::vector<std::size_t> pivot_col;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t piv = r;
    while (piv < rows && m[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(m[piv], m[r]);
    std::swap(b[piv], b[r]);
    const auto inv = F.inv(m[r][c]);
    for (auto& x : m[r]) x = F.mul(x, inv);
    b[r] = F.mul(b[r], inv);
    for (std::size_t i = 0; i < rows; ++i) {
      if (i == r || m[i][c] == 0) continue;
      const auto s = m[i][c];
      for (std::size_t j = c; j < cols; ++j) m[i][j] = F.sub(m[i][j], F.mul(s, m[r][j]));
      b[i] = F.sub(b[i], F.mul(s, b[r]));
    }
    pivot_col.push_back(c);
    ++r;
  }
  for (std::size_t i = r; i < rows; ++i)
    if (b[i] != 0) return std::nullopt;
  std::vector<std::uint64_t> x(cols, 0);
  for (std::size_t i = 0; i < r; ++i) x[pivot_col[i]] = b[i];
  return x;
}

// Exponent-divided p-th root of a polynomial supported on multiples of p.
FpPoly pth_root(const FpPoly& f) {
  const std::uint64_t p = f.field().modulus();
  std::vector<std::uint64_t> c;
  for (long k = 0; k <= f.degree(); ++k) {
    const auto a = f.coeff(static_cast<std::size_t>(k));
    if (a == 0) continue;
    if (static_cast<std::uint64_t>(k) % p != 0)
      throw Error(ErrorKind::NotAPthPower, "coefficient at z^" + std::to_string(k) + " is not on a multiple of p");
    const std::size_t m = static_cast<std::size_t>(k) / p;
    if (c.size() <= m) c.resize(m + 1, 0);
    c[m] = a;
  }
  return FpPoly(f.field(), std::move(c));
}

unsigned multiplicity_scaled(FpPoly f, unsigned scale) {
  if (f.degree() <= 0) return 0;
  f = f.monic();
  unsigned best = 0;
  FpPoly c = gcd(f, f.derivative());
  FpPoly w = f.exact_div(c);
  unsigned i = 1;
  while (w.degree() > 0) {
    const FpPoly y = gcd(w, c);
    if (w.exact_div(y).degree() > 0) best = i * scale;
    w = y;
    c = c.exact_div(y);
    ++i;
  }
  if (c.degree() > 0) {
    const unsigned p = static_cast<unsigned>(f.field().modulus());
    best = std::max(best, multiplicity_scaled(pth_root(c), scale * p));
  }
  return best;
}

std::vector<Integer> positive_divisors(Integer n) {
  n = abs(n);
  std::vector<Integer> small, large;
  for (Integer d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d * d != n) large.push_back(n / d);
    }
  }
  small.insert(small.end(), large.rbegin(), large.rend());
  return small;
}

}  // namespace

std::string_view form_status_name(FormStatus s) {
  switch (s) {
    case FormStatus::ExactModP: return "exact-mod-p";
    case FormStatus::LogExactModP: return "log-exact-mod-p";
    case FormStatus::Neither: return "neither";
  }
  return "unknown";
}

FpRatFunc cartier_operator(const FpRatFunc& f) {
  const PrimeField& F = f.field();
  const std::uint64_t p = F.modulus();
  const FpPoly& q = f.den();
  // f = N Q^{p-1} / Q^p and Q^p has zero derivative, so only the numerator is differentiated.
  FpPoly g = f.num() * q.pow(p - 1);
  for (std::uint64_t k = 0; k + 1 < p; ++k) g = g.derivative();
  const FpPoly num = pth_root(-g);
  const FpPoly den = pth_root(q.pow(p));
  return FpRatFunc(num, den);
}

FpRatFunc cartier_operator(const RationalForm& w, std::uint64_t p) {
  return cartier_operator(rf_reduce_mod_p(w.f, PrimeField(p)));
}

unsigned max_multiplicity(const FpPoly& f) {
  if (f.is_zero()) throw Error(ErrorKind::ParameterError, "multiplicity of the zero polynomial");
  return multiplicity_scaled(f, 1);
}

std::optional<FpRatFunc> brute_force_antiderivative(const FpRatFunc& f, unsigned pole_bound, unsigned deg_bound) {
  const PrimeField& F = f.field();
  const FpPoly& n = f.num();
  const FpPoly& q = f.den();
  const FpPoly d = q.pow(pole_bound);
  const FpPoly dd = d.derivative();
  const FpPoly rhs = n * d * d;

  std::vector<FpPoly> columns;
  long rows = rhs.degree() + 1;
  for (unsigned k = 0; k <= deg_bound; ++k) {
    const FpPoly zk = FpPoly::monomial(F, F.one(), k);
    FpPoly col = q * (zk.derivative() * d - zk * dd);
    rows = std::max(rows, col.degree() + 1);
    columns.push_back(std::move(col));
  }
  if (rows <= 0) return FpRatFunc(F);

  std::vector<std::vector<std::uint64_t>> m(static_cast<std::size_t>(rows), std::vector<std::uint64_t>(columns.size(), 0));
  std::vector<std::uint64_t> b(static_cast<std::size_t>(rows), 0);
  for (std::size_t i = 0; i < static_cast<std::size_t>(rows); ++i) {
    for (std::size_t k = 0; k < columns.size(); ++k) m[i][k] = columns[k].coeff(i);
    b[i] = rhs.coeff(i);
  }
  const auto x = solve_fp(F, std::move(m), std::move(b), columns.size());
  if (!x) return std::nullopt;
  FpRatFunc g(FpPoly(F, *x), d);
  if (!(g.derivative() == f)) throw Error(ErrorKind::InternalError, "antiderivative system solution fails g' = f");
  return g;
}

FormClass classify_form(const FpRatFunc& f) {
  FormClass out{f.field().modulus(), FormStatus::Neither, cartier_operator(f), std::nullopt, false};
  if (out.cartier.is_zero()) {
    out.status = FormStatus::ExactModP;
    out.degenerate = f.is_zero();
    const long dn = f.num().degree(), dq = f.den().degree();
    if (dn <= 12 && dq <= 12 && max_multiplicity(f.den()) <= 6) {
      const unsigned bound = static_cast<unsigned>(std::max(dn + 1, dq));
      out.witness = brute_force_antiderivative(f, 1, bound);
    }
  } else if (out.cartier == f) {
    out.status = FormStatus::LogExactModP;
  } else {
    out.status = FormStatus::Neither;
  }
  return out;
}

FormClass classify_form(const RationalForm& w, std::uint64_t p) {
  return classify_form(rf_reduce_mod_p(w.f, PrimeField(p)));
}

ScanReport scan_form(const RationalForm& w, std::uint64_t p_max, const ScanFormOptions& opts) {
  if (p_max < 2) throw Error(ErrorKind::ParameterError, "prime bound must be at least 2");
  ScanReport report;
  report.subject = "(" + w.f.render() + ")*dz";
  report.p_max = p_max;
  std::vector<std::uint64_t> primes;
  for (auto p : primes_up_to(p_max)) {
    if (p == 2 && !opts.include_two) {
      report.excluded.push_back(p);
      continue;
    }
    primes.push_back(p);
  }
  report.entries = parallel_map(primes, opts.jobs, [&](std::uint64_t p) {
    ScanEntry e;
    e.p = p;
    try {
      const FormClass c = classify_form(w, p);
      e.status = std::string(form_status_name(c.status));
      e.degenerate = c.degenerate;
      e.detail = "C(omega) = (" + c.cartier.render() + ")*dz";
      if (c.witness) e.witness = c.witness->render();
    } catch (const BadReductionError& err) {
      e.status = "bad-reduction";
      e.detail = err.detail();
    }
    return e;
  });
  tally(report);

  std::size_t informative = 0, exact = 0, log_exact = 0;
  std::vector<std::uint64_t> neither, exact_at;
  for (const auto& e : report.entries) {
    if (e.status == "bad-reduction" || e.degenerate) continue;
    ++informative;
    if (e.status == "exact-mod-p") {
      ++exact;
      exact_at.push_back(e.p);
    } else if (e.status == "log-exact-mod-p") {
      ++log_exact;
    } else {
      neither.push_back(e.p);
    }
  }
  if (informative == 0) {
    report.verdict = "inconclusive (no informative prime)";
  } else if (exact == informative) {
    report.verdict = "candidate exact";
  } else if (log_exact == informative) {
    report.verdict = "candidate log-exact (up to integer multiple)";
  } else {
    const auto& at = neither.empty() ? exact_at : neither;
    std::ostringstream os;
    os << "neither (obstruction at p = ";
    for (std::size_t i = 0; i < at.size(); ++i) os << (i ? ", " : "") << at[i];
    os << ")";
    report.verdict = os.str();
  }
  return report;
}

std::optional<LogWitness> find_log_witness(const RationalForm& w, unsigned n_max) {
  const RationalField Q;
  const QRatFunc& f = w.f;
  if (f.is_zero()) return LogWitness{1, QRatFunc::constant(Q, 1)};
  if (f.num().degree() >= f.den().degree()) return std::nullopt;

  // Rational roots of the denominator, each required to be simple.
  const auto split = primitive_split(f.den());
  const QPoly den(Q, std::vector<Rational>(split.primitive.begin(), split.primitive.end()));
  const Integer an = den.lead().get_num();
  const Integer limit("1000000000000");
  std::vector<Rational> roots;
  QPoly rest = den;
  if (den.coeff(0) == 0) {
    roots.push_back(0);
    rest = rest.exact_div(QPoly::variable(Q));
  }
  const Integer r0 = rest.coeff(0).get_num();
  if (abs(r0) > limit || abs(an) > limit) return std::nullopt;
  for (const Integer& u : positive_divisors(r0)) {
    for (const Integer& v : positive_divisors(an)) {
      for (int sign : {1, -1}) {
        Rational r(sign * u, v);
        r.canonicalize();
        if (rest.degree() > 0 && rest.eval(r) == 0) {
          rest = rest.exact_div(QPoly(Q, {-r, 1}));
          if (rest.degree() > 0 && rest.eval(r) == 0) return std::nullopt;
          roots.push_back(r);
        }
      }
    }
  }
  if (rest.degree() > 0) return std::nullopt;

  const QPoly dq = f.den().derivative();
  std::vector<Rational> residues;
  Integer n = 1;
  for (const auto& a : roots) {
    Rational res = f.num().eval(a) / dq.eval(a);
    residues.push_back(res);
    n = lcm(n, Integer(res.get_den()));
    if (n > n_max) return std::nullopt;
  }
  QRatFunc h = QRatFunc::constant(Q, 1);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    const Integer e = residues[i].get_num() * (n / residues[i].get_den());
    const QRatFunc lin(QPoly(Q, {-roots[i], 1}));
    const QRatFunc factor = lin.pow(Integer(abs(e)).get_ui());
    h = sgn(e) >= 0 ? h * factor : h / factor;
  }
  const unsigned nn = static_cast<unsigned>(n.get_ui());
  if (!(f.scaled(Rational(nn)) == h.derivative() / h)) return std::nullopt;
  return LogWitness{nn, h};
}

}  // namespace arithlab
