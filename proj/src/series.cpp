#include "arithlab/series.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

#include "arithlab/linalg.hpp"
#include "arithlab/parallel.hpp"

namespace arithlab {

namespace {

using Coeffs = std::vector<Rational>;

Coeffs truncated(Coeffs a, std::size_t order) {
  a.resize(order + 1, Rational(0));
  return a;
}

// P(x, y) with P_i given as rational coefficient lists, by Horner in Y.
Coeffs evaluate(const std::vector<Coeffs>& p, const Coeffs& y, std::size_t order) {
  Coeffs acc(order + 1, Rational(0));
  for (std::size_t i = p.size(); i-- > 0;) {
    acc = series_mul(acc, y, order);
    for (std::size_t j = 0; j < p[i].size() && j <= order; ++j) acc[j] += p[i][j];
  }
  return acc;
}

std::vector<Coeffs> rational_rows(const AlgRelation& rel) {
  std::vector<Coeffs> p;
  for (const auto& row : rel.p) p.emplace_back(row.begin(), row.end());
  return p;
}

long valuation_at(const Integer& n, const Integer& q) {
  if (sgn(n) == 0) return std::numeric_limits<long>::max() / 4;
  Integer rest;
  return static_cast<long>(mpz_remove(rest.get_mpz_t(), n.get_mpz_t(), q.get_mpz_t()));
}

// v_q(a) for a nonzero rational; huge for zero.
long valuation_at(const Rational& a, const Integer& q) {
  if (sgn(a) == 0) return std::numeric_limits<long>::max() / 4;
  return valuation_at(Integer(a.get_num()), q) - valuation_at(Integer(a.get_den()), q);
}

double log_plus_arch(const Rational& a) { return sgn(a) == 0 ? 0.0 : std::max(0.0, log_abs(a)); }

double log_plus_finite(const Rational& a, const Integer& q) {
  if (sgn(a) == 0) return 0.0;
  const long v = valuation_at(a, q);
  return v < 0 ? static_cast<double>(-v) * log_abs(q) : 0.0;
}

std::vector<std::size_t> checkpoints(std::size_t n) {
  return {std::max<std::size_t>(1, n / 4), std::max<std::size_t>(1, n / 2), n};
}

constexpr std::uint64_t kTrialBound = 20000;

HermitePadeOutcome search(const SeriesApprox& y, std::size_t d, std::size_t dy) {
  const std::size_t n = y.order();
  const std::size_t m = (d + 1) * (dy + 1);
  std::vector<Coeffs> powers{Coeffs(n + 1, Rational(0))};
  powers[0][0] = 1;
  for (std::size_t i = 1; i <= dy; ++i) powers.push_back(series_mul(powers.back(), y.coeffs, n));

  QMatrix rows(n + 1, QVec(m, 0));
  for (std::size_t k = 0; k <= n; ++k)
    for (std::size_t i = 0; i <= dy; ++i)
      for (std::size_t j = 0; j <= d && j <= k; ++j) rows[k][i * (d + 1) + j] = powers[i][k - j];

  HermitePadeOutcome out;
  out.unknowns = m;
  out.system_rows = m - 1;
  out.system_kernel_dim = rational_kernel(QMatrix(rows.begin(), rows.begin() + static_cast<long>(std::min(m - 1, n + 1))), m).size();
  const QMatrix kernel = rational_kernel(rows, m);
  out.kernel_dim = kernel.size();
  if (kernel.empty()) return out;
  // The first basis vector belongs to the first free unknown in the order
  // (Y-degree, X-degree), so it has the smallest support in that order.
  std::vector<Coeffs> p(dy + 1, Coeffs(d + 1));
  for (std::size_t i = 0; i <= dy; ++i)
    for (std::size_t j = 0; j <= d; ++j) p[i][j] = kernel[0][i * (d + 1) + j];
  out.relation = make_relation(std::move(p));
  for (const auto& r : relation_residual(*out.relation, y, n))
    if (sgn(r) != 0) throw Error(ErrorKind::InternalError, "detected relation fails its guard");
  return out;
}

}  // namespace

SeriesApprox series_from_ratfunc(const QRatFunc& f, std::size_t order) { return {series_expand_at_zero(f, order)}; }

std::vector<Rational> series_mul(const std::vector<Rational>& a, const std::vector<Rational>& b, std::size_t order) {
  Coeffs out(order + 1, Rational(0));
  for (std::size_t i = 0; i < a.size() && i <= order; ++i) {
    if (sgn(a[i]) == 0) continue;
    for (std::size_t j = 0; j < b.size() && i + j <= order; ++j) out[i + j] += a[i] * b[j];
  }
  return out;
}

std::vector<Rational> series_inverse(const std::vector<Rational>& a, std::size_t order) {
  if (a.empty() || sgn(a[0]) == 0) throw Error(ErrorKind::InvertibilityFailure, "series with zero constant term");
  Coeffs out(order + 1, Rational(0));
  const Rational inv0 = 1 / a[0];
  out[0] = inv0;
  for (std::size_t n = 1; n <= order; ++n) {
    Rational acc = 0;
    for (std::size_t k = 1; k <= n && k < a.size(); ++k) acc += a[k] * out[n - k];
    out[n] = -acc * inv0;
  }
  return out;
}

AlgRelation make_relation(std::vector<std::vector<Rational>> p) {
  Integer den = 1;
  for (const auto& row : p)
    for (const auto& c : row) den = lcm(den, Integer(c.get_den()));
  std::vector<std::vector<Integer>> z;
  Integer content = 0;
  for (const auto& row : p) {
    std::vector<Integer> r;
    for (const auto& c : row) {
      r.push_back(Integer(c.get_num() * (den / c.get_den())));
      content = gcd(content, r.back());
    }
    z.push_back(std::move(r));
  }
  if (sgn(content) == 0) throw Error(ErrorKind::ParameterError, "relation is zero");
  for (auto& row : z) {
    for (auto& c : row) c /= content;
    while (!row.empty() && sgn(row.back()) == 0) row.pop_back();
  }
  while (!z.empty() && z.back().empty()) z.pop_back();
  if (sgn(z.back().back()) < 0)
    for (auto& row : z)
      for (auto& c : row) c = -c;
  AlgRelation rel;
  rel.dy = z.size() - 1;
  for (const auto& row : z) rel.d = std::max(rel.d, row.empty() ? 0 : row.size() - 1);
  rel.p = std::move(z);
  return rel;
}

AlgRelation relation_from_bivariate(const BivariatePoly& b) {
  std::vector<std::vector<Rational>> p;
  for (const auto& poly : b) p.push_back(poly.coeffs());
  return make_relation(std::move(p));
}

AlgRelation parse_relation(std::string_view text) { return relation_from_bivariate(parse_bivariate(text)); }

std::string AlgRelation::render() const {
  std::ostringstream os;
  bool first = true;
  for (std::size_t i = p.size(); i-- > 0;) {
    for (std::size_t j = p[i].size(); j-- > 0;) {
      const Integer& c = p[i][j];
      if (sgn(c) == 0) continue;
      const Integer mag = abs(c);
      if (first) {
        if (sgn(c) < 0) os << "-";
      } else {
        os << (sgn(c) < 0 ? " - " : " + ");
      }
      first = false;
      std::string mono;
      if (j > 0) mono += j == 1 ? "X" : "X^" + std::to_string(j);
      if (i > 0) mono += std::string(mono.empty() ? "" : "*") + (i == 1 ? "Y" : "Y^" + std::to_string(i));
      if (mono.empty()) {
        os << mag.get_str();
      } else if (mag == 1) {
        os << mono;
      } else {
        os << mag.get_str() << "*" << mono;
      }
    }
  }
  return first ? "0" : os.str();
}

std::vector<Rational> relation_residual(const AlgRelation& rel, const SeriesApprox& y, std::size_t order) {
  return evaluate(rational_rows(rel), truncated(y.coeffs, order), order);
}

SeriesApprox expand_algebraic_branch(const AlgRelation& rel, const Rational& y0, std::size_t order) {
  const std::vector<Coeffs> p = rational_rows(rel);
  std::vector<Coeffs> dp;
  for (std::size_t i = 1; i < p.size(); ++i) {
    Coeffs row = p[i];
    for (auto& c : row) c *= static_cast<long>(i);
    dp.push_back(std::move(row));
  }
  const Coeffs start{y0};
  if (sgn(evaluate(p, start, 0)[0]) != 0) throw Error(ErrorKind::NotARoot, "P(0, y0) != 0");
  if (dp.empty() || sgn(evaluate(dp, start, 0)[0]) == 0)
    throw Error(ErrorKind::SingularBranch, "dP/dY vanishes at (0, y0)");

  Coeffs y = start;
  std::size_t prec = 1;  // y is correct modulo x^prec
  while (prec < order + 1) {
    prec = std::min(2 * prec, order + 1);
    y = truncated(std::move(y), prec - 1);
    const Coeffs f = evaluate(p, y, prec - 1);
    const Coeffs g = evaluate(dp, y, prec - 1);
    const Coeffs step = series_mul(f, series_inverse(g, prec - 1), prec - 1);
    for (std::size_t k = 0; k < prec; ++k) y[k] -= step[k];
  }
  return {truncated(std::move(y), order)};
}

HermitePadeOutcome hermite_pade_search(const SeriesApprox& y, std::size_t d, std::size_t dy) {
  if (y.coeffs.empty() || y.order() < 2 * (d + 1) * (dy + 1))
    throw Error(ErrorKind::InsufficientPrecision,
                "need order >= " + std::to_string(2 * (d + 1) * (dy + 1)) + " for (d, D) = (" + std::to_string(d) + ", " +
                    std::to_string(dy) + ")");
  return search(y, d, dy);
}

std::optional<AlgRelation> hermite_pade_detect(const SeriesApprox& y, std::size_t d, std::size_t dy) {
  return hermite_pade_search(y, d, dy).relation;
}

std::optional<RationalDetection> detect_rational(const SeriesApprox& y, std::size_t d) {
  if (y.coeffs.empty() || y.order() < 2 * (d + 1) + 2)
    throw Error(ErrorKind::InsufficientPrecision, "need order >= " + std::to_string(2 * (d + 1) + 2));
  const HermitePadeOutcome o = search(y, d, 1);
  if (!o.relation) return std::nullopt;
  const RationalField Q;
  const auto& p = o.relation->p;
  auto poly = [&](std::size_t i) {
    if (i >= p.size()) return QPoly(Q);
    return QPoly(Q, std::vector<Rational>(p[i].begin(), p[i].end()));
  };
  if (poly(1).is_zero()) return std::nullopt;
  const QRatFunc f(-poly(0), poly(1));
  const Rational c = f.den().coeff(0);
  if (sgn(c) == 0) return std::nullopt;
  return RationalDetection{f.num().scaled(1 / c), f.den().scaled(1 / c)};
}

std::optional<SweepResult> detect_sweep(const SeriesApprox& y, std::size_t max_d, std::size_t max_dy, unsigned jobs) {
  std::vector<std::pair<std::size_t, std::size_t>> sizes;
  for (std::size_t dy = 1; dy <= max_dy; ++dy)
    for (std::size_t d = 1; d <= max_d; ++d)
      if (y.order() >= 2 * (d + 1) * (dy + 1)) sizes.emplace_back(d, dy);
  const auto found = parallel_map(sizes, jobs, [&](const std::pair<std::size_t, std::size_t>& s) {
    return search(y, s.first, s.second).relation;
  });
  for (std::size_t k = 0; k < sizes.size(); ++k)
    if (found[k]) return SweepResult{sizes[k].first, sizes[k].second, *found[k]};
  return std::nullopt;
}

DenominatorSupport denominator_support(const std::vector<Rational>& coeffs) {
  const auto small = primes_up_to(kTrialBound);
  std::vector<bool> seen(small.size(), false);
  DenominatorSupport out;
  for (const auto& a : coeffs) {
    Integer den = a.get_den();
    for (std::size_t i = 0; i < small.size() && den > 1; ++i) {
      if (mpz_divisible_ui_p(den.get_mpz_t(), small[i])) {
        seen[i] = true;
        Integer rest;
        mpz_remove(rest.get_mpz_t(), den.get_mpz_t(), Integer(small[i]).get_mpz_t());
        den = rest;
      }
    }
    if (den > 1 && std::find(out.cofactors.begin(), out.cofactors.end(), den) == out.cofactors.end())
      out.cofactors.push_back(den);
  }
  for (std::size_t i = 0; i < small.size(); ++i)
    if (seen[i]) out.primes.push_back(Integer(small[i]));
  return out;
}

InvariantsEstimate invariants_estimate(const SeriesApprox& y, const std::vector<std::uint64_t>& primes, std::size_t order) {
  if (order < 1 || order > y.order()) throw Error(ErrorKind::ParameterError, "order must lie in [1, truncation order]");
  for (auto p : primes)
    if (!is_prime(p)) throw Error(ErrorKind::ParameterError, std::to_string(p) + " is not prime");
  const Coeffs a = truncated(y.coeffs, order);

  auto log_plus = [&](std::uint64_t p, const Rational& c) {
    return p == 0 ? log_plus_arch(c) : log_plus_finite(c, Integer(p));
  };
  auto prefix_value = [&](std::uint64_t p, std::size_t n) {
    double best = 0;
    for (std::size_t m = 0; m <= n; ++m) best = std::max(best, log_plus(p, a[m]));
    return best / static_cast<double>(n);
  };

  InvariantsEstimate out;
  out.order = order;
  std::vector<std::uint64_t> places{0};
  places.insert(places.end(), primes.begin(), primes.end());
  for (auto p : places) {
    PlaceEstimate e;
    e.prime = p;
    e.rho = prefix_value(p, order);
    double window = 0;
    for (std::size_t n = std::max<std::size_t>(1, (order + 1) / 2); n <= order; ++n)
      window = std::max(window, log_plus(p, a[n]) / static_cast<double>(n));
    e.radius = std::exp(-window);
    out.rho_s += e.rho;
    out.places.push_back(e);
  }
  for (auto n : checkpoints(order)) {
    double s = 0;
    for (auto p : places) s += prefix_value(p, n);
    out.sigma_s.emplace_back(n, s);
  }
  const DenominatorSupport support = denominator_support(a);
  out.denominator_primes = support.primes;
  for (auto n : checkpoints(order)) {
    const double cut = std::sqrt(static_cast<double>(n));
    double tail = 0;
    auto add = [&](const Integer& q) {
      double best = 0;
      for (std::size_t m = 0; m <= n; ++m) best = std::max(best, log_plus_finite(a[m], q));
      tail += best / static_cast<double>(n);
    };
    for (const auto& q : support.primes)
      if (q.get_d() > cut) add(q);
    for (const auto& q : support.cofactors) add(q);
    out.tau_tail.emplace_back(n, tail);
  }
  return out;
}

EisensteinReport eisenstein_report(const SeriesApprox& y) {
  EisensteinReport out;
  out.order = y.order();
  const DenominatorSupport support = denominator_support(y.coeffs);
  std::vector<Integer> qs = support.primes;
  qs.insert(qs.end(), support.cofactors.begin(), support.cofactors.end());
  auto exponent = [&](const Integer& q, std::size_t upto) {
    long e = 0;
    for (std::size_t n = 0; n <= upto && n < y.coeffs.size(); ++n) {
      const long v = valuation_at(y.coeffs[n], q);
      if (v >= 0) continue;
      const long w = static_cast<long>(n + 1);
      e = std::max(e, (-v + w - 1) / w);
    }
    return e;
  };
  for (const auto& q : qs) {
    const long e = exponent(q, out.order), h = exponent(q, out.order / 2);
    out.exponents.emplace_back(q, e);
    out.exponents_half.emplace_back(q, h);
    if (e > h) out.violated = true;
    Integer qe;
    mpz_pow_ui(qe.get_mpz_t(), q.get_mpz_t(), static_cast<unsigned long>(e));
    out.a *= qe;
  }
  // a_n A^{n+1} must be integral for every n, and no prime of A can be dropped.
  Integer power = out.a;
  for (const auto& c : y.coeffs) {
    const Rational t = c * Rational(power);
    if (t.get_den() != 1) throw Error(ErrorKind::InternalError, "Eisenstein constant fails its divisibility check");
    power *= out.a;
  }
  for (const auto& [q, e] : out.exponents) {
    if (e == 0) continue;
    bool fails = false;
    for (std::size_t n = 0; n < y.coeffs.size() && !fails; ++n)
      fails = valuation_at(y.coeffs[n], q) + static_cast<long>(n + 1) * (e - 1) < 0;
    if (!fails) throw Error(ErrorKind::InternalError, "Eisenstein constant is not minimal");
  }
  return out;
}

std::string_view hypothesis_status_name(HypothesisStatus s) {
  switch (s) {
    case HypothesisStatus::SatisfiedEmpirically: return "satisfied-empirically";
    case HypothesisStatus::Violated: return "violated";
    case HypothesisStatus::Inconclusive: return "inconclusive";
  }
  return "unknown";
}

BorelDworkReport borel_dwork_report(const SeriesApprox& y, std::optional<double> arch_radius_hint, unsigned jobs) {
  if (y.order() < 1) throw Error(ErrorKind::ParameterError, "series needs at least two coefficients");
  const DenominatorSupport support = denominator_support(y.coeffs);
  std::vector<std::uint64_t> primes;
  for (const auto& q : support.primes) primes.push_back(q.get_ui());
  const InvariantsEstimate inv = invariants_estimate(y, primes, y.order());

  BorelDworkReport out;
  out.arch_from_hint = arch_radius_hint.has_value();
  out.arch_radius = arch_radius_hint ? *arch_radius_hint : inv.places[0].radius;
  out.product = out.arch_radius;
  for (std::size_t i = 1; i < inv.places.size(); ++i) {
    out.finite.push_back(inv.places[i]);
    out.product *= inv.places[i].radius;
  }
  out.tau_tail = inv.tau_tail;
  const auto& t = out.tau_tail;
  const bool tau_growing = t[2].second > 0 && t[2].second > t[1].second + 1e-12 && t[1].second > t[0].second + 1e-12;
  if (tau_growing) {
    out.status = HypothesisStatus::Violated;
    out.verdict = "hypotheses violated (tau != 0 signature)";
  } else if (out.product > 1 + 1e-9) {
    out.status = HypothesisStatus::SatisfiedEmpirically;
    out.verdict = "predicts rational (product of radii > 1, estimate at order " + std::to_string(y.order()) + ")";
  } else {
    out.status = HypothesisStatus::Inconclusive;
    out.verdict = "inconclusive (product of radii <= 1, estimate at order " + std::to_string(y.order()) + ")";
  }
  out.cross_check = detect_sweep(y, 4, 4, jobs);
  return out;
}

SeriesApprox exp_series(std::size_t order) {
  SeriesApprox s;
  Integer fact = 1;
  for (std::size_t n = 0; n <= order; ++n) {
    if (n > 0) fact *= static_cast<unsigned long>(n);
    s.coeffs.emplace_back(Rational(1, 1) / Rational(fact));
  }
  return s;
}

}  // namespace arithlab
