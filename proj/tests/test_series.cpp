#include "doctest.h"
#include "helpers.hpp"

#include <cmath>

#include "arithlab/series.hpp"

using namespace arithlab;
using namespace arithlab::testing;

namespace {

std::vector<Rational> catalan(std::size_t n) {
  std::vector<Rational> c{1};
  for (std::size_t k = 0; k < n; ++k) {
    Rational acc = 0;
    for (std::size_t i = 0; i <= k; ++i) acc += c[i] * c[k - i];
    c.push_back(acc);
  }
  return c;
}

// Binomial series of sqrt(1 + x) from a_{n+1} = a_n (1/2 - n)/(n + 1).
std::vector<Rational> sqrt_one_plus(std::size_t n) {
  std::vector<Rational> a{1};
  for (std::size_t k = 0; k < n; ++k) a.push_back(a.back() * (Rational(1, 2) - static_cast<long>(k)) / static_cast<long>(k + 1));
  return a;
}

bool same_up_to_sign(const AlgRelation& a, const AlgRelation& b) {
  if (a == b) return true;
  AlgRelation neg = b;
  for (auto& row : neg.p)
    for (auto& c : row) c = -c;
  return a.p == neg.p;
}

}  // namespace

TEST_CASE("expand_algebraic_branch") {
  CHECK(expand_algebraic_branch(parse_relation("Y^2 - (1+X)"), 1, 4).coeffs == sqrt_one_plus(4));
  CHECK(sqrt_one_plus(4) == std::vector<Rational>{1, Rational(1, 2), Rational(-1, 8), Rational(1, 16), Rational(-5, 128)});
  CHECK(expand_algebraic_branch(parse_relation("(1-X)*Y - 1"), 1, 3).coeffs == std::vector<Rational>{1, 1, 1, 1});
  CHECK(expand_algebraic_branch(parse_relation("X*Y^2 - Y + 1"), 1, 5).coeffs == catalan(5));
  CHECK(expand_algebraic_branch(parse_relation("X*Y^2 - Y + 1"), 1, 40).coeffs == catalan(40));
  try {
    expand_algebraic_branch(parse_relation("Y^2 - 1 - X"), 2, 4);
    FAIL("expected NotARoot");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotARoot);
  }
  try {
    expand_algebraic_branch(parse_relation("Y^2 - X"), 0, 4);
    FAIL("expected SingularBranch");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularBranch);
  }
}

TEST_CASE("relations render canonically") {
  CHECK(parse_relation("X*Y^2 - Y + 1").render() == "X*Y^2 - Y + 1");
  CHECK(parse_relation("2*(1-X)*Y - 2").render() == "X*Y - Y + 1");
  CHECK(parse_relation("-(4*Y^4 - 4*Y^2 + X)").render() == "4*Y^4 - 4*Y^2 + X");
  CHECK_THROWS_AS(parse_relation("0*Y"), Error);
}

TEST_CASE("hermite_pade_detect") {
  const auto cat = hermite_pade_detect(SeriesApprox{catalan(20)}, 1, 2);
  REQUIRE(cat.has_value());
  CHECK(same_up_to_sign(*cat, parse_relation("X*Y^2 - Y + 1")));
  const auto geo = hermite_pade_detect(SeriesApprox{std::vector<Rational>(9, 1)}, 1, 1);
  REQUIRE(geo.has_value());
  CHECK(same_up_to_sign(*geo, parse_relation("(1-X)*Y - 1")));
  const HermitePadeOutcome e = hermite_pade_search(exp_series(60), 4, 4);
  CHECK_FALSE(e.relation.has_value());
  CHECK(e.system_kernel_dim >= 1);
  CHECK(e.kernel_dim == 0);
  try {
    hermite_pade_detect(SeriesApprox{catalan(10)}, 1, 2);
    FAIL("expected InsufficientPrecision");
  } catch (const Error& err) {
    CHECK(err.kind() == ErrorKind::InsufficientPrecision);
  }
}

TEST_CASE("detect_rational") {
  std::vector<Rational> a{1};
  for (int i = 0; i < 10; ++i) a.push_back(2);
  const auto r = detect_rational(SeriesApprox{a}, 1);
  REQUIRE(r.has_value());
  CHECK(QRatFunc(r->num, r->den) == qrf("(1+z)/(1-z)"));
  CHECK(r->den.coeff(0) == 1);
  std::vector<Rational> fib{0, 1};
  while (fib.size() < 13) fib.push_back(fib[fib.size() - 1] + fib[fib.size() - 2]);
  const auto f = detect_rational(SeriesApprox{fib}, 2);
  REQUIRE(f.has_value());
  CHECK(f->num == qrf("z").num());
  CHECK(f->den == qrf("1 - z - z^2").num());
  for (std::size_t d = 1; d <= 5; ++d) CHECK_FALSE(detect_rational(SeriesApprox{catalan(20)}, d).has_value());
  CHECK_THROWS_AS(detect_rational(SeriesApprox{fib}, 5), Error);
}

TEST_CASE("invariants_estimate") {
  const InvariantsEstimate c = invariants_estimate(SeriesApprox{catalan(400)}, {2, 3, 5}, 400);
  for (std::size_t i = 1; i < c.places.size(); ++i) CHECK(c.places[i].rho == 0);
  CHECK(c.places[0].radius == doctest::Approx(0.25).epsilon(0.1));
  CHECK(c.denominator_primes.empty());

  const InvariantsEstimate e = invariants_estimate(exp_series(500), {2, 3}, 500);
  // Legendre: v_p(500!) / 500.
  auto legendre = [](long n, long p) {
    long v = 0;
    for (long q = p; q <= n; q *= p) v += n / q;
    return v;
  };
  CHECK(e.places[1].rho == doctest::Approx(legendre(500, 2) * std::log(2.0) / 500).epsilon(1e-12));
  CHECK(e.places[2].rho == doctest::Approx(legendre(500, 3) * std::log(3.0) / 500).epsilon(1e-12));
  CHECK(e.places[1].rho == doctest::Approx(std::log(2.0)).epsilon(0.02));
  CHECK(e.places[2].rho == doctest::Approx(0.5 * std::log(3.0)).epsilon(0.02));

  const InvariantsEstimate g = invariants_estimate(SeriesApprox{std::vector<Rational>(51, 1)}, {2, 7}, 50);
  CHECK(g.places[1].rho == 0);
  CHECK(g.places[0].radius == doctest::Approx(1));
  CHECK(g.tau_tail.back().second == 0);
  CHECK_THROWS_AS(invariants_estimate(exp_series(10), {4}, 10), Error);
}

TEST_CASE("eisenstein_report") {
  const EisensteinReport s = eisenstein_report(SeriesApprox{sqrt_one_plus(50)});
  CHECK(s.a == 4);
  CHECK_FALSE(s.violated);
  CHECK(Rational(sqrt_one_plus(4)[4] * 32).get_den() != 1);  // A = 2 fails at n = 4
  CHECK(eisenstein_report(SeriesApprox{catalan(30)}).a == 1);
  const EisensteinReport e = eisenstein_report(exp_series(30));
  CHECK(e.violated);
  CHECK(e.a > 1);
}

TEST_CASE("borel_dwork_report") {
  const BorelDworkReport g = borel_dwork_report(SeriesApprox{std::vector<Rational>(41, 1)}, 10.0);
  CHECK(g.status == HypothesisStatus::SatisfiedEmpirically);
  CHECK(g.verdict.rfind("predicts rational", 0) == 0);
  REQUIRE(g.cross_check.has_value());
  CHECK(same_up_to_sign(g.cross_check->relation, parse_relation("(1-X)*Y - 1")));

  const BorelDworkReport c = borel_dwork_report(SeriesApprox{catalan(60)}, 0.25);
  CHECK(c.status == HypothesisStatus::Inconclusive);
  CHECK(c.product == doctest::Approx(0.25));
  REQUIRE(c.cross_check.has_value());
  CHECK(same_up_to_sign(c.cross_check->relation, parse_relation("X*Y^2 - Y + 1")));

  const BorelDworkReport e = borel_dwork_report(exp_series(80), std::numeric_limits<double>::infinity());
  CHECK(e.status == HypothesisStatus::Violated);
  CHECK_FALSE(e.cross_check.has_value());
}

TEST_CASE("property: round trip through the detector and guard soundness") {
  Rng rng(89);
  int recovered = 0, attempts = 0;
  while (recovered < 15 && attempts < 400) {
    ++attempts;
    const std::size_t d = static_cast<std::size_t>(rng.uniform(1, 2));
    const std::size_t dy = static_cast<std::size_t>(rng.uniform(1, 2));
    std::vector<std::vector<Rational>> p(dy + 1, std::vector<Rational>(d + 1));
    for (auto& row : p)
      for (auto& c : row) c = rng.uniform(-3, 3);
    const long y0 = rng.uniform(-2, 2);
    Rational at0 = 0, pw = 1;
    for (std::size_t i = 0; i <= dy; ++i, pw *= y0) at0 += p[i][0] * pw;
    p[0][0] -= at0;
    AlgRelation rel;
    try {
      rel = make_relation(p);
    } catch (const Error&) {
      continue;
    }
    if (rel.d != d || rel.dy != dy) continue;
    SeriesApprox y;
    try {
      y = expand_algebraic_branch(rel, y0, 2 * (d + 1) * (dy + 1) + 8);
    } catch (const Error&) {
      continue;
    }
    const HermitePadeOutcome o = hermite_pade_search(y, d, dy);
    REQUIRE(o.relation.has_value());
    for (const auto& r : relation_residual(*o.relation, y, y.order())) CHECK(r == 0);
    if (o.kernel_dim != 1) continue;
    CHECK(same_up_to_sign(*o.relation, rel));
    // A relation at (d, D) persists at larger sizes.
    CHECK(hermite_pade_search(expand_algebraic_branch(rel, y0, 2 * (d + 2) * (dy + 2)), d + 1, dy + 1).relation.has_value());
    ++recovered;
  }
  CHECK(recovered == 15);
}

TEST_CASE("property: Eisenstein constant is verified and minimal") {
  Rng rng(97);
  for (int trial = 0; trial < 20; ++trial) {
    QPoly den = rng.nonzero_qpoly(2);
    if (den.coeff(0) == 0) den = den + QPoly::constant(RationalField{}, 1);
    const SeriesApprox y = series_from_ratfunc(QRatFunc(rng.qpoly(2), den), 25);
    const EisensteinReport r = eisenstein_report(y);
    Integer pw = r.a;
    for (const auto& c : y.coeffs) {
      CHECK(Rational(c * Rational(pw)).get_den() == 1);
      pw *= r.a;
    }
    for (const auto& [q, e] : r.exponents) {
      if (e == 0) continue;
      const Integer smaller = r.a / q;
      Integer pw2 = smaller;
      bool fails = false;
      for (const auto& c : y.coeffs) {
        fails = fails || Rational(c * Rational(pw2)).get_den() != 1;
        pw2 *= smaller;
      }
      CHECK(fails);
    }
  }
}

TEST_CASE("property: place-set additivity and integrality of powers") {
  const SeriesApprox e = exp_series(60);
  const auto ab = invariants_estimate(e, {2, 3, 5, 7}, 60);
  const auto a = invariants_estimate(e, {2, 3}, 60), b = invariants_estimate(e, {5, 7}, 60);
  CHECK(ab.rho_s - ab.places[0].rho == doctest::Approx((a.rho_s - a.places[0].rho) + (b.rho_s - b.places[0].rho)).epsilon(1e-12));
  std::vector<Rational> pw{1};
  const auto cat = catalan(40);
  for (int j = 1; j <= 4; ++j) {
    pw = series_mul(pw, cat, 40);
    const auto inv = invariants_estimate(SeriesApprox{pw}, {2, 3, 5, 7, 11}, 40);
    for (std::size_t i = 1; i < inv.places.size(); ++i) CHECK(inv.places[i].rho == 0);
  }
}
