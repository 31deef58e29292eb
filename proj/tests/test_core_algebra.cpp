#include "doctest.h"
#include "helpers.hpp"

using namespace arithlab;
using namespace arithlab::testing;

TEST_CASE("primes and modular helpers") {
  CHECK(primes_up_to(20) == std::vector<std::uint64_t>{2, 3, 5, 7, 11, 13, 17, 19});
  CHECK(is_prime(1000000007ULL));
  CHECK_FALSE(is_prime(1ULL << 32));
  CHECK(is_prime(18446744073709551557ULL));
  CHECK(inv_mod(2, 5) == 3);
  CHECK_THROWS_AS(PrimeField(9), Error);
  CHECK(valuation(Q("-5/128"), 2) == -7);
}

TEST_CASE("polynomial rendering uses the canonical grammar") {
  CHECK(qrf("3*z^2 - 1/2").render() == "3*z^2 - 1/2");
  CHECK(qrf("-z + 1").render() == "-z + 1");
  CHECK(qrf("0").render() == "0");
  CHECK(qrf("1/z").render() == "1/z");
  CHECK(qrf("(z+1)/(z^2-2)").render() == "(z + 1)/(z^2 - 2)");
}

TEST_CASE("rf_derivative") {
  CHECK(qrf("1/z").derivative() == qrf("-1/z^2"));
  CHECK(qrf("z^2 + 1").derivative() == qrf("2*z"));
  CHECK(fprf("z^5", 5).derivative().is_zero());
}

TEST_CASE("rf_reduce_mod_p") {
  CHECK(rf_reduce_mod_p(qrf("(z^2-1)/(z-1)"), PrimeField(7)) == fprf("z+1", 7));
  const PrimeField F5(5);
  CHECK(rf_reduce_mod_p(qrf("1/2*z"), F5) == FpRatFunc(FpPoly(F5, {0, 3})));
  CHECK_THROWS_AS(rf_reduce_mod_p(qrf("1/2*z"), PrimeField(2)), BadReductionError);
  // Integer content is cleared before reducing: 1/(2z+1) is fine at 2.
  CHECK(rf_reduce_mod_p(qrf("1/(2*z+1)"), PrimeField(2)) == FpRatFunc::constant(PrimeField(2), 1));
  CHECK(rf_reduce_mod_p(qrf("5*z/(z+1)"), F5).is_zero());
}

TEST_CASE("mat_mul and mat_inverse") {
  const auto a = qmat("[[z, 1/z],[2, z^2]]");
  CHECK(rf_identity(RationalField{}, 2) * a == a);
  CHECK(mat_inverse(qmat("[[1, z],[0, 1]]")) == qmat("[[1, -z],[0, 1]]"));
  try {
    mat_inverse(qmat("[[z, 0],[0, 0]]"));
    FAIL("expected SingularMatrix");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularMatrix);
  }
  CHECK(a * mat_inverse(a) == rf_identity(RationalField{}, 2));
}

TEST_CASE("series_expand_at_zero") {
  CHECK(series_expand_at_zero(qrf("1/(1-z)"), 4) == std::vector<Rational>{1, 1, 1, 1, 1});
  try {
    series_expand_at_zero(qrf("1/z"), 2);
    FAIL("expected PoleAtOrigin");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::PoleAtOrigin);
  }
  // Oracle: (1+z) times the geometric series, by convolution.
  std::vector<Rational> oracle(4, 0);
  for (std::size_t n = 0; n < 4; ++n)
    for (std::size_t k = 0; k <= std::min<std::size_t>(n, 1); ++k) oracle[n] += 1;
  CHECK(series_expand_at_zero(qrf("(1+z)/(1-z)"), 3) == oracle);
  CHECK(oracle == std::vector<Rational>{1, 2, 2, 2});
}

TEST_CASE("property: normalization, field axioms, derivation law over Q") {
  Rng rng(17);
  for (int trial = 0; trial < 60; ++trial) {
    const QRatFunc f = rng.qratfunc(), g = rng.qratfunc(), h = rng.qratfunc();
    CHECK(QRatFunc(f.num(), f.den()) == f);
    CHECK((f + g) * h == f * h + g * h);
    if (!f.is_zero()) CHECK(f * f.inverse() == QRatFunc::constant(RationalField{}, 1));
    CHECK((f * g).derivative() == f.derivative() * g + f * g.derivative());
    CHECK(f.den().is_monic());
  }
}

TEST_CASE("property: derivation law and axioms over F_p") {
  Rng rng(23);
  for (std::uint64_t p : {2ULL, 3ULL, 5ULL, 13ULL}) {
    const PrimeField F(p);
    for (int trial = 0; trial < 40; ++trial) {
      const FpRatFunc f = rng.fpratfunc(F, 4, 3), g = rng.fpratfunc(F, 4, 3), h = rng.fpratfunc(F, 3, 3);
      CHECK((f * g).derivative() == f.derivative() * g + f * g.derivative());
      CHECK((f + g) * h == f * h + g * h);
      CHECK(FpRatFunc(f.num(), f.den()) == f);
    }
  }
}

TEST_CASE("property: reduction mod p is a ring morphism where defined") {
  Rng rng(29);
  int checked = 0;
  for (int trial = 0; trial < 80; ++trial) {
    const QRatFunc f = rng.qratfunc(), g = rng.qratfunc();
    for (std::uint64_t p : {3ULL, 5ULL, 7ULL}) {
      const PrimeField F(p);
      try {
        auto rf = rf_reduce_mod_p(f, F), rg = rf_reduce_mod_p(g, F), rfg = rf_reduce_mod_p(f * g, F);
        CHECK(rfg == rf * rg);
        ++checked;
      } catch (const BadReductionError&) {
      }
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("property: series times denominator recovers numerator") {
  Rng rng(31);
  for (int trial = 0; trial < 40; ++trial) {
    QPoly den = rng.nonzero_qpoly(3);
    if (den.coeff(0) == 0) den = den + QPoly::constant(RationalField{}, 1);
    const QRatFunc f(rng.qpoly(4), den);
    const std::size_t order = 10;
    const auto a = series_expand_at_zero(f, order);
    for (std::size_t n = 0; n <= order; ++n) {
      Rational acc = 0;
      for (std::size_t k = 0; k <= n; ++k) acc += f.den().coeff(k) * a[n - k];
      CHECK(acc == f.num().coeff(n));
    }
  }
}
