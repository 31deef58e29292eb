#include "doctest.h"
#include "helpers.hpp"

#include "arithlab/diffforms.hpp"

using namespace arithlab;
using namespace arithlab::testing;

namespace {
RationalForm form(const std::string& text) { return RationalForm{qrf(text)}; }
}  // namespace

TEST_CASE("cartier_operator examples") {
  CHECK(cartier_operator(form("1/z"), 5) == fprf("1/z", 5));
  CHECK(cartier_operator(form("z^2"), 5).is_zero());
  CHECK(cartier_operator(form("z^4"), 5) == fprf("1", 5));
  for (std::uint64_t p : {3ULL, 5ULL, 7ULL, 11ULL, 13ULL}) CHECK(cartier_operator(form("1/z"), p) == fprf("1/z", p));
  CHECK_THROWS_AS(cartier_operator(form("z/3"), 3), BadReductionError);
}

TEST_CASE("classify_form examples") {
  CHECK(classify_form(form("1/2/z"), 5).status == FormStatus::LogExactModP);
  const FormClass neither = classify_form(form("z^4"), 5);
  CHECK(neither.status == FormStatus::Neither);
  CHECK(neither.cartier == fprf("1", 5));
  const FormClass exact = classify_form(form("2*z"), 7);
  CHECK(exact.status == FormStatus::ExactModP);
  REQUIRE(exact.witness.has_value());
  CHECK(*exact.witness == fprf("z^2", 7));
  const FormClass zero = classify_form(form("3/z"), 3);
  CHECK(zero.status == FormStatus::ExactModP);
  CHECK(zero.degenerate);
}

TEST_CASE("brute_force_antiderivative examples") {
  CHECK(*brute_force_antiderivative(fprf("2*z", 7), 0, 3) == fprf("z^2", 7));
  CHECK(*brute_force_antiderivative(fprf("1/z^2", 5), 1, 3) == fprf("4/z", 5));
  CHECK_FALSE(brute_force_antiderivative(fprf("1/z", 5), 3, 12).has_value());
  CHECK(brute_force_antiderivative(fprf("0", 5), 0, 0)->is_zero());
}

TEST_CASE("scan_form examples") {
  const ScanReport a = scan_form(form("3/4/z"), 50);
  CHECK(a.verdict == "candidate log-exact (up to integer multiple)");
  CHECK(a.excluded == std::vector<std::uint64_t>{2});
  for (const auto& e : a.entries) {
    if (e.p == 3) {
      CHECK(e.degenerate);
    } else {
      CHECK_MESSAGE(e.status == "log-exact-mod-p", "p = " << e.p);
    }
  }

  const ScanReport b = scan_form(form("1/(z^2-1)"), 30);
  CHECK(b.verdict == "candidate log-exact (up to integer multiple)");
  CHECK(b.counts.at("log-exact-mod-p") == b.entries.size());

  const ScanReport c = scan_form(form("1/(z*(z-1)^2)"), 20);
  CHECK(c.counts.at("neither") == c.entries.size());
  CHECK(c.verdict.rfind("neither (obstruction at p = 3, 5", 0) == 0);

  const ScanReport d = scan_form(form("3*z^2 + 1/(z+1)^2"), 40);
  CHECK(d.verdict == "candidate exact");

  const ScanReport bad = scan_form(form("z/5 + 1"), 10);
  CHECK(bad.counts.at("bad-reduction") == 1);
  CHECK(scan_form(form("1/z"), 30, {true, 4}).entries.front().p == 2);
}

TEST_CASE("log witness search") {
  const auto w = find_log_witness(form("1/(z^2-1)"));
  REQUIRE(w.has_value());
  CHECK(w->n == 2);
  CHECK(w->h == qrf("(z-1)/(z+1)"));
  const auto t = find_log_witness(form("3/4/z"));
  REQUIRE(t.has_value());
  CHECK(t->n == 4);
  CHECK(t->h == qrf("z^3"));
  CHECK_FALSE(find_log_witness(form("1/(z^2+1)")).has_value());
  CHECK_FALSE(find_log_witness(form("1/13/z")).has_value());
  CHECK_FALSE(find_log_witness(form("1/(z*(z-1)^2)")).has_value());
}

TEST_CASE("max_multiplicity sees p-th power factors") {
  CHECK(max_multiplicity(fprf("z^3*(z+1)^2", 3).num()) == 3);
  CHECK(max_multiplicity(fprf("z^7*(z+1)", 7).num()) == 7);
  CHECK(max_multiplicity(fprf("(z^2+2)^6*(z+1)", 5).num()) == 6);
  CHECK(max_multiplicity(fprf("z+4", 5).num()) == 1);
}

TEST_CASE("property: Cartier classification agrees with the antiderivative oracle") {
  Rng rng(41);
  int exact = 0, total = 0;
  for (std::uint64_t p : {3ULL, 5ULL, 7ULL, 11ULL}) {
    const PrimeField F(p);
    for (int trial = 0; trial < 60; ++trial) {
      FpRatFunc f = rng.fpratfunc(F, 6, 3);
      // Half the samples are derivatives, so both answers occur often.
      if (rng.coin()) f = rng.fpratfunc(F, 4, 2).derivative();
      const long dn = std::max(f.num().degree(), 0L), dq = f.den().degree();
      const auto g = brute_force_antiderivative(f, 2, static_cast<unsigned>(dn + 2 * dq + 2));
      const FormClass c = classify_form(f);
      CHECK_MESSAGE((c.status == FormStatus::ExactModP) == g.has_value(), f.render() << " at p = " << p);
      if (c.witness) CHECK(c.witness->derivative() == f);
      exact += c.status == FormStatus::ExactModP;
      ++total;
    }
  }
  CHECK(exact > total / 4);
  CHECK(exact < total);
}

TEST_CASE("property: additivity, semilinearity and C(dg) = 0") {
  Rng rng(43);
  for (std::uint64_t p : {3ULL, 5ULL, 7ULL}) {
    const PrimeField F(p);
    for (int trial = 0; trial < 30; ++trial) {
      const FpRatFunc a = rng.fpratfunc(F, 4, 3), b = rng.fpratfunc(F, 4, 3), u = rng.fpratfunc(F, 2, 2);
      CHECK(cartier_operator(a + b) == cartier_operator(a) + cartier_operator(b));
      CHECK(cartier_operator(u.pow(p) * a) == u * cartier_operator(a));
      CHECK(cartier_operator(a.derivative()).is_zero());
    }
  }
}

TEST_CASE("property: rational multiples of dz/z are log-exact at primes not dividing the denominator") {
  Rng rng(47);
  for (int trial = 0; trial < 40; ++trial) {
    const Rational alpha = rng.small_rational(20);
    if (alpha == 0) continue;
    for (std::uint64_t p : primes_up_to(40)) {
      if (valuation(Integer(alpha.get_den()), p) > 0) continue;
      const FormClass c = classify_form(RationalForm{QRatFunc(QPoly::constant(RationalField{}, alpha), QPoly::variable(RationalField{}))}, p);
      if (valuation(Integer(alpha.get_num()), p) > 0) {
        CHECK(c.degenerate);
      } else {
        CHECK(c.status == FormStatus::LogExactModP);
      }
    }
  }
}
