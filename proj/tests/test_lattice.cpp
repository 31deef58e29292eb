#include "doctest.h"
#include "helpers.hpp"

#include <cmath>
#include <numbers>

#include "arithlab/lattice.hpp"

using namespace arithlab;
using namespace arithlab::testing;

namespace {

QMatrix qm(std::initializer_list<std::initializer_list<long>> rows) {
  QMatrix m;
  for (const auto& r : rows) {
    QVec v;
    for (long x : r) v.emplace_back(x);
    m.push_back(std::move(v));
  }
  return m;
}

ZMatrix zm(std::initializer_list<std::initializer_list<long>> rows) { return to_integer(qm(rows)); }

const double log3 = std::log(3.0);

// Random positive-definite integer Gram B B^T from a random nonsingular B.
QMatrix random_gram(Rng& rng, std::size_t d, long bound) {
  while (true) {
    QMatrix b(d, QVec(d));
    for (auto& row : b)
      for (auto& x : row) x = rng.uniform(-bound, bound);
    if (sgn(determinant(b)) == 0) continue;
    QMatrix id(d, QVec(d, 0));
    for (std::size_t i = 0; i < d; ++i) id[i][i] = 1;
    return congruence(b, id);
  }
}

}  // namespace

TEST_CASE("arithmetic degree and slope") {
  CHECK(arithmetic_degree(EuclideanLattice::standard(4)).det == 1);
  CHECK(arithmetic_degree(EuclideanLattice::standard(4)).logvalue == 0);
  const EuclideanLattice a2(qm({{2, -1}, {-1, 2}}));
  CHECK(a2.det() == 3);
  CHECK(arithmetic_degree(a2).logvalue == doctest::Approx(-0.5 * log3).epsilon(1e-12));
  CHECK(slope(a2) == doctest::Approx(-0.25 * log3).epsilon(1e-12));
  const EuclideanLattice two_z = EuclideanLattice::from_embedding(qm({{2}}));
  CHECK(two_z.det() == 4);
  CHECK(slope(two_z) == doctest::Approx(-std::log(2.0)).epsilon(1e-12));
  CHECK(slope(EuclideanLattice(qm({{4}}))) == doctest::Approx(-std::log(2.0)));
  CHECK_THROWS_AS(EuclideanLattice(qm({{1, 2}, {2, 1}})), Error);
  try {
    EuclideanLattice(qm({{1, 0}, {0, 0}}));
    FAIL("expected NotPositiveDefinite");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotPositiveDefinite);
  }
}

TEST_CASE("dual and quotient lattices") {
  CHECK(dual_lattice(EuclideanLattice(qm({{4}}))).gram() == QMatrix{{Rational(1, 4)}});
  const EuclideanLattice q = quotient_lattice(EuclideanLattice::standard(2), zm({{1, 1}}));
  CHECK(q.gram() == QMatrix{{Rational(1, 2)}});
  try {
    quotient_lattice(EuclideanLattice::standard(2), zm({{2, 2}}));
    FAIL("expected NotSaturated");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotSaturated);
  }
  try {
    quotient_lattice(EuclideanLattice::standard(2), zm({{1, 0}, {0, 1}}));
    FAIL("expected DegenerateQuotient");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DegenerateQuotient);
  }
  CHECK(saturate(zm({{2, 4, 6}}), 3) == zm({{1, 2, 3}}));
}

TEST_CASE("hom_height") {
  using L = EuclideanLattice;
  CHECK(hom_height(LatticeHom(L::standard(1), L::standard(1), qm({{3}}))).value == doctest::Approx(std::log(3.0)).epsilon(1e-10));
  const HomHeight h = hom_height(LatticeHom(L::standard(3), L::standard(1), qm({{1, 1, 1}})));
  CHECK(h.value == doctest::Approx(0.5 * log3).epsilon(1e-10));
  CHECK(h.lambda_lo <= 3);
  CHECK(h.lambda_hi > 3);
  CHECK(hom_height(LatticeHom(L::standard(2), L::standard(2), qm({{1, 0}, {0, 2}}))).value ==
        doctest::Approx(std::log(2.0)).epsilon(1e-10));
  try {
    hom_height(LatticeHom(L::standard(2), L::standard(1), qm({{0, 0}})));
    FAIL("expected ZeroMap");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::ZeroMap);
  }
}

TEST_CASE("mu_max bounds") {
  const MuMaxBounds z3 = mu_max_bounds(EuclideanLattice::standard(3));
  CHECK(z3.lower == doctest::Approx(0));
  REQUIRE(z3.upper.has_value());
  CHECK(*z3.upper == 0);
  const MuMaxBounds a2 = mu_max_bounds(EuclideanLattice(qm({{2, -1}, {-1, 2}})));
  CHECK(a2.lower >= -0.5 * std::log(2.0) - 1e-12);
  CHECK(*a2.upper == 0);
  const MuMaxBounds quarter = mu_max_bounds(EuclideanLattice(QMatrix{{Rational(1, 4)}}));
  CHECK_FALSE(quarter.upper.has_value());
  CHECK(quarter.lower == doctest::Approx(std::log(2.0)));
  // A sublattice steeper than the whole: Z(1/4) + Z(4).
  const MuMaxBounds mixed = mu_max_bounds(EuclideanLattice(QMatrix{{Rational(1, 4), 0}, {0, 4}}));
  CHECK(mixed.lower == doctest::Approx(std::log(2.0)));
  CHECK(mixed.witness.size() == 1);
}

TEST_CASE("slope inequality audit") {
  using L = EuclideanLattice;
  const SlopeAudit a = slope_inequality_audit(LatticeHom(L::standard(1), L::standard(1), qm({{3}})));
  CHECK(a.holds);
  CHECK(a.rhs == doctest::Approx(std::log(3.0)));
  const SlopeAudit b = slope_inequality_audit(LatticeHom(L(qm({{2}})), L::standard(1), qm({{1}})));
  CHECK(b.lhs == doctest::Approx(-0.5 * std::log(2.0)));
  CHECK(b.rhs == doctest::Approx(-0.5 * std::log(2.0)));
  CHECK(b.holds);
  CHECK_THROWS_AS(slope_inequality_audit(LatticeHom(L::standard(2), L::standard(1), qm({{1, 1}}))), Error);
  try {
    slope_inequality_audit(LatticeHom(L::standard(1), L(QMatrix{{Rational(1, 2)}}), qm({{1}})));
    FAIL("expected NoUpperBound");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NoUpperBound);
  }
}

TEST_CASE("kernel_lattice") {
  const KernelLattice k = kernel_lattice(zm({{1, 1, 1}}), 3);
  CHECK(k.lattice.gram() == qm({{2, -1}, {-1, 2}}));
  const KernelLattice e3 = kernel_lattice(zm({{1, 0, 0}, {0, 1, 0}}), 3);
  CHECK(e3.basis == zm({{0, 0, 1}}));
  CHECK(e3.lattice.gram() == qm({{1}}));
  const KernelLattice two = kernel_lattice(zm({{2, 4}}), 2);
  CHECK(two.basis == zm({{2, -1}}));
  CHECK(two.lattice.gram() == qm({{5}}));
  try {
    kernel_lattice(zm({{1, 0}, {0, 1}}), 2);
    FAIL("expected FullRank");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::FullRank);
  }
}

TEST_CASE("kernel slope bound audit") {
  const KernelSlopeAudit a = kernel_slope_bound_audit(zm({{1, 1, 1}}), 3);
  CHECK(a.mu == doctest::Approx(-0.25 * log3).epsilon(1e-12));
  CHECK(a.bound == doctest::Approx(-0.25 * log3).epsilon(1e-10));
  CHECK(std::fabs(a.mu - a.bound) < 1e-9);
  CHECK(a.holds);
  const KernelSlopeAudit b = kernel_slope_bound_audit(zm({{1, 0, 0}, {0, 1, 0}}), 3);
  CHECK(b.mu == 0);
  CHECK(b.holds);
  const KernelSlopeAudit z = kernel_slope_bound_audit(zm({{0, 0, 0}}), 3);
  CHECK(z.bound == 0);
  CHECK_FALSE(z.a_priori.has_value());
}

TEST_CASE("Minkowski short vectors") {
  const ShortVector z2 = minkowski_short_vector(EuclideanLattice::standard(2));
  CHECK(z2.norm2 == 1);
  CHECK(z2.threshold2 == doctest::Approx(4 / std::numbers::pi).epsilon(1e-8));
  const ShortVector a2 = minkowski_short_vector(EuclideanLattice(qm({{2, -1}, {-1, 2}})));
  CHECK(a2.norm2 == 2);
  CHECK(a2.threshold2 == doctest::Approx(4 * std::sqrt(3.0) / std::numbers::pi).epsilon(1e-8));
  const ShortVector n7 = minkowski_short_vector(EuclideanLattice(qm({{49}})));
  CHECK(n7.coords == ZVec{1});
  CHECK(n7.norm2 == 49);
  CHECK(ball_volume(1) == doctest::Approx(2).epsilon(1e-12));
  CHECK(ball_volume(2) == doctest::Approx(std::numbers::pi).epsilon(1e-12));
  CHECK(ball_constant_alt(2) == doctest::Approx(std::numbers::pi).epsilon(1e-12));
  CHECK(ball_constant_alt(4) == doctest::Approx(std::numbers::pi * std::numbers::pi).epsilon(1e-12));
}

TEST_CASE("siegel_solve") {
  const SiegelResult a = siegel_solve(zm({{1, 1, 1}}), 3);
  CHECK(a.x == ZVec{1, -1, 0});
  CHECK(a.sup_norm == 1);
  CHECK(a.classical_bound == doctest::Approx(std::sqrt(3.0)));
  CHECK(a.within_classical);
  const SiegelResult b = siegel_solve(zm({{1, 2, 3}}), 3);
  CHECK(b.sup_norm <= 3);
  CHECK(b.within_classical);
  CHECK(b.classical_bound == doctest::Approx(3));
  const SiegelResult z = siegel_solve(zm({{0, 0, 0}}), 3);
  CHECK(z.x == ZVec{1, 0, 0});
}

TEST_CASE("filtered slope audit") {
  using L = EuclideanLattice;
  const FilteredAudit t = filtered_slope_audit(L::standard(1), {FilteredLevel{qm({{1}}), L::standard(1), std::nullopt}});
  CHECK(t.lhs == 0);
  CHECK(t.rhs == doctest::Approx(0));
  CHECK(t.holds);
  try {
    filtered_slope_audit(L::standard(2), {FilteredLevel{qm({{1, 1}}), L::standard(1), std::nullopt}});
    FAIL("expected NotInjective");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotInjective);
  }
  try {
    filtered_slope_audit(L::standard(2), {FilteredLevel{qm({{1, 1}}), L::standard(1), std::nullopt}}, qm({{1, 0}, {0, 1}}));
    FAIL("expected NotSeparated");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::NotSeparated);
  }
}

TEST_CASE("property: degree additivity and duality") {
  Rng rng(53);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform(2, 5));
    const EuclideanLattice l(random_gram(rng, d, 4));
    CHECK(dual_lattice(l).det() * l.det() == 1);
    const std::size_t k = static_cast<std::size_t>(rng.uniform(1, static_cast<long>(d) - 1));
    ZMatrix gens(k, ZVec(d));
    for (auto& row : gens)
      for (auto& x : row) x = rng.uniform(-3, 3);
    const ZMatrix s = saturate(gens, d);
    if (s.empty() || s.size() == d) continue;
    const EuclideanLattice sub = sublattice(l, s);
    const EuclideanLattice quo = quotient_lattice(l, s);
    CHECK(sub.det() * quo.det() == l.det());
    CHECK(sub.rank() + quo.rank() == d);
  }
}

TEST_CASE("property: Hadamard bound on generating families") {
  Rng rng(59);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform(1, 5));
    const EuclideanLattice l(random_gram(rng, d, 3));
    ZMatrix family(d, ZVec(d));
    for (auto& row : family)
      for (auto& x : row) x = rng.uniform(-3, 3);
    const QMatrix g = congruence(to_rational(family), l.gram());
    Rational prod = 1;
    for (std::size_t i = 0; i < d; ++i) prod *= g[i][i];
    CHECK(determinant(g) <= prod);
  }
}

TEST_CASE("property: scaling the Gram by c^2 shifts mu_max bounds by -log c") {
  Rng rng(61);
  for (int trial = 0; trial < 20; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform(1, 4));
    const EuclideanLattice l(random_gram(rng, d, 3));
    const long c = rng.uniform(2, 5);
    const MuMaxBounds a = mu_max_bounds(l), b = mu_max_bounds(l.scaled(Rational(c * c)));
    CHECK(b.lower == doctest::Approx(a.lower - std::log(static_cast<double>(c))).epsilon(1e-12));
    // Both Grams are integral, so both uppers are the exact bound 0.
    CHECK(*a.upper == 0);
    CHECK(*b.upper == 0);
    const MuMaxBounds up = mu_max_bounds(l.scaled(Rational(1, c * c)));
    CHECK(up.lower == doctest::Approx(a.lower + std::log(static_cast<double>(c))).epsilon(1e-12));
  }
}

TEST_CASE("property: Minkowski vector stays under the threshold") {
  Rng rng(67);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform(1, 6));
    const EuclideanLattice l(random_gram(rng, d, 4));
    const ShortVector v = minkowski_short_vector(l);
    CHECK(v.norm2.get_d() <= v.threshold2);
    CHECK(v.norm2 == quadratic_form(l.gram(), v.coords));
    // Exhaustive oracle over a small box in rank <= 2.
    if (d <= 2) {
      Rational best = -1;
      for (long x = -6; x <= 6; ++x)
        for (long y = (d == 2 ? -6 : 0); y <= (d == 2 ? 6 : 0); ++y) {
          if (x == 0 && y == 0) continue;
          ZVec z{x};
          if (d == 2) z.push_back(y);
          const Rational n = quadratic_form(l.gram(), z);
          if (best < 0 || n < best) best = n;
        }
      CHECK(v.norm2 <= best);
    }
  }
}

TEST_CASE("property: LLL preserves the lattice and is size reduced") {
  Rng rng(71);
  for (int trial = 0; trial < 30; ++trial) {
    const std::size_t d = static_cast<std::size_t>(rng.uniform(2, 6));
    const QMatrix g = random_gram(rng, d, 6);
    const LllResult r = lll_reduce(g);
    CHECK(abs(determinant(to_rational(r.transform))) == 1);
    CHECK(r.gram == congruence(to_rational(r.transform), g));
    CHECK(r.gram[0][0] <= g[0][0] * (1 << d));
  }
}

TEST_CASE("property: Siegel solutions lie in the kernel and within the classical bound") {
  Rng rng(73);
  for (int trial = 0; trial < 40; ++trial) {
    ZMatrix phi(1, ZVec(3));
    for (auto& x : phi[0]) x = rng.uniform(-5, 5);
    const long a = std::max<long>(1, std::max({Integer(abs(phi[0][0])), Integer(abs(phi[0][1])), Integer(abs(phi[0][2]))}).get_si());
    const SiegelResult s = siegel_solve(phi, 3);
    Integer acc = 0;
    for (std::size_t j = 0; j < 3; ++j) acc += phi[0][j] * s.x[j];
    CHECK(acc == 0);
    if (s.within_classical) {
      // Box oracle: some kernel vector within the classical bound exists.
      const long box = static_cast<long>(std::floor(std::sqrt(3.0 * a)));
      bool found = false;
      for (long x = -box; x <= box && !found; ++x)
        for (long y = -box; y <= box && !found; ++y)
          for (long z = -box; z <= box && !found; ++z)
            if ((x || y || z) && phi[0][0] * x + phi[0][1] * y + phi[0][2] * z == 0) found = true;
      CHECK(found);
    }
  }
  for (int trial = 0; trial < 30; ++trial) {
    ZMatrix phi(2, ZVec(5));
    for (auto& row : phi)
      for (auto& x : row) x = rng.uniform(-9, 9);
    const KernelSlopeAudit k = kernel_slope_bound_audit(phi, 5);
    CHECK(k.holds);
    CHECK(k.mu >= k.bound - 1e-9);
  }
}

TEST_CASE("property: slope inequality for random injective maps") {
  Rng rng(79);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t s = static_cast<std::size_t>(rng.uniform(1, 3));
    const std::size_t t = s + static_cast<std::size_t>(rng.uniform(0, 2));
    QMatrix m(t, QVec(s));
    for (auto& row : m)
      for (auto& x : row) x = rng.uniform(-5, 5);
    if (rank(m, s) < s) continue;
    const SlopeAudit a = slope_inequality_audit(LatticeHom(EuclideanLattice(random_gram(rng, s, 3)), EuclideanLattice::standard(t), m));
    CHECK(a.holds);
  }
}

TEST_CASE("property: filtered audit on random block-triangular instances") {
  Rng rng(83);
  int audited = 0;
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t s = static_cast<std::size_t>(rng.uniform(1, 4));
    const std::size_t nlev = static_cast<std::size_t>(rng.uniform(1, 3));
    std::vector<FilteredLevel> levels;
    for (std::size_t k = 0; k < nlev; ++k) {
      const std::size_t gr = static_cast<std::size_t>(rng.uniform(1, 2));
      QMatrix block(gr, QVec(s));
      for (auto& row : block)
        for (auto& x : row) x = rng.uniform(-3, 3);
      levels.push_back(FilteredLevel{block, EuclideanLattice(random_gram(rng, gr, 2)), std::nullopt});
    }
    try {
      const FilteredAudit a = filtered_slope_audit(EuclideanLattice(random_gram(rng, s, 3)), levels);
      CHECK(a.holds);
      std::size_t total = 0;
      for (const auto& lv : a.levels) total += lv.rank;
      CHECK(total == s);
      ++audited;
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::NotInjective);
    }
  }
  CHECK(audited > 10);
}
