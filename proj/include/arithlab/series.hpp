#pragma once

// Truncated power series over Q: algebraic branches, Hermite-Pade detection,
// Eisenstein denominators and the place-wise size estimates.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arithlab/expr.hpp"
#include "arithlab/poly.hpp"

namespace arithlab {

/// a_0..a_N.
struct SeriesApprox {
  std::vector<Rational> coeffs;
  std::size_t order() const { return coeffs.empty() ? 0 : coeffs.size() - 1; }
};

SeriesApprox series_from_ratfunc(const QRatFunc& f, std::size_t order);
/// Truncated product and power, keeping terms through x^order.
std::vector<Rational> series_mul(const std::vector<Rational>& a, const std::vector<Rational>& b, std::size_t order);
std::vector<Rational> series_inverse(const std::vector<Rational>& a, std::size_t order);

/// P(X, Y) = sum_i P_i(X) Y^i with integer coefficients, content 1, and the
/// leading X-coefficient of the top nonzero P_i positive.
struct AlgRelation {
  std::vector<std::vector<Integer>> p;  // p[i][j] = coefficient of X^j Y^i
  std::size_t d = 0;                    // bound on deg_X
  std::size_t dy = 0;                   // bound on deg_Y

  std::string render() const;
  friend bool operator==(const AlgRelation& a, const AlgRelation& b) { return a.p == b.p; }
};

/// Makes an integer relation primitive with the sign convention above.
AlgRelation make_relation(std::vector<std::vector<Rational>> p);
AlgRelation relation_from_bivariate(const BivariatePoly& b);
AlgRelation parse_relation(std::string_view text);

/// Coefficients of P(x, y(x)) through x^order.
std::vector<Rational> relation_residual(const AlgRelation& rel, const SeriesApprox& y, std::size_t order);

/// The branch through (0, y0) by Newton iteration with order doubling.
SeriesApprox expand_algebraic_branch(const AlgRelation& rel, const Rational& y0, std::size_t order);

struct HermitePadeOutcome {
  std::optional<AlgRelation> relation;
  std::size_t unknowns = 0;
  std::size_t system_rows = 0;        // (d+1)(D+1) - 1
  std::size_t system_kernel_dim = 0;  // before the guard
  std::size_t kernel_dim = 0;         // after imposing the guard rows
};

/// Searches for P with deg_X <= d, deg_Y <= dy and P(x, y) = 0 through x^N.
/// Throws InsufficientPrecision when N < 2 (d+1)(dy+1).
HermitePadeOutcome hermite_pade_search(const SeriesApprox& y, std::size_t d, std::size_t dy);
std::optional<AlgRelation> hermite_pade_detect(const SeriesApprox& y, std::size_t d, std::size_t dy);

struct RationalDetection {
  QPoly num;
  QPoly den;  // den(0) = 1
};
/// y = num/den with degrees <= d. Throws InsufficientPrecision when N < 2(d+1)+2.
std::optional<RationalDetection> detect_rational(const SeriesApprox& y, std::size_t d);

/// First success sweeping dy = 1..max_dy, then d = 1..max_d; sizes whose
/// precondition fails are skipped.
struct SweepResult {
  std::size_t d = 0, dy = 0;
  AlgRelation relation;
};
std::optional<SweepResult> detect_sweep(const SeriesApprox& y, std::size_t max_d, std::size_t max_dy, unsigned jobs = 1);

/// Primes dividing some denominator; trial division up to a fixed bound, with any
/// leftover cofactor listed as a single uncertified entry.
struct DenominatorSupport {
  std::vector<Integer> primes;
  std::vector<Integer> cofactors;
};
DenominatorSupport denominator_support(const std::vector<Rational>& coeffs);

struct PlaceEstimate {
  std::uint64_t prime = 0;  // 0 is the archimedean place
  double rho = 0;           // (1/N) max_{m<=N} log+ |a_m|_v
  double radius = 0;        // exp(-max_{N/2<=n<=N} (1/n) log+ |a_n|_v)
};

struct InvariantsEstimate {
  std::size_t order = 0;
  std::vector<PlaceEstimate> places;  // archimedean first, then the primes given
  double rho_s = 0;
  std::vector<std::pair<std::size_t, double>> sigma_s;  // at N/4, N/2, N
  std::vector<std::pair<std::size_t, double>> tau_tail;  // outside primes <= sqrt(n), at N/4, N/2, N
  std::vector<Integer> denominator_primes;
};
InvariantsEstimate invariants_estimate(const SeriesApprox& y, const std::vector<std::uint64_t>& primes, std::size_t order);

struct EisensteinReport {
  std::size_t order = 0;
  Integer a = 1;
  std::vector<std::pair<Integer, long>> exponents;       // e_q at order N
  std::vector<std::pair<Integer, long>> exponents_half;  // e_q at order N/2
  bool violated = false;                                 // some e_q grew between N/2 and N
};
EisensteinReport eisenstein_report(const SeriesApprox& y);

enum class HypothesisStatus { SatisfiedEmpirically, Violated, Inconclusive };
std::string_view hypothesis_status_name(HypothesisStatus s);

struct BorelDworkReport {
  double arch_radius = 0;
  bool arch_from_hint = false;
  std::vector<PlaceEstimate> finite;  // primes in the denominator support
  double product = 0;
  std::vector<std::pair<std::size_t, double>> tau_tail;
  HypothesisStatus status = HypothesisStatus::Inconclusive;
  std::string verdict;
  std::optional<SweepResult> cross_check;
};
BorelDworkReport borel_dwork_report(const SeriesApprox& y, std::optional<double> arch_radius_hint, unsigned jobs = 1);

/// Taylor coefficients 1/n!.
SeriesApprox exp_series(std::size_t order);

}  // namespace arithlab
