#pragma once

// Prime scans: full splitting of integer polynomials, the torus line test,
// elliptic curve point counts and their Hasse invariants.

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "arithlab/poly.hpp"
#include "arithlab/scan_report.hpp"

namespace arithlab {

/// A primitive squarefree integer polynomial of degree >= 1.
struct NumberSpec {
  std::vector<Integer> f;  // lowest degree first
  Integer discriminant;

  static NumberSpec from_poly(const QPoly& p);
  static NumberSpec parse(std::string_view text);  // polynomial in x
  long degree() const { return static_cast<long>(f.size()) - 1; }
  std::string render() const;
};

/// Resultant of two nonzero integer polynomials via the Sylvester determinant.
Integer resultant(const std::vector<Integer>& f, const std::vector<Integer>& g);

struct DensityReport {
  std::string subject;
  std::uint64_t p_max = 0;
  std::size_t tested = 0;
  std::size_t excluded = 0;
  std::size_t positive = 0;
  double density = 0;
  std::vector<std::uint64_t> excluded_primes;
  std::string verdict;
};

/// Degree of gcd(x^p - x, f mod p), the number of distinct roots of f in F_p.
std::size_t frobenius_root_count(const NumberSpec& spec, std::uint64_t p);
DensityReport kronecker_scan(const NumberSpec& spec, std::uint64_t p_max, unsigned jobs = 1);

struct TorusLineResult {
  bool proportional = true;
  std::uint64_t residue = 0;    // alpha mod p
  std::uint64_t frobenius = 0;  // residue^p
};
TorusLineResult torus_line_test(const Rational& alpha, std::uint64_t p);

/// y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6.
struct CurveSpec {
  std::array<Integer, 5> a;  // a1, a2, a3, a4, a6
  Integer b2, b4, b6, b8, c4, c6, discriminant;

  static CurveSpec from_coefficients(const std::array<Integer, 5>& a);
  /// "[a1,a2,a3,a4,a6]" or a short form "y^2 = x^3 + A*x + B".
  static CurveSpec parse(std::string_view text);
  std::string render() const;
};

/// Projective points over F_p from the quadratic character on the short model.
std::uint64_t ec_count_points(const CurveSpec& e, std::uint64_t p);
/// Exhaustive count of (x, y) on the long model plus the point at infinity.
std::uint64_t ec_count_points_naive(const CurveSpec& e, std::uint64_t p);

struct HasseResult {
  std::uint64_t p = 0;
  std::uint64_t invariant = 0;
  std::uint64_t count = 0;
  bool congruence = false;  // count = 1 - invariant mod p
};
HasseResult hasse_invariant(const CurveSpec& e, std::uint64_t p);

ScanReport isogeny_scan(const CurveSpec& e, const CurveSpec& e2, std::uint64_t p_max, unsigned jobs = 1);

}  // namespace arithlab
