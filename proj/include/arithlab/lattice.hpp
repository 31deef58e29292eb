#pragma once

// Euclidean lattices given by exact Gram matrices: degrees, slopes, heights of
// morphisms, short vectors and the Siegel-lemma solver built on them.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arithlab/linalg.hpp"

namespace arithlab {

class EuclideanLattice {
 public:
  /// Validates symmetry and positive definiteness exactly.
  explicit EuclideanLattice(QMatrix gram);
  /// Lattice spanned by the rows of `generators` in the standard space Q^m.
  static EuclideanLattice from_embedding(QMatrix generators);
  static EuclideanLattice standard(std::size_t d);

  std::size_t rank() const { return gram_.size(); }
  const QMatrix& gram() const { return gram_; }
  const std::optional<QMatrix>& embedding() const { return embedding_; }
  const Rational& det() const { return det_; }

  /// Gram scaled by c.
  EuclideanLattice scaled(const Rational& c) const;

 private:
  QMatrix gram_;
  std::optional<QMatrix> embedding_;
  Rational det_;
};

struct DegreeValue {
  Rational det;
  double logvalue = 0;  // -1/2 log det
};

DegreeValue arithmetic_degree(const EuclideanLattice& l);
double slope(const EuclideanLattice& l);
EuclideanLattice dual_lattice(const EuclideanLattice& l);

/// Induced lattice on the span of the rows of `basis` (coordinates in L).
EuclideanLattice sublattice(const EuclideanLattice& l, const ZMatrix& basis);
/// L / S for S spanned by the rows of `sub` (coordinates in L), with the
/// quotient norm. Throws NotSaturated or DegenerateQuotient.
EuclideanLattice quotient_lattice(const EuclideanLattice& l, const ZMatrix& sub);
/// Smallest saturated sublattice containing the rows of `gens`; rows of the result form a basis.
ZMatrix saturate(const ZMatrix& gens, std::size_t d);

/// phi: source -> target, matrix is target.rank() x source.rank().
struct LatticeHom {
  EuclideanLattice source;
  EuclideanLattice target;
  QMatrix matrix;
  LatticeHom(EuclideanLattice s, EuclideanLattice t, QMatrix m);
};

/// h = 1/2 log lambda_max of (M^T G_F M, G_E). lambda_lo is an exact Rayleigh
/// quotient and lambda_hi makes lambda_hi G_E - M^T G_F M positive definite,
/// so lambda_max lies in [lambda_lo, lambda_hi].
struct HomHeight {
  double value = 0;
  double lambda_max = 0;
  Rational lambda_lo;
  Rational lambda_hi;
};
HomHeight hom_height(const LatticeHom& phi);

/// Quotient of the source by ker(phi) together with the induced injective map.
struct InducedInjection {
  ZMatrix kernel_basis;  // rows, source coordinates
  std::optional<LatticeHom> injection;  // absent when phi = 0
};
InducedInjection factor_through_kernel(const LatticeHom& phi);

struct MuMaxBounds {
  double lower = 0;
  std::optional<double> upper;
  ZMatrix witness;  // basis of a sublattice of slope `lower`
  std::size_t enumerated = 0;
};
MuMaxBounds mu_max_bounds(const EuclideanLattice& l, double effort = 1.0);
/// 0 exactly when the Gram is integral.
std::optional<double> mu_max_upper(const EuclideanLattice& l);

struct SlopeAudit {
  double lhs = 0;           // slope of the source
  double mu_max_upper = 0;  // of the target
  HomHeight height;
  double rhs = 0;
  double slack = 0;
  bool holds = false;
};
SlopeAudit slope_inequality_audit(const LatticeHom& phi);

/// LLL with delta = 0.99 in exact arithmetic. Rows of `transform` give the
/// reduced basis in the original coordinates.
struct LllResult {
  ZMatrix transform;
  QMatrix gram;
};
LllResult lll_reduce(const QMatrix& gram, const Rational& delta = Rational(99, 100));

/// All x != 0 with x^T G x <= radius2, found by Fincke-Pohst. Stops once
/// `cap` vectors are collected and sets `truncated`.
struct Enumeration {
  std::vector<ZVec> vectors;
  bool truncated = false;
};
Enumeration enumerate_short_vectors(const QMatrix& gram, const Rational& radius2, std::size_t cap = 100000);

/// Volume of the unit ball, pi^{d/2}/Gamma(d/2 + 1).
double ball_volume(std::size_t d);
/// The constant pi^{d/2}/Gamma(d/2) as printed in the source text; reported only.
double ball_constant_alt(std::size_t d);

struct ShortVector {
  ZVec coords;  // in the basis of L, first nonzero entry positive
  Rational norm2;
  double threshold2 = 0;  // t^2, t = 2 (covol/beta_d)^{1/d} (1 + 1e-9)
  double threshold2_alt = 0;
};
ShortVector minkowski_short_vector(const EuclideanLattice& l);

struct KernelLattice {
  ZMatrix basis;  // rows in Z^n, LLL-reduced
  EuclideanLattice lattice;
};
KernelLattice kernel_lattice(const ZMatrix& phi, std::size_t n);

struct KernelSlopeAudit {
  std::size_t r = 0, n = 0, d = 0;
  double mu = 0;
  double height = 0;  // h of E/E1 -> Z^r; 0 when the quotient is trivial
  double bound = 0;
  std::optional<double> a_priori;        // with sqrt(r n)
  std::optional<double> a_priori_alt;   // with sqrt(r)
  bool height_exceeds_alt = false;       // h > log(sqrt(r) A)
  bool holds = false;
};
KernelSlopeAudit kernel_slope_bound_audit(const ZMatrix& phi, std::size_t n);

struct SiegelResult {
  ZVec x;
  Rational norm2;
  Integer sup_norm;
  Integer coefficient_bound;  // A = max |a_ij|
  double classical_bound = 0;  // (n A)^{r/(n-r)}
  double slope_bound = 0;      // Minkowski radius from the a-priori slope with sqrt(r n)
  double slope_bound_alt = 0;  // same with sqrt(r)
  bool within_classical = false;
};
SiegelResult siegel_solve(const ZMatrix& phi, std::size_t n);

/// One graded piece: the block of phi landing in G^(k) and that lattice.
struct FilteredLevel {
  QMatrix block;  // rank(G) x rank(E)
  EuclideanLattice target;
  std::optional<double> mu_max_upper;  // computed from the target when absent
};

struct FilteredLevelReport {
  std::size_t rank = 0;  // rank E^(k)/E^(k+1)
  double mu_max_upper = 0;
  double height = 0;
  double term = 0;
};

struct FilteredAudit {
  double lhs = 0;  // degree of E
  double rhs = 0;
  std::vector<FilteredLevelReport> levels;
  bool holds = false;
};
/// Throws NotInjective when the stacked blocks have a kernel, or NotSeparated
/// when `ambient` is injective but the levels do not exhaust E.
FilteredAudit filtered_slope_audit(const EuclideanLattice& e, const std::vector<FilteredLevel>& levels,
                                   const std::optional<QMatrix>& ambient = std::nullopt);

}  // namespace arithlab
