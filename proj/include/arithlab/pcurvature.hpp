#pragma once

// p-curvature of linear differential systems Y' = A(z) Y.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "arithlab/matrix.hpp"

namespace arithlab {

/// Y' = A(z) Y with A square over Q(z).
class DiffSystem {
 public:
  explicit DiffSystem(RfMat<RationalField> a);

  std::size_t dimension() const { return a_.rows(); }
  const RfMat<RationalField>& matrix() const { return a_; }

  /// The system satisfied by Y(z + z0).
  DiffSystem shifted(const Rational& z0) const;

 private:
  RfMat<RationalField> a_;
};

/// A_0 = I, A_1 = A, A_{k+1} = A_k' + A_k A.
template <class Field>
struct IterateTable {
  RfMat<Field> base;
  std::vector<RfMat<Field>> iterates;
};

template <class Field>
IterateTable<Field> iterate_system(const RfMat<Field>& a, std::size_t n) {
  if (!a.is_square()) throw Error(ErrorKind::ParameterError, "system matrix must be square");
  IterateTable<Field> table{a, {}};
  table.iterates.reserve(n + 1);
  table.iterates.push_back(rf_identity(a(0, 0).field(), a.rows()));
  for (std::size_t k = 0; k < n; ++k) {
    const auto& cur = table.iterates.back();
    table.iterates.push_back(derivative(cur) + cur * a);
  }
  return table;
}

enum class CurvatureStatus { BadReduction, Zero, NonZero };
std::string_view status_name(CurvatureStatus s);

struct PCurvatureOutcome {
  std::uint64_t p = 0;
  CurvatureStatus status = CurvatureStatus::BadReduction;
  std::optional<RfMat<PrimeField>> matrix;  // set iff NonZero
  std::string detail;                       // reason for BadReduction
};

/// Reduces A mod p, then runs the recursion p steps over F_p(z).
PCurvatureOutcome p_curvature(const DiffSystem& sys, std::uint64_t p);

/// A_p for a system already over F_p(z). Uses the common-denominator form
/// A_n = B_n / q^n with B_n polynomial, so no gcds are taken inside the loop.
RfMat<PrimeField> p_curvature_matrix(const RfMat<PrimeField>& a);

struct PCurvatureReport {
  DiffSystem system;
  std::uint64_t p_max = 0;
  std::vector<PCurvatureOutcome> outcomes;
  std::size_t zero = 0;
  std::size_t nonzero = 0;
  std::size_t bad = 0;
  std::string verdict;
};

PCurvatureReport scan_p_curvatures(const DiffSystem& sys, std::uint64_t p_max, unsigned jobs = 1);

/// Y = (sum_{i<p} (-z)^i / i! A_i)^{-1}, checked to satisfy Y' = AY and Y(0) = I.
RfMat<PrimeField> cartier_fundamental_matrix(const DiffSystem& sys, std::uint64_t p);

/// Companion system of z(1-z)y'' + (c-(a+b+1)z)y' - ab y = 0.
DiffSystem hypergeometric_system(const Rational& a, const Rational& b, const Rational& c);

/// Taylor coefficients of the solution regular at 0 with y(0) = 1, from the
/// recurrence (n+1)(n+c) a_{n+1} = (n+a)(n+b) a_n.
std::vector<Rational> hypergeometric_series(const Rational& a, const Rational& b, const Rational& c,
                                            std::size_t order);

}  // namespace arithlab
