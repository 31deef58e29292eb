#pragma once

#include <random>
#include <string>
#include <vector>

#include "arithlab/expr.hpp"
#include "arithlab/matrix.hpp"

namespace arithlab::testing {

inline QRatFunc qrf(const std::string& text) { return parse_ratfunc(text); }
inline RfMat<RationalField> qmat(const std::string& text) { return parse_matrix(text); }
inline Rational Q(const std::string& text) { return parse_rational(text); }

inline FpRatFunc fprf(const std::string& text, std::uint64_t p) { return rf_reduce_mod_p(qrf(text), PrimeField(p)); }

struct Rng {
  std::mt19937_64 gen;
  explicit Rng(std::uint64_t seed) : gen(seed) {}

  long uniform(long lo, long hi) { return std::uniform_int_distribution<long>(lo, hi)(gen); }
  bool coin() { return uniform(0, 1) == 1; }

  Rational small_rational(long bound = 5) {
    Rational q(uniform(-bound, bound), uniform(1, bound));
    q.canonicalize();
    return q;
  }

  QPoly qpoly(long max_degree, long bound = 5) {
    std::vector<Rational> c;
    const long deg = uniform(0, max_degree);
    for (long i = 0; i <= deg; ++i) c.push_back(small_rational(bound));
    return QPoly(RationalField{}, std::move(c));
  }

  QPoly nonzero_qpoly(long max_degree, long bound = 5) {
    QPoly p = qpoly(max_degree, bound);
    while (p.is_zero()) p = qpoly(max_degree, bound);
    return p;
  }

  QRatFunc qratfunc(long max_degree = 3) { return QRatFunc(qpoly(max_degree), nonzero_qpoly(max_degree)); }

  FpPoly fppoly(const PrimeField& F, long max_degree) {
    std::vector<std::uint64_t> c;
    const long deg = uniform(0, max_degree);
    for (long i = 0; i <= deg; ++i) c.push_back(static_cast<std::uint64_t>(uniform(0, static_cast<long>(F.modulus()) - 1)));
    return FpPoly(F, std::move(c));
  }

  FpPoly nonzero_fppoly(const PrimeField& F, long max_degree) {
    FpPoly p = fppoly(F, max_degree);
    while (p.is_zero()) p = fppoly(F, max_degree);
    return p;
  }

  FpRatFunc fpratfunc(const PrimeField& F, long num_degree, long den_degree) {
    return FpRatFunc(fppoly(F, num_degree), nonzero_fppoly(F, den_degree));
  }
};

}  // namespace arithlab::testing
