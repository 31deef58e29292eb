#include "arithlab/ratfunc.hpp"

#include "arithlab/matrix.hpp"

namespace arithlab {

PrimitiveSplit primitive_split(const QPoly& f) {
  PrimitiveSplit out{0, {}};
  if (f.is_zero()) return out;
  Integer lcm_den = 1;
  for (const auto& c : f.coeffs()) {
    if (c != 0) lcm_den = lcm(lcm_den, Integer(c.get_den()));
  }
  std::vector<Integer> ints;
  ints.reserve(f.coeffs().size());
  Integer g = 0;
  for (const auto& c : f.coeffs()) {
    Integer v = Integer(c.get_num()) * (lcm_den / Integer(c.get_den()));
    g = gcd(g, v);
    ints.push_back(v);
  }
  if (ints.back() < 0) g = -g;
  for (auto& v : ints) v /= g;
  out.content = Rational(g, lcm_den);
  out.content.canonicalize();
  out.primitive = std::move(ints);
  return out;
}

FpPoly reduce_integer_poly(const std::vector<Integer>& coeffs, const PrimeField& field) {
  std::vector<std::uint64_t> c;
  c.reserve(coeffs.size());
  for (const auto& v : coeffs) c.push_back(field.from_integer(v));
  return FpPoly(field, std::move(c));
}

FpRatFunc rf_reduce_mod_p(const QRatFunc& f, const PrimeField& field) {
  if (f.is_zero()) return FpRatFunc(field);
  PrimitiveSplit n = primitive_split(f.num());
  PrimitiveSplit d = primitive_split(f.den());
  Rational c = n.content / d.content;
  // content is a unit times a power of p; only a negative valuation is fatal.
  std::uint64_t cbar = field.from_rational(c);
  FpPoly den = reduce_integer_poly(d.primitive, field);
  if (den.is_zero()) throw BadReductionError(field.modulus(), "denominator reduces to zero");
  FpPoly num = reduce_integer_poly(n.primitive, field).scaled(cbar);
  return FpRatFunc(std::move(num), std::move(den));
}

RfMat<PrimeField> reduce_matrix_mod_p(const RfMat<RationalField>& m, const PrimeField& field) {
  return m.map([&](const QRatFunc& x) { return rf_reduce_mod_p(x, field); });
}

}  // namespace arithlab
