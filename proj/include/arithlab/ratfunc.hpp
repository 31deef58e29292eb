#pragma once

// Reduced rational functions num/den over an exact field: gcd(num, den) = 1,
// den monic, zero stored as 0/1. Every operation re-normalizes, so equality
// is structural.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "arithlab/poly.hpp"

namespace arithlab {

template <class Field>
class RatFunc {
 public:
  using poly_type = Poly<Field>;
  using value_type = typename Field::value_type;

  RatFunc()
    requires std::default_initializable<Field>
      : num_(), den_(poly_type::constant(Field{}, Field{}.one())) {}
  explicit RatFunc(const Field& f) : num_(f), den_(poly_type::constant(f, f.one())) {}
  explicit RatFunc(poly_type num) : num_(std::move(num)), den_(poly_type::constant(num_.field(), num_.field().one())) {}
  RatFunc(poly_type num, poly_type den) : num_(std::move(num)), den_(std::move(den)) { normalize(); }

  static RatFunc constant(const Field& f, value_type c) { return RatFunc(poly_type::constant(f, std::move(c))); }
  static RatFunc variable(const Field& f) { return RatFunc(poly_type::variable(f)); }

  const Field& field() const { return num_.field(); }
  const poly_type& num() const { return num_; }
  const poly_type& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }
  bool is_polynomial() const { return den_.degree() == 0; }

  friend RatFunc operator+(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero()) return b;
    if (b.is_zero()) return a;
    if (a.den_ == b.den_) return RatFunc(a.num_ + b.num_, a.den_);
    return RatFunc(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
  }
  friend RatFunc operator-(const RatFunc& a, const RatFunc& b) { return a + (-b); }
  RatFunc operator-() const {
    RatFunc r = *this;
    r.num_ = -r.num_;
    return r;
  }
  friend RatFunc operator*(const RatFunc& a, const RatFunc& b) {
    if (a.is_zero() || b.is_zero()) return RatFunc(a.field());
    // Cross-cancel before multiplying so the final gcd works on smaller inputs.
    poly_type g1 = gcd(a.num_, b.den_);
    poly_type g2 = gcd(b.num_, a.den_);
    return RatFunc(a.num_.exact_div(g1) * b.num_.exact_div(g2), a.den_.exact_div(g2) * b.den_.exact_div(g1));
  }
  friend RatFunc operator/(const RatFunc& a, const RatFunc& b) { return a * b.inverse(); }

  RatFunc inverse() const {
    if (is_zero()) throw Error(ErrorKind::InvertibilityFailure, "inverse of the zero rational function");
    return RatFunc(den_, num_);
  }

  RatFunc scaled(const value_type& s) const { return RatFunc(num_.scaled(s), den_); }

  RatFunc derivative() const {
    if (is_polynomial()) return RatFunc(num_.derivative(), den_);
    return RatFunc(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
  }

  RatFunc pow(std::uint64_t e) const { return RatFunc(num_.pow(e), den_.pow(e)); }

  /// f(z + s).
  RatFunc translated(const value_type& s) const { return RatFunc(num_.translated(s), den_.translated(s)); }

  /// Throws InvertibilityFailure at a pole.
  value_type eval(const value_type& x) const {
    value_type d = den_.eval(x);
    if (field().is_zero(d)) throw Error(ErrorKind::InvertibilityFailure, "evaluation at a pole");
    return field().div(num_.eval(x), d);
  }

  friend bool operator==(const RatFunc& a, const RatFunc& b) { return a.num_ == b.num_ && a.den_ == b.den_; }

  std::string render(const std::string& var = "z") const {
    if (is_polynomial()) return num_.render(var);
    auto wrap = [&](const poly_type& p) {
      std::string s = p.render(var);
      bool atomic = s.find_first_of(" *^") == std::string::npos;
      return atomic ? s : "(" + s + ")";
    };
    return wrap(num_) + "/" + wrap(den_);
  }

 private:
  void normalize() {
    if (den_.is_zero()) throw Error(ErrorKind::InvertibilityFailure, "zero denominator");
    if (num_.is_zero()) {
      den_ = poly_type::constant(field(), field().one());
      return;
    }
    poly_type g = gcd(num_, den_);
    if (g.degree() > 0) {
      num_ = num_.exact_div(g);
      den_ = den_.exact_div(g);
    }
    if (!den_.is_monic()) {
      value_type s = field().inv(den_.lead());
      num_ = num_.scaled(s);
      den_ = den_.scaled(s);
    }
  }

  poly_type num_;
  poly_type den_;
};

using QRatFunc = RatFunc<RationalField>;
using FpRatFunc = RatFunc<PrimeField>;

/// Reduction of a rational function over Q to F_p(z). Writes f = c·N/D with N,
/// D primitive integer polynomials; fails with BadReductionError iff v_p(c) < 0.
FpRatFunc rf_reduce_mod_p(const QRatFunc& f, const PrimeField& field);

/// Taylor coefficients a_0..a_order of f at 0; throws PoleAtOrigin if den(0) = 0.
template <class Field>
std::vector<typename Field::value_type> series_expand_at_zero(const RatFunc<Field>& f, std::size_t order) {
  const Field& F = f.field();
  const auto& den = f.den();
  if (F.is_zero(den.coeff(0))) throw Error(ErrorKind::PoleAtOrigin, "denominator vanishes at z = 0");
  auto d0_inv = F.inv(den.coeff(0));
  std::vector<typename Field::value_type> a(order + 1, F.zero());
  // den * a = num, solved coefficient by coefficient.
  for (std::size_t n = 0; n <= order; ++n) {
    auto acc = f.num().coeff(n);
    const std::size_t dmax = std::min<std::size_t>(n, static_cast<std::size_t>(den.degree()));
    for (std::size_t k = 1; k <= dmax; ++k) acc = F.sub(acc, F.mul(den.coeff(k), a[n - k]));
    a[n] = F.mul(acc, d0_inv);
  }
  return a;
}

}  // namespace arithlab
