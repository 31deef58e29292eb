#pragma once

// Dense univariate polynomials over an exact field, lowest degree first.

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "arithlab/field.hpp"

namespace arithlab {

template <class Field>
class Poly {
 public:
  using field_type = Field;
  using value_type = typename Field::value_type;

  Poly()
    requires std::default_initializable<Field>
  = default;
  explicit Poly(Field field) : field_(std::move(field)) {}
  Poly(Field field, std::vector<value_type> coeffs) : field_(std::move(field)), c_(std::move(coeffs)) {
    trim();
  }

  static Poly constant(const Field& f, value_type c) { return Poly(f, {std::move(c)}); }
  static Poly monomial(const Field& f, value_type c, std::size_t k) {
    std::vector<value_type> v(k + 1, f.zero());
    v[k] = std::move(c);
    return Poly(f, std::move(v));
  }
  static Poly variable(const Field& f) { return monomial(f, f.one(), 1); }

  const Field& field() const { return field_; }
  const std::vector<value_type>& coeffs() const { return c_; }

  bool is_zero() const { return c_.empty(); }
  /// -1 for the zero polynomial.
  long degree() const { return static_cast<long>(c_.size()) - 1; }
  value_type coeff(std::size_t k) const { return k < c_.size() ? c_[k] : field_.zero(); }
  value_type lead() const { return c_.empty() ? field_.zero() : c_.back(); }
  bool is_constant() const { return c_.size() <= 1; }
  bool is_monic() const { return !c_.empty() && field_.is_one(c_.back()); }

  value_type eval(const value_type& x) const {
    value_type acc = field_.zero();
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = field_.add(field_.mul(acc, x), *it);
    return acc;
  }

  Poly operator-() const {
    Poly r(field_);
    r.c_.reserve(c_.size());
    for (const auto& a : c_) r.c_.push_back(field_.neg(a));
    return r;
  }

  friend Poly operator+(const Poly& a, const Poly& b) { return a.combine(b, false); }
  friend Poly operator-(const Poly& a, const Poly& b) { return a.combine(b, true); }

  friend Poly operator*(const Poly& a, const Poly& b) {
    Poly r(a.field_);
    if (a.is_zero() || b.is_zero()) return r;
    const Field& f = a.field_;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, f.zero());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (f.is_zero(a.c_[i])) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j) {
        r.c_[i + j] = f.add(r.c_[i + j], f.mul(a.c_[i], b.c_[j]));
      }
    }
    r.trim();
    return r;
  }

  Poly scaled(const value_type& s) const {
    Poly r(field_);
    if (field_.is_zero(s)) return r;
    r.c_.reserve(c_.size());
    for (const auto& a : c_) r.c_.push_back(field_.mul(a, s));
    r.trim();
    return r;
  }

  /// Multiplication by z^k.
  Poly shifted(std::size_t k) const {
    if (is_zero()) return *this;
    Poly r(field_);
    r.c_.assign(k, field_.zero());
    r.c_.insert(r.c_.end(), c_.begin(), c_.end());
    return r;
  }

  Poly derivative() const {
    Poly r(field_);
    if (c_.size() <= 1) return r;
    r.c_.resize(c_.size() - 1, field_.zero());
    for (std::size_t k = 1; k < c_.size(); ++k) {
      r.c_[k - 1] = field_.mul(c_[k], field_.from_int(static_cast<long>(k)));
    }
    r.trim();
    return r;
  }

  Poly pow(std::uint64_t e) const {
    Poly result = constant(field_, field_.one());
    Poly base = *this;
    while (e > 0) {
      if (e & 1) result = result * base;
      e >>= 1;
      if (e) base = base * base;
    }
    return result;
  }

  /// Euclidean division; throws InvertibilityFailure on division by zero.
  std::pair<Poly, Poly> divmod(const Poly& d) const {
    if (d.is_zero()) throw Error(ErrorKind::InvertibilityFailure, "polynomial division by zero");
    const Field& f = field_;
    Poly rem = *this;
    if (rem.degree() < d.degree()) return {Poly(f), rem};
    Poly quo(f);
    quo.c_.assign(static_cast<std::size_t>(rem.degree() - d.degree() + 1), f.zero());
    value_type lead_inv = f.inv(d.lead());
    const std::size_t dn = d.c_.size();
    for (long k = rem.degree(); k >= d.degree(); --k) {
      value_type q = f.mul(rem.c_[static_cast<std::size_t>(k)], lead_inv);
      std::size_t shift = static_cast<std::size_t>(k - d.degree());
      quo.c_[shift] = q;
      if (f.is_zero(q)) continue;
      for (std::size_t j = 0; j < dn; ++j) {
        rem.c_[shift + j] = f.sub(rem.c_[shift + j], f.mul(q, d.c_[j]));
      }
    }
    rem.trim();
    quo.trim();
    return {std::move(quo), std::move(rem)};
  }

  friend Poly operator/(const Poly& a, const Poly& b) { return a.divmod(b).first; }
  friend Poly operator%(const Poly& a, const Poly& b) { return a.divmod(b).second; }

  Poly monic() const {
    if (is_zero() || is_monic()) return *this;
    return scaled(field_.inv(lead()));
  }

  /// Exact quotient; throws InternalError when `d` does not divide.
  Poly exact_div(const Poly& d) const {
    auto [q, r] = divmod(d);
    if (!r.is_zero()) throw Error(ErrorKind::InternalError, "inexact polynomial division");
    return q;
  }

  /// f(z + s).
  Poly translated(const value_type& s) const {
    // Horner in the shifted variable.
    Poly acc(field_);
    Poly lin(field_, {s, field_.one()});
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * lin + constant(field_, *it);
    return acc;
  }

  friend bool operator==(const Poly& a, const Poly& b) {
    if (a.c_.size() != b.c_.size()) return false;
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (!a.field_.equal(a.c_[i], b.c_[i])) return false;
    }
    return true;
  }

  /// Canonical text: "3*z^2 - 1/2", highest degree first, "0" for zero.
  std::string render(const std::string& var = "z") const {
    if (is_zero()) return "0";
    std::string out;
    bool first = true;
    for (long k = degree(); k >= 0; --k) {
      const value_type& a = c_[static_cast<std::size_t>(k)];
      if (field_.is_zero(a)) continue;
      std::string s = field_.render(a);
      bool negative = !s.empty() && s[0] == '-';
      if (negative) s.erase(0, 1);
      if (first) {
        if (negative) out += "-";
      } else {
        out += negative ? " - " : " + ";
      }
      first = false;
      if (k == 0) {
        out += s;
        continue;
      }
      if (s != "1") out += s + "*";
      out += var;
      if (k > 1) out += "^" + std::to_string(k);
    }
    return out;
  }

 private:
  void trim() {
    while (!c_.empty() && field_.is_zero(c_.back())) c_.pop_back();
  }

  Poly combine(const Poly& b, bool subtract) const {
    Poly r(field_);
    const std::size_t n = std::max(c_.size(), b.c_.size());
    r.c_.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      value_type x = i < c_.size() ? c_[i] : field_.zero();
      value_type y = i < b.c_.size() ? b.c_[i] : field_.zero();
      r.c_.push_back(subtract ? field_.sub(x, y) : field_.add(x, y));
    }
    r.trim();
    return r;
  }

  Field field_{};
  std::vector<value_type> c_;
};

/// Monic gcd; gcd(0, 0) = 0.
template <class Field>
Poly<Field> gcd(Poly<Field> a, Poly<Field> b) {
  while (!b.is_zero()) {
    Poly<Field> r = a % b;
    a = std::move(b);
    b = r.monic();
  }
  return a.monic();
}

using QPoly = Poly<RationalField>;
using FpPoly = Poly<PrimeField>;

/// Content-free integer form of a rational polynomial: f = content * prim,
/// prim has coprime integer coefficients and positive leading coefficient.
struct PrimitiveSplit {
  Rational content;
  std::vector<Integer> primitive;
};
PrimitiveSplit primitive_split(const QPoly& f);

/// Coefficient-wise reduction of an integer polynomial (given lowest-first).
FpPoly reduce_integer_poly(const std::vector<Integer>& coeffs, const PrimeField& field);

}  // namespace arithlab
