#pragma once

// Coefficient fields: the rationals and prime fields F_p.
//
// A field object is a small value that knows how to do arithmetic on its
// `value_type`. Polynomials carry a copy of their field so that F_p values
// never need a global modulus.

#include <gmpxx.h>

#include <cstdint>
#include <string>
#include <vector>

#include "arithlab/error.hpp"

namespace arithlab {

using Integer = mpz_class;
using Rational = mpq_class;

/// Deterministic Miller–Rabin for 64-bit inputs.
bool is_prime(std::uint64_t n);
std::vector<std::uint64_t> primes_up_to(std::uint64_t bound);

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m);
std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m);
/// Inverse by extended Euclid; throws InvertibilityFailure for non-units.
std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m);

/// p-adic valuation of a nonzero integer.
long valuation(const Integer& n, std::uint64_t p);
/// v_p(num) - v_p(den); undefined (returns a large sentinel) for zero.
long valuation(const Rational& q, std::uint64_t p);

/// Canonical decimal rendering "a" or "a/b".
/// Natural log of |x| for nonzero x, without overflow for large entries.
double log_abs(const Integer& x);
double log_abs(const Rational& x);

std::string to_string(const Rational& q);
Rational parse_rational(const std::string& text);

struct RationalField {
  using value_type = Rational;

  value_type zero() const { return 0; }
  value_type one() const { return 1; }
  value_type from_int(long v) const { return v; }
  value_type from_rational(const Rational& q) const { return q; }

  value_type add(const value_type& a, const value_type& b) const { return a + b; }
  value_type sub(const value_type& a, const value_type& b) const { return a - b; }
  value_type mul(const value_type& a, const value_type& b) const { return a * b; }
  value_type neg(const value_type& a) const { return -a; }
  value_type inv(const value_type& a) const {
    if (sgn(a) == 0) throw Error(ErrorKind::InvertibilityFailure, "inverse of 0 in Q");
    return 1 / a;
  }
  value_type div(const value_type& a, const value_type& b) const { return a * inv(b); }
  bool is_zero(const value_type& a) const { return sgn(a) == 0; }
  bool is_one(const value_type& a) const { return a == 1; }
  bool equal(const value_type& a, const value_type& b) const { return a == b; }
  std::uint64_t characteristic() const { return 0; }
  std::string render(const value_type& a) const { return to_string(a); }

  bool operator==(const RationalField&) const = default;
};

class PrimeField {
 public:
  using value_type = std::uint64_t;

  explicit PrimeField(std::uint64_t p);

  std::uint64_t modulus() const { return p_; }
  std::uint64_t characteristic() const { return p_; }

  value_type zero() const { return 0; }
  value_type one() const { return 1 % p_; }
  value_type from_int(long v) const;
  value_type from_integer(const Integer& v) const;
  /// Throws BadReductionError when p divides the denominator.
  value_type from_rational(const Rational& q) const;

  value_type add(value_type a, value_type b) const {
    value_type s = a + b;
    return s >= p_ || s < a ? s - p_ : s;
  }
  value_type sub(value_type a, value_type b) const { return a >= b ? a - b : a + (p_ - b); }
  value_type mul(value_type a, value_type b) const { return mul_mod(a, b, p_); }
  value_type neg(value_type a) const { return a == 0 ? 0 : p_ - a; }
  value_type inv(value_type a) const { return inv_mod(a, p_); }
  value_type div(value_type a, value_type b) const { return mul(a, inv(b)); }
  value_type pow(value_type a, std::uint64_t e) const { return pow_mod(a, e, p_); }
  bool is_zero(value_type a) const { return a == 0; }
  bool is_one(value_type a) const { return a == 1; }
  bool equal(value_type a, value_type b) const { return a == b; }
  std::string render(value_type a) const { return std::to_string(a); }

  bool operator==(const PrimeField&) const = default;

 private:
  std::uint64_t p_;
};

}  // namespace arithlab
