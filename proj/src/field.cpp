#include "arithlab/field.hpp"

#include <array>
#include <cmath>
#include <numbers>

namespace arithlab {

std::string_view error_kind_name(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::BadReduction: return "BadReduction";
    case ErrorKind::SingularMatrix: return "SingularMatrix";
    case ErrorKind::PoleAtOrigin: return "PoleAtOrigin";
    case ErrorKind::ParameterError: return "ParameterError";
    case ErrorKind::SingularAtOrigin: return "SingularAtOrigin";
    case ErrorKind::NotZeroCurvature: return "NotZeroCurvature";
    case ErrorKind::InvertibilityFailure: return "InvertibilityFailure";
    case ErrorKind::NotAPthPower: return "NotAPthPower";
    case ErrorKind::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorKind::NotSaturated: return "NotSaturated";
    case ErrorKind::DegenerateQuotient: return "DegenerateQuotient";
    case ErrorKind::ZeroMap: return "ZeroMap";
    case ErrorKind::NotInjective: return "NotInjective";
    case ErrorKind::NoUpperBound: return "NoUpperBound";
    case ErrorKind::FullRank: return "FullRank";
    case ErrorKind::NotSeparated: return "NotSeparated";
    case ErrorKind::NotARoot: return "NotARoot";
    case ErrorKind::SingularBranch: return "SingularBranch";
    case ErrorKind::InsufficientPrecision: return "InsufficientPrecision";
    case ErrorKind::BadPrime: return "BadPrime";
    case ErrorKind::SmallPrime: return "SmallPrime";
    case ErrorKind::SyntaxError: return "SyntaxError";
    case ErrorKind::InternalError: return "InternalError";
  }
  return "Unknown";
}

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t m) {
  return static_cast<std::uint64_t>(static_cast<unsigned __int128>(a) * b % m);
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t m) {
  std::uint64_t result = 1 % m;
  base %= m;
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

std::uint64_t inv_mod(std::uint64_t a, std::uint64_t m) {
  __int128 old_r = a % m, r = m;
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    __int128 q = old_r / r;
    __int128 t = old_r - q * r;
    old_r = r;
    r = t;
    t = old_s - q * s;
    old_s = s;
    s = t;
  }
  if (old_r != 1) {
    throw Error(ErrorKind::InvertibilityFailure,
                std::to_string(a) + " is not invertible modulo " + std::to_string(m));
  }
  __int128 res = old_s % static_cast<__int128>(m);
  if (res < 0) res += m;
  return static_cast<std::uint64_t>(res);
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  static constexpr std::array<std::uint64_t, 12> small = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (auto q : small) {
    if (n % q == 0) return n == q;
  }
  std::uint64_t d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These bases are deterministic for every n < 3.3e24.
  for (auto a : small) {
    std::uint64_t x = pow_mod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int r = 1; r < s; ++r) {
      x = mul_mod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

std::vector<std::uint64_t> primes_up_to(std::uint64_t bound) {
  std::vector<std::uint64_t> out;
  if (bound < 2) return out;
  std::vector<bool> sieve(bound + 1, true);
  for (std::uint64_t i = 2; i <= bound; ++i) {
    if (!sieve[i]) continue;
    out.push_back(i);
    for (std::uint64_t j = i * i; j <= bound; j += i) sieve[j] = false;
  }
  return out;
}

long valuation(const Integer& n, std::uint64_t p) {
  if (n == 0) return 1L << 40;
  Integer m = abs(n);
  long v = 0;
  Integer q;
  Integer pp = static_cast<unsigned long>(p);
  while (true) {
    mpz_fdiv_q_ui(q.get_mpz_t(), m.get_mpz_t(), p);
    if (q * pp != m) break;
    m = q;
    ++v;
  }
  return v;
}

long valuation(const Rational& q, std::uint64_t p) {
  if (q == 0) return 1L << 40;
  return valuation(Integer(q.get_num()), p) - valuation(Integer(q.get_den()), p);
}

std::string to_string(const Rational& q) { return q.get_str(); }

Rational parse_rational(const std::string& text) {
  Rational q;
  if (q.set_str(text, 10) != 0) {
    throw Error(ErrorKind::ParameterError, "not a rational number: '" + text + "'");
  }
  if (q.get_den() == 0) throw Error(ErrorKind::ParameterError, "zero denominator in '" + text + "'");
  q.canonicalize();
  return q;
}

PrimeField::PrimeField(std::uint64_t p) : p_(p) {
  if (!is_prime(p)) throw Error(ErrorKind::ParameterError, std::to_string(p) + " is not prime");
}

PrimeField::value_type PrimeField::from_int(long v) const {
  long long r = static_cast<long long>(v % static_cast<long long>(p_));
  if (r < 0) r += static_cast<long long>(p_);
  return static_cast<value_type>(r);
}

PrimeField::value_type PrimeField::from_integer(const Integer& v) const {
  Integer r;
  mpz_fdiv_r_ui(r.get_mpz_t(), v.get_mpz_t(), p_);
  return static_cast<value_type>(r.get_ui());
}

PrimeField::value_type PrimeField::from_rational(const Rational& q) const {
  value_type den = from_integer(q.get_den());
  if (den == 0) {
    throw BadReductionError(p_, "denominator of " + to_string(q) + " is divisible by p");
  }
  return div(from_integer(q.get_num()), den);
}

double log_abs(const Integer& x) {
  long exp = 0;
  const double mant = mpz_get_d_2exp(&exp, x.get_mpz_t());
  return std::log(std::fabs(mant)) + static_cast<double>(exp) * std::numbers::ln2;
}

double log_abs(const Rational& x) { return log_abs(Integer(x.get_num())) - log_abs(Integer(x.get_den())); }

}  // namespace arithlab
