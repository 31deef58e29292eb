#pragma once

// Rational differential forms f(z) dz and their Cartier operator mod p.

#include <cstdint>
#include <optional>
#include <string>

#include "arithlab/ratfunc.hpp"
#include "arithlab/scan_report.hpp"

namespace arithlab {

/// The form f(z) dz with f over Q.
struct RationalForm {
  QRatFunc f;
};

enum class FormStatus { ExactModP, LogExactModP, Neither };
std::string_view form_status_name(FormStatus s);

struct FormClass {
  std::uint64_t p = 0;
  FormStatus status = FormStatus::Neither;
  FpRatFunc cartier;                // C(omega) as a function times dz
  std::optional<FpRatFunc> witness;  // g with g' = f when ExactModP and small
  bool degenerate = false;           // omega = 0 mod p: both exact and log-exact
};

/// C(f dz) = (-d^{p-1}f/dz^{p-1})^{1/p} dz over F_p(z).
FpRatFunc cartier_operator(const FpRatFunc& f);
FpRatFunc cartier_operator(const RationalForm& w, std::uint64_t p);

FormClass classify_form(const FpRatFunc& f);
FormClass classify_form(const RationalForm& w, std::uint64_t p);

struct ScanFormOptions {
  bool include_two = false;
  unsigned jobs = 1;
};

ScanReport scan_form(const RationalForm& w, std::uint64_t p_max, const ScanFormOptions& opts = {});

/// Solves Q (h' D - h D') = N D^2 for h with deg h <= deg_bound, where f = N/Q
/// and D = Q^pole_bound. Free unknowns are set to zero, so the returned g = h/D
/// has no constant or p-th power terms that the system leaves undetermined.
std::optional<FpRatFunc> brute_force_antiderivative(const FpRatFunc& f, unsigned pole_bound, unsigned deg_bound);

/// Largest multiplicity of an irreducible factor of a nonzero polynomial over F_p.
unsigned max_multiplicity(const FpPoly& f);

/// n * f = h'/h with 1 <= n <= n_max and h over Q, when f has only simple
/// rational poles, no polynomial part and residues with small denominators.
struct LogWitness {
  unsigned n = 0;
  QRatFunc h;
};
std::optional<LogWitness> find_log_witness(const RationalForm& w, unsigned n_max = 12);

}  // namespace arithlab
