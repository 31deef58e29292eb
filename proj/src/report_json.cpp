#include "arithlab/report_json.hpp"

#include <algorithm>
#include <cmath>

namespace arithlab {

namespace {

Json float_or_null(double x) { return std::isfinite(x) ? Json(x) : Json(nullptr); }

Json exponent_list(const std::vector<std::pair<Integer, long>>& v) {
  Json out = Json::array();
  for (const auto& [q, e] : v) out.push_back({{"q", q.get_str()}, {"e", e}});
  return out;
}

Json indexed_values(const std::vector<std::pair<std::size_t, double>>& v) {
  Json out = Json::array();
  for (const auto& [n, x] : v) out.push_back({{"n", n}, {"value", num(x)}});
  return out;
}

Json place(const PlaceEstimate& p) {
  return {{"place", p.prime == 0 ? Json("archimedean") : Json(p.prime)}, {"rho", num(p.rho)}, {"radius", num(p.radius)}};
}

Json integer_list(const std::vector<Integer>& v) {
  Json out = Json::array();
  for (const auto& z : v) out.push_back(z.get_str());
  return out;
}

}  // namespace

Json num(const Rational& q) { return {{"exact", to_string(q)}, {"float", float_or_null(q.get_d())}}; }

Json num(const Integer& z) { return {{"exact", z.get_str()}, {"float", float_or_null(z.get_d())}}; }

Json num(double x, std::optional<std::string> exact) {
  Json e = exact ? Json(*exact) : Json(nullptr);
  if (!exact && std::isinf(x)) e = x > 0 ? "inf" : "-inf";
  return {{"exact", e}, {"float", float_or_null(x)}};
}

Json num(const std::optional<double>& x) { return x ? num(*x) : Json(nullptr); }

Json integer_matrix(const ZMatrix& m) {
  Json out = Json::array();
  for (const auto& row : m) out.push_back(integer_list(row));
  return out;
}

Json rational_vector(const std::vector<Rational>& v) {
  Json out = Json::array();
  for (const auto& q : v) out.push_back(to_string(q));
  return out;
}

Json rational_matrix(const QMatrix& m) {
  Json out = Json::array();
  for (const auto& row : m) out.push_back(rational_vector(row));
  return out;
}

Json to_json(const PCurvatureOutcome& o) {
  Json j = {{"p", o.p}, {"status", std::string(status_name(o.status))}};
  if (o.matrix) j["matrix"] = render_matrix(*o.matrix);
  if (!o.detail.empty()) j["detail"] = o.detail;
  return j;
}

Json to_json(const PCurvatureReport& r) {
  Json records = Json::array();
  for (const auto& o : r.outcomes) records.push_back(to_json(o));
  return {{"system", render_matrix(r.system.matrix())},
          {"p_max", r.p_max},
          {"counts", {{"zero", r.zero}, {"nonzero", r.nonzero}, {"bad_reduction", r.bad}}},
          {"primes", records},
          {"verdict", r.verdict}};
}

Json to_json(const FormClass& c) {
  Json j = {{"p", c.p},
            {"status", std::string(form_status_name(c.status))},
            {"cartier", c.cartier.render("z")},
            {"degenerate", c.degenerate}};
  j["witness"] = c.witness ? Json(c.witness->render("z")) : Json(nullptr);
  return j;
}

Json to_json(const ScanReport& r) {
  Json entries = Json::array();
  for (const auto& e : r.entries) {
    Json j = {{"p", e.p}, {"status", e.status}, {"detail", e.detail}};
    if (e.witness) j["witness"] = *e.witness;
    if (e.degenerate) j["degenerate"] = true;
    entries.push_back(j);
  }
  Json counts = Json::object();
  for (const auto& [k, v] : r.counts) counts[k] = v;
  return {{"subject", r.subject},
          {"p_max", r.p_max},
          {"counts", counts},
          {"excluded", r.excluded},
          {"primes", entries},
          {"verdict", r.verdict}};
}

Json to_json(const HomHeight& h) {
  return {{"value", num(h.value)},
          {"lambda_max", num(h.lambda_max)},
          {"lambda_lo", num(h.lambda_lo)},
          {"lambda_hi", num(h.lambda_hi)}};
}

Json to_json(const MuMaxBounds& m) {
  return {{"lower", num(m.lower)}, {"upper", num(m.upper)}, {"witness", integer_matrix(m.witness)}, {"enumerated", m.enumerated}};
}

Json to_json(const ShortVector& v) {
  return {{"coords", integer_list(v.coords)},
          {"norm2", num(v.norm2)},
          {"threshold2", num(v.threshold2)},
          {"threshold2_alt", num(v.threshold2_alt)},
          {"within_threshold", v.norm2.get_d() <= v.threshold2}};
}

Json to_json(const SiegelResult& s) {
  return {{"x", integer_list(s.x)},
          {"norm2", num(s.norm2)},
          {"sup_norm", num(s.sup_norm)},
          {"coefficient_bound", num(s.coefficient_bound)},
          {"classical_bound", num(s.classical_bound)},
          {"slope_bound", num(s.slope_bound)},
          {"slope_bound_alt", num(s.slope_bound_alt)},
          {"within_classical", s.within_classical}};
}

Json to_json(const KernelSlopeAudit& a) {
  return {{"r", a.r},
          {"n", a.n},
          {"d", a.d},
          {"mu", num(a.mu)},
          {"height", num(a.height)},
          {"bound", num(a.bound)},
          {"a_priori", num(a.a_priori)},
          {"a_priori_alt", num(a.a_priori_alt)},
          {"height_exceeds_alt", a.height_exceeds_alt},
          {"holds", a.holds}};
}

Json to_json(const FilteredAudit& a) {
  Json levels = Json::array();
  for (const auto& l : a.levels)
    levels.push_back({{"rank", l.rank}, {"mu_max_upper", num(l.mu_max_upper)}, {"height", num(l.height)}, {"term", num(l.term)}});
  return {{"lhs", num(a.lhs)}, {"rhs", num(a.rhs)}, {"levels", levels}, {"holds", a.holds}};
}

Json to_json(const AlgRelation& r) {
  Json rows = Json::array();
  for (const auto& row : r.p) rows.push_back(integer_list(row));
  return {{"text", r.render()}, {"d", r.d}, {"D", r.dy}, {"coefficients", rows}};
}

Json to_json(const HermitePadeOutcome& o) {
  return {{"relation", o.relation ? to_json(*o.relation) : Json(nullptr)},
          {"unknowns", o.unknowns},
          {"system_rows", o.system_rows},
          {"system_kernel_dim", o.system_kernel_dim},
          {"kernel_dim", o.kernel_dim}};
}

Json to_json(const RationalDetection& r) {
  return {{"numerator", r.num.render("x")},
          {"denominator", r.den.render("x")},
          {"numerator_coeffs", rational_vector(r.num.coeffs())},
          {"denominator_coeffs", rational_vector(r.den.coeffs())}};
}

Json to_json(const InvariantsEstimate& e) {
  Json places = Json::array();
  for (const auto& p : e.places) places.push_back(place(p));
  return {{"order", e.order},
          {"places", places},
          {"rho_s", num(e.rho_s)},
          {"sigma_s", indexed_values(e.sigma_s)},
          {"tau_tail", indexed_values(e.tau_tail)},
          {"denominator_primes", integer_list(e.denominator_primes)}};
}

Json to_json(const EisensteinReport& e) {
  return {{"order", e.order},
          {"a", num(e.a)},
          {"exponents", exponent_list(e.exponents)},
          {"exponents_half", exponent_list(e.exponents_half)},
          {"violated", e.violated}};
}

Json to_json(const BorelDworkReport& b) {
  Json finite = Json::array();
  for (const auto& p : b.finite) finite.push_back(place(p));
  Json cross = nullptr;
  if (b.cross_check) cross = {{"d", b.cross_check->d}, {"D", b.cross_check->dy}, {"relation", to_json(b.cross_check->relation)}};
  return {{"arch_radius", num(b.arch_radius)},
          {"arch_from_hint", b.arch_from_hint},
          {"finite", finite},
          {"product", num(b.product)},
          {"tau_tail", indexed_values(b.tau_tail)},
          {"status", std::string(hypothesis_status_name(b.status))},
          {"verdict", b.verdict},
          {"cross_check", cross}};
}

Json to_json(const DensityReport& d) {
  Rational density(static_cast<long>(d.positive), static_cast<long>(std::max<std::size_t>(d.tested, 1)));
  density.canonicalize();
  return {{"subject", d.subject},
          {"p_max", d.p_max},
          {"counts", {{"tested", d.tested}, {"excluded", d.excluded}, {"positive", d.positive}}},
          {"density", num(density)},
          {"excluded_primes", d.excluded_primes},
          {"verdict", d.verdict}};
}

Json to_json(const HasseResult& h) {
  return {{"p", h.p},
          {"invariant", h.invariant},
          {"count", h.count},
          {"trace", static_cast<long long>(h.p + 1) - static_cast<long long>(h.count)},
          {"congruence", h.congruence}};
}

Json to_json(const CurveSpec& e) {
  return {{"coefficients", e.render()},
          {"c4", e.c4.get_str()},
          {"c6", e.c6.get_str()},
          {"discriminant", num(e.discriminant)}};
}

Json envelope(const std::string& command, const Json& payload) {
  Json j = {{"schema_version", kSchemaVersion}, {"command", command}};
  for (const auto& [k, v] : payload.items()) j[k] = v;
  return j;
}

Json error_json(const std::string& kind, const std::string& detail) {
  return {{"schema_version", kSchemaVersion}, {"error", kind}, {"detail", detail}};
}

}  // namespace arithlab
