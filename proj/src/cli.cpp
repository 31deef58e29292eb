#include "arithlab/cli.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <limits>
#include <map>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"

#include "arithlab/report_json.hpp"

namespace arithlab::cli {

namespace {

enum class Format { Auto, Json, Expr };

struct Outcome {
  Json payload;
  int code = kComputed;
  std::string summary;
};

struct Options {
  unsigned jobs = 1;
  Format format = Format::Auto;
  bool summary = false;
  bool pretty = false;

  std::string matrix, form, gram, basis, phi, coeffs, ratfunc, relation, poly, curve, curve2, instance, hint, primes,
      hypergeometric;
  std::uint64_t p = 0, pmax = 0;
  std::string shift;
  std::size_t d = 0, dy = 0, order = 0;
  std::string y0 = "0";
  bool sweep = false, include_two = false, exp = false;
  double effort = 1.0;
};

std::string load_input(const std::string& value) {
  std::error_code ec;
  if (value.size() < 4096 && std::filesystem::is_regular_file(value, ec)) {
    std::ifstream in(value);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
  }
  return value;
}

bool use_json(const std::string& text, Format f) {
  if (f != Format::Auto) return f == Format::Json;
  const auto pos = text.find_first_not_of(" \t\r\n");
  if (pos == std::string::npos || (text[pos] != '[' && text[pos] != '{')) return false;
  return Json::accept(text);
}

// Quotes every bare number so integers of any size reach the exact parser
// instead of being rounded to a double by the JSON reader.
std::string quote_numbers(const std::string& text) {
  std::string out;
  out.reserve(text.size() + 16);
  bool in_string = false;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    if (in_string) {
      out += c;
      if (c == '\\' && i + 1 < text.size()) {
        out += text[++i];
      } else if (c == '"') {
        in_string = false;
      }
      continue;
    }
    if (c == '"') {
      in_string = true;
      out += c;
      continue;
    }
    const bool starts_number = std::isdigit(static_cast<unsigned char>(c)) ||
                               (c == '-' && i + 1 < text.size() && std::isdigit(static_cast<unsigned char>(text[i + 1])));
    if (!starts_number) {
      out += c;
      continue;
    }
    std::size_t j = i + 1;
    while (j < text.size() && (std::isdigit(static_cast<unsigned char>(text[j])) || std::strchr(".eE+-", text[j]))) ++j;
    out += '"' + text.substr(i, j - i) + '"';
    i = j - 1;
  }
  return out;
}

Json parse_json(const std::string& text) {
  try {
    return Json::parse(quote_numbers(text));
  } catch (const Json::parse_error& e) {
    throw SyntaxError(e.byte, "valid JSON");
  }
}

QRatFunc json_scalar(const Json& v, const std::string& var) {
  if (v.is_string()) return parse_ratfunc(v.get<std::string>(), var);
  throw Error(ErrorKind::ParameterError, "JSON entries must be numbers or expression strings, got " + v.dump());
}

RfMat<RationalField> input_matrix(const std::string& value, Format f, const std::string& var = "z") {
  const std::string text = load_input(value);
  if (!use_json(text, f)) return parse_matrix(text, var);
  Json j = parse_json(text);
  if (j.is_object() && j.contains("matrix")) j = j["matrix"];
  if (!j.is_array() || j.empty()) throw Error(ErrorKind::ParameterError, "matrix must be a nonempty JSON array of rows");
  const std::size_t cols = j[0].is_array() ? j[0].size() : 0;
  std::vector<QRatFunc> entries;
  for (const auto& row : j) {
    if (!row.is_array() || row.size() != cols) throw Error(ErrorKind::ParameterError, "matrix rows must be arrays of equal length");
    for (const auto& v : row) entries.push_back(json_scalar(v, var));
  }
  return RfMat<RationalField>(j.size(), cols, std::move(entries));
}

Rational constant_of(const QRatFunc& f) {
  if (f.num().degree() > 0 || f.den().degree() > 0) throw Error(ErrorKind::ParameterError, "expected a constant entry, got " + f.render("z"));
  return f.num().coeff(0) / f.den().coeff(0);
}

QMatrix input_rational_matrix(const std::string& value, Format f) {
  const auto m = input_matrix(value, f);
  QMatrix out(m.rows(), QVec(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out[i][j] = constant_of(m(i, j));
  return out;
}

ZMatrix input_integer_matrix(const std::string& value, Format f) {
  const QMatrix q = input_rational_matrix(value, f);
  if (!is_integral(q)) throw Error(ErrorKind::ParameterError, "expected an integer matrix");
  return to_integer(q);
}

std::vector<Rational> input_coeffs(const std::string& value, Format f) {
  const std::string text = load_input(value);
  std::vector<Rational> out;
  if (use_json(text, f)) {
    Json j = parse_json(text);
    if (j.is_object() && j.contains("coeffs")) j = j["coeffs"];
    if (!j.is_array()) throw Error(ErrorKind::ParameterError, "coefficients must be a JSON array");
    for (const auto& v : j) out.push_back(constant_of(json_scalar(v, "z")));
    return out;
  }
  std::string body = text;
  std::replace(body.begin(), body.end(), '[', ' ');
  std::replace(body.begin(), body.end(), ']', ' ');
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    out.push_back(eval_constant(parse_expression(item)));
  }
  return out;
}

std::vector<std::uint64_t> parse_prime_list(const std::string& text) {
  std::vector<std::uint64_t> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    const auto p = std::stoull(item);
    if (!is_prime(p)) throw Error(ErrorKind::ParameterError, item + " is not prime");
    out.push_back(p);
  }
  return out;
}

SeriesApprox input_series(const Options& o) {
  const int sources = !o.coeffs.empty() + !o.ratfunc.empty() + !o.hypergeometric.empty() + o.exp;
  if (sources != 1) throw Error(ErrorKind::ParameterError, "give exactly one of --coeffs, --ratfunc, --hypergeometric, --exp");
  if (!o.coeffs.empty()) {
    SeriesApprox y{input_coeffs(o.coeffs, o.format)};
    if (y.coeffs.empty()) throw Error(ErrorKind::ParameterError, "empty coefficient list");
    if (o.order && o.order + 1 < y.coeffs.size()) y.coeffs.resize(o.order + 1);
    return y;
  }
  if (o.order == 0) throw Error(ErrorKind::ParameterError, "--order is required for generated series");
  if (!o.ratfunc.empty()) return series_from_ratfunc(parse_ratfunc(load_input(o.ratfunc), "x"), o.order);
  if (o.exp) return exp_series(o.order);
  std::vector<Rational> abc;
  std::stringstream ss(o.hypergeometric);
  std::string item;
  while (std::getline(ss, item, ',')) abc.push_back(eval_constant(parse_expression(item)));
  if (abc.size() != 3) throw Error(ErrorKind::ParameterError, "--hypergeometric expects a,b,c");
  return SeriesApprox{hypergeometric_series(abc[0], abc[1], abc[2], o.order)};
}

EuclideanLattice input_lattice(const Options& o) {
  if (o.gram.empty() == o.basis.empty()) throw Error(ErrorKind::ParameterError, "give exactly one of --gram, --basis");
  if (!o.gram.empty()) return EuclideanLattice(input_rational_matrix(o.gram, o.format));
  return EuclideanLattice::from_embedding(input_rational_matrix(o.basis, o.format));
}

std::string fmt(double x) {
  std::ostringstream os;
  os << std::setprecision(10) << x;
  return os.str();
}

// ---- handlers -------------------------------------------------------------

Outcome cmd_pcurv(const Options& o) {
  const DiffSystem sys(input_matrix(o.matrix, o.format));
  const auto r = p_curvature(sys, o.p);
  const int code = r.status == CurvatureStatus::Zero ? kComputed : kNegative;
  return {to_json(r), code, "p-curvature at p = " + std::to_string(o.p) + ": " + std::string(status_name(r.status))};
}

Outcome cmd_cartier_solve(const Options& o) {
  DiffSystem sys(input_matrix(o.matrix, o.format));
  if (!o.shift.empty()) sys = sys.shifted(eval_constant(parse_expression(o.shift)));
  const auto y = cartier_fundamental_matrix(sys, o.p);
  Json j = {{"p", o.p},
            {"shift", o.shift.empty() ? "0" : to_string(eval_constant(parse_expression(o.shift)))},
            {"system", render_matrix(sys.matrix())},
            {"fundamental_matrix", render_matrix(y)},
            {"verified", true}};
  return {j, kComputed, "fundamental matrix mod " + std::to_string(o.p) + ": " + render_matrix_text(y)};
}

Outcome cmd_scan_pcurv(const Options& o) {
  const auto r = scan_p_curvatures(DiffSystem(input_matrix(o.matrix, o.format)), o.pmax, o.jobs);
  return {to_json(r), r.nonzero == 0 && r.zero > 0 ? kComputed : kNegative, r.verdict};
}

Outcome cmd_form_classify(const Options& o) {
  const auto c = classify_form(RationalForm{parse_ratfunc(load_input(o.form))}, o.p);
  const int code = c.status == FormStatus::Neither ? kNegative : kComputed;
  return {to_json(c), code, "form at p = " + std::to_string(o.p) + ": " + std::string(form_status_name(c.status))};
}

Outcome cmd_scan_form(const Options& o) {
  const RationalForm w{parse_ratfunc(load_input(o.form))};
  const auto r = scan_form(w, o.pmax, ScanFormOptions{o.include_two, o.jobs});
  Json j = to_json(r);
  if (const auto lw = find_log_witness(w)) j["log_witness"] = {{"n", lw->n}, {"h", lw->h.render("z")}};
  const bool positive = r.verdict.rfind("candidate", 0) == 0;
  return {j, positive ? kComputed : kNegative, r.verdict};
}

Outcome cmd_slopes(const Options& o) {
  const EuclideanLattice l = input_lattice(o);
  const auto deg = arithmetic_degree(l);
  const auto mu = mu_max_bounds(l, o.effort);
  const std::string det = to_string(deg.det);
  const std::string rank = std::to_string(l.rank());
  Json j = {{"rank", l.rank()},
            {"gram", rational_matrix(l.gram())},
            {"det", num(deg.det)},
            {"degree", num(deg.logvalue, "-1/2*log(" + det + ")")},
            {"slope", num(slope(l), "-1/(2*" + rank + ")*log(" + det + ")")},
            {"dual_slope", num(slope(dual_lattice(l)), "1/(2*" + rank + ")*log(" + det + ")")},
            {"mu_max", to_json(mu)}};
  return {j, kComputed, "slope " + fmt(slope(l)) + ", mu_max >= " + fmt(mu.lower)};
}

Outcome cmd_siegel(const Options& o) {
  const ZMatrix phi = input_integer_matrix(o.phi, o.format);
  const std::size_t n = phi.front().size();
  const auto s = siegel_solve(phi, n);
  const auto k = kernel_lattice(phi, n);
  Json j = {{"phi", integer_matrix(phi)},
            {"solution", to_json(s)},
            {"kernel", {{"basis", integer_matrix(k.basis)}, {"gram", rational_matrix(k.lattice.gram())}}},
            {"audit", to_json(kernel_slope_bound_audit(phi, n))}};
  std::string x;
  for (const auto& c : s.x) x += (x.empty() ? "" : ",") + c.get_str();
  return {j, kComputed, "x = (" + x + "), |x|_inf = " + s.sup_norm.get_str()};
}

Outcome cmd_minkowski(const Options& o) {
  const EuclideanLattice l = input_lattice(o);
  const auto v = minkowski_short_vector(l);
  Json j = {{"rank", l.rank()}, {"det", num(l.det())}, {"vector", to_json(v)}};
  return {j, kComputed, "short vector of norm^2 " + to_string(v.norm2) + " <= " + fmt(v.threshold2)};
}

Outcome cmd_filtered_audit(const Options& o) {
  const Json inst = parse_json(load_input(o.instance));
  auto qmatrix = [](const Json& j) { return input_rational_matrix(j.dump(), Format::Json); };
  const EuclideanLattice e(qmatrix(inst.at("gram")));
  std::vector<FilteredLevel> levels;
  for (const auto& l : inst.at("levels")) {
    std::optional<double> mu;
    if (l.contains("mu_max_upper") && !l["mu_max_upper"].is_null()) mu = std::stod(l["mu_max_upper"].get<std::string>());
    levels.push_back(FilteredLevel{qmatrix(l.at("block")), EuclideanLattice(qmatrix(l.at("target_gram"))), mu});
  }
  std::optional<QMatrix> ambient;
  if (inst.contains("ambient") && !inst["ambient"].is_null()) ambient = qmatrix(inst["ambient"]);
  const auto a = filtered_slope_audit(e, levels, ambient);
  return {to_json(a), a.holds ? kComputed : kNegative,
          std::string(a.holds ? "audit holds: " : "audit fails: ") + fmt(a.lhs) + " <= " + fmt(a.rhs)};
}

Outcome cmd_detect(const Options& o) {
  const SeriesApprox y = input_series(o);
  if (o.sweep) {
    const auto s = detect_sweep(y, o.d, o.dy, o.jobs);
    Json j = {{"order", y.order()}, {"max_d", o.d}, {"max_D", o.dy}, {"sweep", true}};
    j["relation"] = s ? to_json(s->relation) : Json(nullptr);
    j["verdict"] = s ? "algebraic relation found" : "no relation up to bidegree bound";
    return {j, s ? kComputed : kNegative, s ? "relation " + s->relation.render() : "no relation found"};
  }
  const auto h = hermite_pade_search(y, o.d, o.dy);
  Json j = {{"order", y.order()}, {"d", o.d}, {"D", o.dy}, {"sweep", false}};
  const Json search = to_json(h);
  for (const auto& [k, v] : search.items()) j[k] = v;
  j["verdict"] = h.relation ? "algebraic relation found" : "no relation at this bidegree";
  return {j, h.relation ? kComputed : kNegative, h.relation ? "relation " + h.relation->render() : "no relation found"};
}

Outcome cmd_detect_rational(const Options& o) {
  const SeriesApprox y = input_series(o);
  const auto r = detect_rational(y, o.d);
  Json j = {{"order", y.order()}, {"d", o.d}, {"found", r.has_value()}};
  j["rational"] = r ? to_json(*r) : Json(nullptr);
  return {j, r ? kComputed : kNegative,
          r ? "(" + r->num.render("x") + ")/(" + r->den.render("x") + ")" : "no rational function of degree <= " + std::to_string(o.d)};
}

Outcome cmd_invariants(const Options& o) {
  const SeriesApprox y = input_series(o);
  const auto e = invariants_estimate(y, parse_prime_list(o.primes), y.order());
  return {to_json(e), kComputed, "rho_S = " + fmt(e.rho_s)};
}

Outcome cmd_eisenstein(const Options& o) {
  const auto e = eisenstein_report(input_series(o));
  Json j = to_json(e);
  j["verdict"] = e.violated ? "non-eisenstein (exponent growth between N/2 and N)" : "eisenstein constant A = " + e.a.get_str();
  return {j, e.violated ? kNegative : kComputed, j["verdict"].get<std::string>()};
}

Outcome cmd_borel_dwork(const Options& o) {
  std::optional<double> hint;
  if (!o.hint.empty()) {
    std::string h = o.hint;
    std::transform(h.begin(), h.end(), h.begin(), [](unsigned char c) { return std::tolower(c); });
    hint = (h == "inf" || h == "infinity") ? std::numeric_limits<double>::infinity() : eval_constant(parse_expression(h)).get_d();
  }
  const auto b = borel_dwork_report(input_series(o), hint, o.jobs);
  return {to_json(b), b.status == HypothesisStatus::SatisfiedEmpirically ? kComputed : kNegative, b.verdict};
}

Outcome cmd_kronecker(const Options& o) {
  const NumberSpec s = NumberSpec::parse(load_input(o.poly));
  const auto d = kronecker_scan(s, o.pmax, o.jobs);
  Json j = to_json(d);
  j["discriminant"] = num(s.discriminant);
  return {j, d.verdict == "rational-consistent" ? kComputed : kNegative, d.verdict};
}

Outcome cmd_isogeny_scan(const Options& o) {
  const CurveSpec e = CurveSpec::parse(o.curve), e2 = CurveSpec::parse(o.curve2);
  const auto r = isogeny_scan(e, e2, o.pmax, o.jobs);
  Json j = to_json(r);
  j["curves"] = {to_json(e), to_json(e2)};
  return {j, r.verdict.rfind("no obstruction", 0) == 0 ? kComputed : kNegative, r.verdict};
}

Outcome cmd_hasse(const Options& o) {
  const CurveSpec e = CurveSpec::parse(o.curve);
  const auto h = hasse_invariant(e, o.p);
  Json j = to_json(h);
  j["curve"] = to_json(e);
  return {j, kComputed, "#E(F_" + std::to_string(o.p) + ") = " + std::to_string(h.count) + ", A = " + std::to_string(h.invariant)};
}

Outcome cmd_expand(const Options& o) {
  const AlgRelation rel = parse_relation(load_input(o.relation));
  const Rational y0 = eval_constant(parse_expression(o.y0));
  const auto y = expand_algebraic_branch(rel, y0, o.order);
  Json j = {{"relation", to_json(rel)}, {"y0", to_string(y0)}, {"order", o.order}, {"coeffs", rational_vector(y.coeffs)}};
  return {j, kComputed, "expanded to order " + std::to_string(o.order)};
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  if (const char* env = std::getenv("ARITHLAB_JOBS")) {
    try {
      o.jobs = static_cast<unsigned>(std::max(1UL, std::stoul(env)));
    } catch (const std::exception&) {
      err << "ignoring malformed ARITHLAB_JOBS=" << env << "\n";
    }
  }

  CLI::App app{"Arithmetic tests for differential equations, lattices and power series", "arithlab"};
  app.require_subcommand(1, 1);
  app.fallthrough();
  app.add_option("--jobs,-j", o.jobs, "Worker threads for scans (default: ARITHLAB_JOBS or 1)")->check(CLI::PositiveNumber);
  app.add_option("--format", o.format, "Input format for matrices and coefficient lists")
      ->transform(CLI::CheckedTransformer(std::map<std::string, Format>{{"auto", Format::Auto}, {"json", Format::Json}, {"expr", Format::Expr}}));
  app.add_flag("--summary", o.summary, "Print a one-line human summary instead of JSON");
  app.add_flag("--pretty", o.pretty, "Indent JSON output");

  std::map<CLI::App*, std::function<Outcome(const Options&)>> handlers;
  auto sub = [&](const std::string& name, const std::string& help, auto handler) {
    CLI::App* s = app.add_subcommand(name, help);
    handlers[s] = handler;
    return s;
  };
  auto matrix_opt = [&](CLI::App* s) { s->add_option("--matrix", o.matrix, "System matrix A(z): expression, JSON, or file")->required(); };
  auto prime_opt = [&](CLI::App* s) { s->add_option("--p", o.p, "Prime")->required()->check(CLI::PositiveNumber); };
  auto pmax_opt = [&](CLI::App* s) { s->add_option("--pmax", o.pmax, "Largest prime scanned")->required(); };
  auto lattice_opt = [&](CLI::App* s) {
    s->add_option("--gram", o.gram, "Gram matrix");
    s->add_option("--basis", o.basis, "Generators as rows in the standard Euclidean space");
  };
  auto series_opt = [&](CLI::App* s) {
    s->add_option("--coeffs", o.coeffs, "Taylor coefficients: JSON array, comma list, or file");
    s->add_option("--ratfunc", o.ratfunc, "Rational function in x, expanded to --order");
    s->add_option("--hypergeometric", o.hypergeometric, "a,b,c of the hypergeometric series, expanded to --order");
    s->add_flag("--exp", o.exp, "Use the exponential series to --order");
    s->add_option("--order", o.order, "Truncation order N");
  };

  CLI::App* s;
  s = sub("pcurv", "p-curvature of Y' = AY at one prime", cmd_pcurv);
  matrix_opt(s);
  prime_opt(s);
  s = sub("cartier-solve", "Fundamental solution matrix mod p when the p-curvature vanishes", cmd_cartier_solve);
  matrix_opt(s);
  prime_opt(s);
  s->add_option("--shift", o.shift, "Replace z by z + z0 before solving");
  s = sub("scan-pcurv", "p-curvature at every prime up to a bound", cmd_scan_pcurv);
  matrix_opt(s);
  pmax_opt(s);
  s = sub("form-classify", "Exactness of f(z) dz modulo p", cmd_form_classify);
  s->add_option("--form", o.form, "The function f in f(z) dz")->required();
  prime_opt(s);
  s = sub("scan-form", "Exactness of f(z) dz at every prime up to a bound", cmd_scan_form);
  s->add_option("--form", o.form, "The function f in f(z) dz")->required();
  pmax_opt(s);
  s->add_flag("--include-two", o.include_two, "Also test p = 2");
  s = sub("slopes", "Degree, slope and mu_max bounds of a lattice", cmd_slopes);
  lattice_opt(s);
  s->add_option("--effort", o.effort, "Enumeration effort for the mu_max lower bound");
  s = sub("siegel", "Small integer kernel vector of an integer matrix", cmd_siegel);
  s->add_option("--phi", o.phi, "Integer matrix with more columns than rows")->required();
  s = sub("minkowski", "Short lattice vector within the Minkowski bound", cmd_minkowski);
  lattice_opt(s);
  s = sub("filtered-audit", "Two-sided audit of a filtered slope inequality", cmd_filtered_audit);
  s->add_option("--instance", o.instance, "JSON instance: gram, levels[{block, target_gram, mu_max_upper?}], ambient?")->required();
  s = sub("detect", "Hermite-Pade search for P(x, y) = 0", cmd_detect);
  series_opt(s);
  s->add_option("--d", o.d, "Degree bound in X")->required();
  s->add_option("--D", o.dy, "Degree bound in Y")->required();
  s->add_flag("--sweep", o.sweep, "Search every bidegree up to (d, D)");
  s = sub("detect-rational", "Pade search for a rational function", cmd_detect_rational);
  series_opt(s);
  s->add_option("--d", o.d, "Degree bound of numerator and denominator")->required();
  s = sub("invariants", "Place-wise growth estimates of a power series", cmd_invariants);
  series_opt(s);
  s->add_option("--primes", o.primes, "Comma-separated finite places");
  s = sub("eisenstein", "Smallest A with a_n A^(n+1) integral", cmd_eisenstein);
  series_opt(s);
  s = sub("borel-dwork", "Radius product test for rationality", cmd_borel_dwork);
  series_opt(s);
  s->add_option("--hint", o.hint, "Archimedean meromorphic radius (number or inf)");
  s = sub("kronecker", "Density of primes where a polynomial splits completely", cmd_kronecker);
  s->add_option("--poly", o.poly, "Integer polynomial in x")->required();
  pmax_opt(s);
  s = sub("isogeny-scan", "Compare point counts of two curves", cmd_isogeny_scan);
  s->add_option("--curve", o.curve, "First curve, [a1,a2,a3,a4,a6] or y^2 = x^3 + A*x + B")->required();
  s->add_option("--curve2", o.curve2, "Second curve")->required();
  pmax_opt(s);
  s = sub("hasse", "Point count and Hasse invariant at one prime", cmd_hasse);
  s->add_option("--curve", o.curve, "Curve, [a1,a2,a3,a4,a6] or y^2 = x^3 + A*x + B")->required();
  prime_opt(s);
  s = sub("expand", "Taylor expansion of a branch of P(x, y) = 0", cmd_expand);
  s->add_option("--relation", o.relation, "Polynomial in X and Y")->required();
  s->add_option("--y0", o.y0, "Value of the branch at x = 0");
  s->add_option("--order", o.order, "Truncation order")->required();

  auto emit = [&](const Json& j) { out << (o.pretty ? j.dump(2) : j.dump()) << "\n"; };
  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kComputed;
  } catch (const CLI::ParseError& e) {
    emit(error_json("UsageError", e.what()));
    err << e.what() << "\n";
    return kFailure;
  }

  CLI::App* chosen = app.get_subcommands().front();
  try {
    Outcome r = handlers.at(chosen)(o);
    if (o.summary) {
      out << chosen->get_name() << ": " << r.summary << "\n";
    } else {
      emit(envelope(chosen->get_name(), r.payload));
    }
    return r.code;
  } catch (const Error& e) {
    emit(error_json(std::string(error_kind_name(e.kind())), e.detail()));
    err << e.what() << "\n";
  } catch (const std::exception& e) {
    emit(error_json("InternalError", e.what()));
    err << e.what() << "\n";
  }
  return kFailure;
}

}  // namespace arithlab::cli
