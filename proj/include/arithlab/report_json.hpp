#pragma once

// JSON views of every report type. Numeric fields are objects
// {"exact": string or null, "float": number or null}: exact holds the
// rational value or a closed form such as "-1/2*log(3)", float is the
// nearest double (null when not finite).

#include <optional>
#include <string>

#include "json.hpp"

#include "arithlab/arith_scan.hpp"
#include "arithlab/diffforms.hpp"
#include "arithlab/lattice.hpp"
#include "arithlab/pcurvature.hpp"
#include "arithlab/series.hpp"

namespace arithlab {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1.0";

Json num(const Rational& q);
Json num(const Integer& z);
Json num(double x, std::optional<std::string> exact = std::nullopt);
Json num(const std::optional<double>& x);

Json to_json(const PCurvatureOutcome& o);
Json to_json(const PCurvatureReport& r);
Json to_json(const FormClass& c);
Json to_json(const ScanReport& r);
Json to_json(const HomHeight& h);
Json to_json(const MuMaxBounds& m);
Json to_json(const ShortVector& v);
Json to_json(const SiegelResult& s);
Json to_json(const KernelSlopeAudit& a);
Json to_json(const FilteredAudit& a);
Json to_json(const AlgRelation& r);
Json to_json(const HermitePadeOutcome& o);
Json to_json(const RationalDetection& r);
Json to_json(const InvariantsEstimate& e);
Json to_json(const EisensteinReport& e);
Json to_json(const BorelDworkReport& b);
Json to_json(const DensityReport& d);
Json to_json(const HasseResult& h);
Json to_json(const CurveSpec& e);

Json integer_matrix(const ZMatrix& m);
Json rational_matrix(const QMatrix& m);
Json rational_vector(const std::vector<Rational>& v);

/// Wraps a payload as {"schema_version", "command", ...payload}.
Json envelope(const std::string& command, const Json& payload);
Json error_json(const std::string& kind, const std::string& detail);

}  // namespace arithlab
