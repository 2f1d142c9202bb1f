#pragma once

#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "cubeforge/constructor.hpp"
#include "cubeforge/heights.hpp"
#include "cubeforge/oracle.hpp"

namespace cubeforge {

using Json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

// Big integers travel as decimal strings; heights as {"value", "radius"}.
Json to_json(const ApproxReal& v);
Json to_json(const CubicPoint& p);
Json to_json(const WeierstrassPoint& p);
Json to_json(const RepCensus& census, bool unordered = false);
Json to_json(const GramMatrix& gram);

ApproxReal approx_from_json(const Json& j);
/// A cubic triple ["x", "y", "z"] (decimal strings or integers), unvalidated.
IntTriple triple_from_json(const Json& j);
CubicPoint cubic_from_json(const CurveConfig& cfg, const Json& j);
/// {"X": "p/q", "Y": "r/s"} or "infinity"; checked against the curve.
WeierstrassPoint weierstrass_from_json(const CurveConfig& cfg, const Json& j);

/// Reads a generators file: a JSON list of cubic triples.
std::vector<CubicPoint> generators_from_json(const CurveConfig& cfg, const Json& j);

struct CertificateMetadata {
  std::string tool = "cubeforge";
  std::string version;
  std::string timestamp;
};

/// Field order and number formatting are fixed, so equal certificates
/// serialize to identical bytes.
Json certificate_to_json(const Certificate& cert, const CertificateMetadata& meta);

struct VerificationReport {
  std::vector<std::pair<std::string, bool>> checks;

  bool check(const std::string& name) const;
  bool integrity_ok() const;
  /// N >= N_min, so the theorem-level checks are claims that must hold.
  bool theorem_applicable() const;
  bool theorem_ok() const;
  std::vector<std::string> failures() const;
  /// 0 when everything that applies holds. Theorem-level checks count only
  /// when their preconditions hold, or always under `strict`.
  int exit_code(bool strict) const;
};

/// Recomputes every claim of a certificate from its inputs (m0, generators,
/// N, tol) and from the stored transcript. Stored booleans are compared,
/// never trusted. Throws InvalidInput on a schema mismatch and
/// PrecisionBudgetExceeded when the heights cannot be recomputed.
VerificationReport verify_certificate(const Json& file, std::size_t digit_budget = kDefaultDigitBudget);

Json to_json(const VerificationReport& report, bool strict);
Json to_json(const CorollaryReport& report);

}  // namespace cubeforge
