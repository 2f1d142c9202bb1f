#include "cubeforge/certificate_io.hpp"

#include <algorithm>

#include "cubeforge/errors.hpp"

namespace cubeforge {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw InvalidInput(std::string("missing field '") + key + "'");
  return j.at(key);
}

BigInt bigint_from_json(const Json& j) {
  if (j.is_string()) return parse_bigint(j.get<std::string>());
  if (j.is_number_integer()) return BigInt(std::to_string(j.get<long long>()));
  throw InvalidInput("expected an integer as a decimal string, got " + j.dump());
}

std::int64_t int_from_json(const Json& j, const char* what) {
  if (!j.is_number_integer()) throw InvalidInput(std::string("expected an integer for '") + what + "'");
  return j.get<std::int64_t>();
}

Json string_pair(const BigInt& a, const BigInt& b) { return Json::array({to_string(a), to_string(b)}); }

}  // namespace

// --- values -------------------------------------------------------------------

Json to_json(const ApproxReal& v) { return Json{{"value", v.value()}, {"radius", v.radius()}}; }

Json to_json(const CubicPoint& p) { return Json::array({to_string(p.x()), to_string(p.y()), to_string(p.z())}); }

Json to_json(const WeierstrassPoint& p) {
  if (p.is_infinity()) return "infinity";
  return Json{{"X", to_string(p.X())}, {"Y", to_string(p.Y())}};
}

Json to_json(const RepCensus& census, bool unordered) {
  Json pairs = Json::array();
  for (const auto& [x, y] : census.pairs)
    if (!unordered || x <= y) pairs.push_back(string_pair(x, y));
  Json j{{"m", to_string(census.m)}, {"ordered_count", census.ordered_count()}};
  if (unordered) j["unordered_count"] = pairs.size();
  j["pairs"] = std::move(pairs);
  j["scan_bound"] = to_string(census.scan_bound);
  return j;
}

Json to_json(const GramMatrix& gram) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < gram.size(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < gram.size(); ++j) row.push_back(to_json(gram(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

ApproxReal approx_from_json(const Json& j) {
  const Json& v = field(j, "value");
  const Json& r = field(j, "radius");
  if (!v.is_number() || !r.is_number()) throw InvalidInput("height fields must be numbers");
  return ApproxReal(v.get<double>(), r.get<double>());
}

IntTriple triple_from_json(const Json& j) {
  if (!j.is_array() || j.size() != 3) throw InvalidInput("a cubic point is a list of three integers: " + j.dump());
  return IntTriple{bigint_from_json(j[0]), bigint_from_json(j[1]), bigint_from_json(j[2])};
}

CubicPoint cubic_from_json(const CurveConfig& cfg, const Json& j) {
  const IntTriple t = triple_from_json(j);
  return CubicPoint::make(cfg, t.x, t.y, t.z);
}

WeierstrassPoint weierstrass_from_json(const CurveConfig& cfg, const Json& j) {
  if (j.is_string() && j.get<std::string>() == "infinity") return WeierstrassPoint::infinity();
  auto rat = [](const Json& v) {
    if (v.is_string()) return parse_bigrat(v.get<std::string>());
    return BigRat(bigint_from_json(v));
  };
  return WeierstrassPoint::make(cfg, rat(field(j, "X")), rat(field(j, "Y")));
}

std::vector<CubicPoint> generators_from_json(const CurveConfig& cfg, const Json& j) {
  if (!j.is_array()) throw InvalidInput("generators file must hold a JSON list of cubic triples");
  std::vector<CubicPoint> out;
  for (const auto& e : j) out.push_back(cubic_from_json(cfg, e));
  if (out.empty()) throw InvalidInput("empty generator list");
  return out;
}

// --- certificates ------------------------------------------------------------

Json certificate_to_json(const Certificate& cert, const CertificateMetadata& meta) {
  Json j;
  j["schema_version"] = kSchemaVersion;
  j["metadata"] = Json{{"tool", meta.tool}, {"version", meta.version}, {"timestamp", meta.timestamp}};
  j["m0"] = to_string(cert.m0);
  j["r"] = cert.r;
  j["N"] = cert.N;
  j["tol"] = cert.tol;
  Json gens = Json::array();
  for (const auto& g : cert.generators) gens.push_back(to_json(g));
  j["generators"] = std::move(gens);
  j["regulator"] = cert.regulator ? to_json(*cert.regulator) : Json(nullptr);
  j["hhat_bar"] = to_json(cert.hhat_bar);
  Json lattice = Json::array();
  for (const auto& lp : cert.lattice_points) lattice.push_back(Json{{"index", lp.index}, {"point", to_json(lp.point)}});
  j["lattice_points"] = std::move(lattice);
  j["m"] = to_string(cert.m);
  Json reps = Json::array();
  for (const auto& [X, Y] : cert.representations) reps.push_back(string_pair(X, Y));
  j["representations"] = std::move(reps);
  const TheoremConstants& k = cert.constants;
  j["constants"] = Json{{"r", k.r},
                        {"A", to_string(k.A)},
                        {"K1", to_string(k.K1)},
                        {"K2", to_string(k.K2)},
                        {"c_m0", to_json(k.c_m0)},
                        {"N_min", k.N_min}};
  j["log_m"] = to_json(cert.log_m);
  j["bound_rhs"] = to_json(cert.bound_rhs);
  Json checks = Json::object();
  for (const auto& [name, ok] : cert.checks) checks[name] = ok;
  j["checks"] = std::move(checks);
  return j;
}

bool VerificationReport::check(const std::string& name) const {
  for (const auto& [n, v] : checks)
    if (n == name) return v;
  throw InvalidInput("unknown check: " + name);
}

bool VerificationReport::integrity_ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return is_theorem_check(c.first) || c.second; });
}

bool VerificationReport::theorem_applicable() const { return check("theorem_preconditions"); }

bool VerificationReport::theorem_ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return !is_theorem_check(c.first) || c.second; });
}

std::vector<std::string> VerificationReport::failures() const {
  std::vector<std::string> out;
  for (const auto& [n, v] : checks)
    if (!v) out.push_back(n);
  return out;
}

int VerificationReport::exit_code(bool strict) const {
  if (!integrity_ok()) return 1;
  if ((strict || theorem_applicable()) && !theorem_ok()) return 1;
  return 0;
}

VerificationReport verify_certificate(const Json& file, std::size_t digit_budget) {
  if (!file.is_object()) throw InvalidInput("certificate must be a JSON object");
  const Json& version = field(file, "schema_version");
  if (!version.is_string() || version.get<std::string>() != kSchemaVersion)
    throw InvalidInput("unsupported schema_version " + version.dump());

  const BigInt m0 = bigint_from_json(field(file, "m0"));
  const CurveConfig cfg(m0);
  const std::int64_t r = int_from_json(field(file, "r"), "r");
  const std::int64_t N = int_from_json(field(file, "N"), "N");
  const Json& tol_json = field(file, "tol");
  if (!tol_json.is_number()) throw InvalidInput("tol must be a number");
  const double tol = tol_json.get<double>();

  const Json& gens_json = field(file, "generators");
  if (!gens_json.is_array() || gens_json.empty()) throw InvalidInput("empty generator list");
  std::vector<IntTriple> raw_gens;
  for (const auto& g : gens_json) raw_gens.push_back(triple_from_json(g));
  if (static_cast<std::int64_t>(raw_gens.size()) != r) throw InvalidInput("r does not match the generator count");
  if (N < 1) throw InvalidInput("N must be >= 1");

  struct StoredPoint {
    std::vector<std::int64_t> index;
    IntTriple t;
  };
  std::vector<StoredPoint> stored_lattice;
  for (const auto& lp : field(file, "lattice_points")) {
    StoredPoint sp;
    for (const auto& i : field(lp, "index")) sp.index.push_back(int_from_json(i, "index"));
    sp.t = triple_from_json(field(lp, "point"));
    stored_lattice.push_back(std::move(sp));
  }
  const BigInt stored_m = bigint_from_json(field(file, "m"));
  std::vector<Representation> stored_reps;
  for (const auto& rep : field(file, "representations")) {
    if (!rep.is_array() || rep.size() != 2) throw InvalidInput("a representation is a pair of integers");
    stored_reps.emplace_back(bigint_from_json(rep[0]), bigint_from_json(rep[1]));
  }
  const Json& stored_constants = field(file, "constants");
  const Json& stored_checks = field(file, "checks");

  VerificationReport report;
  auto add = [&](const std::string& name, bool ok) { report.checks.emplace_back(name, ok); };

  // Generators.
  bool gens_on_curve = true, gens_primitive = true;
  for (const auto& g : raw_gens) {
    gens_on_curve = gens_on_curve && on_cubic(cfg, g.x, g.y, g.z);
    gens_primitive = gens_primitive && g.z != 0 && to_primitive(g.x, g.y, g.z) == g;
  }
  add("generators_on_curve", gens_on_curve);
  add("generators_primitive", gens_primitive);

  std::optional<Certificate> rebuilt;
  if (gens_on_curve && gens_primitive) {
    std::vector<CubicPoint> gens;
    for (const auto& g : raw_gens) gens.push_back(CubicPoint::make(cfg, g.x, g.y, g.z));
    try {
      rebuilt = build_certificate(cfg, gens, N, tol, digit_budget);
    } catch (const PrecisionBudgetExceeded&) {
      throw;
    } catch (const InvalidInput&) {
      // not independent, or a relation among the generators
    }
  }
  add("generators_independent", rebuilt.has_value());

  // Lattice points as stored.
  const std::int64_t expected_count = rebuilt ? static_cast<std::int64_t>(rebuilt->lattice_points.size()) : -1;
  bool lattice_valid = true;
  for (const auto& sp : stored_lattice) {
    const auto& t = sp.t;
    lattice_valid = lattice_valid && t.z != 0 && on_cubic(cfg, t.x, t.y, t.z) && to_primitive(t.x, t.y, t.z) == t &&
                    static_cast<std::int64_t>(sp.index.size()) == r &&
                    std::all_of(sp.index.begin(), sp.index.end(), [N](auto n) { return n >= 1 && n <= N; });
  }
  bool lattice_match = rebuilt && static_cast<std::int64_t>(stored_lattice.size()) == expected_count;
  for (std::size_t i = 0; lattice_match && i < stored_lattice.size(); ++i)
    lattice_match = stored_lattice[i].index == rebuilt->lattice_points[i].index &&
                    stored_lattice[i].t == rebuilt->lattice_points[i].point.triple();
  add("lattice_points_valid", lattice_valid);
  add("lattice_points_match", lattice_match);
  {
    std::vector<IntTriple> pts;
    for (const auto& sp : stored_lattice) pts.push_back(sp.t);
    auto key = [](const IntTriple& t) { return to_string(t.x) + "," + to_string(t.y) + "," + to_string(t.z); };
    std::vector<std::string> keys;
    for (const auto& t : pts) keys.push_back(key(t));
    std::sort(keys.begin(), keys.end());
    add("lattice_points_distinct", std::adjacent_find(keys.begin(), keys.end()) == keys.end());
  }

  // Divisor bound on every stored lattice point.
  bool divisibility = lattice_valid, bound = lattice_valid;
  if (lattice_valid) {
    for (const auto& sp : stored_lattice) {
      const DivisorCheck dc = lemma1_check(cfg, CubicPoint::make(cfg, sp.t.x, sp.t.y, sp.t.z));
      divisibility = divisibility && dc.divisibility_pass;
      bound = bound && dc.bound_pass;
    }
  }
  add("lemma1_divisibility", divisibility);
  add("lemma1_bound", bound);

  // m = m0 prod z^3 over the stored lattice, and equal to the rebuilt m.
  {
    BigInt prod = 1;
    for (const auto& sp : stored_lattice) prod *= sp.t.z;
    const bool from_stored = stored_m == BigInt(m0 * prod * prod * prod);
    add("m_product", from_stored && rebuilt && rebuilt->m == stored_m);
  }

  // Representations: exact identities on the stored numbers.
  bool identities = !stored_reps.empty();
  for (const auto& [X, Y] : stored_reps) identities = identities && BigInt(X * X * X + Y * Y * Y) == stored_m;
  add("representation_identities", identities);
  add("representations_match", rebuilt && rebuilt->representations == stored_reps);
  {
    std::vector<Representation> sorted = stored_reps;
    std::sort(sorted.begin(), sorted.end());
    add("representations_distinct", std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end());
  }
  {
    BigInt n_r;
    mpz_ui_pow_ui(n_r.get_mpz_t(), static_cast<unsigned long>(N), static_cast<unsigned long>(r));
    add("representation_count", n_r == static_cast<unsigned long>(stored_reps.size()));
  }

  // Constants and heights, recomputed.
  bool constants_match = false;
  if (rebuilt) {
    const TheoremConstants& k = rebuilt->constants;
    constants_match = bigint_from_json(field(stored_constants, "A")) == k.A &&
                      bigint_from_json(field(stored_constants, "K1")) == k.K1 &&
                      bigint_from_json(field(stored_constants, "K2")) == k.K2 &&
                      int_from_json(field(stored_constants, "N_min"), "N_min") == k.N_min &&
                      overlaps(approx_from_json(field(stored_constants, "c_m0")), k.c_m0) &&
                      overlaps(approx_from_json(field(file, "hhat_bar")), rebuilt->hhat_bar);
  }
  add("constants_match", constants_match);

  for (const char* name : {"qn_height_bound", "log_z_height_bound", "log_m_two_ways"})
    add(name, rebuilt && rebuilt->check(name));

  // The transcript's own claims must agree with the recomputation.
  bool transcript = rebuilt.has_value() && stored_checks.is_object();
  if (transcript) {
    for (const auto& [name, ok] : rebuilt->checks) {
      if (!stored_checks.contains(name) || !stored_checks.at(name).is_boolean() ||
          stored_checks.at(name).get<bool>() != ok) {
        transcript = false;
        break;
      }
    }
  }
  add("transcript_consistent", transcript);

  for (const char* name : kTheoremChecks) add(name, rebuilt && rebuilt->check(name));
  return report;
}

Json to_json(const VerificationReport& report, bool strict) {
  Json checks = Json::object();
  for (const auto& [name, ok] : report.checks) checks[name] = ok;
  return Json{{"verified", report.exit_code(strict) == 0},
              {"integrity_ok", report.integrity_ok()},
              {"theorem_applicable", report.theorem_applicable()},
              {"theorem_ok", report.theorem_ok()},
              {"strict", strict},
              {"checks", std::move(checks)},
              {"failures", report.failures()}};
}

Json to_json(const CorollaryReport& report) {
  return Json{{"r", report.r},
              {"hB", to_json(report.hB)},
              {"hx_max", to_json(report.hx_max)},
              {"hhat_bar_upper_bound", to_json(report.hhat_bar)},
              {"K2", to_string(report.K2)},
              {"exponent", std::to_string(report.r) + "/" + std::to_string(report.r + 2)},
              {"constant", to_json(report.constant)},
              {"claimed", report.claimed},
              {"pass", report.pass}};
}

}  // namespace cubeforge
