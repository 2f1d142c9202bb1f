#include "cubeforge/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <fstream>
#include <ostream>
#include <sstream>

#include "cubeforge/certificate_io.hpp"
#include "cubeforge/constructor.hpp"
#include "cubeforge/errors.hpp"
#include "cubeforge/heights.hpp"
#include "cubeforge/oracle.hpp"

#ifndef CUBEFORGE_VERSION
#define CUBEFORGE_VERSION "0.0.0"
#endif

namespace cubeforge {

namespace {

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> parts;
  std::string cur;
  std::istringstream in(s);
  while (std::getline(in, cur, sep)) parts.push_back(cur);
  if (!s.empty() && s.back() == sep) parts.emplace_back();
  return parts;
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return Json::parse(in);
  } catch (const Json::parse_error& e) {
    throw InvalidInput(path + ": " + e.what());
  }
}

void write_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw InvalidInput("cannot write " + path);
  out << text;
}

// SOURCE_DATE_EPOCH pins the timestamp for reproducible certificates.
std::string timestamp_now() {
  std::time_t t;
  if (const char* epoch = std::getenv("SOURCE_DATE_EPOCH")) {
    t = static_cast<std::time_t>(parse_bigint(epoch).get_si());
  } else {
    t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  }
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

double parse_real(const std::string& s, const char* what) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != s.size()) throw InvalidInput(std::string("bad number for ") + what + ": '" + s + "'");
  return v;
}

struct Options {
  std::string m0 = "";
  std::string m = "";
  std::string point;
  std::string file;
  std::string out_path;
  std::int64_t zmax = 0;
  std::int64_t N = 0;
  double tol = kDefaultTol;
  bool unordered = false;
  bool strict = false;
  std::string hB, hxmax, corollary_m0;
  int r = 0;
  double claimed = 4.2e-6;
  std::int64_t digit_budget = 0;
};

int cmd_search(const Options& o, std::ostream& out) {
  const CurveConfig cfg(parse_bigint(o.m0));
  Json list = Json::array();
  for (const auto& p : search_points(cfg, o.zmax)) list.push_back(to_json(p));
  out << list.dump(2) << '\n';
  return kExitOk;
}

int cmd_phi(const Options& o, std::ostream& out) {
  const CurveConfig cfg(parse_bigint(o.m0));
  const auto parts = split(o.point, ',');
  if (parts.size() != 3) throw InvalidInput("--point expects x,y,z");
  const CubicPoint p = CubicPoint::make(cfg, parse_bigint(parts[0]), parse_bigint(parts[1]), parse_bigint(parts[2]));
  out << Json{{"point", to_json(p)}, {"image", to_json(phi(cfg, p))}}.dump(2) << '\n';
  return kExitOk;
}

int cmd_height(const Options& o, std::size_t budget, std::ostream& out) {
  const CurveConfig cfg(parse_bigint(o.m0));
  WeierstrassPoint p;
  if (o.point != "infinity") {
    const auto parts = split(o.point, ',');
    if (parts.size() != 2) throw InvalidInput("--point expects X,Y (rationals p/q allowed) or 'infinity'");
    p = WeierstrassPoint::make(cfg, parse_bigrat(parts[0]), parse_bigrat(parts[1]));
  }
  Json j{{"point", to_json(p)},
         {"tol", o.tol},
         {"doublings", doublings_for(cfg, o.tol)},
         {"naive_height", to_json(naive_height(p))},
         {"canonical_height", to_json(canonical_height(cfg, p, o.tol, budget))}};
  if (!p.is_infinity()) j["lemma3_window"] = lemma3_window(cfg, p, o.tol, budget);
  out << j.dump(2) << '\n';
  return kExitOk;
}

int cmd_independence(const Options& o, std::size_t budget, std::ostream& out) {
  const CurveConfig cfg(parse_bigint(o.m0));
  const Json file = read_json_file(o.file);
  if (!file.is_array() || file.empty()) throw InvalidInput("points file must be a nonempty JSON list");
  // Cubic triples are mapped through phi; Weierstrass objects are taken as is.
  std::vector<WeierstrassPoint> pts;
  for (const auto& e : file) pts.push_back(e.is_array() ? phi(cfg, cubic_from_json(cfg, e)) : weierstrass_from_json(cfg, e));
  const IndependenceResult res = independence(cfg, pts, o.tol, budget);
  Json points = Json::array();
  for (const auto& p : pts) points.push_back(to_json(p));
  out << Json{{"points", std::move(points)},
              {"tol", o.tol},
              {"gram", to_json(res.gram)},
              {"regulator", res.regulator ? to_json(*res.regulator) : Json(nullptr)},
              {"independent", res.independent}}
             .dump(2)
      << '\n';
  return res.independent ? kExitOk : kExitCheckFailed;
}

int cmd_construct(const Options& o, std::size_t budget, std::ostream& out) {
  const CurveConfig cfg(parse_bigint(o.m0));
  const auto gens = generators_from_json(cfg, read_json_file(o.file));
  const Certificate cert = build_certificate(cfg, gens, o.N, o.tol, budget);
  const Json j = certificate_to_json(cert, {"cubeforge", CUBEFORGE_VERSION, timestamp_now()});
  if (o.out_path.empty()) {
    out << j.dump(2) << '\n';
  } else {
    write_file(o.out_path, j.dump(2) + "\n");
    Json checks = Json::object();
    for (const auto& [n, ok] : cert.checks) checks[n] = ok;
    out << Json{{"certificate", o.out_path},
                {"m", to_string(cert.m)},
                {"representations", cert.representations.size()},
                {"N_min", cert.constants.N_min},
                {"checks", std::move(checks)}}
               .dump(2)
        << '\n';
  }
  if (!cert.integrity_ok()) return kExitCheckFailed;
  if (cert.check("theorem_preconditions") && !cert.all_ok()) return kExitCheckFailed;
  return kExitOk;
}

int cmd_verify(const Options& o, std::size_t budget, std::ostream& out, std::ostream& err) {
  const VerificationReport report = verify_certificate(read_json_file(o.file), budget);
  out << to_json(report, o.strict).dump(2) << '\n';
  const int code = report.exit_code(o.strict);
  for (const auto& name : report.failures())
    if (code != kExitOk) err << "check failed: " << name << '\n';
  return code;
}

int cmd_count(const Options& o, std::ostream& out) {
  out << to_json(count_reps(parse_bigint(o.m)), o.unordered).dump(2) << '\n';
  return kExitOk;
}

int cmd_corollary(const Options& o, std::ostream& out) {
  ApproxReal hB;
  if (!o.corollary_m0.empty()) {
    hB = CurveConfig(parse_bigint(o.corollary_m0)).hB();
  } else if (!o.hB.empty()) {
    hB = ApproxReal::from_decimal(parse_real(o.hB, "--hB"));
  } else {
    throw InvalidInput("certify-corollary needs --hB or --m0");
  }
  const ApproxReal hx = ApproxReal::from_decimal(parse_real(o.hxmax, "--hxmax"));
  const CorollaryReport rep = certify_corollary(hB, hx, o.r, o.claimed);
  out << to_json(rep).dump(2) << '\n';
  return rep.pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

std::size_t digit_budget_from_env() {
  const char* v = std::getenv("CUBEFORGE_DIGIT_BUDGET");
  if (!v) return kDefaultDigitBudget;
  const BigInt n = parse_bigint(v);
  if (n < 1 || !n.fits_slong_p()) throw InvalidInput("CUBEFORGE_DIGIT_BUDGET must be a positive integer");
  return static_cast<std::size_t>(n.get_si());
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact elliptic-curve tools for sums of two cubes", "cubeforge"};
  app.require_subcommand(1);
  app.set_version_flag("--version", CUBEFORGE_VERSION);
  Options o;
  app.add_option("--digit-budget", o.digit_budget, "Max decimal digits per coordinate during height doubling")
      ->check(CLI::PositiveNumber);

  auto* search = app.add_subcommand("search", "List primitive points with 1 <= z <= zmax");
  search->add_option("--m0", o.m0)->required();
  search->add_option("--zmax", o.zmax)->required();

  auto* phi_cmd = app.add_subcommand("phi", "Map a cubic point to the Weierstrass model");
  phi_cmd->add_option("--m0", o.m0)->required();
  phi_cmd->add_option("--point", o.point, "x,y,z")->required();

  auto* height = app.add_subcommand("height", "Naive and canonical height of a Weierstrass point");
  height->add_option("--m0", o.m0)->required();
  height->add_option("--point", o.point, "X,Y")->required();
  height->add_option("--tol", o.tol);

  auto* indep = app.add_subcommand("independence", "Certify independence through the height pairing");
  indep->add_option("--m0", o.m0)->required();
  indep->add_option("--points", o.file)->required();
  indep->add_option("--tol", o.tol);

  auto* construct = app.add_subcommand("construct", "Build a certificate for m with N^r representations");
  construct->add_option("--m0", o.m0)->required();
  construct->add_option("--generators", o.file)->required();
  construct->add_option("--N", o.N)->required();
  construct->add_option("--tol", o.tol);
  construct->add_option("--out", o.out_path);

  auto* verify = app.add_subcommand("verify", "Recompute and check every claim of a certificate");
  verify->add_option("--cert", o.file)->required();
  verify->add_flag("--strict", o.strict, "Also fail when N is below N_min");

  auto* count = app.add_subcommand("count", "Exhaustive count of x^3 + y^3 = m");
  count->add_option("--m", o.m)->required();
  count->add_flag("--unordered", o.unordered);

  auto* corollary = app.add_subcommand("certify-corollary", "Evaluate the explicit corollary constant");
  corollary->add_option("--hB", o.hB);
  corollary->add_option("--m0", o.corollary_m0, "Derive h(B) from m0 instead of --hB");
  corollary->add_option("--hxmax", o.hxmax)->required();
  corollary->add_option("--r", o.r)->required();
  corollary->add_option("--claimed", o.claimed);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::CallForHelp& e) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << CUBEFORGE_VERSION << '\n';
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }

  try {
    const std::size_t budget =
        o.digit_budget > 0 ? static_cast<std::size_t>(o.digit_budget) : digit_budget_from_env();
    if (search->parsed()) return cmd_search(o, out);
    if (phi_cmd->parsed()) return cmd_phi(o, out);
    if (height->parsed()) return cmd_height(o, budget, out);
    if (indep->parsed()) return cmd_independence(o, budget, out);
    if (construct->parsed()) return cmd_construct(o, budget, out);
    if (verify->parsed()) return cmd_verify(o, budget, out, err);
    if (count->parsed()) return cmd_count(o, out);
    if (corollary->parsed()) return cmd_corollary(o, out);
  } catch (const PrecisionBudgetExceeded& e) {
    err << "error: " << e.what() << '\n';
    return kExitPrecisionBudget;
  } catch (const InvariantBreach& e) {
    err << "error: " << e.what() << '\n';
    return kExitCheckFailed;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kExitInvalidInput;
  }
  return kExitInvalidInput;
}

}  // namespace cubeforge
