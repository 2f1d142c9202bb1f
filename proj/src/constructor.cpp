#include "cubeforge/constructor.hpp"

#include <algorithm>
#include <cmath>

#include "cubeforge/detail/parallel.hpp"
#include "cubeforge/errors.hpp"

namespace cubeforge {

namespace {

constexpr std::int64_t kMaxLatticeSize = 1'000'000;

BigInt pow2(unsigned long e) {
  BigInt r;
  mpz_ui_pow_ui(r.get_mpz_t(), 2, e);
  return r;
}

BigInt ipow(const BigInt& base, unsigned long e) {
  BigInt r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

void require_rank(int r) {
  if (r < 1 || r > 60) throw InvalidInput("rank r must be in [1, 60]");
}

// Balanced product so the cost stays near-linear in the output size.
BigInt product(const std::vector<BigInt>& v, std::size_t lo, std::size_t hi) {
  if (hi - lo == 0) return 1;
  if (hi - lo == 1) return v[lo];
  const std::size_t mid = lo + (hi - lo) / 2;
  return product(v, lo, mid) * product(v, mid, hi);
}

std::int64_t checked_lattice_size(std::size_t r, std::int64_t N) {
  std::int64_t total = 1;
  for (std::size_t i = 0; i < r; ++i) {
    if (total > kMaxLatticeSize / N) throw InvalidInput("N^r exceeds the lattice size limit");
    total *= N;
  }
  return total;
}

bool triple_less(const CubicPoint& a, const CubicPoint& b) {
  if (int c = cmp(a.z(), b.z())) return c < 0;
  if (int c = cmp(a.x(), b.x())) return c < 0;
  return cmp(a.y(), b.y()) < 0;
}

}  // namespace

// --- divisor bound -----------------------------------------------------------

DivisorCheck lemma1_check(const CurveConfig& cfg, const CubicPoint& p) {
  if (p.is_identity()) throw InvalidInput("identity point excluded");
  DivisorCheck out{p, 0, 0, 0, {}, std::nullopt, false, false};
  const BigInt u = 12 * cfg.m0() * p.z();
  const BigInt s = p.x() + p.y();
  mpz_gcd(out.d.get_mpz_t(), u.get_mpz_t(), s.get_mpz_t());
  out.a = u / out.d;
  out.b = s / out.d;

  const BigInt target = 3 * 1728 * cfg.m0() * cfg.m0() * out.b;
  out.divisibility_pass = mpz_divisible_p(target.get_mpz_t(), BigInt(out.d * out.d).get_mpz_t()) != 0;

  const BigInt am0 = abs(cfg.m0());
  const BigInt az = abs(p.z());
  out.bound_pass = ipow(out.d, 6) < BigInt(9 * ipow(12, 6) * ipow(am0, 15) * ipow(az, 3));

  out.log_bound = log(ApproxReal::exact(3.0)) / ApproxReal::exact(3.0) + log(ApproxReal::exact(12.0)) +
                  ApproxReal::exact(2.5) * log_abs(am0) + ApproxReal::exact(0.5) * log_abs(az);
  if (out.log_bound.upper() < 700.0) out.bound = exp(out.log_bound);
  return out;
}

// --- constants -----------------------------------------------------------------

ApproxReal c_m0(const CurveConfig& cfg) {
  const ApproxReal two_thirds = ApproxReal::exact(2.0) / ApproxReal::exact(3.0);
  return two_thirds * cfg.hB() + ApproxReal::from_decimal(5.92) + two_thirds * log(ApproxReal::exact(3.0)) +
         ApproxReal::exact(3.0) * log_abs(cfg.m0());
}

BigInt coeff_A(int r) {
  require_rank(r);
  return 3 * pow2(r - 1) - 2;
}

BigInt coeff_K1(int r) {
  require_rank(r);
  return 3 * pow2(r + 1) - 7;
}

BigInt coeff_K2(int r) {
  require_rank(r);
  return 9 * pow2(r + 1) - 20;
}

TheoremConstants theorem_constants(const CurveConfig& cfg, int r, double hhat_bar_up) {
  if (!(hhat_bar_up > 0.0)) throw InvalidInput("hhat(Pbar) must be positive");
  TheoremConstants k;
  k.r = r;
  k.A = coeff_A(r);
  k.K1 = coeff_K1(r);
  k.K2 = coeff_K2(r);
  k.c_m0 = c_m0(cfg);
  const ApproxReal h = ApproxReal::exact(hhat_bar_up);
  const ApproxReal log_m0 = log_abs(cfg.m0());
  for (std::int64_t n = 1;; ++n) {
    const BigInt nb = n;
    const ApproxReal n2 = ApproxReal::from_bigint(BigInt(nb * nb));
    const ApproxReal nr2 = ApproxReal::from_bigint(ipow(nb, static_cast<unsigned long>(r + 2)));
    if (certainly_leq(k.c_m0, n2 * h) && certainly_leq(log_m0, nr2 * h)) {
      k.N_min = n;
      break;
    }
    if (n > 100'000'000) throw InvalidInput("N_min out of range; hhat(Pbar) is too small");
  }
  return k;
}

ApproxReal corollary_constant(int r, const ApproxReal& hhat_bar) {
  require_rank(r);
  if (!(hhat_bar.lower() > 0.0)) throw InvalidInput("hhat(Pbar) must be positive");
  const ApproxReal e = ApproxReal::exact(-r) / ApproxReal::exact(r + 2);
  return pow(ApproxReal::from_bigint(coeff_K2(r)) * hhat_bar, e);
}

CorollaryReport certify_corollary(const ApproxReal& hB, const ApproxReal& hx_max, int r, double claimed) {
  CorollaryReport rep;
  rep.r = r;
  rep.hB = hB;
  rep.hx_max = hx_max;
  rep.hhat_bar = hB / ApproxReal::exact(6.0) + ldexp(hx_max, -1) + ApproxReal::from_decimal(1.576);
  rep.K2 = coeff_K2(r);
  // The constant decreases in hhat, so the upper end gives a valid lower bound.
  rep.constant = corollary_constant(r, ApproxReal::exact(rep.hhat_bar.upper()));
  rep.claimed = claimed;
  rep.pass = rep.constant.lower() >= claimed;
  return rep;
}

// --- lattice -------------------------------------------------------------------

std::vector<LatticePoint> generate_lattice_points(const CurveConfig& cfg, const std::vector<CubicPoint>& generators,
                                                  std::int64_t N) {
  if (generators.empty()) throw InvalidInput("at least one generator is required");
  if (N < 1) throw InvalidInput("N must be >= 1");
  const std::size_t r = generators.size();
  const std::int64_t total = checked_lattice_size(r, N);

  // multiples[i][n - 1] = [n] phi(P_i)
  std::vector<std::vector<WeierstrassPoint>> multiples(r);
  for (std::size_t i = 0; i < r; ++i) {
    if (generators[i].is_identity()) throw InvalidInput("generators not independent (torsion relation hit)");
    const WeierstrassPoint base = phi(cfg, generators[i]);
    WeierstrassPoint acc = base;
    multiples[i].push_back(acc);
    for (std::int64_t n = 2; n <= N; ++n) {
      acc = add(cfg, acc, base);
      multiples[i].push_back(acc);
    }
  }

  std::vector<std::int64_t> idx(r, 1);
  std::vector<LatticePoint> out;
  out.reserve(static_cast<std::size_t>(total));
  for (std::int64_t t = 0; t < total; ++t) {
    WeierstrassPoint sum;
    for (std::size_t i = 0; i < r; ++i) sum = add(cfg, sum, multiples[i][idx[i] - 1]);
    if (sum.is_infinity()) throw InvalidInput("generators not independent (torsion relation hit)");
    out.push_back({idx, phi_inv(cfg, sum)});
    for (std::size_t i = r; i-- > 0;) {  // odometer, last index fastest
      if (++idx[i] <= N) break;
      idx[i] = 1;
    }
  }

  std::vector<const CubicPoint*> sorted;
  for (const auto& lp : out) sorted.push_back(&lp.point);
  std::sort(sorted.begin(), sorted.end(), [](auto* a, auto* b) { return triple_less(*a, *b); });
  for (std::size_t i = 1; i < sorted.size(); ++i)
    if (*sorted[i] == *sorted[i - 1]) throw InvalidInput("generators not independent (torsion relation hit)");
  return out;
}

HeightValue hhat_bar(const CurveConfig& cfg, const std::vector<CubicPoint>& generators, double tol,
                     std::size_t digit_budget) {
  if (generators.empty()) throw InvalidInput("at least one generator is required");
  std::optional<HeightValue> best;
  for (const auto& g : generators) {
    const HeightValue h = canonical_height(cfg, phi(cfg, g), tol, digit_budget);
    if (!best || h.upper() > best->upper()) best = h;
  }
  return *best;
}

namespace {

std::vector<HeightValue> lattice_heights(const CurveConfig& cfg, const std::vector<LatticePoint>& lattice, double tol,
                                         std::size_t digit_budget) {
  return detail::parallel_map<HeightValue>(lattice.size(), [&](std::size_t i) {
    return canonical_height(cfg, phi(cfg, lattice[i].point), tol, digit_budget);
  });
}

bool qn_bound_holds(const std::vector<HeightValue>& heights, const BigInt& A, std::int64_t N, double hbar_up) {
  const ApproxReal rhs = ApproxReal::from_bigint(BigInt(A * N * N)) * ApproxReal::exact(hbar_up);
  return std::all_of(heights.begin(), heights.end(), [&](const HeightValue& h) { return possibly_leq(h, rhs); });
}

}  // namespace

bool qn_height_bound_check(const CurveConfig& cfg, const std::vector<CubicPoint>& generators,
                           const std::vector<LatticePoint>& lattice, std::int64_t N, double tol,
                           std::size_t digit_budget) {
  const double up = hhat_bar(cfg, generators, tol, digit_budget).upper();
  const int r = static_cast<int>(generators.size());
  return qn_bound_holds(lattice_heights(cfg, lattice, tol, digit_budget), coeff_A(r), N, up);
}

// --- representations and certificate --------------------------------------------

std::vector<Representation> representations_of(const BigInt& m0, const std::vector<LatticePoint>& lattice,
                                               BigInt* m_out) {
  std::vector<BigInt> zs;
  zs.reserve(lattice.size());
  for (const auto& lp : lattice) zs.push_back(lp.point.z());
  const BigInt all = product(zs, 0, zs.size());
  if (m_out) *m_out = m0 * all * all * all;
  std::vector<Representation> reps;
  reps.reserve(lattice.size());
  for (const auto& lp : lattice) {
    BigInt cof;
    mpz_divexact(cof.get_mpz_t(), all.get_mpz_t(), lp.point.z().get_mpz_t());
    reps.emplace_back(lp.point.x() * cof, lp.point.y() * cof);
  }
  return reps;
}

bool is_theorem_check(const std::string& name) {
  return std::find(std::begin(kTheoremChecks), std::end(kTheoremChecks), name) != std::end(kTheoremChecks);
}

bool Certificate::check(const std::string& name) const {
  for (const auto& [n, v] : checks)
    if (n == name) return v;
  throw InvalidInput("unknown check: " + name);
}

bool Certificate::integrity_ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return is_theorem_check(c.first) || c.second; });
}

bool Certificate::all_ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const auto& c) { return c.second; });
}

Certificate build_certificate(const CurveConfig& cfg, const std::vector<CubicPoint>& generators, std::int64_t N,
                              double tol, std::size_t digit_budget) {
  if (generators.empty()) throw InvalidInput("at least one generator is required");
  for (const auto& g : generators)
    if (g.is_identity()) throw InvalidInput("the identity cannot be a generator");

  Certificate c;
  c.m0 = cfg.m0();
  c.r = static_cast<int>(generators.size());
  c.N = N;
  c.tol = tol;
  c.generators = generators;

  std::vector<WeierstrassPoint> images;
  for (const auto& g : generators) images.push_back(phi(cfg, g));
  const IndependenceResult ind = independence(cfg, images, tol, digit_budget);
  if (!ind.independent) throw InvalidInput("generators not certified independent");
  c.regulator = ind.regulator;
  c.hhat_bar = hhat_bar(cfg, generators, tol, digit_budget);
  const double hup = c.hhat_bar.upper();

  c.lattice_points = generate_lattice_points(cfg, generators, N);
  c.representations = representations_of(cfg.m0(), c.lattice_points, &c.m);

  // Exact identities; a failure here is a bug, not a failed check.
  for (const auto& [X, Y] : c.representations)
    if (BigInt(X * X * X + Y * Y * Y) != c.m) throw InvariantBreach("representation fails X^3 + Y^3 = m");
  std::vector<Representation> sorted = c.representations;
  std::sort(sorted.begin(), sorted.end());
  const bool distinct = std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end();

  bool divisibility = true, bound = true;
  for (const auto& lp : c.lattice_points) {
    const DivisorCheck dc = lemma1_check(cfg, lp.point);
    divisibility = divisibility && dc.divisibility_pass;
    bound = bound && dc.bound_pass;
  }

  c.constants = theorem_constants(cfg, c.r, hup);
  const std::vector<HeightValue> heights = lattice_heights(cfg, c.lattice_points, tol, digit_budget);
  bool log_z_ok = true;
  ApproxReal sum_log_z = ApproxReal::exact(0.0);
  for (std::size_t i = 0; i < c.lattice_points.size(); ++i) {
    const ApproxReal lz = log_abs(c.lattice_points[i].point.z());
    sum_log_z += lz;
    log_z_ok = log_z_ok && possibly_leq(lz, ApproxReal::exact(4.0) * heights[i] + c.constants.c_m0);
  }
  c.log_m = log_abs(c.m);
  const ApproxReal log_m_alt = ApproxReal::exact(3.0) * sum_log_z + log_abs(cfg.m0());

  const BigInt n_r = ipow(BigInt(N), static_cast<unsigned long>(c.r));
  const BigInt n_r2 = ipow(BigInt(N), static_cast<unsigned long>(c.r + 2));
  const ApproxReal h = ApproxReal::exact(hup);
  const ApproxReal e = ApproxReal::exact(c.r) / ApproxReal::exact(c.r + 2);
  c.bound_rhs = pow(c.log_m / (ApproxReal::from_bigint(c.constants.K2) * h), e);

  c.checks = {
      {"generators_on_curve", true},
      {"generators_primitive", true},
      {"generators_independent", ind.independent},
      {"lattice_points_valid", true},
      {"lattice_points_distinct", true},
      {"lemma1_divisibility", divisibility},
      {"lemma1_bound", bound},
      {"m_product", true},
      {"representation_identities", true},
      {"representations_distinct", distinct},
      {"representation_count", c.representations.size() == n_r},
      {"qn_height_bound", qn_bound_holds(heights, c.constants.A, N, hup)},
      {"log_z_height_bound", log_z_ok},
      {"log_m_two_ways", overlaps(c.log_m, log_m_alt)},
      {"theorem_preconditions", N >= c.constants.N_min},
      {"log_m_chain", certainly_leq(c.log_m, ApproxReal::from_bigint(c.constants.K2) *
                                                  ApproxReal::from_bigint(n_r2) * h)},
      {"final_inequality", certainly_less(c.bound_rhs, ApproxReal::from_bigint(n_r))},
  };
  return c;
}

}  // namespace cubeforge
