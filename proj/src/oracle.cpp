#include "cubeforge/oracle.hpp"

#include <algorithm>

#include "cubeforge/errors.hpp"

namespace cubeforge {

bool RepCensus::contains(const BigInt& x, const BigInt& y) const {
  return std::any_of(pairs.begin(), pairs.end(), [&](const auto& p) { return p.first == x && p.second == y; });
}

RepCensus count_reps(const BigInt& m) {
  if (m == 0) throw InvalidInput("infinite family (t, -t)");
  RepCensus c;
  c.m = m;
  const BigInt am = abs(m);
  mpz_sqrt(c.scan_bound.get_mpz_t(), am.get_mpz_t());
  if (BigInt(c.scan_bound * c.scan_bound) < am) ++c.scan_bound;

  BigInt rest;
  for (BigInt x = -c.scan_bound; x <= c.scan_bound; ++x) {
    rest = m - x * x * x;
    const CubeRoot cr = icbrt(rest);
    if (cr.exact) c.pairs.emplace_back(x, cr.root);
  }
  return c;
}

std::vector<CubicPoint> search_points(const CurveConfig& cfg, std::int64_t zmax) {
  if (zmax < 1) throw InvalidInput("zmax must be >= 1");
  std::vector<CubicPoint> out;
  for (std::int64_t zi = 1; zi <= zmax; ++zi) {
    const BigInt z = zi;
    const RepCensus census = count_reps(BigInt(cfg.m0() * z * z * z));
    for (const auto& [x, y] : census.pairs)
      if (gcd3(x, y, z) == 1) out.push_back(CubicPoint::make(cfg, x, y, z));
  }
  // Census order is already (z, x); the sort only pins it down.
  std::stable_sort(out.begin(), out.end(), [](const CubicPoint& a, const CubicPoint& b) {
    if (int c = cmp(a.z(), b.z())) return c < 0;
    return cmp(a.x(), b.x()) < 0;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

bool torsion_probe(const CurveConfig& cfg, const WeierstrassPoint& p, double tol, std::size_t digit_budget) {
  if (p.is_infinity()) return true;
  if (canonical_height(cfg, p, tol, digit_budget).value() > tol) return false;
  WeierstrassPoint acc = p;
  for (int k = 1; k <= 12; ++k) {
    if (acc.is_infinity()) return true;
    acc = add(cfg, acc, p);
  }
  return false;
}

}  // namespace cubeforge
