#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "cubeforge/curve.hpp"
#include "cubeforge/heights.hpp"
#include "cubeforge/numeric.hpp"

namespace cubeforge {

/// Exhaustive list of ordered pairs (x, y) with x^3 + y^3 = m.
struct RepCensus {
  BigInt m;
  std::vector<std::pair<BigInt, BigInt>> pairs;  // sorted by x
  /// Every solution has |x| <= scan_bound = ceil(sqrt|m|).
  BigInt scan_bound;

  std::size_t ordered_count() const noexcept { return pairs.size(); }
  bool contains(const BigInt& x, const BigInt& y) const;
};

/// Brute-force census. Same-sign solutions have |x|, |y| <= |m|^(1/3);
/// opposite-sign ones satisfy |m| = |x - w| (x^2 + x w + w^2) >= x^2 with
/// w = -y, so scanning |x| <= ceil(sqrt|m|) and testing m - x^3 for a cube
/// is exhaustive. Throws InvalidInput for m = 0.
RepCensus count_reps(const BigInt& m);

/// All primitive cubic points with 1 <= z <= zmax, sorted by z then x.
std::vector<CubicPoint> search_points(const CurveConfig& cfg, std::int64_t zmax);

/// True iff hhat(P) <= tol and [k]P = O for some 1 <= k <= 12.
bool torsion_probe(const CurveConfig& cfg, const WeierstrassPoint& p, double tol,
                   std::size_t digit_budget = kDefaultDigitBudget);

}  // namespace cubeforge
