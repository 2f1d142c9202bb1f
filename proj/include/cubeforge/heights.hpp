#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "cubeforge/curve.hpp"
#include "cubeforge/numeric.hpp"

namespace cubeforge {

/// A height together with a rigorous error radius.
using HeightValue = ApproxReal;

inline constexpr double kDefaultTol = 1e-3;
inline constexpr std::size_t kDefaultDigitBudget = 2'000'000;

/// Silverman's explicit window for y^2 = x^3 + B:
///   -h(B)/6 - 1.48 <= hhat(P) - h_x(P)/2 <= h(B)/6 + 1.576.
ApproxReal lemma3_lower(const CurveConfig& cfg);
ApproxReal lemma3_upper(const CurveConfig& cfg);
/// Width bound C = h(B)/6 + 1.576 on |hhat - h_x/2|; the upper side is the
/// wider one.
ApproxReal lemma3_constant(const CurveConfig& cfg);

/// Smallest k with C / 4^k <= tol.
int doublings_for(const CurveConfig& cfg, double tol);

/// h_x: log max(|p|, |q|) for X = p/q in lowest terms; 0 at infinity.
HeightValue naive_height(const WeierstrassPoint& q);
HeightValue naive_height(const BigRat& x);

/// x-coordinate of [2]P from the x-coordinate of P:
///   X' = X (X^3 - 8B) / (4 (X^3 + B)).
/// Empty when [2]P is the point at infinity.
std::optional<BigRat> double_x(const CurveConfig& cfg, const BigRat& x);

/// Canonical height hhat(P) = 1/2 lim 4^-k h_x([2^k]P).
///
/// Evaluated as 1/2 4^-k h_x([2^k]P) for the least k with C/4^k <= tol. The
/// window bounds |hhat([2^k]P) - h_x([2^k]P)/2| by C, and hhat scales by 4
/// under doubling, so the truncation error is at most C/4^k. The radius of
/// the result covers that tail plus the floating-point error in the final
/// logarithm. Doubling runs on exact rationals.
///
/// Throws PrecisionBudgetExceeded if a coordinate of [2^j]P would exceed
/// `digit_budget` decimal digits; the exception reports the tolerance the
/// budget can reach.
HeightValue canonical_height(const CurveConfig& cfg, const WeierstrassPoint& p, double tol,
                             std::size_t digit_budget = kDefaultDigitBudget);

/// <P, Q> = hhat(P + Q) - hhat(P) - hhat(Q).
HeightValue pairing(const CurveConfig& cfg, const WeierstrassPoint& p, const WeierstrassPoint& q, double tol,
                    std::size_t digit_budget = kDefaultDigitBudget);

/// Symmetric matrix of pairings <P_i, P_j> over a point list.
class GramMatrix {
 public:
  GramMatrix() = default;
  GramMatrix(std::vector<WeierstrassPoint> points, std::vector<HeightValue> entries);

  std::size_t size() const noexcept { return points_.size(); }
  const HeightValue& operator()(std::size_t i, std::size_t j) const { return entries_[i * size() + j]; }
  const std::vector<WeierstrassPoint>& points() const noexcept { return points_; }

  /// Interval Gaussian elimination. Returns det / 2^r when every pivot is
  /// certified positive, otherwise nothing.
  std::optional<ApproxReal> certified_regulator() const;

 private:
  std::vector<WeierstrassPoint> points_;
  std::vector<HeightValue> entries_;
};

struct IndependenceResult {
  GramMatrix gram;
  /// Present when positive definiteness was certified.
  std::optional<ApproxReal> regulator;
  /// True only when the regulator is certified > 0; false means
  /// "not certified independent", not "dependent".
  bool independent = false;
};

IndependenceResult independence(const CurveConfig& cfg, std::span<const WeierstrassPoint> points, double tol,
                                std::size_t digit_budget = kDefaultDigitBudget);

/// True iff hhat(P) - h_x(P)/2, enclosed with radius about tol, meets the
/// explicit window.
bool lemma3_window(const CurveConfig& cfg, const WeierstrassPoint& p, double tol,
                   std::size_t digit_budget = kDefaultDigitBudget);

}  // namespace cubeforge
