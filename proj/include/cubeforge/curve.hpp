#pragma once

#include <cstdint>
#include <iosfwd>

#include "cubeforge/numeric.hpp"

namespace cubeforge {

/// The pair of models x^3 + y^3 = m0 z^3 and Y^2 = X^3 + B with B = -432 m0^2.
class CurveConfig {
 public:
  /// Throws InvalidInput when m0 = 0.
  explicit CurveConfig(BigInt m0);

  const BigInt& m0() const noexcept { return m0_; }
  const BigInt& B() const noexcept { return b_; }
  /// h(B) = log|B|.
  const ApproxReal& hB() const noexcept { return hb_; }

 private:
  BigInt m0_;
  BigInt b_;
  ApproxReal hb_;
};

/// Primitive integer point on the cubic model. Always satisfies the curve
/// equation, gcd(x, y, z) = 1, and z > 0 unless it is the identity (1, -1, 0).
class CubicPoint {
 public:
  /// The identity [1, -1, 0].
  CubicPoint() : x_(1), y_(-1), z_(0) {}

  /// Normalizes (x, y, z) and checks it lies on the curve of `cfg`.
  static CubicPoint make(const CurveConfig& cfg, const BigInt& x, const BigInt& y, const BigInt& z);
  static CubicPoint identity() { return CubicPoint(); }

  const BigInt& x() const noexcept { return x_; }
  const BigInt& y() const noexcept { return y_; }
  const BigInt& z() const noexcept { return z_; }
  bool is_identity() const noexcept { return z_ == 0; }
  IntTriple triple() const { return {x_, y_, z_}; }

  friend bool operator==(const CubicPoint&, const CubicPoint&) = default;
  friend std::ostream& operator<<(std::ostream& os, const CubicPoint& p);
  friend CubicPoint cubic_negate(const CubicPoint& p);

 private:
  CubicPoint(BigInt x, BigInt y, BigInt z) : x_(std::move(x)), y_(std::move(y)), z_(std::move(z)) {}
  BigInt x_, y_, z_;
};

/// Point of Y^2 = X^3 + B: the point at infinity or an affine rational pair.
class WeierstrassPoint {
 public:
  WeierstrassPoint() = default;  // infinity

  static WeierstrassPoint infinity() { return {}; }
  /// Checked constructor; throws InvalidInput if (X, Y) is off the curve.
  static WeierstrassPoint make(const CurveConfig& cfg, BigRat X, BigRat Y);
  /// For coordinates already known to satisfy the curve equation.
  static WeierstrassPoint affine_unchecked(BigRat X, BigRat Y);

  bool is_infinity() const noexcept { return infinity_; }
  const BigRat& X() const noexcept { return x_; }
  const BigRat& Y() const noexcept { return y_; }

  friend bool operator==(const WeierstrassPoint&, const WeierstrassPoint&) = default;
  friend std::ostream& operator<<(std::ostream& os, const WeierstrassPoint& p);

 private:
  bool infinity_ = true;
  BigRat x_, y_;
};

bool on_cubic(const CurveConfig& cfg, const BigInt& x, const BigInt& y, const BigInt& z);
bool on_curve(const CurveConfig& cfg, const WeierstrassPoint& p);

/// Cubic model -> Weierstrass model:
/// [x, y, z] -> (12 m0 z / (x + y), 36 m0 (y - x) / (x + y)).
WeierstrassPoint phi(const CurveConfig& cfg, const CubicPoint& p);
/// Weierstrass model -> cubic model: (X, Y) -> [36 m0 - Y, 36 m0 + Y, 6 X].
CubicPoint phi_inv(const CurveConfig& cfg, const WeierstrassPoint& q);

WeierstrassPoint negate(const WeierstrassPoint& p);
WeierstrassPoint add(const CurveConfig& cfg, const WeierstrassPoint& p, const WeierstrassPoint& q);
WeierstrassPoint sub(const CurveConfig& cfg, const WeierstrassPoint& p, const WeierstrassPoint& q);
WeierstrassPoint dbl(const CurveConfig& cfg, const WeierstrassPoint& p);
/// [k]P by double-and-add.
WeierstrassPoint smul(const CurveConfig& cfg, std::int64_t k, const WeierstrassPoint& p);

/// Group law on the cubic model, transported through phi.
CubicPoint cubic_add(const CurveConfig& cfg, const CubicPoint& p, const CubicPoint& q);
/// -(x, y, z) = (y, x, z).
CubicPoint cubic_negate(const CubicPoint& p);
CubicPoint cubic_smul(const CurveConfig& cfg, std::int64_t k, const CubicPoint& p);

}  // namespace cubeforge
