#include "cubeforge/curve.hpp"

#include <ostream>

#include "cubeforge/errors.hpp"

namespace cubeforge {

CurveConfig::CurveConfig(BigInt m0) : m0_(std::move(m0)) {
  if (m0_ == 0) throw InvalidInput("m0 must be nonzero");
  b_ = -432 * m0_ * m0_;
  hb_ = log_abs(b_);
}

// --- points ----------------------------------------------------------------

bool on_cubic(const CurveConfig& cfg, const BigInt& x, const BigInt& y, const BigInt& z) {
  return BigInt(x * x * x + y * y * y) == BigInt(cfg.m0() * z * z * z);
}

bool on_curve(const CurveConfig& cfg, const WeierstrassPoint& p) {
  if (p.is_infinity()) return true;
  return BigRat(p.Y() * p.Y()) == BigRat(p.X() * p.X() * p.X() + cfg.B());
}

CubicPoint CubicPoint::make(const CurveConfig& cfg, const BigInt& x, const BigInt& y, const BigInt& z) {
  if (!on_cubic(cfg, x, y, z))
    throw InvalidInput("point (" + to_string(x) + ", " + to_string(y) + ", " + to_string(z) + ") is not on the cubic");
  IntTriple t = to_primitive(x, y, z);
  return CubicPoint(std::move(t.x), std::move(t.y), std::move(t.z));
}

std::ostream& operator<<(std::ostream& os, const CubicPoint& p) {
  return os << '[' << p.x_ << ", " << p.y_ << ", " << p.z_ << ']';
}

WeierstrassPoint WeierstrassPoint::make(const CurveConfig& cfg, BigRat X, BigRat Y) {
  X.canonicalize();
  Y.canonicalize();
  WeierstrassPoint p = affine_unchecked(std::move(X), std::move(Y));
  if (!on_curve(cfg, p)) throw InvalidInput("point is not on Y^2 = X^3 + B");
  return p;
}

WeierstrassPoint WeierstrassPoint::affine_unchecked(BigRat X, BigRat Y) {
  WeierstrassPoint p;
  p.infinity_ = false;
  p.x_ = std::move(X);
  p.y_ = std::move(Y);
  return p;
}

std::ostream& operator<<(std::ostream& os, const WeierstrassPoint& p) {
  if (p.infinity_) return os << "infinity";
  return os << '(' << to_string(p.x_) << ", " << to_string(p.y_) << ')';
}

// --- maps between the models -------------------------------------------------

WeierstrassPoint phi(const CurveConfig& cfg, const CubicPoint& p) {
  if (p.is_identity()) return WeierstrassPoint::infinity();
  const BigInt s = p.x() + p.y();
  if (s == 0) throw InvariantBreach("maps to infinity improperly");
  BigRat X(BigInt(12 * cfg.m0() * p.z()), s);
  BigRat Y(BigInt(36 * cfg.m0() * (p.y() - p.x())), s);
  X.canonicalize();
  Y.canonicalize();
  return WeierstrassPoint::affine_unchecked(std::move(X), std::move(Y));
}

CubicPoint phi_inv(const CurveConfig& cfg, const WeierstrassPoint& q) {
  if (q.is_infinity()) return CubicPoint::identity();
  const BigRat c = 36 * cfg.m0();
  const BigRat a = c - q.Y();
  const BigRat b = c + q.Y();
  const BigRat w = 6 * q.X();
  BigInt l;
  mpz_lcm(l.get_mpz_t(), q.X().get_den_mpz_t(), q.Y().get_den_mpz_t());
  // a, b share Y's denominator; w has X's. Clearing by lcm gives integers.
  auto clear = [&](const BigRat& v) { return BigInt(v.get_num() * (l / v.get_den())); };
  return CubicPoint::make(cfg, clear(a), clear(b), clear(w));
}

// --- group law on Y^2 = X^3 + B -------------------------------------------

WeierstrassPoint negate(const WeierstrassPoint& p) {
  if (p.is_infinity()) return p;
  return WeierstrassPoint::affine_unchecked(p.X(), BigRat(-p.Y()));
}

WeierstrassPoint dbl(const CurveConfig&, const WeierstrassPoint& p) {
  if (p.is_infinity() || p.Y() == 0) return WeierstrassPoint::infinity();
  const BigRat lambda = BigRat(3 * p.X() * p.X()) / BigRat(2 * p.Y());
  BigRat x3 = lambda * lambda - 2 * p.X();
  BigRat y3 = lambda * (p.X() - x3) - p.Y();
  return WeierstrassPoint::affine_unchecked(std::move(x3), std::move(y3));
}

WeierstrassPoint add(const CurveConfig& cfg, const WeierstrassPoint& p, const WeierstrassPoint& q) {
  if (p.is_infinity()) return q;
  if (q.is_infinity()) return p;
  if (p.X() == q.X()) {
    if (p.Y() == q.Y()) return dbl(cfg, p);
    return WeierstrassPoint::infinity();  // q = -p
  }
  const BigRat lambda = BigRat(q.Y() - p.Y()) / BigRat(q.X() - p.X());
  BigRat x3 = lambda * lambda - p.X() - q.X();
  BigRat y3 = lambda * (p.X() - x3) - p.Y();
  return WeierstrassPoint::affine_unchecked(std::move(x3), std::move(y3));
}

WeierstrassPoint sub(const CurveConfig& cfg, const WeierstrassPoint& p, const WeierstrassPoint& q) {
  return add(cfg, p, negate(q));
}

WeierstrassPoint smul(const CurveConfig& cfg, std::int64_t k, const WeierstrassPoint& p) {
  if (k == 0 || p.is_infinity()) return WeierstrassPoint::infinity();
  // Work with the magnitude as unsigned so INT64_MIN is representable.
  std::uint64_t n = k < 0 ? std::uint64_t(0) - static_cast<std::uint64_t>(k) : static_cast<std::uint64_t>(k);
  const WeierstrassPoint base = k < 0 ? negate(p) : p;
  int top = 63;
  while (!((n >> top) & 1u)) --top;
  WeierstrassPoint acc = base;
  for (int bit = top - 1; bit >= 0; --bit) {
    acc = dbl(cfg, acc);
    if ((n >> bit) & 1u) acc = add(cfg, acc, base);
  }
  return acc;
}

// --- transported law on the cubic model ---------------------------------------

CubicPoint cubic_add(const CurveConfig& cfg, const CubicPoint& p, const CubicPoint& q) {
  return phi_inv(cfg, add(cfg, phi(cfg, p), phi(cfg, q)));
}

CubicPoint cubic_negate(const CubicPoint& p) {
  if (p.is_identity()) return p;
  return CubicPoint(p.y_, p.x_, p.z_);
}

CubicPoint cubic_smul(const CurveConfig& cfg, std::int64_t k, const CubicPoint& p) {
  return phi_inv(cfg, smul(cfg, k, phi(cfg, p)));
}

}  // namespace cubeforge
