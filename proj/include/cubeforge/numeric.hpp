#pragma once

#include <gmpxx.h>

#include <cstddef>
#include <string>
#include <string_view>

namespace cubeforge {

/// Arbitrary-precision signed integer. Every integer quantity of the
/// construction (coordinates, m, m0, divisors) lives here; nothing is ever
/// narrowed to a machine word.
using BigInt = mpz_class;

/// Exact rational, always kept in lowest terms with a positive denominator.
using BigRat = mpq_class;

BigInt parse_bigint(std::string_view text);
/// Accepts "p" or "p/q"; the result is canonicalized.
BigRat parse_bigrat(std::string_view text);
std::string to_string(const BigInt& n);
/// "p" when the denominator is 1, otherwise "p/q".
std::string to_string(const BigRat& q);
/// Number of decimal digits of |n| (1 for zero).
std::size_t decimal_digits(const BigInt& n);

struct IntTriple {
  BigInt x, y, z;
  friend bool operator==(const IntTriple&, const IntTriple&) = default;
};

/// Positive gcd of three integers, not all zero.
BigInt gcd3(const BigInt& a, const BigInt& b, const BigInt& c);

/// Divides out the common factor and fixes the sign: z > 0, or the normal
/// form (1, -1, 0) when z = 0.
IntTriple to_primitive(const BigInt& x, const BigInt& y, const BigInt& z);

struct CubeRoot {
  BigInt root;
  bool exact = false;
};

/// Integer cube root truncated toward zero: floor(n^(1/3)) for n >= 0 and
/// -floor(|n|^(1/3)) for n < 0.
CubeRoot icbrt(const BigInt& n);

/// Real number enclosure value +- radius. Every operation widens the radius
/// to cover both the propagated input radii and the rounding of the result,
/// so the enclosure stays sound under round-to-nearest hardware arithmetic.
class ApproxReal {
 public:
  constexpr ApproxReal() = default;
  /// Throws InvalidInput on a negative or non-finite radius.
  ApproxReal(double value, double radius);

  /// A double taken as an exact real.
  static ApproxReal exact(double value) { return ApproxReal(value, 0.0); }
  /// A decimal literal rounded to double; the radius covers that rounding.
  static ApproxReal from_decimal(double value);
  static ApproxReal from_bigint(const BigInt& n);

  double value() const noexcept { return value_; }
  double radius() const noexcept { return radius_; }
  /// Outward-rounded interval ends.
  double lower() const noexcept;
  double upper() const noexcept;
  bool contains(double x) const noexcept { return lower() <= x && x <= upper(); }

  ApproxReal operator-() const { return ApproxReal(-value_, radius_); }
  friend ApproxReal operator+(const ApproxReal& a, const ApproxReal& b);
  friend ApproxReal operator-(const ApproxReal& a, const ApproxReal& b);
  friend ApproxReal operator*(const ApproxReal& a, const ApproxReal& b);
  /// Throws InvalidInput when the divisor's interval contains zero.
  friend ApproxReal operator/(const ApproxReal& a, const ApproxReal& b);
  ApproxReal& operator+=(const ApproxReal& o) { return *this = *this + o; }
  ApproxReal& operator-=(const ApproxReal& o) { return *this = *this - o; }
  ApproxReal& operator*=(const ApproxReal& o) { return *this = *this * o; }

 private:
  double value_ = 0.0;
  double radius_ = 0.0;
};

/// Natural log; the argument interval must be strictly positive.
ApproxReal log(const ApproxReal& x);
ApproxReal exp(const ApproxReal& x);
/// x^e for x > 0, evaluated as exp(e * log x).
ApproxReal pow(const ApproxReal& x, const ApproxReal& e);
/// Multiplication by 2^k; exact on the value, so only the radius grows.
ApproxReal ldexp(const ApproxReal& x, int k);

/// Certain comparisons: true only if every point of the enclosures agrees.
inline bool certainly_less(const ApproxReal& a, const ApproxReal& b) { return a.upper() < b.lower(); }
inline bool certainly_leq(const ApproxReal& a, const ApproxReal& b) { return a.upper() <= b.lower(); }
/// True unless the enclosures prove a > b.
inline bool possibly_leq(const ApproxReal& a, const ApproxReal& b) { return a.lower() <= b.upper(); }
inline bool overlaps(const ApproxReal& a, const ApproxReal& b) {
  return a.lower() <= b.upper() && b.lower() <= a.upper();
}

/// log|n| with relative radius well below 1e-12. Throws InvalidInput for 0.
ApproxReal log_abs(const BigInt& n);

}  // namespace cubeforge
