#include "cubeforge/numeric.hpp"

#include <cctype>
#include <cfloat>
#include <cmath>
#include <limits>

#include "cubeforge/errors.hpp"

namespace cubeforge {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn2 = 0x1.62e42fefa39efp-1;

// Round a nonnegative radius bound upward, past any error made computing it.
double up(double r) { return std::nextafter(r * (1.0 + 0x1p-50), kInf); }

// Bound on the rounding error of one correctly rounded basic operation.
double rounding(double v) { return std::fabs(v) * 0x1p-52 + DBL_TRUE_MIN; }

// libm transcendental functions: allow two ulps.
double libm_error(double v) { return std::fabs(v) * 0x1p-51 + DBL_TRUE_MIN; }

bool is_decimal_integer(std::string_view s) {
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '-' || s[i] == '+')) ++i;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (s[i] < '0' || s[i] > '9') return false;
  return true;
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

BigInt parse_bigint(std::string_view text) {
  std::string_view t = trim(text);
  if (!is_decimal_integer(t)) throw InvalidInput("not a decimal integer: '" + std::string(text) + "'");
  if (t.front() == '+') t.remove_prefix(1);
  BigInt n;
  if (n.set_str(std::string(t), 10) != 0) throw InvalidInput("not a decimal integer: '" + std::string(text) + "'");
  return n;
}

BigRat parse_bigrat(std::string_view text) {
  std::string_view t = trim(text);
  const auto slash = t.find('/');
  BigRat q;
  if (slash == std::string_view::npos) {
    q = BigRat(parse_bigint(t));
  } else {
    BigInt num = parse_bigint(t.substr(0, slash));
    BigInt den = parse_bigint(t.substr(slash + 1));
    if (den == 0) throw InvalidInput("zero denominator: '" + std::string(text) + "'");
    q = BigRat(num, den);
  }
  q.canonicalize();
  return q;
}

std::string to_string(const BigInt& n) { return n.get_str(10); }

std::string to_string(const BigRat& q) {
  if (q.get_den() == 1) return q.get_num().get_str(10);
  return q.get_num().get_str(10) + "/" + q.get_den().get_str(10);
}

std::size_t decimal_digits(const BigInt& n) {
  // mpz_sizeinbase may overshoot by one for base 10; the exact count is only
  // needed for small numbers, where the string is cheap.
  const std::size_t approx = mpz_sizeinbase(n.get_mpz_t(), 10);
  if (approx > 64) return approx;
  BigInt a = abs(n);
  return a.get_str(10).size();
}

BigInt gcd3(const BigInt& a, const BigInt& b, const BigInt& c) {
  if (a == 0 && b == 0 && c == 0) throw InvalidInput("undefined gcd");
  BigInt g;
  mpz_gcd(g.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  return g;
}

IntTriple to_primitive(const BigInt& x, const BigInt& y, const BigInt& z) {
  const BigInt g = gcd3(x, y, z);
  IntTriple t{x / g, y / g, z / g};
  if (t.z == 0) {
    if (t.x + t.y != 0) throw InvalidInput("not on curve at infinity");
    // x = -y with gcd 1 forces (+-1, -+1).
    return IntTriple{1, -1, 0};
  }
  if (t.z < 0) {
    t.x = -t.x;
    t.y = -t.y;
    t.z = -t.z;
  }
  return t;
}

CubeRoot icbrt(const BigInt& n) {
  CubeRoot r;
  r.exact = mpz_root(r.root.get_mpz_t(), n.get_mpz_t(), 3) != 0;
  return r;
}

// --- ApproxReal ------------------------------------------------------------

ApproxReal::ApproxReal(double value, double radius) : value_(value), radius_(radius) {
  if (!(radius >= 0.0) || !std::isfinite(radius)) throw InvalidInput("ApproxReal radius must be finite and >= 0");
  if (std::isnan(value)) throw InvalidInput("ApproxReal value is NaN");
}

ApproxReal ApproxReal::from_decimal(double value) { return ApproxReal(value, up(std::fabs(value) * 0x1p-53)); }

ApproxReal ApproxReal::from_bigint(const BigInt& n) {
  const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  if (bits > 1000) throw InvalidInput("integer too large for a double enclosure; use log_abs");
  const double d = n.get_d();  // truncates toward zero
  if (bits <= 53) return exact(d);
  return ApproxReal(d, up(std::fabs(d) * 0x1p-52));
}

double ApproxReal::lower() const noexcept { return std::nextafter(value_ - radius_, -kInf); }
double ApproxReal::upper() const noexcept { return std::nextafter(value_ + radius_, kInf); }

ApproxReal operator+(const ApproxReal& a, const ApproxReal& b) {
  const double v = a.value_ + b.value_;
  return ApproxReal(v, up(a.radius_ + b.radius_ + rounding(v)));
}

ApproxReal operator-(const ApproxReal& a, const ApproxReal& b) { return a + (-b); }

ApproxReal operator*(const ApproxReal& a, const ApproxReal& b) {
  const double v = a.value_ * b.value_;
  const double r = std::fabs(a.value_) * b.radius_ + std::fabs(b.value_) * a.radius_ + a.radius_ * b.radius_;
  return ApproxReal(v, up(r + rounding(v)));
}

ApproxReal operator/(const ApproxReal& a, const ApproxReal& b) {
  const double bmag = std::fabs(b.value_);
  const double margin = bmag - b.radius_;
  if (!(margin > 0.0) || b.contains(0.0)) throw InvalidInput("division by an interval containing zero");
  const double v = a.value_ / b.value_;
  const double num = up(bmag * a.radius_ + std::fabs(a.value_) * b.radius_);
  const double den = bmag * margin * (1.0 - 0x1p-50);
  return ApproxReal(v, up(num / den + rounding(v)));
}

ApproxReal log(const ApproxReal& x) {
  const double lo = x.lower();
  if (!(lo > 0.0)) throw InvalidInput("log of an interval that is not strictly positive");
  const double v = std::log(x.value());
  return ApproxReal(v, up(x.radius() / lo + libm_error(v)));
}

ApproxReal exp(const ApproxReal& x) {
  const double v = std::exp(x.value());
  if (!std::isfinite(v)) throw InvalidInput("exp overflow");
  const double spread = v * (1.0 + 0x1p-50) * std::expm1(x.radius() * (1.0 + 0x1p-50));
  return ApproxReal(v, up(spread + libm_error(v)));
}

ApproxReal pow(const ApproxReal& x, const ApproxReal& e) { return exp(e * log(x)); }

ApproxReal ldexp(const ApproxReal& x, int k) {
  return ApproxReal(std::ldexp(x.value(), k), up(std::ldexp(x.radius(), k) + DBL_TRUE_MIN));
}

ApproxReal log_abs(const BigInt& n) {
  if (n == 0) throw InvalidInput("log of zero");
  const std::size_t bits = mpz_sizeinbase(n.get_mpz_t(), 2);
  if (bits == 1) return ApproxReal::exact(0.0);  // |n| = 1
  if (bits <= 53) {
    const double v = std::log(std::fabs(n.get_d()));
    return ApproxReal(v, up(libm_error(v)));
  }
  // |n| = d * 2^e with d in [0.5, 1) truncated, so the true mantissa lies in
  // [d, d + 2^-53] and log differs by at most 2^-52.
  signed long e = 0;
  const double d = std::fabs(mpz_get_d_2exp(&e, n.get_mpz_t()));
  const double log_d = std::log(d);
  const double scaled = static_cast<double>(e) * kLn2;
  const double v = log_d + scaled;
  const double r = libm_error(log_d) + 0x1p-52 + std::fabs(scaled) * 0x1p-51 + rounding(v);
  return ApproxReal(v, up(r));
}

}  // namespace cubeforge
