#include "cubeforge/heights.hpp"

#include <cmath>
#include <sstream>

#include "cubeforge/detail/parallel.hpp"
#include "cubeforge/errors.hpp"

namespace cubeforge {

ApproxReal lemma3_lower(const CurveConfig& cfg) {
  return -(cfg.hB() / ApproxReal::exact(6.0)) - ApproxReal::from_decimal(1.48);
}

ApproxReal lemma3_upper(const CurveConfig& cfg) {
  return cfg.hB() / ApproxReal::exact(6.0) + ApproxReal::from_decimal(1.576);
}

ApproxReal lemma3_constant(const CurveConfig& cfg) { return lemma3_upper(cfg); }

int doublings_for(const CurveConfig& cfg, double tol) {
  if (!(tol > 0.0) || !std::isfinite(tol)) throw InvalidInput("tolerance must be positive and finite");
  const double c = lemma3_constant(cfg).upper();
  int k = 0;
  while (std::ldexp(c, -2 * k) > tol) ++k;
  return k;
}

HeightValue naive_height(const BigRat& x) {
  const BigInt& p = x.get_num();
  const BigInt& q = x.get_den();
  return log_abs(mpz_cmpabs(p.get_mpz_t(), q.get_mpz_t()) >= 0 ? p : q);
}

HeightValue naive_height(const WeierstrassPoint& q) {
  if (q.is_infinity()) return ApproxReal::exact(0.0);
  return naive_height(q.X());
}

std::optional<BigRat> double_x(const CurveConfig& cfg, const BigRat& x) {
  const BigInt& p = x.get_num();
  const BigInt& q = x.get_den();
  const BigInt p3 = p * p * p;
  const BigInt bq3 = cfg.B() * q * q * q;
  BigInt den = 4 * q * (p3 + bq3);
  if (den == 0) return std::nullopt;  // Y = 0: a 2-torsion point
  BigInt num = p * (p3 - 8 * bq3);
  BigRat r(std::move(num), std::move(den));
  r.canonicalize();
  return r;
}

HeightValue canonical_height(const CurveConfig& cfg, const WeierstrassPoint& p, double tol,
                             std::size_t digit_budget) {
  const int k = doublings_for(cfg, tol);
  if (p.is_infinity()) return ApproxReal::exact(0.0);
  const double c = lemma3_constant(cfg).upper();

  BigRat x = p.X();
  for (int j = 1; j <= k; ++j) {
    auto next = double_x(cfg, x);
    if (!next) return ApproxReal::exact(0.0);  // [2^j]P = O, so P is torsion
    x = std::move(*next);
    if (decimal_digits(x.get_num()) > digit_budget || decimal_digits(x.get_den()) > digit_budget) {
      const double achievable = std::ldexp(c, -2 * (j - 1));
      std::ostringstream msg;
      msg << "precision budget exceeded: tol " << tol << " needs " << k << " doublings but coordinates pass "
          << digit_budget << " digits after " << j << "; achievable tol " << achievable;
      throw PrecisionBudgetExceeded(msg.str(), achievable);
    }
  }
  const HeightValue scaled = ldexp(naive_height(x), -(2 * k + 1));
  return scaled + ApproxReal(0.0, std::ldexp(c, -2 * k));
}

HeightValue pairing(const CurveConfig& cfg, const WeierstrassPoint& p, const WeierstrassPoint& q, double tol,
                    std::size_t digit_budget) {
  return canonical_height(cfg, add(cfg, p, q), tol, digit_budget) - canonical_height(cfg, p, tol, digit_budget) -
         canonical_height(cfg, q, tol, digit_budget);
}

GramMatrix::GramMatrix(std::vector<WeierstrassPoint> points, std::vector<HeightValue> entries)
    : points_(std::move(points)), entries_(std::move(entries)) {
  if (entries_.size() != points_.size() * points_.size()) throw InvalidInput("Gram matrix shape mismatch");
}

std::optional<ApproxReal> GramMatrix::certified_regulator() const {
  const std::size_t r = size();
  if (r == 0) return std::nullopt;
  std::vector<ApproxReal> a = entries_;
  ApproxReal det = ApproxReal::exact(1.0);
  for (std::size_t c = 0; c < r; ++c) {
    const ApproxReal pivot = a[c * r + c];
    if (!(pivot.lower() > 0.0)) return std::nullopt;
    det *= pivot;
    for (std::size_t i = c + 1; i < r; ++i) {
      const ApproxReal f = a[i * r + c] / pivot;
      for (std::size_t j = c; j < r; ++j) a[i * r + j] -= f * a[c * r + j];
    }
  }
  return ldexp(det, -static_cast<int>(r));
}

IndependenceResult independence(const CurveConfig& cfg, std::span<const WeierstrassPoint> points, double tol,
                                std::size_t digit_budget) {
  if (points.empty()) throw InvalidInput("independence needs at least one point");
  const std::size_t r = points.size();

  // Heights of the points and of the pairwise sums are independent tasks.
  std::vector<WeierstrassPoint> targets(points.begin(), points.end());
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = i + 1; j < r; ++j) targets.push_back(add(cfg, points[i], points[j]));
  const std::vector<HeightValue> h = detail::parallel_map<HeightValue>(
      targets.size(), [&](std::size_t i) { return canonical_height(cfg, targets[i], tol, digit_budget); });

  std::vector<HeightValue> entries(r * r);
  std::size_t next = 0;
  for (std::size_t i = 0; i < r; ++i) {
    entries[i * r + i] = ldexp(h[i], 1);
    for (std::size_t j = i + 1; j < r; ++j) {
      const HeightValue v = h[r + next++] - h[i] - h[j];
      entries[i * r + j] = v;
      entries[j * r + i] = v;
    }
  }

  IndependenceResult out;
  out.gram = GramMatrix(std::vector<WeierstrassPoint>(points.begin(), points.end()), std::move(entries));
  out.regulator = out.gram.certified_regulator();
  out.independent = out.regulator && out.regulator->lower() > 0.0;
  return out;
}

bool lemma3_window(const CurveConfig& cfg, const WeierstrassPoint& p, double tol, std::size_t digit_budget) {
  if (p.is_infinity()) throw InvalidInput("the window applies to affine points");
  const HeightValue diff = canonical_height(cfg, p, tol, digit_budget) - ldexp(naive_height(p), -1);
  // diff's radius is the tail bound (<= tol) plus rounding, so meeting the
  // window is the same as the center lying in the window inflated by it.
  return diff.lower() <= lemma3_upper(cfg).upper() && diff.upper() >= lemma3_lower(cfg).lower();
}

}  // namespace cubeforge
