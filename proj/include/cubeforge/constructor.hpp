#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "cubeforge/curve.hpp"
#include "cubeforge/heights.hpp"
#include "cubeforge/numeric.hpp"

namespace cubeforge {

/// Divisor witness for a point with z != 0:
///   d = gcd(12 m0 z, x + y),  d a = 12 m0 z,  d b = x + y.
struct DivisorCheck {
  CubicPoint point;
  BigInt d, a, b;
  /// log of 3^(1/3) * 12 * |m0|^(5/2) * |z|^(1/2).
  ApproxReal log_bound;
  /// The bound itself, when it fits in a double.
  std::optional<ApproxReal> bound;
  /// d^2 | 3 * 12^3 * m0^2 * b.
  bool divisibility_pass = false;
  /// |d| < bound, decided exactly as d^6 < 9 * 12^6 * |m0|^15 * |z|^3.
  bool bound_pass = false;
};

DivisorCheck lemma1_check(const CurveConfig& cfg, const CubicPoint& p);

/// Constant c with log|z(Q)| <= 4 hhat(phi(Q)) + c for every non-identity
/// Q on the cubic model:
///   c = (2/3) h(B) + 5.92 + (2/3) log 3 + 3 log|m0|.
ApproxReal c_m0(const CurveConfig& cfg);

/// 3 * 2^(r-1) - 2: coefficient bounding hhat of a sum of r multiples.
BigInt coeff_A(int r);
/// 3 * 2^(r+1) - 7: coefficient in log|z(Q_n)| <= K1 N^2 hhat(Pbar).
BigInt coeff_K1(int r);
/// 9 * 2^(r+1) - 20: coefficient in log|m| <= K2 N^(r+2) hhat(Pbar).
BigInt coeff_K2(int r);

struct TheoremConstants {
  int r = 0;
  BigInt A, K1, K2;
  ApproxReal c_m0;
  /// Least N with c_m0 <= N^2 hhat(Pbar) and log|m0| <= N^(r+2) hhat(Pbar).
  std::int64_t N_min = 0;
};

/// `hhat_bar_up` is used as an exact upper bound for hhat(Pbar).
TheoremConstants theorem_constants(const CurveConfig& cfg, int r, double hhat_bar_up);

/// (K2 * hhat_bar)^(-r/(r+2)).
ApproxReal corollary_constant(int r, const ApproxReal& hhat_bar);

struct CorollaryReport {
  int r = 0;
  ApproxReal hB;
  ApproxReal hx_max;
  /// h(B)/6 + max h_x / 2 + 1.576.
  ApproxReal hhat_bar;
  BigInt K2;
  ApproxReal constant;
  double claimed = 0.0;
  bool pass = false;
};

/// Evaluates the corollary chain from curve statistics: the window bounds
/// hhat(Pbar) by h(B)/6 + h_x/2 + 1.576, then the theorem's constant is
/// compared against `claimed`.
CorollaryReport certify_corollary(const ApproxReal& hB, const ApproxReal& hx_max, int r, double claimed = 4.2e-6);

struct LatticePoint {
  std::vector<std::int64_t> index;  // (n_1, ..., n_r), each in [1, N]
  CubicPoint point;
};

/// All N^r points n_1 P_1 + ... + n_r P_r in lexicographic index order.
/// Throws InvalidInput if some combination is the identity or two
/// combinations coincide (the generators satisfy a relation).
std::vector<LatticePoint> generate_lattice_points(const CurveConfig& cfg, const std::vector<CubicPoint>& generators,
                                                  std::int64_t N);

/// max over generators of hhat(phi(P_i)), choosing the largest upper end.
HeightValue hhat_bar(const CurveConfig& cfg, const std::vector<CubicPoint>& generators, double tol,
                     std::size_t digit_budget = kDefaultDigitBudget);

/// No lattice point refutes hhat(phi(Q_n)) <= A N^2 hhat(Pbar).
bool qn_height_bound_check(const CurveConfig& cfg, const std::vector<CubicPoint>& generators,
                           const std::vector<LatticePoint>& lattice, std::int64_t N, double tol,
                           std::size_t digit_budget = kDefaultDigitBudget);

using Representation = std::pair<BigInt, BigInt>;

/// Checks carrying the theorem's conclusion; the rest are integrity checks.
inline constexpr const char* kTheoremChecks[] = {"theorem_preconditions", "log_m_chain", "final_inequality"};
bool is_theorem_check(const std::string& name);

struct Certificate {
  BigInt m0;
  int r = 0;
  std::int64_t N = 0;
  double tol = kDefaultTol;
  std::vector<CubicPoint> generators;
  HeightValue hhat_bar;
  std::optional<ApproxReal> regulator;
  std::vector<LatticePoint> lattice_points;
  BigInt m;
  std::vector<Representation> representations;
  TheoremConstants constants;
  ApproxReal log_m;
  ApproxReal bound_rhs;
  std::vector<std::pair<std::string, bool>> checks;

  /// Throws InvalidInput for an unknown name.
  bool check(const std::string& name) const;
  bool integrity_ok() const;
  bool all_ok() const;
};

/// Runs the whole construction: lattice points, m = m0 prod z(Q_n)^3, the
/// N^r representations
///   (x(Q_n') prod_{n != n'} z(Q_n), y(Q_n') prod_{n != n'} z(Q_n)),
/// and every inequality of the height chain.
///
/// Throws InvalidInput when the generators are not certified independent,
/// InvariantBreach if a representation fails X^3 + Y^3 = m.
Certificate build_certificate(const CurveConfig& cfg, const std::vector<CubicPoint>& generators, std::int64_t N,
                              double tol = kDefaultTol, std::size_t digit_budget = kDefaultDigitBudget);

/// Ordered tuples, index-major.
std::vector<Representation> representations_of(const BigInt& m0, const std::vector<LatticePoint>& lattice,
                                               BigInt* m_out = nullptr);

}  // namespace cubeforge
