#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "cubeforge/errors.hpp"
#include "cubeforge/heights.hpp"
#include "fixtures.hpp"

using namespace cubeforge;
using cubeforge::testing::random_multiple;
using cubeforge::testing::sample_curve;

namespace {

WeierstrassPoint W(const CurveConfig& cfg, const char* x, const char* y) {
  return WeierstrassPoint::make(cfg, parse_bigrat(x), parse_bigrat(y));
}

// |a - b| <= slack, judged on the midpoints.
bool near(const ApproxReal& a, double b, double slack) { return std::fabs(a.value() - b) <= slack; }

}  // namespace

TEST_CASE("naive height") {
  const CurveConfig six(6);
  CHECK(near(naive_height(W(six, "28", "80")), 3.3322, 1e-4));
  CHECK(naive_height(W(six, "28", "80")).contains(std::log(28.0)));
  CHECK(naive_height(WeierstrassPoint::infinity()).value() == 0.0);
  CHECK(naive_height(WeierstrassPoint::infinity()).radius() == 0.0);
  CHECK(near(naive_height(W(six, "16009/100", "-2021723/1000")), 9.6809, 1e-4));
  CHECK(naive_height(parse_bigrat("1/16009")).contains(std::log(16009.0)));
  CHECK(naive_height(parse_bigrat("0")).value() == 0.0);
}

TEST_CASE("x-only doubling agrees with the group law") {
  for (int m0 : {6, 7, 9, 91}) {
    const auto s = sample_curve(m0);
    WeierstrassPoint p = phi(s.cfg, s.gen);
    for (int i = 0; i < 4; ++i) {
      const auto x2 = double_x(s.cfg, p.X());
      const WeierstrassPoint q = dbl(s.cfg, p);
      REQUIRE(x2.has_value());
      CHECK(*x2 == q.X());
      p = q;
    }
  }
  const CurveConfig two(2);
  CHECK_FALSE(double_x(two, BigRat(12)).has_value());
}

TEST_CASE("lemma-3 constants") {
  const CurveConfig six(6);
  CHECK(near(lemma3_upper(six) - ApproxReal::exact(0.0), 9.6519 / 6 + 1.576, 1e-3));
  CHECK(near(lemma3_constant(six), 3.1847, 1e-3));
  CHECK(near(lemma3_lower(six), -9.6519 / 6 - 1.48, 1e-3));
  // C / 4^k <= tol with k minimal.
  const int k = doublings_for(six, 1e-2);
  CHECK(lemma3_constant(six).upper() / std::ldexp(1.0, 2 * k) <= 1e-2);
  CHECK(lemma3_constant(six).upper() / std::ldexp(1.0, 2 * (k - 1)) > 1e-2);
  CHECK_THROWS_AS(doublings_for(six, 0.0), InvalidInput);
}

TEST_CASE("canonical height examples") {
  const CurveConfig one(1), six(6);
  for (double tol : {1e-1, 1e-3, 1e-6}) {
    const ApproxReal t = canonical_height(one, W(one, "12", "36"), tol);
    CHECK(std::fabs(t.value()) <= tol);
    CHECK(t.radius() <= tol);
  }
  const ApproxReal h = canonical_height(six, W(six, "28", "80"), 1e-2);
  CHECK(h.value() >= 0.0);
  CHECK(h.radius() <= 1e-2);
  CHECK(h.value() <= 0.5 * 3.3322 + 3.185);
  const ApproxReal inf = canonical_height(six, WeierstrassPoint::infinity(), 1e-3);
  CHECK(inf.value() == 0.0);
  CHECK(inf.radius() == 0.0);
}

TEST_CASE("canonical height matches independent high-precision references") {
  // Reference values computed separately to about 3e-6.
  struct Ref {
    int m0;
    const char* X;
    const char* Y;
    double hhat;
  };
  const Ref refs[] = {{6, "28", "80", 1.2220430}, {7, "84", "-756", 0.1490470}, {9, "36", "108", 0.2531854}};
  for (const auto& r : refs) {
    const CurveConfig cfg(r.m0);
    for (double tol : {1e-2, 1e-3, 1e-4}) {
      const ApproxReal h = canonical_height(cfg, W(cfg, r.X, r.Y), tol);
      CHECK(h.radius() <= tol * (1 + 1e-9));
      CHECK(std::fabs(h.value() - r.hhat) <= h.radius() + 3e-6);
    }
  }
}

TEST_CASE("quadraticity") {
  std::mt19937_64 rng(17);
  const double tol = 1e-3;
  for (int m0 : {6, 7, 9}) {
    const auto s = sample_curve(m0);
    const WeierstrassPoint p = phi(s.cfg, s.gen);
    const ApproxReal hp = canonical_height(s.cfg, p, tol);
    for (int k : {2, 3}) {
      const ApproxReal hk = canonical_height(s.cfg, smul(s.cfg, k, p), tol);
      CHECK(std::fabs(hk.value() - k * k * hp.value()) <= (k * k + 1) * tol);
    }
    const ApproxReal hneg = canonical_height(s.cfg, negate(p), tol);
    CHECK(std::fabs(hneg.value() - hp.value()) <= 2 * tol);
  }
}

TEST_CASE("parallelogram law") {
  std::mt19937_64 rng(23);
  const double tol = 1e-3;
  for (int m0 : {6, 7, 9, 91}) {
    const auto s = sample_curve(m0);
    for (int i = 0; i < 3; ++i) {
      const WeierstrassPoint p = random_multiple(s, rng, 3), q = random_multiple(s, rng, 3);
      const double lhs = canonical_height(s.cfg, add(s.cfg, p, q), tol).value() +
                         canonical_height(s.cfg, sub(s.cfg, p, q), tol).value();
      const double rhs = 2 * canonical_height(s.cfg, p, tol).value() + 2 * canonical_height(s.cfg, q, tol).value();
      CHECK(std::fabs(lhs - rhs) <= 6 * tol);
    }
  }
}

TEST_CASE("nonnegativity, window and radius honesty on small multiples") {
  const double tol = 1e-3;
  const CurveConfig one(1);
  CHECK(lemma3_window(one, W(one, "12", "-36"), tol));
  CHECK(canonical_height(one, W(one, "12", "-36"), tol).value() <= tol);

  for (int m0 : {6, 7, 9}) {
    const auto s = sample_curve(m0);
    const WeierstrassPoint p = phi(s.cfg, s.gen);
    for (int k = 1; k <= 4; ++k) {
      const WeierstrassPoint q = smul(s.cfg, k, p);
      const ApproxReal h = canonical_height(s.cfg, q, tol);
      CHECK(h.value() >= -tol);
      CHECK(lemma3_window(s.cfg, q, tol));
      if (k <= 2) {
        const ApproxReal fine = canonical_height(s.cfg, q, tol / 10);
        CHECK(h.contains(fine.value()));
      }
    }
  }
}

TEST_CASE("pairing") {
  const double tol = 1e-3;
  const CurveConfig six(6);
  const WeierstrassPoint p = W(six, "28", "80");
  const double hp = canonical_height(six, p, tol).value();
  const ApproxReal pp = pairing(six, p, p, tol);
  CHECK(std::fabs(pp.value() - 2 * hp) <= 5 * tol);
  CHECK(pp.radius() <= 3 * tol * (1 + 1e-9));
  CHECK(std::fabs(pairing(six, p, WeierstrassPoint::infinity(), tol).value()) <= 2 * tol);
  CHECK(std::fabs(pairing(six, p, negate(p), tol).value() + 2 * hp) <= 5 * tol);

  const CurveConfig c91(91);
  const WeierstrassPoint a = phi(c91, CubicPoint::make(c91, 3, 4, 1));
  const WeierstrassPoint b = phi(c91, CubicPoint::make(c91, -5, 6, 1));
  const double ab = pairing(c91, a, b, tol).value();
  CHECK(std::fabs(pairing(c91, b, a, tol).value() - ab) <= 6 * tol);
  // Bilinearity in the first slot.
  CHECK(std::fabs(pairing(c91, smul(c91, 2, a), b, tol).value() - 2 * ab) <= 9 * tol);
}

TEST_CASE("independence") {
  const double tol = 1e-3;
  const CurveConfig six(6), one(1), c91(91);
  const WeierstrassPoint p = W(six, "28", "80");

  const std::vector<WeierstrassPoint> single{p};
  const IndependenceResult r1 = independence(six, single, tol);
  CHECK(r1.independent);
  REQUIRE(r1.regulator.has_value());
  CHECK(r1.regulator->contains(1.2220430));
  CHECK(r1.gram.size() == 1);

  const std::vector<WeierstrassPoint> torsion{W(one, "12", "36")};
  CHECK_FALSE(independence(one, torsion, tol).independent);

  const std::vector<WeierstrassPoint> dependent{p, smul(six, 2, p)};
  const IndependenceResult r2 = independence(six, dependent, tol);
  CHECK_FALSE(r2.independent);
  CHECK_FALSE(r2.regulator.has_value());

  const std::vector<WeierstrassPoint> rank2{phi(c91, CubicPoint::make(c91, 3, 4, 1)),
                                            phi(c91, CubicPoint::make(c91, -5, 6, 1))};
  const IndependenceResult r3 = independence(c91, rank2, tol);
  CHECK(r3.independent);
  REQUIRE(r3.gram.size() == 2);
  CHECK(r3.gram(0, 1).value() == r3.gram(1, 0).value());
  CHECK(std::fabs(r3.gram(0, 0).value() - 2 * canonical_height(c91, rank2[0], tol).value()) <= 4 * tol);
}

TEST_CASE("lemma-3 window examples") {
  const double tol = 1e-3;
  const CurveConfig six(6);
  const WeierstrassPoint p = W(six, "28", "80");
  CHECK(lemma3_window(six, p, tol));
  CHECK(lemma3_window(six, smul(six, 2, p), tol));
}

TEST_CASE("precision budget") {
  const CurveConfig six(6);
  const WeierstrassPoint p = W(six, "28", "80");
  try {
    (void)canonical_height(six, p, 1e-9, 200);
    FAIL("expected a budget error");
  } catch (const PrecisionBudgetExceeded& e) {
    CHECK(e.achievable_tol() > 1e-9);
    CHECK(std::string(e.what()).find("precision budget exceeded") != std::string::npos);
    // The achievable tolerance really is achievable within the same budget.
    CHECK_NOTHROW((void)canonical_height(six, p, e.achievable_tol(), 200));
  }
}
