#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "cubeforge/curve.hpp"
#include "cubeforge/errors.hpp"

namespace cubeforge::testing {

/// A curve and one known non-torsion point on its cubic model.
struct Sample {
  CurveConfig cfg;
  CubicPoint gen;
};

inline Sample sample_curve(int m0) {
  CurveConfig cfg{BigInt(m0)};
  switch (m0) {
    case 6: return {cfg, CubicPoint::make(cfg, 17, 37, 21)};
    case 7: return {cfg, CubicPoint::make(cfg, 2, -1, 1)};
    case 9: return {cfg, CubicPoint::make(cfg, 1, 2, 1)};
    case 91: return {cfg, CubicPoint::make(cfg, 3, 4, 1)};
    default: break;
  }
  throw InvalidInput("no sample generator for this m0");
}

/// [k] gen on the Weierstrass model for k in [-max_k, max_k].
inline WeierstrassPoint random_multiple(const Sample& s, std::mt19937_64& rng, int max_k) {
  std::uniform_int_distribution<int> k(-max_k, max_k);
  return smul(s.cfg, k(rng), phi(s.cfg, s.gen));
}

}  // namespace cubeforge::testing
