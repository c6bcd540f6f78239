#pragma once

// Small helpers shared by the test binaries: random rationals and
// independent reference evaluators.

#include <slavkp/scalar.hpp>

#include <random>

namespace slavkp::test {

/// p/q with |p| <= bound, 1 <= q <= bound.
inline Rational small_rational(std::mt19937_64& rng, long bound) {
  std::uniform_int_distribution<long> num(-bound, bound), den(1, bound);
  return Rational(num(rng), den(rng));
}

inline Rational nonzero_rational(std::mt19937_64& rng, long bound) {
  for (;;) {
    Rational r = small_rational(rng, bound);
    if (r != 0) return r;
  }
}

}  // namespace slavkp::test
