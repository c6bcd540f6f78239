#pragma once

// Seeded random instances: small rationals (|numerator|, denominator <= bound)
// drawn by rejection against the chain's admissibility sets.

#include <slavkp/chain.hpp>
#include <slavkp/scalar.hpp>

#include <algorithm>
#include <cstdint>
#include <random>
#include <stdexcept>
#include <vector>

namespace slavkp {

inline constexpr long default_sample_bound = 13;

/// Nonzero p/q, |p| <= bound, 1 <= q <= bound, excluding +-1.
inline Rational sample_rational(std::mt19937_64& rng, long bound = default_sample_bound) {
  std::uniform_int_distribution<long> num(-bound, bound), den(1, bound);
  for (;;) {
    Rational r = Rational(num(rng)) / Rational(den(rng));
    if (r != 0 && r != 1 && r != -1) return r;
  }
}

template <class T>
struct Instance {
  std::vector<T> u;
  std::vector<T> v;
};

namespace detail {

template <class T>
bool clashes_with(const std::vector<T>& taken, const T& x) {
  return std::any_of(taken.begin(), taken.end(), [&](const T& y) { return x == y || x == T(-y); });
}

/// Every F^{(1)}, F^{(2)} is finite at x.
template <class T>
bool families_finite(const ChainParams<T>& p, const std::vector<T>& u, const T& x) {
  try {
    for (std::size_t j = 0; j < u.size(); ++j) {
      (void)lambda_du(p, j, x, u);
      (void)f2_eval(p, j, x, u);
    }
    (void)lambda_eval(p, x, u);
  } catch (const PoleError&) {
    return false;
  }
  return true;
}

}  // namespace detail

/// M admissible Bethe-root candidates.
template <class T>
std::vector<T> sample_roots(const ChainParams<T>& p, std::mt19937_64& rng, long bound = default_sample_bound) {
  for (int attempt = 0; attempt < 10000; ++attempt) {
    std::vector<T> u;
    while (static_cast<int>(u.size()) < p.M) {
      T x = from_rational<T>(sample_rational(rng, bound));
      if (!detail::clashes_with(u, x)) u.push_back(x);
    }
    try {
      (void)ParameterVector<T>::bethe(p, u);
      return u;
    } catch (const std::invalid_argument&) {
    }
  }
  throw std::runtime_error("could not sample admissible Bethe roots");
}

/// `count` distinct free points admissible against u, avoiding +-x pairs and
/// every pole of the two families; `avoid` lists points already in use.
template <class T>
std::vector<T> sample_points(const ChainParams<T>& p, const std::vector<T>& u, int count, std::mt19937_64& rng,
                             std::vector<T> avoid = {}, long bound = default_sample_bound) {
  std::vector<T> out;
  int attempts = 0;
  while (static_cast<int>(out.size()) < count) {
    if (++attempts > 100000) throw std::runtime_error("could not sample admissible free points");
    T x = from_rational<T>(sample_rational(rng, bound));
    if (detail::clashes_with(out, x) || detail::clashes_with(avoid, x)) continue;
    try {
      auto vp = ParameterVector<T>::free(ChainParams<T>(p.N, 1, p.spin_twice, p.q, p.Q),
                                         ParameterVector<T>{u, ParameterRole::bethe_u}, {x});
      (void)vp;
    } catch (const std::invalid_argument&) {
      continue;
    }
    if (!detail::families_finite(p, u, x)) continue;
    out.push_back(x);
  }
  return out;
}

/// Random (u, v) with a nonsingular kernel denominator.
template <class T>
Instance<T> sample_instance(const ChainParams<T>& p, std::mt19937_64& rng, long bound = default_sample_bound) {
  for (int attempt = 0; attempt < 1000; ++attempt) {
    Instance<T> inst;
    inst.u = sample_roots(p, rng, bound);
    inst.v = sample_points(p, inst.u, p.M, rng, {}, bound);
    if (!is_zero(kernel_denominator(p, inst.u, inst.v))) return inst;
  }
  throw std::runtime_error("could not sample an admissible instance");
}

/// Per-instance seed derived from a suite seed, so every instance can be replayed alone.
inline std::uint64_t instance_seed(std::uint64_t base, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(base), static_cast<std::uint32_t>(base >> 32),
                    static_cast<std::uint32_t>(index)};
  std::uint32_t words[2];
  seq.generate(words, words + 2);
  return (static_cast<std::uint64_t>(words[0]) << 32) | words[1];
}

}  // namespace slavkp
