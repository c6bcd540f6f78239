#include <slavkp/chain.hpp>

#include "test_support.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace slavkp;

namespace {

Rational R(long p, long q = 1) { return Rational(p) / Rational(q); }

ChainParams<Rational> half_spin(int n, int m, const Rational& q) { return ChainParams<Rational>(n, m, 1, q, -q); }

// Forward-mode dual number a + b eps, eps^2 = 0.
struct Dual {
  Rational a, b;
  Dual(long x = 0) : a(x), b(0) {}  // NOLINT
  Dual(Rational x, Rational y = 0) : a(std::move(x)), b(std::move(y)) {}
  friend Dual operator+(const Dual& x, const Dual& y) { return {x.a + y.a, x.b + y.b}; }
  friend Dual operator-(const Dual& x, const Dual& y) { return {x.a - y.a, x.b - y.b}; }
  friend Dual operator*(const Dual& x, const Dual& y) { return {x.a * y.a, x.a * y.b + x.b * y.a}; }
  friend Dual operator/(const Dual& x, const Dual& y) {
    return {x.a / y.a, (x.b * y.a - x.a * y.b) / (y.a * y.a)};
  }
};

// Lambda written straight from the eigenvalue formula.
template <class S>
S direct_lambda(int N, const S& q, const S& v, const std::vector<S>& u) {
  auto w = [](const S& x) { return x - S(1) / x; };
  auto pw = [](S x, int n) {
    S r(1);
    for (int k = 0; k < n; ++k) r = r * x;
    return r;
  };
  S a = w(v * v * q * q) * pw(w(v * q), 2 * N);
  S b = w(v * v) * pw(w(v), 2 * N);
  for (const auto& uj : u) {
    a = a * w(v / (q * uj)) * w(v * uj) / (w(v / uj) * w(v * q * uj));
    b = b * w(v * q / uj) * w(v * q * q * uj) / (w(v / uj) * w(v * q * uj));
  }
  return S(0) - (a + b) / w(v * v * q);
}

std::vector<Rational> distinct_rationals(std::mt19937_64& rng, int n, const std::vector<Rational>& avoid = {}) {
  std::vector<Rational> out;
  while (static_cast<int>(out.size()) < n) {
    Rational x = test::nonzero_rational(rng, 13);
    if (x == 1 || x == -1) continue;
    if (std::find(out.begin(), out.end(), x) != out.end()) continue;
    if (std::find(out.begin(), out.end(), Rational(-x)) != out.end()) continue;
    bool clash = false;
    for (const auto& a : avoid) clash |= (x == a || x == -a || x * a == 1 || x * a == -1);
    if (!clash) out.push_back(x);
  }
  return out;
}

}  // namespace

TEST(Chain, WFunction) {
  EXPECT_EQ(w_eval(R(1)), R(0));
  EXPECT_EQ(w_eval(R(2)), R(3, 2));
  EXPECT_EQ(w_eval(R(-1)), R(0));
  EXPECT_THROW(w_eval(R(0)), PoleError);
}

TEST(Chain, BoundaryConstraint) {
  EXPECT_NO_THROW(half_spin(2, 1, R(2)));
  EXPECT_THROW(ChainParams<Rational>(2, 1, 1, R(2), R(3)), std::invalid_argument);
  EXPECT_THROW(ChainParams<Rational>(2, 3, 1, R(2), R(-2)), std::invalid_argument);
  auto p = ChainParams<Rational>::from_boundary(2, 1, 1, R(-2));
  EXPECT_EQ(p.q, R(2));
  auto p2 = ChainParams<Rational>::from_boundary(2, 1, 1, R(-3, 2));
  EXPECT_EQ(p2.q, R(3, 2));
  // spin 1 with Q = 2 needs sqrt(377)
  auto pq = ChainParams<Quadratic>::from_boundary(2, 1, 2, R(2));
  EXPECT_EQ(pq.q.d(), 377);
  EXPECT_THROW(ChainParams<Rational>::from_boundary(2, 1, 2, R(2)), std::domain_error);
}

TEST(Chain, LambdaHandValue) {
  ChainParams<Rational> p(1, 0, 1, R(2), R(-2));
  EXPECT_EQ(lambda_eval(p, R(1), {}), R(-45, 8));
}

TEST(Chain, LambdaMatchesDirectFormula) {
  auto p = half_spin(2, 1, R(2));
  std::vector<Rational> u{R(3)};
  EXPECT_EQ(lambda_eval(p, R(5, 2), u), direct_lambda<Rational>(2, R(2), R(5, 2), u));
  std::mt19937_64 rng(17);
  for (int trial = 0; trial < 20; ++trial) {
    int n = 2 + trial % 3, m = 1 + trial % 3;
    Rational q = trial % 2 ? R(3, 2) : R(2);
    auto pp = half_spin(n, m, q);
    auto uu = distinct_rationals(rng, m);
    Rational v = distinct_rationals(rng, 1, uu)[0];
    try {
      EXPECT_EQ(lambda_eval(pp, v, uu), direct_lambda<Rational>(n, q, v, uu));
    } catch (const PoleError&) {
    }
  }
}

TEST(Chain, LambdaIsEvenAndCrossingSymmetric) {
  std::mt19937_64 rng(19);
  auto p = half_spin(3, 2, R(3, 2));
  for (int trial = 0; trial < 20; ++trial) {
    auto u = distinct_rationals(rng, 2);
    Rational v = distinct_rationals(rng, 1, u)[0];
    try {
      EXPECT_EQ(lambda_eval(p, v, u), lambda_eval(p, Rational(-v), u));
      EXPECT_EQ(lambda_eval(p, v, u), lambda_eval(p, Rational(1 / (p.q * v)), u));
      EXPECT_EQ(lambda_du(p, 1, v, u), lambda_du(p, 1, Rational(-v), u));
    } catch (const PoleError&) {
    }
  }
}

TEST(Chain, LambdaPoleIsNamed) {
  auto p = half_spin(2, 1, R(2));
  try {
    lambda_eval(p, R(3), {R(3)});
    FAIL();
  } catch (const PoleError& e) {
    EXPECT_NE(std::string(e.what()).find("w(v/u1)"), std::string::npos);
  }
}

TEST(Chain, DerivativeMatchesDualNumbers) {
  std::mt19937_64 rng(23);
  auto p = half_spin(2, 2, R(2));
  for (int trial = 0; trial < 10; ++trial) {
    auto u = distinct_rationals(rng, 2);
    Rational v = distinct_rationals(rng, 1, u)[0];
    for (std::size_t i = 0; i < 2; ++i) {
      std::vector<Dual> ud;
      for (std::size_t j = 0; j < 2; ++j) ud.emplace_back(u[j], j == i ? 1 : 0);
      try {
        Dual d = direct_lambda<Dual>(2, Dual(R(2)), Dual(v), ud);
        EXPECT_EQ(lambda_du(p, i, v, u), d.b);
      } catch (const PoleError&) {
      }
    }
  }
}

TEST(Chain, DerivativeMatchesFiniteDifference) {
  ChainParams<Real> p(2, 1, 1, Real(2), Real(-2));
  const Real h("1e-6");
  for (Real u : {Real("0.7"), Real("1.9"), Real("-2.3")}) {
    Real v("0.45");
    Real fd = (lambda_eval(p, v, {u + h}) - lambda_eval(p, v, {u - h})) / (2 * h);
    Real an = lambda_du(p, 0, v, {u});
    EXPECT_LT(mp::abs(fd - an) / mp::abs(an), Real("1e-8"));
  }
}

TEST(Chain, F2HandValueAndEvenness) {
  auto p = half_spin(2, 1, R(2));
  EXPECT_EQ(f2_eval(p, 0, R(2), {R(1)}), R(8, 45));
  std::vector<Rational> u{R(3, 5)};
  EXPECT_EQ(f2_eval(p, 0, R(7, 3), u), f2_eval(p, 0, R(-7, 3), u));
  Rational v = R(7, 3), q = R(2), uu = R(3, 5);
  EXPECT_EQ(f2_eval(p, 0, v, u), 1 / ((v / uu - uu / v) * (v * uu * q - 1 / (v * uu * q))));
}

TEST(Chain, LambdaSeriesLeadingTerm) {
  for (int n = 1; n <= 4; ++n)
    for (int m = 0; m <= std::min(n, 3); ++m) {
      Rational q = R(2);
      auto p = half_spin(n, m, q);
      std::mt19937_64 rng(29 + n * 7 + m);
      Rational expected = -(1 + ipow(q, 2L * (n - 2 * m + 1))) / ipow(q, 2L * (n - m) + 1);
      for (int trial = 0; trial < 3; ++trial) {
        auto u = distinct_rationals(rng, m);
        auto s = lambda_series(p, u, 6);
        ASSERT_TRUE(s.valuation());
        EXPECT_EQ(*s.valuation(), -2 * n);
        EXPECT_EQ(s.coeff(-2 * n), expected);
        for (const auto& [e, c] : s.terms()) EXPECT_EQ(e % 2, 0);
      }
    }
}

TEST(Chain, FamilySeriesShapes) {
  auto p = half_spin(3, 2, R(3, 2));
  std::vector<Rational> u{R(2, 3), R(-5, 7)};
  for (std::size_t i = 0; i < 2; ++i) {
    auto f1 = f_series(p, 1, i, u, 8);
    EXPECT_GE(*f1.valuation(), 2 - 2 * p.N);
    for (const auto& [e, c] : f1.terms()) EXPECT_EQ(e % 2, 0);
    auto f2 = f_series(p, 2, i, u, 8);
    EXPECT_EQ(*f2.valuation(), 2);
    // F2 = q z^2 / ((1 - z^2/u^2)(1 - z^2 u^2 q^2))
    Rational ui = u[i], q = p.q;
    EXPECT_EQ(f2.coeff(2), q);
    EXPECT_EQ(f2.coeff(4), q * (1 / (ui * ui) + ui * ui * q * q));
  }
  EXPECT_THROW(f_series(p, 2, 0, u, 0), std::invalid_argument);
}

TEST(Chain, SeriesAgreesWithValues) {
  auto p = half_spin(2, 1, R(2));
  std::vector<Rational> u{R(3, 4)};
  const int order = 10;
  auto s = f_series(p, 1, 0, u, order);
  // remainder is O(z^{order+2}); halving z must shrink it by ~2^{order+2}
  auto err = [&](const Rational& z) { return lambda_du(p, 0, z, u) - s.evaluate(z); };
  Rational e1 = err(R(1, 40)), e2 = err(R(1, 80));
  ASSERT_NE(e2, 0);
  Rational ratio = e1 / e2;
  EXPECT_GT(ratio, 2000);
  EXPECT_LT(ratio, 8000);
}

TEST(Chain, ParameterAdmissibility) {
  auto p = half_spin(3, 2, R(2));
  EXPECT_THROW(ParameterVector<Rational>::bethe(p, {R(2), R(2)}), std::invalid_argument);
  EXPECT_THROW(ParameterVector<Rational>::bethe(p, {R(2), R(1, 2)}), std::invalid_argument);
  EXPECT_THROW(ParameterVector<Rational>::bethe(p, {R(2), R(1, 4)}), std::invalid_argument);
  auto u = ParameterVector<Rational>::bethe(p, {R(3), R(5)});
  EXPECT_THROW(ParameterVector<Rational>::free(p, u, {R(-3), R(7)}), std::invalid_argument);
  EXPECT_THROW(ParameterVector<Rational>::free(p, u, {R(1, 6), R(7)}), std::invalid_argument);
  EXPECT_NO_THROW(ParameterVector<Rational>::free(p, u, {R(2), R(7)}));
}

TEST(Chain, KernelSmallCases) {
  auto p = half_spin(2, 1, R(2));
  std::vector<Rational> u{R(3)}, v{R(5, 2)};
  EXPECT_EQ(kernel(p, u, v), lambda_du(p, 0, v[0], u) / f2_eval(p, 0, v[0], u));
}

TEST(Chain, KernelIsPermutationInvariant) {
  std::mt19937_64 rng(31);
  auto p = half_spin(3, 3, R(2));
  for (int trial = 0; trial < 5; ++trial) {
    auto u = distinct_rationals(rng, 3);
    auto v = distinct_rationals(rng, 3, u);
    Rational k = kernel(p, u, v);
    std::vector<Rational> vp{v[2], v[0], v[1]}, up{u[1], u[0], u[2]};
    EXPECT_EQ(kernel(p, u, vp), k);
    EXPECT_EQ(kernel(p, up, v), k);
  }
}

TEST(Chain, PrefactorSmallCase) {
  auto p = half_spin(2, 1, R(2));
  Rational u = R(3), v = R(5, 2), q = R(2), Q = R(-2);
  Rational wu = u - 1 / u, wv = v * v * q * q - 1 / (v * v * q * q);
  EXPECT_EQ(g_prefactor(p, {u}, {v}), R(1, 2) / Q * u * wu * wu * wu * wu / wv);
  EXPECT_THROW(g_prefactor(p, {R(1)}, {v}), PoleError);
  auto p2 = half_spin(3, 2, R(2));
  EXPECT_THROW(g_prefactor(p2, {R(2), R(1, 2)}, {R(3), R(5)}), PoleError);
}

TEST(Chain, SlavnovFactorsAndMonolithic) {
  std::mt19937_64 rng(37);
  for (int m = 1; m <= 2; ++m) {
    auto p = half_spin(m == 1 ? 1 : 3, m, R(3, 2));
    for (int trial = 0; trial < 5; ++trial) {
      auto u = distinct_rationals(rng, m);
      auto v = distinct_rationals(rng, m, u);
      Rational s;
      try {
        s = slavnov(p, u, v);
      } catch (const PoleError&) {
        continue;
      }
      EXPECT_EQ(s / kernel(p, u, v), g_prefactor(p, u, v));
      // single-expression evaluation
      auto w = [](const Rational& x) { return x - 1 / x; };
      Rational q = p.q, Q = p.Q;
      Rational pref = ipow(R(2), -m) * ipow(Q, -m);
      for (int j = 0; j < m; ++j)
        pref *= ipow(w(u[j]), 2 * p.N) * u[j] * w(u[j] * u[j]) / (w(u[j] * u[j]) * w(v[j] * v[j] * q * q));
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < i; ++j) pref *= w(u[i] * u[j] * q * q) / w(u[i] * u[j]);
      Matrix<Rational> num(m, m), den(m, m);
      for (int i = 0; i < m; ++i)
        for (int j = 0; j < m; ++j) {
          std::vector<Dual> ud;
          for (int k = 0; k < m; ++k) ud.emplace_back(u[k], k == i ? 1 : 0);
          num(i, j) = direct_lambda<Dual>(p.N, Dual(q), Dual(v[j]), ud).b;
          den(i, j) = 1 / (w(v[i] / u[j]) * w(v[i] * u[j] * q));
        }
      EXPECT_EQ(s, pref * det_cofactor(num) / det_cofactor(den));
    }
  }
}

TEST(Chain, QuadraticFieldSlavnov) {
  auto p = ChainParams<Quadratic>::from_boundary(2, 1, 2, R(2));
  std::vector<Quadratic> u{Quadratic(R(3, 2))}, v{Quadratic(R(5, 7))};
  Quadratic s = slavnov(p, u, v);
  EXPECT_FALSE(is_zero(s));
  EXPECT_EQ(s / kernel(p, u, v), g_prefactor(p, u, v));
  EXPECT_EQ(lambda_eval(p, v[0], u), lambda_eval(p, Quadratic(-v[0]), u));
}
