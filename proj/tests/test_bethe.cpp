#include <slavkp/bethe.hpp>
#include <slavkp/tau.hpp>

#include <gtest/gtest.h>

#include <numbers>

#include "test_support.hpp"

using namespace slavkp;

namespace {

Rational R(long p, long q = 1) { return Rational(p) / Rational(q); }

Rational pow10(int k) {
  Rational r = 1;
  for (int i = 0; i < k; ++i) r *= 10;
  return r;
}

double to_double(const Rational& r) { return static_cast<double>(r); }

// Angles theta with Im((w(u)/w(uq))^N) = 0 at u = e^{i theta}/sqrt(q), found by bisection.
std::vector<Complex> bisection_roots(const ChainParams<Complex>& p, int samples = 4000) {
  const Real two_pi = 2 * boost::math::constants::pi<Real>();
  const Real radius = 1 / mp::sqrt(Real(p.q.real()));
  auto point = [&](const Real& th) { return Complex(radius * mp::cos(th), radius * mp::sin(th)); };
  auto g = [&](const Real& th) {
    Complex u = point(th);
    return Real(ipow(Complex(w_eval(u) / w_eval(Complex(u * p.q))), p.N).imag());
  };
  std::vector<Complex> out;
  Real step = two_pi / samples;
  Real shift = step / 3;  // keep samples off the symmetric points
  for (int k = 0; k < samples; ++k) {
    Real a = shift + step * k, b = a + step;
    Real ga = g(a), gb = g(b);
    if ((ga < 0) == (gb < 0)) continue;
    for (int it = 0; it < 200; ++it) {
      Real m = (a + b) / 2, gm = g(m);
      if ((gm < 0) == (ga < 0)) {
        a = m;
        ga = gm;
      } else {
        b = m;
      }
    }
    Complex u = point((a + b) / 2);
    if (mp::abs(w_eval(Complex(p.q * u * u))) > Real("1e-6")) out.push_back(u);
  }
  return out;
}

// First converged two-root solution from a grid of guesses near |u| = 1/sqrt(q).
BetheSolution grid_solution(const ChainParams<Complex>& p) {
  Real r = 1 / mp::sqrt(Real(p.q.real()));
  for (int a = 0; a < 6; ++a)
    for (int b = 0; b < 6; ++b) {
      Real ta = Real("0.2") + Real(a) * Real("1.05"), tb = Real("0.7") + Real(b) * Real("1.05");
      std::vector<Complex> g{Complex(r * Real("1.05") * mp::cos(ta), r * Real("1.05") * mp::sin(ta)),
                             Complex(r * Real("0.95") * mp::cos(tb), r * Real("0.95") * mp::sin(tb))};
      try {
        auto sol = solve_bethe(p, g);
        if (sol.converged) return sol;
      } catch (const std::invalid_argument&) {
      }
    }
  return {};
}

}  // namespace

TEST(Bethe, ResidueIsLimitOfScaledLambda) {
  ChainParams<Rational> p(3, 2, 1, R(2), R(-2));
  std::vector<Rational> u{R(3, 5), R(-7, 4)};
  for (std::size_t j = 0; j < u.size(); ++j) {
    Rational res = lambda_residue(p, u, j);
    Rational prev_err = -1;
    for (int k = 4; k <= 12; k += 4) {
      Rational h = 1 / pow10(k);
      Rational v = u[j] + h;
      Rational err = mp::abs(h * lambda_eval(p, v, u) - res);
      if (prev_err >= 0) EXPECT_LT(err, prev_err / 1000);
      prev_err = err;
    }
    EXPECT_LT(to_double(prev_err), 1e-9 * (1 + std::abs(to_double(res))));
  }
}

TEST(Bethe, CrossingResidueIsLimitAtImagePole) {
  ChainParams<Rational> p(2, 2, 1, R(3), R(-3));
  std::vector<Rational> u{R(2, 7), R(5, 3)};
  for (std::size_t j = 0; j < u.size(); ++j) {
    Rational v0 = 1 / (p.q * u[j]);
    Rational h = 1 / pow10(14);
    Rational approx = h * lambda_eval(p, Rational(v0 + h), u);
    Rational res = crossing_residue(p, u, j);
    EXPECT_LT(to_double(mp::abs(approx - res)), 1e-10 * (1 + std::abs(to_double(res))));
  }
}

TEST(Bethe, OneMagnonResidueClosedForm) {
  for (int N : {1, 2, 4}) {
    ChainParams<Rational> p(N, 1, 1, R(5, 2), R(-5, 2));
    for (Rational u : {R(1, 3), R(-4, 7), R(9, 2)}) {
      auto w = [](const Rational& x) { return w_eval(x); };
      Rational q = p.q;
      Rational expected = (u / 2) * (Rational(-1) / w(q * u * u)) * w(u * u) * w(u * u * q * q) * w(q) *
                          (ipow(w(u), 2 * N) - ipow(w(u * q), 2 * N)) / w(q * u * u);
      EXPECT_EQ(lambda_residue(p, std::vector<Rational>{u}, 0), expected) << N;
    }
  }
}

TEST(Bethe, OneMagnonRootsMatchBisection) {
  for (int N : {3, 4}) {
    ChainParams<Complex> p(N, 1, 1, Complex(2), Complex(-2));
    auto oracle = bisection_roots(p);
    EXPECT_EQ(oracle.size(), static_cast<std::size_t>(4 * N - 4)) << N;
    int converged = 0;
    for (double r : {0.5, 0.7, 1.2}) {
      for (int k = 0; k < 12; ++k) {
        double th = 0.1 + 2 * std::numbers::pi * k / 12;
        Complex g(Real(r * std::cos(th)), Real(r * std::sin(th)));
        auto sol = solve_bethe(p, {g});
        if (!sol.converged) continue;
        ++converged;
        EXPECT_LT(sol.residual, Real("1e-10"));
        Real best = 1;
        for (const auto& o : oracle) best = std::min(best, Real(mp::abs(o - sol.roots[0])));
        EXPECT_LT(best, Real("1e-25")) << sol.roots[0];
      }
    }
    EXPECT_GE(converged, 18) << N;
  }
}

TEST(Bethe, ConvergedRootIsFixedPoint) {
  ChainParams<Complex> p(4, 2, 1, Complex(Real(3) / 2), Complex(Real(-3) / 2));
  auto sol = grid_solution(p);
  ASSERT_TRUE(sol.converged);
  auto again = solve_bethe(p, sol.roots);
  EXPECT_TRUE(again.converged);
  EXPECT_LE(again.iterations, 2);
  for (std::size_t j = 0; j < 2; ++j) EXPECT_LT(mp::abs(again.roots[j] - sol.roots[j]), Real("1e-25"));
}

TEST(Bethe, CollidingGuessesRejected) {
  ChainParams<Complex> p(3, 2, 1, Complex(2), Complex(-2));
  Complex a(Real("0.5"), Real("0.2"));
  EXPECT_THROW(solve_bethe(p, {a, a}), std::invalid_argument);
  EXPECT_THROW(solve_bethe(p, {a, Complex(-a)}), std::invalid_argument);
  EXPECT_THROW(solve_bethe(p, {a, Complex(Complex(1) / a)}), std::invalid_argument);
  EXPECT_THROW(solve_bethe(p, {a}), std::invalid_argument);
}

TEST(Bethe, PoleSignatureSeparatesOnShell) {
  ChainParams<Complex> p(4, 2, 1, Complex(2), Complex(-2));
  std::vector<Complex> guess{Complex(Real("0.5"), Real("0.3")), Complex(Real("-0.2"), Real("0.6"))};
  auto sol = grid_solution(p);
  ASSERT_TRUE(sol.converged);
  for (std::size_t j = 0; j < 2; ++j) {
    EXPECT_LT(pole_signature(p, sol.roots, j), 10);
    EXPECT_GT(pole_signature(p, guess, j), 100);
  }
  EXPECT_LT(sol.crossing_residual, Real("1e-10"));
}

TEST(Bethe, TwoMagnonGridResiduals) {
  ChainParams<Complex> p(4, 2, 1, Complex(Real(3) / 2), Complex(Real(-3) / 2));
  int converged = 0, total = 0;
  for (int a = 0; a < 5; ++a)
    for (int b = 0; b < 5; ++b) {
      Real ta = Real("0.3") + Real(a) * Real("1.2"), tb = Real("0.9") + Real(b) * Real("1.3");
      std::vector<Complex> g{Complex(Real("0.8") * mp::cos(ta), Real("0.8") * mp::sin(ta)),
                             Complex(Real("0.6") * mp::cos(tb), Real("0.6") * mp::sin(tb))};
      BetheSolution sol;
      try {
        sol = solve_bethe(p, g);
      } catch (const std::invalid_argument&) {
        continue;
      }
      ++total;
      if (!sol.converged) continue;
      ++converged;
      EXPECT_LT(sol.residual, Real("1e-10"));
      for (std::size_t j = 0; j < 2; ++j) EXPECT_LT(pole_signature(p, sol.roots, j), 10);
    }
  EXPECT_GT(total, 0);
  EXPECT_GE(converged, 5);
}

TEST(Bethe, GaussianRationalRootsAreNearlyOnShell) {
  ChainParams<Complex> pc(4, 2, 1, Complex(2), Complex(-2));
  auto sol = grid_solution(pc);
  ASSERT_TRUE(sol.converged);
  ChainParams<Quadratic> p(4, 2, 1, Quadratic(2), Quadratic(-2));
  auto u = rational_roots(sol.roots);
  for (std::size_t j = 0; j < 2; ++j) {
    Quadratic res = lambda_residue(p, u, j);
    EXPECT_LT(mp::abs(to_complex(res)), Real("1e-25"));
  }
  // kernel identity holds exactly at the rounded roots
  std::vector<Quadratic> v{Quadratic(R(1, 7)), Quadratic(R(-2, 9))};
  EXPECT_EQ(kernel(p, u, v), tau_det(p, 1, u, v) / tau_det(p, 2, u, v));
}
