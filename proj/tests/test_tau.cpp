#include <slavkp/random.hpp>
#include <slavkp/schur.hpp>
#include <slavkp/tau.hpp>

#include <gtest/gtest.h>

#include <random>

using namespace slavkp;

namespace {

Rational R(long p, long q = 1) { return Rational(p) / Rational(q); }

ChainParams<Rational> half_spin(int n, int m, const Rational& q) { return ChainParams<Rational>(n, m, 1, q, -q); }

using Poly = MiwaPolynomial<Rational>;

Poly t(int K, int D, int k) { return Poly::time(K, D, k); }
Poly one(int K, int D) { return Poly::constant(K, D, R(1)); }

}  // namespace

TEST(Miwa, MapExamples) {
  auto a = miwa_map<Rational>({R(2)}, 3);
  EXPECT_EQ(a[1], R(2));
  EXPECT_EQ(a[2], R(2));
  EXPECT_EQ(a[3], R(8, 3));
  auto b = miwa_map<Rational>({R(2), R(3)}, 2);
  EXPECT_EQ(b[1], R(5));
  EXPECT_EQ(b[2], R(13, 2));
  auto c = miwa_map<Rational>({}, 4);
  for (int m = 1; m <= 4; ++m) EXPECT_EQ(c[m], R(0));
}

TEST(Miwa, ShiftSetIdentities) {
  auto x = miwa_map<Rational>({R(2), R(3)}, 6);
  EXPECT_EQ(miwa_shift(x, R(3), -1).t, miwa_map<Rational>({R(2)}, 6).t);
  auto y = miwa_map<Rational>({R(5, 7)}, 6);
  EXPECT_EQ(miwa_shift(y, R(-4), +1).t, miwa_map<Rational>({R(5, 7), R(-4)}, 6).t);
}

TEST(Miwa, ShiftPolynomial) {
  const int K = 4, D = 6;
  EXPECT_EQ(miwa_shift(t(K, D, 1), R(3, 2), -1), t(K, D, 1) - Poly::constant(K, D, R(3, 2)));
  Poly f = R(2) * (t(K, D, 1) * t(K, D, 2)) + t(K, D, 3) * t(K, D, 1) - R(5) * one(K, D) + t(K, D, 4);
  EXPECT_EQ(miwa_shift(miwa_shift(f, R(2, 3), +1), R(2, 3), -1), f);
  // shifting a polynomial then evaluating equals evaluating at shifted times
  auto times = miwa_map<Rational>({R(1, 2), R(-3)}, K);
  EXPECT_EQ(miwa_shift(f, R(7), -1).evaluate(times), f.evaluate(miwa_shift(times, R(7), -1)));
}

TEST(Tau, DetBasics) {
  auto p = half_spin(3, 1, R(2));
  std::vector<Rational> u{R(3, 5)};
  EXPECT_EQ(tau_det(p, 1, u, {R(7, 2)}), lambda_du(p, 0, R(7, 2), u));
  EXPECT_EQ(tau_det(p, 2, u, {R(7, 2)}), f2_eval(p, 0, R(7, 2), u));
  auto p2 = half_spin(3, 2, R(2));
  std::vector<Rational> u2{R(3, 5), R(-4)}, v{R(7, 2), R(2, 9)};
  EXPECT_EQ(tau_det(p2, 1, u2, v), tau_det(p2, 1, u2, {v[1], v[0]}));
  EXPECT_THROW(tau_det(p2, 2, u2, {v[0], v[0]}), std::invalid_argument);
  // 2x2 by hand
  auto F = [&](std::size_t i, const Rational& x) { return f2_eval(p2, i, x, u2); };
  Rational hand = (F(0, v[0]) * F(1, v[1]) - F(0, v[1]) * F(1, v[0])) / (v[0] - v[1]);
  EXPECT_EQ(tau_det(p2, 2, u2, v), hand);
}

TEST(Tau, ResidueFormEqualsDet) {
  std::mt19937_64 rng(41);
  for (int M = 1; M <= 3; ++M) {
    auto p = half_spin(3, M, R(3, 2));
    for (int trial = 0; trial < 5; ++trial) {
      auto inst = sample_instance(p, rng);
      for (int a = 1; a <= 2; ++a) EXPECT_EQ(tau_residue(p, a, inst.u, inst.v), tau_det(p, a, inst.u, inst.v));
    }
  }
}

TEST(Tau, KernelIsTauQuotient) {
  std::mt19937_64 rng(43);
  for (int M = 1; M <= 3; ++M) {
    auto p = half_spin(4, M, R(2));
    for (int trial = 0; trial < 5; ++trial) {
      auto inst = sample_instance(p, rng);
      EXPECT_EQ(kernel(p, inst.u, inst.v), tau_det(p, 1, inst.u, inst.v) / tau_det(p, 2, inst.u, inst.v));
    }
  }
}

TEST(Tau, PlueckerVanishes) {
  std::mt19937_64 rng(47);
  auto p1 = half_spin(2, 1, R(2));
  std::vector<Rational> u1{R(5, 3)};
  EXPECT_EQ(pluecker_residual(p1, 1, u1, {R(2, 7), R(9, 4)}, {}), R(0));
  for (int M = 1; M <= 3; ++M) {
    auto p = half_spin(3, M, R(2));
    for (int trial = 0; trial < 4; ++trial) {
      auto u = sample_roots(p, rng);
      auto X = sample_points(p, u, M + 1, rng);
      auto Y = sample_points(p, u, M - 1, rng);
      for (int a = 1; a <= 2; ++a) EXPECT_EQ(pluecker_residual(p, a, u, X, Y), R(0)) << "M=" << M << " a=" << a;
    }
  }
}

TEST(Tau, PlueckerNeedsSigns) {
  // dropping the alternating signs breaks the relation
  auto p = half_spin(3, 2, R(2));
  std::vector<Rational> u{R(3, 5), R(-4)}, X{R(7, 2), R(2, 9), R(-5, 3)}, Y{R(11, 6)};
  Rational unsigned_sum = 0;
  for (std::size_t i = 0; i < 3; ++i) {
    std::vector<Rational> without, with = Y;
    for (std::size_t k = 0; k < 3; ++k)
      if (k != i) without.push_back(X[k]);
    with.push_back(X[i]);
    unsigned_sum += family_det(p, 2, u, without) * family_det(p, 2, u, with);
  }
  EXPECT_NE(unsigned_sum, 0);
}

TEST(Hirota, HandExamples) {
  const int K = 4, D = 8;
  BilinearOperator<Rational> d1;
  d1.add({1}, R(1));
  Poly f = one(K, D) + t(K, D, 1) * t(K, D, 2) + R(3) * t(K, D, 3);
  EXPECT_TRUE(hirota_apply(d1, f, f).is_zero_polynomial());
  auto r = hirota_apply(d1, t(K, D, 1), t(K, D, 1) * t(K, D, 1));
  EXPECT_EQ(r, (t(K, D, 1) * t(K, D, 1)).truncated(D - 1));
  for (const auto& [name, op] : kp_low_order_operators<Rational>()) {
    if (name.rfind("D1^4", 0) == 0) continue;
    EXPECT_TRUE(hirota_apply(op, f, f).is_zero_polynomial()) << name;
  }
}

TEST(Hirota, KpOnSimpleTaus) {
  const int K = 8, D = 8;
  EXPECT_TRUE(hirota_kp_check(one(K, D)).is_zero_polynomial());
  EXPECT_TRUE(hirota_kp_check(one(K, D) + t(K, D, 1)).is_zero_polynomial());
  // a single Schur polynomial is a tau function
  EXPECT_TRUE(hirota_kp_check(schur_miwa<Rational>(Partition{2, 1}, D)).is_zero_polynomial());
  // 1 + t1^2 = s_0 + s_(2) + s_(1,1) violates c_0 c_(2,2) - c_(1) c_(2,1) + c_(2) c_(1,1) = 0
  EXPECT_FALSE(hirota_kp_check(one(K, D) + t(K, D, 1) * t(K, D, 1)).is_zero_polynomial());
}

TEST(Hirota, FourthOperatorEqualsKpOnEqualArguments) {
  const int K = 8, D = 8;
  Poly f = one(K, D) + R(2) * t(K, D, 1) + t(K, D, 2) * t(K, D, 3) - t(K, D, 5);
  auto ops = kp_low_order_operators<Rational>();
  EXPECT_EQ(hirota_apply(ops[3].second, f, f), hirota_kp_check(f));
}

TEST(Andreev, DiscreteIdentity) {
  std::mt19937_64 rng(53);
  for (int M = 1; M <= 3; ++M)
    for (int trial = 0; trial < 3; ++trial) {
      const int n = M + 1 + trial;
      std::vector<std::pair<Rational, Rational>> measure;
      for (int k = 0; k < n; ++k) measure.emplace_back(sample_rational(rng), sample_rational(rng));
      std::vector<std::function<Rational(const Rational&)>> fs, gs;
      for (int i = 0; i < M; ++i) {
        Rational a = sample_rational(rng), b = sample_rational(rng);
        fs.push_back([=](const Rational& z) { return ipow(z, i) + a; });
        gs.push_back([=](const Rational& z) { return b / (z - 20) + ipow(z, 2 * i); });
      }
      EXPECT_EQ(andreev_residual(measure, fs, gs), R(0)) << "M=" << M;
    }
}
