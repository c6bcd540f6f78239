#pragma once

// Tau functions det F(v) / Delta(v), their residue form, Miwa maps and shifts,
// Pluecker and Hirota bilinear residuals, Baker-Akhiezer quotients and the
// discrete Andreev identity.

#include <slavkp/chain.hpp>
#include <slavkp/matrix.hpp>
#include <slavkp/miwa_polynomial.hpp>
#include <slavkp/scalar.hpp>

#include <functional>
#include <map>
#include <optional>
#include <type_traits>
#include <stdexcept>
#include <utility>
#include <vector>

namespace slavkp {

/// t_m = (1/m) sum_i x_i^m, m = 1..K.
template <class T>
MiwaTimes<T> miwa_map(const std::vector<T>& points, int K) {
  if (K < 1) throw std::invalid_argument("miwa_map needs K >= 1");
  MiwaTimes<T> t;
  t.t.reserve(static_cast<std::size_t>(K));
  for (int m = 1; m <= K; ++m) {
    T acc = from_int<T>(0);
    for (const auto& x : points) acc = acc + ipow(x, m);
    t.t.push_back(acc / from_int<T>(m));
  }
  return t;
}

/// t -> t + sign [x], i.e. t_p -> t_p + sign x^p / p.
template <class T>
MiwaTimes<T> miwa_shift(const MiwaTimes<T>& t, const T& x, int sign) {
  MiwaTimes<T> out = t;
  for (int p = 1; p <= t.size(); ++p) {
    T step = ipow(x, p) / from_int<T>(p);
    out.t[static_cast<std::size_t>(p - 1)] = sign >= 0 ? out[p] + step : out[p] - step;
  }
  return out;
}

/// Substitutes t_p -> t_p + sign x^p / p into a polynomial. Lower-degree
/// coefficients of the result only see the retained terms of f.
template <class T>
MiwaPolynomial<T> miwa_shift(const MiwaPolynomial<T>& f, const T& x, int sign) {
  const int K = f.maxtime(), D = f.cutoff();
  std::vector<std::vector<MiwaPolynomial<T>>> powers(static_cast<std::size_t>(K));
  auto power = [&](int p, int e) -> const MiwaPolynomial<T>& {
    auto& cache = powers[static_cast<std::size_t>(p - 1)];
    if (cache.empty()) {
      cache.push_back(MiwaPolynomial<T>::constant(K, D, from_int<T>(1)));
      T step = ipow(x, p) / from_int<T>(p);
      if (sign < 0) step = -step;
      cache.push_back(MiwaPolynomial<T>::time(K, D, p) + MiwaPolynomial<T>::constant(K, D, step));
    }
    while (static_cast<int>(cache.size()) <= e) cache.push_back(cache.back() * cache[1]);
    return cache[static_cast<std::size_t>(e)];
  };
  MiwaPolynomial<T> out(K, D);
  for (const auto& [m, c] : f.terms()) {
    MiwaPolynomial<T> term = MiwaPolynomial<T>::constant(K, D, c);
    for (int p = 1; p <= K; ++p)
      if (m[static_cast<std::size_t>(p - 1)] > 0) term = term * power(p, m[static_cast<std::size_t>(p - 1)]);
    out = out + term;
  }
  return out;
}

/// det_{k,j} F_j(x_k) with rows indexed by the points.
template <class T>
T family_det(const ChainParams<T>& p, int family, const std::vector<T>& u, const std::vector<T>& points) {
  if (points.size() != u.size()) throw std::invalid_argument("need exactly M points");
  auto m = Matrix<T>::generate(points.size(), u.size(),
                               [&](std::size_t k, std::size_t j) { return family_eval(p, family, j, points[k], u); });
  return det(m);
}

/// tau^{(a)}(v) = det F_i(v_j) / Delta(v).
template <class T>
T tau_det(const ChainParams<T>& p, int family, const std::vector<T>& u, const std::vector<T>& points) {
  T delta = vandermonde(points);
  if (is_zero(delta)) throw std::invalid_argument("tau points must be pairwise distinct");
  return family_det(p, family, u, points) / delta;
}

/// Residue form of tau: (-1)^{M(M-1)/2} det_{i,j} sum_k v_k^{M-i} F_j(v_k) / prod_{m!=k}(v_k - v_m).
template <class T>
T tau_residue(const ChainParams<T>& p, int family, const std::vector<T>& u, const std::vector<T>& points) {
  const std::size_t M = points.size();
  if (M != u.size()) throw std::invalid_argument("need exactly M points");
  std::vector<T> inv_den(M);
  for (std::size_t k = 0; k < M; ++k) {
    T den = from_int<T>(1);
    for (std::size_t m = 0; m < M; ++m)
      if (m != k) den = den * (points[k] - points[m]);
    if (is_zero(den)) throw std::invalid_argument("tau points must be pairwise distinct");
    inv_den[k] = from_int<T>(1) / den;
  }
  Matrix<T> f(M, M);
  for (std::size_t k = 0; k < M; ++k)
    for (std::size_t j = 0; j < M; ++j) f(k, j) = family_eval(p, family, j, points[k], u);
  auto mat = Matrix<T>::generate(M, M, [&](std::size_t i, std::size_t j) {
    T acc = from_int<T>(0);
    for (std::size_t k = 0; k < M; ++k)
      acc = acc + ipow(points[k], static_cast<long>(M - 1 - i)) * f(k, j) * inv_den[k];
    return acc;
  });
  T d = det(mat);
  return (M * (M - 1) / 2) % 2 ? T(-d) : d;
}

/// sum_{i=1}^{M+1} (-1)^i det F(X \ x_i) det F(Y u {x_i}), x_i appended after Y.
template <class T>
T pluecker_residual(const ChainParams<T>& p, int family, const std::vector<T>& u, const std::vector<T>& X,
                    const std::vector<T>& Y) {
  const std::size_t M = u.size();
  if (X.size() != M + 1 || Y.size() + 1 != M) throw std::invalid_argument("Pluecker needs |X| = M+1 and |Y| = M-1");
  if (is_zero(vandermonde(X))) throw std::invalid_argument("X entries must be distinct");
  if (is_zero(vandermonde(Y))) throw std::invalid_argument("Y entries must be distinct");
  T acc = from_int<T>(0);
  for (std::size_t i = 0; i < X.size(); ++i) {
    std::vector<T> without, with = Y;
    for (std::size_t k = 0; k < X.size(); ++k)
      if (k != i) without.push_back(X[k]);
    with.push_back(X[i]);
    T term = family_det(p, family, u, without) * family_det(p, family, u, with);
    acc = (i % 2 == 0) ? acc - term : acc + term;  // (-1)^{i+1} for 0-based i
  }
  return acc;
}

/// Polynomial in Hirota derivatives D_1, D_2, ...: exponent vector -> coefficient.
template <class T>
struct BilinearOperator {
  std::map<std::vector<int>, T> coefficients;

  int weight() const {
    int w = 0;
    for (const auto& [m, c] : coefficients) w = std::max(w, weighted_degree(m));
    return w;
  }
  int max_index() const {
    int k = 0;
    for (const auto& [m, c] : coefficients)
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] > 0) k = std::max(k, static_cast<int>(i + 1));
    return k;
  }

  /// c * D_1^{e_1} D_2^{e_2} ...
  BilinearOperator& add(std::vector<int> exponents, const T& c) {
    while (!exponents.empty() && exponents.back() == 0) exponents.pop_back();
    T& slot = coefficients.try_emplace(exponents, from_int<T>(0)).first->second;
    slot = slot + c;
    return *this;
  }
};

/// The operators listed as the first coefficients of the bilinear hierarchy.
template <class T>
std::vector<std::pair<std::string, BilinearOperator<T>>> kp_low_order_operators() {
  auto c = [](long x) { return from_int<T>(x); };
  BilinearOperator<T> d1, d2, d3, d4;
  d1.add({1}, c(1));
  d2.add({0, 1}, c(1));
  d3.add({3}, c(1)).add({0, 0, 1}, c(-4));
  d4.add({4}, c(1)).add({0, 2}, c(3)).add({1, 0, 1}, c(-4)).add({2, 1}, c(3)).add({0, 0, 0, 1}, c(-6));
  return {{"D1", d1}, {"D2", d2}, {"D1^3-4D3", d3}, {"D1^4+3D2^2-4D1D3+3D1^2D2-6D4", d4}};
}

/// D_1^4 + 3 D_2^2 - 4 D_1 D_3, the part of the fourth operator that survives on equal arguments.
template <class T>
BilinearOperator<T> kp_operator() {
  BilinearOperator<T> op;
  op.add({4}, from_int<T>(1)).add({0, 2}, from_int<T>(3)).add({1, 0, 1}, from_int<T>(-4));
  return op;
}

/// P(D)[f, g] = P(d_x) f(t - x) g(t + x) at x = 0. The result is known
/// through weighted degree cutoff - weight(P).
template <class T>
MiwaPolynomial<T> hirota_apply(const BilinearOperator<T>& P, const MiwaPolynomial<T>& f, const MiwaPolynomial<T>& g) {
  if (f.maxtime() != g.maxtime() || f.cutoff() != g.cutoff())
    throw std::invalid_argument("Hirota operands disagree on maxtime/cutoff");
  if (P.max_index() > f.maxtime()) throw std::invalid_argument("operator uses more times than the polynomials carry");
  const int K = f.maxtime();
  const int D = std::max(0, f.cutoff() - P.weight());
  MiwaPolynomial<T> out(K, D);
  std::map<std::vector<int>, MiwaPolynomial<T>> df, dg;
  auto deriv = [&](std::map<std::vector<int>, MiwaPolynomial<T>>& cache, const MiwaPolynomial<T>& h,
                   const std::vector<int>& orders) -> const MiwaPolynomial<T>& {
    auto it = cache.find(orders);
    if (it == cache.end()) it = cache.emplace(orders, h.derivative(orders).truncated(D)).first;
    return it->second;
  };
  for (const auto& [alpha, coef] : P.coefficients) {
    std::vector<int> beta(alpha.size(), 0);
    // enumerate 0 <= beta <= alpha
    for (;;) {
      T weight = coef;
      int order = 0;
      std::vector<int> rest(alpha.size());
      for (std::size_t k = 0; k < alpha.size(); ++k) {
        weight = weight * from_rational<T>(Rational(binomial(alpha[k], beta[k])));
        order += beta[k];
        rest[k] = alpha[k] - beta[k];
      }
      if (order % 2) weight = -weight;
      out = out + weight * (deriv(df, f, beta) * deriv(dg, g, rest));
      std::size_t k = 0;
      while (k < alpha.size() && beta[k] == alpha[k]) beta[k++] = 0;
      if (k == alpha.size()) break;
      ++beta[k];
    }
  }
  return out;
}

/// (D_1^4 + 3 D_2^2 - 4 D_1 D_3)[tau, tau]; vanishes through degree cutoff - 4
/// exactly when tau solves the KP equation to that order.
template <class T>
MiwaPolynomial<T> hirota_kp_check(const MiwaPolynomial<T>& tau) {
  return hirota_apply(kp_operator<T>(), tau, tau);
}

/// The data the Baker-Akhiezer quotient reads: the two Schur-expanded
/// tau functions in Miwa times and the time configuration.
template <class T>
struct BakerAkhiezerContext {
  MiwaPolynomial<T> tau1;
  MiwaPolynomial<T> tau2;
  MiwaTimes<T> t;

  const MiwaPolynomial<T>& tau(int a) const {
    if (a == 1) return tau1;
    if (a == 2) return tau2;
    throw std::invalid_argument("tau index must be 1 or 2");
  }
};

/// psi_ab(t, z) = tau_a(t - [1/z]) / tau_b(t); z = nullopt means z = infinity.
template <class T>
T baker_akhiezer(const BakerAkhiezerContext<T>& ctx, int a, int b, const std::optional<std::type_identity_t<T>>& z = std::nullopt) {
  T den = ctx.tau(b).evaluate(ctx.t);
  if (is_zero(den)) throw PoleError("tau" + std::to_string(b) + "(t) vanishes");
  if (!z) return ctx.tau(a).evaluate(ctx.t) / den;
  if (is_zero(*z)) throw PoleError("Baker-Akhiezer shift [1/z] is singular at z = 0");
  auto shifted = miwa_shift(ctx.t, T(from_int<T>(1) / *z), -1);
  return ctx.tau(a).evaluate(shifted) / den;
}

/// det(sum_z mu(z) f_i(z) g_j(z)) - (1/M!) sum over M-tuples of distinct
/// points of prod mu(z_k) det(f_j(z_k)) det(g_j(z_k)).
template <class T>
T andreev_residual(const std::vector<std::pair<T, T>>& measure, const std::vector<std::function<T(const T&)>>& fs,
                   const std::vector<std::function<T(const T&)>>& gs) {
  const std::size_t M = fs.size();
  if (gs.size() != M) throw std::invalid_argument("Andreev identity needs as many f as g");
  if (measure.size() < M) throw std::invalid_argument("measure needs at least M points");
  const std::size_t n = measure.size();
  Matrix<T> fv(M, n), gv(M, n);
  for (std::size_t i = 0; i < M; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      fv(i, k) = fs[i](measure[k].first);
      gv(i, k) = gs[i](measure[k].first);
    }
  auto lhs_mat = Matrix<T>::generate(M, M, [&](std::size_t i, std::size_t j) {
    T acc = from_int<T>(0);
    for (std::size_t k = 0; k < n; ++k) acc = acc + measure[k].second * fv(i, k) * gv(j, k);
    return acc;
  });
  T lhs = det(lhs_mat);

  T rhs = from_int<T>(0);
  std::vector<std::size_t> tuple;
  std::vector<bool> used(n, false);
  std::function<void()> recurse = [&]() {
    if (tuple.size() == M) {
      T weight = from_int<T>(1);
      for (auto k : tuple) weight = weight * measure[k].second;
      auto a = Matrix<T>::generate(M, M, [&](std::size_t j, std::size_t k) { return fv(j, tuple[k]); });
      auto b = Matrix<T>::generate(M, M, [&](std::size_t j, std::size_t k) { return gv(j, tuple[k]); });
      rhs = rhs + weight * det(a) * det(b);
      return;
    }
    for (std::size_t k = 0; k < n; ++k) {
      if (used[k]) continue;
      used[k] = true;
      tuple.push_back(k);
      recurse();
      tuple.pop_back();
      used[k] = false;
    }
  };
  recurse();
  long factorial = 1;
  for (std::size_t k = 2; k <= M; ++k) factorial *= static_cast<long>(k);
  return lhs - rhs / from_int<T>(factorial);
}

}  // namespace slavkp
