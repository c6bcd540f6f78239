#pragma once

// Open Temperley-Lieb chain quantities: the transfer-matrix eigenvalue
// Lambda(v, u), its u-derivatives, the two generating families F1/F2, the
// prefactor G and the Slavnov product with its determinant kernel.
//
// Lambda is written once against an evaluation policy: PointVar evaluates at
// a scalar v, SeriesVar expands in z about z = 0. Both share the formula.

#include <slavkp/laurent_series.hpp>
#include <slavkp/matrix.hpp>
#include <slavkp/scalar.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace slavkp {

/// Sum_{k=-s}^{s} Q^{2k}.
template <class T>
T boundary_sum(const T& Q, int spin_twice) {
  T acc = from_int<T>(0);
  for (int e = -spin_twice; e <= spin_twice; e += 2) acc = acc + ipow(Q, e);
  return acc;
}

/// Chain data. The boundary constraint sum_k Q^{2k} = -(q + 1/q) holds
/// exactly (float mode: to the field tolerance).
template <class T>
struct ChainParams {
  int N = 1;
  int M = 1;
  int spin_twice = 1;
  T q;
  T Q;

  ChainParams(int n, int m, int spin2, T q_, T Q_) : N(n), M(m), spin_twice(spin2), q(std::move(q_)), Q(std::move(Q_)) {
    if (N < 1) throw std::invalid_argument("chain needs N >= 1");
    if (M < 0 || M > N) throw std::invalid_argument("magnon number must satisfy 0 <= M <= N");
    if (spin_twice < 1) throw std::invalid_argument("spin must be a positive half-integer");
    const T one = from_int<T>(1);
    if (is_zero(q) || q == one || q == T(-one)) throw std::invalid_argument("q must avoid {0, 1, -1}");
    if (is_zero(Q)) throw std::invalid_argument("Q must be nonzero");
    T residual = boundary_sum(Q, spin_twice) + q + one / q;
    if (!negligible(residual, magnitude(q) + magnitude(one / q)))
      throw std::invalid_argument("boundary constraint sum Q^{2k} = -(q + 1/q) violated: residual " + to_string(residual));
  }

  /// Solves q + 1/q = -sum_k Q^{2k} for q; `branch` selects the sign of the
  /// square root in q = (-c + branch*sqrt(c^2 - 4))/2.
  static ChainParams from_boundary(int n, int m, int spin2, const Rational& Q, int branch = +1) {
    if (Q == 0) throw std::invalid_argument("Q must be nonzero");
    Rational c = boundary_sum(Q, spin2);
    Rational disc = c * c - 4;
    T root = field_traits<T>::sqrt_of(disc);
    T cc = from_rational<T>(c);
    T qv = (T(-cc) + (branch >= 0 ? root : T(-root))) / from_int<T>(2);
    return ChainParams(n, m, spin2, qv, from_rational<T>(Q));
  }

  int spin_numerator() const { return spin_twice; }
};

/// Bethe roots u or free parameters v with the admissibility sets checked at
/// construction.
enum class ParameterRole { bethe_u, free_v };

template <class T>
struct ParameterVector {
  std::vector<T> values;
  ParameterRole role = ParameterRole::bethe_u;

  std::size_t size() const { return values.size(); }
  const T& operator[](std::size_t i) const { return values[i]; }

  static ParameterVector bethe(const ChainParams<T>& p, std::vector<T> u) {
    if (static_cast<int>(u.size()) != p.M) throw std::invalid_argument("expected M Bethe roots");
    const T one = from_int<T>(1), qinv = one / p.q;
    for (std::size_t i = 0; i < u.size(); ++i) {
      if (is_zero(u[i])) throw std::invalid_argument("Bethe root u" + std::to_string(i + 1) + " is zero");
      for (std::size_t j = 0; j < u.size(); ++j) {
        if (i == j) continue;
        if (u[i] == u[j]) throw std::invalid_argument("Bethe roots must be pairwise distinct");
        T prod = u[i] * u[j];
        if (prod == one || prod == T(-one) || prod == qinv || prod == T(-qinv))
          throw std::invalid_argument("u" + std::to_string(i + 1) + "*u" + std::to_string(j + 1) +
                                      " lies in {+-1, +-1/q}");
      }
    }
    return ParameterVector{std::move(u), ParameterRole::bethe_u};
  }

  static ParameterVector free(const ChainParams<T>& p, const ParameterVector& u, std::vector<T> v) {
    if (static_cast<int>(v.size()) != p.M) throw std::invalid_argument("expected M free parameters");
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (is_zero(v[i])) throw std::invalid_argument("free parameter v" + std::to_string(i + 1) + " is zero");
      for (std::size_t j = 0; j < v.size(); ++j)
        if (i != j && v[i] == v[j]) throw std::invalid_argument("free parameters must be pairwise distinct");
      for (std::size_t j = 0; j < u.size(); ++j) {
        T quinv = from_int<T>(1) / (p.q * u[j]);
        if (v[i] == u[j] || v[i] == T(-u[j]) || v[i] == quinv || v[i] == T(-quinv))
          throw std::invalid_argument("v" + std::to_string(i + 1) + " lies in {+-u" + std::to_string(j + 1) +
                                      ", +-1/(q u" + std::to_string(j + 1) + ")}");
      }
    }
    return ParameterVector{std::move(v), ParameterRole::free_v};
  }
};

/// w(v) = v - 1/v.
template <class T>
T w_eval(const T& v) {
  if (is_zero(v)) throw PoleError("w(v) is singular at v = 0");
  return v - from_int<T>(1) / v;
}

namespace detail {

/// Evaluation at a point v.
template <class T>
struct PointVar {
  using value_type = T;
  T v;

  T mono(const T& c, int k) const { return c * ipow(v, k); }
  T constant(const T& c) const { return c; }
  T div(const T& a, const T& b, const std::string& what) const {
    if (is_zero(b)) throw PoleError(what + " vanishes");
    return a / b;
  }
};

/// Laurent expansion in z about 0; every inverse is expanded through `work`.
template <class T>
struct SeriesVar {
  using value_type = LaurentSeries<T>;
  int work;

  LaurentSeries<T> mono(const T& c, int k) const { return LaurentSeries<T>::monomial(c, k); }
  LaurentSeries<T> constant(const T& c) const { return LaurentSeries<T>::constant(c); }
  LaurentSeries<T> div(const LaurentSeries<T>& a, const LaurentSeries<T>& b, const std::string& what) const {
    if (!b.valuation()) throw PoleError(what + " vanishes identically");
    return a * series_invert(b, work);
  }
};

/// w(c x^k) = c x^k - (c x^k)^{-1}
template <class T, class Var>
auto w_of(const Var& x, const T& c, int k) {
  return x.mono(c, k) - x.mono(from_int<T>(1) / c, -k);
}
/// c x^k + (c x^k)^{-1}
template <class T, class Var>
auto wplus_of(const Var& x, const T& c, int k) {
  return x.mono(c, k) + x.mono(from_int<T>(1) / c, -k);
}

/// One factor w(coef * x) whose coefficient depends on a root u as
/// coef = kappa * u^{u_power}, so that d/du w(coef x) = u_power (coef x + 1/(coef x)) / u.
template <class T>
struct RootFactor {
  T coef;
  int u_power;
};

/// The per-root ratio a_j (first summand) or b_j (second summand):
/// numerator factors over the common denominator w(x/u) w(q u x).
template <class T>
struct RootRatio {
  RootFactor<T> num[2];
  RootFactor<T> den[2];
};

template <class T>
RootRatio<T> first_ratio(const T& q, const T& u) {
  const T one = from_int<T>(1);
  return {{{one / (q * u), -1}, {u, +1}}, {{one / u, -1}, {q * u, +1}}};
}
template <class T>
RootRatio<T> second_ratio(const T& q, const T& u) {
  const T one = from_int<T>(1);
  return {{{q / u, -1}, {q * q * u, +1}}, {{one / u, -1}, {q * u, +1}}};
}

template <class T, class Var>
auto ratio_value(const Var& x, const RootRatio<T>& r, std::size_t j) {
  auto num = w_of(x, r.num[0].coef, 1) * w_of(x, r.num[1].coef, 1);
  auto den = w_of(x, r.den[0].coef, 1) * w_of(x, r.den[1].coef, 1);
  return x.div(num, den, "w(v/u" + std::to_string(j + 1) + ") w(v q u" + std::to_string(j + 1) + ")");
}

/// d/du of the ratio, by the quotient rule on the factor products.
template <class T, class Var>
auto ratio_derivative(const Var& x, const RootRatio<T>& r, const T& u, std::size_t j) {
  auto dfactor = [&](const RootFactor<T>& f) {
    return x.constant(from_int<T>(f.u_power) / u) * wplus_of(x, f.coef, 1);
  };
  auto n0 = w_of(x, r.num[0].coef, 1), n1 = w_of(x, r.num[1].coef, 1);
  auto d0 = w_of(x, r.den[0].coef, 1), d1 = w_of(x, r.den[1].coef, 1);
  auto num = n0 * n1;
  auto den = d0 * d1;
  auto dnum = dfactor(r.num[0]) * n1 + n0 * dfactor(r.num[1]);
  auto dden = dfactor(r.den[0]) * d1 + d0 * dfactor(r.den[1]);
  return x.div(dnum * den - num * dden, den * den,
               "w(v/u" + std::to_string(j + 1) + ") w(v q u" + std::to_string(j + 1) + ")");
}

/// The two u-independent prefactors of Lambda, each already divided by
/// -w(x^2 q).
template <class T, class Var>
auto lambda_prefactors(const ChainParams<T>& p, const Var& x) {
  const T one = from_int<T>(1);
  auto a = w_of(x, p.q * p.q, 2);
  auto b = w_of(x, one, 2);
  auto wq = w_of(x, p.q, 1), w1 = w_of(x, one, 1);
  for (int k = 0; k < 2 * p.N; ++k) {
    a = a * wq;
    b = b * w1;
  }
  auto den = x.constant(from_int<T>(-1)) * w_of(x, p.q, 2);
  return std::pair{x.div(a, den, "w(v^2 q)"), x.div(b, den, "w(v^2 q)")};
}

template <class T, class Var>
auto lambda_generic(const ChainParams<T>& p, const std::vector<T>& u, const Var& x) {
  auto [first, second] = lambda_prefactors(p, x);
  for (std::size_t j = 0; j < u.size(); ++j) {
    first = first * ratio_value(x, first_ratio(p.q, u[j]), j);
    second = second * ratio_value(x, second_ratio(p.q, u[j]), j);
  }
  return first + second;
}

template <class T, class Var>
auto lambda_du_generic(const ChainParams<T>& p, std::size_t i, const std::vector<T>& u, const Var& x) {
  if (i >= u.size()) throw std::out_of_range("root index out of range");
  auto [first, second] = lambda_prefactors(p, x);
  for (std::size_t j = 0; j < u.size(); ++j) {
    if (j == i) {
      first = first * ratio_derivative(x, first_ratio(p.q, u[j]), u[j], j);
      second = second * ratio_derivative(x, second_ratio(p.q, u[j]), u[j], j);
    } else {
      first = first * ratio_value(x, first_ratio(p.q, u[j]), j);
      second = second * ratio_value(x, second_ratio(p.q, u[j]), j);
    }
  }
  return first + second;
}

template <class T, class Var>
auto f2_generic(const ChainParams<T>& p, std::size_t i, const std::vector<T>& u, const Var& x) {
  if (i >= u.size()) throw std::out_of_range("root index out of range");
  const T one = from_int<T>(1);
  auto den = w_of(x, one / u[i], 1) * w_of(x, p.q * u[i], 1);
  return x.div(x.constant(one), den, "w(v/u" + std::to_string(i + 1) + ") w(v q u" + std::to_string(i + 1) + ")");
}

}  // namespace detail

/// Transfer-matrix eigenvalue Lambda(v, u).
template <class T>
T lambda_eval(const ChainParams<T>& p, const T& v, const std::vector<T>& u) {
  if (is_zero(v)) throw PoleError("Lambda is singular at v = 0");
  return detail::lambda_generic(p, u, detail::PointVar<T>{v});
}

/// d Lambda(v, u) / d u_i (0-based i), by analytic product-rule differentiation.
template <class T>
T lambda_du(const ChainParams<T>& p, std::size_t i, const T& v, const std::vector<T>& u) {
  if (is_zero(v)) throw PoleError("Lambda is singular at v = 0");
  return detail::lambda_du_generic(p, i, u, detail::PointVar<T>{v});
}

/// F2_i(v) = 1 / (w(v/u_i) w(v u_i q)).
template <class T>
T f2_eval(const ChainParams<T>& p, std::size_t i, const T& v, const std::vector<T>& u) {
  if (is_zero(v)) throw PoleError("F2 is singular at v = 0");
  return detail::f2_generic(p, i, u, detail::PointVar<T>{v});
}

/// F^{(family)}_i(v): family 1 is d Lambda / d u_i, family 2 is F2.
template <class T>
T family_eval(const ChainParams<T>& p, int family, std::size_t i, const T& v, const std::vector<T>& u) {
  switch (family) {
    case 1: return lambda_du(p, i, v, u);
    case 2: return f2_eval(p, i, v, u);
  }
  throw std::invalid_argument("family must be 1 or 2");
}

namespace detail {

template <class T, class F>
LaurentSeries<T> expand_to_order(int order, int margin, F&& build) {
  int work = order + margin;
  for (int attempt = 0; attempt < 8; ++attempt) {
    LaurentSeries<T> s = build(SeriesVar<T>{work});
    if (s.trunc() >= order) return s.truncated(order);
    work += margin + (order - s.trunc());
  }
  throw std::logic_error("series expansion failed to reach the requested order");
}

}  // namespace detail

/// Laurent expansion of Lambda(z, u) about z = 0 through z^order.
template <class T>
LaurentSeries<T> lambda_series(const ChainParams<T>& p, const std::vector<T>& u, int order) {
  const int margin = 4 * p.N + 4 * static_cast<int>(u.size()) + 8;
  return detail::expand_to_order<T>(order, margin, [&](const auto& z) { return detail::lambda_generic(p, u, z); });
}

/// Laurent expansion of F^{(family)}_i(z) about z = 0 through z^order.
/// Family 1 starts at z^{2-2N}, family 2 at z^2; only even powers occur.
template <class T>
LaurentSeries<T> f_series(const ChainParams<T>& p, int family, std::size_t i, const std::vector<T>& u, int order) {
  const int start = family == 1 ? 2 - 2 * p.N : 2;
  if (family != 1 && family != 2) throw std::invalid_argument("family must be 1 or 2");
  if (order < start) throw std::invalid_argument("order lies below the first term of the family");
  const int margin = 4 * p.N + 4 * static_cast<int>(u.size()) + 8;
  if (family == 1)
    return detail::expand_to_order<T>(order, margin,
                                      [&](const auto& z) { return detail::lambda_du_generic(p, i, u, z); });
  return detail::expand_to_order<T>(order, margin, [&](const auto& z) { return detail::f2_generic(p, i, u, z); });
}

/// Prefactor G(u, v) of the Slavnov product:
///   2^{-M} Q^{-2Ms} prod_j w(u_j)^{2N} u_j w(u_j^2) / (w(u_j^2) w(v_j^2 q^2))
///   * prod_{i>j} w(u_i u_j q^2) / w(u_i u_j)
/// The w(u_j^2) pair is kept as written; it cancels but still must not vanish.
template <class T>
T g_prefactor(const ChainParams<T>& p, const std::vector<T>& u, const std::vector<T>& v) {
  const std::size_t m = u.size();
  if (v.size() != m) throw std::invalid_argument("u and v must have the same length");
  auto nonzero = [](const T& x, const std::string& what) -> const T& {
    if (is_zero(x)) throw PoleError(what + " vanishes");
    return x;
  };
  T g = ipow(from_int<T>(2), -static_cast<long>(m)) * ipow(p.Q, -static_cast<long>(m) * p.spin_twice);
  const T q2 = p.q * p.q;
  for (std::size_t j = 0; j < m; ++j) {
    const std::string idx = std::to_string(j + 1);
    T wu = w_eval(u[j]);
    T wu2 = nonzero(w_eval(T(u[j] * u[j])), "w(u" + idx + "^2)");
    T wv = nonzero(w_eval(T(v[j] * v[j] * q2)), "w(v" + idx + "^2 q^2)");
    g = g * ipow(wu, 2 * p.N) * u[j] * wu2 / (wu2 * wv);
  }
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < i; ++j) {
      T prod = u[i] * u[j];
      T den = nonzero(w_eval(prod), "w(u" + std::to_string(i + 1) + " u" + std::to_string(j + 1) + ")");
      g = g * w_eval(T(prod * q2)) / den;
    }
  return g;
}

/// det_{i,j} dLambda(v_j)/du_i.
template <class T>
T kernel_numerator(const ChainParams<T>& p, const std::vector<T>& u, const std::vector<T>& v) {
  auto m = Matrix<T>::generate(u.size(), v.size(), [&](std::size_t i, std::size_t j) { return lambda_du(p, i, v[j], u); });
  return det(m);
}

/// det_{i,j} 1/(w(v_i/u_j) w(v_i u_j q)).
template <class T>
T kernel_denominator(const ChainParams<T>& p, const std::vector<T>& u, const std::vector<T>& v) {
  auto m = Matrix<T>::generate(v.size(), u.size(), [&](std::size_t i, std::size_t j) { return f2_eval(p, j, v[i], u); });
  return det(m);
}

/// The determinant ratio K^{-1}_u(v) carrying all v-dependence of the product.
template <class T>
T kernel(const ChainParams<T>& p, const std::vector<T>& u, const std::vector<T>& v) {
  if (u.size() != v.size()) throw std::invalid_argument("u and v must have the same length");
  T den = kernel_denominator(p, u, v);
  if (is_zero(den)) throw PoleError("kernel denominator determinant is singular");
  return kernel_numerator(p, u, v) / den;
}

/// Slavnov product G(u, v) * K^{-1}_u(v).
template <class T>
T slavnov(const ChainParams<T>& p, const std::vector<T>& u, const std::vector<T>& v) {
  return g_prefactor(p, u, v) * kernel(p, u, v);
}

}  // namespace slavkp
