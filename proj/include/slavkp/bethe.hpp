#pragma once

// Bethe roots as the values of u for which Lambda(v, u) is pole-free: the
// simple pole at v = u_j must cancel between the two summands. By the
// symmetry Lambda(1/(q v)) = Lambda(v) the poles at v = 1/(q u_j) cancel
// with them.

#include <slavkp/chain.hpp>
#include <slavkp/matrix.hpp>
#include <slavkp/scalar.hpp>

#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace slavkp {

namespace detail {

/// The two summands of the residue at v = u_j, each without the common
/// factor (u_j / 2) (-1 / w(u_j^2 q)).
template <class T>
std::pair<T, T> residue_parts(const ChainParams<T>& p, const std::vector<T>& u, std::size_t j) {
  if (j >= u.size()) throw std::out_of_range("root index out of range");
  const T one = from_int<T>(1);
  const T& uj = u[j];
  const T q = p.q;
  PointVar<T> x{uj};
  auto w = [](const T& y) { return w_eval(y); };
  T wq = w(q), wqu2 = w(T(q * uj * uj));
  if (is_zero(wqu2)) throw std::invalid_argument("degenerate root: w(q u^2) vanishes");
  T first = w(T(uj * uj * q * q)) * ipow(w(T(uj * q)), 2 * p.N) * w(T(one / q)) * w(T(uj * uj)) / wqu2;
  T second = w(T(uj * uj)) * ipow(w(uj), 2 * p.N) * wq * w(T(q * q * uj * uj)) / wqu2;
  try {
    for (std::size_t k = 0; k < u.size(); ++k) {
      if (k == j) continue;
      first = first * ratio_value(x, first_ratio(q, u[k]), k);
      second = second * ratio_value(x, second_ratio(q, u[k]), k);
    }
  } catch (const PoleError& e) {
    throw std::invalid_argument(std::string("degenerate root configuration: ") + e.what());
  }
  return {first, second};
}

}  // namespace detail

/// Residue of Lambda(v, u) at v = u_j, i.e. the limit of (v - u_j) Lambda(v, u).
template <class T>
T lambda_residue(const ChainParams<T>& p, const std::vector<T>& u, std::size_t j) {
  auto [first, second] = detail::residue_parts(p, u, j);
  const T& uj = u[j];
  T pre = uj / (from_int<T>(-2) * w_eval(T(uj * uj * p.q)));
  return pre * (first + second);
}

/// Residue at the crossing-image pole v = 1/(q u_j), from the limit of (v - v0) Lambda(v).
template <class T>
T crossing_residue(const ChainParams<T>& p, const std::vector<T>& u, std::size_t j) {
  // v = 1/(q s) maps s -> u_j onto v -> 1/(q u_j); dv/ds = -1/(q s^2)
  const T& uj = u[j];
  return lambda_residue(p, u, j) * (from_int<T>(-1) / (p.q * uj * uj));
}

struct BetheOptions {
  int max_iterations = 100;
  Real tolerance = Real("1e-12");
  Real system_tolerance = Real("1e-20");
  Real stop_tolerance = Real("1e-30");
  Real separation = Real("1e-8");
  Real fd_step = Real("1e-15");
};

struct BetheSolution {
  std::vector<Complex> roots;
  Real residual = 0;
  Real crossing_residual = 0;
  bool converged = false;
  int iterations = 0;
  std::string diagnostics;
};

template <class T>
Complex to_complex(const T& x) {
  if constexpr (std::is_same_v<T, Complex>) {
    return x;
  } else if constexpr (std::is_same_v<T, Quadratic>) {
    Real a = field_traits<Real>::from_rational(x.a()), b = field_traits<Real>::from_rational(x.b());
    Real root = mp::sqrt(Real(mp::abs(x.d())));
    if (x.d() < 0) return Complex(a, b * root);
    return Complex(a + b * root);
  } else if constexpr (std::is_same_v<T, Real>) {
    return Complex(x);
  } else {
    return Complex(field_traits<Real>::from_rational(x));
  }
}

template <class T>
ChainParams<Complex> to_complex(const ChainParams<T>& p) {
  return ChainParams<Complex>(p.N, p.M, p.spin_twice, to_complex(p.q), to_complex(p.Q));
}

namespace detail {

/// Pairwise root separation and the excluded products u_i u_j in {+-1, +-1/q}.
inline std::string root_collision(const ChainParams<Complex>& p, const std::vector<Complex>& u, const Real& sep) {
  const Complex one(1), qinv = Complex(1) / p.q;
  for (std::size_t i = 0; i < u.size(); ++i) {
    if (mp::abs(u[i]) < sep) return "root u" + std::to_string(i + 1) + " collapsed to 0";
    if (mp::abs(w_eval(Complex(p.q * u[i] * u[i]))) < sep)
      return "root u" + std::to_string(i + 1) + " sits on the pole of 1/w(v^2 q)";
    for (std::size_t j = i + 1; j < u.size(); ++j) {
      std::string pair = "u" + std::to_string(i + 1) + ", u" + std::to_string(j + 1);
      if (mp::abs(u[i] - u[j]) < sep || mp::abs(u[i] + u[j]) < sep) return "roots " + pair + " collide";
      Complex prod = u[i] * u[j];
      for (const Complex& bad : {one, Complex(-one), qinv, Complex(-qinv)})
        if (mp::abs(prod - bad) < sep) return "roots " + pair + " have a forbidden product";
    }
  }
  return {};
}

/// f_j = (1 + first_j / second_j) (u_j^2 - 1)^2 / (q^2 u_j^4 - 1); zero exactly when
/// the residue at u_j cancels. The factor removes the spurious zeros at
/// q u_j^2 = +-1, stays finite at 0 and infinity, and its zeros sit on the
/// order-2N poles of the ratio at u_j = +-1. The pair factors
/// (q^2 u_j^2 - u_k^2) / (u_j^2 - u_k^2) and (q^4 u_j^2 u_k^2 - 1) / (q^2 u_j^2 u_k^2 - 1)
/// deflate the solutions with u_j = +-u_k or u_j u_k = +-1/q, and vanish only on
/// simple poles of the ratio.
inline std::vector<Complex> bethe_system(const ChainParams<Complex>& p, const std::vector<Complex>& u) {
  std::vector<Complex> f;
  for (std::size_t j = 0; j < u.size(); ++j) {
    auto [first, second] = residue_parts(p, u, j);
    if (is_zero(second)) throw std::invalid_argument("second summand of the residue vanishes");
    Complex u2 = u[j] * u[j], x = p.q * u2;
    Complex fj = (Complex(1) + first / second) * (u2 - Complex(1)) * (u2 - Complex(1)) / (x * x - Complex(1));
    for (std::size_t k = 0; k < u.size(); ++k) {
      if (k == j) continue;
      Complex uk2 = u[k] * u[k];
      Complex q2 = p.q * p.q, prod = u2 * uk2;
      fj *= (q2 * u2 - uk2) / (u2 - uk2);
      fj *= (q2 * q2 * prod - Complex(1)) / (q2 * prod - Complex(1));
    }
    f.push_back(fj);
  }
  return f;
}

inline Real max_abs(const std::vector<Complex>& f) {
  Real m = 0;
  for (const auto& x : f) m = std::max(m, Real(mp::abs(x)));
  return m;
}

}  // namespace detail

/// Damped Newton iteration on the pole-cancellation system, finite-difference Jacobian.
inline BetheSolution solve_bethe(const ChainParams<Complex>& p, std::vector<Complex> guess,
                                 const BetheOptions& opt = {}) {
  if (static_cast<int>(guess.size()) != p.M) throw std::invalid_argument("expected M initial roots");
  if (auto why = detail::root_collision(p, guess, opt.separation); !why.empty())
    throw std::invalid_argument("initial guess rejected: " + why);
  BetheSolution sol;
  std::vector<Complex> u = std::move(guess);
  std::ostringstream diag;
  Real norm = 1;
  try {
    auto f = detail::bethe_system(p, u);
    norm = detail::max_abs(f);
    while (norm > opt.stop_tolerance && sol.iterations < opt.max_iterations) {
      const std::size_t m = u.size();
      Matrix<Complex> jac(m, m);
      for (std::size_t k = 0; k < m; ++k) {
        Complex h = opt.fd_step * (Complex(1) + u[k]);
        auto up = u, dn = u;
        up[k] += h;
        dn[k] -= h;
        auto fp = detail::bethe_system(p, up), fm = detail::bethe_system(p, dn);
        for (std::size_t j = 0; j < m; ++j) jac(j, k) = (fp[j] - fm[j]) / (Complex(2) * h);
      }
      std::vector<Complex> rhs;
      for (auto& x : f) rhs.push_back(-x);
      auto step = solve_linear(jac, rhs);
      Complex damping(1);
      bool accepted = false;
      for (int halving = 0; halving < 40; ++halving) {
        std::vector<Complex> trial = u;
        for (std::size_t k = 0; k < m; ++k) trial[k] += damping * step[k];
        try {
          if (detail::root_collision(p, trial, opt.separation).empty()) {
            auto ft = detail::bethe_system(p, trial);
            Real nt = detail::max_abs(ft);
            if (nt < norm) {
              u = std::move(trial);
              f = std::move(ft);
              norm = nt;
              accepted = true;
              break;
            }
          }
        } catch (const std::exception&) {
        }
        damping = damping / Complex(2);
      }
      ++sol.iterations;
      if (!accepted) {
        diag << "line search stalled at |f| = " << norm.str(6, std::ios_base::scientific) << "; ";
        break;
      }
    }
  } catch (const std::exception& e) {
    diag << "evaluation failed: " << e.what() << "; ";
  }
  sol.roots = u;
  try {
    for (std::size_t j = 0; j < u.size(); ++j) {
      sol.residual = std::max(sol.residual, Real(mp::abs(lambda_residue(p, u, j))));
      sol.crossing_residual = std::max(sol.crossing_residual, Real(mp::abs(crossing_residue(p, u, j))));
    }
  } catch (const std::exception& e) {
    diag << "residue undefined: " << e.what() << "; ";
    sol.residual = Real(1);
  }
  auto collision = detail::root_collision(p, u, opt.separation);
  if (!collision.empty()) diag << collision << "; ";
  sol.converged = collision.empty() && sol.residual < opt.tolerance && norm < opt.system_tolerance &&
                  diag.str().empty();
  if (!sol.converged && sol.iterations >= opt.max_iterations) diag << "no convergence after " << sol.iterations << " iterations; ";
  if (!sol.converged && diag.str().empty()) diag << "residual " << sol.residual.str(6, std::ios_base::scientific) << " above tolerance; ";
  sol.diagnostics = diag.str();
  return sol;
}

/// Ratio |Lambda(u_j (1 + small))| / |Lambda(u_j (1 + large))|: near 1 on shell,
/// about large/small at an uncancelled pole.
inline Real pole_signature(const ChainParams<Complex>& p, const std::vector<Complex>& u, std::size_t j,
                           const Real& small = Real("1e-6"), const Real& large = Real("1e-3")) {
  Complex near = lambda_eval(p, Complex(u[j] * (Complex(1) + Complex(small))), u);
  Complex far = lambda_eval(p, Complex(u[j] * (Complex(1) + Complex(large))), u);
  return Real(mp::abs(near)) / Real(mp::abs(far));
}

/// Gaussian-rational approximations of complex roots, for exact on-shell checks.
inline std::vector<Quadratic> rational_roots(const std::vector<Complex>& roots, unsigned digits = 30) {
  std::vector<Quadratic> out;
  for (const auto& r : roots) out.push_back(to_gaussian_rational(r, digits));
  return out;
}

}  // namespace slavkp
