#pragma once

// Schur polynomials at points (bialternant) and in Miwa times (Jacobi-Trudi),
// the Schur-basis coordinates of truncated Miwa polynomials, and the Schur
// expansions of the chain's tau functions.

#include <slavkp/chain.hpp>
#include <slavkp/matrix.hpp>
#include <slavkp/miwa_polynomial.hpp>
#include <slavkp/partition.hpp>
#include <slavkp/scalar.hpp>

#include <map>
#include <memory>
#include <mutex>
#include <stdexcept>
#include <vector>

namespace slavkp {

/// s_lambda(x_1..x_M) = det(x_i^{lambda_j - j + M}) / Delta(x).
template <class T>
T schur_points(const Partition& lambda, const std::vector<T>& points) {
  const int M = static_cast<int>(points.size());
  if (lambda.length() > M) return from_int<T>(0);
  T delta = vandermonde(points);
  if (is_zero(delta)) throw std::invalid_argument("Schur bialternant needs pairwise distinct points");
  auto m = Matrix<T>::generate(M, M, [&](std::size_t i, std::size_t j) {
    const int jj = static_cast<int>(j) + 1;
    return ipow(points[i], lambda[jj] - jj + M);
  });
  return det(m) / delta;
}

/// Rational Schur polynomials s_lambda(t), |lambda| <= D, in K = D times,
/// with per-degree change of basis to the monomials t^k. Shared per D.
class SchurBasis {
 public:
  static const SchurBasis& get(int D) {
    static std::mutex mutex;
    static std::map<int, std::unique_ptr<SchurBasis>> cache;
    std::lock_guard<std::mutex> lock(mutex);
    auto& slot = cache[D];
    if (!slot) slot.reset(new SchurBasis(D));
    return *slot;
  }

  int cutoff() const { return D_; }
  int maxtime() const { return K_; }

  const MiwaPolynomial<Rational>& schur(const Partition& lambda) const {
    auto it = schur_.find(lambda);
    if (it == schur_.end())
      throw std::out_of_range("partition " + lambda.str() + " exceeds the Schur basis cutoff " + std::to_string(D_));
    return it->second;
  }
  const std::vector<MiwaPolynomial<Rational>>& h() const { return h_; }
  const std::vector<Partition>& partitions(int degree) const { return by_degree_.at(static_cast<std::size_t>(degree)); }
  const std::vector<MiwaMonomial>& monomials(int degree) const { return monomials_.at(static_cast<std::size_t>(degree)); }
  /// Columns: Schur coordinates of each monomial of the degree.
  const Matrix<Rational>& to_schur(int degree) const { return to_schur_.at(static_cast<std::size_t>(degree)); }

 private:
  explicit SchurBasis(int D) : D_(D), K_(std::max(D, 1)) {
    h_ = complete_homogeneous<Rational>(K_, D_);
    // e_j(t) = (-1)^j h_j(-t)
    for (int j = 0; j <= D_; ++j) {
      MiwaPolynomial<Rational> e(K_, D_);
      for (const auto& [m, c] : h_[static_cast<std::size_t>(j)].terms()) {
        int odd = 0;
        for (int k : m) odd += k;
        e.set(m, ((odd + j) % 2) ? Rational(-c) : c);
      }
      e_.push_back(std::move(e));
    }
    for (int d = 0; d <= D_; ++d) {
      by_degree_.push_back(partitions_of(d, d));
      std::vector<MiwaMonomial> monos;
      for (const auto& lam : by_degree_.back()) {
        MiwaMonomial m(static_cast<std::size_t>(K_), 0);
        for (int part : lam.parts()) ++m[static_cast<std::size_t>(part - 1)];
        monos.push_back(std::move(m));
      }
      const auto& parts = by_degree_.back();
      Matrix<Rational> s_to_mono(monos.size(), parts.size());
      for (std::size_t c = 0; c < parts.size(); ++c) {
        auto s = jacobi_trudi(parts[c]);
        for (std::size_t r = 0; r < monos.size(); ++r) s_to_mono(r, c) = s.coeff(monos[r]);
        schur_.emplace(parts[c], std::move(s));
      }
      to_schur_.push_back(inverse(s_to_mono));
      monomials_.push_back(std::move(monos));
    }
  }

  MiwaPolynomial<Rational> jacobi_trudi(const Partition& lambda) const {
    // use whichever of h- and e-forms has the smaller determinant
    const bool dual = lambda.length() > (lambda.empty() ? 0 : lambda[1]);
    const Partition mu = dual ? lambda.conjugate() : lambda;
    const auto& g = dual ? e_ : h_;
    const int n = mu.length();
    MiwaPolynomial<Rational> zero(K_, D_);
    std::vector<std::vector<MiwaPolynomial<Rational>>> m(static_cast<std::size_t>(n));
    for (int i = 1; i <= n; ++i)
      for (int j = 1; j <= n; ++j) {
        const int k = mu[i] - i + j;
        m[static_cast<std::size_t>(i - 1)].push_back(k < 0 ? zero : g[static_cast<std::size_t>(k)]);
      }
    return det_expand(m, zero, MiwaPolynomial<Rational>::constant(K_, D_, Rational(1)));
  }

  int D_;
  int K_;
  std::vector<MiwaPolynomial<Rational>> h_, e_;
  std::vector<std::vector<Partition>> by_degree_;
  std::vector<std::vector<MiwaMonomial>> monomials_;
  std::vector<Matrix<Rational>> to_schur_;
  std::map<Partition, MiwaPolynomial<Rational>> schur_;
};

/// s_lambda as a polynomial in Miwa times t_1..t_D, truncated at weight D.
template <class T = Rational>
MiwaPolynomial<T> schur_miwa(const Partition& lambda, int D) {
  if (lambda.size() > D) throw std::invalid_argument("|lambda| exceeds the cutoff");
  const auto& s = SchurBasis::get(D).schur(lambda);
  return s.template map_coeffs<T>([](const Rational& c) { return from_rational<T>(c); });
}

/// Schur coefficients restricted to |lambda| <= cutoff and length <= max_length.
template <class T>
struct SchurCoeffMap {
  int cutoff = 8;
  int max_length = 1;
  std::map<Partition, T> entries;

  T coeff(const Partition& lambda) const {
    auto it = entries.find(lambda);
    return it == entries.end() ? from_int<T>(0) : it->second;
  }
  void set(const Partition& lambda, const T& c) {
    if (lambda.size() > cutoff || lambda.length() > max_length) return;
    if (is_zero(c))
      entries.erase(lambda);
    else
      entries[lambda] = c;
  }
};

/// sum_lambda c_lambda s_lambda(t) as a Miwa polynomial with K = D = c.cutoff.
template <class T>
MiwaPolynomial<T> to_miwa(const SchurCoeffMap<T>& c) {
  const auto& basis = SchurBasis::get(c.cutoff);
  MiwaPolynomial<T> out(basis.maxtime(), c.cutoff);
  for (const auto& [lambda, coef] : c.entries)
    for (const auto& [m, s] : basis.schur(lambda).terms()) out.add(m, coef * from_rational<T>(s));
  return out;
}

/// Schur coordinates of a Miwa polynomial (maxtime = cutoff = D), keeping length <= max_length.
template <class T>
SchurCoeffMap<T> from_miwa(const MiwaPolynomial<T>& f, int max_length) {
  const int D = f.cutoff();
  const auto& basis = SchurBasis::get(D);
  if (f.maxtime() != basis.maxtime()) throw std::invalid_argument("Schur conversion expects maxtime == cutoff");
  SchurCoeffMap<T> out{D, max_length, {}};
  for (int d = 0; d <= D; ++d) {
    const auto& monos = basis.monomials(d);
    const auto& parts = basis.partitions(d);
    const auto& conv = basis.to_schur(d);
    std::vector<T> x(monos.size());
    bool any = false;
    for (std::size_t r = 0; r < monos.size(); ++r) {
      x[r] = f.coeff(monos[r]);
      any = any || !is_zero(x[r]);
    }
    if (!any) continue;
    for (std::size_t i = 0; i < parts.size(); ++i) {
      if (parts[i].length() > max_length) continue;
      T acc = from_int<T>(0);
      for (std::size_t r = 0; r < monos.size(); ++r)
        if (!is_zero(x[r]) && conv(i, r) != 0) acc = acc + from_rational<T>(conv(i, r)) * x[r];
      out.set(parts[i], acc);
    }
  }
  return out;
}

/// sum_lambda c_lambda s_lambda(points).
template <class T>
T evaluate_schur_series(const SchurCoeffMap<T>& c, const std::vector<T>& points) {
  T acc = from_int<T>(0);
  for (const auto& [lambda, coef] : c.entries) acc = acc + coef * schur_points(lambda, points);
  return acc;
}

/// Expansion variable: y = z^2 (unconstrained partitions) or z itself
/// (parity-constrained partitions).
enum class SchurVariable { y, z };

/// Coefficient rows fhat_{i,n}, n = 0..count-1, of the family's series after
/// stripping the prefactor: F1 = z^{2-2N} sum fhat_n y^n, F2 = z^2 sum fhat_n y^n
/// (y-variable), or F1 z^{2N-2} = sum a_l z^l, F2 z^{-2} = sum a_l z^l (z-variable).
template <class T>
std::vector<std::vector<T>> family_coefficients(const ChainParams<T>& p, int family, const std::vector<T>& u, int count,
                                                SchurVariable var) {
  if (family != 1 && family != 2) throw std::invalid_argument("family must be 1 or 2");
  const int shift = family == 1 ? 2 - 2 * p.N : 2;
  const int step = var == SchurVariable::y ? 2 : 1;
  const int order = shift + step * (count - 1);
  std::vector<std::vector<T>> rows;
  for (std::size_t i = 0; i < u.size(); ++i) {
    auto s = f_series(p, family, i, u, std::max(order, shift));
    std::vector<T> row;
    for (int n = 0; n < count; ++n) row.push_back(s.coeff(shift + step * n));
    rows.push_back(std::move(row));
  }
  return rows;
}

/// c_lambda = det_{i,j} fhat_{i, lambda_j - j + M} for |lambda| <= cutoff, length <= M.
template <class T>
SchurCoeffMap<T> cauchy_binet_coeffs(const ChainParams<T>& p, int family, const std::vector<T>& u, int cutoff,
                                     SchurVariable var = SchurVariable::y) {
  const int M = static_cast<int>(u.size());
  if (M < 1) throw std::invalid_argument("Cauchy-Binet expansion needs M >= 1");
  auto rows = family_coefficients(p, family, u, cutoff + M, var);
  SchurCoeffMap<T> out{cutoff, M, {}};
  for (const auto& lambda : partitions_up_to(cutoff, M)) {
    auto m = Matrix<T>::generate(M, M, [&](std::size_t i, std::size_t j) {
      const int jj = static_cast<int>(j) + 1;
      return rows[i][static_cast<std::size_t>(lambda[jj] - jj + M)];
    });
    out.set(lambda, det(m));
  }
  return out;
}

/// The y-variable tau evaluated directly at w_i = v_i^2:
/// det F_j(v_i) / (P(w) Delta(w)) with P = prod w^{1-N} (family 1) or prod w (family 2).
template <class T>
T tau_tilde(const ChainParams<T>& p, int family, const std::vector<T>& u, const std::vector<T>& v) {
  std::vector<T> w;
  T pref = from_int<T>(1);
  for (const auto& x : v) {
    w.push_back(x * x);
    pref = pref * (family == 1 ? ipow(w.back(), 1 - p.N) : w.back());
  }
  T delta = vandermonde(w);
  if (is_zero(delta)) throw std::invalid_argument("tau_tilde needs distinct v^2");
  auto m = Matrix<T>::generate(v.size(), u.size(),
                               [&](std::size_t i, std::size_t j) { return family_eval(p, family, j, v[i], u); });
  return det(m) / (pref * delta);
}

/// Schur coefficients of 1 / sum c_lambda s_lambda, restricted to the input's length bound.
template <class T>
SchurCoeffMap<T> schur_series_invert(const SchurCoeffMap<T>& c) {
  if (is_zero(c.coeff(Partition{}))) throw std::domain_error("cannot invert a Schur series with c_0 = 0");
  return from_miwa(invert(to_miwa(c)), c.max_length);
}

template <class T>
SchurCoeffMap<T> schur_product(const SchurCoeffMap<T>& a, const SchurCoeffMap<T>& b) {
  if (a.cutoff != b.cutoff) throw std::invalid_argument("Schur product operands disagree on cutoff");
  return from_miwa(to_miwa(a) * to_miwa(b), std::max(a.max_length, b.max_length));
}

/// A_lambda: Schur coefficients of tau1 / tau2 in the y-variable, length <= M.
template <class T>
SchurCoeffMap<T> slavnov_schur_coeffs(const ChainParams<T>& p, const std::vector<T>& u, int cutoff) {
  auto c1 = cauchy_binet_coeffs(p, 1, u, cutoff);
  auto c2 = cauchy_binet_coeffs(p, 2, u, cutoff);
  if (is_zero(c2.coeff(Partition{}))) throw std::domain_error("c2 of the empty partition vanishes");
  return from_miwa(to_miwa(c1) * invert(to_miwa(c2)), static_cast<int>(u.size()));
}

}  // namespace slavkp
