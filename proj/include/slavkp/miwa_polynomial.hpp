#pragma once

// Polynomials in the Miwa times t_1..t_K truncated by weighted degree, where
// t_k carries weight k. Products drop every monomial of weight > cutoff.

#include <slavkp/scalar.hpp>

#include <map>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

namespace slavkp {

/// Exponent vector (k_1, ..., k_K) of t_1^{k_1} ... t_K^{k_K}.
using MiwaMonomial = std::vector<int>;

inline int weighted_degree(const MiwaMonomial& m) {
  int w = 0;
  for (std::size_t i = 0; i < m.size(); ++i) w += static_cast<int>(i + 1) * m[i];
  return w;
}

/// Evaluation point for Miwa polynomials: the values t_1..t_K.
template <class T>
struct MiwaTimes {
  std::vector<T> t;

  int size() const { return static_cast<int>(t.size()); }
  const T& operator[](int m) const { return t.at(static_cast<std::size_t>(m - 1)); }
};

template <class T>
class MiwaPolynomial {
 public:
  MiwaPolynomial(int maxtime, int cutoff) : maxtime_(maxtime), cutoff_(cutoff) {
    if (maxtime < 1) throw std::invalid_argument("MiwaPolynomial needs at least one time variable");
    if (cutoff < 0) throw std::invalid_argument("MiwaPolynomial cutoff must be nonnegative");
  }

  static MiwaPolynomial constant(int maxtime, int cutoff, const T& c) {
    MiwaPolynomial p(maxtime, cutoff);
    p.set(MiwaMonomial(static_cast<std::size_t>(maxtime), 0), c);
    return p;
  }
  /// The single variable t_k.
  static MiwaPolynomial time(int maxtime, int cutoff, int k) {
    if (k < 1 || k > maxtime) throw std::out_of_range("time index out of range");
    MiwaMonomial m(static_cast<std::size_t>(maxtime), 0);
    m[static_cast<std::size_t>(k - 1)] = 1;
    MiwaPolynomial p(maxtime, cutoff);
    p.set(m, from_int<T>(1));
    return p;
  }

  int maxtime() const { return maxtime_; }
  int cutoff() const { return cutoff_; }
  const std::map<MiwaMonomial, T>& terms() const { return terms_; }
  bool is_zero_polynomial() const { return terms_.empty(); }

  T coeff(const MiwaMonomial& m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? from_int<T>(0) : it->second;
  }
  T constant_term() const { return coeff(MiwaMonomial(static_cast<std::size_t>(maxtime_), 0)); }

  void set(const MiwaMonomial& m, const T& c) {
    check_monomial(m);
    if (weighted_degree(m) > cutoff_) return;
    if (is_zero(c))
      terms_.erase(m);
    else
      terms_[m] = c;
  }
  void add(const MiwaMonomial& m, const T& c) {
    check_monomial(m);
    if (weighted_degree(m) > cutoff_) return;
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (!is_zero(c)) terms_.emplace(m, c);
    } else {
      it->second = it->second + c;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }

  /// Keeps only monomials of weighted degree <= d (d may only shrink).
  MiwaPolynomial truncated(int d) const {
    MiwaPolynomial out(maxtime_, std::min(d, cutoff_));
    for (const auto& [m, c] : terms_)
      if (weighted_degree(m) <= out.cutoff_) out.terms_.emplace(m, c);
    return out;
  }

  /// Homogeneous component of weighted degree d.
  MiwaPolynomial homogeneous(int d) const {
    MiwaPolynomial out(maxtime_, cutoff_);
    for (const auto& [m, c] : terms_)
      if (weighted_degree(m) == d) out.terms_.emplace(m, c);
    return out;
  }

  friend MiwaPolynomial operator+(const MiwaPolynomial& a, const MiwaPolynomial& b) {
    check_compatible(a, b);
    MiwaPolynomial out = a;
    for (const auto& [m, c] : b.terms_) out.add(m, c);
    return out;
  }
  friend MiwaPolynomial operator-(const MiwaPolynomial& a) {
    MiwaPolynomial out(a.maxtime_, a.cutoff_);
    for (const auto& [m, c] : a.terms_) out.terms_.emplace(m, -c);
    return out;
  }
  friend MiwaPolynomial operator-(const MiwaPolynomial& a, const MiwaPolynomial& b) { return a + (-b); }

  friend MiwaPolynomial operator*(const MiwaPolynomial& a, const MiwaPolynomial& b) {
    check_compatible(a, b);
    MiwaPolynomial out(a.maxtime_, a.cutoff_);
    MiwaMonomial m(static_cast<std::size_t>(a.maxtime_));
    for (const auto& [ma, ca] : a.terms_) {
      const int wa = weighted_degree(ma);
      for (const auto& [mb, cb] : b.terms_) {
        if (wa + weighted_degree(mb) > a.cutoff_) continue;
        for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
        out.add(m, ca * cb);
      }
    }
    return out;
  }
  friend MiwaPolynomial operator*(const T& s, const MiwaPolynomial& a) {
    MiwaPolynomial out(a.maxtime_, a.cutoff_);
    for (const auto& [m, c] : a.terms_) out.set(m, s * c);
    return out;
  }

  friend bool operator==(const MiwaPolynomial& a, const MiwaPolynomial& b) {
    return a.maxtime_ == b.maxtime_ && a.cutoff_ == b.cutoff_ && a.terms_ == b.terms_;
  }

  /// Partial derivative with respect to t_k.
  MiwaPolynomial derivative(int k) const {
    if (k < 1 || k > maxtime_) throw std::out_of_range("derivative index out of range");
    MiwaPolynomial out(maxtime_, cutoff_);
    const auto i = static_cast<std::size_t>(k - 1);
    for (const auto& [m, c] : terms_) {
      if (m[i] == 0) continue;
      MiwaMonomial d = m;
      d[i] -= 1;
      out.terms_.emplace(d, from_int<T>(m[i]) * c);
    }
    return out;
  }

  /// Applies prod_k d^{orders_k}/dt_k^{orders_k}.
  MiwaPolynomial derivative(const std::vector<int>& orders) const {
    MiwaPolynomial out = *this;
    for (std::size_t k = 0; k < orders.size(); ++k)
      for (int r = 0; r < orders[k]; ++r) out = out.derivative(static_cast<int>(k + 1));
    return out;
  }

  T evaluate(const MiwaTimes<T>& t) const {
    if (t.size() < maxtime_) throw std::invalid_argument("not enough Miwa times to evaluate polynomial");
    T acc = from_int<T>(0);
    for (const auto& [m, c] : terms_) {
      T term = c;
      for (std::size_t i = 0; i < m.size(); ++i)
        if (m[i] != 0) term = term * ipow(t.t[i], m[i]);
      acc = acc + term;
    }
    return acc;
  }

  /// Converts the coefficients into another field.
  template <class U, class F>
  MiwaPolynomial<U> map_coeffs(F&& f) const {
    MiwaPolynomial<U> out(maxtime_, cutoff_);
    for (const auto& [m, c] : terms_) out.set(m, f(c));
    return out;
  }

 private:
  void check_monomial(const MiwaMonomial& m) const {
    if (static_cast<int>(m.size()) != maxtime_) throw std::invalid_argument("monomial has the wrong number of times");
  }
  static void check_compatible(const MiwaPolynomial& a, const MiwaPolynomial& b) {
    if (a.maxtime_ != b.maxtime_ || a.cutoff_ != b.cutoff_)
      throw std::invalid_argument("MiwaPolynomial operands disagree on maxtime/cutoff");
  }

  int maxtime_;
  int cutoff_;
  std::map<MiwaMonomial, T> terms_;
};

/// Reciprocal by geometric series: f = c (1 + g) with g of positive degree.
template <class T>
MiwaPolynomial<T> invert(const MiwaPolynomial<T>& f) {
  const T c = f.constant_term();
  if (is_zero(c)) throw std::domain_error("cannot invert a Miwa series with vanishing constant term");
  const T inv_c = from_int<T>(1) / c;
  MiwaPolynomial<T> g = inv_c * f - MiwaPolynomial<T>::constant(f.maxtime(), f.cutoff(), from_int<T>(1));
  // 1/(1+g) = sum (-g)^n; g has no constant term so n <= cutoff suffices
  MiwaPolynomial<T> sum = MiwaPolynomial<T>::constant(f.maxtime(), f.cutoff(), from_int<T>(1));
  MiwaPolynomial<T> power = sum;
  MiwaPolynomial<T> neg_g = -g;
  for (int n = 1; n <= f.cutoff(); ++n) {
    power = power * neg_g;
    if (power.is_zero_polynomial()) break;
    sum = sum + power;
  }
  return inv_c * sum;
}

/// Complete homogeneous polynomials h_0..h_D in Miwa times, from
/// exp(sum_k t_k z^k) = sum_j h_j z^j via j h_j = sum_k k t_k h_{j-k}.
template <class T>
std::vector<MiwaPolynomial<T>> complete_homogeneous(int maxtime, int cutoff) {
  std::vector<MiwaPolynomial<T>> h;
  h.push_back(MiwaPolynomial<T>::constant(maxtime, cutoff, from_int<T>(1)));
  for (int j = 1; j <= cutoff; ++j) {
    MiwaPolynomial<T> acc(maxtime, cutoff);
    for (int k = 1; k <= std::min(j, maxtime); ++k)
      acc = acc + from_int<T>(k) * (MiwaPolynomial<T>::time(maxtime, cutoff, k) * h[static_cast<std::size_t>(j - k)]);
    h.push_back(from_rational<T>(Rational(1, j)) * acc);
  }
  return h;
}

}  // namespace slavkp
