#pragma once

// Truncated Laurent series in one variable with exact coefficients.
//
// A series carries an absolute truncation order `trunc`: every coefficient of
// exponent <= trunc is known, everything above is unknown. Laurent
// polynomials that are known exactly use trunc == exact_order.

#include <slavkp/scalar.hpp>

#include <algorithm>
#include <limits>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>

namespace slavkp {

template <class T>
class LaurentSeries {
 public:
  static constexpr int exact_order = std::numeric_limits<int>::max() / 4;

  explicit LaurentSeries(int trunc = exact_order) : trunc_(trunc) {}

  static LaurentSeries monomial(const T& c, int exponent, int trunc = exact_order) {
    LaurentSeries s(trunc);
    s.set(exponent, c);
    return s;
  }
  static LaurentSeries constant(const T& c) { return monomial(c, 0); }

  int trunc() const { return trunc_; }
  bool is_exact() const { return trunc_ >= exact_order; }
  const std::map<int, T>& terms() const { return terms_; }

  /// Lowest exponent with a nonzero coefficient.
  std::optional<int> valuation() const {
    if (terms_.empty()) return std::nullopt;
    return terms_.begin()->first;
  }

  T coeff(int exponent) const {
    if (exponent > trunc_)
      throw std::out_of_range("coefficient z^" + std::to_string(exponent) + " lies beyond the truncation order " +
                              std::to_string(trunc_));
    auto it = terms_.find(exponent);
    return it == terms_.end() ? from_int<T>(0) : it->second;
  }

  void set(int exponent, const T& c) {
    if (exponent > trunc_) return;
    if (is_zero(c))
      terms_.erase(exponent);
    else
      terms_[exponent] = c;
  }

  LaurentSeries truncated(int order) const {
    LaurentSeries out(std::min(order, trunc_));
    for (const auto& [e, c] : terms_)
      if (e <= out.trunc_) out.terms_.emplace(e, c);
    return out;
  }

  /// Substitutes z -> c*z.
  LaurentSeries scaled_argument(const T& c) const {
    LaurentSeries out(trunc_);
    for (const auto& [e, v] : terms_) out.set(e, v * ipow(c, e));
    return out;
  }

  /// Evaluates the known part at a point (no remainder estimate).
  T evaluate(const T& z) const {
    T acc = from_int<T>(0);
    for (const auto& [e, c] : terms_) acc = acc + c * ipow(z, e);
    return acc;
  }

  friend LaurentSeries operator+(const LaurentSeries& a, const LaurentSeries& b) {
    LaurentSeries out(std::min(a.trunc_, b.trunc_));
    for (const auto& [e, c] : a.terms_)
      if (e <= out.trunc_) out.terms_.emplace(e, c);
    for (const auto& [e, c] : b.terms_) out.add_to(e, c);
    return out;
  }
  friend LaurentSeries operator-(const LaurentSeries& a) {
    LaurentSeries out(a.trunc_);
    for (const auto& [e, c] : a.terms_) out.terms_.emplace(e, -c);
    return out;
  }
  friend LaurentSeries operator-(const LaurentSeries& a, const LaurentSeries& b) { return a + (-b); }

  friend LaurentSeries operator*(const LaurentSeries& a, const LaurentSeries& b) {
    int trunc;
    if (a.is_exact() && b.is_exact()) {
      trunc = exact_order;
    } else if (a.is_exact()) {
      trunc = a.terms_.empty() ? exact_order : saturating_add(b.trunc_, a.terms_.begin()->first);
    } else if (b.is_exact()) {
      trunc = b.terms_.empty() ? exact_order : saturating_add(a.trunc_, b.terms_.begin()->first);
    } else {
      trunc = std::min(saturating_add(a.trunc_, b.effective_valuation()),
                       saturating_add(b.trunc_, a.effective_valuation()));
    }
    LaurentSeries out(trunc);
    for (const auto& [ea, ca] : a.terms_)
      for (const auto& [eb, cb] : b.terms_)
        if (ea + eb <= trunc) out.add_to(ea + eb, ca * cb);
    return out;
  }
  friend LaurentSeries operator*(const T& s, const LaurentSeries& a) {
    LaurentSeries out(a.trunc_);
    for (const auto& [e, c] : a.terms_) out.set(e, s * c);
    return out;
  }

  friend bool operator==(const LaurentSeries& a, const LaurentSeries& b) {
    return a.trunc_ == b.trunc_ && a.terms_ == b.terms_;
  }

 private:
  static int saturating_add(int x, int y) {
    if (x >= exact_order || y >= exact_order) return exact_order;
    return std::min(x + y, exact_order);
  }
  int effective_valuation() const { return terms_.empty() ? saturating_add(trunc_, 1) : terms_.begin()->first; }

  void add_to(int e, const T& c) {
    if (e > trunc_) return;
    auto it = terms_.find(e);
    if (it == terms_.end()) {
      if (!is_zero(c)) terms_.emplace(e, c);
    } else {
      it->second = it->second + c;
      if (is_zero(it->second)) terms_.erase(it);
    }
  }

  int trunc_;
  std::map<int, T> terms_;
};

/// Multiplicative inverse. For a series with lowest exponent L known through
/// order T the result starts at -L and is known through T - 2L. Exact
/// non-monomial input needs `max_trunc` to bound the expansion.
template <class T>
LaurentSeries<T> series_invert(const LaurentSeries<T>& s, int max_trunc = LaurentSeries<T>::exact_order) {
  auto val = s.valuation();
  if (!val) throw std::domain_error("cannot invert a series with no known nonzero coefficient");
  const int low = *val;
  const T lead = s.coeff(low);
  if (s.terms().size() == 1 && s.is_exact()) return LaurentSeries<T>::monomial(from_int<T>(1) / lead, -low);

  int trunc = s.is_exact() ? max_trunc : std::min(s.trunc() - 2 * low, max_trunc);
  if (trunc >= LaurentSeries<T>::exact_order)
    throw std::invalid_argument("inverting an exact non-monomial series needs a target order");
  LaurentSeries<T> out(trunc);
  if (trunc < -low) return out;
  // s = z^low * (lead + r_1 z + ...), inverse = z^-low * (b_0 + b_1 z + ...)
  const int count = trunc + low;  // number of b_k beyond b_0
  std::vector<T> b(static_cast<std::size_t>(count) + 1, from_int<T>(0));
  b[0] = from_int<T>(1) / lead;
  for (int k = 1; k <= count; ++k) {
    T acc = from_int<T>(0);
    for (int m = 1; m <= k; ++m) {
      auto it = s.terms().find(low + m);
      if (it != s.terms().end()) acc = acc + it->second * b[static_cast<std::size_t>(k - m)];
    }
    b[static_cast<std::size_t>(k)] = -acc / lead;
  }
  for (int k = 0; k <= count; ++k) out.set(k - low, b[static_cast<std::size_t>(k)]);
  return out;
}

/// Relabels a series with only even exponents: coefficient of z^{2n} becomes
/// the coefficient of y^n.
template <class T>
LaurentSeries<T> even_to_y(const LaurentSeries<T>& s) {
  for (const auto& [e, c] : s.terms())
    if (e % 2 != 0)
      throw std::domain_error("series has an odd exponent z^" + std::to_string(e) + "; z -> sqrt(y) is ambiguous");
  int trunc = s.is_exact() ? LaurentSeries<T>::exact_order
                           : (s.trunc() >= 0 ? s.trunc() / 2 : -((-s.trunc() + 1) / 2));
  LaurentSeries<T> out(trunc);
  for (const auto& [e, c] : s.terms()) out.set(e / 2, c);
  return out;
}

}  // namespace slavkp
