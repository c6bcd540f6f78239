#pragma once

// Scalar fields used throughout slavkp.
//
//   Rational   - arbitrary precision p/q (GMP backed)
//   Quadratic  - a + b*sqrt(d), a and b rational, d a fixed non-square integer
//   Real       - ~133-bit binary float (float mode)
//   Complex    - complex over the same float backend (Bethe solver)
//
// Every algorithm in the library is a template over one of these types and
// only uses the operations collected in field_traits<T>.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_complex.hpp>
#include <boost/multiprecision/gmp.hpp>

#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>

namespace slavkp {

namespace mp = boost::multiprecision;

using Integer = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;
using Real = mp::number<mp::cpp_bin_float<40>, mp::et_off>;
using Complex = mp::number<mp::complex_adaptor<mp::cpp_bin_float<40>>, mp::et_off>;

enum class FieldMode { rational, quadratic, real };

inline std::string to_string(FieldMode m) {
  switch (m) {
    case FieldMode::rational: return "rational";
    case FieldMode::quadratic: return "quadratic";
    case FieldMode::real: return "float";
  }
  return "?";
}

inline FieldMode parse_field_mode(std::string_view s) {
  if (s == "rational") return FieldMode::rational;
  if (s == "quadratic") return FieldMode::quadratic;
  if (s == "float" || s == "real") return FieldMode::real;
  throw std::invalid_argument("unknown field mode '" + std::string(s) + "'");
}

/// Raised when an evaluation lands on a pole; the message names the factor.
class PoleError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Relative tolerance used by float mode when a residual must vanish.
inline const Real& float_tolerance() {
  static const Real tol("1e-20");
  return tol;
}

// ---------------------------------------------------------------------------
// Rational helpers

/// Parses "p", "p/q" or a finite decimal such as "-1.25" exactly.
inline Rational parse_rational(std::string_view text) {
  std::string s(text);
  auto trim = [](std::string& x) {
    auto b = x.find_first_not_of(" \t");
    auto e = x.find_last_not_of(" \t");
    x = (b == std::string::npos) ? std::string() : x.substr(b, e - b + 1);
  };
  trim(s);
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  try {
    if (auto dot = s.find('.'); dot != std::string::npos && s.find('/') == std::string::npos) {
      bool neg = s[0] == '-';
      std::string digits = s.substr(neg || s[0] == '+' ? 1 : 0);
      dot = digits.find('.');
      std::string whole = digits.substr(0, dot);
      std::string frac = digits.substr(dot + 1);
      if (whole.empty()) whole = "0";
      if (frac.find_first_not_of("0123456789") != std::string::npos ||
          whole.find_first_not_of("0123456789") != std::string::npos)
        throw std::invalid_argument("bad decimal");
      Integer num(whole + frac);
      Integer den = mp::pow(Integer(10), static_cast<unsigned>(frac.size()));
      Rational r(num, den);
      return neg ? Rational(-r) : r;
    }
    return Rational(s);
  } catch (const std::exception&) {
    throw std::invalid_argument("malformed rational literal '" + s + "'");
  }
}

inline std::string rational_to_string(const Rational& r) { return r.str(); }

/// Exact rational square root, if one exists.
inline bool rational_sqrt(const Rational& r, Rational& out) {
  if (r < 0) return false;
  Integer n = mp::numerator(r), d = mp::denominator(r);
  Integer sn = mp::sqrt(n), sd = mp::sqrt(d);
  if (sn * sn != n || sd * sd != d) return false;
  out = Rational(sn, sd);
  return true;
}

/// Writes r = k^2 * d with k rational and d a square-free-ish integer that is
/// not a perfect square (square factors are stripped by trial division).
inline std::pair<Rational, Integer> split_square(const Rational& r) {
  Integer num = mp::numerator(r), den = mp::denominator(r);
  Integer n = num * den;  // sqrt(num/den) = sqrt(num*den)/den
  Integer sign = n < 0 ? Integer(-1) : Integer(1);
  n = mp::abs(n);
  Integer square_part = 1;
  for (Integer p = 2; p * p <= n && p < 100000; ++p) {
    while (n % (p * p) == 0) {
      n /= p * p;
      square_part *= p;
    }
  }
  Integer s = mp::sqrt(n);
  if (s * s == n) {
    square_part *= s;
    n = 1;
  }
  return {Rational(square_part, den), sign * n};
}

// ---------------------------------------------------------------------------
// Quadratic field Q(sqrt d)

/// Element a + b*sqrt(d). d == 0 marks an element known to be rational; it
/// adopts the radicand of whichever operand carries one. Mixing two different
/// radicands is a domain error.
class Quadratic {
 public:
  Quadratic() = default;
  Quadratic(long v) : a_(v) {}  // NOLINT(google-explicit-constructor)
  Quadratic(const Rational& a) : a_(a) {}  // NOLINT(google-explicit-constructor)
  Quadratic(Rational a, Rational b, Integer d) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {
    if (d_ != 0) {
      Integer s = mp::sqrt(mp::abs(d_));
      if (d_ > 0 && s * s == d_) throw std::invalid_argument("quadratic radicand must not be a perfect square");
    }
    normalize();
  }

 private:
  struct unchecked_t {};
  Quadratic(Rational a, Rational b, Integer d, unchecked_t) : a_(std::move(a)), b_(std::move(b)), d_(std::move(d)) {}

 public:
  /// sqrt(r) inside Q(sqrt d) where d is derived from r.
  static Quadratic sqrt_of(const Rational& r) {
    Rational root;
    if (rational_sqrt(r, root)) return Quadratic(root);
    auto [k, d] = split_square(r);
    return Quadratic(Rational(0), k, d);
  }

  const Rational& a() const { return a_; }
  const Rational& b() const { return b_; }
  const Integer& d() const { return d_; }
  bool is_rational() const { return b_ == 0; }

  Quadratic conjugate() const { return Quadratic(a_, -b_, d_, unchecked_t{}); }
  /// a^2 - d b^2
  Rational norm() const { return a_ * a_ - Rational(d_) * b_ * b_; }

  friend Quadratic operator+(const Quadratic& x, const Quadratic& y) {
    return Quadratic(x.a_ + y.a_, x.b_ + y.b_, common_d(x, y), unchecked_t{});
  }
  friend Quadratic operator-(const Quadratic& x, const Quadratic& y) {
    return Quadratic(x.a_ - y.a_, x.b_ - y.b_, common_d(x, y), unchecked_t{});
  }
  friend Quadratic operator*(const Quadratic& x, const Quadratic& y) {
    Integer d = common_d(x, y);
    return Quadratic(x.a_ * y.a_ + Rational(d) * x.b_ * y.b_, x.a_ * y.b_ + x.b_ * y.a_, d, unchecked_t{});
  }
  friend Quadratic operator/(const Quadratic& x, const Quadratic& y) {
    if (y.a_ == 0 && y.b_ == 0) throw std::domain_error("division by zero in Q(sqrt d)");
    Integer d = common_d(x, y);
    Quadratic yy(y.a_, y.b_, d, unchecked_t{});
    Rational n = yy.norm();
    Quadratic num = x * yy.conjugate();
    return Quadratic(num.a_ / n, num.b_ / n, d, unchecked_t{});
  }
  Quadratic operator-() const { return Quadratic(-a_, -b_, d_, unchecked_t{}); }
  Quadratic& operator+=(const Quadratic& o) { return *this = *this + o; }
  Quadratic& operator-=(const Quadratic& o) { return *this = *this - o; }
  Quadratic& operator*=(const Quadratic& o) { return *this = *this * o; }
  Quadratic& operator/=(const Quadratic& o) { return *this = *this / o; }

  friend bool operator==(const Quadratic& x, const Quadratic& y) {
    if (x.b_ != 0 && y.b_ != 0 && x.d_ != y.d_) return false;
    return x.a_ == y.a_ && x.b_ == y.b_;
  }
  friend bool operator!=(const Quadratic& x, const Quadratic& y) { return !(x == y); }

  /// Serialized as "(a,b|d)"; rational elements as "p/q".
  std::string str() const {
    if (b_ == 0) return a_.str();
    return "(" + a_.str() + "," + b_.str() + "|" + d_.str() + ")";
  }

  static Quadratic parse(std::string_view text) {
    std::string s(text);
    if (!s.empty() && s.front() == '(') {
      auto comma = s.find(',');
      auto bar = s.find('|');
      if (comma == std::string::npos || bar == std::string::npos || s.back() != ')' || bar < comma)
        throw std::invalid_argument("malformed quadratic literal '" + s + "'");
      Rational a = parse_rational(s.substr(1, comma - 1));
      Rational b = parse_rational(s.substr(comma + 1, bar - comma - 1));
      Integer d(s.substr(bar + 1, s.size() - bar - 2));
      return Quadratic(a, b, d);
    }
    return Quadratic(parse_rational(s));
  }

  /// Approximate value; only meaningful for real radicands.
  Real approx() const {
    Real a = Real(mp::numerator(a_)) / Real(mp::denominator(a_));
    if (b_ == 0) return a;
    Real b = Real(mp::numerator(b_)) / Real(mp::denominator(b_));
    return a + b * mp::sqrt(Real(d_));
  }

 private:
  static Integer common_d(const Quadratic& x, const Quadratic& y) {
    bool x_rational = x.b_ == 0, y_rational = y.b_ == 0;
    if (!x_rational && !y_rational) {
      if (x.d_ != y.d_) throw std::domain_error("mixing different quadratic extensions");
      return x.d_;
    }
    if (!x_rational) return x.d_;
    if (!y_rational) return y.d_;
    return x.d_ != 0 ? x.d_ : y.d_;
  }
  void normalize() {
    if (d_ == 0 && b_ != 0) throw std::invalid_argument("irrational part without radicand");
  }

  Rational a_{0}, b_{0};
  Integer d_{0};
};

inline std::ostream& operator<<(std::ostream& os, const Quadratic& x) { return os << x.str(); }

// ---------------------------------------------------------------------------
// field_traits

template <class T>
struct field_traits;

template <>
struct field_traits<Rational> {
  static constexpr bool exact = true;
  static constexpr const char* name = "rational";
  static bool is_zero(const Rational& x) { return x == 0; }
  static Rational from_rational(const Rational& r) { return r; }
  static std::string to_string(const Rational& x) { return x.str(); }
  static Rational parse(std::string_view s) { return parse_rational(s); }
  static Real magnitude(const Rational& x) { return Real(mp::abs(mp::numerator(x))) / Real(mp::denominator(x)); }
  static Rational sqrt_of(const Rational& r) {
    Rational out;
    if (!rational_sqrt(r, out))
      throw std::domain_error("sqrt(" + r.str() + ") is irrational; use the quadratic field mode");
    return out;
  }
};

template <>
struct field_traits<Quadratic> {
  static constexpr bool exact = true;
  static constexpr const char* name = "quadratic";
  static bool is_zero(const Quadratic& x) { return x.a() == 0 && x.b() == 0; }
  static Quadratic from_rational(const Rational& r) { return Quadratic(r); }
  static std::string to_string(const Quadratic& x) { return x.str(); }
  static Quadratic parse(std::string_view s) { return Quadratic::parse(s); }
  static Real magnitude(const Quadratic& x) {
    if (x.d() < 0) {
      Real a = field_traits<Rational>::magnitude(x.a()), b = field_traits<Rational>::magnitude(x.b());
      return mp::sqrt(a * a - Real(x.d()) * b * b);
    }
    return mp::abs(x.approx());
  }
  static Quadratic sqrt_of(const Rational& r) { return Quadratic::sqrt_of(r); }
};

template <>
struct field_traits<Real> {
  static constexpr bool exact = false;
  static constexpr const char* name = "float";
  static bool is_zero(const Real& x) { return x == 0; }
  static Real from_rational(const Rational& r) { return Real(mp::numerator(r)) / Real(mp::denominator(r)); }
  static std::string to_string(const Real& x) { return x.str(std::numeric_limits<Real>::digits10, std::ios_base::scientific); }
  static Real parse(std::string_view s) {
    std::string str(s);
    if (str.find('/') != std::string::npos) return from_rational(parse_rational(str));
    try {
      return Real(str);
    } catch (const std::exception&) {
      throw std::invalid_argument("malformed float literal '" + str + "'");
    }
  }
  static Real magnitude(const Real& x) { return mp::abs(x); }
  static Real sqrt_of(const Rational& r) {
    if (r < 0) throw std::domain_error("sqrt of negative value in float mode");
    return mp::sqrt(from_rational(r));
  }
};

template <>
struct field_traits<Complex> {
  static constexpr bool exact = false;
  static constexpr const char* name = "complex";
  static bool is_zero(const Complex& x) { return x == Complex(0); }
  static Complex from_rational(const Rational& r) { return Complex(field_traits<Real>::from_rational(r)); }
  static std::string to_string(const Complex& x) {
    return "(" + field_traits<Real>::to_string(x.real()) + "," + field_traits<Real>::to_string(x.imag()) + ")";
  }
  static Real magnitude(const Complex& x) { return mp::abs(x); }
  static Complex sqrt_of(const Rational& r) { return mp::sqrt(from_rational(r)); }
};

// ---------------------------------------------------------------------------
// Generic helpers

template <class T>
inline bool is_zero(const T& x) {
  return field_traits<T>::is_zero(x);
}

template <class T>
inline T from_rational(const Rational& r) {
  return field_traits<T>::from_rational(r);
}

template <class T>
inline T from_int(long n) {
  return field_traits<T>::from_rational(Rational(n));
}

template <class T>
inline std::string to_string(const T& x) {
  return field_traits<T>::to_string(x);
}

template <class T>
inline Real magnitude(const T& x) {
  return field_traits<T>::magnitude(x);
}

/// Residual test: literal zero in exact fields, relative 1e-20 otherwise.
template <class T>
inline bool negligible(const T& residual, const Real& scale = Real(1)) {
  if constexpr (field_traits<T>::exact) {
    return is_zero(residual);
  } else {
    Real s = scale < 1 ? Real(1) : scale;
    return magnitude(residual) <= float_tolerance() * s;
  }
}

/// x^n for any integer n; n < 0 requires x != 0.
template <class T>
inline T ipow(const T& x, long n) {
  if (n < 0) {
    if (is_zero(x)) throw PoleError("negative power of zero");
    return ipow(T(from_int<T>(1) / x), -n);
  }
  T result = from_int<T>(1), base = x;
  while (n > 0) {
    if (n & 1) result = result * base;
    base = base * base;
    n >>= 1;
  }
  return result;
}

inline Integer binomial(long n, long k) {
  if (k < 0 || k > n) return 0;
  Integer r = 1;
  for (long i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

/// Gaussian-rational approximation of a complex value to `digits` decimals.
inline Quadratic to_gaussian_rational(const Complex& z, unsigned digits = 30) {
  Integer scale = mp::pow(Integer(10), digits);
  auto round_rational = [&](const Real& x) {
    Real scaled = mp::round(x * Real(scale));
    return Rational(Integer(scaled), scale);
  };
  Rational re = round_rational(z.real()), im = round_rational(z.imag());
  if (im == 0) return Quadratic(re);
  return Quadratic(re, im, Integer(-1));
}

}  // namespace slavkp
