#pragma once

// Scalar backends: IEEE double, fixed-mantissa binary floats and exact
// rationals, plus a small complex type that works uniformly over all of them.

#include <boost/math/constants/constants.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cmath>
#include <cstdlib>
#include <ios>
#include <limits>
#include <sstream>
#include <string>
#include <type_traits>

namespace hardy {

namespace mp = boost::multiprecision;

using Float128 = mp::number<mp::cpp_bin_float<128, mp::digit_base_2>, mp::et_off>;
using Float256 = mp::number<mp::cpp_bin_float<256, mp::digit_base_2>, mp::et_off>;
using Float512 = mp::number<mp::cpp_bin_float<512, mp::digit_base_2>, mp::et_off>;
using Rational = mp::number<mp::rational_adaptor<mp::cpp_int_backend<>>, mp::et_off>;

template <class R>
inline constexpr bool is_exact_v = std::is_same_v<R, Rational>;

/// Mantissa bits of a floating backend; 0 for exact rationals.
template <class R>
constexpr int precision_bits() {
  if constexpr (is_exact_v<R>) {
    return 0;
  } else {
    return std::numeric_limits<R>::digits;
  }
}

/// Significant decimal digits used when serializing a value of type R.
template <class R>
constexpr int serial_digits() {
  if constexpr (std::is_same_v<R, double>) {
    return 17;
  } else if constexpr (is_exact_v<R>) {
    return 0;
  } else {
    return precision_bits<R>() / 3;
  }
}

namespace num {

template <class R> R sqrt(const R& x) { using std::sqrt; return sqrt(x); }
template <class R> R abs(const R& x) { using std::abs; return abs(x); }
template <class R> R exp(const R& x) { using std::exp; return exp(x); }
template <class R> R log(const R& x) { using std::log; return log(x); }
template <class R> R cos(const R& x) { using std::cos; return cos(x); }
template <class R> R sin(const R& x) { using std::sin; return sin(x); }
template <class R> R atan2(const R& y, const R& x) { using std::atan2; return atan2(y, x); }
template <class R> R ldexp(const R& x, int e) { using std::ldexp; return ldexp(x, e); }

template <class R>
R pi() {
  return boost::math::constants::pi<R>();
}

template <class R>
R epsilon() {
  if constexpr (is_exact_v<R>) {
    return R(0);
  } else {
    return std::numeric_limits<R>::epsilon();
  }
}

template <class R>
double to_double(const R& x) {
  if constexpr (std::is_same_v<R, double>) {
    return x;
  } else {
    return x.template convert_to<double>();
  }
}

/// Parses a decimal (or p/q for rationals) literal at full precision of R.
template <class R>
R parse(const std::string& text) {
  if constexpr (std::is_same_v<R, double>) {
    char* end = nullptr;
    double v = std::strtod(text.c_str(), &end);
    if (end == text.c_str() || *end != '\0') {
      throw std::invalid_argument("not a number: '" + text + "'");
    }
    return v;
  } else if constexpr (is_exact_v<R>) {
    // Accept "p/q" and finite decimals such as "0.25" or "-1.5e-2".
    auto slash = text.find('/');
    if (slash != std::string::npos) {
      return R(text.substr(0, slash)) / R(text.substr(slash + 1));
    }
    std::string mantissa = text;
    long exp10 = 0;
    auto epos = mantissa.find_first_of("eE");
    if (epos != std::string::npos) {
      exp10 = std::stol(mantissa.substr(epos + 1));
      mantissa = mantissa.substr(0, epos);
    }
    auto dot = mantissa.find('.');
    if (dot != std::string::npos) {
      exp10 -= static_cast<long>(mantissa.size() - dot - 1);
      mantissa.erase(dot, 1);
    }
    if (mantissa.empty() || mantissa == "-" || mantissa == "+") {
      throw std::invalid_argument("not a number: '" + text + "'");
    }
    if (mantissa.front() == '+') mantissa.erase(0, 1);
    R value{mp::cpp_int(mantissa)};
    R ten(10);
    for (long k = 0; k < std::labs(exp10); ++k) {
      value = exp10 > 0 ? value * ten : value / ten;
    }
    return value;
  } else {
    try {
      return R(text);
    } catch (const std::runtime_error&) {
      throw std::invalid_argument("not a number: '" + text + "'");
    }
  }
}

/// Deterministic decimal rendering: scientific notation with
/// serial_digits<R>() significant digits, or "p/q" for rationals.
template <class R>
std::string format(const R& x) {
  if constexpr (std::is_same_v<R, double>) {
    std::ostringstream os;
    os.precision(serial_digits<double>() - 1);
    os << std::scientific << x;
    return os.str();
  } else if constexpr (is_exact_v<R>) {
    return x.str();
  } else {
    return x.str(serial_digits<R>(), std::ios_base::scientific);
  }
}

template <class R>
R pow_int(R base, unsigned n) {
  R result(1);
  while (n) {
    if (n & 1u) result *= base;
    base *= base;
    n >>= 1u;
  }
  return result;
}

}  // namespace num

/// Complex number over any of the real backends. std::complex is only
/// specified for the built-in floating types, so we carry our own.
template <class R>
struct Complex {
  R re{};
  R im{};

  Complex() = default;
  Complex(const R& r) : re(r), im(0) {}  // NOLINT(google-explicit-constructor)
  Complex(const R& r, const R& i) : re(r), im(i) {}
  template <class I, std::enable_if_t<std::is_integral_v<I>, int> = 0>
  Complex(I r) : re(R(r)), im(0) {}  // NOLINT(google-explicit-constructor)

  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
  Complex& operator*=(const Complex& o) {
    if constexpr (is_exact_v<R>) {
      // rational products are gcd-bound; most operands here are real
      if (im == 0 && o.im == 0) {
        re *= o.re;
        return *this;
      }
    }
    R r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = r;
    return *this;
  }
  Complex& operator/=(const Complex& o) {
    R d = o.re * o.re + o.im * o.im;
    R r = (re * o.re + im * o.im) / d;
    im = (im * o.re - re * o.im) / d;
    re = r;
    return *this;
  }
  Complex& operator*=(const R& k) { re *= k; im *= k; return *this; }
  Complex& operator/=(const R& k) { re /= k; im /= k; return *this; }

  friend Complex operator+(Complex a, const Complex& b) { return a += b; }
  friend Complex operator-(Complex a, const Complex& b) { return a -= b; }
  friend Complex operator*(Complex a, const Complex& b) { return a *= b; }
  friend Complex operator/(Complex a, const Complex& b) { return a /= b; }
  friend Complex operator*(Complex a, const R& k) { return a *= k; }
  friend Complex operator*(const R& k, Complex a) { return a *= k; }
  friend Complex operator/(Complex a, const R& k) { return a /= k; }
  friend Complex operator-(const Complex& a) { return Complex(-a.re, -a.im); }
  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }
  friend bool operator!=(const Complex& a, const Complex& b) { return !(a == b); }

  bool is_zero() const { return re == 0 && im == 0; }
};

template <class R> Complex<R> conj(const Complex<R>& z) { return {z.re, -z.im}; }
/// |z|^2, exact in every backend.
template <class R> R norm2(const Complex<R>& z) { return z.re * z.re + z.im * z.im; }
template <class R> R abs(const Complex<R>& z) {
  if constexpr (std::is_same_v<R, double>) {
    return std::hypot(z.re, z.im);
  } else {
    return num::sqrt(norm2(z));
  }
}
/// max(|re|, |im|); cheap magnitude usable in exact mode.
template <class R> R abs_max(const Complex<R>& z) {
  R a = num::abs(z.re), b = num::abs(z.im);
  return a < b ? b : a;
}
template <class R> Complex<R> exp(const Complex<R>& z) {
  R m = num::exp(z.re);
  return {m * num::cos(z.im), m * num::sin(z.im)};
}
template <class R> Complex<R> log(const Complex<R>& z) {
  return {num::log(abs(z)), num::atan2(z.im, z.re)};
}
template <class R> Complex<R> pow_int(Complex<R> base, unsigned n) {
  Complex<R> result(R(1));
  while (n) {
    if (n & 1u) result *= base;
    base *= base;
    n >>= 1u;
  }
  return result;
}
/// Principal m-th root of unity raised to the j-th power; exact on the axes.
template <class R> Complex<R> unit_root(int j, int m) {
  j = ((j % m) + m) % m;
  if ((4 * j) % m == 0) {
    switch ((4 * j) / m) {
      case 0: return {R(1), R(0)};
      case 1: return {R(0), R(1)};
      case 2: return {R(-1), R(0)};
      default: return {R(0), R(-1)};
    }
  }
  R theta = R(2) * num::pi<R>() * R(j) / R(m);
  return {num::cos(theta), num::sin(theta)};
}

template <class R>
std::string format(const Complex<R>& z) {
  std::string s = num::format(z.re);
  if (z.im != 0) {
    std::string i = num::format(z.im);
    if (i.front() != '-') s += '+';
    s += i + "i";
  }
  return s;
}

/// Parses "0.5", "-0.25+1.5i", "2i", "1-i".
template <class R>
Complex<R> parse_complex(const std::string& raw) {
  std::string text;
  for (char c : raw) {
    if (c != ' ') text += c;
  }
  if (text.empty()) throw std::invalid_argument("empty complex literal");
  if (text.back() != 'i' && text.back() != 'j') return {num::parse<R>(text), R(0)};
  text.pop_back();
  // Split at the last sign that is not part of an exponent.
  std::size_t split = std::string::npos;
  for (std::size_t k = text.size(); k-- > 1;) {
    if ((text[k] == '+' || text[k] == '-') && text[k - 1] != 'e' && text[k - 1] != 'E') {
      split = k;
      break;
    }
  }
  auto imag_of = [](std::string t) -> R {
    if (t.empty() || t == "+") return R(1);
    if (t == "-") return R(-1);
    return num::parse<R>(t);
  };
  if (split == std::string::npos) return {R(0), imag_of(text)};
  return {num::parse<R>(text.substr(0, split)), imag_of(text.substr(split))};
}

}  // namespace hardy
