#pragma once

#include <cmath>
#include <ostream>
#include <utility>

#include "fatoulab/precision.hpp"

namespace fatoulab {

// Minimal complex value type over any real type with the usual math free
// functions (std::complex is only specified for float/double/long double).
template <class R>
struct Complex {
  R re{}, im{};

  Complex() = default;
  Complex(R r) : re(std::move(r)) {}
  Complex(R r, R i) : re(std::move(r)), im(std::move(i)) {}

  template <class S>
  explicit Complex(const Complex<S>& o) : re(static_cast<R>(o.re)), im(static_cast<R>(o.im)) {}

  Complex& operator+=(const Complex& o) { re += o.re; im += o.im; return *this; }
  Complex& operator-=(const Complex& o) { re -= o.re; im -= o.im; return *this; }
  Complex& operator*=(const Complex& o) { *this = *this * o; return *this; }
  Complex& operator/=(const Complex& o) { *this = *this / o; return *this; }

  friend Complex operator+(const Complex& a, const Complex& b) { return {a.re + b.re, a.im + b.im}; }
  friend Complex operator-(const Complex& a, const Complex& b) { return {a.re - b.re, a.im - b.im}; }
  friend Complex operator-(const Complex& a) { return {-a.re, -a.im}; }
  friend Complex operator*(const Complex& a, const Complex& b) {
    return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
  }
  friend Complex operator*(const R& s, const Complex& a) { return {s * a.re, s * a.im}; }
  friend Complex operator*(const Complex& a, const R& s) { return {a.re * s, a.im * s}; }
  friend Complex operator/(const Complex& a, const R& s) { return {a.re / s, a.im / s}; }
  friend Complex operator/(const Complex& a, const Complex& b) {
    R d = b.re * b.re + b.im * b.im;
    return {(a.re * b.re + a.im * b.im) / d, (a.im * b.re - a.re * b.im) / d};
  }
  friend bool operator==(const Complex& a, const Complex& b) { return a.re == b.re && a.im == b.im; }

  friend std::ostream& operator<<(std::ostream& os, const Complex& z) {
    return os << "(" << z.re << (z.im < R(0) ? "" : "+") << z.im << "i)";
  }
};

template <class R> R norm(const Complex<R>& z) { return z.re * z.re + z.im * z.im; }
template <class R> R abs(const Complex<R>& z) { using std::hypot; return hypot(z.re, z.im); }
template <class R> R arg(const Complex<R>& z) { using std::atan2; return atan2(z.im, z.re); }
template <class R> Complex<R> conj(const Complex<R>& z) { return {z.re, -z.im}; }

template <class R>
Complex<R> exp(const Complex<R>& z) {
  using std::exp; using std::cos; using std::sin;
  R m = exp(z.re);
  return {m * cos(z.im), m * sin(z.im)};
}

// Principal branch, Im log in (-pi, pi].
template <class R>
Complex<R> log(const Complex<R>& z) {
  using std::log;
  return {log(abs(z)), arg(z)};
}

template <class R>
Complex<R> sqrt(const Complex<R>& z) {
  using std::sqrt; using std::abs;
  R m = fatoulab::abs(z);
  if (m == R(0)) return {R(0), R(0)};
  R u = sqrt((m + z.re) / R(2));
  R v = sqrt((m - z.re) / R(2));
  if (z.im < R(0)) v = -v;
  return {u, v};
}

template <class R>
Complex<R> polar(const R& m, const R& theta) {
  using std::cos; using std::sin;
  return {m * cos(theta), m * sin(theta)};
}

// exp(2*pi*i*t)
template <class R>
Complex<R> unit_circle(const R& t) {
  R two_pi = R(2) * const_pi<R>();
  return polar(R(1), two_pi * t);
}

// One-sided difference quotient with a tiny real step. With >= 128 mantissa
// bits and step 1e-30 the cancellation error stays far below every tolerance
// used in the reports.
template <class R, class F>
Complex<R> step_derivative(F&& f, const Complex<R>& w, const R& step) {
  Complex<R> fw = f(w);
  Complex<R> fs = f(Complex<R>(w.re + step, w.im));
  return (fs - fw) / step;
}

}  // namespace fatoulab
