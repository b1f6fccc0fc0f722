#pragma once

#include <complex>
#include <ostream>
#include <string>

#include <boost/multiprecision/gmp.hpp>

namespace toda {

using Rational = boost::multiprecision::mpq_rational;

/// Exact Gaussian rational a + i b.
struct CRational {
  Rational re{0};
  Rational im{0};

  CRational() = default;
  CRational(int v) : re(v) {}  // NOLINT: implicit like a scalar literal
  CRational(Rational r) : re(std::move(r)) {}  // NOLINT
  CRational(Rational r, Rational i) : re(std::move(r)), im(std::move(i)) {}

  static CRational i() { return {Rational(0), Rational(1)}; }

  CRational& operator+=(const CRational& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  CRational& operator-=(const CRational& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  CRational& operator*=(const CRational& o) {
    Rational r = re * o.re - im * o.im;
    im = re * o.im + im * o.re;
    re = std::move(r);
    return *this;
  }
  CRational& operator/=(const CRational& o) {
    const Rational den = o.re * o.re + o.im * o.im;
    Rational r = (re * o.re + im * o.im) / den;
    im = (im * o.re - re * o.im) / den;
    re = std::move(r);
    return *this;
  }
  friend CRational operator+(CRational a, const CRational& b) { return a += b; }
  friend CRational operator-(CRational a, const CRational& b) { return a -= b; }
  friend CRational operator*(CRational a, const CRational& b) { return a *= b; }
  friend CRational operator/(CRational a, const CRational& b) { return a /= b; }
  CRational operator-() const { return {-re, -im}; }
  friend bool operator==(const CRational& a, const CRational& b) {
    return a.re == b.re && a.im == b.im;
  }
  friend bool operator!=(const CRational& a, const CRational& b) { return !(a == b); }

  CRational conj() const { return {re, -im}; }
  bool is_zero() const { return re == 0 && im == 0; }
  std::complex<double> to_complex() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }
  friend std::ostream& operator<<(std::ostream& os, const CRational& z) {
    return os << '(' << z.re << ',' << z.im << ')';
  }
};

/// Exact rational equal to the binary value of a finite double.
Rational to_rational(double x);

inline CRational to_crational(std::complex<double> z) {
  return {to_rational(z.real()), to_rational(z.imag())};
}

// Scalar traits used by the generic polynomial code.
template <class T>
struct ScalarTraits {
  static T zero() { return T(0); }
  static T one() { return T(1); }
  static bool is_zero(const T& v) { return v == T(0); }
};

template <class T>
T imaginary_unit();
template <>
inline CRational imaginary_unit<CRational>() { return CRational::i(); }
template <>
inline std::complex<double> imaginary_unit<std::complex<double>>() { return {0.0, 1.0}; }

}  // namespace toda
