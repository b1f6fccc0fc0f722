#pragma once

#include <algorithm>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <stdexcept>
#include <utility>
#include <vector>

#include "toda/rational.hpp"

namespace toda {

/// Dense univariate polynomial; coeffs()[k] multiplies x^k.
/// Trailing exact zeros are stripped, so the zero polynomial has no coefficients.
template <class T>
class Polynomial {
 public:
  using value_type = T;

  Polynomial() = default;
  Polynomial(std::initializer_list<T> c) : c_(c) { trim(); }
  explicit Polynomial(std::vector<T> c) : c_(std::move(c)) { trim(); }

  static Polynomial constant(T v) { return Polynomial(std::vector<T>{std::move(v)}); }
  static Polynomial monomial(int degree, T coeff = T(1)) {
    std::vector<T> c(static_cast<std::size_t>(degree) + 1, T(0));
    c.back() = std::move(coeff);
    return Polynomial(std::move(c));
  }
  /// x - root
  static Polynomial linear_factor(const T& root) { return Polynomial({-root, T(1)}); }

  int degree() const { return static_cast<int>(c_.size()) - 1; }
  bool is_zero() const { return c_.empty(); }
  const std::vector<T>& coeffs() const { return c_; }
  T coeff(int k) const {
    return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[static_cast<std::size_t>(k)] : T(0);
  }
  T leading() const { return c_.empty() ? T(0) : c_.back(); }

  template <class U>
  U operator()(const U& x) const {
    U acc = U(0);
    for (auto it = c_.rbegin(); it != c_.rend(); ++it) acc = acc * x + U(*it);
    return acc;
  }

  Polynomial& operator+=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] += o.c_[k];
    trim();
    return *this;
  }
  Polynomial& operator-=(const Polynomial& o) {
    if (o.c_.size() > c_.size()) c_.resize(o.c_.size(), T(0));
    for (std::size_t k = 0; k < o.c_.size(); ++k) c_[k] -= o.c_[k];
    trim();
    return *this;
  }
  Polynomial& operator*=(const T& s) {
    for (auto& v : c_) v *= s;
    trim();
    return *this;
  }
  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(Polynomial a, const T& s) { return a *= s; }
  friend Polynomial operator*(const T& s, Polynomial a) { return a *= s; }
  Polynomial operator-() const {
    Polynomial r = *this;
    for (auto& v : r.c_) v = -v;
    return r;
  }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b) {
    if (a.is_zero() || b.is_zero()) return {};
    std::vector<T> c(a.c_.size() + b.c_.size() - 1, T(0));
    for (std::size_t i = 0; i < a.c_.size(); ++i)
      for (std::size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
    return Polynomial(std::move(c));
  }
  Polynomial& operator*=(const Polynomial& o) { return *this = *this * o; }
  friend bool operator==(const Polynomial& a, const Polynomial& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Polynomial& a, const Polynomial& b) { return !(a == b); }

  Polynomial derivative() const {
    if (c_.size() <= 1) return {};
    std::vector<T> d(c_.size() - 1);
    for (std::size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * T(static_cast<int>(k));
    return Polynomial(std::move(d));
  }
  /// Antiderivative vanishing at 0.
  Polynomial antiderivative() const {
    std::vector<T> a(c_.size() + 1, T(0));
    for (std::size_t k = 0; k < c_.size(); ++k) a[k + 1] = c_[k] / T(static_cast<int>(k + 1));
    return Polynomial(std::move(a));
  }
  /// p(x + a), by repeated synthetic division (Taylor shift).
  Polynomial shifted(const T& a) const {
    std::vector<T> c = c_;
    const std::size_t n = c.size();
    for (std::size_t i = 0; i + 1 < n; ++i)
      for (std::size_t j = n - 1; j > i; --j) c[j - 1] += a * c[j];
    return Polynomial(std::move(c));
  }
  /// Quotient and remainder of division by a polynomial with invertible leading coefficient.
  std::pair<Polynomial, Polynomial> divmod(const Polynomial& d) const {
    if (d.is_zero()) throw std::domain_error("polynomial division by zero");
    if (degree() < d.degree()) return {Polynomial{}, *this};
    std::vector<T> r = c_;
    std::vector<T> q(c_.size() - d.c_.size() + 1, T(0));
    for (int k = static_cast<int>(q.size()) - 1; k >= 0; --k) {
      const T f = r[static_cast<std::size_t>(k) + d.c_.size() - 1] / d.c_.back();
      q[static_cast<std::size_t>(k)] = f;
      for (std::size_t j = 0; j < d.c_.size(); ++j) r[static_cast<std::size_t>(k) + j] -= f * d.c_[j];
    }
    r.resize(d.c_.size() - 1);
    return {Polynomial(std::move(q)), Polynomial(std::move(r))};
  }

  template <class U, class F>
  Polynomial<U> map(F&& f) const {
    std::vector<U> out;
    out.reserve(c_.size());
    for (const auto& v : c_) out.push_back(f(v));
    return Polynomial<U>(std::move(out));
  }

 private:
  void trim() {
    while (!c_.empty() && ScalarTraits<T>::is_zero(c_.back())) c_.pop_back();
  }
  std::vector<T> c_;
};

using Poly = Polynomial<std::complex<double>>;
using RealPoly = Polynomial<double>;
using ExactPoly = Polynomial<CRational>;
using RationalPoly = Polynomial<Rational>;

inline Poly to_complex(const RealPoly& p) {
  return p.map<std::complex<double>>([](double v) { return std::complex<double>(v, 0.0); });
}
inline Poly to_complex(const ExactPoly& p) {
  return p.map<std::complex<double>>([](const CRational& v) { return v.to_complex(); });
}
inline ExactPoly to_exact(const RealPoly& p) {
  return p.map<CRational>([](double v) { return CRational(to_rational(v)); });
}
inline ExactPoly to_exact(const Poly& p) {
  return p.map<CRational>([](std::complex<double> v) { return to_crational(v); });
}

/// Dense bivariate polynomial; at(i, j) multiplies x^i y^j.
template <class T>
class BiPoly {
 public:
  BiPoly() = default;
  BiPoly(std::size_t nx, std::size_t ny) : c_(nx, std::vector<T>(ny, T(0))) {}

  /// p(x) viewed as a polynomial in the first variable.
  static BiPoly in_x(const Polynomial<T>& p) {
    BiPoly b(p.coeffs().size(), 1);
    for (std::size_t i = 0; i < p.coeffs().size(); ++i) b.c_[i][0] = p.coeffs()[i];
    b.trim();
    return b;
  }
  static BiPoly in_y(const Polynomial<T>& p) {
    BiPoly b(1, p.coeffs().size());
    for (std::size_t j = 0; j < p.coeffs().size(); ++j) b.c_[0][j] = p.coeffs()[j];
    b.trim();
    return b;
  }

  std::size_t nx() const { return c_.size(); }
  std::size_t ny() const { return c_.empty() ? 0 : c_[0].size(); }
  bool is_zero() const { return c_.empty(); }
  T at(std::size_t i, std::size_t j) const {
    return (i < nx() && j < ny()) ? c_[i][j] : T(0);
  }
  void set(std::size_t i, std::size_t j, T v) {
    grow(i + 1, j + 1);
    c_[i][j] = std::move(v);
    trim();
  }

  template <class U>
  U operator()(const U& x, const U& y) const {
    U acc = U(0);
    for (auto row = c_.rbegin(); row != c_.rend(); ++row) {
      U inner = U(0);
      for (auto it = row->rbegin(); it != row->rend(); ++it) inner = inner * y + U(*it);
      acc = acc * x + inner;
    }
    return acc;
  }

  /// Coefficient polynomial (in y) of x^i.
  Polynomial<T> x_coeff(std::size_t i) const {
    return i < nx() ? Polynomial<T>(c_[i]) : Polynomial<T>{};
  }
  /// Coefficient polynomial (in x) of y^j.
  Polynomial<T> y_coeff(std::size_t j) const {
    std::vector<T> v(nx(), T(0));
    for (std::size_t i = 0; i < nx(); ++i) v[i] = at(i, j);
    return Polynomial<T>(std::move(v));
  }
  /// Build from a list of x-polynomials, one per power of y.
  static BiPoly from_y_coeffs(const std::vector<Polynomial<T>>& cols) {
    BiPoly b;
    for (std::size_t j = 0; j < cols.size(); ++j)
      for (std::size_t i = 0; i < cols[j].coeffs().size(); ++i) {
        b.grow(i + 1, j + 1);
        b.c_[i][j] += cols[j].coeffs()[i];
      }
    b.trim();
    return b;
  }
  /// Apply a linear map acting on the first variable, column by column.
  template <class F>
  BiPoly map_x(F&& f) const {
    std::vector<Polynomial<T>> cols;
    for (std::size_t j = 0; j < ny(); ++j) cols.push_back(f(y_coeff(j)));
    return from_y_coeffs(cols);
  }

  BiPoly swapped() const {
    BiPoly b(ny(), nx());
    for (std::size_t i = 0; i < nx(); ++i)
      for (std::size_t j = 0; j < ny(); ++j) b.c_[j][i] = c_[i][j];
    b.trim();
    return b;
  }

  BiPoly& operator+=(const BiPoly& o) {
    grow(o.nx(), o.ny());
    for (std::size_t i = 0; i < o.nx(); ++i)
      for (std::size_t j = 0; j < o.ny(); ++j) c_[i][j] += o.c_[i][j];
    trim();
    return *this;
  }
  BiPoly& operator-=(const BiPoly& o) {
    grow(o.nx(), o.ny());
    for (std::size_t i = 0; i < o.nx(); ++i)
      for (std::size_t j = 0; j < o.ny(); ++j) c_[i][j] -= o.c_[i][j];
    trim();
    return *this;
  }
  BiPoly& operator*=(const T& s) {
    for (auto& row : c_)
      for (auto& v : row) v *= s;
    trim();
    return *this;
  }
  friend BiPoly operator+(BiPoly a, const BiPoly& b) { return a += b; }
  friend BiPoly operator-(BiPoly a, const BiPoly& b) { return a -= b; }
  friend BiPoly operator*(BiPoly a, const T& s) { return a *= s; }
  friend BiPoly operator*(const BiPoly& a, const BiPoly& b) {
    if (a.is_zero() || b.is_zero()) return {};
    BiPoly r(a.nx() + b.nx() - 1, a.ny() + b.ny() - 1);
    for (std::size_t i = 0; i < a.nx(); ++i)
      for (std::size_t j = 0; j < a.ny(); ++j) {
        if (ScalarTraits<T>::is_zero(a.c_[i][j])) continue;
        for (std::size_t k = 0; k < b.nx(); ++k)
          for (std::size_t l = 0; l < b.ny(); ++l) r.c_[i + k][j + l] += a.c_[i][j] * b.c_[k][l];
      }
    r.trim();
    return r;
  }
  friend bool operator==(const BiPoly& a, const BiPoly& b) { return a.c_ == b.c_; }

  /// Exact quotient by (x - y). Throws if the remainder p(y, y) is nonzero.
  BiPoly divide_by_x_minus_y() const {
    // Synthetic division in x with coefficients that are polynomials in y:
    // p(x) = (x - y) q(x) + r,  q_{k-1} = p_k + y q_k.
    if (is_zero()) return {};
    const std::size_t n = nx();
    std::vector<Polynomial<T>> q(n > 1 ? n - 1 : 0);
    const Polynomial<T> y = Polynomial<T>::monomial(1);
    Polynomial<T> carry;
    for (std::size_t k = n; k-- > 1;) {
      carry = x_coeff(k) + y * carry;
      q[k - 1] = carry;
    }
    const Polynomial<T> rem = x_coeff(0) + y * carry;
    if (!rem.is_zero()) throw std::domain_error("bivariate polynomial not divisible by (x - y)");
    BiPoly b;
    for (std::size_t i = 0; i < q.size(); ++i)
      for (std::size_t j = 0; j < q[i].coeffs().size(); ++j) b.set(i, j, q[i].coeffs()[j]);
    return b;
  }

  template <class U, class F>
  BiPoly<U> map_coeffs(F&& f) const {
    BiPoly<U> b;
    for (std::size_t i = 0; i < nx(); ++i)
      for (std::size_t j = 0; j < ny(); ++j) b.set(i, j, f(c_[i][j]));
    return b;
  }

 private:
  void grow(std::size_t nx_, std::size_t ny_) {
    const std::size_t cols = std::max(ny(), ny_);
    if (c_.size() < nx_) c_.resize(nx_, std::vector<T>(cols, T(0)));
    for (auto& row : c_)
      if (row.size() < cols) row.resize(cols, T(0));
  }
  void trim() {
    while (!c_.empty() && std::all_of(c_.back().begin(), c_.back().end(),
                                      [](const T& v) { return ScalarTraits<T>::is_zero(v); }))
      c_.pop_back();
    while (ny() > 0) {
      bool zero = true;
      for (const auto& row : c_)
        if (!ScalarTraits<T>::is_zero(row.back())) zero = false;
      if (!zero) break;
      for (auto& row : c_) row.pop_back();
    }
    if (ny() == 0) c_.clear();
  }
  std::vector<std::vector<T>> c_;
};

using ExactBiPoly = BiPoly<CRational>;
using ComplexBiPoly = BiPoly<std::complex<double>>;
using RealBiPoly = BiPoly<double>;

inline ComplexBiPoly to_complex(const ExactBiPoly& p) {
  return p.map_coeffs<std::complex<double>>([](const CRational& v) { return v.to_complex(); });
}

}  // namespace toda
