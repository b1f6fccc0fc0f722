#pragma once

#include <cstddef>
#include <ostream>
#include <vector>

#include "toda/rational.hpp"

namespace toda {

/// Power series in q with exact rational coefficients, truncated after q^order.
class QSeries {
 public:
  explicit QSeries(int order = 40) : c_(static_cast<std::size_t>(order) + 1, Rational(0)) {}
  QSeries(int order, const std::vector<Rational>& coeffs);

  static QSeries one(int order);
  static QSeries monomial(int order, int power, Rational coeff = Rational(1));
  /// [m] = 1 - q^m
  static QSeries q_number(int order, int m);
  /// [m]! = [1][2]...[m], [0]! = 1
  static QSeries q_factorial(int order, int m);

  int order() const { return static_cast<int>(c_.size()) - 1; }
  const Rational& operator[](int k) const { return c_[static_cast<std::size_t>(k)]; }
  Rational& operator[](int k) { return c_[static_cast<std::size_t>(k)]; }
  const std::vector<Rational>& coeffs() const { return c_; }

  QSeries& operator+=(const QSeries& o);
  QSeries& operator-=(const QSeries& o);
  QSeries& operator*=(const Rational& s);
  friend QSeries operator+(QSeries a, const QSeries& b) { return a += b; }
  friend QSeries operator-(QSeries a, const QSeries& b) { return a -= b; }
  friend QSeries operator*(QSeries a, const Rational& s) { return a *= s; }
  friend QSeries operator*(const QSeries& a, const QSeries& b);
  QSeries& operator*=(const QSeries& o) { return *this = *this * o; }

  /// Multiplicative inverse; requires a nonzero constant term.
  QSeries inverse() const;
  friend QSeries operator/(const QSeries& a, const QSeries& b) { return a * b.inverse(); }

  friend bool operator==(const QSeries& a, const QSeries& b) { return a.c_ == b.c_; }
  friend bool operator!=(const QSeries& a, const QSeries& b) { return !(a == b); }
  friend std::ostream& operator<<(std::ostream& os, const QSeries& s);

  bool all_nonnegative_integers() const;

 private:
  void check_order(const QSeries& o) const;
  std::vector<Rational> c_;
};

}  // namespace toda
