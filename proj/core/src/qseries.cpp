#include "toda/qseries.hpp"

#include <stdexcept>

namespace toda {

QSeries::QSeries(int order, const std::vector<Rational>& coeffs) : QSeries(order) {
  for (std::size_t k = 0; k < coeffs.size() && k < c_.size(); ++k) c_[k] = coeffs[k];
}

QSeries QSeries::one(int order) { return monomial(order, 0); }

QSeries QSeries::monomial(int order, int power, Rational coeff) {
  QSeries s(order);
  if (power <= order) s[power] = std::move(coeff);
  return s;
}

QSeries QSeries::q_number(int order, int m) {
  QSeries s = one(order);
  if (m <= order) s[m] -= 1;
  return s;
}

QSeries QSeries::q_factorial(int order, int m) {
  QSeries s = one(order);
  for (int k = 1; k <= m; ++k) s *= q_number(order, k);
  return s;
}

void QSeries::check_order(const QSeries& o) const {
  if (o.order() != order()) throw std::invalid_argument("QSeries truncation orders differ");
}

QSeries& QSeries::operator+=(const QSeries& o) {
  check_order(o);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] += o.c_[k];
  return *this;
}

QSeries& QSeries::operator-=(const QSeries& o) {
  check_order(o);
  for (std::size_t k = 0; k < c_.size(); ++k) c_[k] -= o.c_[k];
  return *this;
}

QSeries& QSeries::operator*=(const Rational& s) {
  for (auto& v : c_) v *= s;
  return *this;
}

QSeries operator*(const QSeries& a, const QSeries& b) {
  a.check_order(b);
  QSeries r(a.order());
  const std::size_t n = a.c_.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (a.c_[i] == 0) continue;
    for (std::size_t j = 0; i + j < n; ++j) r.c_[i + j] += a.c_[i] * b.c_[j];
  }
  return r;
}

QSeries QSeries::inverse() const {
  if (c_[0] == 0) throw std::domain_error("QSeries is not a unit");
  QSeries r(order());
  r.c_[0] = Rational(1) / c_[0];
  for (std::size_t k = 1; k < c_.size(); ++k) {
    Rational acc(0);
    for (std::size_t j = 1; j <= k; ++j) acc += c_[j] * r.c_[k - j];
    r.c_[k] = -acc * r.c_[0];
  }
  return r;
}

bool QSeries::all_nonnegative_integers() const {
  for (const auto& v : c_)
    if (v < 0 || boost::multiprecision::denominator(v) != 1) return false;
  return true;
}

std::ostream& operator<<(std::ostream& os, const QSeries& s) {
  bool first = true;
  for (int k = 0; k <= s.order(); ++k) {
    if (s[k] == 0) continue;
    if (!first) os << " + ";
    first = false;
    os << s[k];
    if (k > 0) os << "*q^" << k;
  }
  if (first) os << '0';
  return os << " + O(q^" << s.order() + 1 << ')';
}

}  // namespace toda
