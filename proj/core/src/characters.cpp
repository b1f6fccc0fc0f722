#include "toda/characters.hpp"

#include <stdexcept>

namespace toda {

namespace {

void require_n(int n) {
  if (n < 2) throw std::invalid_argument("character needs n >= 2");
}

QSeries alternating(int n, int top, int order) {
  QSeries s(order);
  QSeries sign_q = QSeries::one(order);
  const QSeries minus_q = QSeries::monomial(order, 1, Rational(-1));
  for (int k = 0; k <= top; ++k) {
    s += sign_q * q_binomial(2 * n - 1, top - k, order);
    sign_q *= minus_q;
  }
  return s;
}

}  // namespace

QSeries q_binomial(int n, int m, int order) {
  if (m < 0 || m > n) throw std::invalid_argument("q_binomial needs 0 <= m <= n");
  return QSeries::q_factorial(order, n) / (QSeries::q_factorial(order, m) * QSeries::q_factorial(order, n - m));
}

GradedCharacter character_product(int n, int order) {
  require_n(n);
  const QSeries one = QSeries::q_number(order, 1);
  const QSeries num = one * one * QSeries::q_factorial(order, 2 * n);
  const QSeries den = QSeries::q_factorial(order, n) * QSeries::q_factorial(order, n - 1) *
                      QSeries::q_factorial(order, n + 1) * QSeries::q_factorial(order, n) * one;
  return {n, num / den};
}

GradedCharacter character_binomial(int n, int order) {
  require_n(n);
  const QSeries top = q_binomial(2 * n - 1, n - 1, order) -
                      QSeries::monomial(order, 1) * q_binomial(2 * n - 1, n - 2, order);
  return {n, top / (QSeries::q_factorial(order, n) * QSeries::q_factorial(order, n - 1))};
}

QSeries character_resolution(int n, int order) {
  require_n(n);
  QSeries bracket = alternating(n, n - 1, order);
  if (n >= 3) bracket -= QSeries::monomial(order, 2) * alternating(n, n - 3, order);
  return bracket / (QSeries::q_factorial(order, n - 1) * QSeries::q_factorial(order, n));
}

QSeries character_two_unsimplified(int order) {
  const QSeries inv1 = QSeries::q_number(order, 1).inverse();
  const QSeries inner = QSeries::one(order) + QSeries::monomial(order, 1) * inv1 + QSeries::monomial(order, 2) * inv1;
  return inner / QSeries::q_factorial(order, 2);
}

QSeries character_two_simplified(int order) {
  return (QSeries::one(order) + QSeries::monomial(order, 2)) / QSeries::q_factorial(order, 2);
}

}  // namespace toda
