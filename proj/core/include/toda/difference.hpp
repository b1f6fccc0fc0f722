#pragma once

// Finite-difference calculus along the imaginary direction:
//   delta(F)(x) = F(x + i h) - F(x - i h)
// and its polynomial inverse normalised by delta_inverse(L)(0) = 0.

#include <vector>

#include "toda/poly.hpp"

namespace toda {

template <class T>
Polynomial<T> delta(const Polynomial<T>& f, const T& hbar) {
  const T ih = imaginary_unit<T>() * hbar;
  return f.shifted(ih) - f.shifted(-ih);
}

/// Unique polynomial F with delta(F) = L and F(0) = 0.
template <class T>
Polynomial<T> delta_inverse(const Polynomial<T>& l, const T& hbar) {
  if (l.is_zero()) return {};
  const int d = l.degree();
  const T ih = imaginary_unit<T>() * hbar;
  // delta(x^k) = sum_{j odd} 2 C(k, j) (ih)^j x^{k-j}; the system is triangular.
  std::vector<T> pw(static_cast<std::size_t>(d) + 3, T(1));
  for (std::size_t j = 1; j < pw.size(); ++j) pw[j] = pw[j - 1] * ih;
  std::vector<T> f(static_cast<std::size_t>(d) + 2, T(0));
  for (int m = d; m >= 0; --m) {
    T rhs = l.coeff(m);
    for (int k = m + 3; k <= d + 1; k += 2) {
      // binomial C(k, k-m)
      T binom(1);
      for (int s = 1; s <= k - m; ++s) binom = binom * T(k - m + m + 1 - s) / T(s);
      rhs -= f[static_cast<std::size_t>(k)] * T(2) * binom * pw[static_cast<std::size_t>(k - m)];
    }
    f[static_cast<std::size_t>(m) + 1] = rhs / (T(2) * T(m + 1) * ih);
  }
  return Polynomial<T>(std::move(f));
}

/// U(x, y) = (t(x) - t(y)) / (x - y) as an exact bivariate polynomial.
template <class T>
BiPoly<T> divided_difference(const Polynomial<T>& t) {
  // (x^k - y^k)/(x - y) = sum_{a+b=k-1} x^a y^b
  BiPoly<T> u;
  for (int k = 1; k <= t.degree(); ++k) {
    const T c = t.coeff(k);
    if (ScalarTraits<T>::is_zero(c)) continue;
    for (int a = 0; a < k; ++a) {
      const auto i = static_cast<std::size_t>(a);
      const auto j = static_cast<std::size_t>(k - 1 - a);
      u.set(i, j, u.at(i, j) + c);
    }
  }
  return u;
}

/// delta_inverse applied to the first argument of a bivariate polynomial.
template <class T>
BiPoly<T> delta_inverse_x(const BiPoly<T>& u, const T& hbar) {
  return u.map_x([&](const Polynomial<T>& p) { return delta_inverse(p, hbar); });
}

/// u(x + a, y)
template <class T>
BiPoly<T> shift_x(const BiPoly<T>& u, const T& a) {
  return u.map_x([&](const Polynomial<T>& p) { return p.shifted(a); });
}

/// Antiderivative in the first variable, vanishing at x = 0.
template <class T>
BiPoly<T> antiderivative_x(const BiPoly<T>& u) {
  return u.map_x([](const Polynomial<T>& p) { return p.antiderivative(); });
}

}  // namespace toda
