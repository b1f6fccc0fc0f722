#pragma once

// Exact-form and bilinear-identity polynomials of the classical curve and the
// cycle-integral residuals that must vanish.

#include <complex>
#include <optional>
#include <vector>

#include "toda/difference.hpp"
#include "toda/poly.hpp"
#include "toda/spectral.hpp"

namespace toda {

/// D_t(L) = P L' + P' L / 2.
template <class T>
Polynomial<T> d_t(const Polynomial<T>& P, const Polynomial<T>& L) {
  return P * L.derivative() + P.derivative() * L * T(Rational(1, 2));
}

/// C_t(x, y) = (P'(x) + P'(y)) / (2 (x - y)) - (P(x) - P(y)) / (x - y)^2, as a polynomial.
/// T must support exact division (Rational or CRational).
template <class T>
BiPoly<T> c_t(const Polynomial<T>& P) {
  using B = BiPoly<T>;
  const Polynomial<T> dP = P.derivative();
  B x_minus_y;
  x_minus_y.set(1, 0, T(1));
  x_minus_y.set(0, 1, T(-1));
  const B num = (B::in_x(dP) + B::in_y(dP)) * x_minus_y * T(Rational(1, 2)) - (B::in_x(P) - B::in_y(P));
  return num.divide_by_x_minus_y().divide_by_x_minus_y();
}

/// D_{t,k}(L) = D_t(L) - S(gamma) * integral_0^gamma L S.
Poly d_tk(const RealPoly& P, const RealPoly& L, const Poly& S);

/// C_{t,k}(x, y) = C_t(x, y) - S(x) W(x, y) + S(y) W(y, x),
/// W(x, y) = integral_0^x (S(g) - S(y)) / (g - y) dg.
ComplexBiPoly c_tk(const RealPoly& P, const Poly& S);

/// C_t computed exactly from the binary values of P's coefficients.
RealBiPoly c_t_numeric(const RealPoly& P);

enum class ClassicalProp { P1, P2, P1p, P2p, P3p };

struct ClassicalPropInput {
  ClassicalProp kind = ClassicalProp::P1;
  RealPoly L;               // P1, P1p
  std::vector<int> k;       // P1p, P2p, P3p
  int cycle1 = 1;
  int cycle2 = 1;           // P2, P2p
};

/// |integral| / integral of |integrand| over the cycle(s), in the trapezoid representation.
double prop_check_classical(const SpectralData& s, const PeriodData& pd, const ClassicalPropInput& in);

/// Negative control: integral of L / sqrt(P) with plain L.
double plain_form_residual(const PeriodData& pd, const RealPoly& L, int cycle);

}  // namespace toda
