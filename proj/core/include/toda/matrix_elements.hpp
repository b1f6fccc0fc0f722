#pragma once

// Deformed Abelian integrals int Q Q' F exp(-2 pi k gamma / hbar) d gamma, the quantum
// vanishing identities built on them, matrix elements, and the quasi-classical comparisons.

#include <complex>
#include <functional>
#include <vector>

#include "toda/poly.hpp"
#include "toda/quantum.hpp"
#include "toda/schur.hpp"

namespace toda {

using ExactBiPoly = BiPoly<CRational>;

struct QuantumIdentityPolys {
  ExactPoly Dq;    // D(L)_{t,t'}
  ExactBiPoly Cq;  // C_{t,t'}(x, y), antisymmetric
  ExactPoly Sq;    // t - t'
};

/// D(L)_{t,t'} = t D^{-1}(L t) + t' D^{-1}(L t') - t D^{-1}(L t')(g - i hbar) - t' D^{-1}(L t)(g - i hbar)
///               - L t t' + L(g + i hbar) - L(g - i hbar), with D the i hbar difference operator.
ExactPoly quantum_exact_form(const ExactPoly& t, const ExactPoly& tp, const CRational& hbar, const ExactPoly& L);

/// C_{t,t'}(x, y) = R(x, y) - R(y, x).
ExactBiPoly quantum_bilinear(const ExactPoly& t, const ExactPoly& tp, const CRational& hbar);

QuantumIdentityPolys build_quantum_identity_polys(const ExactPoly& t, const ExactPoly& tp, const CRational& hbar,
                                                  const ExactPoly& L = ExactPoly::constant(CRational(1)));

/// Quadrature nodes for the weight Q(g) Q'(g) exp(-2 pi k g / hbar) on the real line.
/// The window is set by the decay rates 2 pi (n - k) / hbar (left) and 2 pi k / hbar (right);
/// panels are doubled until the moments of degree <= max_degree settle, and a 1.3x wider
/// window must agree to 1e-8 relative. Throws ConvergenceFailure otherwise.
class DeformedMeasure {
 public:
  DeformedMeasure(const QFunction& q, const QFunction& qp, int k, int n = 2, int max_degree = 10);

  std::complex<double> integrate(const Poly& F) const;
  /// integral of |Q Q' F exp(...)|
  double scale(const Poly& F) const;
  /// Double integral of C(x, y) against this measure in x and `other` in y, and its absolute scale.
  std::complex<double> integrate2(const ComplexBiPoly& C, const DeformedMeasure& other) const;
  double scale2(const ComplexBiPoly& C, const DeformedMeasure& other) const;

  double window_lo() const { return lo_; }
  double window_hi() const { return hi_; }
  std::size_t nodes() const { return x_.size(); }
  double window_change() const { return window_change_; }

  const std::vector<double>& x() const { return x_; }
  const std::vector<double>& w() const { return w_; }  // quadrature weight times Q Q' exp(...)

 private:
  double lo_ = 0.0, hi_ = 0.0, window_change_ = 0.0;
  std::vector<double> x_, w_;
};

struct DeformedIntegral {
  std::complex<double> value;
  double scale = 0.0;
  double residual() const { return scale > 0 ? std::abs(value) / scale : 0.0; }
};

DeformedIntegral deformed_integral(const QFunction& q, const QFunction& qp, const Poly& F, int k, int n = 2);

/// <t|F(b)|t'> by the determinant of one-fold integrals over the Schur blocks of
/// prod_{i<j}(g_i - g_j) F. F has n - 1 variables; weights exp(2 pi g (j - n) / hbar), j = 1..n-1.
std::complex<double> matrix_element(const QFunction& q, const QFunction& qp, const MultiPoly<std::complex<double>>& F,
                                    int n = 2);

/// <t|t'> / sqrt(<t|t> <t'|t'>)
double orthogonality(const QFunction& q, const QFunction& qp);

enum class QuantumProp { P1pp, P2pp, P3pp };

struct QuantumPropInput {
  QuantumProp kind = QuantumProp::P1pp;
  RealPoly L{1.0};  // P1pp
  int k = 1;
  int l = 1;        // P2pp second weight
  int n = 2;
};

/// |integral| / integral of |integrand| for the selected identity.
double quantum_prop_check(const QFunction& q, const QFunction& qp, const QuantumPropInput& in);

/// Same as P1pp with D replaced by an arbitrary polynomial.
double quantum_form_residual(const QFunction& q, const QFunction& qp, const Poly& F, int k = 1, int n = 2);

/// |int Q(g + i hbar) Q'(g) W - int Q(g) Q'(g - i hbar) W| / scale, W = exp(-2 pi k g / hbar).
double contour_shift_check(const QFunction& q, const QFunction& qp, int k = 1, int n = 2);

struct QuasiClassicalState {
  RealPoly t;
  double hbar = 1.0;
  double zone_lo = 0.0, zone_hi = 0.0;
  std::vector<double> grid;          // gamma samples inside the zone
  std::vector<double> q_qc;          // 2 P^{-1/4} cos(phase - pi/4), real on the zone
  std::vector<double> zeros;         // phase(gamma) = pi (m + 3/4)
  std::function<double(double)> phase;  // (1/hbar) int_{zone_lo}^{gamma} arccosh(|t|/2)
};

QuasiClassicalState quasiclassical_q(const RealPoly& t, double hbar, int samples = 400);

/// Real zeros of the exact Q inside [lo, hi].
std::vector<double> q_zeros(const QFunction& q, double lo, double hi);

struct ZoneZeroReport {
  int exact_count = 0;
  int predicted_count = 0;
  double max_offset = 0.0;  // max |exact - predicted| / local spacing
};
ZoneZeroReport compare_zone_zeros(const QFunction& q, int samples = 400);

struct CloseStateReport {
  std::complex<double> quantum;    // <m|F|m+k> / sqrt(<m|m><m+k|m+k>)
  std::complex<double> classical;  // Fourier coefficient of F at mode k on the level-m curve
  double deviation = 0.0;          // ||quantum| - |classical|| / |classical|
  double spacing = 0.0;            // |t2(m+k) - t2(m)|
  double spacing_predicted = 0.0;  // hbar |k| A_11
  double spacing_error = 0.0;      // relative
};

CloseStateReport close_state_compare(const EigenPair& a, const EigenPair& b, const RealPoly& F);

/// |(t2 - t2') / hbar - S_{t,k} / i| / |S_{t,k}|, S_{t,k} on the curve of a, k = b.level - a.level.
double deformation_error(const EigenPair& a, const EigenPair& b);

}  // namespace toda
