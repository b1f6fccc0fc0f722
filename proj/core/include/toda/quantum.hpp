#pragma once

// Exact n = 2 chain in the zero total momentum sector.
//
// The relative motion -hbar^2 psi'' + 2 cosh(r) psi = E psi is seeded by a sinc-DVR
// diagonalization and refined by quad-precision Taylor shooting. The Baxter function is
//   Q(gamma) = c exp(pi gamma / hbar) psi_hat(gamma),  psi_hat(gamma) = int exp(-i gamma r / hbar) psi(r) dr,
// with c = 1 for even and c = i for odd states, so that Q is real on the real axis and
//   Q(gamma + i hbar) + Q(gamma - i hbar) = (gamma^2 - E) Q(gamma).
// Normalization: Q(0) = 1 (even), Q'(0) = 1 (odd).

#include <complex>
#include <functional>
#include <memory>
#include <vector>

#include "toda/poly.hpp"

namespace toda {

namespace detail {
struct Wavefunction;
struct LineCache;
}  // namespace detail

/// Candidate dictionaries between psi_hat and the Baxter variable.
enum class QGauge {
  Plain,        // Q(gamma) = c psi_hat(gamma)
  Rotated,      // Q(gamma) = c psi_hat(i gamma)
  Exponential,  // Q(gamma) = c exp(pi gamma / hbar) psi_hat(gamma)
};

struct EigenPair {
  double hbar = 1.0;
  int level = 0;
  double E = 0.0;
  double E_seed = 0.0;  // discretization estimate that bracketed the shooting root
  RealPoly t;           // lambda^2 + t2
  int parity = 1;
  int t2_sign = -1;     // t2 = t2_sign * E
  QGauge gauge = QGauge::Exponential;
  double residual = 0.0;
  std::shared_ptr<const detail::Wavefunction> wave;
};

/// First `levels` eigenpairs, each with its t fixed by eigen_to_t.
/// Throws ResolutionFailure if the two discretizations disagree beyond 1e-8 or a shooting
/// bracket cannot be formed, SignAmbiguity from the t selection.
std::vector<EigenPair> solve_relative_spectrum(double hbar, int levels);

/// Lowest eigenvalues of the sinc-DVR Hamiltonian on the grid r_k = k dr, |r_k| <= R.
std::vector<double> dvr_energies(double hbar, double R, double dr, int levels);

/// value = mantissa * exp(log_scale); |mantissa| = 1 unless the value is 0.
struct ScaledComplex {
  std::complex<double> mantissa{0.0, 0.0};
  double log_scale = 0.0;
  std::complex<double> value() const;
};

class QFunction {
 public:
  QFunction(const EigenPair& pair, QGauge gauge);
  explicit QFunction(const EigenPair& pair) : QFunction(pair, pair.gauge) {}

  const EigenPair& pair() const { return pair_; }
  double hbar() const { return pair_.hbar; }
  int parity() const { return pair_.parity; }
  QGauge gauge() const { return gauge_; }

  /// Largest |Im gamma| accepted.
  double im_cap() const;
  /// Largest |Re gamma| evaluated on the real contour; beyond it the contour
  /// Im r = -(pi - delta) is used.
  double re_cap() const;

  /// Throws std::domain_error outside |Im gamma| <= im_cap or |Re gamma| <= 1280 hbar.
  std::complex<double> operator()(std::complex<double> gamma) const;
  ScaledComplex scaled(std::complex<double> gamma) const;

  /// c psi_hat(gamma), without the gauge factor.
  ScaledComplex momentum(std::complex<double> gamma) const;

  double dr() const;
  /// psi(i dr), i = 0..M, normalized as above.
  std::vector<double> psi_samples() const;

 private:
  EigenPair pair_;
  QGauge gauge_;
  std::shared_ptr<detail::LineCache> lines_;
};

using QEvaluator = std::function<std::complex<double>(std::complex<double>)>;

struct ResidualGrid {
  double re_max = 5.0;
  double im_max_over_hbar = 2.0;
  int re_points = 41;
  int im_points = 5;
};

/// max |Q(g + i hbar) + Q(g - i hbar) - t(g) Q(g)| / max |Q| over the grid.
double baxter_residual(const QEvaluator& q, const RealPoly& t, double hbar, const ResidualGrid& grid = {});
double baxter_residual(const QFunction& q, const ResidualGrid& grid = {});

struct TSelection {
  RealPoly t;
  int sign = -1;
  QGauge gauge = QGauge::Exponential;
  double residual = 0.0;
  std::vector<double> candidates;  // (Plain, Rotated, Exponential) x (+E, -E)
};

/// Picks the (gauge, sign) candidate with vanishing Baxter residual.
/// Throws SignAmbiguity if none or more than one candidate is below tol.
TSelection eigen_to_t(const EigenPair& pair, double tol = 1e-6);

/// QFunction in the selected gauge; throws ResolutionFailure if the residual exceeds tol.
QFunction build_q(const EigenPair& pair, double tol = 1e-6);

struct AsymptoticsReport {
  double lambda0 = 0.0;          // the window is [lambda0, 2 lambda0]
  int zeros_counted = 0;
  double zeros_predicted = 0.0;  // from the phase (2/hbar) lambda log(lambda/e)
  double slope_minus = 0.0;      // envelope d log|Q| / d lambda on [-2 lambda0, -lambda0]
  double slope_expected = 0.0;   // 2 pi / hbar
  double slope_plus = 0.0;       // same on [lambda0, 2 lambda0]
  bool zeros_ok = false;
  bool growth_ok = false;
  bool bounded_ok = false;
};

/// lambda0 <= 0 means 10 hbar (level + 5).
AsymptoticsReport asymptotics_check(const QFunction& q, double lambda0 = 0.0);

/// J_1 for t = lambda^2 + t2, t2 < -2.
double bs_action(double t2);

/// t2 with J_1(t2) = pi hbar (2 nj + 1). Throws BracketFailure.
double bs_quantize(double hbar, int nj);

/// A_11 of the curve lambda^2 + t2 (classical frequency of the relative motion).
double classical_frequency(double t2);

}  // namespace toda
