#pragma once

// Spectral curve mu^2 = P(lambda) = t^2 - 4, a-cycle quadrature, periods,
// normalized holomorphic differentials, Abel phases and classical actions.
//
// Each a-cycle a_j encircles the forbidden zone I_j = [lambda_{2j}, lambda_{2j+1}].
// It is parametrised by x = c - h cos(phi), phi in [0, 2pi), so that
// dx / sqrt(P) = dphi / sqrt(-R(x)) with R = P / ((x - a)(x - b)) < 0 inside the zone.
// The integrand is then smooth and 2pi-periodic and the trapezoid rule converges
// spectrally. The sheet of sqrt(P) is sign(sin(phi)).

#include <complex>
#include <functional>
#include <vector>

#include <Eigen/Dense>

#include "toda/poly.hpp"

namespace toda {

struct SpectralData {
  RealPoly t;
  RealPoly P;
  std::vector<double> branch;  // lambda_1 < ... < lambda_{2n}
  int n = 0;
  int genus = 0;
  bool degenerate = false;

  /// Zone I_j, j = 1..genus.
  double zone_lo(int j) const { return branch[static_cast<std::size_t>(2 * j - 1)]; }
  double zone_hi(int j) const { return branch[static_cast<std::size_t>(2 * j)]; }
  /// -R(x) = -P(x) / ((x - a)(x - b)) for zone j, evaluated stably from the branch points.
  double minus_r(int j, double x) const;
};

/// Throws DegenerateCurve when branch points coincide (unless allowed) and
/// std::invalid_argument when t fails the reality conditions.
SpectralData build_spectral(const RealPoly& t, bool allow_degenerate = false, double tol = 1e-10);

/// Trapezoid nodes on one a-cycle.
struct CycleGrid {
  int cycle = 0;  // 1-based
  double c = 0.0, h = 0.0;
  std::vector<double> phi;
  std::vector<double> x;
  std::vector<double> weight;  // (2pi / N) / sqrt(-R(x)): integral of f dx/sqrt(P) = sum weight * f
  std::vector<double> sqrt_p;  // signed sqrt(P) on the cycle
};

CycleGrid make_cycle_grid(const SpectralData& s, int j, int points);

/// Smallest power-of-two node count (>= min_points) for which every monomial period
/// x^m, m <= max_power, changes by less than rel_tol on doubling.
/// Throws QuadratureFailure beyond max_points.
int choose_cycle_points(const SpectralData& s, int max_power, double rel_tol = 1e-14,
                        int min_points = 64, int max_points = 1 << 16);

struct PeriodData {
  int genus = 0;
  int points = 0;        // nodes per cycle used for all cycle sums
  Eigen::MatrixXd raw;   // raw(l - 1, j - 1) = integral over a_j of gamma^{l-1} / sqrt(P)
  Eigen::MatrixXd A;     // 2 pi raw^{-1}
  std::vector<CycleGrid> grids;  // one per cycle, index j - 1
};

PeriodData period_matrix(const SpectralData& s, int points = 0);

/// Numerator polynomial of sum_j k_j omega_j (real coefficients).
RealPoly omega_numerator(const PeriodData& pd, const std::vector<int>& k);

/// S_{t,k}(gamma) defined by i sum_j k_j omega_j = S_{t,k} dgamma / sqrt(P).
Poly s_tk(const PeriodData& pd, const std::vector<int>& k);

/// Phi_k on one cycle, continuous in phi, zero at the zone midpoint on the upper sheet
/// (phi = pi/2). Built from the exact antiderivative of the trigonometric interpolant.
class CyclePhase {
 public:
  CyclePhase(const CycleGrid& g, const RealPoly& numerator);
  /// Value at the grid nodes.
  const std::vector<double>& values() const { return nodes_; }
  /// Value at arbitrary phi (any real; winds by 2 pi * mean per turn).
  double operator()(double phi) const;
  double winding() const { return mean_ * 2.0 * 3.14159265358979323846; }

 private:
  double raw(double phi) const;
  double mean_ = 0.0;
  double offset_ = 0.0;
  std::vector<std::complex<double>> coef_;  // periodic part, modes 1..N/2-1
  std::vector<double> nodes_;
};

/// phi of a point gamma in zone j on the given sheet (+1 upper, -1 lower).
double cycle_angle(const CycleGrid& g, double gamma, int sheet);

/// integral over a_j of gamma^m exp(i Phi_k) / sqrt(P). k empty means no phase.
std::complex<double> cycle_integral(const PeriodData& pd, int m, int j, const std::vector<int>& k = {});

/// Same integral by tanh-sinh quadrature on the zone (no phase). Oracle for cross-checks.
double cycle_integral_tanh_sinh(const SpectralData& s, int m, int j);

/// J_j = integral over a_j of log Lambda = 2 * integral over I_j of arccosh(|t|/2).
std::vector<double> classical_actions(const SpectralData& s);
double classical_action(const SpectralData& s, int j);

/// integral from lambda_{2j} to x of arccosh(|t|/2), for x inside zone j.
double partial_action(const SpectralData& s, int j, double x);

}  // namespace toda
