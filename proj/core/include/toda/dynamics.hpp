#pragma once

// Hamiltonian flows of the conserved quantities t_1..t_n, and the checks built on
// them: SoV equations of motion, Abel linearization, Fourier coefficients on the
// Liouville torus, and the multi-time PDE residuals.

#include <complex>
#include <functional>
#include <vector>

#include "toda/lax.hpp"
#include "toda/poly.hpp"
#include "toda/spectral.hpp"

namespace toda {

/// Values and exact gradients of t_1..t_n at a phase point.
/// grad[k][i] = d t_{k+1} / d q_i for i < n, d t_{k+1} / d p_{i-n} for i >= n.
struct TraceGradient {
  std::vector<double> t;
  std::vector<std::vector<double>> grad;
};
TraceGradient trace_gradient(const PhasePoint& x);

/// d(q, p)/dtau for the combined flow sum_l weights[l] * {t_{l+1}, .}, l = 0..n-1,
/// with {f, g} = sum_i (df/dp_i dg/dq_i - df/dq_i dg/dp_i), the sign for which
/// {T(lambda), gamma_j} = +sqrt(P(gamma_j)) prod_{k != j} (lambda - gamma_k)/(gamma_j - gamma_k).
std::vector<double> flow_vector_field(const PhasePoint& x, const std::vector<double>& weights);

struct FlowTolerance {
  double abs = 1e-11;
  double rel = 1e-11;
};

/// Flow of the combined field for unit time (weights carry the durations).
/// Throws StepFailure if the adaptive integrator cannot meet the tolerance.
PhasePoint evolve(const PhasePoint& x0, const std::vector<double>& weights, FlowTolerance tol = {});

/// Flow l (generated by t_{l+1}) for time tau.
PhasePoint evolve_flow(const PhasePoint& x0, int l, double tau, FlowTolerance tol = {});

struct Trajectory {
  int flow = 1;
  std::vector<double> tau;
  std::vector<PhasePoint> points;
  std::vector<SovCoords> sov;
  std::vector<RealPoly> t;
};

/// Samples at samples+1 equally spaced times in [0, duration].
Trajectory hamiltonian_flow(const PhasePoint& x0, int l, double duration, int samples,
                            FlowTolerance tol = {});

/// max_k max_samples |t_k(tau) - t_k(0)|
double conservation_error(const Trajectory& traj);

/// Signed sqrt(P(gamma_j)) = D(gamma_j) - A(gamma_j).
std::vector<double> signed_sqrt_p(const MonodromyData& m, const SovCoords& s);

/// Right-hand side of the SoV equations of motion for flow l:
/// d gamma_j / d tau_l = [lambda^{n-1-l}] sqrt(P(gamma_j)) prod_{k != j} (lambda - gamma_k)/(gamma_j - gamma_k).
std::vector<double> em_rhs(const MonodromyData& m, const SovCoords& s, int l);

struct EmReport {
  double residual_coarse = 0.0;  // at step delta
  double residual_fine = 0.0;    // at step delta / 2
  double order = 0.0;            // log2(coarse / fine)
  double max_rate = 0.0;         // scale of d gamma / d tau
};

/// Centered finite-difference d gamma/d tau at every trajectory sample versus em_rhs,
/// relative to the largest |d gamma/d tau|.
EmReport em_residual(const Trajectory& traj, double delta = 4e-3, FlowTolerance tol = {1e-13, 1e-13});

/// theta_j at a phase point: Abel sum over cycles with base points at zone midpoints.
std::vector<double> abel_angles(const SpectralData& s, const PeriodData& pd, const PhasePoint& x);

struct AbelReport {
  double drift = 0.0;        // max |theta_j(tau) - theta_j(0) - A_{j,n-l} tau| modulo 2 pi
  double slope_error = 0.0;  // max |d theta_j/d tau - A_{j,n-l}| from differences between samples
};
AbelReport abel_linearization(const Trajectory& traj, const SpectralData& s, const PeriodData& pd);

/// Symmetric observable as a function of gamma_1..gamma_g.
using SymmetricFunction = std::function<std::complex<double>(const std::vector<double>&)>;

/// Normalized multi-cycle integral of prod_{i<j}(gamma_i - gamma_j) F prod_j exp(i Phi_k(gamma_j)) / sqrt(P(gamma_j)),
/// divided by its value at F = 1, k = 0.
std::complex<double> fourier_coefficient(const SpectralData& s, const PeriodData& pd, const SymmetricFunction& f,
                                         const std::vector<int>& k);

/// Average of f over an M^g grid on the Liouville torus through x0, reached by commuting flows
/// along the period lattice in tau-space.
std::complex<double> torus_average(const PhasePoint& x0, const SpectralData& s, const PeriodData& pd,
                                   const SymmetricFunction& f, int per_dim, FlowTolerance tol = {});

enum class PdeKind { EXFO, C, Q, WEI };

/// Symmetric function of the gammas left after removing one (EXFO, Q) or two (C) of them.
using SymmetricReal = std::function<double(const std::vector<double>&)>;

struct PdeInput {
  PdeKind kind = PdeKind::WEI;
  RealPoly L;      // EXFO
  int p = 0;       // WEI: L = gamma^p with n = 2
  SymmetricReal G; // EXFO, Q, C; empty means G = 1
};

struct PdeResidualReport {
  PdeKind kind = PdeKind::WEI;
  double residual = 0.0;       // at the finer step
  double residual_coarse = 0.0;
  double step = 0.0;           // finer step
  double order = 0.0;          // log2(coarse / fine)
};

/// Residual of the multi-time PDE at the given base points, from centered 3x3 stencils of commuting flows.
PdeResidualReport pde_residual(const std::vector<PhasePoint>& base, const PdeInput& in, double step = 0.01,
                               FlowTolerance tol = {1e-13, 1e-13});

}  // namespace toda
