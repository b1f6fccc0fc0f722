#pragma once

// Classical periodic Toda chain: L-operators, monodromy, conserved polynomial,
// separated coordinates and reality conditions.

#include <array>
#include <cmath>
#include <vector>

#include "toda/poly.hpp"

namespace toda {

struct PhasePoint {
  std::vector<double> p;
  std::vector<double> q;

  int n() const { return static_cast<int>(p.size()); }
  /// Throws std::invalid_argument unless n >= 2, sizes match and entries are finite.
  void validate() const;
};

/// H = sum p^2/2 + sum exp(q_{j+1} - q_j), periodic.
double hamiltonian(const PhasePoint& x);

/// Entries of M(lambda) = L_n ... L_1 as dense coefficient arrays of length n + 1
/// (index = power of lambda), computed without trimming so that any scalar type
/// supporting +, -, * and exp (found by ADL) works.
template <class S>
std::array<std::vector<S>, 4> monodromy_coeffs(const std::vector<S>& p, const std::vector<S>& q) {
  using std::exp;
  const std::size_t n = p.size();
  std::vector<S> a(n + 1, S(0)), b(n + 1, S(0)), c(n + 1, S(0)), d(n + 1, S(0));
  a[0] = S(1);
  d[0] = S(1);
  for (std::size_t j = 0; j < n; ++j) {
    // [[lambda - p, e], [-1/e, 0]] * [[a, b], [c, d]]
    const S e = exp(q[j]);
    const S ei = exp(-q[j]);
    std::vector<S> na(n + 1, S(0)), nb(n + 1, S(0)), nc(n + 1, S(0)), nd(n + 1, S(0));
    for (std::size_t k = 0; k <= n; ++k) {
      na[k] = -p[j] * a[k] + e * c[k];
      nb[k] = -p[j] * b[k] + e * d[k];
      if (k > 0) {
        na[k] = na[k] + a[k - 1];
        nb[k] = nb[k] + b[k - 1];
      }
      nc[k] = -(ei * a[k]);
      nd[k] = -(ei * b[k]);
    }
    a.swap(na);
    b.swap(nb);
    c.swap(nc);
    d.swap(nd);
  }
  return {a, b, c, d};
}

/// Coefficients of T(lambda) = A + D, index = power.
template <class S>
std::vector<S> trace_coeffs(const std::vector<S>& p, const std::vector<S>& q) {
  auto m = monodromy_coeffs(p, q);
  std::vector<S> t(m[0].size(), S(0));
  for (std::size_t k = 0; k < t.size(); ++k) t[k] = m[0][k] + m[3][k];
  return t;
}

struct MonodromyData {
  RealPoly A, B, C, D;
  int n = 0;
  /// Leading coefficient of B (equals exp(q_1) for M = L_n ... L_1).
  double b = 0.0;
  /// Coefficients of det M(lambda), index = power (so det_coeffs[0] is the constant term).
  std::vector<double> det_coeffs;
};

MonodromyData build_monodromy(const PhasePoint& x);

/// max_k |det_coeffs[k] - delta_{k0}| relative to the coefficient scale of A*D and B*C.
double det_residual(const MonodromyData& m);

/// t(lambda) = A + D.
RealPoly conserved_poly(const MonodromyData& m);

struct SovCoords {
  double b = 0.0;
  std::vector<double> gamma;   // zeros of B, ascending
  std::vector<double> Lambda;  // D(gamma_j)
  double a1 = 0.0;             // coefficient of lambda^{n-1} in A (= -sum p)
  double max_inverse_residual = 0.0;  // max_j |A(gamma_j) Lambda_j - 1|
};

/// Throws NonRealRoot if a zero of B leaves the real axis beyond tol.
SovCoords sov_coords(const MonodromyData& m, double tol = 1e-10);

struct RealityReport {
  bool zeros_real = false;
  bool maxima_ok = false;    // every local maximum of t is >= 2
  bool minima_ok = false;    // every local minimum of t is <= -2
  bool branch_real_simple = false;
  bool degenerate = false;   // some branch points coincide within tol
  std::vector<double> critical_points;
  std::vector<double> branch;  // zeros of t^2 - 4, ascending (when real)

  bool pass() const { return zeros_real && maxima_ok && minima_ok && branch_real_simple; }
};

RealityReport reality_check(const RealPoly& t, double tol = 1e-10);

}  // namespace toda
