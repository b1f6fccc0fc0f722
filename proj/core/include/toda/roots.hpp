#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "toda/poly.hpp"

namespace toda {

/// All complex roots of a real polynomial: companion-matrix eigenvalues,
/// each refined by one Newton step.
std::vector<std::complex<double>> polynomial_roots(const RealPoly& p);

/// Real roots, sorted. Throws NonRealRoot when some root has |Im| > tol * max(1, |root|).
std::vector<double> real_roots(const RealPoly& p, double tol = 1e-10);

/// Root of f bracketed by [a, b] (TOMS 748). Throws BracketFailure when f(a), f(b) share a sign.
double bracketed_root(const std::function<double(double)>& f, double a, double b,
                      int max_iter = 200);

}  // namespace toda
