#include "toda/roots.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>
#include <boost/math/tools/roots.hpp>

#include "toda/errors.hpp"

namespace toda {

std::vector<std::complex<double>> polynomial_roots(const RealPoly& p) {
  const int n = p.degree();
  if (n < 1) return {};
  const double lead = p.leading();
  Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) comp(i, i - 1) = 1.0;
  for (int i = 0; i < n; ++i) comp(i, n - 1) = -p.coeff(i) / lead;
  Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
  const RealPoly dp = p.derivative();
  std::vector<std::complex<double>> roots;
  roots.reserve(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    std::complex<double> z = es.eigenvalues()[i];
    const std::complex<double> d = dp(z);
    if (std::abs(d) > 0.0) z -= p(z) / d;
    roots.push_back(z);
  }
  return roots;
}

std::vector<double> real_roots(const RealPoly& p, double tol) {
  std::vector<double> out;
  for (const auto& z : polynomial_roots(p)) {
    if (std::abs(z.imag()) > tol * std::max(1.0, std::abs(z)))
      throw NonRealRoot("polynomial root leaves the real axis");
    out.push_back(z.real());
  }
  std::sort(out.begin(), out.end());
  return out;
}

double bracketed_root(const std::function<double(double)>& f, double a, double b, int max_iter) {
  const double fa = f(a), fb = f(b);
  if (fa == 0.0) return a;
  if (fb == 0.0) return b;
  if ((fa < 0) == (fb < 0)) throw BracketFailure("root not bracketed");
  std::uintmax_t iters = static_cast<std::uintmax_t>(max_iter);
  const auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb,
                                                   boost::math::tools::eps_tolerance<double>(), iters);
  return 0.5 * (r.first + r.second);
}

}  // namespace toda
