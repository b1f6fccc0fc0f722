#include "toda/lax.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "toda/errors.hpp"
#include "toda/roots.hpp"

namespace toda {

void PhasePoint::validate() const {
  if (p.size() != q.size()) throw std::invalid_argument("phase point: p and q differ in length");
  if (p.size() < 2) throw std::invalid_argument("phase point: need n >= 2 sites");
  for (std::size_t j = 0; j < p.size(); ++j)
    if (!std::isfinite(p[j]) || !std::isfinite(q[j]))
      throw std::invalid_argument("phase point: non-finite entry");
}

double hamiltonian(const PhasePoint& x) {
  const std::size_t n = x.p.size();
  double h = 0.0;
  for (std::size_t j = 0; j < n; ++j) {
    h += 0.5 * x.p[j] * x.p[j];
    h += std::exp(x.q[(j + 1) % n] - x.q[j]);
  }
  return h;
}

MonodromyData build_monodromy(const PhasePoint& x) {
  x.validate();
  const auto m = monodromy_coeffs(x.p, x.q);
  MonodromyData out;
  out.n = x.n();
  out.A = RealPoly(m[0]);
  out.B = RealPoly(m[1]);
  out.C = RealPoly(m[2]);
  out.D = RealPoly(m[3]);
  out.b = out.B.leading();
  const RealPoly det = out.A * out.D - out.B * out.C;
  out.det_coeffs.assign(static_cast<std::size_t>(2 * out.n - 1), 0.0);
  for (std::size_t k = 0; k < out.det_coeffs.size(); ++k) out.det_coeffs[k] = det.coeff(static_cast<int>(k));
  return out;
}

double det_residual(const MonodromyData& m) {
  // scale: sum of |coefficients| of the two products entering the determinant
  double scale = 1.0;
  auto absum = [](const RealPoly& p) {
    double s = 0.0;
    for (double v : p.coeffs()) s += std::abs(v);
    return s;
  };
  scale = std::max(scale, absum(m.A) * absum(m.D) + absum(m.B) * absum(m.C));
  double worst = 0.0;
  for (std::size_t k = 0; k < m.det_coeffs.size(); ++k)
    worst = std::max(worst, std::abs(m.det_coeffs[k] - (k == 0 ? 1.0 : 0.0)));
  return worst / scale;
}

RealPoly conserved_poly(const MonodromyData& m) { return m.A + m.D; }

SovCoords sov_coords(const MonodromyData& m, double tol) {
  SovCoords s;
  s.b = m.b;
  s.a1 = m.A.coeff(m.n - 1);
  s.gamma = real_roots(m.B, tol);
  for (double g : s.gamma) {
    const double lam = m.D(g);
    s.Lambda.push_back(lam);
    s.max_inverse_residual = std::max(s.max_inverse_residual, std::abs(m.A(g) * lam - 1.0));
  }
  return s;
}

namespace {

int tol_sign(double v, double tol) { return std::abs(v) <= tol ? 0 : (v < 0 ? -1 : 1); }

}  // namespace

RealityReport reality_check(const RealPoly& t, double tol) {
  RealityReport r;
  const int n = t.degree();
  if (n < 1) return r;
  const double lead = t.leading();
  double bound = 0.0;
  for (int k = 0; k < n; ++k) bound = std::max(bound, std::abs(t.coeff(k) / lead));
  bound = 1.0 + bound + 4.0 / std::abs(lead) + 1.0;

  bool crit_real = true;
  const RealPoly dt = t.derivative();
  for (const auto& z : polynomial_roots(dt)) {
    if (std::abs(z.imag()) > 1e-7 * std::max(1.0, std::abs(z)))
      crit_real = false;
    else
      r.critical_points.push_back(z.real());
  }
  std::sort(r.critical_points.begin(), r.critical_points.end());

  // breakpoints split the line into intervals on which t is monotone
  std::vector<double> brk{-bound};
  if (crit_real) brk.insert(brk.end(), r.critical_points.begin(), r.critical_points.end());
  brk.push_back(bound);

  auto roots_at_level = [&](double level, bool& tangent) {
    std::vector<double> out;
    auto g = [&](double x) { return t(x) - level; };
    const double ltol = tol * std::max(1.0, std::abs(level));
    for (std::size_t i = 0; i + 1 < brk.size(); ++i) {
      const int su = tol_sign(g(brk[i]), ltol), sv = tol_sign(g(brk[i + 1]), ltol);
      if (su * sv < 0) out.push_back(bracketed_root(g, brk[i], brk[i + 1]));
    }
    if (crit_real)
      for (double c : r.critical_points)
        if (tol_sign(g(c), ltol) == 0) {
          out.push_back(c);
          out.push_back(c);
          tangent = true;
        }
    std::sort(out.begin(), out.end());
    return out;
  };

  bool tangent0 = false;
  r.zeros_real = crit_real && static_cast<int>(roots_at_level(0.0, tangent0).size()) == n;
  if (!crit_real) {
    // t' has complex zeros, so t is not real-rooted
    r.zeros_real = false;
  }

  r.maxima_ok = crit_real;
  r.minima_ok = crit_real;
  if (crit_real) {
    // for monic t the rightmost critical point is a minimum; kinds alternate leftwards
    const double sgn = lead > 0 ? 1.0 : -1.0;
    const int nc = static_cast<int>(r.critical_points.size());
    for (int i = 0; i < nc; ++i) {
      const bool is_min = ((nc - 1 - i) % 2 == 0) == (sgn > 0);
      const double v = t(r.critical_points[static_cast<std::size_t>(i)]);
      if (is_min && v > -2.0 + tol) r.minima_ok = false;
      if (!is_min && v < 2.0 - tol) r.maxima_ok = false;
    }
  }

  if (crit_real) {
    bool tp = false, tm = false;
    auto up = roots_at_level(2.0, tp);
    auto dn = roots_at_level(-2.0, tm);
    r.branch = up;
    r.branch.insert(r.branch.end(), dn.begin(), dn.end());
    std::sort(r.branch.begin(), r.branch.end());
    r.degenerate = tp || tm;
    for (std::size_t i = 0; i + 1 < r.branch.size(); ++i)
      if (r.branch[i + 1] - r.branch[i] <= tol * std::max(1.0, std::abs(r.branch[i]))) r.degenerate = true;
    r.branch_real_simple = static_cast<int>(r.branch.size()) == 2 * n && !r.degenerate;
  }
  return r;
}

}  // namespace toda
