#include "toda/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <boost/math/quadrature/tanh_sinh.hpp>
#include <unsupported/Eigen/FFT>

#include "toda/errors.hpp"
#include "toda/lax.hpp"

namespace toda {

namespace {
constexpr double kPi = std::numbers::pi;
}

double SpectralData::minus_r(int j, double x) const {
  const std::size_t skip_lo = static_cast<std::size_t>(2 * j - 1);
  double r = P.leading();
  for (std::size_t i = 0; i < branch.size(); ++i)
    if (i != skip_lo && i != skip_lo + 1) r *= (x - branch[i]);
  return -r;
}

SpectralData build_spectral(const RealPoly& t, bool allow_degenerate, double tol) {
  if (t.degree() < 2) throw std::invalid_argument("spectral curve needs deg t >= 2");
  const RealityReport rep = reality_check(t, tol);
  if (!rep.zeros_real || !rep.maxima_ok || !rep.minima_ok)
    throw std::invalid_argument("t violates the reality conditions");
  if (rep.degenerate && !allow_degenerate) throw DegenerateCurve("branch points coincide");
  SpectralData s;
  s.t = t;
  s.P = t * t - RealPoly::constant(4.0);
  s.branch = rep.branch;
  s.n = t.degree();
  s.genus = s.n - 1;
  s.degenerate = rep.degenerate;
  return s;
}

CycleGrid make_cycle_grid(const SpectralData& s, int j, int points) {
  if (j < 1 || j > s.genus) throw std::out_of_range("cycle index");
  if (s.degenerate) throw DegenerateCurve("cycle integrals need a non-degenerate curve");
  CycleGrid g;
  g.cycle = j;
  const double a = s.zone_lo(j), b = s.zone_hi(j);
  g.c = 0.5 * (a + b);
  g.h = 0.5 * (b - a);
  const auto n = static_cast<std::size_t>(points);
  g.phi.resize(n);
  g.x.resize(n);
  g.weight.resize(n);
  g.sqrt_p.resize(n);
  const double dphi = 2.0 * kPi / points;
  for (std::size_t i = 0; i < n; ++i) {
    const double phi = dphi * static_cast<double>(i);
    const double x = g.c - g.h * std::cos(phi);
    const double mr = s.minus_r(j, x);
    const double root = std::sqrt(mr);
    g.phi[i] = phi;
    g.x[i] = x;
    g.weight[i] = dphi / root;
    g.sqrt_p[i] = g.h * std::sin(phi) * root;
  }
  return g;
}

int choose_cycle_points(const SpectralData& s, int max_power, double rel_tol, int min_points, int max_points) {
  auto sums = [&](int pts) {
    std::vector<double> out;
    for (int j = 1; j <= s.genus; ++j) {
      const CycleGrid g = make_cycle_grid(s, j, pts);
      for (int m = 0; m <= max_power; ++m) {
        double acc = 0.0, scale = 0.0;
        for (std::size_t i = 0; i < g.x.size(); ++i) {
          const double v = g.weight[i] * std::pow(g.x[i], m);
          acc += v;
          scale += std::abs(v);
        }
        out.push_back(acc);
        out.push_back(scale);
      }
    }
    return out;
  };
  int pts = min_points;
  std::vector<double> prev = sums(pts);
  while (pts < max_points) {
    const std::vector<double> next = sums(2 * pts);
    bool ok = true;
    for (std::size_t i = 0; i < prev.size(); i += 2)
      if (std::abs(next[i] - prev[i]) > rel_tol * next[i + 1]) ok = false;
    if (ok) return pts;
    pts *= 2;
    prev = next;
  }
  throw QuadratureFailure("a-cycle trapezoid rule did not converge");
}

PeriodData period_matrix(const SpectralData& s, int points) {
  PeriodData pd;
  pd.genus = s.genus;
  pd.points = points > 0 ? points : choose_cycle_points(s, 2 * s.n + 4);
  for (int j = 1; j <= s.genus; ++j) pd.grids.push_back(make_cycle_grid(s, j, pd.points));
  const int g = s.genus;
  pd.raw.resize(g, g);
  for (int j = 0; j < g; ++j) {
    const CycleGrid& cg = pd.grids[static_cast<std::size_t>(j)];
    for (int l = 0; l < g; ++l) {
      double acc = 0.0;
      for (std::size_t i = 0; i < cg.x.size(); ++i) acc += cg.weight[i] * std::pow(cg.x[i], l);
      pd.raw(l, j) = acc;
    }
  }
  pd.A = 2.0 * kPi * pd.raw.inverse();
  return pd;
}

RealPoly omega_numerator(const PeriodData& pd, const std::vector<int>& k) {
  if (static_cast<int>(k.size()) != pd.genus) throw std::invalid_argument("k-vector length must equal genus");
  std::vector<double> c(static_cast<std::size_t>(pd.genus), 0.0);
  for (int j = 0; j < pd.genus; ++j)
    for (int m = 0; m < pd.genus; ++m) c[static_cast<std::size_t>(m)] += k[static_cast<std::size_t>(j)] * pd.A(j, m);
  return RealPoly(c);
}

Poly s_tk(const PeriodData& pd, const std::vector<int>& k) {
  return to_complex(omega_numerator(pd, k)) * std::complex<double>(0.0, 1.0);
}

CyclePhase::CyclePhase(const CycleGrid& g, const RealPoly& numerator) {
  const std::size_t n = g.x.size();
  const double dphi = 2.0 * kPi / static_cast<double>(n);
  std::vector<double> samples(n);
  for (std::size_t i = 0; i < n; ++i) samples[i] = numerator(g.x[i]) * g.weight[i] / dphi;
  Eigen::FFT<double> fft;
  std::vector<std::complex<double>> spec;
  fft.fwd(spec, samples);
  mean_ = spec[0].real() / static_cast<double>(n);
  coef_.assign(n / 2, {0.0, 0.0});
  std::vector<std::complex<double>> anti(n, {0.0, 0.0});
  for (std::size_t m = 1; m < n / 2; ++m) {
    const std::complex<double> c = spec[m] / (static_cast<double>(n) * std::complex<double>(0.0, static_cast<double>(m)));
    coef_[m] = c;
    anti[m] = c * static_cast<double>(n);
    anti[n - m] = std::conj(c) * static_cast<double>(n);
  }
  std::vector<std::complex<double>> periodic;
  fft.inv(periodic, anti);
  offset_ = raw(0.5 * kPi);
  nodes_.resize(n);
  for (std::size_t i = 0; i < n; ++i) nodes_[i] = mean_ * g.phi[i] + periodic[i].real() - offset_;
}

double CyclePhase::raw(double phi) const {
  double v = mean_ * phi;
  for (std::size_t m = 1; m < coef_.size(); ++m)
    v += 2.0 * (coef_[m] * std::exp(std::complex<double>(0.0, static_cast<double>(m) * phi))).real();
  return v;
}

double CyclePhase::operator()(double phi) const { return raw(phi) - offset_; }

double cycle_angle(const CycleGrid& g, double gamma, int sheet) {
  const double u = std::clamp((g.c - gamma) / g.h, -1.0, 1.0);
  const double phi = std::acos(u);
  return sheet >= 0 ? phi : 2.0 * kPi - phi;
}

std::complex<double> cycle_integral(const PeriodData& pd, int m, int j, const std::vector<int>& k) {
  if (j < 1 || j > pd.genus) throw std::out_of_range("cycle index");
  const CycleGrid& g = pd.grids[static_cast<std::size_t>(j - 1)];
  std::complex<double> acc = 0.0;
  if (k.empty()) {
    for (std::size_t i = 0; i < g.x.size(); ++i) acc += g.weight[i] * std::pow(g.x[i], m);
    return acc;
  }
  const CyclePhase ph(g, omega_numerator(pd, k));
  for (std::size_t i = 0; i < g.x.size(); ++i)
    acc += g.weight[i] * std::pow(g.x[i], m) * std::polar(1.0, ph.values()[i]);
  return acc;
}

double cycle_integral_tanh_sinh(const SpectralData& s, int m, int j) {
  const double a = s.zone_lo(j), b = s.zone_hi(j);
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  // x = c + h u; sqrt(P) = h sqrt((1+u)(1-u)) sqrt(-R); the complement argument keeps
  // (1 -/+ u) accurate next to the endpoints.
  auto f = [&](double u, double uc) {
    double left, right;
    if (u < 0) {
      left = -uc;
      right = 2.0 - left;
    } else {
      right = uc;
      left = 2.0 - right;
    }
    const double x = c + h * u;
    return std::pow(x, m) / std::sqrt(left * right * s.minus_r(j, x));
  };
  boost::math::quadrature::tanh_sinh<double> ts(15);
  return 2.0 * ts.integrate(f, 1e-15);
}

double partial_action(const SpectralData& s, int j, double x) {
  const double a = s.zone_lo(j);
  if (x <= a) return 0.0;
  auto f = [&](double y) { return std::acosh(std::max(1.0, std::abs(s.t(y)) / 2.0)); };
  boost::math::quadrature::tanh_sinh<double> ts(15);
  return ts.integrate(f, a, x, 1e-15);
}

double classical_action(const SpectralData& s, int j) { return 2.0 * partial_action(s, j, s.zone_hi(j)); }

std::vector<double> classical_actions(const SpectralData& s) {
  std::vector<double> out;
  for (int j = 1; j <= s.genus; ++j) out.push_back(classical_action(s, j));
  return out;
}

}  // namespace toda
