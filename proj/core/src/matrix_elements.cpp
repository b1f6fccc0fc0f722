#include "toda/matrix_elements.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>
#include <boost/math/quadrature/gauss.hpp>

#include "toda/difference.hpp"
#include "toda/dynamics.hpp"
#include "toda/errors.hpp"
#include "toda/roots.hpp"
#include "toda/spectral.hpp"

namespace toda {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kWindowExponent = 50.0;
constexpr double kWideFactor = 1.3;

using Gauss = boost::math::quadrature::gauss<double, 20>;

// Gauss-Legendre nodes on `panels` equal panels of [a, b].
void panel_nodes(double a, double b, int panels, std::vector<double>& x, std::vector<double>& gw) {
  x.clear();
  gw.clear();
  const auto& abs = Gauss::abscissa();
  const auto& wts = Gauss::weights();
  const double h = (b - a) / panels;
  for (int p = 0; p < panels; ++p) {
    const double c = a + h * (p + 0.5), r = 0.5 * h;
    for (std::size_t i = 0; i < abs.size(); ++i) {
      x.push_back(c - r * abs[i]);
      gw.push_back(r * wts[i]);
      if (abs[i] != 0.0) {
        x.push_back(c + r * abs[i]);
        gw.push_back(r * wts[i]);
      }
    }
  }
}

double weight_value(const QFunction& q, const QFunction& qp, double k, double g) {
  const ScaledComplex a = q.scaled(g), b = qp.scaled(g);
  const double lg = a.log_scale + b.log_scale - 2.0 * kPi * k * g / q.hbar();
  if (!std::isfinite(lg)) return 0.0;
  return (a.mantissa * b.mantissa).real() * std::exp(lg);
}

struct Moments {
  std::vector<double> m, s;
};

Moments moments(const std::vector<double>& x, const std::vector<double>& w, int degree) {
  Moments out{std::vector<double>(static_cast<std::size_t>(degree) + 1, 0.0),
              std::vector<double>(static_cast<std::size_t>(degree) + 1, 0.0)};
  for (std::size_t i = 0; i < x.size(); ++i) {
    double p = 1.0;
    for (int j = 0; j <= degree; ++j) {
      out.m[static_cast<std::size_t>(j)] += w[i] * p;
      out.s[static_cast<std::size_t>(j)] += std::abs(w[i] * p);
      p *= x[i];
    }
  }
  return out;
}

double moment_change(const Moments& a, const Moments& b) {
  double worst = 0.0;
  for (std::size_t j = 0; j < a.m.size(); ++j) {
    const double s = std::max(a.s[j], b.s[j]);
    if (s > 0) worst = std::max(worst, std::abs(a.m[j] - b.m[j]) / s);
  }
  return worst;
}

ExactPoly exact_t(const EigenPair& p) { return to_exact(p.t); }
CRational exact_hbar(double hbar) { return CRational(to_rational(hbar)); }

}  // namespace

ExactPoly quantum_exact_form(const ExactPoly& t, const ExactPoly& tp, const CRational& hbar, const ExactPoly& L) {
  const CRational ih = CRational::i() * hbar;
  const ExactPoly a = delta_inverse(L * t, hbar);
  const ExactPoly b = delta_inverse(L * tp, hbar);
  return t * a + tp * b - t * b.shifted(-ih) - tp * a.shifted(-ih) - L * t * tp + L.shifted(ih) - L.shifted(-ih);
}

ExactBiPoly quantum_bilinear(const ExactPoly& t, const ExactPoly& tp, const CRational& hbar) {
  const CRational ih = CRational::i() * hbar;
  const ExactBiPoly U = divided_difference(t), Up = divided_difference(tp);
  const ExactBiPoly dU = delta_inverse_x(U, hbar), dUp = delta_inverse_x(Up, hbar);
  const ExactBiPoly tx = ExactBiPoly::in_x(t), tpx = ExactBiPoly::in_x(tp), tpy = ExactBiPoly::in_y(tp);
  const ExactBiPoly R = tx * dU + tpx * dUp - tx * shift_x(dUp, -ih) - tpx * shift_x(dU, -ih) -
                        U * (tpx - tpy) * CRational(Rational(1, 2));
  return R - R.swapped();
}

QuantumIdentityPolys build_quantum_identity_polys(const ExactPoly& t, const ExactPoly& tp, const CRational& hbar,
                                                  const ExactPoly& L) {
  if (t.degree() < 1 || tp.degree() != t.degree() || t.leading() != CRational(1) || tp.leading() != CRational(1))
    throw std::invalid_argument("t and t' must be monic of the same degree");
  return {quantum_exact_form(t, tp, hbar, L), quantum_bilinear(t, tp, hbar), t - tp};
}

DeformedMeasure::DeformedMeasure(const QFunction& q, const QFunction& qp, int k, int n, int max_degree) {
  if (n < 2 || k < 1 || k > n - 1) throw std::invalid_argument("weight index k must lie in 1..n-1");
  if (q.hbar() != qp.hbar()) throw std::invalid_argument("Q-functions must share hbar");
  const double hbar = q.hbar();
  const double rate_l = 2.0 * kPi * (n - k) / hbar, rate_r = 2.0 * kPi * k / hbar;
  const double c0 = std::max(std::sqrt(std::abs(q.pair().E) + 2.0), std::sqrt(std::abs(qp.pair().E) + 2.0)) +
                    2.0 * hbar;

  auto build = [&](double X, int panels, std::vector<double>& x, std::vector<double>& w) {
    const double a = -c0 - X / rate_l, b = c0 + X / rate_r;
    std::vector<double> gw;
    panel_nodes(a, b, panels, x, gw);
    w.resize(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) w[i] = gw[i] * weight_value(q, qp, k, x[i]);
  };

  lo_ = -c0 - kWindowExponent / rate_l;
  hi_ = c0 + kWindowExponent / rate_r;
  int panels = std::max(8, static_cast<int>(std::ceil((hi_ - lo_) / hbar)));
  std::vector<double> x, w;
  build(kWindowExponent, panels, x, w);
  Moments prev = moments(x, w, max_degree);
  bool settled = false;
  for (int round = 0; round < 6 && !settled; ++round) {
    std::vector<double> x2, w2;
    build(kWindowExponent, 2 * panels, x2, w2);
    const Moments next = moments(x2, w2, max_degree);
    settled = moment_change(prev, next) <= 1e-12;
    panels *= 2;
    x = std::move(x2);
    w = std::move(w2);
    prev = next;
  }
  if (!settled) throw ConvergenceFailure("deformed integral did not settle under panel doubling");

  std::vector<double> xw, ww;
  const double wide = kWindowExponent * kWideFactor;
  const double width_ratio = (2.0 * c0 + wide / rate_l + wide / rate_r) / (hi_ - lo_);
  build(wide, static_cast<int>(std::ceil(panels * width_ratio)), xw, ww);
  window_change_ = moment_change(prev, moments(xw, ww, max_degree));
  if (window_change_ > 1e-8) throw ConvergenceFailure("deformed integral depends on the truncation window");
  x_ = std::move(x);
  w_ = std::move(w);
}

std::complex<double> DeformedMeasure::integrate(const Poly& F) const {
  std::complex<double> acc = 0.0;
  for (std::size_t i = 0; i < x_.size(); ++i) acc += w_[i] * F(std::complex<double>(x_[i], 0.0));
  return acc;
}

double DeformedMeasure::scale(const Poly& F) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < x_.size(); ++i) acc += std::abs(w_[i] * F(std::complex<double>(x_[i], 0.0)));
  return acc;
}

std::complex<double> DeformedMeasure::integrate2(const ComplexBiPoly& C, const DeformedMeasure& other) const {
  std::complex<double> acc = 0.0;
  for (std::size_t a = 0; a < C.nx(); ++a) {
    std::complex<double> mx = 0.0;
    for (std::size_t i = 0; i < x_.size(); ++i) mx += w_[i] * std::pow(x_[i], static_cast<int>(a));
    for (std::size_t b = 0; b < C.ny(); ++b) {
      std::complex<double> my = 0.0;
      for (std::size_t j = 0; j < other.x_.size(); ++j) my += other.w_[j] * std::pow(other.x_[j], static_cast<int>(b));
      acc += C.at(a, b) * mx * my;
    }
  }
  return acc;
}

double DeformedMeasure::scale2(const ComplexBiPoly& C, const DeformedMeasure& other) const {
  double acc = 0.0;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (w_[i] == 0.0) continue;
    const std::complex<double> xi(x_[i], 0.0);
    for (std::size_t j = 0; j < other.x_.size(); ++j)
      acc += std::abs(w_[i] * other.w_[j] * C(xi, std::complex<double>(other.x_[j], 0.0)));
  }
  return acc;
}

DeformedIntegral deformed_integral(const QFunction& q, const QFunction& qp, const Poly& F, int k, int n) {
  const DeformedMeasure m(q, qp, k, n, std::max(10, F.degree()));
  return {m.integrate(F), m.scale(F)};
}

std::complex<double> matrix_element(const QFunction& q, const QFunction& qp, const MultiPoly<std::complex<double>>& F,
                                    int n) {
  if (F.nvars() != n - 1) throw std::invalid_argument("F must have n - 1 variables");
  const auto blocks = antisym_to_schur(F);
  std::vector<DeformedMeasure> measures;
  for (int j = 1; j <= n - 1; ++j) measures.emplace_back(q, qp, n - j, n);
  std::complex<double> total = 0.0;
  for (const auto& b : blocks) {
    Eigen::MatrixXcd M(n - 1, n - 1);
    for (int i = 0; i < n - 1; ++i)
      for (int j = 0; j < n - 1; ++j)
        M(i, j) = measures[static_cast<std::size_t>(j)].integrate(b.rows[static_cast<std::size_t>(i)]);
    total += M.determinant();
  }
  return total;
}

double orthogonality(const QFunction& q, const QFunction& qp) {
  const Poly one{std::complex<double>(1.0)};
  const double a = DeformedMeasure(q, q, 1).integrate(one).real();
  const double b = DeformedMeasure(qp, qp, 1).integrate(one).real();
  return std::abs(DeformedMeasure(q, qp, 1).integrate(one)) / std::sqrt(a * b);
}

double quantum_form_residual(const QFunction& q, const QFunction& qp, const Poly& F, int k, int n) {
  return deformed_integral(q, qp, F, k, n).residual();
}

double quantum_prop_check(const QFunction& q, const QFunction& qp, const QuantumPropInput& in) {
  const ExactPoly t = exact_t(q.pair()), tp = exact_t(qp.pair());
  const CRational h = exact_hbar(q.hbar());
  switch (in.kind) {
    case QuantumProp::P1pp:
      return quantum_form_residual(q, qp, to_complex(quantum_exact_form(t, tp, h, to_exact(in.L))), in.k, in.n);
    case QuantumProp::P3pp:
      return quantum_form_residual(q, qp, to_complex(ExactPoly(t - tp)), in.k, in.n);
    case QuantumProp::P2pp: {
      const ComplexBiPoly C = to_complex(quantum_bilinear(t, tp, h));
      const DeformedMeasure mk(q, qp, in.k, in.n), ml(q, qp, in.l, in.n);
      const double s = mk.scale2(C, ml);
      return s > 0 ? std::abs(mk.integrate2(C, ml)) / s : 0.0;
    }
  }
  return 0.0;
}

double contour_shift_check(const QFunction& q, const QFunction& qp, int k, int n) {
  const DeformedMeasure m(q, qp, k, n);
  const double hbar = q.hbar();
  const std::complex<double> ih(0.0, hbar);
  std::vector<double> x, gw;
  // same window and resolution as the measure
  const int panels = static_cast<int>(m.nodes() / Gauss::abscissa().size() / 2);
  panel_nodes(m.window_lo(), m.window_hi(), std::max(panels, 1), x, gw);
  std::complex<double> up = 0.0, down = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double g = x[i];
    const double lw = -2.0 * kPi * k * g / hbar;
    const ScaledComplex a = q.scaled(g + ih), b = qp.scaled(g);
    const ScaledComplex c = q.scaled(g), d = qp.scaled(g - ih);
    const std::complex<double> u = a.mantissa * b.mantissa * std::exp(a.log_scale + b.log_scale + lw);
    const std::complex<double> v = c.mantissa * d.mantissa * std::exp(c.log_scale + d.log_scale + lw);
    up += gw[i] * u;
    down += gw[i] * v;
    scale += gw[i] * std::max(std::abs(u), std::abs(v));
  }
  return std::abs(up - down) / scale;
}

QuasiClassicalState quasiclassical_q(const RealPoly& t, double hbar, int samples) {
  QuasiClassicalState st;
  st.t = t;
  st.hbar = hbar;
  const SpectralData s = build_spectral(t);
  if (s.genus < 1) throw std::invalid_argument("quasi-classical Q needs a zone");
  st.zone_lo = s.zone_lo(1);
  st.zone_hi = s.zone_hi(1);
  st.phase = [s, hbar](double g) { return partial_action(s, 1, g) / hbar; };
  for (int i = 0; i < samples; ++i) {
    const double g = st.zone_lo + (st.zone_hi - st.zone_lo) * (i + 0.5) / samples;
    const double P = t(g) * t(g) - 4.0;
    st.grid.push_back(g);
    st.q_qc.push_back(2.0 * std::pow(P, -0.25) * std::cos(st.phase(g) - 0.25 * kPi));
  }
  const double top = st.phase(st.zone_hi);
  for (int m = 0; kPi * (m + 0.75) < top; ++m) {
    const double target = kPi * (m + 0.75);
    st.zeros.push_back(bracketed_root([&](double g) { return st.phase(g) - target; }, st.zone_lo, st.zone_hi));
  }
  return st;
}

std::vector<double> q_zeros(const QFunction& q, double lo, double hi) {
  auto f = [&](double g) { return q.momentum(g).value().real(); };
  const int samples = std::max(400, static_cast<int>(std::ceil(40.0 * (hi - lo) / q.hbar())));
  std::vector<double> out;
  double xa = lo, fa = f(lo);
  for (int i = 1; i <= samples; ++i) {
    const double xb = lo + (hi - lo) * i / samples;
    const double fb = f(xb);
    if (fa == 0.0) out.push_back(xa);
    else if (fa * fb < 0.0) out.push_back(bracketed_root(f, xa, xb));
    xa = xb;
    fa = fb;
  }
  return out;
}

ZoneZeroReport compare_zone_zeros(const QFunction& q, int samples) {
  const QuasiClassicalState st = quasiclassical_q(q.pair().t, q.hbar(), samples);
  const std::vector<double> exact = q_zeros(q, st.zone_lo, st.zone_hi);
  ZoneZeroReport rep;
  rep.exact_count = static_cast<int>(exact.size());
  rep.predicted_count = static_cast<int>(st.zeros.size());
  for (double e : exact) {
    if (st.zeros.empty()) break;
    const auto it = std::min_element(st.zeros.begin(), st.zeros.end(),
                                     [&](double a, double b) { return std::abs(a - e) < std::abs(b - e); });
    const double p = *it;
    const double local = kPi * q.hbar() / std::acosh(std::max(1.0 + 1e-12, std::abs(q.pair().t(p)) / 2.0));
    rep.max_offset = std::max(rep.max_offset, std::abs(e - p) / local);
  }
  return rep;
}

CloseStateReport close_state_compare(const EigenPair& a, const EigenPair& b, const RealPoly& F) {
  if (a.hbar != b.hbar) throw std::invalid_argument("states must share hbar");
  const QFunction qa(a), qb(b);
  const Poly Fc = to_complex(F);
  const Poly one{std::complex<double>(1.0)};
  const double na = DeformedMeasure(qa, qa, 1).integrate(one).real();
  const double nb = DeformedMeasure(qb, qb, 1).integrate(one).real();
  CloseStateReport rep;
  rep.quantum = DeformedMeasure(qa, qb, 1, 2, std::max(10, F.degree())).integrate(Fc) / std::sqrt(na * nb);

  const SpectralData s = build_spectral(a.t);
  const PeriodData pd = period_matrix(s);
  const int k = b.level - a.level;
  rep.classical = fourier_coefficient(
      s, pd, [&](const std::vector<double>& g) { return std::complex<double>(F(g[0]), 0.0); }, {k});
  rep.deviation = std::abs(std::abs(rep.quantum) - std::abs(rep.classical)) / std::abs(rep.classical);
  rep.spacing = std::abs(b.t.coeff(0) - a.t.coeff(0));
  rep.spacing_predicted = a.hbar * std::abs(k) * std::abs(pd.A(0, 0));
  rep.spacing_error = std::abs(rep.spacing - rep.spacing_predicted) / rep.spacing_predicted;
  return rep;
}

double deformation_error(const EigenPair& a, const EigenPair& b) {
  const SpectralData s = build_spectral(a.t);
  const PeriodData pd = period_matrix(s);
  const int k = b.level - a.level;
  const std::complex<double> classical = s_tk(pd, {k}).coeff(0) / std::complex<double>(0.0, 1.0);
  const double quantum = (a.t.coeff(0) - b.t.coeff(0)) / a.hbar;
  return std::abs(quantum - classical) / std::abs(classical);
}

}  // namespace toda
