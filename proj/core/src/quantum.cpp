#include "toda/quantum.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <stdexcept>

#include <Eigen/Dense>
#include <boost/math/tools/roots.hpp>
#include <boost/multiprecision/complex128.hpp>
#include <boost/multiprecision/float128.hpp>

#include "toda/errors.hpp"
#include "toda/roots.hpp"
#include "toda/spectral.hpp"

namespace toda {

using quad = boost::multiprecision::float128;
using cquad = boost::multiprecision::complex128;

namespace detail {

struct Wavefunction {
  double hbar = 1.0;
  quad E = 0;
  int parity = 1;
  double dr = 0.1;
  double re_cap = 0.0;
  double im_cap = 0.0;
  std::vector<quad> psi;  // psi(i dr)
  quad psi0 = 0, dpsi0 = 0;
};

// psi on the line Im r = -y, r = i dr >= 0.
struct Line {
  double delta = 0.0, y = 0.0, dr = 0.0, lambda_max = 0.0;
  double match_error = 0.0;
  std::vector<cquad> phi;
};

struct LineCache {
  std::mutex m;
  std::map<int, Line> lines;  // key k: delta = 2^-k
};

}  // namespace detail

namespace {

constexpr double kPi = std::numbers::pi;
constexpr int kMaxLineIndex = 5;
constexpr double kLineExponent = 40.0;  // delta |Re gamma| / hbar on a line
constexpr double kRealContourLoss = 40.0;

quad qpi() { return boost::math::constants::pi<quad>(); }

quad mag(const quad& x) { return abs(x); }
quad mag(const cquad& x) { return abs(real(x)) + abs(imag(x)); }

// psi'' = V psi, V = (2 cosh z - E) / hbar^2, advanced by Taylor series along z + s d.
template <class S>
struct Taylor {
  quad E;
  quad inv_h2;

  void step(const S& z, const S& d, const quad& h, S& psi, S& dpsi) const {
    constexpr int kMax = 200;
    const S ep = exp(z), em = exp(-z);
    const S dh = d * quad(h);
    const S dh2 = dh * dh;
    std::array<S, kMax + 3> w{}, b{};
    w[0] = (ep + em - S(E)) * S(inv_h2);
    b[0] = psi;
    b[1] = dh * dpsi;
    S sum = b[0] + b[1];
    S dsum = b[1];
    S pk = S(1), mk = S(1);
    quad fact = 1;
    const quad scale = mag(psi) + mag(b[1]);
    int quiet = 0;
    for (int k = 0; k < kMax; ++k) {
      if (k >= 1) {
        pk *= dh;
        mk *= -dh;
        fact *= k;
        w[static_cast<std::size_t>(k)] = (ep * pk + em * mk) * S(inv_h2 / fact);
      }
      S acc = S(0);
      for (int j = 0; j <= k; ++j) acc += w[static_cast<std::size_t>(j)] * b[static_cast<std::size_t>(k - j)];
      const S next = acc * dh2 / quad((k + 1) * (k + 2));
      b[static_cast<std::size_t>(k + 2)] = next;
      sum += next;
      dsum += next * quad(k + 2);
      const quad tol = quad(1e-36) * (mag(sum) + scale);
      quiet = (mag(next) * quad(k + 2) <= tol) ? quiet + 1 : 0;
      if (quiet >= 3) {
        psi = sum;
        dpsi = dsum / dh;
        return;
      }
    }
    throw ConvergenceFailure("Taylor step did not converge");
  }
};

double barrier_integrand(double E, double r) { return std::sqrt(std::max(0.0, 2.0 * std::cosh(r) - E)); }

// Smallest R beyond the turning point with int_{r_t}^R sqrt(2 cosh - E) / hbar >= target + slope R / hbar.
double barrier_extent(double E, double hbar, double target, double slope) {
  const double rt = std::acosh(std::max(1.0, E / 2.0));
  double r = rt, acc = 0.0;
  const double dr = 1e-3;
  while (acc / hbar < target + slope * r / hbar) {
    acc += 0.5 * dr * (barrier_integrand(E, r) + barrier_integrand(E, r + dr));
    r += dr;
    if (r > 60.0) throw std::domain_error("barrier extent beyond r = 60");
  }
  return r;
}

struct Grid {
  double dr = 0.1;
  int M = 0;
  double re_cap = 0.0;
  double im_cap = 0.0;
};

Grid choose_grid(double hbar, double E) {
  Grid g;
  g.re_cap = std::sqrt(std::max(E, 0.0) + 2.0) + 15.0 * hbar;
  g.im_cap = 4.0 * hbar;
  g.dr = std::min(0.25, 2.0 * kPi * hbar / (2.0 * g.re_cap + 30.0 * hbar));
  const double R = barrier_extent(E, hbar, 90.0, g.im_cap);
  g.M = static_cast<int>(std::ceil(R / g.dr));
  return g;
}

struct Shot {
  quad psi0 = 0, dpsi0 = 0;
  std::vector<quad> psi;
};

Shot shoot(const quad& E, double hbar, const Grid& g, bool store) {
  const Taylor<quad> tay{E, quad(1) / (quad(hbar) * quad(hbar))};
  const quad dr = g.dr;
  quad r = dr * g.M;
  quad psi = 1;
  quad dpsi = -sqrt((2 * cosh(r) - E) * tay.inv_h2);
  Shot out;
  if (store) {
    out.psi.assign(static_cast<std::size_t>(g.M) + 1, quad(0));
    out.psi[static_cast<std::size_t>(g.M)] = psi;
  }
  const double absE = std::abs(static_cast<double>(E));
  for (int i = g.M; i >= 1; --i) {
    const double vmax = (2.0 * std::cosh(i * g.dr) + absE) / (hbar * hbar);
    const int nsub = std::max(1, static_cast<int>(std::ceil(g.dr * std::sqrt(vmax) / 0.7)));
    const quad h = dr / nsub;
    for (int s = 0; s < nsub; ++s) {
      tay.step(r, quad(-1), h, psi, dpsi);
      r -= h;
    }
    r = dr * (i - 1);
    if (store) out.psi[static_cast<std::size_t>(i - 1)] = psi;
  }
  out.psi0 = psi;
  out.dpsi0 = dpsi;
  return out;
}

// Log-derivative mismatch at r = 0, smooth near an eigenvalue of the given parity.
quad mismatch(const quad& E, double hbar, const Grid& g, int parity) {
  const Shot s = shoot(E, hbar, g, false);
  return parity > 0 ? s.dpsi0 / s.psi0 : s.psi0 / s.dpsi0;
}

quad refine_energy(double seed, double gap, int parity, double hbar, const Grid& g) {
  auto f = [&](const quad& e) { return mismatch(e, hbar, g, parity); };
  double w = 1e-7 * std::max(1.0, std::abs(seed));
  const double wmax = 0.3 * gap;
  quad lo, hi, flo, fhi;
  for (;;) {
    lo = quad(seed) - quad(w);
    hi = quad(seed) + quad(w);
    flo = f(lo);
    fhi = f(hi);
    if (flo * fhi < 0) break;
    w *= 4.0;
    if (w > wmax) throw ResolutionFailure("shooting root not bracketed near the discretization estimate");
  }
  boost::uintmax_t iters = 200;
  const auto r = boost::math::tools::toms748_solve(f, lo, hi, flo, fhi,
                                                   boost::math::tools::eps_tolerance<quad>(108), iters);
  return (r.first + r.second) / 2;
}

std::shared_ptr<const detail::Wavefunction> make_wave(const quad& E, int parity, double hbar, const Grid& g) {
  Shot s = shoot(E, hbar, g, true);
  const quad dr = g.dr;
  quad norm = 0;
  if (parity > 0) {
    norm = s.psi[0];
    for (std::size_t i = 1; i < s.psi.size(); ++i) norm += 2 * s.psi[i];
    norm *= dr;  // integral of psi = 1
  } else {
    for (std::size_t i = 1; i < s.psi.size(); ++i) norm += 2 * dr * quad(static_cast<int>(i)) * s.psi[i];
    norm = norm * dr / quad(hbar);  // integral of r psi = hbar
  }
  auto w = std::make_shared<detail::Wavefunction>();
  w->hbar = hbar;
  w->E = E;
  w->parity = parity;
  w->dr = g.dr;
  w->re_cap = g.re_cap;
  w->im_cap = g.im_cap;
  w->psi.resize(s.psi.size());
  for (std::size_t i = 0; i < s.psi.size(); ++i) w->psi[i] = s.psi[i] / norm;
  w->psi0 = s.psi0 / norm;
  w->dpsi0 = s.dpsi0 / norm;

  // The real-contour sum loses pi |gamma| / hbar - log|Q| digits; log|Q| saturates near
  // log|psi(-i pi)|. Keep the loss below kRealContourLoss.
  const Taylor<cquad> tay{E, quad(1) / (quad(hbar) * quad(hbar))};
  cquad psi(w->psi0), dpsi(w->dpsi0);
  const double y = kPi - std::ldexp(1.0, -kMaxLineIndex);
  const double vmax = (2.0 + std::abs(static_cast<double>(E))) / (hbar * hbar);
  const int steps = std::max(static_cast<int>(std::ceil(y / 0.1)), static_cast<int>(std::ceil(y * std::sqrt(vmax) / 0.7)));
  const quad h = quad(y) / steps;
  double plateau = 0.0;
  for (int i = 0; i < steps; ++i) {
    tay.step(cquad(quad(0), -h * i), cquad(quad(0), quad(-1)), h, psi, dpsi);
    plateau = std::max(plateau, static_cast<double>(log(abs(psi))));
  }
  w->re_cap = std::min(g.re_cap, hbar * (plateau + kRealContourLoss) / kPi);
  return w;
}

// c psi_hat(g) on the real contour.
cquad real_contour(const detail::Wavefunction& w, const cquad& g) {
  const quad dr = w.dr;
  const bool even = w.parity > 0;
  if (imag(g) == 0) {
    const quad th = real(g) * dr / quad(w.hbar);
    const quad c1 = cos(th), two_c = 2 * c1;
    quad prev = even ? quad(1) : quad(0);
    quad cur = even ? c1 : sin(th);
    quad acc = even ? w.psi[0] : quad(0);
    for (std::size_t i = 1; i < w.psi.size(); ++i) {
      acc += 2 * w.psi[i] * cur;
      const quad next = two_c * cur - prev;
      prev = cur;
      cur = next;
    }
    return cquad(acc * dr, quad(0));
  }
  const cquad step = exp(cquad(quad(0), quad(-1)) * g * dr / quad(w.hbar));
  const cquad back = cquad(1) / step;
  cquad e(1), f(1);
  cquad acc = even ? cquad(w.psi[0]) : cquad(0);
  for (std::size_t i = 1; i < w.psi.size(); ++i) {
    e *= step;
    f *= back;
    acc += w.psi[i] * (even ? e + f : e - f);
  }
  acc *= dr;
  return even ? acc : acc * cquad(quad(0), quad(1));
}

detail::Line build_line(const detail::Wavefunction& w, int k) {
  detail::Line L;
  L.delta = std::ldexp(1.0, -k);
  L.y = kPi - L.delta;
  L.lambda_max = kLineExponent * w.hbar / L.delta;
  const double hbar = w.hbar;
  const double E = static_cast<double>(w.E);
  const Taylor<cquad> tay{w.E, quad(1) / (quad(hbar) * quad(hbar))};

  // psi at -i y from the imaginary axis, where V stays bounded.
  cquad psi(w.psi0), dpsi(w.dpsi0);
  {
    const double vmax = (2.0 + std::abs(E)) / (hbar * hbar);
    const int steps = std::max(static_cast<int>(std::ceil(L.y / 0.1)),
                               static_cast<int>(std::ceil(L.y * std::sqrt(vmax) / 0.7)));
    const quad h = quad(L.y) / steps;
    const cquad d(quad(0), quad(-1));
    for (int s = 0; s < steps; ++s) {
      const cquad z(quad(0), -h * s);
      tay.step(z, d, h, psi, dpsi);
    }
  }

  auto V = [&](double r) {
    return (2.0 * std::cosh(std::complex<double>(r, -L.y)) - E) / (hbar * hbar);
  };
  double R = 0.0, acc = 0.0;
  const double step = 1e-3;
  while (acc < 100.0 + w.im_cap * R / hbar) {
    acc += 0.5 * step * (std::sqrt(V(R)).real() + std::sqrt(V(R + step)).real());
    R += step;
    if (R > 80.0) throw std::domain_error("shifted contour extent beyond r = 80");
  }
  const double kmax = std::abs(std::sqrt(V(R)));
  L.dr = kPi / (kmax + L.lambda_max / hbar + 30.0);
  const int M = static_cast<int>(std::ceil(R / L.dr));
  const quad dr = L.dr;

  L.phi.assign(static_cast<std::size_t>(M) + 1, cquad(0));
  cquad z(dr * M, quad(-L.y));
  cquad phi(1);
  cquad dphi = -sqrt((2 * cosh(z) - cquad(w.E)) * tay.inv_h2);
  L.phi[static_cast<std::size_t>(M)] = phi;
  for (int i = M; i >= 1; --i) {
    const double vmax = (2.0 * std::cosh(i * L.dr) + std::abs(E)) / (hbar * hbar);
    const int nsub = std::max(1, static_cast<int>(std::ceil(L.dr * std::sqrt(vmax) / 0.7)));
    const quad h = dr / nsub;
    for (int s = 0; s < nsub; ++s) {
      tay.step(z, cquad(-1), h, phi, dphi);
      z -= cquad(h);
    }
    z = cquad(dr * (i - 1), quad(-L.y));
    L.phi[static_cast<std::size_t>(i - 1)] = phi;
  }
  const cquad c = psi / L.phi[0];
  L.match_error = static_cast<double>(mag(dpsi - c * dphi) / (mag(dpsi) + mag(c * dphi)));
  for (auto& v : L.phi) v *= c;
  return L;
}

// c psi_hat(g) from the line, Re g >= 0.
cquad line_contour(const detail::Wavefunction& w, const detail::Line& L, const cquad& g) {
  const quad dr = L.dr;
  const quad p = w.parity;
  const cquad step = exp(cquad(quad(0), quad(-1)) * g * dr / quad(w.hbar));
  const cquad back = cquad(1) / step;
  cquad e(1), f(1);
  cquad acc = L.phi[0];
  for (std::size_t i = 1; i < L.phi.size(); ++i) {
    e *= step;
    f *= back;
    acc += e * L.phi[i] + f * p * conj(L.phi[i]);
  }
  acc *= dr * exp(-g * quad(L.y) / quad(w.hbar));
  return w.parity > 0 ? acc : acc * cquad(quad(0), quad(1));
}

ScaledComplex to_scaled(const cquad& v) {
  ScaledComplex s;
  const quad a = abs(v);
  if (a == 0) {
    s.log_scale = -std::numeric_limits<double>::infinity();
    return s;
  }
  s.log_scale = static_cast<double>(log(a));
  s.mantissa = {static_cast<double>(real(v) / a), static_cast<double>(imag(v) / a)};
  return s;
}

cquad to_cquad(std::complex<double> z) { return cquad(quad(z.real()), quad(z.imag())); }

}  // namespace

std::complex<double> ScaledComplex::value() const {
  if (std::isinf(log_scale) && log_scale < 0) return {0.0, 0.0};
  return mantissa * std::exp(log_scale);
}

std::vector<double> dvr_energies(double hbar, double R, double dr, int levels) {
  const int N = static_cast<int>(std::floor(R / dr));
  const int size = 2 * N + 1;
  if (levels > size) throw std::invalid_argument("more levels than grid points");
  Eigen::MatrixXd H(size, size);
  const double kin = hbar * hbar / (dr * dr);
  for (int i = 0; i < size; ++i)
    for (int j = 0; j < size; ++j) {
      const int m = i - j;
      if (m == 0)
        H(i, j) = kin * kPi * kPi / 3.0 + 2.0 * std::cosh((i - N) * dr);
      else
        H(i, j) = kin * 2.0 * ((m % 2) ? -1.0 : 1.0) / (static_cast<double>(m) * m);
    }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H, Eigen::EigenvaluesOnly);
  std::vector<double> out(static_cast<std::size_t>(levels));
  for (int k = 0; k < levels; ++k) out[static_cast<std::size_t>(k)] = es.eigenvalues()(k);
  return out;
}

std::vector<EigenPair> solve_relative_spectrum(double hbar, int levels) {
  if (!(hbar > 0)) throw std::invalid_argument("hbar must be positive");
  if (levels < 1 || levels > 64) throw std::invalid_argument("levels must be in 1..64");

  double e_top = 2.0 + hbar * (2.0 * levels + 1.0) * 1.5 + 2.0;
  std::vector<double> seeds;
  for (int attempt = 0; attempt < 8 && seeds.empty(); ++attempt) {
    const double R = barrier_extent(e_top, hbar, 40.0, 0.0);
    double dr = std::min(0.3, kPi * hbar / (1.5 * std::sqrt(e_top + 2.0)));
    std::vector<double> coarse = dvr_energies(hbar, R, dr, levels);
    if (coarse.back() > 0.9 * e_top) {
      e_top = 1.5 * coarse.back() + 1.0;
      continue;
    }
    for (int refinement = 0; refinement < 3; ++refinement) {
      std::vector<double> fine = dvr_energies(hbar, R, dr / 2.0, levels);
      bool agree = true;
      for (int k = 0; k < levels; ++k) {
        const auto i = static_cast<std::size_t>(k);
        if (std::abs(coarse[i] - fine[i]) > 1e-8 * std::abs(fine[i])) agree = false;
      }
      if (agree) {
        seeds = fine;
        break;
      }
      coarse = std::move(fine);
      dr /= 2.0;
    }
    if (seeds.empty()) throw ResolutionFailure("discretized spectrum did not converge under grid halving");
  }
  if (seeds.empty()) throw ResolutionFailure("could not enclose the requested levels");

  std::vector<EigenPair> out;
  for (int m = 0; m < levels; ++m) {
    const auto i = static_cast<std::size_t>(m);
    double gap = std::numeric_limits<double>::infinity();
    if (m > 0) gap = std::min(gap, seeds[i] - seeds[i - 1]);
    if (m + 1 < levels) gap = std::min(gap, seeds[i + 1] - seeds[i]);
    if (!std::isfinite(gap)) gap = 2.0 * hbar;
    const int parity = (m % 2 == 0) ? 1 : -1;
    const Grid g = choose_grid(hbar, seeds[i]);
    const quad E = refine_energy(seeds[i], gap, parity, hbar, g);
    EigenPair p;
    p.hbar = hbar;
    p.level = m;
    p.E = static_cast<double>(E);
    p.E_seed = seeds[i];
    p.parity = parity;
    p.wave = make_wave(E, parity, hbar, g);
    const TSelection sel = eigen_to_t(p);
    p.t = sel.t;
    p.t2_sign = sel.sign;
    p.gauge = sel.gauge;
    p.residual = sel.residual;
    out.push_back(std::move(p));
  }
  return out;
}

QFunction::QFunction(const EigenPair& pair, QGauge gauge)
    : pair_(pair), gauge_(gauge), lines_(std::make_shared<detail::LineCache>()) {
  if (!pair_.wave) throw std::invalid_argument("eigenpair carries no wavefunction");
}

double QFunction::im_cap() const { return pair_.wave->im_cap; }
double QFunction::re_cap() const { return pair_.wave->re_cap; }
double QFunction::dr() const { return pair_.wave->dr; }

std::vector<double> QFunction::psi_samples() const {
  std::vector<double> out;
  for (const auto& v : pair_.wave->psi) out.push_back(static_cast<double>(v));
  return out;
}

namespace {

cquad momentum_quad(const detail::Wavefunction& w, detail::LineCache& cache, cquad g) {
  if (abs(imag(g)) > quad(w.im_cap) * (1 + 1e-12))
    throw std::domain_error("Q evaluation beyond the imaginary-part cap");
  const double re = static_cast<double>(real(g));
  if (std::abs(re) <= w.re_cap) return real_contour(w, g);
  int k = 0;
  while (k <= kMaxLineIndex && std::ldexp(1.0, -k) * std::abs(re) / w.hbar > kLineExponent) ++k;
  if (k > kMaxLineIndex) throw std::domain_error("Q evaluation beyond the shifted-contour range");
  const detail::Line* line = nullptr;
  {
    std::lock_guard<std::mutex> lock(cache.m);
    auto it = cache.lines.find(k);
    if (it == cache.lines.end()) it = cache.lines.emplace(k, build_line(w, k)).first;
    line = &it->second;
  }
  // psi_hat(-g) = parity psi_hat(g)
  if (re < 0) return quad(w.parity) * line_contour(w, *line, -g);
  return line_contour(w, *line, g);
}

}  // namespace

ScaledComplex QFunction::momentum(std::complex<double> gamma) const {
  return to_scaled(momentum_quad(*pair_.wave, *lines_, to_cquad(gamma)));
}

ScaledComplex QFunction::scaled(std::complex<double> gamma) const {
  const cquad g = to_cquad(gamma);
  const detail::Wavefunction& w = *pair_.wave;
  switch (gauge_) {
    case QGauge::Plain:
      return to_scaled(momentum_quad(w, *lines_, g));
    case QGauge::Rotated:
      return to_scaled(momentum_quad(w, *lines_, cquad(quad(0), quad(1)) * g));
    case QGauge::Exponential:
      break;
  }
  return to_scaled(exp(qpi() * g / quad(w.hbar)) * momentum_quad(w, *lines_, g));
}

std::complex<double> QFunction::operator()(std::complex<double> gamma) const { return scaled(gamma).value(); }

double baxter_residual(const QEvaluator& q, const RealPoly& t, double hbar, const ResidualGrid& grid) {
  const std::complex<double> ih(0.0, hbar);
  double res = 0.0, scale = 0.0;
  for (int a = 0; a < grid.re_points; ++a) {
    const double x = grid.re_points == 1 ? 0.0 : -grid.re_max + 2.0 * grid.re_max * a / (grid.re_points - 1);
    for (int b = 0; b < grid.im_points; ++b) {
      const double y = grid.im_points == 1
                           ? 0.0
                           : hbar * grid.im_max_over_hbar * (-1.0 + 2.0 * b / (grid.im_points - 1));
      const std::complex<double> g(x, y);
      const std::complex<double> qc = q(g), qu = q(g + ih), qd = q(g - ih);
      res = std::max(res, std::abs(qu + qd - t(g) * qc));
      scale = std::max({scale, std::abs(qc), std::abs(qu), std::abs(qd)});
    }
  }
  return scale > 0 ? res / scale : std::numeric_limits<double>::infinity();
}

double baxter_residual(const QFunction& q, const ResidualGrid& grid) {
  return baxter_residual([&](std::complex<double> g) { return q(g); }, q.pair().t, q.hbar(), grid);
}

TSelection eigen_to_t(const EigenPair& pair, double tol) {
  TSelection out;
  const double hbar = pair.hbar;
  const double inf = std::numeric_limits<double>::infinity();

  // psi_hat is shared by the Plain and Exponential gauges and by both signs; evaluate each
  // distinct grid point once. Keys are (column, Im gamma / hbar in units of 1e-9).
  std::map<std::pair<int, long long>, ScaledComplex> memo;
  const QFunction base(pair, QGauge::Plain);
  const QFunction rotated(pair, QGauge::Rotated);
  auto momentum_at = [&](int col, std::complex<double> g) {
    const auto key = std::make_pair(col, std::llround(g.imag() / hbar * 1e9));
    auto it = memo.find(key);
    if (it == memo.end()) it = memo.emplace(key, base.momentum(g)).first;
    return it->second;
  };

  auto residual_over = [&](const ResidualGrid& grid, auto&& value_at, const RealPoly& t) {
    const std::complex<double> ih(0.0, hbar);
    double res = 0.0, scale = 0.0;
    for (int a = 0; a < grid.re_points; ++a) {
      const double x = grid.re_points == 1 ? 0.0 : -grid.re_max + 2.0 * grid.re_max * a / (grid.re_points - 1);
      for (int b = 0; b < grid.im_points; ++b) {
        const double y = grid.im_points == 1 ? 0.0 : hbar * grid.im_max_over_hbar * (-1.0 + 2.0 * b / (grid.im_points - 1));
        const std::complex<double> g(x, y);
        const std::complex<double> qc = value_at(a, g), qu = value_at(a, g + ih), qd = value_at(a, g - ih);
        res = std::max(res, std::abs(qu + qd - t(g) * qc));
        scale = std::max({scale, std::abs(qc), std::abs(qu), std::abs(qd)});
      }
    }
    return scale > 0 ? res / scale : inf;
  };

  const QGauge gauges[] = {QGauge::Plain, QGauge::Rotated, QGauge::Exponential};
  double best = inf;
  int below = 0;
  for (QGauge gauge : gauges) {
    ResidualGrid grid;
    if (gauge == QGauge::Rotated) grid.re_max = std::min(grid.re_max, rotated.im_cap());
    auto value_at = [&](int col, std::complex<double> g) -> std::complex<double> {
      if (gauge == QGauge::Rotated) return rotated(g);
      const ScaledComplex m = momentum_at(col, g);
      if (std::isinf(m.log_scale)) return {0.0, 0.0};
      const std::complex<double> extra = gauge == QGauge::Exponential ? kPi * g / hbar : 0.0;
      return m.mantissa * std::exp(m.log_scale + extra);
    };
    for (int sign : {1, -1}) {
      const RealPoly t({sign * pair.E, 0.0, 1.0});
      double r;
      try {
        r = residual_over(grid, value_at, t);
      } catch (const std::domain_error&) {
        r = inf;
      }
      out.candidates.push_back(r);
      if (r < tol) ++below;
      if (r < best) {
        best = r;
        out.t = t;
        out.sign = sign;
        out.gauge = gauge;
        out.residual = r;
      }
    }
  }
  if (below != 1) throw SignAmbiguity("Baxter residual does not single out one (gauge, sign) candidate");
  return out;
}

QFunction build_q(const EigenPair& pair, double tol) {
  QFunction q(pair, pair.gauge);
  if (baxter_residual(q) > tol) throw ResolutionFailure("Baxter residual above tolerance");
  return q;
}

namespace {

// Least-squares slope of the per-bin maxima of log|Q| over [a, b].
double envelope_slope(const QFunction& q, double a, double b, int bins, int per_bin) {
  std::vector<double> xs, ys;
  for (int k = 0; k < bins; ++k) {
    double best = -std::numeric_limits<double>::infinity(), at = 0.0;
    for (int s = 0; s < per_bin; ++s) {
      const double x = a + (b - a) * (k + (s + 0.5) / per_bin) / bins;
      const double v = q.scaled(x).log_scale;
      if (v > best) {
        best = v;
        at = x;
      }
    }
    if (std::isfinite(best)) {
      xs.push_back(at);
      ys.push_back(best);
    }
  }
  const double n = static_cast<double>(xs.size());
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

}  // namespace

AsymptoticsReport asymptotics_check(const QFunction& q, double lambda0) {
  AsymptoticsReport rep;
  const double hbar = q.hbar();
  rep.lambda0 = lambda0 > 0 ? lambda0 : 10.0 * hbar * (q.pair().level + 5);
  const double L = rep.lambda0;
  auto phase = [&](double x) { return (2.0 / hbar) * x * (std::log(x) - 1.0); };
  rep.zeros_predicted = (phase(2.0 * L) - phase(L)) / kPi;

  const double spacing = kPi * hbar / (2.0 * std::max(std::log(2.0 * L), 0.5));
  const int samples = static_cast<int>(std::ceil(16.0 * L / spacing));
  int prev = 0;
  for (int i = 0; i <= samples; ++i) {
    const double x = L + L * i / samples;
    const double v = q.scaled(x).mantissa.real();
    const int s = (v > 0) - (v < 0);
    if (s != 0) {
      if (prev != 0 && s != prev) ++rep.zeros_counted;
      prev = s;
    }
  }
  rep.zeros_ok = std::abs(rep.zeros_counted - rep.zeros_predicted) <= 2.0;

  rep.slope_expected = 2.0 * kPi / hbar;
  const int bins = 24;
  const int per_bin = std::max(8, static_cast<int>(std::ceil(4.0 * L / (bins * spacing))));
  rep.slope_minus = envelope_slope(q, -2.0 * L, -L, bins, per_bin);
  rep.slope_plus = envelope_slope(q, L, 2.0 * L, bins, per_bin);
  rep.growth_ok = std::abs(rep.slope_minus - rep.slope_expected) <= 0.1 * rep.slope_expected;
  rep.bounded_ok = rep.slope_plus <= 0.05 * rep.slope_expected;
  return rep;
}

double bs_action(double t2) {
  if (t2 >= -2.0) return 0.0;
  const SpectralData s = build_spectral(RealPoly({t2, 0.0, 1.0}), true);
  return classical_action(s, 1);
}

double bs_quantize(double hbar, int nj) {
  if (nj < 0) throw std::invalid_argument("nj must be >= 0");
  const double target = kPi * hbar * (2.0 * nj + 1.0);
  auto f = [&](double t2) { return bs_action(t2) - target; };
  const double hi = -2.0 - 1e-12;
  double lo = -3.0;
  for (int k = 0; f(lo) < 0.0; ++k) {
    if (k > 60) throw BracketFailure("action never reaches the Bohr-Sommerfeld target");
    lo = -2.0 - 2.0 * (-2.0 - lo);
  }
  return bracketed_root(f, lo, hi);
}

double classical_frequency(double t2) {
  const SpectralData s = build_spectral(RealPoly({t2, 0.0, 1.0}));
  return period_matrix(s).A(0, 0);
}

}  // namespace toda
