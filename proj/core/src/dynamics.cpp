#include "toda/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <stdexcept>

#include <boost/numeric/odeint.hpp>
#include <unsupported/Eigen/AutoDiff>

#include "toda/classical_identities.hpp"
#include "toda/errors.hpp"

namespace toda {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr long kMaxAttempts = 200000;
using State = std::vector<double>;
using AD = Eigen::AutoDiffScalar<Eigen::VectorXd>;

State pack(const PhasePoint& x) {
  State z(x.q);
  z.insert(z.end(), x.p.begin(), x.p.end());
  return z;
}

PhasePoint unpack(const State& z) {
  const auto n = static_cast<std::ptrdiff_t>(z.size() / 2);
  return {State(z.begin() + n, z.end()), State(z.begin(), z.begin() + n)};
}

struct Field {
  std::vector<double> weights;
  void operator()(const State& z, State& dz, double) const {
    for (double v : z)
      if (!std::isfinite(v)) throw StepFailure("flow left the finite region");
    dz = flow_vector_field(unpack(z), weights);
  }
};

void check_finite(const State& z) {
  for (double v : z)
    if (!std::isfinite(v)) throw StepFailure("flow left the finite region");
}

double wrap_2pi(double a) {
  a = std::fmod(a, 2.0 * kPi);
  return a < 0 ? a + 2.0 * kPi : a;
}

double nearest_multiple_residual(double a) {
  return std::abs(a - 2.0 * kPi * std::round(a / (2.0 * kPi)));
}

/// Cached Abel map: Phi^{(j)} on every cycle k.
class AbelMap {
 public:
  AbelMap(const SpectralData& s, const PeriodData& pd) : s_(s), pd_(pd) {
    for (int j = 0; j < pd.genus; ++j) {
      std::vector<int> e(static_cast<std::size_t>(pd.genus), 0);
      e[static_cast<std::size_t>(j)] = 1;
      const RealPoly num = omega_numerator(pd, e);
      std::vector<CyclePhase> row;
      for (const auto& g : pd.grids) row.emplace_back(g, num);
      phases_.push_back(std::move(row));
    }
  }

  std::vector<double> angles(const PhasePoint& x) const {
    const MonodromyData m = build_monodromy(x);
    const SovCoords sc = sov_coords(m);
    const std::vector<double> sp = signed_sqrt_p(m, sc);
    std::vector<double> phi(sc.gamma.size());
    for (std::size_t k = 0; k < phi.size(); ++k) {
      const CycleGrid& g = pd_.grids[k];
      const double gamma = sc.gamma[k];
      const double mr = s_.minus_r(static_cast<int>(k) + 1, gamma);
      const double sin_phi = sp[k] / (g.h * std::sqrt(std::max(mr, 0.0)));
      phi[k] = wrap_2pi(std::atan2(sin_phi, (g.c - gamma) / g.h));
    }
    std::vector<double> theta(phases_.size(), 0.0);
    for (std::size_t j = 0; j < phases_.size(); ++j)
      for (std::size_t k = 0; k < phi.size(); ++k) theta[j] += phases_[j][k](phi[k]);
    return theta;
  }

 private:
  const SpectralData& s_;
  const PeriodData& pd_;
  std::vector<std::vector<CyclePhase>> phases_;
};

double product_except(const std::vector<double>& g, std::size_t i) {
  double d = 1.0;
  for (std::size_t j = 0; j < g.size(); ++j)
    if (j != i) d *= g[i] - g[j];
  return d;
}

std::vector<double> without(const std::vector<double>& g, std::size_t i, std::size_t j = SIZE_MAX) {
  std::vector<double> out;
  for (std::size_t k = 0; k < g.size(); ++k)
    if (k != i && k != j) out.push_back(g[k]);
  return out;
}

double ipow(double x, int k) {
  double r = 1.0;
  for (int i = 0; i < k; ++i) r *= x;
  return r;
}

/// integral_0^x (u^a - y^a) / (u - y) du
double divided_integral(double x, double y, int a) {
  double acc = 0.0;
  for (int r = 0; r < a; ++r) acc += ipow(y, a - 1 - r) * ipow(x, r + 1) / (r + 1);
  return acc;
}

}  // namespace

TraceGradient trace_gradient(const PhasePoint& x) {
  x.validate();
  const auto n = static_cast<std::size_t>(x.n());
  std::vector<AD> p(n), q(n);
  for (std::size_t i = 0; i < n; ++i) {
    q[i] = AD(x.q[i], static_cast<Eigen::Index>(2 * n), static_cast<Eigen::Index>(i));
    p[i] = AD(x.p[i], static_cast<Eigen::Index>(2 * n), static_cast<Eigen::Index>(n + i));
  }
  const std::vector<AD> t = trace_coeffs(p, q);
  TraceGradient out;
  for (std::size_t k = 1; k <= n; ++k) {
    const AD& c = t[n - k];
    out.t.push_back(c.value());
    std::vector<double> g(2 * n, 0.0);
    for (Eigen::Index i = 0; i < c.derivatives().size(); ++i) g[static_cast<std::size_t>(i)] = c.derivatives()[i];
    out.grad.push_back(std::move(g));
  }
  return out;
}

std::vector<double> flow_vector_field(const PhasePoint& x, const std::vector<double>& weights) {
  const TraceGradient tg = trace_gradient(x);
  const auto n = static_cast<std::size_t>(x.n());
  if (weights.size() > n) throw std::invalid_argument("more flow weights than conserved quantities");
  State dz(2 * n, 0.0);
  for (std::size_t l = 0; l < weights.size(); ++l) {
    if (weights[l] == 0.0) continue;
    const auto& g = tg.grad[l];
    for (std::size_t i = 0; i < n; ++i) {
      dz[i] += weights[l] * g[n + i];
      dz[n + i] -= weights[l] * g[i];
    }
  }
  return dz;
}

PhasePoint evolve(const PhasePoint& x0, const std::vector<double>& weights, FlowTolerance tol) {
  namespace ode = boost::numeric::odeint;
  x0.validate();
  State z = pack(x0);
  auto stepper = ode::make_controlled(tol.abs, tol.rel, ode::runge_kutta_dopri5<State>());
  const Field field{weights};
  double t = 0.0, dt = 1e-3;
  for (long attempts = 0; t < 1.0; ++attempts) {
    if (attempts > kMaxAttempts || dt < 1e-14) throw StepFailure("adaptive step size collapsed");
    dt = std::min(dt, 1.0 - t);
    stepper.try_step(field, z, t, dt);
    check_finite(z);
  }
  check_finite(z);
  return unpack(z);
}

PhasePoint evolve_flow(const PhasePoint& x0, int l, double tau, FlowTolerance tol) {
  if (l < 0 || l >= x0.n()) throw std::out_of_range("flow index");
  std::vector<double> w(static_cast<std::size_t>(x0.n()), 0.0);
  w[static_cast<std::size_t>(l)] = tau;
  return evolve(x0, w, tol);
}

Trajectory hamiltonian_flow(const PhasePoint& x0, int l, double duration, int samples, FlowTolerance tol) {
  namespace ode = boost::numeric::odeint;
  x0.validate();
  if (l < 0 || l >= x0.n()) throw std::out_of_range("flow index");
  if (samples < 1) throw std::invalid_argument("need at least one sample interval");
  Trajectory traj;
  traj.flow = l;
  for (int i = 0; i <= samples; ++i) traj.tau.push_back(duration * i / samples);
  std::vector<double> w(static_cast<std::size_t>(x0.n()), 0.0);
  w[static_cast<std::size_t>(l)] = 1.0;
  State z = pack(x0);
  std::vector<State> states;
  auto observer = [&](const State& s, double) { states.push_back(s); };
  try {
    auto stepper = ode::make_dense_output(tol.abs, tol.rel, ode::runge_kutta_dopri5<State>());
    if (duration == 0.0) {
      states.assign(traj.tau.size(), z);
    } else {
      ode::integrate_times(stepper, Field{w}, z, traj.tau.begin(), traj.tau.end(), duration / samples / 4, observer);
    }
  } catch (const ode::odeint_error& e) {
    throw StepFailure(e.what());
  }
  for (const State& s : states) {
    check_finite(s);
    traj.points.push_back(unpack(s));
    const MonodromyData m = build_monodromy(traj.points.back());
    traj.sov.push_back(sov_coords(m));
    traj.t.push_back(conserved_poly(m));
  }
  return traj;
}

double conservation_error(const Trajectory& traj) {
  double err = 0.0;
  for (const auto& t : traj.t)
    for (int k = 0; k <= t.degree(); ++k) err = std::max(err, std::abs(t.coeff(k) - traj.t.front().coeff(k)));
  return err;
}

std::vector<double> signed_sqrt_p(const MonodromyData& m, const SovCoords& s) {
  std::vector<double> out;
  for (double g : s.gamma) out.push_back(m.D(g) - m.A(g));
  return out;
}

std::vector<double> em_rhs(const MonodromyData& m, const SovCoords& s, int l) {
  const int n = m.n;
  const std::vector<double> sp = signed_sqrt_p(m, s);
  std::vector<double> out;
  for (std::size_t j = 0; j < s.gamma.size(); ++j) {
    // Lagrange basis polynomial prod_{k != j} (lambda - gamma_k) / (gamma_j - gamma_k)
    RealPoly basis = RealPoly::constant(1.0);
    for (std::size_t k = 0; k < s.gamma.size(); ++k)
      if (k != j) basis = basis * RealPoly({-s.gamma[k], 1.0}) * (1.0 / (s.gamma[j] - s.gamma[k]));
    out.push_back(sp[j] * basis.coeff(n - 1 - l));
  }
  return out;
}

EmReport em_residual(const Trajectory& traj, double delta, FlowTolerance tol) {
  EmReport rep;
  auto residual_at = [&](double d) {
    double worst = 0.0;
    for (std::size_t i = 0; i < traj.points.size(); ++i) {
      const PhasePoint& x = traj.points[i];
      const SovCoords plus = sov_coords(build_monodromy(evolve_flow(x, traj.flow, d, tol)));
      const SovCoords minus = sov_coords(build_monodromy(evolve_flow(x, traj.flow, -d, tol)));
      const std::vector<double> rhs = em_rhs(build_monodromy(x), traj.sov[i], traj.flow);
      for (std::size_t j = 0; j < rhs.size(); ++j) {
        const double fd = (plus.gamma[j] - minus.gamma[j]) / (2.0 * d);
        worst = std::max(worst, std::abs(fd - rhs[j]));
        rep.max_rate = std::max(rep.max_rate, std::abs(rhs[j]));
      }
    }
    return worst;
  };
  const double coarse = residual_at(delta);
  const double fine = residual_at(0.5 * delta);
  const double scale = rep.max_rate > 0 ? rep.max_rate : 1.0;
  rep.residual_coarse = coarse / scale;
  rep.residual_fine = fine / scale;
  rep.order = (coarse > 0 && fine > 0) ? std::log2(coarse / fine) : 0.0;
  return rep;
}

std::vector<double> abel_angles(const SpectralData& s, const PeriodData& pd, const PhasePoint& x) {
  return AbelMap(s, pd).angles(x);
}

AbelReport abel_linearization(const Trajectory& traj, const SpectralData& s, const PeriodData& pd) {
  AbelReport rep;
  if (traj.points.size() < 2) return rep;
  const AbelMap map(s, pd);
  const int n = s.n;
  const int m = n - 1 - traj.flow;  // column of A giving d theta / d tau
  std::vector<std::vector<double>> theta;
  for (const auto& x : traj.points) theta.push_back(map.angles(x));
  for (std::size_t j = 0; j < theta.front().size(); ++j) {
    const double rate = (m >= 0 && m < pd.genus) ? pd.A(static_cast<Eigen::Index>(j), m) : 0.0;
    for (std::size_t i = 0; i < theta.size(); ++i) {
      const double dt = traj.tau[i] - traj.tau[0];
      rep.drift = std::max(rep.drift, nearest_multiple_residual(theta[i][j] - theta[0][j] - rate * dt));
      if (i > 0) {
        const double step = traj.tau[i] - traj.tau[i - 1];
        const double jump = theta[i][j] - theta[i - 1][j] - rate * step;
        const double unwrapped = jump - 2.0 * kPi * std::round(jump / (2.0 * kPi));
        rep.slope_error = std::max(rep.slope_error, std::abs(unwrapped / step));
      }
    }
  }
  return rep;
}

std::complex<double> fourier_coefficient(const SpectralData& s, const PeriodData& pd, const SymmetricFunction& f,
                                         const std::vector<int>& k) {
  (void)s;
  const int g = pd.genus;
  if (static_cast<int>(k.size()) != g) throw std::invalid_argument("k-vector length must equal genus");
  const bool zero_k = std::all_of(k.begin(), k.end(), [](int v) { return v == 0; });
  std::vector<std::vector<double>> phase(static_cast<std::size_t>(g));
  for (int j = 0; j < g; ++j) {
    const CycleGrid& cg = pd.grids[static_cast<std::size_t>(j)];
    phase[static_cast<std::size_t>(j)] =
        zero_k ? std::vector<double>(cg.x.size(), 0.0) : CyclePhase(cg, omega_numerator(pd, k)).values();
  }
  const std::size_t N = static_cast<std::size_t>(pd.points);
  std::vector<std::size_t> idx(static_cast<std::size_t>(g), 0);
  std::vector<double> gamma(static_cast<std::size_t>(g));
  std::complex<double> num = 0.0, den = 0.0;
  double scale = 0.0;
  while (true) {
    double w = 1.0, total_phase = 0.0;
    for (std::size_t j = 0; j < idx.size(); ++j) {
      gamma[j] = pd.grids[j].x[idx[j]];
      w *= pd.grids[j].weight[idx[j]];
      total_phase += phase[j][idx[j]];
    }
    for (std::size_t a = 0; a < gamma.size(); ++a)
      for (std::size_t b = a + 1; b < gamma.size(); ++b) w *= gamma[a] - gamma[b];
    const std::complex<double> v = w * f(gamma) * std::polar(1.0, total_phase);
    num += v;
    scale += std::abs(v);
    den += w;
    std::size_t j = 0;
    while (j < idx.size() && ++idx[j] == N) idx[j++] = 0;
    if (j == idx.size()) break;
  }
  if (!std::isfinite(scale) || std::abs(den) == 0.0) throw QuadratureFailure("multi-cycle quadrature degenerated");
  return num / den;
}

std::complex<double> torus_average(const PhasePoint& x0, const SpectralData& s, const PeriodData& pd,
                                   const SymmetricFunction& f, int per_dim, FlowTolerance tol) {
  const int g = pd.genus;
  const int n = s.n;
  std::vector<int> idx(static_cast<std::size_t>(g), 0);
  std::complex<double> acc = 0.0;
  std::size_t count = 0;
  while (true) {
    // theta shift 2 pi e_m  <->  tau_{n-l} += raw(l-1, m-1)
    std::vector<double> w(static_cast<std::size_t>(n), 0.0);
    for (int mcol = 0; mcol < g; ++mcol) {
      const double frac = static_cast<double>(idx[static_cast<std::size_t>(mcol)]) / per_dim;
      for (int l = 1; l <= g; ++l) w[static_cast<std::size_t>(n - l)] += frac * pd.raw(l - 1, mcol);
    }
    const PhasePoint x = evolve(x0, w, tol);
    acc += f(sov_coords(build_monodromy(x)).gamma);
    ++count;
    std::size_t j = 0;
    while (j < idx.size() && ++idx[j] == per_dim) idx[j++] = 0;
    if (j == idx.size()) break;
  }
  return acc / static_cast<double>(count);
}

namespace {

/// Value of the algebraic term and of the differentiated functions f_{lm} (or f_l for Q).
struct PdeTerms {
  const PdeInput& in;
  int n;
  RealPoly dtl;
  RealBiPoly ct;

  PdeTerms(const PdeInput& input, const RealPoly& t) : in(input), n(t.degree()) {
    const RealPoly P = t * t - RealPoly::constant(4.0);
    if (in.kind == PdeKind::EXFO || in.kind == PdeKind::WEI) dtl = P * L().derivative() + P.derivative() * L() * 0.5;
    if (in.kind == PdeKind::C) ct = c_t_numeric(P);
  }

  RealPoly L() const { return in.kind == PdeKind::WEI ? RealPoly::monomial(in.p) : in.L; }
  double G(const std::vector<double>& rest) const { return in.G ? in.G(rest) : 1.0; }

  double algebraic(const std::vector<double>& g) const {
    double acc = 0.0;
    if (in.kind == PdeKind::EXFO || in.kind == PdeKind::WEI) {
      for (std::size_t i = 0; i < g.size(); ++i) acc += dtl(g[i]) * G(without(g, i)) / product_except(g, i);
    } else if (in.kind == PdeKind::C) {
      for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j) acc += ct(g[i], g[j]) * G(without(g, i, j)) / pair_den(g, i, j);
    }
    return acc;
  }

  double pair_den(const std::vector<double>& g, std::size_t i, std::size_t j) const {
    double d = g[i] - g[j];
    for (std::size_t k = 0; k < g.size(); ++k)
      if (k != i && k != j) d *= (g[i] - g[k]) * (g[j] - g[k]);
    return d;
  }

  /// f_{lm} for EXFO/WEI/C; f_l (m ignored) for Q. l, m are 1-based flow indices.
  double f(const std::vector<double>& g, int l, int m) const {
    double acc = 0.0;
    if (in.kind == PdeKind::Q) {
      for (std::size_t i = 0; i < g.size(); ++i) acc += ipow(g[i], n - l - 1) * G(without(g, i)) / product_except(g, i);
    } else if (in.kind == PdeKind::C) {
      const int a = n - 1 - m;
      for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = i + 1; j < g.size(); ++j) {
          const double bracket = ipow(g[i], n - l - 1) * divided_integral(g[i], g[j], a) -
                                 ipow(g[j], n - l - 1) * divided_integral(g[j], g[i], a);
          acc += G(without(g, i, j)) / pair_den(g, i, j) * bracket;
        }
    } else {
      const RealPoly anti = (L() * RealPoly::monomial(n - 1 - m)).antiderivative();
      for (std::size_t i = 0; i < g.size(); ++i)
        acc += ipow(g[i], n - 1 - l) * anti(g[i]) * G(without(g, i)) / product_except(g, i);
    }
    return acc;
  }
};

struct StencilResult {
  double diff = 0.0;
  double scale = 0.0;
};

StencilResult stencil_residual(const PhasePoint& x, const PdeTerms& terms, double h, FlowTolerance tol) {
  const int n = x.n();
  const int g = n - 1;
  std::map<std::vector<int>, std::vector<double>> cache;
  auto gammas = [&](std::vector<int> off) -> const std::vector<double>& {
    auto it = cache.find(off);
    if (it != cache.end()) return it->second;
    std::vector<double> w(static_cast<std::size_t>(n), 0.0);
    bool moved = false;
    for (int l = 1; l <= g; ++l) {
      w[static_cast<std::size_t>(l)] = h * off[static_cast<std::size_t>(l - 1)];
      moved = moved || off[static_cast<std::size_t>(l - 1)] != 0;
    }
    const PhasePoint y = moved ? evolve(x, w, tol) : x;
    return cache.emplace(off, sov_coords(build_monodromy(y)).gamma).first->second;
  };
  auto offset = [&](int l, int a, int m, int b) {
    std::vector<int> off(static_cast<std::size_t>(g), 0);
    off[static_cast<std::size_t>(l - 1)] += a;
    off[static_cast<std::size_t>(m - 1)] += b;
    return off;
  };
  StencilResult r;
  const std::vector<double> g0 = gammas(std::vector<int>(static_cast<std::size_t>(g), 0));
  if (terms.in.kind == PdeKind::Q) {
    double sum = 0.0;
    for (int l = 1; l <= g; ++l) {
      const double d = (terms.f(gammas(offset(l, 1, l, 0)), l, 0) - terms.f(gammas(offset(l, -1, l, 0)), l, 0)) / (2 * h);
      sum += d;
      r.scale += std::abs(d);
    }
    r.diff = std::abs(sum);
    return r;
  }
  const double alg = terms.algebraic(g0);
  double sum = 0.0;
  r.scale = std::abs(alg);
  for (int l = 1; l <= g; ++l)
    for (int m = 1; m <= g; ++m) {
      double d;
      if (l == m) {
        d = (terms.f(gammas(offset(l, 1, l, 0)), l, m) - 2.0 * terms.f(g0, l, m) +
             terms.f(gammas(offset(l, -1, l, 0)), l, m)) /
            (h * h);
      } else {
        d = (terms.f(gammas(offset(l, 1, m, 1)), l, m) - terms.f(gammas(offset(l, 1, m, -1)), l, m) -
             terms.f(gammas(offset(l, -1, m, 1)), l, m) + terms.f(gammas(offset(l, -1, m, -1)), l, m)) /
            (4.0 * h * h);
      }
      sum += d;
      r.scale += std::abs(d);
    }
  r.diff = std::abs(alg - sum);
  return r;
}

}  // namespace

PdeResidualReport pde_residual(const std::vector<PhasePoint>& base, const PdeInput& in, double step, FlowTolerance tol) {
  if (base.empty()) throw std::invalid_argument("pde_residual needs at least one base point");
  const int n = base.front().n();
  if (in.kind == PdeKind::WEI && n != 2) throw std::invalid_argument("WEI applies to n = 2");
  if (in.kind == PdeKind::C && n < 3) throw std::invalid_argument("C needs n >= 3");
  PdeResidualReport rep;
  rep.kind = in.kind;
  rep.step = 0.5 * step;
  double coarse = 0.0, fine = 0.0;
  for (const auto& x : base) {
    const PdeTerms terms(in, conserved_poly(build_monodromy(x)));
    const StencilResult c = stencil_residual(x, terms, step, tol);
    const StencilResult f = stencil_residual(x, terms, 0.5 * step, tol);
    coarse = std::max(coarse, c.diff / std::max(1.0, c.scale));
    fine = std::max(fine, f.diff / std::max(1.0, f.scale));
  }
  rep.residual_coarse = coarse;
  rep.residual = fine;
  rep.order = (coarse > 0 && fine > 0) ? std::log2(coarse / fine) : 0.0;
  return rep;
}

}  // namespace toda
