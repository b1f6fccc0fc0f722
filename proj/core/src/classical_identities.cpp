#include "toda/classical_identities.hpp"

#include <cmath>
#include <stdexcept>

namespace toda {

namespace {

RationalPoly to_rational_poly(const RealPoly& p) {
  return p.map<Rational>([](double v) { return to_rational(v); });
}

struct Weighted {
  const CycleGrid* grid;
  std::vector<std::complex<double>> phase;  // exp(i Phi_k) at nodes (1 if no phase)
};

Weighted weighted(const PeriodData& pd, int cycle, const std::vector<int>& k) {
  if (cycle < 1 || cycle > pd.genus) throw std::out_of_range("cycle index");
  Weighted w{&pd.grids[static_cast<std::size_t>(cycle - 1)], {}};
  const std::size_t n = w.grid->x.size();
  w.phase.assign(n, 1.0);
  if (!k.empty()) {
    const CyclePhase ph(*w.grid, omega_numerator(pd, k));
    for (std::size_t i = 0; i < n; ++i) w.phase[i] = std::polar(1.0, ph.values()[i]);
  }
  return w;
}

template <class F>
double single_residual(const Weighted& w, F&& f) {
  std::complex<double> acc = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < w.grid->x.size(); ++i) {
    const std::complex<double> v = w.grid->weight[i] * w.phase[i] * f(w.grid->x[i]);
    acc += v;
    scale += std::abs(v);
  }
  return scale > 0.0 ? std::abs(acc) / scale : 0.0;
}

template <class F>
double double_residual(const Weighted& w1, const Weighted& w2, F&& f) {
  std::complex<double> acc = 0.0;
  double scale = 0.0;
  for (std::size_t i = 0; i < w1.grid->x.size(); ++i) {
    const std::complex<double> a = w1.grid->weight[i] * w1.phase[i];
    for (std::size_t m = 0; m < w2.grid->x.size(); ++m) {
      const std::complex<double> v = a * w2.grid->weight[m] * w2.phase[m] * f(w1.grid->x[i], w2.grid->x[m]);
      acc += v;
      scale += std::abs(v);
    }
  }
  return scale > 0.0 ? std::abs(acc) / scale : 0.0;
}

}  // namespace

RealBiPoly c_t_numeric(const RealPoly& P) {
  return c_t(to_rational_poly(P)).map_coeffs<double>([](const Rational& v) { return static_cast<double>(v); });
}

Poly d_tk(const RealPoly& P, const RealPoly& L, const Poly& S) {
  const Poly Lc = to_complex(L);
  return to_complex(d_t(P, L)) - S * (Lc * S).antiderivative();
}

ComplexBiPoly c_tk(const RealPoly& P, const Poly& S) {
  const ComplexBiPoly ct = c_t_numeric(P).map_coeffs<std::complex<double>>(
      [](double v) { return std::complex<double>(v, 0.0); });
  const ComplexBiPoly w = antiderivative_x(divided_difference(S));
  const ComplexBiPoly sx = ComplexBiPoly::in_x(S);
  const ComplexBiPoly sy = ComplexBiPoly::in_y(S);
  return ct - sx * w + sy * w.swapped();
}

double prop_check_classical(const SpectralData& s, const PeriodData& pd, const ClassicalPropInput& in) {
  switch (in.kind) {
    case ClassicalProp::P1: {
      const RealPoly d = d_t(s.P, in.L);
      return single_residual(weighted(pd, in.cycle1, {}), [&](double x) { return d(x); });
    }
    case ClassicalProp::P2: {
      const RealBiPoly c = c_t_numeric(s.P);
      return double_residual(weighted(pd, in.cycle1, {}), weighted(pd, in.cycle2, {}),
                             [&](double x, double y) { return c(x, y); });
    }
    case ClassicalProp::P1p: {
      const Poly d = d_tk(s.P, in.L, s_tk(pd, in.k));
      return single_residual(weighted(pd, in.cycle1, in.k), [&](double x) { return d(std::complex<double>(x)); });
    }
    case ClassicalProp::P2p: {
      const ComplexBiPoly c = c_tk(s.P, s_tk(pd, in.k));
      return double_residual(weighted(pd, in.cycle1, in.k), weighted(pd, in.cycle2, in.k),
                             [&](double x, double y) { return c(std::complex<double>(x), std::complex<double>(y)); });
    }
    case ClassicalProp::P3p: {
      const Poly sp = s_tk(pd, in.k);
      return single_residual(weighted(pd, in.cycle1, in.k), [&](double x) { return sp(std::complex<double>(x)); });
    }
  }
  throw std::invalid_argument("unknown proposition kind");
}

double plain_form_residual(const PeriodData& pd, const RealPoly& L, int cycle) {
  return single_residual(weighted(pd, cycle, {}), [&](double x) { return L(x); });
}

}  // namespace toda
