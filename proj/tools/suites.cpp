#include "suites.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <random>
#include <stdexcept>

#include "toda/characters.hpp"
#include "toda/classical_identities.hpp"
#include "toda/difference.hpp"
#include "toda/dynamics.hpp"
#include "toda/lax.hpp"
#include "toda/matrix_elements.hpp"
#include "toda/quantum.hpp"
#include "toda/spectral.hpp"

namespace toda::suites {

namespace {

using json = nlohmann::ordered_json;

Check make(std::string identity, json inputs, double residual, double tol, Relation rel = Relation::Below) {
  Check c{std::move(identity), std::move(inputs), residual, tol, rel, false};
  switch (rel) {
    case Relation::Below: c.pass = residual < tol; break;
    case Relation::AtMost: c.pass = residual <= tol; break;
    case Relation::AtLeast: c.pass = residual >= tol; break;
    case Relation::Equal: c.pass = residual == tol; break;
  }
  return c;
}

PhasePoint random_point(std::mt19937& rng, int n) {
  std::normal_distribution<double> g(0.0, 1.0);
  PhasePoint x;
  for (int j = 0; j < n; ++j) {
    x.p.push_back(g(rng));
    x.q.push_back(0.7 * g(rng));
  }
  return x;
}

const PhasePoint kTwo{{0.6, -0.6}, {0.0, 0.4}};
const PhasePoint kThree{{0.5, -0.2, -0.3}, {0.0, 0.3, -0.1}};
const PhasePoint kFour{{0.4, -0.1, -0.5, 0.2}, {0.0, 0.2, 0.5, 0.1}};

SpectralData spectral_of(const PhasePoint& x) { return build_spectral(conserved_poly(build_monodromy(x))); }

std::vector<double> coeffs(const RealPoly& t) {
  std::vector<double> c;
  for (int k = 0; k <= t.degree(); ++k) c.push_back(t.coeff(k));
  return c;
}

double max_abs_diff(const PhasePoint& a, const PhasePoint& b) {
  double d = 0.0;
  for (std::size_t i = 0; i < a.p.size(); ++i) d = std::max({d, std::abs(a.p[i] - b.p[i]), std::abs(a.q[i] - b.q[i])});
  return d;
}

int mismatches(const QSeries& a, const QSeries& b) {
  int bad = 0;
  for (int k = 0; k <= std::min(a.order(), b.order()); ++k) bad += a[k] != b[k];
  return bad;
}

// Level whose Bohr-Sommerfeld energy is closest to E.
int level_near(double E, double hbar) {
  return static_cast<int>(std::lround(bs_action(-E) / (2.0 * std::numbers::pi * hbar) - 0.5));
}

struct SpectrumCache {
  std::map<double, std::vector<EigenPair>> by_hbar;
  const std::vector<EigenPair>& get(double hbar, int levels) {
    auto it = by_hbar.find(hbar);
    if (it == by_hbar.end() || static_cast<int>(it->second.size()) < levels)
      it = by_hbar.insert_or_assign(hbar, solve_relative_spectrum(hbar, levels)).first;
    return it->second;
  }
};

CRational random_crational(std::mt19937& rng) {
  std::uniform_int_distribution<int> num(-30, 30), den(1, 12);
  return {Rational(num(rng), den(rng)), Rational(num(rng), den(rng))};
}

ExactPoly random_monic(std::mt19937& rng, int degree) {
  std::vector<CRational> c;
  for (int k = 0; k < degree; ++k) c.push_back(random_crational(rng));
  c.emplace_back(1);
  return ExactPoly(std::move(c));
}

}  // namespace

const char* relation_symbol(Relation r) {
  switch (r) {
    case Relation::Below: return "<";
    case Relation::AtMost: return "<=";
    case Relation::AtLeast: return ">=";
    case Relation::Equal: return "==";
  }
  return "?";
}

std::vector<Check> structure(const SuiteOptions& o) {
  std::mt19937 rng(o.seed);
  std::vector<double> det(7, 0.0), t1(7, 0.0), t2(7, 0.0);
  std::vector<int> count(7, 0);
  for (int trial = 0; trial < 100; ++trial) {
    const int n = 2 + trial % 5;
    const PhasePoint x = random_point(rng, n);
    const MonodromyData m = build_monodromy(x);
    const RealPoly t = conserved_poly(m);
    double P = 0.0;
    for (double v : x.p) P += v;
    const double H = hamiltonian(x);
    det[n] = std::max(det[n], det_residual(m));
    t1[n] = std::max(t1[n], std::abs(t.coeff(n - 1) + P) / (1.0 + std::abs(P)));
    t2[n] = std::max(t2[n], std::abs(t.coeff(n - 2) - (0.5 * P * P - H)) / (1.0 + std::abs(H)));
    ++count[n];
  }
  std::vector<Check> out;
  for (int n = 2; n <= 6; ++n) {
    const json in{{"n", n}, {"points", count[n]}, {"seed", o.seed}};
    out.push_back(make("det M(lambda) = 1", in, det[n], 1e-12));
    out.push_back(make("t1 = -P", in, t1[n], 1e-12));
    out.push_back(make("t2 = P^2/2 - H", in, t2[n], 1e-12));
  }
  return out;
}

std::vector<Check> classical(const SuiteOptions& o) {
  const std::vector<RealPoly> curves{RealPoly({-3, 0, 1}), RealPoly({0, -7, 0, 1}), RealPoly({4, 0, -8, 0, 1})};
  std::vector<Check> out;
  for (const RealPoly& t : curves) {
    const SpectralData s = build_spectral(t);
    if (o.genus != 0 && s.genus != o.genus) continue;
    const PeriodData pd = period_matrix(s);
    double w1 = 0.0, w2 = 0.0;
    for (int j = 1; j <= s.genus; ++j) {
      for (int d = 0; d <= 3; ++d)
        w1 = std::max(w1, prop_check_classical(s, pd, {ClassicalProp::P1, RealPoly::monomial(d), {}, j, j}));
      for (int k = 1; k <= s.genus; ++k) w2 = std::max(w2, prop_check_classical(s, pd, {ClassicalProp::P2, {}, {}, j, k}));
    }
    const json in{{"t", coeffs(t)}, {"genus", s.genus}};
    out.push_back(make("Prop 1: exact forms integrate to zero (L degree <= 3)", in, w1, 1e-7));
    out.push_back(make("Prop 2: bilinear identity on a-cycles", in, w2, 1e-7));
    if (s.genus == 1)
      out.push_back(make("negative control: plain form does not vanish", in, plain_form_residual(pd, RealPoly({1.0}), 1),
                         1e-2, Relation::AtLeast));
    if (s.genus == 2) {
      double p1 = 0.0, p2 = 0.0, p3 = 0.0;
      for (int k1 = -2; k1 <= 2; ++k1)
        for (int k2 = -2; k2 <= 2; ++k2) {
          const std::vector<int> k{k1, k2};
          for (int j = 1; j <= 2; ++j) {
            for (int d = 0; d <= 3; ++d)
              p1 = std::max(p1, prop_check_classical(s, pd, {ClassicalProp::P1p, RealPoly::monomial(d), k, j, j}));
            p3 = std::max(p3, prop_check_classical(s, pd, {ClassicalProp::P3p, {}, k, j, j}));
            for (int jj = 1; jj <= 2; ++jj) p2 = std::max(p2, prop_check_classical(s, pd, {ClassicalProp::P2p, {}, k, j, jj}));
          }
        }
      json kin = in;
      kin["k_range"] = {-2, 2};
      out.push_back(make("Prop 1': phased exact forms", kin, p1, 1e-7));
      out.push_back(make("Prop 2': phased bilinear identity", kin, p2, 1e-7));
      out.push_back(make("Prop 3': phased difference identity", kin, p3, 1e-7));
    }
  }
  return out;
}

std::vector<Check> dynamics(const SuiteOptions&) {
  std::vector<Check> out;
  double cons = 0.0;
  for (const PhasePoint* x : {&kTwo, &kThree, &kFour})
    for (int l = 0; l < x->n(); ++l) cons = std::max(cons, conservation_error(hamiltonian_flow(*x, l, 6.0, 60)));
  out.push_back(make("conservation of t_1..t_n along every flow", json{{"n", {2, 3, 4}}, {"duration", 6.0}}, cons, 1e-9));

  {
    const SpectralData s = spectral_of(kTwo);
    const PeriodData pd = period_matrix(s);
    const EmReport r = em_residual(hamiltonian_flow(kTwo, 1, pd.raw(0, 0), 24));
    const json in{{"n", 2}, {"flow", 1}};
    out.push_back(make("SoV equations of motion residual", in, r.residual_fine, 1e-5));
    out.push_back(make("SoV equations of motion convergence order", in, r.order, 1.8, Relation::AtLeast));
  }
  for (int l = 1; l <= 2; ++l) {
    const EmReport r = em_residual(hamiltonian_flow(kThree, l, 4.0, 16));
    const json in{{"n", 3}, {"flow", l}};
    out.push_back(make("SoV equations of motion residual", in, r.residual_fine, 1e-5));
    out.push_back(make("SoV equations of motion convergence order", in, r.order, 1.8, Relation::AtLeast));
  }

  double drift = 0.0;
  {
    const SpectralData s = spectral_of(kTwo);
    const PeriodData pd = period_matrix(s);
    drift = std::max(drift, abel_linearization(hamiltonian_flow(kTwo, 1, 2.0 * pd.raw(0, 0), 80), s, pd).drift);
  }
  {
    const SpectralData s = spectral_of(kThree);
    const PeriodData pd = period_matrix(s);
    for (int l = 0; l <= 2; ++l) drift = std::max(drift, abel_linearization(hamiltonian_flow(kThree, l, 5.0, 100), s, pd).drift);
  }
  {
    const SpectralData s = spectral_of(kFour);
    const PeriodData pd = period_matrix(s);
    drift = std::max(drift, abel_linearization(hamiltonian_flow(kFour, 2, 4.0, 60), s, pd).drift);
  }
  out.push_back(make("Abel map linearizes every flow", json{{"genus", {1, 2, 3}}}, drift, 1e-5));

  double comm = 0.0;
  for (const PhasePoint* x : {&kThree, &kFour}) {
    const int n = x->n();
    for (int l = 1; l < n; ++l)
      for (int m = l + 1; m < n; ++m) {
        const PhasePoint lm = evolve_flow(evolve_flow(*x, l, 0.7), m, -0.9);
        const PhasePoint ml = evolve_flow(evolve_flow(*x, m, -0.9), l, 0.7);
        comm = std::max(comm, max_abs_diff(lm, ml));
      }
  }
  out.push_back(make("flows commute", json{{"n", {3, 4}}, {"times", {0.7, -0.9}}}, comm, 1e-7));
  return out;
}

std::vector<Check> pde(const SuiteOptions&) {
  std::vector<Check> out;
  const PeriodData pd = period_matrix(spectral_of(kTwo));
  const Trajectory two = hamiltonian_flow(kTwo, 1, pd.raw(0, 0), 6);
  for (int p = 0; p <= 2; ++p) {
    PdeInput in;
    in.kind = PdeKind::WEI;
    in.p = p;
    const PdeResidualReport r = pde_residual(two.points, in, 0.01);
    const json j{{"kind", "wei"}, {"n", 2}, {"p", p}, {"step", r.step}};
    out.push_back(make("Weierstrass-type PDE residual", j, r.residual, 1e-4));
    out.push_back(make("Weierstrass-type PDE Richardson order", j, r.order, 1.8, Relation::AtLeast));
  }
  {
    PdeInput in;
    in.kind = PdeKind::Q;
    in.G = [](const std::vector<double>& g) { return g[0] * g[0]; };
    const PdeResidualReport r = pde_residual(hamiltonian_flow(kThree, 2, 3.0, 3).points, in, 0.02);
    const json j{{"kind", "Q"}, {"n", 3}, {"G", "gamma^2"}, {"step", r.step}};
    out.push_back(make("Q-type PDE residual", j, r.residual, 1e-4));
    out.push_back(make("Q-type PDE Richardson order", j, r.order, 1.8, Relation::AtLeast));
  }
  {
    PdeInput in;
    in.kind = PdeKind::C;
    const PdeResidualReport r = pde_residual(hamiltonian_flow(kFour, 1, 2.0, 2).points, in, 0.02);
    const json j{{"kind", "C"}, {"n", 4}, {"step", r.step}};
    out.push_back(make("C-type PDE residual", j, r.residual, 1e-4));
    out.push_back(make("C-type PDE Richardson order", j, r.order, 1.8, Relation::AtLeast));
  }
  {
    PdeInput in;
    in.kind = PdeKind::EXFO;
    in.L = RealPoly({0.5, -1.0, 2.0});
    in.G = [](const std::vector<double>& g) { return 1.0 + g[0] * g[0]; };
    const PdeResidualReport r = pde_residual(hamiltonian_flow(kThree, 1, 3.0, 3).points, in, 0.01);
    const json j{{"kind", "exfo"}, {"n", 3}, {"L", {0.5, -1.0, 2.0}}, {"step", r.step}};
    out.push_back(make("exact-form PDE residual", j, r.residual, 1e-4));
  }
  return out;
}

std::vector<Check> characters(const SuiteOptions& o) {
  std::vector<Check> out;
  for (int n = 2; n <= 6; ++n) {
    const QSeries prod = character_product(n, o.order).chi;
    const json in{{"n", n}, {"order", o.order}};
    out.push_back(make("product form = binomial form (mismatched coefficients)", in,
                       mismatches(prod, character_binomial(n, o.order).chi), 0.0, Relation::Equal));
    out.push_back(make("product form = alternating-sum form (mismatched coefficients)", in,
                       mismatches(prod, character_resolution(n, o.order)), 0.0, Relation::Equal));
  }
  const QSeries two = character_product(2, o.order).chi;
  const json in{{"n", 2}, {"order", o.order}};
  out.push_back(make("n = 2 unsimplified closed form (mismatched coefficients)", in,
                     mismatches(two, character_two_unsimplified(o.order)), 0.0, Relation::Equal));
  out.push_back(make("n = 2 equals (1/[2]!)(1 + q^2) (mismatched coefficients)", in,
                     mismatches(two, character_two_simplified(o.order)), 0.0, Relation::Equal));
  return out;
}

std::vector<Check> quantum(const SuiteOptions& o) {
  std::vector<Check> out;
  for (double hbar : o.hbars) {
    const std::vector<EigenPair> s = solve_relative_spectrum(hbar, 6);
    std::vector<QFunction> q;
    double res = 0.0;
    for (const auto& p : s) {
      q.emplace_back(p);
      res = std::max(res, baxter_residual(q.back()));
    }
    const json in{{"hbar", hbar}, {"levels", 6}};
    out.push_back(make("Baxter TQ residual", in, res, 1e-6));

    double orth = 0.0;
    for (int a = 0; a < 5; ++a)
      for (int b = a + 1; b < 5; ++b) orth = std::max(orth, orthogonality(q[a], q[b]));
    out.push_back(make("orthogonality of distinct levels", json{{"hbar", hbar}, {"levels", 5}}, orth, 1e-6));

    double p1 = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int d = 0; d <= 3; ++d) {
        QuantumPropInput qi;
        qi.L = RealPoly::monomial(d);
        p1 = std::max(p1, quantum_prop_check(q[a], q[a + 1], qi));
      }
    out.push_back(make("Prop 1'': exact forms integrate to zero (k = 1, L degree <= 3)",
                       json{{"hbar", hbar}, {"pairs", {{0, 1}, {1, 2}, {2, 3}}}}, p1, 1e-6));

    std::mt19937 rng(o.seed);
    std::uniform_real_distribution<double> U(-1.0, 1.0);
    std::vector<std::complex<double>> c(6);
    for (auto& v : c) v = {U(rng), U(rng)};
    out.push_back(make("negative control: random polynomial does not vanish",
                       json{{"hbar", hbar}, {"seed", o.seed}, {"degree", 5}},
                       quantum_form_residual(q[0], q[1], Poly(c)), 1e-2, Relation::AtLeast));

    double shift = 0.0;
    for (int a = 0; a < 3; ++a)
      for (int b = a; b < 3; ++b) shift = std::max(shift, contour_shift_check(q[a], q[b]));
    out.push_back(make("contour shift under the i hbar periodic weight", json{{"hbar", hbar}, {"levels", 3}}, shift, 1e-7));
  }
  return out;
}

std::vector<Check> quasiclassical(const SuiteOptions&) {
  std::vector<Check> out;
  SpectrumCache cache;

  {
    const int nj = 3;
    const double e1 = std::abs(-bs_quantize(0.5, nj) - cache.get(0.5, nj + 1)[nj].E);
    const double e2 = std::abs(-bs_quantize(0.25, nj) - cache.get(0.25, nj + 1)[nj].E);
    const json in{{"nj", nj}, {"hbar", {0.5, 0.25}}, {"errors", {e1, e2}}};
    out.push_back(make("Bohr-Sommerfeld error ratio under hbar halving (lower)", in, e1 / e2, 2.5, Relation::AtLeast));
    out.push_back(make("Bohr-Sommerfeld error ratio under hbar halving (upper)", in, e1 / e2, 6.0, Relation::AtMost));
  }
  {
    const auto& s = cache.get(0.1, 7);
    const double spacing = s[6].E - s[5].E;
    const double predicted = 0.1 * std::abs(classical_frequency(-s[5].E));
    out.push_back(make("level spacing vs hbar A_11", json{{"hbar", 0.1}, {"m", 5}},
                       std::abs(spacing - predicted) / predicted, 0.05));
  }

  const double E = 6.0;
  const RealPoly F({0.0, 1.0});
  double dev[2];
  int zeros[2];
  const double hbars[2] = {0.2, 0.1};
  for (int i = 0; i < 2; ++i) {
    const int m = level_near(E, hbars[i]);
    const auto& s = cache.get(hbars[i], m + 2);
    dev[i] = close_state_compare(s[m], s[m + 1], F).deviation;
    zeros[i] = static_cast<int>(q_zeros(QFunction(s[m]), -std::sqrt(E - 2.0), std::sqrt(E - 2.0)).size());
  }
  out.push_back(make("close-state deviation shrink factor", json{{"F", "b1"}, {"E", E}, {"hbar", {0.2, 0.1}},
                                                                 {"deviations", {dev[0], dev[1]}}},
                     dev[0] / dev[1], 1.5, Relation::AtLeast));
  out.push_back(make("zone zero count doubles (|c2 - 2 c1|)", json{{"E", E}, {"hbar", {0.2, 0.1}}, {"counts", {zeros[0], zeros[1]}}},
                     std::abs(zeros[1] - 2 * zeros[0]), 1.0, Relation::AtMost));

  {
    const double hbar = 0.15;
    const int m = level_near(E, hbar);
    const ZoneZeroReport r = compare_zone_zeros(QFunction(cache.get(hbar, m + 1)[m]));
    out.push_back(make("zone zeros vs phase condition (offset / spacing)",
                       json{{"hbar", hbar}, {"m", m}, {"exact", r.exact_count}, {"predicted", r.predicted_count}},
                       r.exact_count == r.predicted_count ? r.max_offset : 1.0, 0.2));
  }
  {
    const double hbar = 0.05;
    const int m = level_near(4.0, hbar);
    const auto& s = cache.get(hbar, m + 2);
    out.push_back(make("deformed bilinear form vs classical S_{t,k}", json{{"hbar", hbar}, {"m", m}, {"k", 1}},
                       deformation_error(s[m], s[m + 1]), 0.10));
  }
  return out;
}

std::vector<Check> exactness(const SuiteOptions& o) {
  std::vector<Check> out;
  std::mt19937 rng(o.seed);
  const CRational hbars[] = {CRational(1), CRational(Rational(1, 2)), CRational(Rational(3, 7))};
  int bad = 0, cases = 0;
  for (const CRational& h : hbars)
    for (int d = 0; d <= 12; ++d) {
      std::vector<CRational> c;
      for (int k = 0; k <= d; ++k) c.push_back(random_crational(rng));
      const ExactPoly L(std::move(c));
      bad += !(delta(delta_inverse(L, h), h) == L);
      ++cases;
    }
  out.push_back(make("delta(delta^-1(L)) = L (failures)", json{{"degrees", {0, 12}}, {"cases", cases}, {"seed", o.seed}},
                     bad, 0.0, Relation::Equal));

  int asym = 0, sq = 0;
  for (int trial = 0; trial < 12; ++trial) {
    const int n = 2 + trial % 3;
    const CRational& h = hbars[trial % 3];
    const ExactPoly t = random_monic(rng, n), tp = random_monic(rng, n);
    const ExactBiPoly C = quantum_bilinear(t, tp, h);
    asym += !(C + C.swapped()).is_zero();
    sq += !build_quantum_identity_polys(t, t, h).Sq.is_zero();
  }
  out.push_back(make("C_{t,t'} antisymmetric (failures)", json{{"trials", 12}, {"n", {2, 4}}}, asym, 0.0, Relation::Equal));
  out.push_back(make("S = 0 at t = t' (failures)", json{{"trials", 12}, {"n", {2, 4}}}, sq, 0.0, Relation::Equal));
  return out;
}

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"structure", "classical", "dynamics",       "pde",
                                              "characters", "quantum", "quasiclassical", "exactness"};
  return names;
}

std::vector<Check> run(const std::string& name, const SuiteOptions& o) {
  if (name == "structure") return structure(o);
  if (name == "classical") return classical(o);
  if (name == "dynamics") return dynamics(o);
  if (name == "pde") return pde(o);
  if (name == "characters") return characters(o);
  if (name == "quantum") return quantum(o);
  if (name == "quasiclassical") return quasiclassical(o);
  if (name == "exactness") return exactness(o);
  throw std::invalid_argument("unknown suite: " + name);
}

bool all_pass(const std::vector<Check>& checks) {
  for (const Check& c : checks)
    if (!c.pass) return false;
  return true;
}

nlohmann::ordered_json to_json(const Check& c) {
  return json{{"identity", c.identity},   {"inputs", c.inputs}, {"residual", c.residual},
              {"tolerance", c.tolerance}, {"relation", relation_symbol(c.relation)}, {"pass", c.pass}};
}

}  // namespace toda::suites
