// Command-line front end: one subcommand per computation, JSON/CSV results, and a run
// manifest next to every result file.

#include <CLI11.hpp>
#include <Eigen/Core>
#include <boost/version.hpp>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "cli_support.hpp"
#include "suites.hpp"
#include "toda/characters.hpp"
#include "toda/dynamics.hpp"
#include "toda/errors.hpp"
#include "toda/matrix_elements.hpp"
#include "toda/quantum.hpp"
#include "toda/spectral.hpp"

namespace {

using json = nlohmann::ordered_json;
using toda::cli::UsageError;

constexpr const char* kVersion = "0.1.0";

// An output target that may be a file or standard output ("-" or empty value).
struct Output {
  CLI::Option* opt = nullptr;
  std::string path;
  bool requested() const { return opt && opt->count() > 0; }
  bool to_stdout() const { return requested() && (path.empty() || path == "-"); }
  bool to_file() const { return requested() && !to_stdout(); }
};

struct Common {
  std::string config;
  std::string manifest;
};

struct Run {
  std::string command;
  CLI::App* sub = nullptr;
  json tolerances = json::object();
  json summary = json::object();
  int workers = 1;
};

Output add_output(CLI::App* sub, const std::string& name, const std::string& what) {
  Output o;
  o.opt = sub->add_option("--" + name, o.path, what + " (no value: standard output)")->expected(0, 1);
  return o;
}

// Human-readable text goes to stderr when machine output occupies stdout.
std::ostream& text(const Output& o) { return o.to_stdout() ? std::cerr : std::cout; }

void emit(const Output& o, const std::string& content) {
  if (o.to_stdout()) {
    std::cout << content;
  } else if (o.to_file()) {
    std::ofstream f(o.path);
    if (!f) throw UsageError("cannot write '" + o.path + "'");
    f << content;
  }
}

json resolved_params(const CLI::App* sub) {
  json p = json::object();
  for (const CLI::Option* opt : sub->get_options()) {
    const std::string name = opt->get_single_name();
    if (name.empty() || name == "help" || name == "config" || name == "manifest") continue;
    std::string value;
    if (opt->count() > 0) {
      const auto& r = opt->results();
      value = r.empty() || r.back().empty() ? "-" : r.back();
    } else {
      value = opt->get_default_str();
      if (value.empty()) continue;
    }
    p[name] = value;
  }
  return p;
}

void write_manifest(const Run& run, const std::string& path, double seconds) {
  json m;
  m["command"] = run.command;
  m["params"] = resolved_params(run.sub);
  m["tolerances"] = run.tolerances;
  json seeds = json::object();
  if (m["params"].contains("seed")) seeds["seed"] = m["params"]["seed"];
  m["seeds"] = seeds;
  m["versions"] = {{"toda", kVersion},
                   {"compiler", __VERSION__},
                   {"eigen", std::to_string(EIGEN_WORLD_VERSION) + "." + std::to_string(EIGEN_MAJOR_VERSION) + "." +
                                 std::to_string(EIGEN_MINOR_VERSION)},
                   {"boost", BOOST_LIB_VERSION},
                   {"cli11", CLI11_VERSION},
                   {"json", std::to_string(NLOHMANN_JSON_VERSION_MAJOR) + "." + std::to_string(NLOHMANN_JSON_VERSION_MINOR) +
                                "." + std::to_string(NLOHMANN_JSON_VERSION_PATCH)}};
  m["workers"] = run.workers;
  m["wall_clock_seconds"] = seconds;
  m["summary"] = run.summary;
  std::ofstream f(path);
  if (!f) throw UsageError("cannot write manifest '" + path + "'");
  f << toda::cli::format_json(m);
}

json poly_json(const toda::RealPoly& p) {
  json a = json::array();
  for (int k = 0; k <= p.degree(); ++k) a.push_back(p.coeff(k));
  return a;
}

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json r = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) r.push_back(m(i, j));
    rows.push_back(r);
  }
  return rows;
}

json complex_json(std::complex<double> z) { return json::array({z.real(), z.imag()}); }

const char* gauge_name(toda::QGauge g) {
  switch (g) {
    case toda::QGauge::Plain: return "plain";
    case toda::QGauge::Rotated: return "rotated";
    case toda::QGauge::Exponential: return "exponential";
  }
  return "?";
}

std::string series_text(const toda::QSeries& s) {
  std::ostringstream os;
  os << s;
  return os.str();
}

json series_json(const toda::QSeries& s) {
  json a = json::array();
  for (int k = 0; k <= s.order(); ++k) a.push_back(s[k].str());
  return a;
}

toda::SymmetricFunction as_function(const toda::MultiPoly<std::complex<double>>& F) {
  return [F](const std::vector<double>& g) {
    std::vector<std::complex<double>> z(g.begin(), g.end());
    return F(z);
  };
}

toda::PhasePoint read_phase(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw UsageError("cannot open phase point '" + path + "'");
  json j;
  try {
    j = json::parse(f);
  } catch (const json::parse_error& e) {
    throw UsageError(std::string("phase point: ") + e.what());
  }
  if (!j.contains("p") || !j.contains("q")) throw UsageError("phase point needs \"p\" and \"q\" arrays");
  toda::PhasePoint x{j["p"].get<std::vector<double>>(), j["q"].get<std::vector<double>>()};
  return x;
}

// Looks for --config in the arguments after the subcommand and splices its entries in
// front of the command-line arguments, so that later (command-line) values win.
std::vector<std::string> expand_config(CLI::App& app, const std::vector<std::string>& args) {
  if (args.size() < 2) return args;
  CLI::App* sub = nullptr;
  try {
    sub = app.get_subcommand(args[1]);
  } catch (const CLI::OptionNotFound&) {
    return args;
  }
  std::string path;
  for (std::size_t i = 2; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) path = args[i + 1];
    else if (args[i].rfind("--config=", 0) == 0) path = args[i].substr(9);
  }
  if (path.empty()) return args;
  std::vector<std::string> out{args[0], args[1]};
  for (const auto& e : toda::cli::load_config(path)) {
    if (e.key == "config" || e.key == "manifest") continue;
    if (!sub->get_option_no_throw("--" + e.key))
      throw UsageError("config line " + std::to_string(e.line) + ": unknown key '" + e.key + "' for " + args[1]);
    out.push_back("--" + e.key + "=" + e.value);
  }
  out.insert(out.end(), args.begin() + 2, args.end());
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Periodic Toda chain: classical spectral geometry, exact n = 2 quantization, identity suites"};
  app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast)->always_capture_default();
  app.require_subcommand(1);
  app.set_version_flag("--version", kVersion);

  Common common;
  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", common.config, "key=value file or a run manifest (.json); command-line flags win");
    sub->add_option("--manifest", common.manifest, "run manifest path (default: next to the result file)");
  };

  // periods
  auto* periods = app.add_subcommand("periods", "branch points, period matrix, actions of a spectral curve");
  std::string p_t;
  int p_points = 0;
  periods->add_option("--t", p_t, "coefficients of t(lambda), constant term first")->required();
  periods->add_option("--points", p_points, "nodes per cycle (0: automatic)");
  Output p_json = add_output(periods, "json", "JSON result");
  add_common(periods);

  // evolve
  auto* evolve = app.add_subcommand("evolve", "integrate the flow generated by t_{l+1}");
  std::string e_phase, e_p, e_q;
  int e_flow = 1, e_samples = 100;
  double e_duration = 0.0, e_periods = 0.0, e_tol = 1e-11;
  evolve->add_option("--phase", e_phase, "JSON file with \"p\" and \"q\" arrays");
  evolve->add_option("--p", e_p, "momenta, comma separated");
  evolve->add_option("--q", e_q, "coordinates, comma separated");
  evolve->add_option("--flow", e_flow, "flow index l (generated by t_{l+1})");
  auto* e_dur_opt = evolve->add_option("--duration", e_duration, "flow time");
  auto* e_per_opt = evolve->add_option("--periods", e_periods, "flow time in periods of the first angle");
  evolve->add_option("--samples", e_samples, "output samples")->check(CLI::PositiveNumber);
  evolve->add_option("--tolerance", e_tol, "integrator tolerance")->check(CLI::PositiveNumber);
  Output e_csv = add_output(evolve, "csv", "CSV trajectory");
  add_common(evolve);

  // quantize-bs
  auto* qbs = app.add_subcommand("quantize-bs", "Bohr-Sommerfeld levels of the two-site chain");
  double b_hbar = 1.0;
  int b_levels = 6;
  qbs->add_option("--hbar", b_hbar)->check(CLI::PositiveNumber);
  qbs->add_option("--levels", b_levels)->check(CLI::Range(1, 200));
  Output b_json = add_output(qbs, "json", "JSON result");
  add_common(qbs);

  // quantize-exact
  auto* qex = app.add_subcommand("quantize-exact", "exact spectrum and t(lambda) of the two-site chain");
  double x_hbar = 1.0;
  int x_levels = 6;
  qex->add_option("--hbar", x_hbar)->check(CLI::PositiveNumber);
  qex->add_option("--levels", x_levels)->check(CLI::Range(1, 64));
  Output x_json = add_output(qex, "json", "JSON result");
  add_common(qex);

  // qfunction
  auto* qfn = app.add_subcommand("qfunction", "Baxter Q-function of one level on a grid");
  double f_hbar = 1.0, f_imag = 0.0;
  int f_level = 0;
  std::string f_grid = "-10:10:0.01";
  qfn->add_option("--hbar", f_hbar)->check(CLI::PositiveNumber);
  qfn->add_option("--level", f_level)->check(CLI::Range(0, 63));
  qfn->add_option("--grid", f_grid, "a:b:step along Re gamma");
  qfn->add_option("--imag", f_imag, "fixed Im gamma");
  Output f_csv = add_output(qfn, "csv", "CSV values");
  add_common(qfn);

  // matrix-element
  auto* mel = app.add_subcommand("matrix-element", "<m|F|m'> for the two-site chain");
  double m_hbar = 0.5;
  std::string m_levels = "0,1", m_poly = "1";
  mel->add_option("--hbar", m_hbar)->check(CLI::PositiveNumber);
  mel->add_option("--levels", m_levels, "two levels, comma separated");
  mel->add_option("--poly", m_poly, "F: coefficient list in b1 or an expression in b1");
  Output m_json = add_output(mel, "json", "JSON result");
  add_common(mel);

  // verify-identities
  auto* ver = app.add_subcommand("verify-identities", "run an identity suite and report residuals");
  std::string v_suite = "all", v_hbar = "1.0,0.5";
  int v_genus = 0, v_order = 40;
  unsigned v_seed = 2024;
  std::string v_report;
  std::vector<std::string> suite_choices = toda::suites::suite_names();
  suite_choices.push_back("all");
  ver->add_option("--suite", v_suite)->check(CLI::IsMember(suite_choices));
  ver->add_option("--hbar", v_hbar, "quantum suite hbar values, comma separated");
  ver->add_option("--genus", v_genus, "classical suite genus (0: all)")->check(CLI::Range(0, 3));
  ver->add_option("--order", v_order, "character suite order")->check(CLI::Range(1, 200));
  ver->add_option("--seed", v_seed);
  ver->add_option("--report", v_report, "JSON report path");
  add_common(ver);

  // characters
  auto* chr = app.add_subcommand("characters", "graded characters up to q^order");
  int c_n = 2, c_order = 40;
  chr->add_option("--n", c_n)->check(CLI::Range(2, 12));
  chr->add_option("--order", c_order)->check(CLI::Range(1, 400));
  Output c_json = add_output(chr, "json", "JSON result");
  add_common(chr);

  // fourier
  auto* fou = app.add_subcommand("fourier", "Fourier coefficient of F on the Liouville torus of a curve");
  std::string o_t, o_k, o_poly = "1";
  int o_points = 0;
  fou->add_option("--t", o_t, "coefficients of t(lambda), constant term first")->required();
  fou->add_option("--k", o_k, "mode vector, comma separated (default zeros)");
  fou->add_option("--poly", o_poly, "F: expression in b1..b_g or a coefficient list in b1");
  fou->add_option("--points", o_points, "nodes per cycle (0: automatic)");
  Output o_json = add_output(fou, "json", "JSON result");
  add_common(fou);

  std::vector<std::string> args(argv, argv + argc);
  try {
    args = expand_config(app, args);
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  }
  std::vector<char*> cargs;
  for (auto& a : args) cargs.push_back(a.data());
  try {
    app.parse(static_cast<int>(cargs.size()), cargs.data());
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  Run run;
  run.workers = toda::cli::worker_count();
  const auto t0 = std::chrono::steady_clock::now();
  int status = 0;
  std::string result_path;

  try {
    if (periods->parsed()) {
      run.command = "periods";
      run.sub = periods;
      const toda::RealPoly t(toda::cli::parse_coefficients(p_t));
      const toda::SpectralData s = toda::build_spectral(t);
      const toda::PeriodData pd = toda::period_matrix(s, p_points);
      const std::vector<double> J = toda::classical_actions(s);
      json out{{"t", poly_json(t)}, {"genus", s.genus}, {"branch", s.branch}, {"points", pd.points},
               {"rawPeriods", matrix_json(pd.raw)}, {"A", matrix_json(pd.A)}, {"J", J}};
      std::ostream& os = text(p_json);
      os << "genus " << s.genus << ", " << pd.points << " nodes per cycle\nbranch points:";
      for (double b : s.branch) os << " " << b;
      os << "\nA =\n" << pd.A << "\nJ =";
      for (double j : J) os << " " << j;
      os << "\n";
      emit(p_json, toda::cli::format_json(out));
      if (p_json.to_file()) result_path = p_json.path;
    } else if (evolve->parsed()) {
      run.command = "evolve";
      run.sub = evolve;
      toda::PhasePoint x;
      if (!e_phase.empty()) x = read_phase(e_phase);
      else if (!e_p.empty() && !e_q.empty()) x = {toda::cli::parse_coefficients(e_p), toda::cli::parse_coefficients(e_q)};
      else throw UsageError("evolve needs --phase or both --p and --q");
      try {
        x.validate();
      } catch (const std::invalid_argument& e) {
        throw UsageError(e.what());
      }
      const int n = x.n();
      if (e_flow < 0 || e_flow >= n) throw UsageError("flow index must lie in 0.." + std::to_string(n - 1));
      if ((e_dur_opt->count() > 0) == (e_per_opt->count() > 0)) throw UsageError("give exactly one of --duration and --periods");
      const toda::SpectralData s = toda::build_spectral(toda::conserved_poly(toda::build_monodromy(x)));
      double duration = e_duration;
      if (e_per_opt->count() > 0) {
        const toda::PeriodData pd = toda::period_matrix(s);
        const int col = n - 1 - e_flow;
        if (col >= s.genus || std::abs(pd.A(0, col)) < 1e-300)
          throw UsageError("flow " + std::to_string(e_flow) + " does not advance the first angle; use --duration");
        duration = e_periods * 2.0 * std::numbers::pi / std::abs(pd.A(0, col));
      }
      const toda::Trajectory tr = toda::hamiltonian_flow(x, e_flow, duration, e_samples, {e_tol, e_tol});
      std::ostringstream csv;
      csv.precision(17);
      csv << "tau";
      for (int i = 1; i <= n; ++i) csv << ",p_" << i;
      for (int i = 1; i <= n; ++i) csv << ",q_" << i;
      const std::size_t g = tr.sov.front().gamma.size();
      for (std::size_t j = 1; j <= g; ++j) csv << ",gamma_" << j;
      for (std::size_t j = 1; j <= g; ++j) csv << ",Lambda_" << j;
      for (int k = 1; k <= n; ++k) csv << ",t_" << k;
      csv << "\n";
      for (std::size_t i = 0; i < tr.tau.size(); ++i) {
        csv << tr.tau[i];
        for (double v : tr.points[i].p) csv << "," << v;
        for (double v : tr.points[i].q) csv << "," << v;
        for (double v : tr.sov[i].gamma) csv << "," << v;
        for (double v : tr.sov[i].Lambda) csv << "," << v;
        for (int k = 1; k <= n; ++k) csv << "," << tr.t[i].coeff(n - k);
        csv << "\n";
      }
      const double cons = toda::conservation_error(tr);
      run.tolerances = {{"integrator", e_tol}};
      run.summary = {{"conservation_error", cons}};
      text(e_csv) << "flow " << e_flow << " for tau = " << duration << ", " << tr.tau.size()
                  << " samples, conservation error " << cons << "\n";
      emit(e_csv, csv.str());
      if (e_csv.to_file()) result_path = e_csv.path;
    } else if (qbs->parsed()) {
      run.command = "quantize-bs";
      run.sub = qbs;
      json levels = json::array();
      std::ostream& os = text(b_json);
      for (int nj = 0; nj < b_levels; ++nj) {
        const double t2 = toda::bs_quantize(b_hbar, nj);
        levels.push_back({{"nj", nj}, {"t2", t2}, {"E", -t2}});
        os << "nj " << nj << "  t2 " << t2 << "\n";
      }
      emit(b_json, toda::cli::format_json(json{{"hbar", b_hbar}, {"levels", levels}}));
      if (b_json.to_file()) result_path = b_json.path;
    } else if (qex->parsed()) {
      run.command = "quantize-exact";
      run.sub = qex;
      const auto s = toda::solve_relative_spectrum(x_hbar, x_levels);
      json levels = json::array();
      std::ostream& os = text(x_json);
      double worst = 0.0;
      for (const auto& p : s) {
        levels.push_back({{"level", p.level}, {"E", p.E}, {"t", poly_json(p.t)}, {"parity", p.parity},
                          {"t2_sign", p.t2_sign}, {"gauge", gauge_name(p.gauge)}, {"baxter_residual", p.residual}});
        worst = std::max(worst, p.residual);
        os << "level " << p.level << "  E " << p.E << "  parity " << (p.parity > 0 ? "+" : "-") << "  residual "
           << p.residual << "\n";
      }
      run.tolerances = {{"baxter_residual", 1e-6}, {"resolution", 1e-8}};
      run.summary = {{"max_baxter_residual", worst}};
      emit(x_json, toda::cli::format_json(json{{"hbar", x_hbar}, {"levels", levels}}));
      if (x_json.to_file()) result_path = x_json.path;
    } else if (qfn->parsed()) {
      run.command = "qfunction";
      run.sub = qfn;
      const std::vector<double> grid = toda::cli::parse_grid(f_grid);
      const auto s = toda::solve_relative_spectrum(f_hbar, f_level + 1);
      const toda::QFunction q(s[static_cast<std::size_t>(f_level)]);
      if (std::abs(f_imag) > q.im_cap()) throw UsageError("|imag| exceeds the evaluation cap " + std::to_string(q.im_cap()));
      std::vector<toda::ScaledComplex> vals(grid.size());
      toda::cli::parallel_for(static_cast<int>(grid.size()), run.workers, [&](int i) {
        vals[static_cast<std::size_t>(i)] = q.scaled({grid[static_cast<std::size_t>(i)], f_imag});
      });
      std::ostringstream csv;
      csv.precision(17);
      csv << "gamma_re,gamma_im,q_re,q_im,log_abs,phase\n";
      for (std::size_t i = 0; i < grid.size(); ++i) {
        const std::complex<double> v = vals[i].value();
        csv << grid[i] << "," << f_imag << "," << v.real() << "," << v.imag() << "," << vals[i].log_scale << ","
            << std::arg(vals[i].mantissa) << "\n";
      }
      text(f_csv) << "level " << f_level << " (E = " << q.pair().E << "), " << grid.size() << " points, residual "
                  << q.pair().residual << "\n";
      emit(f_csv, csv.str());
      if (f_csv.to_file()) result_path = f_csv.path;
    } else if (mel->parsed()) {
      run.command = "matrix-element";
      run.sub = mel;
      const std::vector<int> lv = toda::cli::parse_int_list(m_levels);
      if (lv.size() != 2 || lv[0] < 0 || lv[1] < 0) throw UsageError("--levels needs two non-negative levels");
      const auto F = toda::cli::parse_symmetric_poly(m_poly, 1);
      const auto s = toda::solve_relative_spectrum(m_hbar, std::max(lv[0], lv[1]) + 1);
      const toda::QFunction a(s[static_cast<std::size_t>(lv[0])]), b(s[static_cast<std::size_t>(lv[1])]);
      const auto one = toda::MultiPoly<std::complex<double>>::constant(1, 1.0);
      const std::complex<double> v = toda::matrix_element(a, b, F);
      const double na = toda::matrix_element(a, a, one).real(), nb = toda::matrix_element(b, b, one).real();
      const std::complex<double> normalized = v / std::sqrt(na * nb);
      text(m_json) << "<" << lv[0] << "|F|" << lv[1] << "> = " << v << ", normalized " << normalized << "\n";
      emit(m_json, toda::cli::format_json(json{{"hbar", m_hbar}, {"levels", lv}, {"poly", m_poly}, {"value", complex_json(v)},
                                               {"norms", {na, nb}}, {"normalized", complex_json(normalized)}}));
      if (m_json.to_file()) result_path = m_json.path;
    } else if (ver->parsed()) {
      run.command = "verify-identities";
      run.sub = ver;
      toda::suites::SuiteOptions opt;
      opt.seed = v_seed;
      opt.hbars = toda::cli::parse_coefficients(v_hbar);
      opt.genus = v_genus;
      opt.order = v_order;
      std::vector<std::string> names = v_suite == "all" ? toda::suites::suite_names() : std::vector<std::string>{v_suite};
      json report = json::array();
      int failed = 0, total = 0;
      std::printf("%-16s %-64s %12s %3s %-10s %s\n", "suite", "identity", "residual", "", "tolerance", "verdict");
      for (const std::string& name : names) {
        for (const auto& c : toda::suites::run(name, opt)) {
          ++total;
          failed += !c.pass;
          json j = toda::suites::to_json(c);
          j["suite"] = name;
          report.push_back(j);
          run.tolerances[name + ": " + c.identity] = c.tolerance;
          std::printf("%-16s %-64s %12.4g %3s %-10.3g %s\n", name.c_str(), c.identity.c_str(), c.residual,
                      toda::suites::relation_symbol(c.relation), c.tolerance, c.pass ? "PASS" : "FAIL");
        }
      }
      std::printf("%d of %d checks passed\n", total - failed, total);
      run.summary = {{"pass", failed == 0}, {"checks", total}, {"failed", failed}};
      if (!v_report.empty()) {
        std::ofstream f(v_report);
        if (!f) throw UsageError("cannot write '" + v_report + "'");
        f << toda::cli::format_json(report);
        result_path = v_report;
      } else if (common.manifest.empty()) {
        common.manifest = "verify-identities.manifest.json";
      }
      status = failed == 0 ? 0 : 1;
    } else if (chr->parsed()) {
      run.command = "characters";
      run.sub = chr;
      const toda::QSeries prod = toda::character_product(c_n, c_order).chi;
      const toda::QSeries bin = toda::character_binomial(c_n, c_order).chi;
      const toda::QSeries alt = toda::character_resolution(c_n, c_order);
      const bool equal = prod == bin && prod == alt;
      std::ostream& os = text(c_json);
      os << "chi_" << c_n << " = " << series_text(prod) << "\n";
      os << "product = binomial = alternating sum: " << (equal ? "yes" : "NO") << "\n";
      json out{{"n", c_n}, {"order", c_order}, {"product", series_json(prod)}, {"binomial", series_json(bin)},
               {"alternating", series_json(alt)}, {"equal", equal}};
      if (c_n == 2) {
        const bool unsimplified = prod == toda::character_two_unsimplified(c_order);
        const bool simplified = prod == toda::character_two_simplified(c_order);
        os << "two-site closed form: " << (unsimplified ? "matches" : "differs") << "; simplified (1/[2]!)(1 + q^2): "
           << (simplified ? "matches" : "differs") << "\n";
        out["two_site_closed_form"] = unsimplified;
        out["two_site_simplified"] = simplified;
      }
      run.summary = {{"pass", equal}};
      emit(c_json, toda::cli::format_json(out));
      if (c_json.to_file()) result_path = c_json.path;
      status = equal ? 0 : 1;
    } else if (fou->parsed()) {
      run.command = "fourier";
      run.sub = fou;
      const toda::RealPoly t(toda::cli::parse_coefficients(o_t));
      const toda::SpectralData s = toda::build_spectral(t);
      const toda::PeriodData pd = toda::period_matrix(s, o_points);
      std::vector<int> k(static_cast<std::size_t>(s.genus), 0);
      if (!o_k.empty()) k = toda::cli::parse_int_list(o_k);
      if (static_cast<int>(k.size()) != s.genus) throw UsageError("--k needs " + std::to_string(s.genus) + " entries");
      const auto F = toda::cli::parse_symmetric_poly(o_poly, s.genus);
      const std::complex<double> c = toda::fourier_coefficient(s, pd, as_function(F), k);
      text(o_json) << "F_k = " << c << "\n";
      emit(o_json, toda::cli::format_json(json{{"t", poly_json(t)}, {"k", k}, {"poly", o_poly}, {"value", complex_json(c)}}));
      if (o_json.to_file()) result_path = o_json.path;
    }
  } catch (const UsageError& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  std::string manifest = common.manifest;
  if (manifest.empty() && !result_path.empty()) manifest = result_path + ".manifest.json";
  if (!manifest.empty()) {
    try {
      write_manifest(run, manifest, seconds);
    } catch (const UsageError& e) {
      std::cerr << "usage error: " << e.what() << "\n";
      return 2;
    }
  }
  return status;
}
