#pragma once

// Plumbing for the command-line tool: key=value configuration, polynomial and grid
// arguments, deterministic JSON text, and the worker pool size.

#include <complex>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "toda/schur.hpp"

namespace toda::cli {

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ConfigEntry {
  std::string key;
  std::string value;
  int line = 0;
};

/// Flat key=value file; '#' starts a comment, blank lines are skipped, keys may be
/// written with or without leading dashes. A file ending in .json is read as a run
/// manifest and its "params" object is used instead. Throws UsageError naming the line.
std::vector<ConfigEntry> load_config(const std::string& path);
std::vector<ConfigEntry> parse_config(const std::string& text);

/// "c0,c1,...": constant term first.
std::vector<double> parse_coefficients(const std::string& text);

/// Either a coefficient list in b1 or an expression in b1..b_nvars with + - * ^ and parentheses.
MultiPoly<std::complex<double>> parse_symmetric_poly(const std::string& text, int nvars);

/// "a:b:step", inclusive of b up to rounding.
std::vector<double> parse_grid(const std::string& text);

/// "2,3" -> {2, 3}
std::vector<int> parse_int_list(const std::string& text);

/// Two-space indented JSON with every floating value printed as %.17g.
std::string format_json(const nlohmann::ordered_json& j);

/// Elementary symmetric functions e_1..e_k of the inputs.
std::vector<double> elementary_symmetric(const std::vector<double>& x);

/// TODA_WORKERS if set to a positive integer, else the hardware concurrency (at least 1).
int worker_count();

/// Calls f(i) for i in [0, n) on `workers` threads; exceptions are rethrown on the caller.
void parallel_for(int n, int workers, const std::function<void(int)>& f);

}  // namespace toda::cli
