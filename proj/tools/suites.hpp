#pragma once

// Identity suites shared by the command-line tool and the acceptance runner.
// Each check is one residual compared against a pinned tolerance.

#include <string>
#include <vector>

#include <json.hpp>

namespace toda::suites {

enum class Relation { Below, AtMost, AtLeast, Equal };

struct Check {
  std::string identity;
  nlohmann::ordered_json inputs;
  double residual = 0.0;
  double tolerance = 0.0;
  Relation relation = Relation::Below;
  bool pass = false;
};

struct SuiteOptions {
  unsigned seed = 2024;
  std::vector<double> hbars{1.0, 0.5};  // quantum suite
  int genus = 0;                          // classical suite: 0 runs genus 1..3
  int order = 40;                         // character suite
};

std::vector<Check> structure(const SuiteOptions& o = {});
std::vector<Check> classical(const SuiteOptions& o = {});
std::vector<Check> dynamics(const SuiteOptions& o = {});
std::vector<Check> pde(const SuiteOptions& o = {});
std::vector<Check> characters(const SuiteOptions& o = {});
std::vector<Check> quantum(const SuiteOptions& o = {});
std::vector<Check> quasiclassical(const SuiteOptions& o = {});
std::vector<Check> exactness(const SuiteOptions& o = {});

const std::vector<std::string>& suite_names();
/// Throws std::invalid_argument for an unknown name.
std::vector<Check> run(const std::string& name, const SuiteOptions& o = {});

bool all_pass(const std::vector<Check>& checks);
nlohmann::ordered_json to_json(const Check& c);
const char* relation_symbol(Relation r);

}  // namespace toda::suites
