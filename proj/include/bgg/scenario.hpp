#pragma once

#include <map>
#include <nlohmann/json.hpp>
#include <string>
#include <vector>

#include "bgg/bgg.hpp"

namespace bgg {

using json = nlohmann::json;

inline constexpr const char* kVersion = "1.0.0";

struct Scenario {
  Flavor flavor = Flavor::conformal;
  GeometryDescriptor geometry;
  std::string rep = "std";
  std::vector<int> degrees;  // empty: every degree within budget
  int trials = 10;
  std::uint64_t seed = 1;
  std::map<std::string, double> tolerances;
  std::vector<std::string> checks;
};

struct SchemaError : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OrderBudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

Scenario parse_scenario(const json& config);

struct CheckResult {
  std::string name;
  std::string status = "pass";  // pass | fail | skipped
  std::map<std::string, double> residuals;
  double tolerance = 0.0;
  int jet_order_surviving = 0;
  double ms = 0.0;

  void gate(double tol);  // set status from max residual vs tol
  double max_residual() const;
};

struct Report {
  std::string version = kVersion;
  json config;
  std::uint64_t seed = 0;
  std::vector<CheckResult> checks;
  bool all_pass() const;
};

double default_tolerance(const std::string& check);
int required_jet_order(const std::string& check, const Scenario& s);

Report run_scenario(const Scenario& s, const json& config_echo);
Report run_scenario_json(const json& config);
Report verify_suite(const std::string& level);

json report_to_json(const Report& r);
std::string report_to_text(const Report& r);

// Individual checks, shared by scenarios, the verify suites, and the
// acceptance runner.
namespace checks {

CheckResult algebra_suite(Flavor flavor, int n);
CheckResult rep_suite(AlgPtr alg, RepPtr rep, int samples, std::uint64_t seed);
CheckResult hodge_suite(AlgPtr alg, RepPtr rep);
CheckResult curvature_suite(const Scenario& s);
CheckResult twisted_curvature(const Scenario& s);
CheckResult complex_check(const Scenario& s);
CheckResult closed_form_match(const Scenario& s);
CheckResult named_operator(const Scenario& s);
CheckResult normality(const Scenario& s);

}  // namespace checks

}  // namespace bgg
