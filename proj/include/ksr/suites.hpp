#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include <json.hpp>

#include "ksr/landau.hpp"
#include "ksr/modulus.hpp"

namespace ksr {

struct VerifyOptions {
  std::string suite = "all";
  std::size_t trials = 1000;
  std::size_t N = 4096;
  std::uint64_t seed = 7;
  Modulus w = Modulus::power(1.0, 1.0);
};

/// One bound: sampled members must stay below theoretical + eps; when the
/// bound is sharp the constructed extremal (or lower-bound pair) must reach
/// theoretical - eps.
struct Check {
  std::string label;
  double theoretical = 0.0;
  double empirical = 0.0;
  double extremal = 0.0;
  bool has_extremal = false;
  bool sharp = false;
  double eps = 0.0;
  bool pass = false;
  std::string note;
};

struct SuiteReport {
  std::string name;
  std::vector<Check> checks;
  bool pass = true;
};

const std::vector<std::string>& suite_names();
/// Expands a suite or group name ("all", "bounds", "recovery", "landau").
std::vector<std::string> expand_suite(const std::string& name);

/// Parametrized two-sided checks shared by the suites and the CLI.
Check check_convexify(std::size_t n, double h, double a, double b, const VerifyOptions& o);
Check check_integral(std::size_t n, double h, double a, double b, const VerifyOptions& o);
Check check_identity(std::size_t n, double a, double b, const VerifyOptions& o, const Modulus& w);
Check check_derivative(std::size_t n, double a, double b, const VerifyOptions& o);
Check landau_check(LandauVariant v, double t, double gamma, double h, double a, double b, const VerifyOptions& o);

SuiteReport run_suite(const std::string& name, const VerifyOptions& opt);
nlohmann::json to_json(const Check& c);
nlohmann::json to_json(const SuiteReport& r);
/// Full report; "pass" is the conjunction over suites.
nlohmann::json verify(const VerifyOptions& opt);

}  // namespace ksr
