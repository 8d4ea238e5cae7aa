#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "parcoh/conjclass.hpp"
#include "parcoh/serialize.hpp"
#include "parcoh/tolerances.hpp"

namespace parcoh {

inline constexpr const char* kToolVersion = "parcoh 0.1.0";

struct RunConfig {
  std::string backend = "su2";
  int genus = 1;
  int boundary = 1;
  // One token per boundary circle: su2 "theta"; sl2r "elliptic:theta" or
  // "hyperbolic:t"; u1:k "t1/t2/.../tk".
  std::vector<std::string> classes{"1.0"};
  std::uint64_t seed = 1;
  int trials = 5;
  double tol_scale = 1.0;
  json tolerance_overrides = json::object();  // field name -> value
  std::vector<std::string> suites{"all"};

  static RunConfig from_json(const json& j);  // missing keys keep defaults
  json to_json() const;
  void validate() const;                      // throws ConfigError
  Tolerances tolerances() const;
  std::vector<std::string> expanded_suites() const;
};

const std::vector<std::string>& suite_names();

ConjugacyClassSpec parse_class(const Backend& b, const std::string& token);
std::vector<ConjugacyClassSpec> parse_classes(const RunConfig& cfg);

// {"name", "pass", "checks": [...], "error"?}
json run_suite(const std::string& name, const RunConfig& cfg);

struct RunReport {
  json body;  // deterministic part
  bool pass = false;
  double wall_seconds = 0.0;
  json to_json() const;  // body plus the "timing" object
};
RunReport cmd_report(const RunConfig& cfg);

json cmd_fixtures();

}  // namespace parcoh
