#include <CLI11.hpp>
#include <fstream>
#include <iostream>

#include "parcoh/errors.hpp"
#include "parcoh/suites.hpp"

namespace {

struct Flags {
  std::string config, out, backend, classes, suites;
  int genus = 0, boundary = 0, trials = 0;
  std::uint64_t seed = 0;
  double tol_scale = 1.0;
};

void add_run_flags(CLI::App* cmd, Flags& f) {
  cmd->add_option("--config", f.config, "JSON config file; flags override its keys");
  cmd->add_option("--out", f.out, "write the JSON report here instead of stdout");
  cmd->add_option("--backend", f.backend, "su2 | sl2r | u1 | u1:k");
  cmd->add_option("--genus", f.genus, "genus l");
  cmd->add_option("--boundary", f.boundary, "number of boundary circles n");
  cmd->add_option("--classes", f.classes,
                  "comma separated, one per boundary circle (su2: angle; sl2r: elliptic:a | hyperbolic:t; "
                  "u1:k: a1/../ak)");
  cmd->add_option("--seed", f.seed, "base seed");
  cmd->add_option("--trials", f.trials, "points or samples per check");
  cmd->add_option("--tol-scale", f.tol_scale, "multiply the check tolerances");
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::string cur;
  for (char c : s) {
    if (c == sep) {
      out.push_back(cur);
      cur.clear();
    } else if (c != ' ') {
      cur.push_back(c);
    }
  }
  out.push_back(cur);
  return out;
}

parcoh::RunConfig build_config(const CLI::App* cmd, const Flags& f) {
  parcoh::RunConfig cfg;
  if (!f.config.empty()) {
    std::ifstream in(f.config);
    if (!in) throw parcoh::ConfigError("cannot open config '" + f.config + "'");
    try {
      cfg = parcoh::RunConfig::from_json(parcoh::json::parse(in));
    } catch (const parcoh::json::exception& e) {
      throw parcoh::ConfigError(std::string("config: ") + e.what());
    }
  }
  auto given = [&](const char* name) { return cmd->get_option_no_throw(name) != nullptr && cmd->count(name) > 0; };
  if (given("--backend")) cfg.backend = f.backend;
  if (given("--genus")) cfg.genus = f.genus;
  if (given("--boundary")) cfg.boundary = f.boundary;
  if (given("--classes")) cfg.classes = f.classes.empty() ? std::vector<std::string>{} : split(f.classes, ',');
  if (given("--seed")) cfg.seed = f.seed;
  if (given("--trials")) cfg.trials = f.trials;
  if (given("--tol-scale")) cfg.tol_scale = f.tol_scale;
  if (given("--suites")) cfg.suites = split(f.suites, ',');
  cfg.validate();
  return cfg;
}

void emit(const parcoh::json& j, const std::string& out) {
  if (out.empty()) {
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::ofstream f(out);
  if (!f) throw parcoh::ConfigError("cannot write '" + out + "'");
  f << j.dump(2) << "\n";
}

int run(const parcoh::RunConfig& cfg, const std::string& out) {
  const parcoh::RunReport r = parcoh::cmd_report(cfg);
  for (const auto& s : r.body["suites"]) {
    std::cerr << (s["pass"].get<bool>() ? "PASS " : "FAIL ") << s["name"].get<std::string>() << "\n";
    if (s.contains("errors"))
      for (const auto& e : s["errors"]) std::cerr << "  error: " << e.get<std::string>() << "\n";
    for (const auto& c : s["checks"])
      if (!c["pass"].get<bool>())
        std::cerr << "  " << c["name"].get<std::string>() << " = " << c["value"].dump() << " (want "
                  << c["relation"].get<std::string>() << " " << c["tolerance"].dump() << ")\n";
  }
  emit(r.to_json(), out);
  return r.pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Parabolic cohomology and symplectic pairings of surface group systems"};
  app.require_subcommand(1);

  Flags report_flags, verify_flags;
  std::string fixtures_out, verify_suite;
  CLI::App* report = app.add_subcommand("report", "run verification suites and write a JSON report");
  add_run_flags(report, report_flags);
  report->add_option("--suites", report_flags.suites, "comma separated: complexes,pairing,conjclass,extended,duality,all");

  CLI::App* fixtures = app.add_subcommand("fixtures", "list the shipped solution points");
  fixtures->add_option("--out", fixtures_out, "write JSON here instead of stdout");

  CLI::App* verify = app.add_subcommand("verify", "run a single suite");
  verify->add_option("suite", verify_suite, "suite name")->required();
  add_run_flags(verify, verify_flags);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*report) return run(build_config(report, report_flags), report_flags.out);
    if (*verify) {
      parcoh::RunConfig cfg = build_config(verify, verify_flags);
      cfg.suites = {verify_suite};
      cfg.validate();
      return run(cfg, verify_flags.out);
    }
    if (*fixtures) {
      emit(parcoh::cmd_fixtures(), fixtures_out);
      return 0;
    }
  } catch (const parcoh::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 2;
}
