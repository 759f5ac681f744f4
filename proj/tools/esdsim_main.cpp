#include "esdsim/decompositions.hpp"
#include "esdsim/scenarios.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <string>

namespace {

// exit codes: 0 success, 1 verification failure, 2 usage/config error
constexpr int kExitOk = 0;
constexpr int kExitVerifyFailed = 1;
constexpr int kExitUsage = 2;

int cmd_run(const esd::ScenarioConfig& cfg, const std::string& out_path) {
  const esd::ScenarioResult result = esd::run_scenario(cfg);
  const std::string report = esd::format_rows(result.rows, cfg.format);

  if (out_path.empty()) {
    std::cout << report;
  } else {
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw esd::config_error("cannot open output file '" + out_path + "'");
    out << report;
  }
  for (const std::string& note : result.notes) std::cerr << "note: " << note << '\n';
  return kExitOk;
}

int cmd_list() {
  for (const esd::ScenarioInfo& info : esd::scenario_registry())
    std::cout << info.name << ": " << info.description << '\n';
  return kExitOk;
}

int cmd_verify(std::uint64_t seed) {
  bool all_passed = true;
  for (const esd::InvariantResult& result : esd::run_invariant_suite(seed)) {
    std::cout << (result.passed ? "[PASS] " : "[FAIL] ") << result.name << ": " << result.detail
              << '\n';
    all_passed = all_passed && result.passed;
  }
  return all_passed ? kExitOk : kExitVerifyFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Quantum ensemble compositions: exact and sampled collective fluctuations"};
  app.require_subcommand(1);

  // run
  auto* run = app.add_subcommand("run", "run a scenario and emit one report row per "
                                        "(composition, observable)");
  std::string scenario, observable, format = "csv", out_path, config_path;
  long molecules = -1, rounds = -1;
  double epsilon = -1.0;
  std::uint64_t seed = 0;
  int threads = -1;
  run->add_option("-s,--scenario", scenario, "scenario name (see `list`)");
  run->add_option("-n,--molecules", molecules, "number of molecules N")
      ->check(CLI::PositiveNumber);
  run->add_option("-e,--epsilon", epsilon, "polarization in [0,1] (scenario default 0.1)")
      ->check(CLI::Range(0.0, 1.0));
  run->add_option("-r,--rounds", rounds, "Monte Carlo rounds; 0 = exact only")
      ->check(CLI::NonNegativeNumber);
  auto* seed_opt = run->add_option("--seed", seed, "random seed (64-bit)");
  run->add_option("--observable", observable, "Pauli-string observable override, e.g. ZZ");
  run->add_option("--format", format, "csv or json-lines")
      ->check(CLI::IsMember({"csv", "json-lines"}));
  run->add_option("--out", out_path, "write the report to a file instead of stdout");
  run->add_option("--config", config_path, "flat key=value config file; flags override it");
  run->add_option("--threads", threads, "sampling threads (0 = hardware concurrency)")
      ->check(CLI::NonNegativeNumber);

  // list
  app.add_subcommand("list", "print the scenario registry");

  // verify
  auto* verify = app.add_subcommand("verify", "run the library invariant suite");
  std::uint64_t verify_seed = 20240817;
  verify->add_option("--seed", verify_seed, "seed for the randomized invariants");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  }

  try {
    if (app.got_subcommand("list")) return cmd_list();
    if (app.got_subcommand("verify")) return cmd_verify(verify_seed);

    esd::ScenarioConfig cfg;
    if (!config_path.empty()) cfg = esd::load_config_file(config_path, cfg);
    if (!scenario.empty()) cfg.scenario = scenario;
    if (molecules >= 0) cfg.molecules = molecules;
    if (epsilon >= 0.0) cfg.epsilon = epsilon;
    if (rounds >= 0) cfg.rounds = rounds;
    if (seed_opt->count() > 0) cfg.seed = seed;
    if (!observable.empty()) cfg.observable = observable;
    if (threads >= 0) cfg.threads = threads;
    if (run->count("--format") > 0)
      cfg.format = format == "csv" ? esd::OutputFormat::Csv : esd::OutputFormat::JsonLines;
    return cmd_run(cfg, out_path);
  } catch (const esd::config_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const esd::positivity_error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitVerifyFailed;
  }
}
