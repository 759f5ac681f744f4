#pragma once

#include "esdsim/ensemble.hpp"
#include "esdsim/sampling.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace esd {

// Usage / configuration problems. The CLI maps these to exit code 2.
class config_error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class OutputFormat { Csv, JsonLines };

struct ScenarioConfig {
  std::string scenario;
  long molecules = 100;
  std::optional<double> epsilon;  // scenario default applies when absent
  long rounds = 0;                // 0 = exact only, no Monte Carlo
  std::uint64_t seed = 0;
  std::optional<std::string> observable;  // Pauli-string override
  OutputFormat format = OutputFormat::Csv;
  int threads = 1;  // sampling threads; 0 = hardware concurrency
};

// One output record per (composition, observable). Exact fields are always
// populated; mc fields iff rounds > 0; census only for 2-qubit molecules.
struct ReportRow {
  std::string scenario;
  std::string composition_label;
  std::string observable_label;
  double n = 0.0;
  std::optional<double> epsilon;
  double exact_expectation = 0.0;
  double exact_fluctuation = 0.0;
  std::optional<double> mc_mean;
  std::optional<double> mc_std;
  std::optional<double> mc_stderr;
  long rounds = 0;
  std::uint64_t seed = 0;
  std::optional<double> entanglement_census;
};

struct ScenarioResult {
  std::vector<ReportRow> rows;
  std::vector<std::string> notes;  // caveats; the CLI prints them to stderr
};

struct ScenarioInfo {
  std::string name;
  std::string description;
};

const std::vector<ScenarioInfo>& scenario_registry();

// Runs one registry scenario. Throws config_error for unknown scenarios or
// out-of-range parameters.
ScenarioResult run_scenario(const ScenarioConfig& cfg);

// Serialization. Numbers carry 12 significant digits so that identical
// configs always produce byte-identical reports.
std::string format_number(double v);
std::string csv_header();
std::string to_csv_line(const ReportRow& row);
std::string to_json_line(const ReportRow& row);
std::string format_rows(const std::vector<ReportRow>& rows, OutputFormat format);

// Flat key=value config document ('#' starts a comment). Unknown keys are
// rejected. Values land in a copy of `base`.
ScenarioConfig load_config_file(const std::string& path, const ScenarioConfig& base = {});
void apply_config_entry(ScenarioConfig& cfg, const std::string& key, const std::string& value);

struct InvariantResult {
  std::string name;
  bool passed;
  std::string detail;
};

using FluctuationFn =
    std::function<FluctuationReport(const EnsembleComposition&, const HermitianObservable&)>;

// The self-check suite behind `verify`: oracle equivalence over random
// compositions, product-decomposition reconstruction, expectation invariance
// across compositions sharing a density matrix, and fluctuation
// distinguishability of the canonical pairs. `fluctuation` substitutes the
// implementation under test (used to prove the suite catches corruption);
// empty means the library implementation.
std::vector<InvariantResult> run_invariant_suite(std::uint64_t seed = 20240817,
                                                 const FluctuationFn& fluctuation = {});

}  // namespace esd
