#include "esdsim/scenarios.hpp"

#include "esdsim/decompositions.hpp"
#include "esdsim/observables.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>

namespace esd {

namespace {

constexpr double kPi = 3.14159265358979323846;

PureState two_qubit_state(Complex a00, Complex a01, Complex a10, Complex a11) {
  Vector v(4);
  v << a00, a01, a10, a11;
  return PureState(std::move(v));
}

EnsembleComposition z_mixture(double n) {
  return EnsembleComposition({{n / 2.0, signed_axis_state({Axis::Z, +1})},
                              {n / 2.0, signed_axis_state({Axis::Z, -1})}});
}

EnsembleComposition x_mixture(double n) {
  return EnsembleComposition({{n / 2.0, signed_axis_state({Axis::X, +1})},
                              {n / 2.0, signed_axis_state({Axis::X, -1})}});
}

EnsembleComposition bb84_mixture(double n) {
  return EnsembleComposition({{n / 4.0, signed_axis_state({Axis::Z, +1})},
                              {n / 4.0, signed_axis_state({Axis::Z, -1})},
                              {n / 4.0, signed_axis_state({Axis::X, +1})},
                              {n / 4.0, signed_axis_state({Axis::X, -1})}});
}

void validate(const ScenarioConfig& cfg) {
  if (cfg.scenario.empty()) throw config_error("no scenario given");
  if (cfg.molecules < 1) throw config_error("molecules must be >= 1");
  if (cfg.rounds < 0) throw config_error("rounds must be >= 0");
  if (cfg.rounds == 1) throw config_error("rounds must be 0 (exact only) or >= 2");
  if (cfg.threads < 0) throw config_error("threads must be >= 0");
  if (cfg.epsilon && (*cfg.epsilon < 0.0 || *cfg.epsilon > 1.0))
    throw config_error("epsilon must lie in [0, 1]");
}

CollectiveObservable observable_override(const ScenarioConfig& cfg, int n_qubits) {
  try {
    return from_pauli_terms(n_qubits, {{*cfg.observable, 1.0}});
  } catch (const std::invalid_argument& e) {
    throw config_error(std::string("bad observable override: ") + e.what());
  }
}

ReportRow base_row(const ScenarioConfig& cfg, const std::string& composition,
                   const std::string& observable, double n) {
  ReportRow row;
  row.scenario = cfg.scenario;
  row.composition_label = composition;
  row.observable_label = observable;
  row.n = n;
  row.rounds = cfg.rounds;
  row.seed = cfg.seed;
  return row;
}

void fill_exact(ReportRow& row, const EnsembleComposition& comp,
                const CollectiveObservable& obs) {
  row.exact_expectation = ensemble_expectation(comp, obs.per_molecule);
  row.exact_fluctuation = fluctuation_proper(comp, obs.per_molecule).fluctuation;
}

void fill_mc(ReportRow& row, const EnsembleComposition& comp, const CollectiveObservable& obs,
             const ScenarioConfig& cfg) {
  if (cfg.rounds <= 0) return;
  const EstimateReport est =
      estimate_fluctuation(comp, obs, {cfg.seed, cfg.rounds}, cfg.threads);
  row.mc_mean = est.empirical_mean;
  row.mc_std = est.empirical_std;
  row.mc_stderr = est.stderr_of_std;
}

void fill_mc(ReportRow& row, const IdenticalMixedEnsemble& ens, const CollectiveObservable& obs,
             const ScenarioConfig& cfg) {
  if (cfg.rounds <= 0) return;
  const EstimateReport est =
      estimate_fluctuation(ens, obs, {cfg.seed, cfg.rounds}, cfg.threads);
  row.mc_mean = est.empirical_mean;
  row.mc_std = est.empirical_std;
  row.mc_stderr = est.stderr_of_std;
}

ScenarioResult scenario_despagnat(const ScenarioConfig& cfg) {
  const double n = static_cast<double>(cfg.molecules);
  const CollectiveObservable obs =
      cfg.observable ? observable_override(cfg, 1) : sigma_z_single();

  ScenarioResult result;
  const std::pair<std::string, EnsembleComposition> comps[] = {{"S_I", z_mixture(n)},
                                                               {"S_II", x_mixture(n)}};
  for (const auto& [label, comp] : comps) {
    ReportRow row = base_row(cfg, label, obs.label, n);
    fill_exact(row, comp, obs);
    fill_mc(row, comp, obs, cfg);
    result.rows.push_back(std::move(row));
  }
  return result;
}

ScenarioResult scenario_bell_braunstein(const ScenarioConfig& cfg) {
  const double n = static_cast<double>(cfg.molecules);
  const double eps = cfg.epsilon.value_or(0.1);
  const CollectiveObservable obs =
      cfg.observable ? observable_override(cfg, 2) : sigma_zz_pair();

  const EnsembleComposition bell_comp = effective_bell_composition(n, eps);
  const EnsembleComposition product_comp =
      decomposition_to_composition(braunstein_decomposition(eps), n);

  ScenarioResult result;
  const std::pair<std::string, const EnsembleComposition*> comps[] = {
      {"effective-bell", &bell_comp}, {"product-mixture", &product_comp}};
  for (const auto& [label, comp] : comps) {
    ReportRow row = base_row(cfg, label, obs.label, n);
    row.epsilon = eps;
    fill_exact(row, *comp, obs);
    row.entanglement_census = entanglement_census(*comp);
    fill_mc(row, *comp, obs, cfg);
    result.rows.push_back(std::move(row));
  }
  result.notes.push_back(
      "bell-braunstein: the often-quoted ZZ fluctuations eps*sqrt(N) (effective composition) "
      "and 2*sqrt(N)/3 (product composition) are unconfirmed by the composition variance "
      "formula; every effective-composition component is a ZZ eigenstate, giving 0, and the "
      "canonical product weights give sqrt(8N/9).");
  return result;
}

ScenarioResult scenario_preskill(const ScenarioConfig& cfg) {
  if (cfg.observable) throw config_error("preskill does not take an observable override");
  const long pairs = cfg.molecules;
  const SplitStream root(cfg.seed);

  ScenarioResult result;
  const struct {
    char basis;
    const char* label;
    double expected_rate;
    double indicator_std;
  } cases[] = {{'z', "z-basis-agreement", 1.0, 0.0}, {'x', "x-basis-agreement", 0.5, 0.5}};

  for (std::size_t i = 0; i < 2; ++i) {
    ReportRow row = base_row(cfg, "bell-pairs", cases[i].label, static_cast<double>(pairs));
    row.exact_expectation = cases[i].expected_rate;
    row.exact_fluctuation = cases[i].indicator_std;
    if (cfg.rounds > 0) {
      const PreskillResult pres = preskill_protocol(pairs, cases[i].basis, root.child(i));
      row.mc_mean = pres.agreement_rate;
      const double p = pres.agreement_rate;
      const double var = pairs > 1 ? p * (1.0 - p) * static_cast<double>(pairs) /
                                         static_cast<double>(pairs - 1)
                                   : 0.0;
      row.mc_std = std::sqrt(var);
      row.mc_stderr = *row.mc_std / std::sqrt(static_cast<double>(pairs));
    }
    result.rows.push_back(std::move(row));
  }
  return result;
}

ScenarioResult scenario_bb84(const ScenarioConfig& cfg) {
  const double n = static_cast<double>(cfg.molecules);
  std::vector<CollectiveObservable> observables;
  if (cfg.observable) {
    observables.push_back(observable_override(cfg, 1));
  } else {
    observables.push_back(from_pauli_terms(1, {{"X", 1.0}}));
    observables.push_back(from_pauli_terms(1, {{"Z", 1.0}}));
  }

  ScenarioResult result;
  const std::pair<std::string, EnsembleComposition> comps[] = {
      {"bb84-four-state", bb84_mixture(n)}, {"z-basis-pair", z_mixture(n)}};
  for (const auto& [label, comp] : comps) {
    for (const CollectiveObservable& obs : observables) {
      ReportRow row = base_row(cfg, label, obs.label, n);
      fill_exact(row, comp, obs);
      fill_mc(row, comp, obs, cfg);
      result.rows.push_back(std::move(row));
    }
  }
  return result;
}

ScenarioResult scenario_improper_pair(const ScenarioConfig& cfg) {
  const double n = static_cast<double>(cfg.molecules);
  const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
  const EnsembleComposition phi_plus = EnsembleComposition(
      {{n, two_qubit_state(inv_sqrt2, 0.0, 0.0, inv_sqrt2)}});
  const EnsembleComposition psi_plus = EnsembleComposition(
      {{n, two_qubit_state(0.0, inv_sqrt2, inv_sqrt2, 0.0)}});

  // Both sources reduce to the same single-qubit state; anything measured on
  // qubit A alone is identical by construction.
  const Matrix half_identity = 0.5 * Matrix::Identity(2, 2);
  for (const EnsembleComposition* comp : {&phi_plus, &psi_plus}) {
    const Matrix reduced = partial_trace(density_matrix(*comp), {2, 2}, {0});
    if ((reduced - half_identity).cwiseAbs().maxCoeff() > 1e-12)
      throw std::runtime_error("improper-pair: reduced state is not M2");
  }

  std::vector<CollectiveObservable> observables;
  if (cfg.observable) {
    observables.push_back(observable_override(cfg, 2));
  } else {
    observables.push_back(sigma_zz_pair());
    observables.push_back(from_pauli_terms(2, {{"ZI", 1.0}}));
  }

  ScenarioResult result;
  const std::pair<std::string, const EnsembleComposition*> comps[] = {{"pair-phi-plus", &phi_plus},
                                                                      {"pair-psi-plus", &psi_plus}};
  for (const auto& [label, comp] : comps) {
    for (const CollectiveObservable& obs : observables) {
      ReportRow row = base_row(cfg, label, obs.label, n);
      fill_exact(row, *comp, obs);
      row.entanglement_census = entanglement_census(*comp);
      fill_mc(row, *comp, obs, cfg);
      result.rows.push_back(std::move(row));
    }
  }
  result.notes.push_back(
      "improper-pair: both sources have the single-qubit reduction M2 and both ZZ "
      "fluctuations vanish; the collective ZZ expectation (+N vs -N) is what separates them.");
  return result;
}

ScenarioResult scenario_kick(const ScenarioConfig& cfg) {
  const double n = static_cast<double>(cfg.molecules);
  const CollectiveObservable obs =
      cfg.observable ? observable_override(cfg, 1) : from_pauli_terms(1, {{"X", 1.0}});

  const Vector plus_x = signed_axis_state({Axis::X, +1}).amplitudes();
  const Matrix pure = plus_x * plus_x.adjoint();
  const Matrix dephased = random_kick_average(pure, KickModel::uniform(0.0, 2.0 * kPi));

  ScenarioResult result;
  const std::pair<std::string, Matrix> states[] = {{"pure-plus-x", pure},
                                                   {"dephased", dephased}};
  for (const auto& [label, rho] : states) {
    const IdenticalMixedEnsemble ens(n, rho);
    ReportRow row = base_row(cfg, label, obs.label, n);
    row.exact_expectation = n * (rho * obs.per_molecule.matrix()).trace().real();
    row.exact_fluctuation = fluctuation_identical_mixed(ens, obs.per_molecule);
    fill_mc(row, ens, obs, cfg);
    result.rows.push_back(std::move(row));
  }
  return result;
}

ScenarioResult scenario_gorter(const ScenarioConfig& cfg) {
  if (cfg.observable) throw config_error("gorter does not take an observable override");

  GorterInput input;
  input.energies = {-1.0, 1.0};
  input.rates[{0, 1}] = 1.0;
  input.rates[{1, 0}] = 1.0;

  ReportRow row = base_row(cfg, "two-level-symmetric", "T1", 2.0);
  row.rounds = 0;  // nothing to sample, always exact
  row.exact_expectation = gorter_t1(input);
  row.exact_fluctuation = 0.0;

  ScenarioResult result;
  result.rows.push_back(std::move(row));
  return result;
}

std::string json_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '"' || c == '\\') out.push_back('\\');
    out.push_back(c);
  }
  return out;
}

}  // namespace

const std::vector<ScenarioInfo>& scenario_registry() {
  static const std::vector<ScenarioInfo> registry = {
      {"despagnat",
       "z-polarized vs x-polarized halves of a qubit ensemble: same density matrix M2, "
       "collective Z fluctuation 0 vs sqrt(N)"},
      {"bell-braunstein",
       "effective Bell-state composition vs its signed-axis product decomposition (eps <= 1/9): "
       "same density matrix, ZZ fluctuation 0 vs sqrt(8N/9), entanglement census eps vs 0"},
      {"preskill",
       "shared Bell pairs; Bob measures z or x and Alice compares z outcomes: agreement 1 "
       "identifies the z preparation, 1/2 the x one"},
      {"bb84",
       "four-state key-distribution mixture vs the two-state z mixture: both give M2; X "
       "fluctuation sqrt(N/2) vs sqrt(N)"},
      {"improper-pair",
       "entangled-pair sources phi+ vs psi+: identical single-qubit reductions, collective ZZ "
       "expectation +N vs -N, both ZZ fluctuations 0"},
      {"kick",
       "random z-kick dephasing of |+x>: the uniform [0,2pi) average zeroes the off-diagonals; "
       "X fluctuation grows from 0 to sqrt(N)"},
      {"gorter",
       "energy-weighted relaxation time of the symmetric two-level system: T1 = 1/(2W)"},
  };
  return registry;
}

ScenarioResult run_scenario(const ScenarioConfig& cfg) {
  validate(cfg);
  if (cfg.scenario == "despagnat") return scenario_despagnat(cfg);
  if (cfg.scenario == "bell-braunstein") return scenario_bell_braunstein(cfg);
  if (cfg.scenario == "preskill") return scenario_preskill(cfg);
  if (cfg.scenario == "bb84") return scenario_bb84(cfg);
  if (cfg.scenario == "improper-pair") return scenario_improper_pair(cfg);
  if (cfg.scenario == "kick") return scenario_kick(cfg);
  if (cfg.scenario == "gorter") return scenario_gorter(cfg);
  throw config_error("unknown scenario '" + cfg.scenario + "' (see `list`)");
}

std::string format_number(double v) {
  if (v == 0.0) return "0";
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.12g", v);
  return buf;
}

std::string csv_header() {
  return "scenario,composition_label,observable_label,n,epsilon,exact_expectation,"
         "exact_fluctuation,mc_mean,mc_std,mc_stderr,rounds,seed,entanglement_census";
}

namespace {

std::string opt_number(const std::optional<double>& v) {
  return v ? format_number(*v) : std::string();
}

}  // namespace

std::string to_csv_line(const ReportRow& row) {
  std::ostringstream out;
  out << row.scenario << ',' << row.composition_label << ',' << row.observable_label << ','
      << format_number(row.n) << ',' << opt_number(row.epsilon) << ','
      << format_number(row.exact_expectation) << ',' << format_number(row.exact_fluctuation)
      << ',' << opt_number(row.mc_mean) << ',' << opt_number(row.mc_std) << ','
      << opt_number(row.mc_stderr) << ',' << row.rounds << ',' << row.seed << ','
      << opt_number(row.entanglement_census);
  return out.str();
}

std::string to_json_line(const ReportRow& row) {
  auto opt = [](const std::optional<double>& v) {
    return v ? format_number(*v) : std::string("null");
  };
  std::ostringstream out;
  out << "{\"scenario\":\"" << json_escape(row.scenario) << "\",\"composition_label\":\""
      << json_escape(row.composition_label) << "\",\"observable_label\":\""
      << json_escape(row.observable_label) << "\",\"n\":" << format_number(row.n)
      << ",\"epsilon\":" << opt(row.epsilon)
      << ",\"exact_expectation\":" << format_number(row.exact_expectation)
      << ",\"exact_fluctuation\":" << format_number(row.exact_fluctuation)
      << ",\"mc_mean\":" << opt(row.mc_mean) << ",\"mc_std\":" << opt(row.mc_std)
      << ",\"mc_stderr\":" << opt(row.mc_stderr) << ",\"rounds\":" << row.rounds
      << ",\"seed\":" << row.seed << ",\"entanglement_census\":" << opt(row.entanglement_census)
      << "}";
  return out.str();
}

std::string format_rows(const std::vector<ReportRow>& rows, OutputFormat format) {
  std::ostringstream out;
  if (format == OutputFormat::Csv) {
    out << csv_header() << '\n';
    for (const ReportRow& row : rows) out << to_csv_line(row) << '\n';
  } else {
    for (const ReportRow& row : rows) out << to_json_line(row) << '\n';
  }
  return out.str();
}

void apply_config_entry(ScenarioConfig& cfg, const std::string& key, const std::string& value) {
  try {
    if (key == "scenario") {
      cfg.scenario = value;
    } else if (key == "molecules") {
      cfg.molecules = std::stol(value);
    } else if (key == "epsilon") {
      cfg.epsilon = std::stod(value);
    } else if (key == "rounds") {
      cfg.rounds = std::stol(value);
    } else if (key == "seed") {
      cfg.seed = std::stoull(value);
    } else if (key == "observable") {
      cfg.observable = value;
    } else if (key == "threads") {
      cfg.threads = std::stoi(value);
    } else if (key == "format") {
      if (value == "csv")
        cfg.format = OutputFormat::Csv;
      else if (value == "json-lines")
        cfg.format = OutputFormat::JsonLines;
      else
        throw config_error("format must be csv or json-lines, got '" + value + "'");
    } else {
      throw config_error("unknown config key '" + key + "'");
    }
  } catch (const std::logic_error&) {
    throw config_error("bad value '" + value + "' for config key '" + key + "'");
  }
}

ScenarioConfig load_config_file(const std::string& path, const ScenarioConfig& base) {
  std::ifstream in(path);
  if (!in) throw config_error("cannot open config file '" + path + "'");

  ScenarioConfig cfg = base;
  std::string line;
  long line_no = 0;
  auto trim = [](std::string s) {
    const auto from = s.find_first_not_of(" \t\r");
    const auto to = s.find_last_not_of(" \t\r");
    return from == std::string::npos ? std::string() : s.substr(from, to - from + 1);
  };
  while (std::getline(in, line)) {
    ++line_no;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw config_error("config line " + std::to_string(line_no) + " is not key=value");
    apply_config_entry(cfg, trim(line.substr(0, eq)), trim(line.substr(eq + 1)));
  }
  return cfg;
}

// ---------------------------------------------------------------------------
// Verification suite

namespace {

PureState random_state(SplitStream& s, Eigen::Index d) {
  Vector v(d);
  double norm2 = 0.0;
  do {
    for (Eigen::Index i = 0; i < d; ++i)
      v(i) = Complex(2.0 * s.uniform() - 1.0, 2.0 * s.uniform() - 1.0);
    norm2 = v.squaredNorm();
  } while (norm2 < 1e-6);
  v /= std::sqrt(norm2);
  return PureState(std::move(v));
}

HermitianObservable random_observable(SplitStream& s, Eigen::Index d) {
  Matrix r(d, d);
  for (Eigen::Index i = 0; i < d; ++i)
    for (Eigen::Index j = 0; j < d; ++j)
      r(i, j) = Complex(2.0 * s.uniform() - 1.0, 2.0 * s.uniform() - 1.0);
  return HermitianObservable(0.5 * (r + Matrix(r.adjoint())));
}

EnsembleComposition random_integer_composition(SplitStream& s, Eigen::Index d,
                                               long max_molecules) {
  const long m = 1 + static_cast<long>(s.next() % 3);
  std::vector<Component> components;
  long budget = max_molecules;
  for (long i = 0; i < m && budget > 0; ++i) {
    const long count = 1 + static_cast<long>(s.next() % static_cast<std::uint64_t>(budget));
    budget -= count;
    components.push_back({static_cast<double>(count), random_state(s, d)});
  }
  return EnsembleComposition(std::move(components));
}

// A second composition with the same density matrix: mix the eigenvectors of
// rho with their eigenvalues as weights.
EnsembleComposition eigenbasis_composition(const EnsembleComposition& src) {
  const Matrix rho = density_matrix(src);
  Eigen::SelfAdjointEigenSolver<Matrix> solver(rho);
  std::vector<Component> components;
  const double n = src.total_molecules();
  for (Eigen::Index k = 0; k < solver.eigenvalues().size(); ++k) {
    const double weight = solver.eigenvalues()(k);
    if (weight <= 1e-12) continue;
    Vector v = solver.eigenvectors().col(k);
    v.normalize();
    components.push_back({n * weight, PureState(std::move(v))});
  }
  return EnsembleComposition(std::move(components));
}

}  // namespace

std::vector<InvariantResult> run_invariant_suite(std::uint64_t seed,
                                                 const FluctuationFn& fluctuation) {
  const FluctuationFn fluct = fluctuation
                                  ? fluctuation
                                  : [](const EnsembleComposition& c, const HermitianObservable& o) {
                                      return fluctuation_proper(c, o);
                                    };
  SplitStream root(seed);
  std::vector<InvariantResult> results;

  {  // fluctuation formula against the full product-state computation
    SplitStream s = root.child(1);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const Eigen::Index d = (s.next() % 2 == 0) ? 2 : 4;
      const EnsembleComposition comp = random_integer_composition(s, d, 5);
      const HermitianObservable omega = random_observable(s, d);
      const FluctuationReport report = fluct(comp, omega);
      const OracleResult oracle = oracle_fluctuation(comp, omega);
      worst = std::max(worst, std::abs(report.fluctuation - oracle.fluctuation));
      worst = std::max(worst, std::abs(report.expectation_ensemble - oracle.expectation) /
                                  std::max(1.0, std::abs(oracle.expectation)));
    }
    results.push_back({"oracle-equivalence", worst <= 1e-8,
                       "max deviation " + format_number(worst) + " (tol 1e-8)"});
  }

  {  // product decomposition reconstructs the effective Bell density
    double worst = 0.0;
    for (double eps : {0.0, 0.03, 0.07, 1.0 / 9.0}) {
      const ProductDecomposition dec = braunstein_decomposition(eps);
      const PureState bell = two_qubit_state(1 / std::sqrt(2.0), 0, 0, 1 / std::sqrt(2.0));
      const Matrix target = effective_pure_density({eps, bell});
      worst = std::max(worst, (dec.reconstruct() - target).cwiseAbs().maxCoeff());
      double min_w = 1.0;
      for (double w : dec.weights()) min_w = std::min(min_w, w);
      worst = std::max(worst, std::abs(min_w - (1.0 - 9.0 * eps) / 36.0));
    }
    results.push_back({"decomposition-reconstruction", worst <= 1e-12,
                       "max deviation " + format_number(worst) + " (tol 1e-12)"});
  }

  {  // expectations agree across compositions sharing a density matrix
    SplitStream s = root.child(2);
    std::vector<std::pair<EnsembleComposition, EnsembleComposition>> pairs;
    pairs.emplace_back(z_mixture(100), x_mixture(100));
    pairs.emplace_back(bb84_mixture(100), z_mixture(100));
    pairs.emplace_back(effective_bell_composition(100, 0.08),
                       decomposition_to_composition(braunstein_decomposition(0.08), 100));
    for (int trial = 0; trial < 10; ++trial) {
      const Eigen::Index d = (s.next() % 2 == 0) ? 2 : 4;
      EnsembleComposition comp = random_integer_composition(s, d, 50);
      EnsembleComposition mirror = eigenbasis_composition(comp);
      pairs.emplace_back(std::move(comp), std::move(mirror));
    }
    double worst = 0.0;
    for (const auto& [a, b] : pairs) {
      for (int k = 0; k < 10; ++k) {
        const HermitianObservable omega = random_observable(s, a.dim());
        const double ea = ensemble_expectation(a, omega);
        const double eb = ensemble_expectation(b, omega);
        worst = std::max(worst, std::abs(ea - eb) / std::max(1.0, std::abs(ea)));
      }
    }
    results.push_back({"esd-expectation-invariance", worst <= 1e-9,
                       "max relative deviation " + format_number(worst) + " (tol 1e-9)"});
  }

  {  // same density matrix, different fluctuations for the canonical pairs
    const double gap_z = std::abs(fluct(z_mixture(100), sigma_z_single().per_molecule).fluctuation -
                                  fluct(x_mixture(100), sigma_z_single().per_molecule).fluctuation);
    const double gap_zz =
        std::abs(fluct(effective_bell_composition(100, 0.08), sigma_zz_pair().per_molecule)
                     .fluctuation -
                 fluct(decomposition_to_composition(braunstein_decomposition(0.08), 100),
                       sigma_zz_pair().per_molecule)
                     .fluctuation);
    results.push_back({"esd-fluctuation-distinguishability", gap_z > 1e-6 && gap_zz > 1e-6,
                       "fluctuation gaps " + format_number(gap_z) + ", " + format_number(gap_zz) +
                           " (must exceed 1e-6)"});
  }

  return results;
}

}  // namespace esd
