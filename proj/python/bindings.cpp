#include "esdsim/decompositions.hpp"
#include "esdsim/ensemble.hpp"
#include "esdsim/linalg.hpp"
#include "esdsim/observables.hpp"
#include "esdsim/sampling.hpp"
#include "esdsim/scenarios.hpp"

#include <pybind11/complex.h>
#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <optional>
#include <utility>

namespace py = pybind11;

namespace {

esd::SignedAxis parse_signed_axis(const std::string& s) {
  if (s.size() != 2 || (s[1] != '+' && s[1] != '-'))
    throw std::invalid_argument("signed axis must look like 'x+', 'y-', 'z+'");
  esd::Axis axis;
  switch (s[0]) {
    case 'x': axis = esd::Axis::X; break;
    case 'y': axis = esd::Axis::Y; break;
    case 'z': axis = esd::Axis::Z; break;
    default: throw std::invalid_argument("axis must be one of x, y, z");
  }
  return {axis, s[1] == '+' ? +1 : -1};
}

esd::EnsembleComposition make_composition(
    const std::vector<std::pair<double, esd::Vector>>& components) {
  std::vector<esd::Component> out;
  out.reserve(components.size());
  for (const auto& [count, amplitudes] : components)
    out.push_back({count, esd::PureState(amplitudes)});
  return esd::EnsembleComposition(std::move(out));
}

py::dict row_to_dict(const esd::ReportRow& row) {
  py::dict d;
  d["scenario"] = row.scenario;
  d["composition_label"] = row.composition_label;
  d["observable_label"] = row.observable_label;
  d["n"] = row.n;
  d["epsilon"] = row.epsilon ? py::cast(*row.epsilon) : py::none();
  d["exact_expectation"] = row.exact_expectation;
  d["exact_fluctuation"] = row.exact_fluctuation;
  d["mc_mean"] = row.mc_mean ? py::cast(*row.mc_mean) : py::none();
  d["mc_std"] = row.mc_std ? py::cast(*row.mc_std) : py::none();
  d["mc_stderr"] = row.mc_stderr ? py::cast(*row.mc_stderr) : py::none();
  d["rounds"] = row.rounds;
  d["seed"] = row.seed;
  d["entanglement_census"] =
      row.entanglement_census ? py::cast(*row.entanglement_census) : py::none();
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Quantum ensembles as explicit pure-state compositions: density matrices, "
            "collective expectations, exact and Monte Carlo fluctuations.";

  py::register_exception<esd::positivity_error>(m, "PositivityError", PyExc_ValueError);
  py::register_exception<esd::numerical_inconsistency>(m, "NumericalInconsistency",
                                                       PyExc_ArithmeticError);
  py::register_exception<esd::config_error>(m, "ConfigError", PyExc_ValueError);

  py::class_<esd::EnsembleComposition>(m, "EnsembleComposition")
      .def(py::init(&make_composition), py::arg("components"),
           "components: list of (count, amplitude vector) pairs")
      .def_property_readonly("components",
                             [](const esd::EnsembleComposition& c) {
                               std::vector<std::pair<double, esd::Vector>> out;
                               for (const auto& comp : c.components())
                                 out.emplace_back(comp.count, comp.state.amplitudes());
                               return out;
                             })
      .def_property_readonly("total_molecules", &esd::EnsembleComposition::total_molecules)
      .def_property_readonly("dim", &esd::EnsembleComposition::dim);

  py::class_<esd::CollectiveObservable>(m, "CollectiveObservable")
      .def(py::init([](const std::string& label, const esd::Matrix& matrix) {
             return esd::CollectiveObservable{label, esd::HermitianObservable(matrix)};
           }),
           py::arg("label"), py::arg("matrix"))
      .def_property_readonly("label",
                             [](const esd::CollectiveObservable& o) { return o.label; })
      .def_property_readonly(
          "matrix", [](const esd::CollectiveObservable& o) { return o.per_molecule.matrix(); });

  py::class_<esd::FluctuationReport>(m, "FluctuationReport")
      .def_readonly("expectation_ensemble", &esd::FluctuationReport::expectation_ensemble)
      .def_readonly("fluctuation", &esd::FluctuationReport::fluctuation)
      .def_readonly("per_component_variance", &esd::FluctuationReport::per_component_variance);

  py::class_<esd::EstimateReport>(m, "EstimateReport")
      .def_readonly("empirical_mean", &esd::EstimateReport::empirical_mean)
      .def_readonly("empirical_std", &esd::EstimateReport::empirical_std)
      .def_readonly("stderr_of_std", &esd::EstimateReport::stderr_of_std)
      .def_readonly("rounds", &esd::EstimateReport::rounds)
      .def_readonly("exact_reference", &esd::EstimateReport::exact_reference);

  py::class_<esd::PreskillResult>(m, "PreskillResult")
      .def_readonly("agreement_rate", &esd::PreskillResult::agreement_rate)
      .def_readonly("basis_used", &esd::PreskillResult::basis_used)
      .def_readonly("pairs", &esd::PreskillResult::pairs);

  py::class_<esd::ProductDecomposition>(m, "ProductDecomposition")
      .def("weight",
           [](const esd::ProductDecomposition& d, const std::string& a, const std::string& b) {
             return d.weight(parse_signed_axis(a), parse_signed_axis(b));
           },
           py::arg("left"), py::arg("right"))
      .def_property_readonly("weights",
                             [](const esd::ProductDecomposition& d) {
                               return std::vector<double>(d.weights().begin(), d.weights().end());
                             })
      .def("reconstruct", &esd::ProductDecomposition::reconstruct);

  // linear algebra
  m.def("tensor_product",
        [](const esd::Matrix& a, const esd::Matrix& b) { return esd::tensor_product(a, b); });
  m.def("partial_trace", &esd::partial_trace, py::arg("rho"), py::arg("dims"), py::arg("keep"));
  m.def("pauli_matrix", [](const std::string& which) {
    if (which.size() == 1) {
      switch (which[0]) {
        case 'x': return esd::pauli_matrix(esd::Axis::X);
        case 'y': return esd::pauli_matrix(esd::Axis::Y);
        case 'z': return esd::pauli_matrix(esd::Axis::Z);
        default: throw std::invalid_argument("axis must be x, y, or z");
      }
    }
    return esd::pauli_matrix(parse_signed_axis(which));
  }, "\"z\" gives the Pauli matrix; \"z+\" gives the signed-axis projector");
  m.def("signed_axis_state", [](const std::string& s) {
    return esd::signed_axis_state(parse_signed_axis(s)).amplitudes();
  });
  m.def("pauli_string_matrix", &esd::pauli_string_matrix);
  m.def("pauli_expand", &esd::pauli_expand);
  m.def("concurrence",
        [](const esd::Vector& psi) { return esd::concurrence(esd::PureState(psi)); });

  // ensembles
  m.def("density_matrix", &esd::density_matrix);
  m.def("molecule_expectation", [](const esd::Matrix& rho, const esd::Matrix& a) {
    return esd::molecule_expectation(rho, esd::HermitianObservable(a));
  });
  m.def("ensemble_expectation", [](const esd::EnsembleComposition& c, const esd::Matrix& a) {
    return esd::ensemble_expectation(c, esd::HermitianObservable(a));
  });
  m.def("fluctuation_proper", [](const esd::EnsembleComposition& c, const esd::Matrix& omega) {
    return esd::fluctuation_proper(c, esd::HermitianObservable(omega));
  });
  m.def("fluctuation_identical_mixed",
        [](double n, const esd::Matrix& rho, const esd::Matrix& omega) {
          return esd::fluctuation_identical_mixed(esd::IdenticalMixedEnsemble(n, rho),
                                                  esd::HermitianObservable(omega));
        },
        py::arg("n_molecules"), py::arg("rho"), py::arg("omega"));
  m.def("same_density_matrix", &esd::same_density_matrix, py::arg("a"), py::arg("b"),
        py::arg("tol") = 1e-10);
  m.def("full_product_state", [](const esd::EnsembleComposition& c) {
    return esd::full_product_state(c).amplitudes();
  });
  m.def("oracle_fluctuation", [](const esd::EnsembleComposition& c, const esd::Matrix& omega) {
    const esd::OracleResult r = esd::oracle_fluctuation(c, esd::HermitianObservable(omega));
    return std::make_pair(r.expectation, r.fluctuation);
  });
  m.def("apply_unitary", &esd::apply_unitary);
  m.def("entanglement_census", &esd::entanglement_census);

  // observables
  m.def("sigma_z_single", &esd::sigma_z_single);
  m.def("sigma_zz_pair", &esd::sigma_zz_pair);
  m.def("pairwise_zz", &esd::pairwise_zz, py::arg("n_qubits"));
  m.def("from_pauli_terms", &esd::from_pauli_terms, py::arg("n_qubits"), py::arg("terms"));

  // decompositions
  m.def("effective_pure_density", [](double epsilon, const esd::Vector& target) {
    return esd::effective_pure_density({epsilon, esd::PureState(target)});
  }, py::arg("epsilon"), py::arg("target"));
  m.def("effective_bell_composition", &esd::effective_bell_composition, py::arg("n_molecules"),
        py::arg("epsilon"));
  m.def("braunstein_decomposition", &esd::braunstein_decomposition, py::arg("epsilon"));
  m.def("decomposition_to_composition", &esd::decomposition_to_composition, py::arg("d"),
        py::arg("n_molecules"));
  m.def("random_kick_average_uniform", [](const esd::Matrix& rho, double lo, double hi) {
    return esd::random_kick_average(rho, esd::KickModel::uniform(lo, hi));
  }, py::arg("rho"), py::arg("lo"), py::arg("hi"));
  m.def("random_kick_average_quadrature",
        [](const esd::Matrix& rho, std::vector<double> nodes, std::vector<double> weights) {
          return esd::random_kick_average(
              rho, esd::KickModel::quadrature(std::move(nodes), std::move(weights)));
        },
        py::arg("rho"), py::arg("nodes"), py::arg("weights"));
  m.def("gorter_t1",
        [](const std::vector<double>& energies,
           const std::map<std::pair<int, int>, double>& rates) {
          return esd::gorter_t1({energies, rates});
        },
        py::arg("energies"), py::arg("rates"));

  // sampling
  m.def("apportion_integer_counts", &esd::apportion_integer_counts);
  m.def("sample_rounds",
        [](const esd::EnsembleComposition& c, const esd::CollectiveObservable& o,
           std::uint64_t seed, long rounds, int threads) {
          return esd::sample_rounds(c, o, {seed, rounds}, threads);
        },
        py::arg("comp"), py::arg("observable"), py::arg("seed"), py::arg("rounds"),
        py::arg("threads") = 1);
  m.def("estimate_fluctuation",
        [](const esd::EnsembleComposition& c, const esd::CollectiveObservable& o,
           std::uint64_t seed, long rounds, int threads) {
          return esd::estimate_fluctuation(c, o, {seed, rounds}, threads);
        },
        py::arg("comp"), py::arg("observable"), py::arg("seed"), py::arg("rounds"),
        py::arg("threads") = 1);
  m.def("preskill_protocol",
        [](long pairs, const std::string& basis, std::uint64_t seed) {
          if (basis.size() != 1) throw std::invalid_argument("basis must be 'z' or 'x'");
          return esd::preskill_protocol(pairs, basis[0], esd::SplitStream(seed));
        },
        py::arg("pairs"), py::arg("bob_basis"), py::arg("seed"));
  m.def("distinguish_compositions",
        [](const esd::EnsembleComposition& a, const esd::EnsembleComposition& b,
           const esd::CollectiveObservable& o, const std::vector<double>& data,
           double threshold) {
          const esd::DistinguishReport r = esd::distinguish_compositions(a, b, o, data, threshold);
          py::dict d;
          d["observable_label"] = r.observable_label;
          d["z_statistic"] = r.z_statistic;
          d["chosen"] = r.chosen == esd::Chosen::First    ? "first"
                        : r.chosen == esd::Chosen::Second ? "second"
                                                          : "inconclusive";
          d["threshold"] = r.threshold;
          return d;
        },
        py::arg("a"), py::arg("b"), py::arg("observable"), py::arg("data"),
        py::arg("threshold") = 3.0);

  // scenarios
  m.def("scenario_registry", [] {
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& info : esd::scenario_registry()) out.emplace_back(info.name, info.description);
    return out;
  });
  m.def("run_scenario",
        [](const std::string& scenario, long molecules, std::optional<double> epsilon,
           long rounds, std::uint64_t seed, std::optional<std::string> observable, int threads) {
          esd::ScenarioConfig cfg;
          cfg.scenario = scenario;
          cfg.molecules = molecules;
          cfg.epsilon = epsilon;
          cfg.rounds = rounds;
          cfg.seed = seed;
          cfg.observable = std::move(observable);
          cfg.threads = threads;
          const esd::ScenarioResult result = esd::run_scenario(cfg);
          py::list rows;
          for (const esd::ReportRow& row : result.rows) rows.append(row_to_dict(row));
          py::dict out;
          out["rows"] = rows;
          out["notes"] = result.notes;
          return out;
        },
        py::arg("scenario"), py::arg("molecules") = 100, py::arg("epsilon") = py::none(),
        py::arg("rounds") = 0, py::arg("seed") = 0, py::arg("observable") = py::none(),
        py::arg("threads") = 1);
  m.def("run_invariant_suite", [](std::uint64_t seed) {
    std::vector<std::tuple<std::string, bool, std::string>> out;
    for (const auto& r : esd::run_invariant_suite(seed))
      out.emplace_back(r.name, r.passed, r.detail);
    return out;
  }, py::arg("seed") = 20240817);
}
