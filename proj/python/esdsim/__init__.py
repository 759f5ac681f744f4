"""Quantum ensembles as explicit pure-state compositions.

Thin wrapper around the C++ core: density matrices, collective-observable
expectations, exact ensemble fluctuations, Born-rule Monte Carlo estimates,
and the scenario runner.
"""

from ._core import (  # noqa: F401
    CollectiveObservable,
    ConfigError,
    EnsembleComposition,
    EstimateReport,
    FluctuationReport,
    NumericalInconsistency,
    PositivityError,
    PreskillResult,
    ProductDecomposition,
    apply_unitary,
    apportion_integer_counts,
    braunstein_decomposition,
    concurrence,
    decomposition_to_composition,
    density_matrix,
    distinguish_compositions,
    effective_bell_composition,
    effective_pure_density,
    ensemble_expectation,
    entanglement_census,
    estimate_fluctuation,
    fluctuation_identical_mixed,
    fluctuation_proper,
    from_pauli_terms,
    full_product_state,
    gorter_t1,
    molecule_expectation,
    oracle_fluctuation,
    pairwise_zz,
    partial_trace,
    pauli_expand,
    pauli_matrix,
    pauli_string_matrix,
    preskill_protocol,
    random_kick_average_quadrature,
    random_kick_average_uniform,
    run_invariant_suite,
    run_scenario,
    same_density_matrix,
    sample_rounds,
    scenario_registry,
    sigma_z_single,
    sigma_zz_pair,
    signed_axis_state,
    tensor_product,
)

__all__ = [name for name in dir() if not name.startswith("_")]
__version__ = "0.1.0"
