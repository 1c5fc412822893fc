"""Hamiltonian-ensemble simulation of qubit relaxation and two-qubit entanglement."""

from ._hamens import (
    AveragedXState,
    CriticalTime,
    GaussianSpec,
    SingleQubitScenario,
    TwoQubitScenario,
    avg_coherence_single,
    avg_population_single,
    avg_xstate_two,
    concurrence_general,
    concurrence_x,
    find_tc,
    find_tc_auto,
    invert_thermal,
    minimum_t_max,
    sample_single,
    sample_two,
    steady_population,
    thermal_population,
    validate,
)

__all__ = [
    "AveragedXState",
    "CriticalTime",
    "GaussianSpec",
    "SingleQubitScenario",
    "TwoQubitScenario",
    "avg_coherence_single",
    "avg_population_single",
    "avg_xstate_two",
    "concurrence_general",
    "concurrence_x",
    "find_tc",
    "find_tc_auto",
    "invert_thermal",
    "minimum_t_max",
    "sample_single",
    "sample_two",
    "steady_population",
    "thermal_population",
    "validate",
]
