#pragma once

#include "hamens/scenario.hpp"

// Closed-form ensemble averages over zero-mean Gaussian level spacings.
// Every function taking a scenario rejects a nonzero noise mean with
// std::domain_error: the averages rely on the zero-mean Gaussian moments.

namespace hamens::analytic {

/// Averaged excited-state population of the working qubit.
double avg_population_single(double t, const SingleQubitScenario& s);

/// Averaged coherence <+|rho_A|-> of the working qubit.
cplx avg_coherence_single(double t, const SingleQubitScenario& s);

/// Envelope limit of avg_population_single: (c^2/2)|xb|^2, in [0, 1/2).
/// For omega_a != 0 the population keeps oscillating; this is the value
/// its decaying envelope approaches.
double steady_population(const CouplingLaw& law, cplx xb);

/// The product beta * Delta of a two-level system in equilibrium.
struct ThermalTarget
{
    explicit ThermalTarget(double beta_delta);
    double beta_delta;
};

/// Excited-state occupation e^{-bD} / (1 + e^{-bD}).
double thermal_population(ThermalTarget target);

struct ThermalInversion
{
    double alpha;
    double xb;
};

/// Coupling that makes steady_population equal p_plus, with xb fixed to 1.
/// Requires 0 <= p_plus < 1/2.
ThermalInversion invert_thermal(double p_plus);

/// Same, for a caller-chosen auxiliary amplitude. Requires
/// 0 <= p_plus < |xb|^2 / 2.
double invert_thermal_alpha(double p_plus, cplx xb);

/// Gamma(t) = 2 alpha^2 var t.
double dissipation_rate(double t, const CouplingLaw& law, double variance);

/// Averaged reduced X-state of the two working qubits.
AveragedXState avg_xstate_two(double t, const TwoQubitScenario& s);

/// |z| and sqrt(a d), the two terms that decide the concurrence.
struct CoherenceBalance
{
    double z_abs;
    double ad_root;
};

/// Both variances zero (no longitudinal relaxation), alpha > 1/2.
CoherenceBalance special_no_longitudinal(double t, const TwoQubitScenario& s);

/// Transverse relaxation only: variance of eps_a zero, variance of eps_b > 0.
CoherenceBalance special_transverse_only(double t, const TwoQubitScenario& s);

} // namespace hamens::analytic
