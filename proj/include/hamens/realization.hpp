#pragma once

#include <array>
#include <utility>

#include "hamens/linalg.hpp"
#include "hamens/scenario.hpp"

// Single realizations of the ensemble: Hamiltonians, closed-form
// propagators, and closed-form reduced-state elements.
//
// Basis conventions. Each qubit uses {|+>, |->} with |+> first.
//  - Single-qubit problem: A (x) B, index 2*iA + iB.
//  - Two-qubit problem:    A1 (x) A2 (x) B1, index 4*iA1 + 2*iA2 + iB1.
//    A2 is the auxiliary qubit coupled to A1.

namespace hamens {

/// f(eps) = sqrt(alpha^2 - 1/4) (eps - omega_a).
double coupling_strength(double eps, const CouplingLaw& law, double omega_a);

/// H = (omega_a sz^A + eps sz^B)/2 + f(eps) (s+^A s-^B + h.c.), 4x4.
DenseComplexMatrix build_h_single(double eps, const SingleQubitScenario& s);

/// exp(-i H t) for build_h_single, assembled from its two invariant blocks.
DenseComplexMatrix propagator_single_closed(double eps, double t, const SingleQubitScenario& s);

/// |->_A (x) (xb|+> + yb|->)_B
StateVector initial_state_single(const SingleQubitScenario& s);

/// Working-qubit elements for one realization.
struct SingleElements
{
    double rho_pp = 0.0;  ///< <+|rho_A|+>
    cplx rho_pm{0.0, 0.0}; ///< <+|rho_A|->
};

SingleElements evolve_single_realization(double eps, double t, const SingleQubitScenario& s);

/// Full 8x8 Hamiltonian: working pair (A1, A2) plus the shifted B1 level.
DenseComplexMatrix build_h_two(double eps_a, double eps_b, const TwoQubitScenario& s);

/// exp(-i H t) for build_h_two from the closed-form invariant-subspace blocks.
DenseComplexMatrix propagator_two_closed(double eps_a, double eps_b, double t,
                                         const TwoQubitScenario& s);

/// Pure components of the three-qubit initial mixture: psi1 has A2 = |+>,
/// psi2 has A2 = |->; both carry the Bell pair (|++> + |-->)/sqrt2 on A1 B1.
std::pair<StateVector, StateVector> initial_states_two();

/// Expansion coefficients of the evolved pure components.
///
/// eta = coefficients of psi1(t) on (A2 A1 B1 labels) |+++>, |-+->, |+-->.
/// xi  = coefficients of psi2(t) on |--->, |+-+>, |-++>.
struct TwoQubitAmplitudes
{
    std::array<cplx, 3> eta;
    std::array<cplx, 3> xi;
};

TwoQubitAmplitudes evolve_two_amplitudes(double eps_a, double eps_b, double t,
                                         const TwoQubitScenario& s);

/// Place the coefficients on the 8-dimensional basis (A1 A2 B1 order).
std::pair<StateVector, StateVector> two_qubit_states(const TwoQubitAmplitudes& amps);

/// Reduced X-state of A1 B1 after tracing out A2, one realization.
XStateElements evolve_two_realization(double eps_a, double eps_b, double t,
                                      const TwoQubitScenario& s);

} // namespace hamens
