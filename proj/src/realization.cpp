#include "hamens/realization.hpp"

#include <cmath>
#include <numbers>

namespace hamens {
namespace {

constexpr cplx kI{0.0, 1.0};

/// sin(E t) / E with the removable singularity at E t = 0.
double sin_over(double energy, double t)
{
    const double et = energy * t;
    if (std::abs(et) < 1e-6)
        return t * (1.0 - et * et / 6.0);
    return std::sin(et) / energy;
}

/// Working qubit + its auxiliary (W (x) X), 4x4.
DenseComplexMatrix h_pair(double eps, double omega_a, const CouplingLaw& law)
{
    const double f = coupling_strength(eps, law, omega_a);
    auto h = kron(pauli::z(), pauli::identity()) * cplx{0.5 * omega_a, 0.0};
    h += kron(pauli::identity(), pauli::z()) * cplx{0.5 * eps, 0.0};
    const auto hop = kron(pauli::raising(), pauli::lowering());
    h += hop * cplx{f, 0.0};
    h += hop.adjoint() * cplx{f, 0.0};
    return h;
}

/// Closed-form exp(-i H t) for h_pair.
DenseComplexMatrix u_pair(double eps, double t, double omega_a, const CouplingLaw& law)
{
    const double f = coupling_strength(eps, law, omega_a);
    const double detune = 0.5 * (omega_a - eps);
    const double energy = std::sqrt(detune * detune + f * f);
    const double cs = std::cos(energy * t);
    const double sn = sin_over(energy, t);

    DenseComplexMatrix u(4);
    // Exchange block {|+->, |-+>}: cos(Et) - i sin(Et)/E [detune sz + f sx].
    u(1, 1) = cplx{cs, -sn * detune};
    u(2, 2) = cplx{cs, sn * detune};
    u(1, 2) = cplx{0.0, -sn * f};
    u(2, 1) = cplx{0.0, -sn * f};
    // Aligned block {|++>, |-->}: diagonal phases.
    const double phase = 0.5 * (omega_a + eps) * t;
    u(0, 0) = std::polar(1.0, -phase);
    u(3, 3) = std::polar(1.0, phase);
    return u;
}

} // namespace

double coupling_strength(double eps, const CouplingLaw& law, double omega_a)
{
    return law.slope() * (eps - omega_a);
}

DenseComplexMatrix build_h_single(double eps, const SingleQubitScenario& s)
{
    return h_pair(eps, s.omega_a, s.coupling);
}

DenseComplexMatrix propagator_single_closed(double eps, double t, const SingleQubitScenario& s)
{
    return u_pair(eps, t, s.omega_a, s.coupling);
}

StateVector initial_state_single(const SingleQubitScenario& s)
{
    return StateVector({0.0, 0.0, s.xb, s.yb});
}

SingleElements evolve_single_realization(double eps, double t, const SingleQubitScenario& s)
{
    const double c = s.coupling.amplitude();
    const double theta = s.coupling.alpha() * (eps - s.omega_a) * t;
    const double sn = std::sin(theta);
    SingleElements out;
    out.rho_pp = c * c * std::norm(s.xb) * sn * sn;
    out.rho_pm = -kI * c * s.xb * std::conj(s.yb) * std::polar(1.0, -0.5 * (eps + s.omega_a) * t)
                 * sn;
    return out;
}

DenseComplexMatrix build_h_two(double eps_a, double eps_b, const TwoQubitScenario& s)
{
    auto h = kron(h_pair(eps_a, s.omega_a, s.coupling), pauli::identity());
    h += kron(DenseComplexMatrix::identity(4), pauli::z())
         * cplx{0.5 * (s.omega_b + eps_b), 0.0};
    return h;
}

DenseComplexMatrix propagator_two_closed(double eps_a, double eps_b, double t,
                                         const TwoQubitScenario& s)
{
    const double phase_b = 0.5 * (s.omega_b + eps_b) * t;
    const cplx b_phases[] = {std::polar(1.0, -phase_b), std::polar(1.0, phase_b)};
    return kron(u_pair(eps_a, t, s.omega_a, s.coupling), DenseComplexMatrix::diagonal(b_phases));
}

std::pair<StateVector, StateVector> initial_states_two()
{
    const double r = std::numbers::sqrt2 / 2.0;
    std::vector<cplx> psi1(8, 0.0), psi2(8, 0.0);
    psi1[0] = r; // A1=+, A2=+, B1=+
    psi1[5] = r; // A1=-, A2=+, B1=-
    psi2[2] = r; // A1=+, A2=-, B1=+
    psi2[7] = r; // A1=-, A2=-, B1=-
    return {StateVector(std::move(psi1)), StateVector(std::move(psi2))};
}

TwoQubitAmplitudes evolve_two_amplitudes(double eps_a, double eps_b, double t,
                                         const TwoQubitScenario& s)
{
    const double r = std::numbers::sqrt2 / 2.0;
    const double f = coupling_strength(eps_a, s.coupling, s.omega_a);
    const double detune = s.omega_a - eps_a;
    const double energy = std::sqrt(0.25 * detune * detune + f * f);
    const double cs = std::cos(energy * t);
    const double sn = sin_over(energy, t);
    const double total = 0.5 * (s.omega_a + eps_a + s.omega_b + eps_b) * t;
    const double shift_b = 0.5 * (eps_b + s.omega_b) * t;

    TwoQubitAmplitudes out;
    out.eta[0] = r * std::polar(1.0, -total);
    out.eta[1] = -kI * r * std::polar(1.0, shift_b) * f * sn;
    out.eta[2] = r * std::polar(1.0, shift_b) * cplx{cs, 0.5 * sn * detune};
    out.xi[0] = r * std::polar(1.0, total);
    out.xi[1] = -kI * r * std::polar(1.0, -shift_b) * f * sn;
    out.xi[2] = r * std::polar(1.0, -shift_b) * cplx{cs, -0.5 * sn * detune};
    return out;
}

std::pair<StateVector, StateVector> two_qubit_states(const TwoQubitAmplitudes& amps)
{
    std::vector<cplx> psi1(8, 0.0), psi2(8, 0.0);
    psi1[0] = amps.eta[0]; // A2=+, A1=+, B1=+
    psi1[3] = amps.eta[1]; // A2=-, A1=+, B1=-
    psi1[5] = amps.eta[2]; // A2=+, A1=-, B1=-
    psi2[7] = amps.xi[0];  // A2=-, A1=-, B1=-
    psi2[4] = amps.xi[1];  // A2=+, A1=-, B1=+
    psi2[2] = amps.xi[2];  // A2=-, A1=+, B1=+
    return {StateVector(std::move(psi1)), StateVector(std::move(psi2))};
}

XStateElements evolve_two_realization(double eps_a, double eps_b, double t,
                                      const TwoQubitScenario& s)
{
    const double alpha = s.coupling.alpha();
    const double c2 = s.coupling.amplitude() * s.coupling.amplitude();
    const double theta = alpha * (s.omega_a - eps_a) * t;
    const double gamma = std::sin(theta);
    const double g2 = gamma * gamma;

    XStateElements e;
    e.a = 0.5 * s.x * c2 * g2;
    e.d = 0.5 * s.y * c2 * g2;
    e.b = 0.5 * s.x + 0.5 * s.y * (1.0 - c2 * g2);
    e.c = 0.5 * s.y + 0.5 * s.x * (1.0 - c2 * g2);
    const cplx zeta =
        std::polar(1.0, -0.5 * (s.omega_a + eps_a + 2.0 * s.omega_b + 2.0 * eps_b) * t);
    e.z = 0.5 * (s.x + s.y) * zeta * cplx{std::cos(theta), -gamma / (2.0 * alpha)};
    return e;
}

} // namespace hamens
