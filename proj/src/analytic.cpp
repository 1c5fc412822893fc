#include "hamens/analytic.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>

namespace hamens::analytic {
namespace {

void require_centered(const GaussianSpec& g, const char* what)
{
    if (!g.centered())
        throw std::domain_error(std::string("closed-form averages need a zero-mean ") + what
                                + " distribution");
}

/// cos(2 alpha omega_a t) exp(-2 alpha^2 var t^2): the decaying part of every
/// population.
double population_kernel(double t, double alpha, double omega_a, double var)
{
    return std::cos(2.0 * alpha * omega_a * t) * std::exp(-2.0 * alpha * alpha * var * t * t);
}

double xstate_z_abs_undamped(double t, double alpha, double omega_a)
{
    const double k2 = 1.0 / (4.0 * alpha * alpha);
    return std::numbers::sqrt2 / 4.0
           * std::sqrt(1.0 + k2 + (1.0 - k2) * std::cos(2.0 * alpha * omega_a * t));
}

double xstate_ad_root(double t, const TwoQubitScenario& s)
{
    const double alpha = s.coupling.alpha();
    return std::sqrt(s.x * s.y) * (4.0 * alpha * alpha - 1.0) / (16.0 * alpha * alpha)
           * (1.0 - std::cos(2.0 * alpha * s.omega_a * t));
}

} // namespace

double avg_population_single(double t, const SingleQubitScenario& s)
{
    require_centered(s.noise, "level-spacing");
    const double c = s.coupling.amplitude();
    return 0.5 * c * c * std::norm(s.xb)
           * (1.0 - population_kernel(t, s.coupling.alpha(), s.omega_a, s.noise.variance));
}

cplx avg_coherence_single(double t, const SingleQubitScenario& s)
{
    require_centered(s.noise, "level-spacing");
    const double alpha = s.coupling.alpha();
    const double var = s.noise.variance;
    const double up = alpha + 0.5;
    const double down = alpha - 0.5;
    const cplx first = std::exp(-0.5 * up * up * var * t * t)
                       * std::polar(1.0, down * s.omega_a * t);
    const cplx second = std::exp(-0.5 * down * down * var * t * t)
                        * std::polar(1.0, -up * s.omega_a * t);
    return 0.5 * s.coupling.amplitude() * s.xb * std::conj(s.yb) * (first - second);
}

double steady_population(const CouplingLaw& law, cplx xb)
{
    const double c = law.amplitude();
    return 0.5 * c * c * std::norm(xb);
}

ThermalTarget::ThermalTarget(double bd) : beta_delta(bd)
{
    if (std::isnan(bd) || bd < 0.0)
        throw std::invalid_argument("beta*Delta must be nonnegative");
}

double thermal_population(ThermalTarget target)
{
    if (std::isinf(target.beta_delta))
        return 0.0;
    return 1.0 / (1.0 + std::exp(target.beta_delta));
}

ThermalInversion invert_thermal(double p_plus)
{
    return {invert_thermal_alpha(p_plus, 1.0), 1.0};
}

double invert_thermal_alpha(double p_plus, cplx xb)
{
    const double weight = std::norm(xb);
    if (!(p_plus >= 0.0) || !(weight > 0.0) || !(p_plus < 0.5 * weight))
        throw std::domain_error("target population is unreachable: need 0 <= P+ < |xb|^2/2");
    // (c^2/2)|xb|^2 = P+  with  c^2 = 1 - 1/(4 alpha^2)
    const double c2 = 2.0 * p_plus / weight;
    return 0.5 / std::sqrt(1.0 - c2);
}

double dissipation_rate(double t, const CouplingLaw& law, double variance)
{
    if (!(t >= 0.0) || !(variance >= 0.0))
        throw std::invalid_argument("dissipation_rate needs t >= 0 and variance >= 0");
    return 2.0 * law.alpha() * law.alpha() * variance * t;
}

AveragedXState avg_xstate_two(double t, const TwoQubitScenario& s)
{
    require_centered(s.noise_a, "eps_a");
    require_centered(s.noise_b, "eps_b");
    const double alpha = s.coupling.alpha();
    const double c2 = s.coupling.amplitude() * s.coupling.amplitude();
    const double var_a = s.noise_a.variance;
    const double var_b = s.noise_b.variance;
    const double transfer = 1.0 - population_kernel(t, alpha, s.omega_a, var_a);

    XStateElements e;
    e.a = 0.25 * s.x * c2 * transfer;
    e.d = 0.25 * s.y * c2 * transfer;
    e.b = 0.5 * s.x + 0.5 * s.y * (1.0 - 0.5 * c2 * transfer);
    e.c = 0.5 * s.y + 0.5 * s.x * (1.0 - 0.5 * c2 * transfer);

    const double k = 1.0 / (2.0 * alpha);
    const double up = alpha + 0.5;
    const double down = alpha - 0.5;
    const cplx branch_up = std::polar(1.0, alpha * s.omega_a * t)
                           * std::exp(-0.5 * up * up * var_a * t * t) * (1.0 - k);
    const cplx branch_down = std::polar(1.0, -alpha * s.omega_a * t)
                             * std::exp(-0.5 * down * down * var_a * t * t) * (1.0 + k);
    e.z = 0.25 * std::exp(-0.5 * var_b * t * t)
          * std::polar(1.0, -0.5 * (s.omega_a + 2.0 * s.omega_b) * t) * (branch_up + branch_down);
    return AveragedXState(e);
}

CoherenceBalance special_no_longitudinal(double t, const TwoQubitScenario& s)
{
    if (s.noise_a.variance != 0.0 || s.noise_b.variance != 0.0 || !(s.coupling.alpha() > 0.5))
        throw std::domain_error("special_no_longitudinal needs zero variances and alpha > 1/2");
    return {xstate_z_abs_undamped(t, s.coupling.alpha(), s.omega_a), xstate_ad_root(t, s)};
}

CoherenceBalance special_transverse_only(double t, const TwoQubitScenario& s)
{
    if (s.noise_a.variance != 0.0 || !(s.noise_b.variance > 0.0))
        throw std::domain_error("special_transverse_only needs var(eps_a) = 0 and var(eps_b) > 0");
    const double damping = std::exp(-0.5 * s.noise_b.variance * t * t);
    return {damping * xstate_z_abs_undamped(t, s.coupling.alpha(), s.omega_a),
            xstate_ad_root(t, s)};
}

} // namespace hamens::analytic
