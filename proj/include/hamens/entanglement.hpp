#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <variant>

#include "hamens/linalg.hpp"
#include "hamens/scenario.hpp"

namespace hamens::entanglement {

/// Concurrence in [0, 1].
class ConcurrenceValue
{
  public:
    /// Values within 1e-12 outside [0, 1] are clamped; anything further throws.
    explicit ConcurrenceValue(double v);
    double value() const noexcept { return value_; }
    operator double() const noexcept { return value_; }

  private:
    double value_;
};

/// Wootters concurrence of a two-qubit state.
///
/// The square roots of the eigenvalues of rho (sy sy) rho* (sy sy) are the
/// singular values of F^dag (sy sy) F*, where rho = F F^dag. Taking the SVD
/// avoids both a non-Hermitian eigensolver and the square root of
/// near-zero eigenvalues.
ConcurrenceValue concurrence_general(const DensityMatrix& rho);

/// 2 max(0, |z| - sqrt(a d)) for an X-state.
ConcurrenceValue concurrence_x(const AveragedXState& x);

/// g(t) = |z(t)| - sqrt(a(t) d(t)) of the averaged X-state; C = 2 max(0, g).
double coherence_margin(double t, const TwoQubitScenario& s);

/// Result of the sudden-death search. `t_c` is empty when the concurrence
/// never vanishes identically after a finite time.
struct CriticalTime
{
    std::optional<double> t_c;
    double t_lo = 0.0; ///< last time known to have C > 0
    double t_hi = 0.0; ///< first time known to have C = 0 (equals t_c)
    double tolerance = 0.0;
};

inline constexpr double kCriticalTimeTolerance = 1e-8;

/// True when the averaged dynamics has a finite disentanglement time:
/// alpha > 1/2, var(eps_a) > 0 and x y > 0.
bool has_finite_tc(const TwoQubitScenario& s);

/// Earliest time after which the envelope bounds alone guarantee g <= 0.
double envelope_cutoff(const TwoQubitScenario& s);

/// Smallest t_max accepted by find_tc: sqrt(a d) has reached 99% of its
/// asymptote and the envelope cutoff has passed. Requires has_finite_tc.
double minimum_t_max(const TwoQubitScenario& s);

/// Infimum of the times after which the concurrence stays exactly zero.
///
/// Scans `grid_density` points up to the envelope cutoff for the last point
/// with g > 0, bisects the bracketing interval to kCriticalTimeTolerance, and
/// verifies g <= 0 on `verify_points` points over [t_c, t_max]. Throws
/// std::invalid_argument when t_max < minimum_t_max(s).
CriticalTime find_tc(const TwoQubitScenario& s, double t_max, std::size_t grid_density = 4000,
                     std::size_t verify_points = 1000);

/// find_tc with t_max = max(minimum_t_max(s), hint).
CriticalTime find_tc_auto(const TwoQubitScenario& s, double t_max_hint = 0.0,
                          std::size_t grid_density = 4000);

struct AnalyticSource
{
};

struct MonteCarloSource
{
    std::size_t samples = 300;
    std::uint64_t seed = 1;
    std::size_t workers = 0;
};

using ConcurrenceSource = std::variant<AnalyticSource, MonteCarloSource>;

/// Column "C" on the grid, from the averaged formulas or from sampling.
/// Every averaged state is checked with validate_density before use.
Trajectory concurrence_trajectory(const TwoQubitScenario& s, const TimeGrid& grid,
                                  const ConcurrenceSource& source);

} // namespace hamens::entanglement
