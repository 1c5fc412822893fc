#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <functional>

#include "hamens/scenario.hpp"

namespace hamens {

/// Neumaier-compensated running sum.
class CompensatedSum
{
  public:
    void add(double v) noexcept
    {
        const double t = sum_ + v;
        if (std::abs(sum_) >= std::abs(v))
            comp_ += (sum_ - t) + v;
        else
            comp_ += (v - t) + sum_;
        sum_ = t;
    }
    double value() const noexcept { return sum_ + comp_; }

  private:
    double sum_ = 0.0;
    double comp_ = 0.0;
};

/// Worker count from HAMENS_WORKERS, else the hardware concurrency (>= 1).
std::size_t default_worker_count();

/// Run body(i) for i in [0, n) on `workers` threads (0 = default).
/// Each index is visited exactly once; callers write to index-owned slots.
void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& body);

struct SamplingOptions
{
    std::size_t samples = 1000;
    std::uint64_t seed = 1;
    std::size_t workers = 0; ///< 0 selects default_worker_count()
};

enum class SingleObservable
{
    population, ///< rho_pp
    coherence,  ///< re_rho_pm, im_rho_pm
    all,
};

/// Ensemble mean of the working-qubit elements over Gaussian eps draws.
///
/// Columns: rho_pp, re_rho_pm, im_rho_pm (as selected), each followed by a
/// `_se` standard-error column. Realization i draws from seed_stream(seed, i);
/// every grid point sums its realizations in index order, so the output is
/// bit-identical for any worker count.
Trajectory sample_ensemble(const SingleQubitScenario& s, const SamplingOptions& opts,
                           const TimeGrid& grid,
                           SingleObservable observable = SingleObservable::all);

/// Ensemble mean of the reduced X-state. Columns a, b, c, d, re_z, im_z and
/// their `_se` companions. Each realization draws eps_a then eps_b.
Trajectory sample_ensemble(const TwoQubitScenario& s, const SamplingOptions& opts,
                           const TimeGrid& grid);

/// X-state elements at grid index i of a two-qubit Trajectory.
XStateElements xstate_at(const Trajectory& traj, std::size_t i);

} // namespace hamens
