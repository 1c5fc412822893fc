#include "hamens/ensemble.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "hamens/realization.hpp"
#include "hamens/rng.hpp"

namespace hamens {

std::size_t default_worker_count()
{
    if (const char* env = std::getenv("HAMENS_WORKERS"))
    {
        try
        {
            const long v = std::stol(env);
            if (v > 0)
                return static_cast<std::size_t>(v);
        }
        catch (const std::exception&)
        {
        }
    }
    return std::max(1u, std::thread::hardware_concurrency());
}

void parallel_for(std::size_t n, std::size_t workers, const std::function<void(std::size_t)>& body)
{
    if (workers == 0)
        workers = default_worker_count();
    workers = std::min(workers, n);
    if (workers <= 1)
    {
        for (std::size_t i = 0; i < n; ++i)
            body(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w)
        pool.emplace_back([&] {
            for (std::size_t i = next++; i < n; i = next++)
                body(i);
        });
}

namespace {

/// Per-point mean and standard error of k components over n realizations.
///
/// `eval(i, t, out)` writes component values of realization i at time t.
template<class Eval>
void reduce_over_grid(std::size_t n, std::size_t k, const TimeGrid& grid, std::size_t workers,
                      Eval eval, std::vector<std::vector<double>>& mean,
                      std::vector<std::vector<double>>& se)
{
    mean.assign(k, std::vector<double>(grid.size()));
    se.assign(k, std::vector<double>(grid.size()));
    parallel_for(grid.size(), workers, [&](std::size_t j) {
        const double t = grid[j];
        std::vector<double> vals(n * k);
        for (std::size_t i = 0; i < n; ++i)
            eval(i, t, &vals[i * k]);
        for (std::size_t m = 0; m < k; ++m)
        {
            CompensatedSum sum;
            for (std::size_t i = 0; i < n; ++i)
                sum.add(vals[i * k + m]);
            const double mu = sum.value() / static_cast<double>(n);
            CompensatedSum sq;
            for (std::size_t i = 0; i < n; ++i)
            {
                const double dv = vals[i * k + m] - mu;
                sq.add(dv * dv);
            }
            mean[m][j] = mu;
            se[m][j] = n > 1 ? std::sqrt(sq.value() / static_cast<double>(n - 1)
                                         / static_cast<double>(n))
                             : 0.0;
        }
    });
}

void require_samples(const SamplingOptions& opts)
{
    if (opts.samples == 0)
        throw std::invalid_argument("sample count must be at least 1");
}

} // namespace

Trajectory sample_ensemble(const SingleQubitScenario& s, const SamplingOptions& opts,
                           const TimeGrid& grid, SingleObservable observable)
{
    require_samples(opts);
    const std::size_t n = opts.samples;
    std::vector<double> eps(n);
    for (std::size_t i = 0; i < n; ++i)
        eps[i] = seed_stream(opts.seed, i).gaussian(s.noise);

    std::vector<std::vector<double>> mean, se;
    reduce_over_grid(
        n, 3, grid, opts.workers,
        [&](std::size_t i, double t, double* out) {
            const auto e = evolve_single_realization(eps[i], t, s);
            out[0] = e.rho_pp;
            out[1] = e.rho_pm.real();
            out[2] = e.rho_pm.imag();
        },
        mean, se);

    Trajectory traj(grid, {Source::monte_carlo, n, opts.seed});
    if (observable != SingleObservable::coherence)
    {
        traj.add_column("rho_pp", std::move(mean[0]));
        traj.add_column("rho_pp_se", std::move(se[0]));
    }
    if (observable != SingleObservable::population)
    {
        traj.add_column("re_rho_pm", std::move(mean[1]));
        traj.add_column("re_rho_pm_se", std::move(se[1]));
        traj.add_column("im_rho_pm", std::move(mean[2]));
        traj.add_column("im_rho_pm_se", std::move(se[2]));
    }
    return traj;
}

Trajectory sample_ensemble(const TwoQubitScenario& s, const SamplingOptions& opts,
                           const TimeGrid& grid)
{
    require_samples(opts);
    const std::size_t n = opts.samples;
    std::vector<double> eps_a(n), eps_b(n);
    for (std::size_t i = 0; i < n; ++i)
    {
        auto rng = seed_stream(opts.seed, i);
        eps_a[i] = rng.gaussian(s.noise_a);
        eps_b[i] = rng.gaussian(s.noise_b);
    }

    std::vector<std::vector<double>> mean, se;
    reduce_over_grid(
        n, 6, grid, opts.workers,
        [&](std::size_t i, double t, double* out) {
            const auto e = evolve_two_realization(eps_a[i], eps_b[i], t, s);
            out[0] = e.a;
            out[1] = e.b;
            out[2] = e.c;
            out[3] = e.d;
            out[4] = e.z.real();
            out[5] = e.z.imag();
        },
        mean, se);

    Trajectory traj(grid, {Source::monte_carlo, n, opts.seed});
    const char* names[] = {"a", "b", "c", "d", "re_z", "im_z"};
    for (std::size_t m = 0; m < 6; ++m)
    {
        traj.add_column(names[m], std::move(mean[m]));
        traj.add_column(std::string(names[m]) + "_se", std::move(se[m]));
    }
    return traj;
}

XStateElements xstate_at(const Trajectory& traj, std::size_t i)
{
    XStateElements e;
    e.a = traj.column("a").at(i);
    e.b = traj.column("b").at(i);
    e.c = traj.column("c").at(i);
    e.d = traj.column("d").at(i);
    e.z = {traj.column("re_z").at(i), traj.column("im_z").at(i)};
    return e;
}

} // namespace hamens
