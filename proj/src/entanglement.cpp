#include "hamens/entanglement.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include <Eigen/Dense>

#include "hamens/analytic.hpp"
#include "hamens/ensemble.hpp"

namespace hamens::entanglement {
namespace {

using Mat4 = Eigen::Matrix<cplx, 4, 4>;

// Eigenvalues of rho below this are round-off of an exact zero.
constexpr double kRankCut = 1e-14;

Mat4 spin_flip()
{
    Mat4 y = Mat4::Zero();
    y(0, 3) = -1.0;
    y(1, 2) = 1.0;
    y(2, 1) = 1.0;
    y(3, 0) = -1.0;
    return y;
}

double uniform_point(double lo, double hi, std::size_t i, std::size_t n)
{
    if (n < 2)
        return hi;
    return lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
}

} // namespace

ConcurrenceValue::ConcurrenceValue(double v) : value_(v)
{
    constexpr double slack = 1e-12;
    if (!(v >= -slack && v <= 1.0 + slack))
        throw std::invalid_argument("concurrence outside [0, 1]");
    value_ = std::clamp(v, 0.0, 1.0);
}

ConcurrenceValue concurrence_general(const DensityMatrix& rho)
{
    if (rho.dim() != 4)
        throw std::invalid_argument("concurrence needs a two-qubit (4x4) state");

    const auto eig = hermitian_eigen(rho.matrix());
    Mat4 factor;
    for (int k = 0; k < 4; ++k)
    {
        const double lambda = eig.values[static_cast<std::size_t>(k)];
        const double root = lambda > kRankCut ? std::sqrt(lambda) : 0.0;
        for (int r = 0; r < 4; ++r)
            factor(r, k) = eig.vectors(static_cast<std::size_t>(r), static_cast<std::size_t>(k))
                           * root;
    }
    const Mat4 m = factor.adjoint() * spin_flip() * factor.conjugate();
    Eigen::JacobiSVD<Mat4> svd(m);
    const auto& s = svd.singularValues(); // decreasing
    return ConcurrenceValue(std::max(0.0, s(0) - s(1) - s(2) - s(3)));
}

ConcurrenceValue concurrence_x(const AveragedXState& x)
{
    return ConcurrenceValue(2.0 * std::max(0.0, std::abs(x.z()) - std::sqrt(x.a() * x.d())));
}

double coherence_margin(double t, const TwoQubitScenario& s)
{
    const auto x = analytic::avg_xstate_two(t, s);
    return std::abs(x.z()) - std::sqrt(x.a() * x.d());
}

bool has_finite_tc(const TwoQubitScenario& s)
{
    return !s.coupling.decoupled() && s.noise_a.variance > 0.0 && s.x * s.y > 0.0;
}

double envelope_cutoff(const TwoQubitScenario& s)
{
    if (!has_finite_tc(s))
        throw std::domain_error("no finite disentanglement time for this scenario");
    const double alpha = s.coupling.alpha();
    const double k = 1.0 / (2.0 * alpha);
    const double up = alpha + 0.5;
    const double down = alpha - 0.5;
    const double va = s.noise_a.variance;
    const double vb = s.noise_b.variance;
    const double c2 = s.coupling.amplitude() * s.coupling.amplitude();
    const double ad_asym = std::sqrt(s.x * s.y) * c2 / 4.0;

    // Upper bound on |z| minus lower bound on sqrt(a d); decreasing in t.
    auto gap = [&](double t) {
        const double t2 = t * t;
        const double z_env = 0.25 * std::exp(-0.5 * vb * t2)
                             * ((1.0 - k) * std::exp(-0.5 * up * up * va * t2)
                                + (1.0 + k) * std::exp(-0.5 * down * down * va * t2));
        const double ad_low = ad_asym * (1.0 - std::exp(-2.0 * alpha * alpha * va * t2));
        return z_env - ad_low;
    };

    double hi = 1.0;
    while (gap(hi) > 0.0)
        hi *= 2.0;
    double lo = 0.0;
    for (int it = 0; it < 200 && hi - lo > 1e-12 * hi; ++it)
    {
        const double mid = 0.5 * (lo + hi);
        (gap(mid) > 0.0 ? lo : hi) = mid;
    }
    return hi;
}

double minimum_t_max(const TwoQubitScenario& s)
{
    const double alpha = s.coupling.alpha();
    // 1 - exp(-2 alpha^2 var t^2) >= 0.99
    const double t99 = std::sqrt(std::log(100.0) / (2.0 * alpha * alpha * s.noise_a.variance));
    return std::max(t99, envelope_cutoff(s));
}

CriticalTime find_tc(const TwoQubitScenario& s, double t_max, std::size_t grid_density,
                     std::size_t verify_points)
{
    if (!s.noise_a.centered() || !s.noise_b.centered())
        throw std::domain_error("critical time uses the zero-mean averaged state");
    if (!(t_max > 0.0))
        throw std::invalid_argument("t_max must be positive");
    if (grid_density < 2 || verify_points < 2)
        throw std::invalid_argument("grid_density and verify_points must be at least 2");

    CriticalTime out;
    out.tolerance = kCriticalTimeTolerance;
    out.t_hi = t_max;
    if (!has_finite_tc(s))
        return out;

    const double required = minimum_t_max(s);
    if (t_max < required)
    {
        std::ostringstream msg;
        msg << "t_max = " << t_max << " is too small; sqrt(a d) needs t_max >= " << required;
        throw std::invalid_argument(msg.str());
    }

    auto g = [&](double t) { return coherence_margin(t, s); };
    auto bisect = [&](double lo, double hi) {
        while (hi - lo > kCriticalTimeTolerance)
        {
            const double mid = 0.5 * (lo + hi);
            (g(mid) > 0.0 ? lo : hi) = mid;
        }
        return std::pair{lo, hi};
    };

    // Last sign change below the envelope cutoff.
    const double cutoff = envelope_cutoff(s);
    double lo = 0.0;
    double hi = cutoff;
    for (std::size_t i = grid_density; i-- > 0;)
    {
        const double t = uniform_point(0.0, cutoff, i, grid_density);
        if (g(t) > 0.0)
        {
            lo = t;
            hi = i + 1 < grid_density ? uniform_point(0.0, cutoff, i + 1, grid_density) : cutoff;
            break;
        }
    }
    std::tie(lo, hi) = bisect(lo, hi);

    // Verification sweep; a missed revival moves the bracket past it.
    for (int attempt = 0;; ++attempt)
    {
        std::optional<std::size_t> last_positive;
        for (std::size_t i = 0; i < verify_points; ++i)
            if (g(uniform_point(hi, t_max, i, verify_points)) > 0.0)
                last_positive = i;
        if (!last_positive)
            break;
        if (attempt >= 32)
            throw std::runtime_error("critical-time verification did not settle");
        const std::size_t i = *last_positive;
        std::tie(lo, hi) = bisect(uniform_point(hi, t_max, i, verify_points),
                                  uniform_point(hi, t_max, std::min(i + 1, verify_points - 1),
                                                verify_points));
    }

    out.t_c = hi;
    out.t_lo = lo;
    out.t_hi = hi;
    return out;
}

CriticalTime find_tc_auto(const TwoQubitScenario& s, double t_max_hint, std::size_t grid_density)
{
    double t_max = t_max_hint;
    if (has_finite_tc(s))
        t_max = std::max(t_max, minimum_t_max(s));
    if (!(t_max > 0.0))
        t_max = 1.0;
    return find_tc(s, t_max, grid_density);
}

Trajectory concurrence_trajectory(const TwoQubitScenario& s, const TimeGrid& grid,
                                  const ConcurrenceSource& source)
{
    std::vector<double> values(grid.size());
    auto evaluate = [&](const AveragedXState& x) {
        validate_density(x.to_matrix());
        return concurrence_x(x).value();
    };

    if (std::holds_alternative<AnalyticSource>(source))
    {
        for (std::size_t i = 0; i < grid.size(); ++i)
            values[i] = evaluate(analytic::avg_xstate_two(grid[i], s));
        Trajectory traj(grid, {Source::analytic, 0, 0});
        traj.add_column("C", std::move(values));
        return traj;
    }

    const auto& mc = std::get<MonteCarloSource>(source);
    const auto sampled = sample_ensemble(s, SamplingOptions{mc.samples, mc.seed, mc.workers}, grid);
    for (std::size_t i = 0; i < grid.size(); ++i)
        values[i] = evaluate(AveragedXState(xstate_at(sampled, i)));
    Trajectory traj(grid, sampled.meta());
    traj.add_column("C", std::move(values));
    return traj;
}

} // namespace hamens::entanglement
