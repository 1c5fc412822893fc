#include "hamens/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace hamens {

GaussianSpec::GaussianSpec(double mean_, double variance_) : mean(mean_), variance(variance_)
{
    if (!std::isfinite(mean) || !std::isfinite(variance))
        throw std::invalid_argument("Gaussian parameters must be finite");
    if (variance < 0.0)
        throw std::invalid_argument("Gaussian variance must be nonnegative");
}

double GaussianSpec::stddev() const
{
    return std::sqrt(variance);
}

CouplingLaw::CouplingLaw(double alpha) : alpha_(alpha), slope_(0.0)
{
    if (!std::isfinite(alpha) || alpha < 0.5)
        throw std::invalid_argument("coupling parameter alpha must be >= 1/2");
    slope_ = std::sqrt(alpha * alpha - 0.25);
}

SingleQubitScenario::SingleQubitScenario(double omega_a_, CouplingLaw coupling_, cplx xb_,
                                         cplx yb_, GaussianSpec noise_)
    : omega_a(omega_a_), coupling(coupling_), xb(xb_), yb(yb_), noise(noise_)
{
    if (!std::isfinite(omega_a))
        throw std::invalid_argument("omega_a must be finite");
    if (std::abs(std::norm(xb) + std::norm(yb) - 1.0) > 1e-12)
        throw std::invalid_argument("auxiliary amplitudes must satisfy |xb|^2 + |yb|^2 = 1");
}

SingleQubitScenario SingleQubitScenario::with_real_amplitude(double omega_a, double alpha,
                                                             double xb, GaussianSpec noise)
{
    if (!(xb >= -1.0 && xb <= 1.0))
        throw std::invalid_argument("xb must lie in [-1, 1]");
    const double yb = std::sqrt(std::max(0.0, 1.0 - xb * xb));
    return SingleQubitScenario(omega_a, CouplingLaw(alpha), xb, yb, noise);
}

TwoQubitScenario::TwoQubitScenario(double omega_a_, double omega_b_, CouplingLaw coupling_,
                                   double x_, GaussianSpec noise_a_, GaussianSpec noise_b_)
    : omega_a(omega_a_),
      omega_b(omega_b_),
      coupling(coupling_),
      x(x_),
      y(1.0 - x_),
      noise_a(noise_a_),
      noise_b(noise_b_)
{
    if (!std::isfinite(omega_a) || !std::isfinite(omega_b))
        throw std::invalid_argument("frequencies must be finite");
    if (!(x >= 0.0 && x <= 1.0))
        throw std::invalid_argument("mixture weight x must lie in [0, 1]");
}

TimeGrid::TimeGrid(std::vector<double> times) : times_(std::move(times))
{
    if (times_.empty())
        throw std::invalid_argument("time grid is empty");
    for (std::size_t i = 0; i < times_.size(); ++i)
    {
        if (!std::isfinite(times_[i]))
            throw std::invalid_argument("time grid has non-finite entries");
        if (i > 0 && !(times_[i] > times_[i - 1]))
            throw std::invalid_argument("time grid must be strictly increasing");
    }
}

TimeGrid TimeGrid::uniform(double t_max, std::size_t points)
{
    if (points < 2 || !(t_max > 0.0) || !std::isfinite(t_max))
        throw std::invalid_argument("uniform grid needs t_max > 0 and at least 2 points");
    std::vector<double> t(points);
    const double step = t_max / static_cast<double>(points - 1);
    for (std::size_t i = 0; i < points; ++i)
        t[i] = step * static_cast<double>(i);
    t.back() = t_max;
    return TimeGrid(std::move(t));
}

std::string to_string(Source s)
{
    return s == Source::analytic ? "analytic" : "monte-carlo";
}

Trajectory::Trajectory(TimeGrid grid, Provenance meta) : grid_(std::move(grid)), meta_(meta) {}

void Trajectory::add_column(std::string name, std::vector<double> values)
{
    if (values.size() != grid_.size())
        throw std::invalid_argument("column '" + name + "' length differs from the time grid");
    if (has_column(name))
        throw std::invalid_argument("duplicate column '" + name + "'");
    columns_.push_back({std::move(name), std::move(values)});
}

bool Trajectory::has_column(const std::string& name) const
{
    return std::any_of(columns_.begin(), columns_.end(),
                       [&](const Column& c) { return c.name == name; });
}

const std::vector<double>& Trajectory::column(const std::string& name) const
{
    for (const auto& c : columns_)
        if (c.name == name)
            return c.values;
    throw std::out_of_range("no column named '" + name + "'");
}

DenseComplexMatrix XStateElements::to_matrix() const
{
    // Product basis indices: |++> = 0, |+-> = 1, |-+> = 2, |--> = 3.
    DenseComplexMatrix m(4);
    m(0, 0) = b;
    m(1, 1) = a;
    m(2, 2) = d;
    m(3, 3) = c;
    m(0, 3) = z;
    m(3, 0) = std::conj(z);
    return m;
}

AveragedXState::AveragedXState(const XStateElements& e) : e_(e)
{
    constexpr double tol = 1e-12;
    const double diag[] = {e.a, e.b, e.c, e.d};
    for (double v : diag)
        if (!std::isfinite(v) || v < -tol)
            throw std::invalid_argument("X-state populations must be finite and nonnegative");
    if (!std::isfinite(e.z.real()) || !std::isfinite(e.z.imag()))
        throw std::invalid_argument("X-state coherence must be finite");
    if (std::abs(e.a + e.b + e.c + e.d - 1.0) > tol)
        throw std::invalid_argument("X-state populations must sum to one");
    if (std::abs(e.z) > std::sqrt(std::max(0.0, e.b * e.c)) + tol)
        throw std::invalid_argument("X-state coherence exceeds sqrt(b c)");
}

} // namespace hamens
