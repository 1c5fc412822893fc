#pragma once

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "hamens/linalg.hpp"

namespace hamens {

/// Gaussian distribution of a random level spacing (mean, variance).
struct GaussianSpec
{
    GaussianSpec() = default;
    GaussianSpec(double mean, double variance);

    double mean = 0.0;
    double variance = 0.0;

    double stddev() const;
    bool centered() const noexcept { return mean == 0.0; }
};

/// Coupling proportional to detuning, f(eps) = sqrt(alpha^2 - 1/4) (eps - omega_a),
/// with alpha >= 1/2.
class CouplingLaw
{
  public:
    explicit CouplingLaw(double alpha);

    double alpha() const noexcept { return alpha_; }
    /// sqrt(alpha^2 - 1/4)
    double slope() const noexcept { return slope_; }
    /// c = sqrt(4 alpha^2 - 1) / (2 alpha), in [0, 1).
    double amplitude() const noexcept { return slope_ / alpha_; }
    bool decoupled() const noexcept { return slope_ == 0.0; }

  private:
    double alpha_;
    double slope_;
};

/// Working qubit A starting in |->, auxiliary qubit B in xb|+> + yb|->.
struct SingleQubitScenario
{
    SingleQubitScenario(double omega_a, CouplingLaw coupling, cplx xb, cplx yb, GaussianSpec noise);
    /// Real amplitudes with yb = sqrt(1 - xb^2).
    static SingleQubitScenario with_real_amplitude(double omega_a, double alpha, double xb,
                                                   GaussianSpec noise);

    double omega_a;
    CouplingLaw coupling;
    cplx xb;
    cplx yb;
    GaussianSpec noise;
};

/// Working qubits A1, B1 in a Bell state; auxiliary A2 mixed with weights
/// x (|+>) and y (|->). noise_a drives the auxiliary spacing, noise_b the
/// random shift of B1.
struct TwoQubitScenario
{
    TwoQubitScenario(double omega_a, double omega_b, CouplingLaw coupling, double x,
                     GaussianSpec noise_a, GaussianSpec noise_b);

    double omega_a;
    double omega_b;
    CouplingLaw coupling;
    double x;
    double y;
    GaussianSpec noise_a;
    GaussianSpec noise_b;
};

/// Strictly increasing list of sample times.
class TimeGrid
{
  public:
    explicit TimeGrid(std::vector<double> times);
    /// `points` equally spaced samples on [0, t_max].
    static TimeGrid uniform(double t_max, std::size_t points = 400);

    std::span<const double> times() const noexcept { return times_; }
    std::size_t size() const noexcept { return times_.size(); }
    double operator[](std::size_t i) const { return times_[i]; }

  private:
    std::vector<double> times_;
};

enum class Source
{
    analytic,
    monte_carlo,
};

std::string to_string(Source s);

struct Provenance
{
    Source source = Source::analytic;
    std::size_t samples = 0;
    std::uint64_t seed = 0;
};

/// Time grid plus named per-time value columns.
class Trajectory
{
  public:
    struct Column
    {
        std::string name;
        std::vector<double> values;
    };

    Trajectory(TimeGrid grid, Provenance meta);

    const TimeGrid& grid() const noexcept { return grid_; }
    const Provenance& meta() const noexcept { return meta_; }
    const std::vector<Column>& columns() const noexcept { return columns_; }

    void add_column(std::string name, std::vector<double> values);
    bool has_column(const std::string& name) const;
    const std::vector<double>& column(const std::string& name) const;

  private:
    TimeGrid grid_;
    Provenance meta_;
    std::vector<Column> columns_;
};

/// Nonzero entries of the two-working-qubit reduced density matrix.
///
/// a = <+-|rho|+->, b = <++|rho|++>, c = <--|rho|-->, d = <-+|rho|-+>,
/// z = <++|rho|-->.
struct XStateElements
{
    double a = 0.0;
    double b = 0.0;
    double c = 0.0;
    double d = 0.0;
    cplx z{0.0, 0.0};

    /// Matrix in the product basis of A1 (x) B1 with |+> first.
    DenseComplexMatrix to_matrix() const;
};

/// Ensemble-averaged X-state; construction enforces unit trace and
/// positivity of the coherence block.
class AveragedXState
{
  public:
    explicit AveragedXState(const XStateElements& e);

    const XStateElements& elements() const noexcept { return e_; }
    double a() const noexcept { return e_.a; }
    double b() const noexcept { return e_.b; }
    double c() const noexcept { return e_.c; }
    double d() const noexcept { return e_.d; }
    cplx z() const noexcept { return e_.z; }

    DenseComplexMatrix to_matrix() const { return e_.to_matrix(); }

  private:
    XStateElements e_;
};

} // namespace hamens
